#include <doctest.h>

#include <random>

#include "bandyn/numtheory.hpp"
#include "bandyn/words.hpp"

using namespace bandyn;

TEST_CASE("divisors") {
  CHECK(divisors(1) == std::vector<std::uint64_t>{1});
  CHECK(divisors(12) == std::vector<std::uint64_t>{1, 2, 3, 4, 6, 12});
  CHECK(divisors(7) == std::vector<std::uint64_t>{1, 7});
  CHECK_THROWS_AS(divisors(0), std::invalid_argument);
}

TEST_CASE("mobius") {
  CHECK(mobius(1) == 1);
  CHECK(mobius(4) == 0);
  CHECK(mobius(6) == 1);
  CHECK(mobius(30) == -1);
  CHECK_THROWS_AS(mobius(0), std::invalid_argument);
  for (std::uint64_t n = 2; n <= 64; ++n) {
    Int sum = 0;
    for (auto d : divisors(n)) sum += mobius(d);
    CHECK(sum == 0);
  }
}

TEST_CASE("totient") {
  CHECK(totient(1) == 1);
  CHECK(totient(12) == 4);
  CHECK(totient(7) == 6);
  CHECK_THROWS_AS(totient(0), std::invalid_argument);
}

TEST_CASE("dirichlet convolution identity and inversion") {
  auto delta = DivisorFunction::delta(6);
  CHECK(dirichlet_convolve(delta, one_fn(), 6) == 1);

  // X of the size-4 positive cycle: X(p) = 2^p.
  auto x = DivisorFunction::from(4, [](std::uint64_t p) { return Int(1) << p; });
  CHECK(dirichlet_convolve(x, mobius_fn(), 4) == 12);

  DivisorFunction xt;
  xt.n = 4;
  xt.values = {{1, 2}, {2, 2}, {4, 12}};
  CHECK(dirichlet_convolve(xt, one_fn(), 4) == 16);

  CHECK_THROWS_AS(dirichlet_convolve(xt, one_fn(), 3), std::invalid_argument);
  CHECK_THROWS_AS(xt.at(3), std::invalid_argument);
}

TEST_CASE("mobius inversion roundtrip on random divisor functions") {
  std::mt19937_64 rng(20240915);
  for (std::uint64_t n : {6ull, 12ull, 24ull, 36ull, 48ull}) {
    DivisorFunction f;
    f.n = n;
    for (auto d : divisors(n))
      f.values[d] = Int(rng() % 1000) - 500;
    auto g = dirichlet_convolve_all(f, one_fn());
    auto back = dirichlet_convolve_all(g, mobius_fn());
    for (auto d : divisors(n)) CHECK(back.at(d) == f.at(d));
  }
}

TEST_CASE("lucas and perrin values") {
  CHECK(lucas(0) == 2);
  CHECK(lucas(1) == 1);
  CHECK(lucas(4) == 7);
  CHECK(lucas(6) == 18);
  CHECK(perrin(0) == 3);
  CHECK(perrin(1) == 0);
  CHECK(perrin(2) == 2);
  CHECK(perrin(5) == 5);
  CHECK(perrin(6) == 5);
}

TEST_CASE("lucas counts cyclic words avoiding 00") {
  for (int n = 2; n <= 18; ++n) {
    auto census = enumerate_admissible(n, ForbiddenFamily{FamilyKind::MixedBad, 1});
    CHECK(lucas(static_cast<std::uint64_t>(n)) == Int(census.total));
  }
}

TEST_CASE("perrin counts cyclic words avoiding 00 and 111") {
  for (int n = 2; n <= 18; ++n) {
    auto census = enumerate_admissible(n, ForbiddenFamily{FamilyKind::NegBad, 1});
    CHECK(perrin(static_cast<std::uint64_t>(n)) == Int(census.total));
  }
}

TEST_CASE("lyndon and necklace counts") {
  CHECK(lyndon_count(1) == 2);
  CHECK(lyndon_count(4) == 3);
  CHECK(lyndon_count(6) == 9);
  CHECK(necklace_count(1) == 2);
  CHECK(necklace_count(2) == 3);
  CHECK(necklace_count(4) == 6);
  // aperiodic words of length p, and the length-census identity
  for (std::uint64_t n = 1; n <= 20; ++n) {
    Int sum = 0;
    for (auto q : divisors(n)) sum += lyndon_count(q) * q;
    CHECK(sum == Int(1) << n);
  }
  // against the exhaustive enumerator
  for (int n = 1; n <= 14; ++n) {
    auto census = enumerate_admissible(n, ForbiddenFamily{FamilyKind::Positive, 1});
    CHECK(Int(census.primitive_period.at(n)) ==
          lyndon_count(static_cast<std::uint64_t>(n)) * n);
    CHECK(Int(census.necklaces) == necklace_count(static_cast<std::uint64_t>(n)));
  }
}
