#include <doctest.h>

#include <random>
#include <sstream>

#include "bandyn/ban.hpp"
#include "bandyn/counting.hpp"

using namespace bandyn;

namespace {
Config C(const std::string& s) {
  Config x = 0;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s[i] == '1') x |= Config(1) << i;
  return x;
}
}  // namespace

TEST_CASE("cycle construction and step") {
  auto swap2 = make_bac(2, Sign::Plus);
  CHECK(step(swap2, C("01")) == C("10"));
  auto neg3 = make_bac(3, Sign::Minus);
  CHECK(step(neg3, C("000")) == C("100"));
  auto neg1 = make_bac(1, Sign::Minus);
  CHECK(step(neg1, 0) == 1);
  CHECK(step(neg1, 1) == 0);
  CHECK_THROWS_AS(make_bac(0, Sign::Plus), std::invalid_argument);
}

TEST_CASE("double cycle construction") {
  // f = (not x1 or not x3, x0, x0, x2)
  auto bad = make_bad(2, 3, Sign::Minus, Sign::Minus, Gate::Or);
  CHECK(bad.n == 4);
  CHECK(step(bad, C("0000")) == C("1000"));
  CHECK(step(bad, C("1000")) == C("1110"));

  auto mixed = make_bad(2, 3, Sign::Minus, Sign::Plus, Gate::Or);
  // f0 = not x1 or x3
  CHECK(step(mixed, C("0001")) == C("1000"));

  // degenerate self-loop: f0 = x0 or x1, f1 = x0
  auto loop = make_bad(1, 2, Sign::Plus, Sign::Plus, Gate::Or);
  CHECK(loop.n == 2);
  CHECK(step(loop, C("10")) == C("11"));
}

TEST_CASE("structure inference") {
  auto g = infer_structure(make_bac(3, Sign::Minus));
  REQUIRE(g.arcs.size() == 3);
  int minus = 0;
  for (auto& a : g.arcs) {
    if (a.sign == Sign::Minus) {
      ++minus;
      CHECK(a.from == 2);
      CHECK(a.to == 0);
    }
  }
  CHECK(minus == 1);

  auto g2 = infer_structure(make_bad(2, 3, Sign::Minus, Sign::Plus, Gate::Or));
  CHECK(g2.arcs.size() == 5);
  auto sign_of = [&](int from, int to) {
    for (auto& a : g2.arcs)
      if (a.from == from && a.to == to) return a.sign;
    FAIL("missing arc");
    return Sign::Plus;
  };
  // left cycle 0 -> 1 -> 0 carries the negative sign, right cycle is positive
  int left_neg = (sign_of(0, 1) == Sign::Minus) + (sign_of(1, 0) == Sign::Minus);
  int right_neg = (sign_of(0, 2) == Sign::Minus) + (sign_of(2, 3) == Sign::Minus) +
                  (sign_of(3, 0) == Sign::Minus);
  CHECK(left_neg % 2 == 1);
  CHECK(right_neg % 2 == 0);

  // XOR is the canonical non-monotone local function
  std::vector<std::vector<bool>> tables = {
      {false, true, true, false}, {false, false, true, true}};
  CHECK_THROWS_AS(from_tables(tables), NonMonotoneError);
}

TEST_CASE("attractor census on small cycles") {
  auto rep = attractor_census(make_bac(2, Sign::Plus));
  CHECK(rep.omega == 2);
  CHECK(rep.attractor_total() == 3);
  CHECK(rep.period_attractors.at(1) == 2);
  CHECK(rep.period_attractors.at(2) == 1);

  auto rep3 = attractor_census(make_bac(3, Sign::Minus));
  CHECK(rep3.omega == 6);
  CHECK(rep3.At.at(2) == 1);
  CHECK(rep3.At.at(6) == 1);
  CHECK(rep3.A.at(6) == 2);

  auto rep_bad = attractor_census(make_bad(2, 3, Sign::Minus, Sign::Minus, Gate::Or));
  CHECK(rep_bad.omega == 5);
  CHECK(rep_bad.attractor_total() == 1);
  CHECK(rep_bad.period_attractors.at(5) == 1);
}

TEST_CASE("report internal consistency") {
  std::mt19937_64 rng(777);
  for (int trial = 0; trial < 24; ++trial) {
    NetworkSpec net;
    int n = 2 + static_cast<int>(rng() % 6);
    switch (trial % 3) {
      case 0: net = make_bac(n, (rng() & 1) ? Sign::Plus : Sign::Minus); break;
      case 1:
        net = make_bad(1 + static_cast<int>(rng() % 4), 1 + static_cast<int>(rng() % 4),
                       (rng() & 1) ? Sign::Plus : Sign::Minus,
                       (rng() & 1) ? Sign::Plus : Sign::Minus,
                       (rng() & 1) ? Gate::Or : Gate::And);
        break;
      default: {
        // random locally monotone network: each automaton copies or gates
        std::vector<Sign> signs;
        for (int i = 0; i < n; ++i)
          signs.push_back((rng() & 1) ? Sign::Plus : Sign::Minus);
        net = make_bac_signs(signs);
        break;
      }
    }
    auto rep = attractor_census(net);
    REQUIRE(rep.omega_valid);
    // X~ = X * mu and A = A~ * 1 recomputed from scratch must agree.
    Int total = 0;
    for (auto p : divisors(rep.omega)) {
      Int xt = 0;
      for (auto q : divisors(p)) xt += Int(mobius(p / q)) * rep.X.at(q);
      CHECK(xt == rep.Xt.at(p));
      Int a = 0;
      for (auto q : divisors(p)) a += rep.At.at(q);
      CHECK(a == rep.A.at(p));
    }
    CHECK(rep.Xt.at(rep.omega) == rep.At.at(rep.omega) * rep.omega);
    Int sum = 0;
    for (auto& [p, v] : rep.Xt) sum += v;
    CHECK(sum == Int(rep.recurrent_count));
    // A(omega) >= X(omega)/omega
    CHECK(rep.A.at(rep.omega) * rep.omega >= rep.X.at(rep.omega));
  }
}

TEST_CASE("orbit words") {
  auto neg1 = make_bac(1, Sign::Minus);
  CHECK(orbit_word(neg1, 0, 2).str() == "01");

  auto bad = make_bad(2, 3, Sign::Minus, Sign::Minus, Gate::Or);
  auto rep = attractor_census(bad);
  REQUIRE(rep.attractors.size() == 1);
  // the trace lives at anchor distance d = l mod p = 2
  auto w = orbit_word(bad, rep.attractors[0][0], 5);
  CHECK(is_admissible(w, {FamilyKind::NegBad, 2}));
  // two configurations of one attractor trace rotations of the same word
  auto w2 = orbit_word(bad, rep.attractors[0][2], 5);
  CHECK(canonical_rotation(w).canonical == canonical_rotation(w2).canonical);

  CHECK_THROWS_AS(orbit_word(bad, rep.attractors[0][0], 4),
                  std::invalid_argument);
}

TEST_CASE("orbit-word bridge for double cycles") {
  CHECK(orbit_correspondence_check(make_bad(2, 3, Sign::Minus, Sign::Minus, Gate::Or)));
  CHECK(orbit_correspondence_check(make_bad(3, 4, Sign::Minus, Sign::Plus, Gate::Or)));
  CHECK(orbit_correspondence_check(make_bad(2, 5, Sign::Minus, Sign::Minus, Gate::And)));
  CHECK_THROWS_AS(orbit_correspondence_check(make_bad(2, 3, Sign::Plus, Sign::Plus, Gate::Or)),
                  std::invalid_argument);
}

TEST_CASE("negative cycle orbit words are exactly the admissible necklaces") {
  // Resolves the anchor-letter semantics of the negative-cycle family: the
  // multiset of orbit necklaces of a negative cycle equals the admissible
  // necklace census.
  for (int n = 1; n <= 8; ++n) {
    auto rep = attractor_census(make_bac(n, Sign::Minus));
    std::map<std::uint64_t, int> orbit_classes;
    for (const auto& orbit : rep.attractors) {
      int p = static_cast<int>(orbit.size());
      auto w = orbit_word(make_bac(n, Sign::Minus), orbit[0],
                          static_cast<std::uint64_t>(p));
      orbit_classes[canonical_rotation(w).canonical.bits |
                    (std::uint64_t(p) << 32)]++;
    }
    std::map<std::uint64_t, int> word_classes;
    for (auto p : divisors(rep.omega)) {
      int d = static_cast<int>(static_cast<std::uint64_t>(n) % p);
      if (d == 0) continue;
      auto necks = primitive_admissible_necklaces(
          static_cast<int>(p), {FamilyKind::NegBac, d});
      for (auto& neck : necks)
        word_classes[neck.canonical.bits | (p << 32)]++;
    }
    CHECK(orbit_classes == word_classes);
  }
}

TEST_CASE("census matches the closed forms for cycles") {
  for (int n = 1; n <= 10; ++n) {
    auto rep = attractor_census(make_bac(n, Sign::Minus));
    CHECK(rep.omega == 2ull * n);
    for (auto p : divisors(rep.omega)) {
      Int expect = (static_cast<std::uint64_t>(n) % p == 0) ? Int(0)
                                                            : Int(1) << (p / 2);
      CHECK(rep.X.at(p) == expect);
    }
  }
  for (int n = 1; n <= 14; ++n) {
    auto rep = attractor_census(make_bac(n, Sign::Plus));
    CHECK(rep.omega == static_cast<std::uint64_t>(n));
    for (auto p : divisors(rep.omega)) CHECK(rep.X.at(p) == Int(1) << p);
    CHECK(rep.A.at(rep.omega) == necklace_count(static_cast<std::uint64_t>(n)));
  }
}

TEST_CASE("sign placement within a cycle does not change the census") {
  // All sign vectors with the same parity give the same census; exhaustive
  // over cycles up to n = 10 would repeat work, so cover n <= 7 fully.
  for (int n = 1; n <= 7; ++n) {
    AttractorReport base[2] = {attractor_census(make_bac(n, Sign::Plus)),
                               attractor_census(make_bac(n, Sign::Minus))};
    for (std::uint32_t bits = 0; bits < (1u << n); ++bits) {
      std::vector<Sign> signs;
      int parity = 0;
      for (int i = 0; i < n; ++i) {
        bool neg = (bits >> i) & 1;
        parity ^= neg;
        signs.push_back(neg ? Sign::Minus : Sign::Plus);
      }
      auto rep = attractor_census(make_bac_signs(signs));
      const auto& expect = base[parity];
      CHECK(rep.omega == expect.omega);
      CHECK(rep.X == expect.X);
      CHECK(rep.A == expect.A);
      CHECK(rep.At == expect.At);
    }
  }
  // Spot-check double cycles: move the negative arcs along each cycle.
  for (int l : {2, 3}) {
    for (int r : {3, 4}) {
      auto expect =
          attractor_census(make_bad(l, r, Sign::Minus, Sign::Minus, Gate::Or));
      for (int i = 0; i < l; ++i) {
        for (int j = 0; j < r; ++j) {
          std::vector<Sign> left(l, Sign::Plus), right(r, Sign::Plus);
          left[static_cast<std::size_t>(i)] = Sign::Minus;
          right[static_cast<std::size_t>(j)] = Sign::Minus;
          auto rep = attractor_census(make_bad_signs(left, right, Gate::Or));
          CHECK(rep.omega == expect.omega);
          CHECK(rep.X == expect.X);
          CHECK(rep.A == expect.A);
        }
      }
    }
  }
}

TEST_CASE("AND census equals OR census") {
  // not F(not x) swaps the gate and keeps arc signs, so both gates give
  // identical censuses.
  for (int l = 1; l <= 4; ++l)
    for (int r = 1; r <= 4; ++r)
      for (Sign sl : {Sign::Plus, Sign::Minus})
        for (Sign sr : {Sign::Plus, Sign::Minus}) {
          auto or_rep = attractor_census(make_bad(l, r, sl, sr, Gate::Or));
          auto and_rep = attractor_census(make_bad(l, r, sl, sr, Gate::And));
          CHECK(or_rep.omega == and_rep.omega);
          CHECK(or_rep.X == and_rep.X);
          CHECK(or_rep.A == and_rep.A);
        }
}

TEST_CASE("local instabilities") {
  auto neg3 = make_bac(3, Sign::Minus);
  CHECK(local_instabilities(neg3, C("010")) == 3);
  CHECK(local_instabilities(make_bac(1, Sign::Minus), 0) == 1);
  auto pos2 = make_bac(2, Sign::Plus);
  CHECK(local_instabilities(pos2, C("00")) == 0);  // fixed point

  // the census histogram: six configurations on the 6-attractor carry one
  // instability, the two on the 2-attractor flip everywhere
  auto rep = attractor_census(neg3, CensusOptions{16, false});
  REQUIRE(rep.instability_histogram.size() == 2);
  CHECK(rep.instability_histogram.at(1) == 6);
  CHECK(rep.instability_histogram.at(3) == 2);
}

TEST_CASE("serialization roundtrip") {
  auto bad = make_bad(2, 3, Sign::Minus, Sign::Plus, Gate::Or);
  std::string text = serialize(bad);
  auto back = parse_network(text);
  CHECK(back.n == bad.n);
  for (Config x = 0; x < (1u << bad.n); ++x) CHECK(step(back, x) == step(bad, x));

  // table form
  std::vector<std::vector<bool>> tables;
  for (int i = 0; i < 3; ++i) {
    std::vector<bool> t;
    auto neg3 = make_bac(3, Sign::Minus);
    for (Config x = 0; x < 8; ++x) t.push_back(local_value(neg3, i, x));
    tables.push_back(t);
  }
  auto net = from_tables(tables);
  std::string text2 = serialize(net);
  auto back2 = parse_network(text2);
  for (Config x = 0; x < 8; ++x)
    CHECK(step(back2, x) == step(make_bac(3, Sign::Minus), x));

  // XOR table rejected at parse
  std::string xor_net = "table 0110\ntable 0011\n";
  CHECK_THROWS_AS(parse_network(xor_net), NonMonotoneError);
}
