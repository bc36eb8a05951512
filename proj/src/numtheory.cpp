#include "bandyn/numtheory.hpp"

#include <algorithm>
#include <stdexcept>

namespace bandyn {

std::vector<std::uint64_t> divisors(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("divisors: n must be positive");
  std::vector<std::uint64_t> small, large;
  for (std::uint64_t d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    small.push_back(d);
    if (d != n / d) large.push_back(n / d);
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

int mobius(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("mobius: n must be positive");
  int k = 0;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    n /= p;
    if (n % p == 0) return 0;
    ++k;
  }
  if (n > 1) ++k;
  return (k % 2 == 0) ? 1 : -1;
}

std::uint64_t totient(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("totient: n must be positive");
  std::uint64_t result = n;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    while (n % p == 0) n /= p;
    result -= result / p;
  }
  if (n > 1) result -= result / n;
  return result;
}

DivisorFunction DivisorFunction::zero(std::uint64_t n) {
  DivisorFunction f;
  f.n = n;
  for (auto d : divisors(n)) f.values[d] = 0;
  return f;
}

DivisorFunction DivisorFunction::delta(std::uint64_t n) {
  DivisorFunction f = zero(n);
  f.values[1] = 1;
  return f;
}

DivisorFunction DivisorFunction::from(std::uint64_t n, const ArithmeticFn& g) {
  DivisorFunction f;
  f.n = n;
  for (auto d : divisors(n)) f.values[d] = g(d);
  return f;
}

const Int& DivisorFunction::at(std::uint64_t p) const {
  auto it = values.find(p);
  if (it == values.end())
    throw std::invalid_argument("DivisorFunction: argument is not a divisor");
  return it->second;
}

void DivisorFunction::set(std::uint64_t p, Int v) {
  if (n % p != 0)
    throw std::invalid_argument("DivisorFunction: key is not a divisor");
  values[p] = std::move(v);
}

ArithmeticFn one_fn() {
  return [](std::uint64_t) { return Int(1); };
}

ArithmeticFn mobius_fn() {
  return [](std::uint64_t m) { return Int(mobius(m)); };
}

ArithmeticFn totient_fn() {
  return [](std::uint64_t m) { return Int(totient(m)); };
}

Int dirichlet_convolve(const DivisorFunction& f, const ArithmeticFn& g,
                       std::uint64_t p) {
  if (p == 0 || f.n % p != 0)
    throw std::invalid_argument("dirichlet_convolve: p must divide f.n");
  Int acc = 0;
  for (auto q : divisors(p)) acc += f.at(q) * g(p / q);
  return acc;
}

DivisorFunction dirichlet_convolve_all(const DivisorFunction& f,
                                       const ArithmeticFn& g) {
  DivisorFunction out;
  out.n = f.n;
  for (auto p : divisors(f.n)) out.values[p] = dirichlet_convolve(f, g, p);
  return out;
}

Int lucas(std::uint64_t n) {
  Int a = 2, b = 1;  // L(0), L(1)
  if (n == 0) return a;
  for (std::uint64_t i = 1; i < n; ++i) {
    Int c = a + b;
    a = b;
    b = c;
  }
  return b;
}

Int perrin(std::uint64_t n) {
  Int a = 3, b = 0, c = 2;  // P(0), P(1), P(2)
  if (n == 0) return a;
  if (n == 1) return b;
  for (std::uint64_t i = 2; i < n; ++i) {
    Int d = a + b;  // P(i+1) = P(i-1) + P(i-2)
    a = b;
    b = c;
    c = d;
  }
  return c;
}

Int lyndon_count(std::uint64_t p) {
  if (p == 0) throw std::invalid_argument("lyndon_count: p must be positive");
  Int acc = 0;
  for (auto q : divisors(p)) acc += Int(mobius(p / q)) * (Int(1) << q);
  if (acc % p != 0)
    throw std::logic_error("lyndon_count: divisibility failure");
  return acc / p;
}

Int necklace_count(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("necklace_count: n must be positive");
  Int acc = 0;
  for (auto q : divisors(n)) acc += Int(totient(n / q)) * (Int(1) << q);
  if (acc % n != 0)
    throw std::logic_error("necklace_count: divisibility failure");
  return acc / n;
}

}  // namespace bandyn
