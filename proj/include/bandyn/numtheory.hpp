#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace bandyn {

// All counting in this project is exact; cpp_int keeps every formula
// overflow-free without a float anywhere.
using Int = boost::multiprecision::cpp_int;

std::vector<std::uint64_t> divisors(std::uint64_t n);
int mobius(std::uint64_t n);
std::uint64_t totient(std::uint64_t n);

// An exact integer function defined on the divisor lattice of n.
// The key set is always exactly the divisor set of n.
struct DivisorFunction {
  std::uint64_t n = 1;
  std::map<std::uint64_t, Int> values;

  static DivisorFunction zero(std::uint64_t n);
  // The Dirichlet identity element: delta(1)=1, 0 elsewhere.
  static DivisorFunction delta(std::uint64_t n);
  static DivisorFunction from(std::uint64_t n,
                              const std::function<Int(std::uint64_t)>& f);

  const Int& at(std::uint64_t p) const;
  void set(std::uint64_t p, Int v);
};

using ArithmeticFn = std::function<Int(std::uint64_t)>;

ArithmeticFn one_fn();
ArithmeticFn mobius_fn();
ArithmeticFn totient_fn();

// (f * g)(p) = sum over q | p of f(q) g(p/q); p must divide f.n.
Int dirichlet_convolve(const DivisorFunction& f, const ArithmeticFn& g,
                       std::uint64_t p);

// Pointwise convolution over the whole divisor lattice of f.n.
DivisorFunction dirichlet_convolve_all(const DivisorFunction& f,
                                       const ArithmeticFn& g);

// L(0)=2, L(1)=1, L(n)=L(n-1)+L(n-2); counts cyclic binary words with no
// cyclic factor 00.
Int lucas(std::uint64_t n);

// P(0)=3, P(1)=0, P(2)=2, P(n)=P(n-2)+P(n-3); counts cyclic binary words
// avoiding {00, 111}.
Int perrin(std::uint64_t n);

// Number of binary Lyndon words of length p: (1/p) sum mu(p/q) 2^q.
Int lyndon_count(std::uint64_t p);

// Number of binary necklaces of length n: (1/n) sum phi(n/q) 2^q.
Int necklace_count(std::uint64_t n);

}  // namespace bandyn
