#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>

#include "bandyn/ban.hpp"
#include "bandyn/numtheory.hpp"

namespace bandyn {

// Closed-form parameters for one of the five tagged network types.
// For BADs, l is the negative (or left) cycle and r the other one;
// Delta = gcd(omega, l), K = omega / Delta.
struct TypeParams {
  NetworkTag type = NetworkTag::PosBac;
  int n = 0;       // BAC size
  int l = 0, r = 0;  // BAD cycle lengths
  std::uint64_t omega = 0;
  std::uint64_t Delta = 1, K = 1;

  static TypeParams pos_bac(int n);
  static TypeParams neg_bac(int n);
  static TypeParams pos_bad(int l, int r);
  static TypeParams mixed_bad(int l_negative, int r_positive);
  static TypeParams neg_bad(int l, int r);

  std::uint64_t delta_p(std::uint64_t p) const;  // gcd(Delta, p)
  std::uint64_t k_p(std::uint64_t p) const;      // p / delta_p
  int size() const;                              // automata count
  bool is_bad_type() const {
    return type == NetworkTag::PosBad || type == NetworkTag::MixedBad ||
           type == NetworkTag::NegBad;
  }
};

std::uint64_t closed_form_omega(const TypeParams& tp);
Int closed_form_X(const TypeParams& tp, std::uint64_t p);

struct DivisibilityFailure : std::runtime_error {
  std::uint64_t p;
  explicit DivisibilityFailure(std::uint64_t p);
};

struct ClosedFormCensus {
  std::uint64_t omega = 1;
  std::map<std::uint64_t, Int> X, Xt, A, At;
};

// Runs the Dirichlet pipeline on the closed-form X map; throws
// DivisibilityFailure when p does not divide Xt(p), which signals a
// disagreement between the closed formula and real orbit structure.
ClosedFormCensus census_from_closed_form(const TypeParams& tp);

struct BoundVerdict {
  bool lower_ok = false;  // X(omega)/omega <= A(omega)
  bool upper_ok = false;  // A(omega) <= 2 At(omega)
  Int x_omega, a_omega, at_omega;
  std::uint64_t omega = 1;
  bool exception_flag = false;
};

// Is (l, r) one of the parameter pairs for which the attractor-count bound
// is known not to hold (in either order)?
bool neg_bad_exception(int l, int r);
bool neg_bad_exception_kd(std::uint64_t Delta, std::uint64_t K);

// Parameter combinations on which the attractor-count bound (and the
// matching necklace construction) is undefined for either double-cycle
// family: K = 4, (1, 6), (1, 10) and (2, 6).
bool bound_domain_excluded(std::uint64_t Delta, std::uint64_t K);

BoundVerdict attractor_bound_verdict(const std::map<std::uint64_t, Int>& X,
                              const std::map<std::uint64_t, Int>& A,
                              const std::map<std::uint64_t, Int>& At,
                              std::uint64_t omega, const TypeParams& tp);
BoundVerdict attractor_bound_verdict(const AttractorReport& rep, const TypeParams& tp);

// Exact-integer forms of the per-period bounds: for a mixed BAD,
// L(K_p)^(2 Delta_p) <= 3^p; for a negative BAD, P(K_p)^(2 Delta_p) <= 2^p
// when K_p != 3 and P(3)^(3 Delta_p) = 3^p when K_p = 3.
bool period_bound_mixed(std::uint64_t k_p, std::uint64_t delta_p);
bool period_bound_negative(std::uint64_t k_p, std::uint64_t delta_p);

// A value (c0 + c1 root + c2 root^2) / denom with an exact, sound integer
// comparison; root is 1, sqrt(2), sqrt(3) or cbrt(3).
enum class Radical { One, Sqrt2, Sqrt3, Cbrt3 };

struct RadicalValue {
  Radical root = Radical::One;
  Int c0, c1, c2;
  std::uint64_t denom = 1;

  // Exact value when the radical part vanishes (c1 = c2 = 0 and the
  // division is exact); throws otherwise.
  Int exact() const;
  // value >= x, decided exactly (never by a float comparison).
  bool at_least(const Int& x) const;
};

// The growth base a of the attractor-count bound for this network type,
// at the given order (the negative double-cycle base depends on K).
Radical growth_base(const TypeParams& tp, std::uint64_t omega);
inline Radical growth_base(const TypeParams& tp) {
  return growth_base(tp, tp.omega);
}

// (phi * Y)(omega) / omega with Y(p) = a^p, as a RadicalValue.  The order
// defaults to the closed-form one but can be the measured order of a
// census whose closed form is off (the anomalous mixed instances).
RadicalValue growth_bound(const TypeParams& tp, std::uint64_t omega);
inline RadicalValue growth_bound(const TypeParams& tp) {
  return growth_bound(tp, tp.omega);
}

// measured A(omega) <= (phi * Y)(omega) / omega, decided exactly.
bool growth_bound_holds(const TypeParams& tp, const Int& measured_a,
                        std::uint64_t omega);
inline bool growth_bound_holds(const TypeParams& tp, const Int& measured_a) {
  return growth_bound_holds(tp, measured_a, tp.omega);
}

}  // namespace bandyn
