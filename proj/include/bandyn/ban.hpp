#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "bandyn/numtheory.hpp"
#include "bandyn/words.hpp"

namespace bandyn {

inline constexpr int kNetworkCap = 24;

enum class Sign { Plus, Minus };
enum class Gate { Or, And };

inline int apply_sign(Sign s, int bit) { return s == Sign::Plus ? bit : 1 - bit; }
char sign_char(Sign s);
Sign sign_from_string(const std::string& s);

// State of all n automata, bit i = automaton i.
using Config = std::uint32_t;

// Local functions are kept structural where possible so that one update
// step costs O(n) even inside a 2^n census loop.
struct LocalCopy {
  int pred = 0;
  Sign sign = Sign::Plus;
};

struct LocalGate {
  Gate gate = Gate::Or;
  int pred_a = 0;
  Sign sign_a = Sign::Plus;
  int pred_b = 0;
  Sign sign_b = Sign::Plus;
};

struct LocalTable {
  std::vector<bool> table;  // indexed by configuration
};

using LocalFn = std::variant<LocalCopy, LocalGate, LocalTable>;

enum class NetworkTag { Generic, PosBac, NegBac, PosBad, MixedBad, NegBad };

struct NetworkSpec {
  int n = 0;
  std::vector<LocalFn> locals;
  NetworkTag tag = NetworkTag::Generic;
  // Tag parameters; for BACs cycle_len = n, for BADs n = left_len + right_len - 1.
  int left_len = 0, right_len = 0;
  Sign sign_left = Sign::Plus, sign_right = Sign::Plus;
  Gate gate = Gate::Or;

  bool is_bad() const {
    return tag == NetworkTag::PosBad || tag == NetworkTag::MixedBad ||
           tag == NetworkTag::NegBad;
  }
};

struct NonMonotoneError : std::runtime_error {
  int automaton;
  int input;
  NonMonotoneError(int automaton, int input);
};

struct CapExceededError : std::length_error {
  using std::length_error::length_error;
};

// Simple cycle 0 -> 1 -> ... -> n-1 -> 0; every arc positive except,
// for a negative cycle, the arc entering automaton 0.
NetworkSpec make_bac(int n, Sign sign);

// As make_bac but with an explicit sign per arc; signs[i] is the sign of
// the arc entering automaton i.
NetworkSpec make_bac_signs(const std::vector<Sign>& signs);

// Two tangent cycles sharing automaton 0: the left cycle visits
// 0,1,...,l-1 and the right cycle visits 0,l,...,n-1.  The single negative
// arc of each negative cycle enters automaton 0.
NetworkSpec make_bad(int l, int r, Sign sl, Sign sr, Gate gate);

// As make_bad with explicit arc signs along each cycle (entry i of each
// vector is the sign of the i-th arc along that cycle, ending with the arc
// into automaton 0).
NetworkSpec make_bad_signs(const std::vector<Sign>& left,
                           const std::vector<Sign>& right, Gate gate);

NetworkSpec from_tables(const std::vector<std::vector<bool>>& tables);

Config step(const NetworkSpec& net, Config x);
int local_value(const NetworkSpec& net, int i, Config x);

struct SignedArc {
  int from = 0, to = 0;
  Sign sign = Sign::Plus;
};

struct SignedDigraph {
  int n = 0;
  std::vector<SignedArc> arcs;
};

// Exact dependence arcs with signs from a full truth-table scan; throws
// NonMonotoneError when some input acts both ways.
SignedDigraph infer_structure(const NetworkSpec& net, int cap = kNetworkCap);

struct AttractorReport {
  std::uint64_t omega = 1;
  bool omega_valid = true;  // false when the lcm left the uint64 range
  std::uint64_t recurrent_count = 0;
  std::map<std::uint64_t, std::uint64_t> period_attractors;  // len -> count
  std::vector<std::vector<Config>> attractors;               // optional orbits
  std::map<int, std::uint64_t> instability_histogram;  // |U(x)| on recurrents
  // Exact per-divisor maps over p | omega.
  std::map<std::uint64_t, Int> X, Xt, A, At;

  Int attractor_total() const;  // A(omega)
};

struct CensusOptions {
  int cap = kNetworkCap;
  bool store_orbits = true;
};

AttractorReport attractor_census(const NetworkSpec& net,
                                 const CensusOptions& opts = {});

// Trace of automaton 0 along the orbit of x over `horizon` steps; x must
// satisfy F^horizon(x) = x.
CyclicWord orbit_word(const NetworkSpec& net, Config x, std::uint64_t horizon);

// Checks both directions of the orbit-word correspondence for a BAD with a
// negative left cycle: for every p | omega with l mod p > 0, the period-p
// recurrent count equals |W_{l mod p}^p| and every orbit word is admissible.
bool orbit_correspondence_check(const NetworkSpec& net, int cap = kNetworkCap);

// |U(x)| = number of automata whose state disagrees with their local function.
int local_instabilities(const NetworkSpec& net, Config x);

std::string serialize(const NetworkSpec& net);
NetworkSpec parse_network(std::istream& in);
NetworkSpec parse_network(const std::string& text);

}  // namespace bandyn
