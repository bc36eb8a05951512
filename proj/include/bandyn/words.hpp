#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace bandyn {

inline constexpr int kWordCap = 24;  // enumeration cap (2^n scans)

// Binary word with cyclic indexing: letter k reads bit k mod len.
// Bit k of `bits` holds letter w_k; strings render w_0 first.
struct CyclicWord {
  std::uint64_t bits = 0;
  int len = 0;

  CyclicWord() = default;
  CyclicWord(std::uint64_t bits, int len);

  static CyclicWord from_string(const std::string& s);
  std::string str() const;

  int at(long long k) const;
  std::uint64_t mask() const { return (len == 64) ? ~0ull : (1ull << len) - 1; }

  // rho^r: the rotation with rotated(r).at(k) == at(k - r).
  CyclicWord rotated(long long r) const;

  CyclicWord concat(const CyclicWord& other) const;
  CyclicWord repeated(int times) const;

  bool operator==(const CyclicWord& o) const = default;
};

// Lexicographic order with 0 < 1, positional, equal lengths required.
bool lex_less(const CyclicWord& a, const CyclicWord& b);

int primitive_period(const CyclicWord& w);

struct Necklace {
  CyclicWord canonical;  // least rotation
  int size = 0;          // number of distinct rotations = primitive period
};

Necklace canonical_rotation(const CyclicWord& w);

enum class FamilyKind { Positive, NegBac, MixedBad, NegBad };

// The factor family relative to anchor distance d.  Patterns constrain only
// the anchor letters: NegBac forbids equal letters at distance d, MixedBad
// forbids 0..0 at distance d, NegBad forbids 0..0 and 1..1..1 at distances
// d and 2d.  Positive is the empty family.
struct ForbiddenFamily {
  FamilyKind kind = FamilyKind::Positive;
  int d = 1;
};

std::string family_name(FamilyKind k);
FamilyKind family_from_name(const std::string& name);

bool is_admissible(const CyclicWord& w, const ForbiddenFamily& fam);

// Census of admissible words of length n: totals plus per-period and
// per-period-class counts (keys are the divisors of n).
struct AdmissibleCensus {
  int n = 0;
  ForbiddenFamily family;
  std::uint64_t total = 0;                        // |W|
  std::map<int, std::uint64_t> with_period;       // p -> |W(p)|
  std::map<int, std::uint64_t> primitive_period;  // p -> |W~(p)|
  std::map<int, std::uint64_t> classes;           // p -> |C~(p)|
  std::uint64_t necklaces = 0;                    // |C|
  std::uint64_t primitive_necklaces() const;      // |C~| = |C~(n)|
};

AdmissibleCensus enumerate_admissible(int n, const ForbiddenFamily& fam,
                                      int cap = kWordCap);

// All primitive admissible necklaces of length n, canonicals in increasing
// lexicographic order.
std::vector<Necklace> primitive_admissible_necklaces(int n,
                                                     const ForbiddenFamily& fam,
                                                     int cap = kWordCap);

// Interleaving of a length-n word into delta = gcd(n, d) sub-words of
// length K = n/delta whose letters sit d apart.
struct InterleavingList {
  std::vector<CyclicWord> words;
  int delta = 0;
  int step = 0;  // the stride d

  int K() const { return words.empty() ? 0 : words.front().len; }
  int total_length() const { return delta * K(); }
  bool operator==(const InterleavingList& o) const = default;
};

bool lex_less(const InterleavingList& a, const InterleavingList& b);

InterleavingList decompose(const CyclicWord& w, int d);
CyclicWord compose(const InterleavingList& list, int d);

// Checks, exhaustively over B^n, that a word is admissible at distance d
// iff every sub-word of its interleaving is admissible at distance 1.
bool admissibility_transfer_check(int n, int d, FamilyKind kind,
                                  int cap = kWordCap);

// The unique representative list of a conjugacy class: the smallest list
// L(w', d) over w' in the class such that L(0) is the canonical rotation of
// its own class and L(0) <= L(j) for all j.
InterleavingList representative_list(const Necklace& neck, int d);

bool is_representative_list(const InterleavingList& list);

}  // namespace bandyn
