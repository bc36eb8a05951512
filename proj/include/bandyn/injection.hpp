#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bandyn/words.hpp"

namespace bandyn {

// Parameters of the periodic-to-primitive necklace injection for the
// {00, 111}-type family: target length n, stride d, Delta = gcd(n, d),
// K = n / Delta.
struct InjectionParams {
  int n = 0;
  int d = 0;
  int Delta = 1;
  int K = 1;

  // Reason the construction is undefined at (n, d), or nullopt when the
  // parameters are in the construction's domain.  Excluded are K in {1, 4}
  // (no primitive admissible words at all), (Delta, K) in {(1,10), (2,6)}
  // (the known counterexample pairs) and (1, 6) (same defect as K = 4:
  // every admissible word of length 6 at stride 1 is imprimitive).
  static std::optional<std::string> exclusion_reason(int n, int d);
  static InjectionParams make(int n, int d);  // throws on excluded pairs

  std::uint64_t delta_p(std::uint64_t p) const;
  std::uint64_t k_p(std::uint64_t p) const;
  // Proper divisors p of n that carry sources (K_p > 1).
  std::vector<std::uint64_t> source_periods() const;
};

struct ExcludedParamsError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// The four canonical primitive words over the macro-letters 01 and 011.
// PairHeavy maximizes 01 blocks, TripleHeavy maximizes 011 blocks;
// SplitPair(K) = PairHeavy(K-5) PairHeavy(5) for K >= 12 and
// SplitTriple(K) = TripleHeavy(K-7) TripleHeavy(7) for K > 14.
enum class CanonicalKind { PairHeavy, TripleHeavy, SplitPair, SplitTriple };

CyclicWord canonical_word(CanonicalKind kind, int K);

// Elongation of a word of some length K_p | K, K_p < K into a primitive
// admissible word of length K, rotation-equivariant.
CyclicWord elongate(int K, const CyclicWord& u);

// Left inverses of elongate.  elongation_source_sized resolves the K = 10
// ambiguity (and in general any case) by naming the source length.
CyclicWord elongation_source(int K, const CyclicWord& w);
CyclicWord elongation_source_sized(int source_len, const CyclicWord& w);

// The raw image list: turns the representative list of a primitive
// admissible necklace of length p | n, p < n into a list of Delta words of
// length K whose interleaving is primitive and admissible.
InterleavingList extend_source_list(const InterleavingList& source,
                                    const InjectionParams& params);

// Representative list of the necklace of the extended list's word.
InterleavingList map_source_list(const InterleavingList& source,
                                 const InjectionParams& params);

// The necklace-level injection.
Necklace map_necklace(const Necklace& source, const InjectionParams& params);

struct DecodedSource {
  std::uint64_t p = 0;
  InterleavingList list;  // representative list of the source necklace
};

// Constructive inverse: recovers the unique source of a representative
// list, or nullopt when the necklace is not an image.
std::optional<DecodedSource> decode_image(const InterleavingList& image,
                                          const InjectionParams& params);
std::optional<DecodedSource> decode_image(const Necklace& image,
                                          const InjectionParams& params);

struct SourceRoundtrip {
  std::uint64_t p = 0;
  CyclicWord source_canonical;
  CyclicWord image_canonical;
  bool image_primitive = false;
  bool image_admissible = false;
  bool roundtrip_ok = false;
};

struct NecklaceBoundReport {
  int n = 0, d = 0;
  FamilyKind family = FamilyKind::NegBad;
  int Delta = 1, K = 1;
  bool excluded = false;
  std::string exclusion_reason;
  std::uint64_t necklaces = 0;            // |C|
  std::uint64_t primitive_necklaces = 0;  // |C~|
  bool inequality_ok = false;             // C <= 2 C~
  // Construction verification (NegBad family, non-excluded only):
  bool construction_ran = false;
  bool all_images_valid = false;
  bool all_roundtrips_ok = false;
  bool images_pairwise_distinct = false;
  std::vector<SourceRoundtrip> rows;
};

// Counts both sides of the necklace inequality by exhaustive enumeration
// and, for the NegBad family on non-excluded parameters, verifies the
// injection constructively (image membership, decode roundtrip, pairwise
// distinct images).
NecklaceBoundReport verify_necklace_bound(int n, FamilyKind family, int d,
                                          int cap = kWordCap);

}  // namespace bandyn
