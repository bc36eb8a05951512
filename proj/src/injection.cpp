#include "bandyn/injection.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "bandyn/numtheory.hpp"

namespace bandyn {

namespace {

const ForbiddenFamily kUnitFamily{FamilyKind::NegBad, 1};

CyclicWord word_01() { return CyclicWord::from_string("01"); }
CyclicWord word_011() { return CyclicWord::from_string("011"); }
CyclicWord word_u6() { return CyclicWord::from_string("010101"); }
CyclicWord word_v6() { return CyclicWord::from_string("011011"); }

// Smallest t >= 0 with base.rotated(t) == w.
int rotation_offset(const CyclicWord& base, const CyclicWord& w) {
  for (int t = 0; t < base.len; ++t)
    if (base.rotated(t) == w) return t;
  throw std::logic_error("rotation_offset: words are not conjugate");
}

bool same_necklace(const CyclicWord& a, const CyclicWord& b) {
  return a.len == b.len &&
         canonical_rotation(a).canonical == canonical_rotation(b).canonical;
}

// (01)^a (011)^b
CyclicWord pair_run(int a, int b) {
  std::string s;
  for (int i = 0; i < a; ++i) s += "01";
  for (int i = 0; i < b; ++i) s += "011";
  return CyclicWord::from_string(s);
}

bool alpha_case_valid(int K, int Kp) {
  if (Kp < 2 || Kp >= K || K % Kp != 0) return false;
  if (K == 8) return Kp == 2;
  if (K == 9) return Kp == 3;
  if (K == 10) return Kp == 2 || Kp == 5;
  if (K == 12) return Kp == 2 || Kp == 3 || Kp == 6;
  if (K == 14) return Kp == 2 || Kp == 7;
  if (K > 14) return Kp != 4;
  return false;
}

}  // namespace

CyclicWord canonical_word(CanonicalKind kind, int K) {
  switch (kind) {
    case CanonicalKind::PairHeavy:
      if (K < 2) throw std::invalid_argument("canonical_word: K out of range");
      if (K == 2) return word_01();
      if (K == 3) return word_011();
      if (K == 4) return pair_run(2, 0);
      if (K == 6) return pair_run(3, 0);
      // Smallest block count b in {1, 2} keeping the word primitive.
      return (K % 2 == 1) ? pair_run((K - 3) / 2, 1) : pair_run((K - 6) / 2, 2);
    case CanonicalKind::TripleHeavy: {
      if (K < 2) throw std::invalid_argument("canonical_word: K out of range");
      if (K == 2) return word_01();
      if (K == 3) return word_011();
      if (K == 4) return pair_run(2, 0);
      if (K == 6) return pair_run(0, 2);
      // Smallest positive block count a <= 3 of the right parity.
      int a = (K % 3 == 0) ? 3 : (K % 3 == 1 ? 2 : 1);
      if (K - 2 * a < 3) throw std::invalid_argument("canonical_word: K out of range");
      return pair_run(a, (K - 2 * a) / 3);
    }
    case CanonicalKind::SplitPair:
      if (K < 12) throw std::invalid_argument("canonical_word: SplitPair needs K >= 12");
      return canonical_word(CanonicalKind::PairHeavy, K - 5)
          .concat(canonical_word(CanonicalKind::PairHeavy, 5));
    case CanonicalKind::SplitTriple:
      if (K < 15) throw std::invalid_argument("canonical_word: SplitTriple needs K > 14");
      return canonical_word(CanonicalKind::TripleHeavy, K - 7)
          .concat(canonical_word(CanonicalKind::TripleHeavy, 7));
  }
  throw std::invalid_argument("canonical_word: unknown kind");
}

namespace {

CyclicWord cw_u(int K) { return canonical_word(CanonicalKind::PairHeavy, K); }
CyclicWord cw_v(int K) { return canonical_word(CanonicalKind::TripleHeavy, K); }
CyclicWord cw_x(int K) { return canonical_word(CanonicalKind::SplitPair, K); }
CyclicWord cw_y(int K) { return canonical_word(CanonicalKind::SplitTriple, K); }

}  // namespace

CyclicWord elongate(int K, const CyclicWord& u) {
  const int Kp = u.len;
  if (K < 2 || K == 4 || K == 6)
    throw std::invalid_argument("elongate: K must avoid {1, 4, 6}");
  if (!alpha_case_valid(K, Kp))
    throw std::invalid_argument("elongate: unsupported (K, source length)");
  if (!is_admissible(u, kUnitFamily))
    throw std::invalid_argument("elongate: source word is not admissible");
  const Necklace neck = canonical_rotation(u);
  const CyclicWord udot = neck.canonical;
  const int k = rotation_offset(udot, u);
  CyclicWord img;
  const int period = primitive_period(udot);
  if (Kp == 2 || Kp == 3 || Kp == 6) {
    if (period == 2) {
      img = cw_u(K);
    } else if (period == 3) {
      img = (K < 12) ? cw_u(K) : cw_x(K);
    } else {
      throw std::invalid_argument("elongate: bad short source");
    }
  } else {
    if (K % 2 == 0 && 2 * Kp == K && udot == cw_u(Kp)) {
      img = cw_v(K);
    } else {
      img = cw_u(K - Kp).concat(udot);
      // When 3 | K and 5 | K the prefixed image of the pair-heavy length-5
      // class coincides with the split word, which is reserved for the
      // length-3 sources; divert it to the triple-heavy class, unused for
      // odd K.  For even K that class carries the half-length exception,
      // so no reserve is left; the first such K is 30, beyond the
      // enumeration cap of 24 letters.
      if (K % 3 == 0 && K >= 12 && same_necklace(img, cw_x(K))) {
        if (K % 2 == 0)
          throw std::logic_error("elongate: split-class collision at even K");
        img = cw_v(K);
      }
    }
  }
  if (primitive_period(img) != K)
    throw std::logic_error("elongate: image is not primitive");
  return img.rotated(k);
}

namespace {

// All ways of reading w as the elongation of a word of length Kp, as pairs
// (shift t, source word already rotated).  Used both by the public decoders
// and by the image decoder.
std::vector<std::pair<int, CyclicWord>> elongation_source_candidates(
    int K, const CyclicWord& w, int Kp) {
  std::vector<std::pair<int, CyclicWord>> out;
  if (!alpha_case_valid(K, Kp)) return out;
  if (Kp == 2 || Kp == 3 || Kp == 6) {
    auto add_fixed = [&](const CyclicWord& image, const CyclicWord& base) {
      if (!same_necklace(w, image)) return;
      int t = rotation_offset(image, w);
      out.emplace_back(t, base.rotated(t));
    };
    if (Kp == 2) add_fixed(cw_u(K), word_01());
    if (Kp == 3) {
      if (K == 9) add_fixed(cw_u(9), word_011());
      if (K >= 12 && K % 3 == 0) add_fixed(cw_x(K), word_011());
    }
    if (Kp == 6) {
      add_fixed(cw_u(K), word_u6());
      add_fixed(cw_x(K), word_v6());
    }
    return out;
  }
  if (K % 2 == 0 && 2 * Kp == K && same_necklace(w, cw_v(K))) {
    int t = rotation_offset(cw_v(K), w);
    out.emplace_back(t, cw_u(Kp).rotated(t));
  }
  if (K % 2 == 1 && K % 3 == 0 && K >= 12 && same_necklace(w, cw_v(K))) {
    // the diverted split-class sources
    const int t = rotation_offset(cw_v(K), w);
    for (std::uint64_t b = 0; b < (1ull << Kp); ++b) {
      CyclicWord udot(b, Kp);
      if (!is_admissible(udot, kUnitFamily)) continue;
      if (!(canonical_rotation(udot).canonical == udot)) continue;
      int pp = primitive_period(udot);
      if (pp == 2 || pp == 3) continue;
      if (same_necklace(cw_u(K - Kp).concat(udot), cw_x(K)))
        out.emplace_back(t, udot.rotated(t));
    }
  }
  // Split-class words decode through the fixed table when 3 | K, never as
  // prefixed images.
  if (K % 3 == 0 && K >= 12 && same_necklace(w, cw_x(K))) return out;
  const CyclicWord prefix = cw_u(K - Kp);
  for (int t = 0; t < K; ++t) {
    const CyclicWord aligned = w.rotated(-t);
    bool match = true;
    for (int i = 0; i < prefix.len && match; ++i)
      match = aligned.at(i) == prefix.at(i);
    if (!match) continue;
    std::uint64_t bits = 0;
    for (int i = 0; i < Kp; ++i)
      bits |= static_cast<std::uint64_t>(aligned.at(prefix.len + i)) << i;
    CyclicWord tail(bits, Kp);
    if (!is_admissible(tail, kUnitFamily)) continue;
    int period = primitive_period(tail);
    if (period == 2 || period == 3) continue;  // those use the fixed table
    // The elongation concatenates the canonical rotation; spurious
    // alignments with twisted tails are not images.
    if (canonical_rotation(tail).canonical != tail) continue;
    out.emplace_back(t, tail.rotated(t));
  }
  return out;
}

}  // namespace

CyclicWord elongation_source_sized(int source_len, const CyclicWord& w) {
  auto cands = elongation_source_candidates(w.len, w, source_len);
  if (cands.empty())
    throw std::invalid_argument("elongation_source: word is not an elongation");
  return cands.front().second;
}

CyclicWord elongation_source(int K, const CyclicWord& w) {
  if (w.len != K)
    throw std::invalid_argument("elongation_source: length mismatch");
  if (K == 10)
    throw std::invalid_argument(
        "elongation_source: K = 10 needs the sized decoder");
  // Fixed table first.
  if (same_necklace(w, cw_u(K))) {
    int t = rotation_offset(cw_u(K), w);
    if (K % 2 == 0) return word_01().rotated(t);
    if (K == 9) return word_011().rotated(t);
  }
  if (K % 3 == 0 && K >= 12 && same_necklace(w, cw_x(K)))
    return word_011().rotated(rotation_offset(cw_x(K), w));
  if (K % 2 == 0 && K > 12 && same_necklace(w, cw_v(K)))
    return cw_u(K / 2).rotated(rotation_offset(cw_v(K), w));
  std::vector<CyclicWord> found;
  for (auto Kp : divisors(static_cast<std::uint64_t>(K))) {
    if (static_cast<int>(Kp) >= K || Kp < 5) continue;
    for (auto& [t, u] : elongation_source_candidates(K, w, static_cast<int>(Kp)))
      if (std::find(found.begin(), found.end(), u) == found.end())
        found.push_back(u);
  }
  if (found.empty())
    throw std::invalid_argument("elongation_source: word is not an elongation");
  if (found.size() > 1)
    throw std::invalid_argument("elongation_source: ambiguous without a length");
  return found.front();
}

std::optional<std::string> InjectionParams::exclusion_reason(int n, int d) {
  if (n < 2 || d < 1 || d >= n)
    throw std::invalid_argument("InjectionParams: need 0 < d < n");
  const int Delta = std::gcd(n, d);
  const int K = n / Delta;
  if (K == 4) return "K = 4: every admissible word has period 2 Delta";
  if (Delta == 1 && K == 6) return "(Delta, K) = (1, 6): no primitive admissible words";
  if (Delta == 1 && K == 10) return "(Delta, K) = (1, 10): excluded pair";
  if (Delta == 2 && K == 6) return "(Delta, K) = (2, 6): excluded pair";
  return std::nullopt;
}

InjectionParams InjectionParams::make(int n, int d) {
  if (auto reason = exclusion_reason(n, d))
    throw ExcludedParamsError("injection undefined at (n=" + std::to_string(n) +
                              ", d=" + std::to_string(d) + "): " + *reason);
  InjectionParams p;
  p.n = n;
  p.d = d;
  p.Delta = std::gcd(n, d);
  p.K = n / p.Delta;
  return p;
}

std::uint64_t InjectionParams::delta_p(std::uint64_t p) const {
  return std::gcd(static_cast<std::uint64_t>(Delta), p);
}

std::uint64_t InjectionParams::k_p(std::uint64_t p) const {
  return p / delta_p(p);
}

std::vector<std::uint64_t> InjectionParams::source_periods() const {
  std::vector<std::uint64_t> out;
  for (auto p : divisors(static_cast<std::uint64_t>(n)))
    if (p < static_cast<std::uint64_t>(n) && k_p(p) > 1) out.push_back(p);
  return out;
}

namespace {

int lcm_of_periods(const std::vector<CyclicWord>& words, std::size_t from) {
  int acc = 1;
  for (std::size_t j = from; j < words.size(); ++j)
    acc = std::lcm(acc, primitive_period(words[j]));
  return acc;
}

CyclicWord truncate(const CyclicWord& w, int len) {
  std::uint64_t bits = w.bits & ((len == 64) ? ~0ull : (1ull << len) - 1);
  return CyclicWord(bits, len);
}

// The working context of one injection instance; memoizes images per
// source necklace so decoding can re-encode candidates cheaply.
struct Injector {
  InjectionParams params;
  std::map<std::pair<std::uint64_t, std::uint64_t>, InterleavingList> memo;

  explicit Injector(const InjectionParams& p) : params(p) {}

  int Delta() const { return params.Delta; }
  int K() const { return params.K; }

  // --- source validation -------------------------------------------------

  void validate_source(const InterleavingList& source) const {
    const int Kp = source.K();
    const int Dp = source.delta;
    const std::uint64_t p = static_cast<std::uint64_t>(Kp) * Dp;
    if (Kp <= 1 || p == 0 || static_cast<std::uint64_t>(params.n) % p != 0 ||
        p >= static_cast<std::uint64_t>(params.n))
      throw std::invalid_argument("injection: source length must be a proper divisor");
    if (params.delta_p(p) != static_cast<std::uint64_t>(Dp))
      throw std::invalid_argument("injection: source stride mismatch");
    if (!is_representative_list(source))
      throw std::invalid_argument("injection: source must be a representative list");
    CyclicWord w = compose(source, Dp);
    if (primitive_period(w) != static_cast<int>(p))
      throw std::invalid_argument("injection: source must be primitive");
    if (!is_admissible(w, ForbiddenFamily{FamilyKind::NegBad, Dp}))
      throw std::invalid_argument("injection: source must be admissible");
  }

  // --- shared helpers ----------------------------------------------------

  InterleavingList make_list(std::vector<CyclicWord> words) const {
    InterleavingList out;
    out.words = std::move(words);
    out.delta = static_cast<int>(out.words.size());
    out.step = Delta();
    return out;
  }

  CyclicWord word_of(const InterleavingList& list) const {
    return compose(list, Delta());
  }

  // Longest identical prefix run of each rotation's list; returns the
  // global maximum together with the reconstruction candidates (the
  // necklaces of the truncated remainder) for runs of that length.
  struct RunScan {
    int max_run = 0;
    // (delta_p, k_p, source canonical bits) reached by some maximal run
    std::set<std::tuple<int, int, std::uint64_t>> reconstructions;
  };

  RunScan scan_runs(const CyclicWord& w, bool require_imprimitive_run) const {
    RunScan scan;
    const int D = Delta();
    // Constant list views (t = Delta) do occur for primitive words, but a
    // series needs a right boundary, so they are not series at all.
    for (int q = 0; q < w.len; ++q) {
      InterleavingList list = decompose(w.rotated(q), D);
      int t = 1;
      while (t < D && list.words[static_cast<std::size_t>(t)] == list.words[0])
        ++t;
      if (t == D) continue;
      if (require_imprimitive_run &&
          primitive_period(list.words[0]) == list.words[0].len)
        continue;
      scan.max_run = std::max(scan.max_run, t);
    }
    if (scan.max_run == 0) return scan;
    for (int q = 0; q < w.len; ++q) {
      InterleavingList list = decompose(w.rotated(q), D);
      int t = 1;
      while (t < D && list.words[static_cast<std::size_t>(t)] == list.words[0])
        ++t;
      if (t == D || t != scan.max_run) continue;
      if (require_imprimitive_run &&
          primitive_period(list.words[0]) == list.words[0].len)
        continue;
      const int dp = D - t;
      const int kp = lcm_of_periods(list.words, static_cast<std::size_t>(t));
      if (kp > K() || K() % kp != 0) continue;
      std::vector<CyclicWord> tail;
      for (int j = t; j < D; ++j)
        tail.push_back(truncate(list.words[static_cast<std::size_t>(j)], kp));
      InterleavingList J;
      J.words = std::move(tail);
      J.delta = dp;
      J.step = dp;
      CyclicWord u = compose(J, dp);
      scan.reconstructions.insert(
          {dp, kp, canonical_rotation(u).canonical.bits});
    }
    return scan;
  }

  // --- the Delta_p = Delta case (K != 6) ---------------------------------

  InterleavingList extend_same_stride(const InterleavingList& source) const {
    const int Kp = source.K();
    const int rep = K() / Kp;
    std::size_t star = 0;
    if (Kp != 2 && Kp != 3 && Kp != 6) {
      while (star < source.words.size()) {
        int pj = primitive_period(source.words[star]);
        if (pj != 2 && pj != 3) break;
        ++star;
      }
      if (star == source.words.size())
        throw std::logic_error("extend_same_stride: no slot with long period");
    }
    std::vector<CyclicWord> out;
    for (std::size_t j = 0; j < source.words.size(); ++j)
      out.push_back(j == star ? elongate(K(), source.words[j])
                              : source.words[j].repeated(rep));
    return make_list(std::move(out));
  }

  // Decode counterpart: all sources whose same-stride image could be this
  // representative list.
  std::vector<std::pair<std::uint64_t, CyclicWord>> same_stride_candidates(
      const InterleavingList& rep_list) const {
    std::vector<std::pair<std::uint64_t, CyclicWord>> out;
    std::size_t star = rep_list.words.size();
    int imprim_lcm = 1;
    for (std::size_t j = 0; j < rep_list.words.size(); ++j) {
      if (primitive_period(rep_list.words[j]) == K()) {
        if (star != rep_list.words.size()) return out;  // two primitive words
        star = j;
      } else {
        imprim_lcm = std::lcm(imprim_lcm, primitive_period(rep_list.words[j]));
      }
    }
    if (star == rep_list.words.size()) return out;
    for (auto kp64 : divisors(static_cast<std::uint64_t>(K()))) {
      const int kp = static_cast<int>(kp64);
      if (kp >= K() || kp < 2) continue;
      if (kp % imprim_lcm != 0) continue;
      for (auto& [t, u] :
           elongation_source_candidates(K(), rep_list.words[star], kp)) {
        if (std::lcm(imprim_lcm, primitive_period(u)) != kp) continue;
        std::vector<CyclicWord> J;
        bool ok = true;
        for (std::size_t j = 0; j < rep_list.words.size(); ++j) {
          CyclicWord piece = (j == star) ? u : truncate(rep_list.words[j], kp);
          if (primitive_period(rep_list.words[j]) != K() &&
              kp % primitive_period(rep_list.words[j]) != 0) {
            ok = false;
            break;
          }
          if (!is_admissible(piece, kUnitFamily)) {
            ok = false;
            break;
          }
          J.push_back(piece);
        }
        if (!ok) continue;
        InterleavingList Jl;
        Jl.words = std::move(J);
        Jl.delta = Delta();
        Jl.step = Delta();
        CyclicWord src = compose(Jl, Delta());
        out.emplace_back(static_cast<std::uint64_t>(kp) * Delta(), src);
      }
    }
    return out;
  }

  // --- the Delta_p < Delta case (K != 6) ----------------------------------

  // True when the built list passes the structural checks that make the
  // inserted series recoverable.
  bool series_image_ok(const InterleavingList& image,
                       const InterleavingList& source, int D) const {
    CyclicWord w = word_of(image);
    if (primitive_period(w) != params.n) return false;
    RunScan scan = scan_runs(w, /*require_imprimitive_run=*/false);
    if (scan.max_run != D) return false;
    const int dp = source.delta;
    const int kp = source.K();
    const std::uint64_t src_bits =
        canonical_rotation(compose(source, dp)).canonical.bits;
    bool seen_source = false;
    for (const auto& [rdp, rkp, bits] : scan.reconstructions) {
      if (rdp == dp && rkp == kp) {
        if (bits != src_bits) return false;
        seen_source = true;
      }
    }
    return seen_source;
  }

  // Does some same-stride source also claim this word?  Used to reject a
  // series candidate whose image could be confused with an elongation
  // image when Delta = 2.
  bool claimed_by_same_stride(const CyclicWord& w) const {
    InterleavingList rep = representative_list(canonical_rotation(w), Delta());
    for (auto& [p2, src2] : same_stride_candidates(rep)) {
      if (primitive_period(src2) != static_cast<int>(p2)) continue;
      const int dp2 = static_cast<int>(params.delta_p(p2));
      if (dp2 != Delta()) continue;
      if (!is_admissible(src2, ForbiddenFamily{FamilyKind::NegBad, dp2}))
        continue;
      if (static_cast<std::uint64_t>(params.n) % p2 != 0 ||
          p2 >= static_cast<std::uint64_t>(params.n))
        continue;
      InterleavingList src_rep =
          representative_list(canonical_rotation(src2), dp2);
      InterleavingList img = extend_same_stride(src_rep);
      if (same_necklace(word_of(img), w)) return true;
    }
    return false;
  }

  // The designated series word for the two-sub-word case: the split-triple
  // word when it exists, otherwise the largest primitive class.
  CyclicWord a5_marker() const {
    if (K() > 14) return cw_y(K());
    auto classes = primitive_admissible_necklaces(K(), kUnitFamily);
    if (classes.empty())
      throw std::logic_error("a5_marker: no primitive words at this K");
    return classes.back().canonical;
  }

  InterleavingList extend_insert_series(const InterleavingList& source) const {
    const int Kp = source.K();
    const int Dp = source.delta;
    const int D = Delta() - Dp;
    const int rep = K() / Kp;
    auto build = [&](int jstar, const CyclicWord& z) {
      std::vector<CyclicWord> out;
      for (int j = 0; j < jstar; ++j)
        out.push_back(source.words[static_cast<std::size_t>(j)].repeated(rep));
      for (int j = 0; j < D; ++j) out.push_back(z);
      for (int j = jstar; j < Dp; ++j)
        out.push_back(source.words[static_cast<std::size_t>(j)].repeated(rep));
      return make_list(std::move(out));
    };
    auto acceptable = [&](const InterleavingList& image) {
      if (!series_image_ok(image, source, D)) return false;
      if (Delta() == 2 && claimed_by_same_stride(word_of(image))) return false;
      return true;
    };
    if (Delta() == 2 && Kp == K()) {
      // Both sub-words end up primitive and full length, so run lengths
      // cannot tell the inserted one apart.  Inserting a rotation of one
      // fixed class lets the decoder resolve the pair by re-encoding both
      // readings.
      const CyclicWord marker = a5_marker();
      for (int q = 0; q < K(); ++q) {
        InterleavingList image = build(1, marker.rotated(q));
        if (primitive_period(word_of(image)) == params.n) return image;
      }
      throw std::logic_error("extend_insert_series: no usable marker rotation");
    }
    if (K() > 14) {
      const CyclicWord y = cw_y(K());
      const int jstar = std::min(1, Dp);
      for (int q = 0; q < K(); ++q) {
        InterleavingList image = build(jstar, y.rotated(q));
        if (acceptable(image)) return image;
      }
      throw std::logic_error("extend_insert_series: no usable marker rotation");
    }
    // Fixed enumeration order: primitive admissible words of length K in
    // lexicographic order, insertion points scanned ascending.
    std::vector<CyclicWord> zs;
    for (std::uint64_t b = 0; b < (1ull << K()); ++b) {
      CyclicWord z(b, K());
      if (is_admissible(z, kUnitFamily) && primitive_period(z) == K())
        zs.push_back(z);
    }
    std::sort(zs.begin(), zs.end(),
              [](const CyclicWord& a, const CyclicWord& b) { return lex_less(a, b); });
    for (int jstar = 0; jstar < std::max(1, Dp); ++jstar)
      for (const CyclicWord& z : zs) {
        InterleavingList image = build(jstar, z);
        if (acceptable(image)) return image;
      }
    throw std::logic_error("extend_insert_series: no usable series word");
  }

  // --- the K = 6 case ------------------------------------------------------

  // The period-swap images of the stride-preserving case.  The plain
  // rule (swap the head for the other period, repeat the rest) is not
  // injective on its own: sources whose tails differ by a diagonal
  // rotation produce globally twisted, hence conjugate, images, and the
  // all-equal sources land on the short-case images.  The group
  // assignment keeps the plain image whenever it is free and otherwise
  // diverts to the first free class of the same period signature.
  struct K6Group {
    std::map<std::uint64_t, CyclicWord> image_of;   // source bits -> image canonical
    std::map<std::uint64_t, CyclicWord> source_of;  // image bits -> source canonical
  };
  std::map<int, K6Group> k6_groups;

  const K6Group& k6_group(int Kp) {
    auto it = k6_groups.find(Kp);
    if (it != k6_groups.end()) return it->second;
    K6Group group;
    const int D = Delta();
    const int p = Kp * D;
    const CyclicWord swap = (Kp == 2) ? word_v6() : word_u6();
    // Classes already spoken for by the short-case catalog.
    std::set<std::uint64_t> taken;
    for (const auto& entry : k6_catalog()) {
      const int dp = static_cast<int>(params.delta_p(entry.p));
      if (primitive_period(entry.source) != static_cast<int>(entry.p)) continue;
      if (!is_admissible(entry.source, ForbiddenFamily{FamilyKind::NegBad, dp}))
        continue;
      taken.insert(canonical_rotation(word_of(entry.image)).canonical.bits);
    }
    auto sources = primitive_admissible_necklaces(
        p, ForbiddenFamily{FamilyKind::NegBad, D});
    // Pass 1: plain images, with each contested class reserved for the
    // lexicographically first of its claimants.
    std::vector<std::pair<std::uint64_t, CyclicWord>> plain;  // src bits -> word
    std::map<std::uint64_t, std::uint64_t> reserved;          // class -> src
    for (const auto& src : sources) {
      InterleavingList rep_list = representative_list(src, D);
      std::vector<CyclicWord> words;
      words.push_back(swap);
      for (std::size_t j = 1; j < rep_list.words.size(); ++j)
        words.push_back(rep_list.words[j].repeated(6 / Kp));
      CyclicWord w = word_of(make_list(std::move(words)));
      std::uint64_t cls = canonical_rotation(w).canonical.bits;
      plain.emplace_back(src.canonical.bits, w);
      if (!taken.count(cls) && !reserved.count(cls))
        reserved[cls] = src.canonical.bits;
    }
    // Pool of all classes with the same period signature, in order.
    std::vector<CyclicWord> pool;
    {
      std::set<std::uint64_t> seen;
      std::vector<CyclicWord> shorts;
      for (std::uint64_t b = 0; b < (1ull << Kp); ++b) {
        CyclicWord cand(b, Kp);
        if (is_admissible(cand, kUnitFamily)) shorts.push_back(cand);
      }
      std::vector<CyclicWord> swaps;
      for (int r = 0; r < primitive_period(swap); ++r)
        swaps.push_back(swap.rotated(r));
      std::vector<std::size_t> idx(static_cast<std::size_t>(D - 1), 0);
      for (int pos = 0; pos < D; ++pos)
        for (const CyclicWord& sw : swaps) {
          std::fill(idx.begin(), idx.end(), 0);
          while (true) {
            std::vector<CyclicWord> words;
            for (int j = 0, k = 0; j < D; ++j)
              words.push_back(j == pos ? sw
                                       : shorts[idx[static_cast<std::size_t>(k++)]]
                                             .repeated(6 / Kp));
            CyclicWord w = word_of(make_list(std::move(words)));
            if (primitive_period(w) == params.n &&
                is_admissible(w, ForbiddenFamily{FamilyKind::NegBad, D})) {
              CyclicWord canon = canonical_rotation(w).canonical;
              if (seen.insert(canon.bits).second) pool.push_back(canon);
            }
            int j = D - 2;
            while (j >= 0 && ++idx[static_cast<std::size_t>(j)] == shorts.size())
              idx[static_cast<std::size_t>(j--)] = 0;
            if (j < 0) break;
          }
        }
      std::sort(pool.begin(), pool.end(),
                [](const CyclicWord& a, const CyclicWord& b) { return lex_less(a, b); });
    }
    // Pass 2: assign.
    for (const auto& [src_bits, w] : plain) {
      std::uint64_t cls = canonical_rotation(w).canonical.bits;
      CyclicWord assigned = canonical_rotation(w).canonical;
      bool ok = !taken.count(cls) && reserved.at(cls) == src_bits &&
                !group.source_of.count(cls);
      if (!ok) {
        bool found = false;
        for (const CyclicWord& cand : pool) {
          if (taken.count(cand.bits) || group.source_of.count(cand.bits))
            continue;
          auto res = reserved.find(cand.bits);
          if (res != reserved.end() && res->second != src_bits) continue;
          assigned = cand;
          found = true;
          break;
        }
        if (!found)
          throw std::logic_error("k6_group: image pool exhausted");
      }
      group.image_of.emplace(src_bits, assigned);
      group.source_of.emplace(assigned.bits, CyclicWord(src_bits, p));
    }
    return k6_groups.emplace(Kp, std::move(group)).first->second;
  }

  // The finite image catalog of the short-series and alternating cases.
  struct CatalogEntry {
    std::uint64_t p;
    CyclicWord source;  // a member word of the source necklace
    InterleavingList image;
  };

  std::vector<CatalogEntry> k6_catalog() const {
    std::vector<CatalogEntry> out;
    const CyclicWord u = word_u6(), v = word_v6();
    const int D = Delta();
    auto add = [&](std::uint64_t p, const CyclicWord& src,
                   std::vector<CyclicWord> words) {
      if (static_cast<std::uint64_t>(params.n) % p != 0 ||
          p >= static_cast<std::uint64_t>(params.n))
        return;
      if (params.k_p(p) <= 1) return;
      out.push_back(CatalogEntry{p, src, make_list(std::move(words))});
    };
    if (D == 4) {
      add(6, CyclicWord::from_string("001111"), {u, u, u, v});
      add(12, CyclicWord::from_string("001101100111"), {v, v, v, u});
      std::vector<CyclicWord> w4 = {v, v, u, u};
      add(3, word_011(), std::move(w4));
    }
    if (D != 4 && D % 3 != 0) {
      // alternating triple-heavy pattern for the length-3 source
      std::vector<CyclicWord> words;
      int a = D % 3;
      for (int i = 0; i < a; ++i) words.push_back(v);
      for (int i = 0; i < (D - a) / 3; ++i) {
        words.push_back(v);
        words.push_back(u);
        words.push_back(v);
      }
      add(3, word_011(), std::move(words));
    }
    if (D % 2 == 1) {
      // alternating pair-heavy pattern for the length-2 source
      std::vector<CyclicWord> words;
      words.push_back(u);
      for (int i = 0; i < (D - 1) / 2; ++i) {
        words.push_back(u);
        words.push_back(v);
      }
      add(2, word_01(), std::move(words));
    }
    return out;
  }

  bool k6_claimed_elsewhere(const CyclicWord& w) {
    for (const auto& entry : k6_catalog())
      if (same_necklace(word_of(entry.image), w)) return true;
    const std::uint64_t bits = canonical_rotation(w).canonical.bits;
    for (int kp : {2, 3})
      if (k6_group(kp).source_of.count(bits)) return true;
    return false;
  }

  InterleavingList extend_k6_insert_series(const InterleavingList& source) {
    const int Kp = source.K();
    const int Dp = source.delta;
    const int D = Delta() - Dp;
    const int rep = 6 / Kp;
    std::vector<CyclicWord> zs = {word_u6(), word_v6(), word_u6().rotated(1),
                                  word_v6().rotated(1), word_v6().rotated(2)};
    std::sort(zs.begin(), zs.end(),
              [](const CyclicWord& a, const CyclicWord& b) { return lex_less(a, b); });
    auto build = [&](int jstar, const CyclicWord& z) {
      std::vector<CyclicWord> out;
      for (int j = 0; j < jstar; ++j)
        out.push_back(source.words[static_cast<std::size_t>(j)].repeated(rep));
      for (int j = 0; j < D; ++j) out.push_back(z);
      for (int j = jstar; j < Dp; ++j)
        out.push_back(source.words[static_cast<std::size_t>(j)].repeated(rep));
      return make_list(std::move(out));
    };
    const std::uint64_t src_bits =
        canonical_rotation(compose(source, Dp)).canonical.bits;
    for (int jstar = 0; jstar < Dp; ++jstar)
      for (const CyclicWord& z : zs) {
        InterleavingList image = build(jstar, z);
        CyclicWord w = word_of(image);
        if (primitive_period(w) != params.n) continue;
        RunScan scan = scan_runs(w, /*require_imprimitive_run=*/true);
        if (scan.max_run != D) continue;
        bool ok = true, seen = false;
        for (const auto& [rdp, rkp, bits] : scan.reconstructions) {
          if (rdp == Dp && rkp == Kp) {
            if (bits != src_bits) ok = false;
            seen = true;
          }
        }
        if (!ok || !seen) continue;
        if (k6_claimed_elsewhere(w)) continue;
        return image;
      }
    throw std::logic_error("extend_k6_insert_series: no usable series word");
  }

  InterleavingList extend_k6(const InterleavingList& source) {
    const int Kp = source.K();
    const int Dp = source.delta;
    if (Delta() < 3)
      throw std::logic_error("extend_k6: needs Delta >= 3");
    if (Dp == Delta()) {
      const auto& group = k6_group(Kp);
      auto it = group.image_of.find(
          canonical_rotation(compose(source, Dp)).canonical.bits);
      if (it == group.image_of.end())
        throw std::logic_error("extend_k6: source missing from its group");
      return representative_list(canonical_rotation(it->second), Delta());
    }
    if (Dp == 1 || Delta() - Dp <= 2) {
      const std::uint64_t p = static_cast<std::uint64_t>(Kp) * Dp;
      const CyclicWord src = compose(source, Dp);
      for (const auto& entry : k6_catalog())
        if (entry.p == p && same_necklace(entry.source, src)) return entry.image;
      throw std::logic_error("extend_k6: source outside the short-case catalog");
    }
    return extend_k6_insert_series(source);
  }

  // --- public construction -------------------------------------------------

  InterleavingList extend(const InterleavingList& source) {
    validate_source(source);
    InterleavingList image;
    if (K() == 6)
      image = extend_k6(source);
    else if (source.delta == Delta())
      image = extend_same_stride(source);
    else
      image = extend_insert_series(source);
    CyclicWord w = word_of(image);
    if (primitive_period(w) != params.n)
      throw std::logic_error("injection: image word is not primitive");
    if (!is_admissible(w, ForbiddenFamily{FamilyKind::NegBad, Delta()}))
      throw std::logic_error("injection: image word is not admissible");
    return image;
  }

  InterleavingList image(const InterleavingList& source) {
    validate_source(source);
    const std::uint64_t p =
        static_cast<std::uint64_t>(source.K()) * source.delta;
    const std::uint64_t key =
        canonical_rotation(compose(source, source.delta)).canonical.bits;
    auto it = memo.find({p, key});
    if (it != memo.end()) return it->second;
    InterleavingList raw = extend(source);
    InterleavingList rep =
        representative_list(canonical_rotation(word_of(raw)), Delta());
    memo.insert({{p, key}, rep});
    return rep;
  }

  // --- decoding --------------------------------------------------------------

  std::optional<DecodedSource> decode(const InterleavingList& input) {
    CyclicWord w = word_of(input);
    if (!is_representative_list(input) ||
        primitive_period(w) != params.n ||
        !is_admissible(w, ForbiddenFamily{FamilyKind::NegBad, Delta()}))
      throw std::invalid_argument(
          "decode: input must represent a primitive admissible necklace");
    std::vector<std::pair<std::uint64_t, CyclicWord>> candidates;
    if (K() == 6) {
      const std::uint64_t bits = canonical_rotation(w).canonical.bits;
      for (int kp : {2, 3}) {
        const auto& group = k6_group(kp);
        auto it = group.source_of.find(bits);
        if (it != group.source_of.end())
          candidates.emplace_back(static_cast<std::uint64_t>(kp) * Delta(),
                                  it->second);
      }
      // imprimitive series
      RunScan scan = scan_runs(w, /*require_imprimitive_run=*/true);
      if (scan.max_run > 2 && scan.max_run < Delta() - 1)
        for (const auto& [dp, kp, bits2] : scan.reconstructions)
          candidates.emplace_back(static_cast<std::uint64_t>(dp) * kp,
                                  CyclicWord(bits2, dp * kp));
      for (const auto& entry : k6_catalog())
        if (same_necklace(word_of(entry.image), w))
          candidates.emplace_back(entry.p, entry.source);
    } else {
      int prim = 0;
      for (const auto& word : input.words)
        if (primitive_period(word) == word.len) ++prim;
      const int imprim = Delta() - prim;
      if (prim == 1 && imprim == 0) {
        // Delta = 1: the word itself is an elongation.
        for (auto kp64 : divisors(static_cast<std::uint64_t>(K()))) {
          const int kp = static_cast<int>(kp64);
          if (kp < 2 || kp >= K()) continue;
          for (auto& [t, u] : elongation_source_candidates(K(), w, kp))
            if (primitive_period(u) == kp)
              candidates.emplace_back(static_cast<std::uint64_t>(kp), u);
        }
      }
      if (prim == 1 && imprim >= 1) {
        for (auto& c : same_stride_candidates(input)) candidates.push_back(c);
        if (Delta() == 2) {
          // one inserted primitive word next to one repeated source word
          for (const auto& word : input.words) {
            int pj = primitive_period(word);
            if (pj == word.len) continue;
            candidates.emplace_back(static_cast<std::uint64_t>(pj),
                                    truncate(word, pj));
          }
        }
      }
      if (prim >= 2) {
        RunScan scan = scan_runs(w, /*require_imprimitive_run=*/false);
        if (2 * scan.max_run >= Delta())
          for (const auto& [dp, kp, bits] : scan.reconstructions)
            candidates.emplace_back(static_cast<std::uint64_t>(dp) * kp,
                                    CyclicWord(bits, dp * kp));
      }
    }
    // Verify candidates by re-encoding.
    std::optional<DecodedSource> found;
    std::set<std::pair<std::uint64_t, std::uint64_t>> seen;
    for (auto& [p, src] : candidates) {
      if (static_cast<std::uint64_t>(params.n) % p != 0 ||
          p >= static_cast<std::uint64_t>(params.n))
        continue;
      if (params.k_p(p) <= 1) continue;
      if (src.len != static_cast<int>(p)) continue;
      if (primitive_period(src) != static_cast<int>(p)) continue;
      const int dp = static_cast<int>(params.delta_p(p));
      if (!is_admissible(src, ForbiddenFamily{FamilyKind::NegBad, dp})) continue;
      const std::uint64_t key = canonical_rotation(src).canonical.bits;
      if (!seen.insert({p, key}).second) continue;
      InterleavingList rep = representative_list(canonical_rotation(src), dp);
      if (!(image(rep) == input)) continue;
      if (found && canonical_rotation(compose(found->list, found->list.delta))
                           .canonical.bits != key)
        throw std::logic_error("decode: two distinct sources share an image");
      if (!found) found = DecodedSource{p, rep};
    }
    return found;
  }
};

}  // namespace

InterleavingList extend_source_list(const InterleavingList& source,
                                    const InjectionParams& params) {
  return Injector(params).extend(source);
}

InterleavingList map_source_list(const InterleavingList& source,
                                 const InjectionParams& params) {
  return Injector(params).image(source);
}

Necklace map_necklace(const Necklace& source, const InjectionParams& params) {
  const std::uint64_t p = static_cast<std::uint64_t>(source.canonical.len);
  const int dp = static_cast<int>(params.delta_p(p));
  Injector inj(params);
  InterleavingList rep = representative_list(source, dp);
  InterleavingList img = inj.image(rep);
  return canonical_rotation(compose(img, params.Delta));
}

std::optional<DecodedSource> decode_image(const InterleavingList& image,
                                          const InjectionParams& params) {
  return Injector(params).decode(image);
}

std::optional<DecodedSource> decode_image(const Necklace& image,
                                          const InjectionParams& params) {
  return Injector(params).decode(
      representative_list(image, params.Delta));
}

NecklaceBoundReport verify_necklace_bound(int n, FamilyKind family, int d,
                                          int cap) {
  if (n < 2 || d < 1 || d >= n)
    throw std::invalid_argument("verify_necklace_bound: need 0 < d < n");
  NecklaceBoundReport report;
  report.n = n;
  report.d = d;
  report.family = family;
  report.Delta = std::gcd(n, d);
  report.K = n / report.Delta;
  if (auto reason = InjectionParams::exclusion_reason(n, d)) {
    report.excluded = true;
    report.exclusion_reason = *reason;
  }
  AdmissibleCensus census = enumerate_admissible(n, ForbiddenFamily{family, d}, cap);
  report.necklaces = census.necklaces;
  report.primitive_necklaces = census.primitive_necklaces();
  report.inequality_ok = census.necklaces <= 2 * census.primitive_necklaces();
  if (family != FamilyKind::NegBad || report.excluded) return report;

  InjectionParams params = InjectionParams::make(n, d);
  Injector inj(params);
  report.construction_ran = true;
  report.all_images_valid = true;
  report.all_roundtrips_ok = true;
  std::set<std::uint64_t> image_bits;
  std::uint64_t images = 0;
  for (auto p : params.source_periods()) {
    const int dp = static_cast<int>(params.delta_p(p));
    for (const Necklace& src : primitive_admissible_necklaces(
             static_cast<int>(p), ForbiddenFamily{FamilyKind::NegBad, dp}, cap)) {
      SourceRoundtrip row;
      row.p = p;
      row.source_canonical = src.canonical;
      InterleavingList src_rep = representative_list(src, dp);
      InterleavingList img = inj.image(src_rep);
      CyclicWord w = compose(img, params.Delta);
      Necklace img_neck = canonical_rotation(w);
      row.image_canonical = img_neck.canonical;
      row.image_primitive = img_neck.size == n;
      row.image_admissible =
          is_admissible(w, ForbiddenFamily{FamilyKind::NegBad, params.Delta});
      auto decoded = inj.decode(img);
      row.roundtrip_ok = decoded.has_value() && decoded->p == p &&
                         decoded->list == src_rep;
      report.all_images_valid &= row.image_primitive && row.image_admissible;
      report.all_roundtrips_ok &= row.roundtrip_ok;
      image_bits.insert(img_neck.canonical.bits);
      ++images;
      report.rows.push_back(std::move(row));
    }
  }
  report.images_pairwise_distinct = image_bits.size() == images;
  return report;
}

}  // namespace bandyn
