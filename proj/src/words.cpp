#include "bandyn/words.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "bandyn/numtheory.hpp"

namespace bandyn {

CyclicWord::CyclicWord(std::uint64_t bits_, int len_) : bits(bits_), len(len_) {
  if (len < 1 || len > 63)
    throw std::invalid_argument("CyclicWord: length must be in [1, 63]");
  bits &= mask();
}

CyclicWord CyclicWord::from_string(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("CyclicWord: empty string");
  std::uint64_t b = 0;
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (s[k] == '1')
      b |= 1ull << k;
    else if (s[k] != '0')
      throw std::invalid_argument("CyclicWord: expected a binary string");
  }
  return CyclicWord(b, static_cast<int>(s.size()));
}

std::string CyclicWord::str() const {
  std::string s(static_cast<std::size_t>(len), '0');
  for (int k = 0; k < len; ++k)
    if ((bits >> k) & 1) s[static_cast<std::size_t>(k)] = '1';
  return s;
}

int CyclicWord::at(long long k) const {
  long long m = k % len;
  if (m < 0) m += len;
  return static_cast<int>((bits >> m) & 1);
}

CyclicWord CyclicWord::rotated(long long r) const {
  long long m = r % len;
  if (m < 0) m += len;
  if (m == 0) return *this;
  std::uint64_t lo = bits >> (len - m);
  std::uint64_t hi = (bits << m) & mask();
  return CyclicWord(hi | lo, len);
}

CyclicWord CyclicWord::concat(const CyclicWord& other) const {
  return CyclicWord(bits | (other.bits << len), len + other.len);
}

CyclicWord CyclicWord::repeated(int times) const {
  if (times < 1) throw std::invalid_argument("repeated: times must be >= 1");
  CyclicWord out = *this;
  for (int i = 1; i < times; ++i) out = out.concat(*this);
  return out;
}

bool lex_less(const CyclicWord& a, const CyclicWord& b) {
  if (a.len != b.len)
    throw std::invalid_argument("lex_less: length mismatch");
  for (int k = 0; k < a.len; ++k) {
    int x = a.at(k), y = b.at(k);
    if (x != y) return x < y;
  }
  return false;
}

int primitive_period(const CyclicWord& w) {
  for (auto p : divisors(static_cast<std::uint64_t>(w.len)))
    if (w.rotated(static_cast<long long>(p)) == w) return static_cast<int>(p);
  return w.len;
}

Necklace canonical_rotation(const CyclicWord& w) {
  CyclicWord best = w;
  for (int r = 1; r < w.len; ++r) {
    CyclicWord cand = w.rotated(r);
    if (lex_less(cand, best)) best = cand;
  }
  return Necklace{best, primitive_period(w)};
}

std::string family_name(FamilyKind k) {
  switch (k) {
    case FamilyKind::Positive: return "positive";
    case FamilyKind::NegBac: return "neg-bac";
    case FamilyKind::MixedBad: return "mixed-bad";
    case FamilyKind::NegBad: return "neg-bad";
  }
  return "?";
}

FamilyKind family_from_name(const std::string& name) {
  if (name == "positive" || name == "pos") return FamilyKind::Positive;
  if (name == "neg-bac") return FamilyKind::NegBac;
  if (name == "mixed-bad") return FamilyKind::MixedBad;
  if (name == "neg-bad") return FamilyKind::NegBad;
  throw std::invalid_argument("unknown family: " + name);
}

bool is_admissible(const CyclicWord& w, const ForbiddenFamily& fam) {
  if (fam.kind == FamilyKind::Positive) return true;
  if (fam.d < 1) throw std::invalid_argument("is_admissible: d must be >= 1");
  // shifted.at(i) == w.at(i + d); indices reduce mod len, so d >= len is fine.
  const CyclicWord s1 = w.rotated(-static_cast<long long>(fam.d));
  const std::uint64_t m = w.mask();
  switch (fam.kind) {
    case FamilyKind::NegBac:
      // forbidden: w_i == w_{i+d}
      return ((w.bits ^ s1.bits) & m) == m;
    case FamilyKind::MixedBad:
      // forbidden: w_i = w_{i+d} = 0
      return (~w.bits & ~s1.bits & m) == 0;
    case FamilyKind::NegBad: {
      if ((~w.bits & ~s1.bits & m) != 0) return false;
      const CyclicWord s2 = w.rotated(-2ll * fam.d);
      // forbidden: w_i = w_{i+d} = w_{i+2d} = 1
      return (w.bits & s1.bits & s2.bits & m) == 0;
    }
    default: return true;
  }
}

std::uint64_t AdmissibleCensus::primitive_necklaces() const {
  auto it = classes.find(n);
  return it == classes.end() ? 0 : it->second;
}

AdmissibleCensus enumerate_admissible(int n, const ForbiddenFamily& fam,
                                      int cap) {
  if (n < 1) throw std::invalid_argument("enumerate_admissible: n must be >= 1");
  if (n > cap) throw std::length_error("enumerate_admissible: cap exceeded");
  AdmissibleCensus out;
  out.n = n;
  out.family = fam;
  auto divs = divisors(static_cast<std::uint64_t>(n));
  for (auto p : divs) {
    out.primitive_period[static_cast<int>(p)] = 0;
    out.classes[static_cast<int>(p)] = 0;
  }
  const std::uint64_t end = 1ull << n;
  for (std::uint64_t b = 0; b < end; ++b) {
    CyclicWord w(b, n);
    if (!is_admissible(w, fam)) continue;
    ++out.total;
    int p = primitive_period(w);
    ++out.primitive_period[p];
    // Count a class once, at its canonical member.
    if (canonical_rotation(w).canonical == w) ++out.classes[p];
  }
  for (auto p : divs) {
    std::uint64_t acc = 0;
    for (auto q : divisors(p)) acc += out.primitive_period[static_cast<int>(q)];
    out.with_period[static_cast<int>(p)] = acc;
    out.necklaces += out.classes[static_cast<int>(p)];
  }
  return out;
}

std::vector<Necklace> primitive_admissible_necklaces(int n,
                                                     const ForbiddenFamily& fam,
                                                     int cap) {
  if (n < 1 || n > cap)
    throw std::length_error("primitive_admissible_necklaces: cap exceeded");
  std::vector<Necklace> out;
  const std::uint64_t end = 1ull << n;
  for (std::uint64_t b = 0; b < end; ++b) {
    CyclicWord w(b, n);
    if (!is_admissible(w, fam)) continue;
    if (primitive_period(w) != n) continue;
    Necklace neck = canonical_rotation(w);
    if (neck.canonical == w) out.push_back(neck);
  }
  std::sort(out.begin(), out.end(), [](const Necklace& a, const Necklace& b) {
    return lex_less(a.canonical, b.canonical);
  });
  return out;
}

bool lex_less(const InterleavingList& a, const InterleavingList& b) {
  if (a.delta != b.delta || a.K() != b.K())
    throw std::invalid_argument("lex_less: list shape mismatch");
  for (int j = 0; j < a.delta; ++j) {
    if (a.words[j] == b.words[j]) continue;
    return lex_less(a.words[j], b.words[j]);
  }
  return false;
}

InterleavingList decompose(const CyclicWord& w, int d) {
  if (d < 1) throw std::invalid_argument("decompose: d must be >= 1");
  const int n = w.len;
  const int delta = static_cast<int>(std::gcd(n, d));
  const int K = n / delta;
  InterleavingList out;
  out.delta = delta;
  out.step = d;
  out.words.reserve(static_cast<std::size_t>(delta));
  for (int j = 0; j < delta; ++j) {
    std::uint64_t b = 0;
    for (int k = 0; k < K; ++k)
      b |= static_cast<std::uint64_t>(w.at(j + static_cast<long long>(k) * d))
           << k;
    out.words.emplace_back(b, K);
  }
  return out;
}

namespace {

// Multiplicative inverse of a modulo m (gcd(a, m) = 1).
long long mod_inverse(long long a, long long m) {
  long long t = 0, new_t = 1, r = m, new_r = a % m;
  while (new_r != 0) {
    long long q = r / new_r;
    t = std::exchange(new_t, t - q * new_t);
    r = std::exchange(new_r, r - q * new_r);
  }
  if (r != 1) throw std::logic_error("mod_inverse: not invertible");
  return ((t % m) + m) % m;
}

}  // namespace

CyclicWord compose(const InterleavingList& list, int d) {
  if (list.delta < 1 || list.words.size() != static_cast<std::size_t>(list.delta))
    throw std::invalid_argument("compose: malformed list");
  const int K = list.K();
  for (const auto& w : list.words)
    if (w.len != K) throw std::invalid_argument("compose: ragged list");
  const int n = list.delta * K;
  if (std::gcd(n, d) != list.delta)
    throw std::invalid_argument("compose: delta != gcd(n, d)");
  // Letter i = j + q*delta of the word is letter q * (d/delta)^-1 mod K of
  // sub-word j (the Bezout index map).
  const long long inv = (K == 1) ? 0 : mod_inverse((d / list.delta) % K, K);
  std::uint64_t b = 0;
  for (int i = 0; i < n; ++i) {
    const int j = i % list.delta;
    const long long q = i / list.delta;
    const long long k = (K == 1) ? 0 : (q * inv) % K;
    b |= static_cast<std::uint64_t>(list.words[static_cast<std::size_t>(j)].at(k))
         << i;
  }
  return CyclicWord(b, n);
}

bool admissibility_transfer_check(int n, int d, FamilyKind kind, int cap) {
  if (n < 1 || n > cap)
    throw std::length_error("admissibility_transfer_check: cap exceeded");
  const ForbiddenFamily fam_d{kind, d};
  const ForbiddenFamily fam_1{kind, 1};
  const std::uint64_t end = 1ull << n;
  for (std::uint64_t b = 0; b < end; ++b) {
    CyclicWord w(b, n);
    InterleavingList list = decompose(w, d);
    bool every = std::all_of(
        list.words.begin(), list.words.end(),
        [&](const CyclicWord& sub) { return is_admissible(sub, fam_1); });
    if (is_admissible(w, fam_d) != every) return false;
  }
  return true;
}

bool is_representative_list(const InterleavingList& list) {
  const CyclicWord& head = list.words.front();
  if (canonical_rotation(head).canonical != head) return false;
  for (const auto& w : list.words)
    if (lex_less(w, head)) return false;
  return true;
}

InterleavingList representative_list(const Necklace& neck, int d) {
  bool found = false;
  InterleavingList best;
  for (int r = 0; r < neck.size; ++r) {
    InterleavingList cand = decompose(neck.canonical.rotated(r), d);
    if (!is_representative_list(cand)) continue;
    if (!found || lex_less(cand, best)) {
      best = std::move(cand);
      found = true;
    }
  }
  if (!found)
    throw std::logic_error("representative_list: no admissible rotation");
  return best;
}

}  // namespace bandyn
