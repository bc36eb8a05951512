#include <doctest.h>

#include <numeric>
#include <set>

#include "bandyn/injection.hpp"
#include "bandyn/numtheory.hpp"

using namespace bandyn;

namespace {
CyclicWord W(const std::string& s) { return CyclicWord::from_string(s); }
CyclicWord U(int K) { return canonical_word(CanonicalKind::PairHeavy, K); }
CyclicWord V(int K) { return canonical_word(CanonicalKind::TripleHeavy, K); }
CyclicWord X(int K) { return canonical_word(CanonicalKind::SplitPair, K); }
CyclicWord Y(int K) { return canonical_word(CanonicalKind::SplitTriple, K); }

const ForbiddenFamily kUnit{FamilyKind::NegBad, 1};
}  // namespace

TEST_CASE("canonical word values") {
  CHECK(U(5) == W("01011"));
  CHECK(U(2) == W("01"));
  CHECK(U(3) == W("011"));
  CHECK(V(7) == W("0101011"));
  CHECK(X(12) == U(7).concat(U(5)));
  CHECK(U(6) == W("010101"));
  CHECK(V(6) == W("011011"));
  CHECK_THROWS_AS(canonical_word(CanonicalKind::SplitPair, 11),
                  std::invalid_argument);
  CHECK_THROWS_AS(canonical_word(CanonicalKind::SplitTriple, 14),
                  std::invalid_argument);
  CHECK_THROWS_AS(canonical_word(CanonicalKind::PairHeavy, 1),
                  std::invalid_argument);
}

TEST_CASE("canonical words are primitive and admissible") {
  for (int K = 2; K <= 20; ++K) {
    if (K == 4 || K == 6) continue;
    CHECK(primitive_period(U(K)) == K);
    CHECK(primitive_period(V(K)) == K);
    CHECK(is_admissible(U(K), kUnit));
    CHECK(is_admissible(V(K), kUnit));
    if (K >= 12) {
      CHECK(primitive_period(X(K)) == K);
      CHECK(is_admissible(X(K), kUnit));
    }
    if (K >= 15) {
      CHECK(primitive_period(Y(K)) == K);
      CHECK(is_admissible(Y(K), kUnit));
    }
  }
}

TEST_CASE("canonical word class facts") {
  auto neck = [](const CyclicWord& w) { return canonical_rotation(w).canonical; };
  // up to K = 10 there is only one primitive class
  for (int K = 2; K <= 10; ++K) {
    if (K == 4 || K == 6) continue;
    CHECK(neck(U(K)) == neck(V(K)));
    auto necks = primitive_admissible_necklaces(K, kUnit);
    REQUIRE(necks.size() == 1);
    CHECK(necks[0].canonical == neck(U(K)));
  }
  // K = 11: two classes, pair-heavy and triple-heavy differ
  CHECK(neck(U(11)) != neck(V(11)));
  {
    auto necks = primitive_admissible_necklaces(11, kUnit);
    CHECK(necks.size() == 2);
  }
  // K = 12: pair-heavy == triple-heavy != split
  CHECK(U(12) == V(12));
  CHECK(neck(U(12)) != neck(X(12)));
  {
    auto necks = primitive_admissible_necklaces(12, kUnit);
    CHECK(necks.size() == 2);
  }
  for (int K = 13; K <= 20; ++K) {
    CHECK(neck(U(K)) != neck(V(K)));
    CHECK(neck(V(K)) != neck(X(K)));
    CHECK(neck(X(K)) != neck(U(K)));
    if (K >= 15) {
      CHECK(neck(Y(K)) != neck(U(K)));
      CHECK(neck(Y(K)) != neck(V(K)));
      CHECK(neck(Y(K)) != neck(X(K)));
    }
  }
  // Prefixed elongations of the words the construction actually uses
  // (canonical rotations of period above 3, away from the half-length
  // exception) avoid the pair- and triple-heavy classes; they reach the
  // split class only through the length-5 class when 5 | K, the case
  // elongate() diverts when it collides with the reserved split image.
  for (int K = 15; K <= 20; ++K) {
    for (auto kp64 : divisors(static_cast<std::uint64_t>(K))) {
      int kp = static_cast<int>(kp64);
      if (kp < 5 || kp >= K || kp == 6) continue;
      for (std::uint64_t b = 0; b < (1ull << kp); ++b) {
        CyclicWord u(b, kp);
        if (!is_admissible(u, kUnit)) continue;
        if (canonical_rotation(u).canonical != u) continue;
        int period = primitive_period(u);
        if (period == 2 || period == 3) continue;
        if (K % 2 == 0 && 2 * kp == K && u == U(kp)) continue;
        auto img = neck(U(K - kp).concat(u));
        CHECK(img != neck(U(K)));
        CHECK(img != neck(V(K)));
        if (img == neck(X(K))) {
          CHECK(kp == 5);
          CHECK(u == U(5));
        }
      }
    }
  }
}

TEST_CASE("elongation map") {
  CHECK(elongate(8, W("01")) == U(8));
  CHECK(elongate(9, W("011")) == U(9));
  CHECK(elongate(12, W("011011")) == X(12));
  CHECK(elongate(12, W("010101")) == U(12));
  CHECK(elongate(10, W("01011")) == V(10));      // the u(K/2) exception
  CHECK(elongate(16, U(8)) == V(16));            // likewise at K = 16
  // u(7) is the half-length word of K = 14, so the length-7 class is
  // entirely carried by the exception
  CHECK(elongate(14, W("0101011")) == V(14));
  // rotation equivariance
  CHECK(elongate(8, W("10")) == U(8).rotated(1));
  CHECK(elongate(14, W("0101011").rotated(3)) == V(14).rotated(3));
  CHECK(elongate(20, U(5)) == U(15).concat(U(5)));  // = x(20), legitimate
  // outputs are primitive for every admissible input
  for (int K : {8, 9, 10, 12, 14, 15, 16, 18, 20}) {
    for (auto kp64 : divisors(static_cast<std::uint64_t>(K))) {
      int kp = static_cast<int>(kp64);
      if (kp < 2 || kp >= K) continue;
      bool supported = (K == 8 && kp == 2) || (K == 9 && kp == 3) ||
                       (K == 10 && (kp == 2 || kp == 5)) ||
                       (K == 12 && (kp == 2 || kp == 3 || kp == 6)) ||
                       (K == 14 && (kp == 2 || kp == 7)) || (K > 14 && kp != 4);
      for (std::uint64_t b = 0; b < (1ull << kp); ++b) {
        CyclicWord u(b, kp);
        if (!is_admissible(u, kUnit)) continue;
        if (!supported) {
          CHECK_THROWS_AS(elongate(K, u), std::invalid_argument);
          continue;
        }
        CyclicWord img = elongate(K, u);
        CHECK(primitive_period(img) == K);
        CHECK(is_admissible(img, kUnit));
      }
    }
  }
  CHECK_THROWS_AS(elongate(6, W("01")), std::invalid_argument);
}

TEST_CASE("elongation decoding") {
  CHECK(elongation_source(12, U(12)) == W("01"));
  CHECK(elongation_source(16, U(16)) == W("01"));
  CHECK(elongation_source(9, U(9)) == W("011"));
  CHECK(elongation_source(15, X(15)) == W("011"));
  CHECK(elongation_source(16, V(16)) == U(8));
  CHECK(elongation_source(14, U(7).concat(W("0101011"))) == W("0101011"));
  // the K = 10 ambiguity needs the source length
  CHECK(elongation_source_sized(2, U(10)) == W("01"));
  CHECK(elongation_source_sized(5, V(10)) == U(5));
  // left inverse away from periods 2 and 3 (those decode through the
  // fixed table instead)
  for (int K : {10, 14, 15, 16, 18, 20}) {
    for (auto kp64 : divisors(static_cast<std::uint64_t>(K))) {
      int kp = static_cast<int>(kp64);
      if (kp < 5 || kp >= K || kp == 6) continue;
      for (std::uint64_t b = 0; b < (1ull << kp); ++b) {
        CyclicWord u(b, kp);
        if (!is_admissible(u, kUnit)) continue;
        int period = primitive_period(u);
        if (period == 2 || period == 3) continue;
        CHECK(elongation_source_sized(kp, elongate(K, u)) == u);
      }
    }
  }
}

TEST_CASE("parameter exclusions") {
  CHECK_THROWS_AS(InjectionParams::make(10, 1), ExcludedParamsError);
  CHECK_THROWS_AS(InjectionParams::make(10, 3), ExcludedParamsError);
  CHECK_THROWS_AS(InjectionParams::make(12, 2), ExcludedParamsError);
  CHECK_THROWS_AS(InjectionParams::make(6, 1), ExcludedParamsError);
  CHECK_THROWS_AS(InjectionParams::make(8, 2), ExcludedParamsError);  // K = 4
  CHECK(InjectionParams::exclusion_reason(12, 4) == std::nullopt);
  auto params = InjectionParams::make(12, 4);
  CHECK(params.Delta == 4);
  CHECK(params.K == 3);
  CHECK(params.source_periods() == std::vector<std::uint64_t>{3, 6});
}

TEST_CASE("printed images of the K = 6 short cases") {
  // source 001111 = (011, 011) at stride 2 inside (n, d) = (24, 4)
  auto params = InjectionParams::make(24, 4);
  auto src = canonical_rotation(W("001111"));
  auto list = representative_list(src, 2);
  REQUIRE(list.words[0] == W("011"));
  REQUIRE(list.words[1] == W("011"));
  auto img = extend_source_list(list, params);
  CHECK(img.words[0] == U(6));
  CHECK(img.words[1] == U(6));
  CHECK(img.words[2] == U(6));
  CHECK(img.words[3] == V(6));

  // source <01> inside (n, d) = (18, 3)
  auto params2 = InjectionParams::make(18, 3);
  auto src2 = canonical_rotation(W("01"));
  auto list2 = representative_list(src2, 1);
  auto img2 = extend_source_list(list2, params2);
  CHECK(img2.words[0] == U(6));
  CHECK(img2.words[1] == U(6));
  CHECK(img2.words[2] == V(6));
}

TEST_CASE("generic same-stride image elongates exactly one slot") {
  // (n, d) = (20, 2): Delta 2, K 10; p = 10 has delta_p = 2, K_p = 5, the
  // case that needs the length-aware decoder.
  auto params = InjectionParams::make(20, 2);
  auto sources = primitive_admissible_necklaces(10, {FamilyKind::NegBad, 2});
  REQUIRE(!sources.empty());
  for (auto& src : sources) {
    auto list = representative_list(src, 2);
    auto img = extend_source_list(list, params);
    int prim = 0;
    for (std::size_t j = 0; j < img.words.size(); ++j) {
      if (primitive_period(img.words[j]) == 10) {
        ++prim;
        // the elongated slot decodes back to the source slot
        CHECK(elongation_source_sized(5, img.words[j]) == list.words[j]);
      } else {
        CHECK(img.words[j] == list.words[j].repeated(2));
      }
    }
    CHECK(prim == 1);
  }
}

TEST_CASE("same-stride images at K = 8") {
  // (n, d) = (16, 2): Delta 2, K 8; p = 4: delta_p 2, K_p 2.
  auto params = InjectionParams::make(16, 2);
  auto sources = primitive_admissible_necklaces(4, {FamilyKind::NegBad, 2});
  REQUIRE(sources.size() == 1);  // <0011>
  auto list = representative_list(sources[0], 2);
  auto img = extend_source_list(list, params);
  // one slot elongated to u(8), the other repeated
  int prim = 0;
  for (auto& w : img.words) prim += primitive_period(w) == 8;
  CHECK(prim == 1);
  CHECK(primitive_period(compose(img, 2)) == 16);
}

TEST_CASE("every non-excluded parameter set verifies") {
  for (int n = 2; n <= 18; ++n) {
    for (int d = 1; d < n; ++d) {
      if (InjectionParams::exclusion_reason(n, d)) continue;
      auto report = verify_necklace_bound(n, FamilyKind::NegBad, d);
      CAPTURE(n);
      CAPTURE(d);
      CHECK(report.inequality_ok);
      CHECK(report.construction_ran);
      CHECK(report.all_images_valid);
      CHECK(report.all_roundtrips_ok);
      CHECK(report.images_pairwise_distinct);
    }
  }
}

TEST_CASE("larger spot checks, including K = 6 with Delta = 4") {
  for (auto [n, d] : std::vector<std::pair<int, int>>{
           {24, 4}, {24, 8}, {24, 6}, {20, 4}, {22, 2}, {21, 3}, {20, 5}}) {
    if (InjectionParams::exclusion_reason(n, d)) continue;
    auto report = verify_necklace_bound(n, FamilyKind::NegBad, d);
    CAPTURE(n);
    CAPTURE(d);
    CHECK(report.inequality_ok);
    CHECK(report.all_images_valid);
    CHECK(report.all_roundtrips_ok);
    CHECK(report.images_pairwise_distinct);
  }
}

TEST_CASE("degenerate admissible sets are empty") {
  // no primitive words at K = 4 (for any stride), nor at K = 6 stride 1
  CHECK(enumerate_admissible(4, kUnit).primitive_period.at(4) == 0);
  CHECK(enumerate_admissible(6, kUnit).primitive_period.at(6) == 0);
  for (int delta = 1; delta <= 5; ++delta) {
    auto census = enumerate_admissible(4 * delta, {FamilyKind::NegBad, delta});
    CHECK(census.primitive_period.at(4 * delta) == 0);
  }
}

TEST_CASE("mapped lists are representative lists") {
  auto params = InjectionParams::make(18, 3);
  for (auto p : params.source_periods()) {
    int dp = static_cast<int>(params.delta_p(p));
    for (auto& src : primitive_admissible_necklaces(static_cast<int>(p),
                                                    {FamilyKind::NegBad, dp})) {
      auto list = representative_list(src, dp);
      auto image = map_source_list(list, params);
      CHECK(is_representative_list(image));
      // idempotent: it equals the representative of its own necklace
      auto again = representative_list(
          canonical_rotation(compose(image, image.step)), params.Delta);
      CHECK(image == again);
    }
  }
}

TEST_CASE("large stride-2 parameters exercise the marker word") {
  // (n, d) = (30, 2): Delta 2, K 15 > 14, so the inserted series uses the
  // split-triple marker; sources also hit the elongation cases at K = 15.
  auto params = InjectionParams::make(30, 2);
  auto y_class = canonical_rotation(Y(15)).canonical;
  std::set<std::uint64_t> images;
  std::uint64_t count = 0;
  for (auto p : params.source_periods()) {
    int dp = static_cast<int>(params.delta_p(p));
    for (auto& src : primitive_admissible_necklaces(static_cast<int>(p),
                                                    {FamilyKind::NegBad, dp})) {
      auto list = representative_list(src, dp);
      auto image = map_source_list(list, params);
      CyclicWord w = compose(image, params.Delta);
      CHECK(primitive_period(w) == 30);
      CHECK(is_admissible(w, {FamilyKind::NegBad, 2}));
      if (dp == 1 && p < 15) {
        // the inserted sub-word is a rotation of the marker class
        int markers = 0;
        for (auto& sub : image.words)
          markers += canonical_rotation(sub).canonical == y_class;
        CHECK(markers == 1);
      }
      auto decoded = decode_image(image, params);
      REQUIRE(decoded.has_value());
      CHECK(decoded->p == p);
      CHECK(decoded->list == list);
      images.insert(canonical_rotation(w).canonical.bits);
      ++count;
    }
  }
  CHECK(images.size() == count);
  CHECK(count > 0);
}

TEST_CASE("the (18, 3) instance is a perfect matching") {
  // Exactly as many sources as primitive classes, so the injection is a
  // bijection there and every primitive admissible necklace decodes.
  auto params = InjectionParams::make(18, 3);
  std::uint64_t sources = 0;
  for (auto p : params.source_periods()) {
    int dp = static_cast<int>(params.delta_p(p));
    sources += primitive_admissible_necklaces(static_cast<int>(p),
                                              {FamilyKind::NegBad, dp})
                   .size();
  }
  auto targets = primitive_admissible_necklaces(18, {FamilyKind::NegBad, 3});
  REQUIRE(sources == targets.size());
  for (auto& neck : targets) {
    auto decoded = decode_image(neck, params);
    CHECK(decoded.has_value());
  }
}

TEST_CASE("decode rejects non-images") {
  // <0011> has period 4 < 8... use a primitive admissible necklace of
  // length 8 at stride 2 that is not an image: enumerate and count decodes.
  auto params = InjectionParams::make(16, 2);
  std::set<std::uint64_t> images;
  for (auto p : params.source_periods()) {
    int dp = static_cast<int>(params.delta_p(p));
    for (auto& src : primitive_admissible_necklaces(static_cast<int>(p),
                                                    {FamilyKind::NegBad, dp}))
      images.insert(map_necklace(src, params).canonical.bits);
  }
  int non_images = 0, decoded = 0;
  for (auto& neck :
       primitive_admissible_necklaces(16, {FamilyKind::NegBad, 2})) {
    auto out = decode_image(neck, params);
    if (images.count(neck.canonical.bits)) {
      CHECK(out.has_value());
      ++decoded;
    } else {
      CHECK_FALSE(out.has_value());
      ++non_images;
    }
  }
  CHECK(decoded == static_cast<int>(images.size()));
  CHECK(non_images > 0);
}

TEST_CASE("necklace bound for the mixed family by counting") {
  for (auto [n, d] : std::vector<std::pair<int, int>>{{6, 2}, {12, 4}, {15, 3}}) {
    auto report = verify_necklace_bound(n, FamilyKind::MixedBad, d);
    CHECK(report.inequality_ok);
    CHECK_FALSE(report.construction_ran);
  }
}

TEST_CASE("excluded parameters are reported, not verified") {
  auto report = verify_necklace_bound(10, FamilyKind::NegBad, 1);
  CHECK(report.excluded);
  CHECK_FALSE(report.inequality_ok);  // C = 3 > 2 C~ = 2
  CHECK(report.necklaces == 3);
  CHECK(report.primitive_necklaces == 1);

  auto report2 = verify_necklace_bound(12, FamilyKind::NegBad, 2);
  CHECK(report2.excluded);
  CHECK_FALSE(report2.inequality_ok);
}
