#include <catch2/catch_amalgamated.hpp>

#include "convexdist/labels.hpp"
#include "convexdist/rational.hpp"

using namespace convexdist;

TEST_CASE("label set basics") {
  LabelSet s = LabelSet::all(3);
  CHECK(s.size() == 4);
  CHECK(s.hasInf());
  CHECK(s.contains(1));
  CHECK(s.contains(3));
  CHECK_FALSE(s.contains(4));
  CHECK(s.minFinite() == 1);
  CHECK(s.maxFinite() == 3);
  CHECK(s.render() == "{1 2 3 inf}");
}

TEST_CASE("bound semantics") {
  // Upper bound is the smallest finite index; a pure {inf} set is strictly
  // below d_k, encoded as k+1.
  CHECK(LabelSet::all(3).upperIndexEff(3) == 1);
  CHECK(LabelSet::infOnly().upperIndexEff(3) == 4);
  CHECK(LabelSet::single(2).unite(LabelSet::single(3)).upperIndexEff(3) == 2);
  // Lower bound only exists without inf.
  CHECK(LabelSet::all(3).lowerIndex() == 0);
  CHECK(LabelSet::single(2).lowerIndex() == 2);
  CHECK(LabelSet::single(1).unite(LabelSet::single(3)).lowerIndex() == 3);
}

TEST_CASE("shrink") {
  LabelSet s = LabelSet::all(3);  // {1,2,3,inf}, k = 3
  auto lt2 = shrink(s, [](Label x) { return x != kInfLabel && x < 2; });
  REQUIRE(lt2.has_value());
  CHECK(*lt2 == LabelSet::single(1));

  auto noop = shrink(LabelSet::single(2),
                     [](Label x) { return x != kInfLabel && x <= 2; });
  REQUIRE(noop.has_value());
  CHECK(*noop == LabelSet::single(2));

  auto contradiction =
      shrink(LabelSet::infOnly(), [](Label x) { return x != kInfLabel; });
  CHECK_FALSE(contradiction.has_value());
}

TEST_CASE("shrink is monotone") {
  for (std::uint32_t m = 1; m < 16; ++m) {
    LabelSet s = LabelSet::fromMask(m);
    auto r = shrink(s, [](Label x) { return x % 2 == 1; });
    if (r) CHECK(r->subsetOf(s));
  }
}

TEST_CASE("removal helpers") {
  LabelSet s = LabelSet::all(4);
  CHECK(s.removeGeAndInf(3).render() == "{1 2}");
  CHECK(s.removeGeAndInf(1).empty());
  CHECK(s.removeLe(2).render() == "{3 4 inf}");
  CHECK(s.removeLe(4) == LabelSet::infOnly());
}

TEST_CASE("rationals compare exactly") {
  auto a = parseRational("4/3");
  REQUIRE(a.has_value());
  CHECK(a->num == 4);
  CHECK(a->den == 3);
  CHECK(a->greaterThan(1));
  CHECK_FALSE(a->greaterThan(2));
  CHECK(parseRational("8/6")->num == 4);
  CHECK_FALSE(parseRational("x").has_value());
  CHECK_FALSE(parseRational("1/0").has_value());
  // 13/8 > 13/9, exact
  CHECK(parseRational("13/8")->greaterThan(*parseRational("13/9")));
}
