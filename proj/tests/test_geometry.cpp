#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "convexdist/geometry.hpp"

using namespace convexdist;

TEST_CASE("unit square census") {
  ConvexPointSet sq = ConvexPointSet::fromPoints(
      {{0, 0}, {0, 1}, {1, 1}, {1, 0}});  // clockwise
  DistanceCensus cen = census(sq);
  CHECK(cen.numClasses() == 2);
  CHECK(cen.multiplicity(1) == 2);  // diagonals
  CHECK(cen.multiplicity(2) == 4);  // sides
  CHECK(cen.topK(2) == 6);
}

TEST_CASE("regular polygons have n of each class") {
  // Pentagon: two classes, five of each.
  DistanceCensus pent = census(genRegularOddPolygon(2));
  CHECK(pent.n() == 5);
  CHECK(pent.numClasses() == 2);
  CHECK(pent.multiplicity(1) == 5);
  CHECK(pent.multiplicity(2) == 5);

  // Triangle: one class.
  DistanceCensus tri = census(genRegularOddPolygon(1));
  CHECK(tri.numClasses() == 1);
  CHECK(tri.multiplicity(1) == 3);

  // 25-gon: m_1 = ... = m_4 = 25, so the top-4 count is 100.
  DistanceCensus c25 = census(genRegularOddPolygon(12));
  CHECK(c25.numClasses() == 12);
  for (int cls = 1; cls <= 4; ++cls) CHECK(c25.multiplicity(cls) == 25);
  CHECK(c25.topK(4) == 100);
}

TEST_CASE("level partition") {
  // Every pair lies in exactly one level; for odd n each level has (n-1)/2
  // diagonals (sides included).
  for (int n : {5, 9, 25}) {
    ConvexPointSet p = genRegularOddPolygon((n - 1) / 2);
    DistanceCensus cen = census(p);
    std::size_t total = 0;
    for (int lv = 0; lv < n; ++lv) {
      auto members = cen.levelMembers(lv);
      CHECK(members.size() == static_cast<std::size_t>((n - 1) / 2));
      total += members.size();
    }
    CHECK(total == static_cast<std::size_t>(n) * (n - 1) / 2);
  }
}

TEST_CASE("class multiplicities sum to all pairs") {
  for (std::uint64_t seed : {2ull, 13ull}) {
    int n = 17 + static_cast<int>(seed);
    DistanceCensus cen = census(genRandomConvex(n, seed));
    std::uint64_t total = 0;
    for (int c = 1; c <= cen.numClasses(); ++c) total += cen.multiplicity(c);
    CHECK(total == static_cast<std::uint64_t>(n) * (n - 1) / 2);
  }
}

TEST_CASE("per-level top-k count obeys the 2k-1 bound") {
  for (std::uint64_t seed : {9ull, 42ull, 77ull}) {
    DistanceCensus cen = census(genRandomConvex(30, seed));
    for (int k = 1; k <= 3; ++k) CHECK(cen.maxLevelTopK(k) <= 2 * k - 1);
  }
}

TEST_CASE("random convex generation is deterministic and convex") {
  ConvexPointSet a = genRandomConvex(8, 42);
  ConvexPointSet b = genRandomConvex(8, 42);
  CHECK(a.points() == b.points());
  CHECK(a.n() == 8);
  DistanceCensus cen = census(a);
  CHECK(cen.multiplicity(1) <= 8);  // diameter bound

  ConvexPointSet c = genRandomConvex(10, 7);
  DistanceCensus cen10 = census(c);
  CHECK(3 * cen10.multiplicity(2) <= 4 * 10);  // m_2 <= 4n/3

  CHECK(genRandomConvex(3, 1).n() == 3);
}

TEST_CASE("quantitative distance bounds on random sets") {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    int n = 10 + static_cast<int>(seed * 7 % 30);
    DistanceCensus cen = census(genRandomConvex(n, seed));
    CHECK(cen.multiplicity(1) <= static_cast<std::uint64_t>(n));
    CHECK(3 * cen.multiplicity(2) <= 4 * static_cast<std::uint64_t>(n));
    for (int k = 1; k <= 5; ++k)
      CHECK(cen.topK(k) <= static_cast<std::uint64_t>(2 * k - 1) * n);
  }
}

TEST_CASE("realised regular configuration is constant on anti-diagonals") {
  ConvexPointSet p = genRegularOddPolygon(12);
  DistanceCensus cen = census(p);
  Configuration r = realizeConfiguration(p, cen, 0, 4, 10, 4, 4);
  for (int i = r.tLo(); i <= r.tHi(); ++i) {
    for (int j = r.bLo(); j <= r.bHi(); ++j) {
      CHECK(r.at(i, j).isSingleton());
      if (r.inRange(i + 1, j - 1)) CHECK(r.at(i, j) == r.at(i + 1, j - 1));
    }
  }
}

TEST_CASE("realised singleton cells match hand checks") {
  // Unit square, top = {a_1}, bottom = {a_3}: the one cross distance is the
  // diagonal, class 1.
  ConvexPointSet sq = ConvexPointSet::fromPoints(
      {{0, 0}, {0, 1}, {1, 1}, {1, 0}});
  DistanceCensus cen = census(sq);
  Configuration c = realizeConfiguration(sq, cen, 1, 1, 3, 1, 2);
  CHECK(c.topWidth() == 1);
  CHECK(c.bottomWidth() == 1);
  CHECK(c.at(0, 1) == LabelSet::single(1));

  // Adjacent singletons with k = 1: a side, shorter than the diagonal.
  Configuration d = realizeConfiguration(sq, cen, 0, 1, 1, 1, 1);
  CHECK(d.at(0, 1) == LabelSet::infOnly());

  CHECK_THROWS(realizeConfiguration(sq, cen, 0, 2, 1, 2, 1));  // overlap
}

TEST_CASE("point set files round-trip and validate convexity") {
  std::stringstream file;
  file << "4 2\n0 0\n0 1\n1 1\n1 0\n";
  PointSetFile ps = loadPointSet(file);
  CHECK(ps.k == 2);
  CHECK(ps.points.n() == 4);

  // Rational coordinates scale away exactly.
  std::stringstream rat;
  rat << "3 1\n0 0\n1/2 3/2\n1 0\n";
  PointSetFile pr = loadPointSet(rat);
  CHECK(pr.points.n() == 3);

  std::stringstream bad;
  bad << "4 1\n0 0\n1 1\n2 2\n0 1\n";  // collinear triple
  CHECK_THROWS_WITH(loadPointSet(bad),
                    Catch::Matchers::ContainsSubstring("triple"));

  std::stringstream save;
  savePointSet(save, ps.points, 2);
  PointSetFile again = loadPointSet(save);
  CHECK(again.points.points() == ps.points.points());
}

TEST_CASE("orientation and chord comparison are exact") {
  CHECK(orientation({0, 0}, {1, 0}, {2, 0}) == 0);
  CHECK(orientation({0, 0}, {0, 1}, {1, 1}) == -1);  // clockwise
  CHECK(orientation({0, 0}, {1, 1}, {0, 2}) == 1);

  ConvexPointSet p = genRegularOddPolygon(3);  // 7-gon
  // Chord length grows with cyclic step.
  CHECK(p.compareChords(0, 1, 0, 2) < 0);
  CHECK(p.compareChords(0, 3, 0, 2) > 0);
  CHECK(p.compareChords(0, 3, 0, 4) == 0);  // step 3 both (7-3=4... step 3)
  CHECK(p.compareChords(2, 5, 0, 3) == 0);
}
