#pragma once
// Exact-arithmetic convex point sets and their distance census.
//
// Two kinds of point set share one interface:
//  - explicit integer-coordinate polygons (random generation, files);
//    all predicates are exact integer arithmetic on squared lengths;
//  - regular odd polygons, represented symbolically: the chord between
//    vertices at cyclic step s has squared length 4R^2 sin^2(pi s / n),
//    strictly increasing in s for s <= n/2, so ordering and equality of
//    chords reduce exactly to comparing steps. (No rational embedding can
//    reproduce the class structure - already the equilateral triangle has
//    none - so chords are compared by step instead of by coordinates.)

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "convexdist/config.hpp"

namespace convexdist {

struct Point {
  std::int64_t x = 0;
  std::int64_t y = 0;
  bool operator==(const Point&) const = default;
};

// Sign of the turn a->b->c: negative = clockwise, in usual y-up axes.
inline int orientation(const Point& a, const Point& b, const Point& c) {
  __int128 cross = static_cast<__int128>(b.x - a.x) * (c.y - a.y) -
                   static_cast<__int128>(b.y - a.y) * (c.x - a.x);
  if (cross > 0) return 1;
  if (cross < 0) return -1;
  return 0;
}

inline __int128 squaredDistance(const Point& a, const Point& b) {
  __int128 dx = a.x - b.x, dy = a.y - b.y;
  return dx * dx + dy * dy;
}

class ConvexPointSet {
 public:
  // Explicit polygon; vertices must be in strictly convex clockwise order.
  // Throws std::invalid_argument naming the violating triple otherwise.
  static ConvexPointSet fromPoints(std::vector<Point> pts) {
    ConvexPointSet p;
    p.kind_ = Kind::Explicit;
    p.pts_ = std::move(pts);
    p.n_ = static_cast<int>(p.pts_.size());
    if (p.n_ < 3) throw std::invalid_argument("need at least 3 points");
    for (int i = 0; i < p.n_; ++i) {
      const Point& a = p.pts_[i];
      const Point& b = p.pts_[(i + 1) % p.n_];
      const Point& c = p.pts_[(i + 2) % p.n_];
      if (orientation(a, b, c) >= 0) {
        std::ostringstream msg;
        msg << "not strictly convex clockwise at triple (" << i << ","
            << (i + 1) % p.n_ << "," << (i + 2) % p.n_ << ")";
        throw std::invalid_argument(msg.str());
      }
    }
    return p;
  }

  // Regular polygon of odd order n = 2m+1, represented symbolically.
  static ConvexPointSet regularOdd(int m) {
    if (m < 1) throw std::invalid_argument("need m >= 1");
    ConvexPointSet p;
    p.kind_ = Kind::RegularOdd;
    p.n_ = 2 * m + 1;
    return p;
  }

  int n() const { return n_; }
  bool isRegular() const { return kind_ == Kind::RegularOdd; }
  const std::vector<Point>& points() const { return pts_; }

  // Cyclic step between two vertices (1 .. floor(n/2)).
  int step(int i, int j) const {
    int d = std::abs(i - j) % n_;
    return std::min(d, n_ - d);
  }

  // Exact comparison of chord (i,j) vs (u,v): -1 shorter, 0 equal, +1 longer.
  int compareChords(int i, int j, int u, int v) const {
    if (kind_ == Kind::RegularOdd) {
      int a = step(i, j), b = step(u, v);
      return a < b ? -1 : a > b ? 1 : 0;
    }
    __int128 da = squaredDistance(pts_[i], pts_[j]);
    __int128 db = squaredDistance(pts_[u], pts_[v]);
    return da < db ? -1 : da > db ? 1 : 0;
  }

 private:
  enum class Kind { Explicit, RegularOdd };
  Kind kind_ = Kind::Explicit;
  int n_ = 0;
  std::vector<Point> pts_;
};

// Distinct distances sorted descending (class 1 = largest), multiplicities,
// and the level partition: level of a_i a_j is (i + j) mod n.
class DistanceCensus {
 public:
  explicit DistanceCensus(const ConvexPointSet& p) : n_(p.n()) {
    classOf_.assign(static_cast<std::size_t>(n_) * n_, 0);
    if (p.isRegular()) {
      int m = (n_ - 1) / 2;
      numClasses_ = m;
      multiplicity_.assign(m + 1, 0);
      for (int i = 0; i < n_; ++i) {
        for (int j = i + 1; j < n_; ++j) {
          int cls = m - p.step(i, j) + 1;
          setClass(i, j, cls);
          ++multiplicity_[cls];
        }
      }
      return;
    }
    struct Entry {
      __int128 sqd;
      int i, j;
    };
    std::vector<Entry> entries;
    entries.reserve(static_cast<std::size_t>(n_) * (n_ - 1) / 2);
    const auto& pts = p.points();
    for (int i = 0; i < n_; ++i)
      for (int j = i + 1; j < n_; ++j)
        entries.push_back({squaredDistance(pts[i], pts[j]), i, j});
    std::sort(entries.begin(), entries.end(),
              [](const Entry& a, const Entry& b) { return a.sqd > b.sqd; });
    multiplicity_.assign(1, 0);
    int cls = 0;
    __int128 prev = -1;
    for (const Entry& e : entries) {
      if (cls == 0 || e.sqd != prev) {
        ++cls;
        prev = e.sqd;
        multiplicity_.push_back(0);
      }
      setClass(e.i, e.j, cls);
      ++multiplicity_[cls];
    }
    numClasses_ = cls;
  }

  int n() const { return n_; }
  int numClasses() const { return numClasses_; }
  // Class index of the pair (i, j); 1 = largest distance.
  int classOf(int i, int j) const {
    return classOf_[static_cast<std::size_t>(i) * n_ + j];
  }
  std::uint64_t multiplicity(int cls) const { return multiplicity_[cls]; }
  std::uint64_t topK(int k) const {
    std::uint64_t total = 0;
    for (int c = 1; c <= std::min(k, numClasses_); ++c)
      total += multiplicity_[c];
    return total;
  }

  int levelIndex(int i, int j) const { return (i + j) % n_; }
  // All pairs in a level, including hull sides.
  std::vector<std::pair<int, int>> levelMembers(int level) const {
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < n_; ++i)
      for (int j = i + 1; j < n_; ++j)
        if (levelIndex(i, j) == level) out.emplace_back(i, j);
    return out;
  }
  int levelTopK(int level, int k) const {
    int count = 0;
    for (auto [i, j] : levelMembers(level))
      if (classOf(i, j) <= k) ++count;
    return count;
  }
  int maxLevelTopK(int k) const {
    int best = 0;
    for (int lv = 0; lv < n_; ++lv) best = std::max(best, levelTopK(lv, k));
    return best;
  }

 private:
  void setClass(int i, int j, int cls) {
    classOf_[static_cast<std::size_t>(i) * n_ + j] = cls;
    classOf_[static_cast<std::size_t>(j) * n_ + i] = cls;
  }
  int n_;
  int numClasses_ = 0;
  std::vector<int> classOf_;
  std::vector<std::uint64_t> multiplicity_;
};

inline ConvexPointSet genRegularOddPolygon(int m) {
  return ConvexPointSet::regularOdd(m);
}

namespace detail {

// Bounded sampling that does not depend on the standard library's
// distribution implementation, so seeds reproduce everywhere.
inline std::uint64_t nextBounded(std::mt19937_64& rng, std::uint64_t bound) {
  std::uint64_t mask = ~0ull >> std::countl_zero(bound | 1ull);
  for (;;) {
    std::uint64_t v = rng() & mask;
    if (v < bound) return v;
  }
}

}  // namespace detail

// Random strictly convex integer polygon: sample integer vectors with zero
// sum and pairwise distinct directions, sort by angle clockwise, take
// partial sums. Deterministic in the seed.
inline ConvexPointSet genRandomConvex(int n, std::uint64_t seed) {
  if (n < 3) throw std::invalid_argument("need n >= 3");
  std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ull + 1);
  const std::int64_t span = std::max<std::int64_t>(8, 4ll * n);
  for (int attempt = 0; attempt < 4096; ++attempt) {
    std::vector<Point> vecs;
    vecs.reserve(n);
    std::int64_t sx = 0, sy = 0;
    for (int i = 0; i + 1 < n; ++i) {
      std::int64_t vx =
          static_cast<std::int64_t>(detail::nextBounded(rng, 2 * span + 1)) -
          span;
      std::int64_t vy =
          static_cast<std::int64_t>(detail::nextBounded(rng, 2 * span + 1)) -
          span;
      vecs.push_back({vx, vy});
      sx += vx;
      sy += vy;
    }
    vecs.push_back({-sx, -sy});
    bool ok = true;
    for (const Point& v : vecs)
      if (v.x == 0 && v.y == 0) ok = false;
    if (!ok) continue;
    // Distinct directions (no parallel same-direction pair): otherwise the
    // partial-sum polygon has collinear triples.
    auto half = [](const Point& v) {
      return v.y < 0 || (v.y == 0 && v.x < 0) ? 1 : 0;
    };
    std::sort(vecs.begin(), vecs.end(), [&](const Point& a, const Point& b) {
      if (half(a) != half(b)) return half(a) < half(b);
      __int128 cross =
          static_cast<__int128>(a.x) * b.y - static_cast<__int128>(a.y) * b.x;
      return cross < 0;  // clockwise sweep
    });
    for (int i = 0; ok && i + 1 < n; ++i) {
      const Point& a = vecs[i];
      const Point& b = vecs[i + 1];
      if (static_cast<__int128>(a.x) * b.y ==
          static_cast<__int128>(a.y) * b.x)
        ok = false;
    }
    if (!ok) continue;
    std::vector<Point> pts(n);
    std::int64_t x = 0, y = 0;
    for (int i = 0; i < n; ++i) {
      pts[i] = {x, y};
      x += vecs[i].x;
      y += vecs[i].y;
    }
    try {
      return ConvexPointSet::fromPoints(std::move(pts));
    } catch (const std::invalid_argument&) {
      continue;
    }
  }
  throw std::runtime_error("random convex generation failed for n=" +
                           std::to_string(n));
}

inline DistanceCensus census(const ConvexPointSet& p) {
  return DistanceCensus(p);
}

// Builds the singleton configuration realised by two disjoint vertex runs
// of P: top run starts at topStart (clockwise, topLen vertices, indices
// topBase, topBase+1, ...), bottom run starts at bottomStart (clockwise,
// bottomLen vertices, indices bottomFirst, bottomFirst-1, ...). Cells get
// the class index when <= k, else inf.
inline Configuration realizeConfiguration(const ConvexPointSet& p,
                                          const DistanceCensus& cen,
                                          int topStart, int topLen,
                                          int bottomStart, int bottomLen,
                                          int k, int topBase = 0,
                                          int bottomFirst = -1) {
  const int n = p.n();
  if (topLen < 1 || bottomLen < 1 || topLen + bottomLen > n)
    throw std::invalid_argument("bad interval lengths");
  std::vector<char> used(n, 0);
  for (int r = 0; r < topLen; ++r) used[(topStart + r) % n] = 1;
  for (int r = 0; r < bottomLen; ++r) {
    int v = (bottomStart + r) % n;
    if (used[v]) throw std::invalid_argument("intervals overlap");
    used[v] = 1;
  }
  if (bottomFirst < 0) bottomFirst = bottomLen;
  Configuration c(k, topBase, topBase + topLen - 1, bottomFirst - bottomLen + 1,
                  bottomFirst, LabelSet::infOnly());
  for (int rt = 0; rt < topLen; ++rt) {
    int vt = (topStart + rt) % n;
    for (int rb = 0; rb < bottomLen; ++rb) {
      int vb = (bottomStart + rb) % n;
      int cls = cen.classOf(vt, vb);
      LabelSet s =
          cls <= k ? LabelSet::single(cls) : LabelSet::infOnly();
      c.set(topBase + rt, bottomFirst - rb, s);
    }
  }
  return c;
}

// --- point-set files: header "n k", then one "x y" pair per line ---------

struct PointSetFile {
  ConvexPointSet points;
  int k = 0;
};

namespace detail {

struct Rat {
  std::int64_t num = 0;
  std::int64_t den = 1;
};

inline Rat parseCoord(const std::string& tok) {
  auto r = parseRational(tok);
  if (!r) throw std::invalid_argument("bad coordinate '" + tok + "'");
  return Rat{r->num, r->den};
}

}  // namespace detail

inline PointSetFile loadPointSet(std::istream& in) {
  int n = 0, k = 0;
  if (!(in >> n >> k)) throw std::invalid_argument("missing 'n k' header");
  std::vector<detail::Rat> xs(n), ys(n);
  std::int64_t lcm = 1;
  for (int i = 0; i < n; ++i) {
    std::string a, b;
    if (!(in >> a >> b))
      throw std::invalid_argument("expected " + std::to_string(n) +
                                  " coordinate pairs");
    xs[i] = detail::parseCoord(a);
    ys[i] = detail::parseCoord(b);
    for (std::int64_t d : {xs[i].den, ys[i].den}) {
      std::int64_t g = std::gcd(lcm, d);
      if (lcm / g > (1ll << 40) / d)
        throw std::invalid_argument("coordinate denominators too large");
      lcm = lcm / g * d;
    }
  }
  // Scaling all coordinates by the common denominator preserves the
  // distance-class structure exactly.
  std::vector<Point> pts(n);
  for (int i = 0; i < n; ++i) {
    pts[i] = {xs[i].num * (lcm / xs[i].den), ys[i].num * (lcm / ys[i].den)};
    if (std::abs(pts[i].x) > (1ll << 42) || std::abs(pts[i].y) > (1ll << 42))
      throw std::invalid_argument("scaled coordinates too large");
  }
  return PointSetFile{ConvexPointSet::fromPoints(std::move(pts)), k};
}

inline PointSetFile loadPointSetFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  return loadPointSet(in);
}

inline void savePointSet(std::ostream& out, const ConvexPointSet& p, int k) {
  if (p.isRegular())
    throw std::invalid_argument("regular polygons have no coordinate file");
  out << p.n() << " " << k << "\n";
  for (const Point& pt : p.points()) out << pt.x << " " << pt.y << "\n";
}

}  // namespace convexdist
