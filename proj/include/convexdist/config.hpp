#pragma once
// Two-interval distance configurations.
//
// A configuration tracks a top interval of indices t_i (ascending in
// clockwise order) and a bottom interval b_j (descending in clockwise
// order), and for every cross diagonal t_i b_j a set D[i,j] of possible
// distance labels. The diagonal t_i b_j lies in level j - i; the anchor
// t_0 b_1 is the leftmost level-1 diagonal of length >= d_k, so no cell
// (i, i+1) with i < 0 may hold a finite label.

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "convexdist/labels.hpp"
#include "convexdist/rational.hpp"

namespace convexdist {

inline constexpr int levelOf(int i, int j) { return j - i; }

struct TargetSpec {
  LabelSet targets;  // nonempty subset of {1..k}, max element = k
  int k = 0;
  Rational alpha;  // exact ratio, > 1

  static TargetSpec make(const std::vector<int>& ts, Rational alpha) {
    if (ts.empty()) throw std::invalid_argument("empty target set");
    std::uint32_t m = 0;
    int k = 0;
    for (int t : ts) {
      if (t < 1 || t > kMaxK)
        throw std::invalid_argument("target index out of range 1..15");
      m |= 1u << t;
      k = std::max(k, t);
    }
    if (!alpha.greaterThan(1)) throw std::invalid_argument("alpha must be > 1");
    return TargetSpec{LabelSet::fromMask(m), k, alpha};
  }

  std::vector<int> targetList() const {
    std::vector<int> out;
    for (int t = 1; t <= k; ++t)
      if (targets.contains(t)) out.push_back(t);
    return out;
  }

  std::string targetStr() const {
    std::string s = "{";
    bool first = true;
    for (int t : targetList()) {
      if (!first) s += ',';
      s += std::to_string(t);
      first = false;
    }
    return s + "}";
  }
};

struct CellRef {
  int i = 0;
  int j = 0;
  bool operator==(const CellRef&) const = default;
};

// Cell defaults used when intervals grow. Levels that have already been
// exhaustively guessed are committed: any cell materialised there later is
// non-target by commitment (and {inf} left of the anchor in level 1).
struct GrowFill {
  int k = 0;
  LabelSet targets;
  int committedLevels = 0;  // levels 1..committedLevels fully guessed
  int partialLevel = 0;     // level currently being guessed (0 = none)
  int partialBelowPos = 0;  // positions < this are committed in partialLevel

  LabelSet cellFor(int i, int j) const {
    int lv = levelOf(i, j);
    if (lv == 1 && i < 0) return LabelSet::infOnly();
    LabelSet dflt = LabelSet::all(k);
    if (lv >= 1 && lv <= committedLevels) return dflt.minus(targets);
    if (lv == partialLevel && i < partialBelowPos) return dflt.minus(targets);
    return dflt;
  }
};

class Configuration {
 public:
  Configuration() = default;
  Configuration(int k, int tLo, int tHi, int bLo, int bHi, LabelSet fill)
      : k_(k), tLo_(tLo), tHi_(tHi), bLo_(bLo), bHi_(bHi) {
    cells_.assign(static_cast<std::size_t>(topWidth()) * bottomWidth(), fill);
  }

  int k() const { return k_; }
  int tLo() const { return tLo_; }
  int tHi() const { return tHi_; }
  int bLo() const { return bLo_; }
  int bHi() const { return bHi_; }
  int topWidth() const { return tHi_ - tLo_ + 1; }
  int bottomWidth() const { return bHi_ - bLo_ + 1; }
  int frontier() const { return frontier_; }
  void setFrontier(int f) { frontier_ = f; }

  bool inRange(int i, int j) const {
    return i >= tLo_ && i <= tHi_ && j >= bLo_ && j <= bHi_;
  }
  LabelSet at(int i, int j) const { return cells_[index(i, j)]; }
  void set(int i, int j, LabelSet s) { cells_[index(i, j)] = s; }

  const std::vector<LabelSet>& cells() const { return cells_; }
  std::vector<LabelSet>& cells() { return cells_; }
  std::size_t index(int i, int j) const {
    assert(inRange(i, j));
    return static_cast<std::size_t>(i - tLo_) * bottomWidth() + (j - bLo_);
  }

  // Grows the tracked rectangle to cover [tLo..tHi] x [bLo..bHi]; fresh
  // cells are filled per the commitment policy.
  void grow(int tLo, int tHi, int bLo, int bHi, const GrowFill& fill) {
    tLo = std::min(tLo, tLo_);
    tHi = std::max(tHi, tHi_);
    bLo = std::min(bLo, bLo_);
    bHi = std::max(bHi, bHi_);
    if (tLo == tLo_ && tHi == tHi_ && bLo == bLo_ && bHi == bHi_) return;
    std::vector<LabelSet> next(static_cast<std::size_t>(tHi - tLo + 1) *
                               (bHi - bLo + 1));
    for (int i = tLo; i <= tHi; ++i) {
      for (int j = bLo; j <= bHi; ++j) {
        std::size_t idx =
            static_cast<std::size_t>(i - tLo) * (bHi - bLo + 1) + (j - bLo);
        next[idx] = inRange(i, j) ? at(i, j) : fill.cellFor(i, j);
      }
    }
    cells_ = std::move(next);
    tLo_ = tLo;
    tHi_ = tHi;
    bLo_ = bLo;
    bHi_ = bHi;
  }

  // Target marks: cells committed as target-length diagonals while guessing.
  void addMark(int i, int j) {
    std::uint32_t m = packCell(i, j);
    auto it = std::lower_bound(marks_.begin(), marks_.end(), m);
    if (it == marks_.end() || *it != m) marks_.insert(it, m);
  }
  bool hasMark(int i, int j) const {
    return std::binary_search(marks_.begin(), marks_.end(), packCell(i, j));
  }
  std::size_t markCount() const { return marks_.size(); }
  std::vector<CellRef> marks() const {
    std::vector<CellRef> out;
    out.reserve(marks_.size());
    for (std::uint32_t m : marks_) out.push_back(unpackCell(m));
    return out;
  }

  int countTargets(int throughLevel) const {
    int n = 0;
    for (std::uint32_t m : marks_) {
      CellRef c = unpackCell(m);
      int lv = levelOf(c.i, c.j);
      if (lv >= 1 && lv <= throughLevel) ++n;
    }
    return n;
  }

  std::uint64_t hash() const {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](std::uint64_t v) {
      h ^= v;
      h *= 1099511628211ull;
    };
    mix(static_cast<std::uint64_t>(k_));
    mix(static_cast<std::uint64_t>(tLo_ + 4096));
    mix(static_cast<std::uint64_t>(tHi_ + 4096));
    mix(static_cast<std::uint64_t>(bLo_ + 4096));
    mix(static_cast<std::uint64_t>(bHi_ + 4096));
    mix(static_cast<std::uint64_t>(frontier_ + 4096));
    for (LabelSet s : cells_) mix(s.mask());
    for (std::uint32_t m : marks_) mix(m);
    return h;
  }

  bool operator==(const Configuration& o) const {
    return k_ == o.k_ && tLo_ == o.tLo_ && tHi_ == o.tHi_ && bLo_ == o.bLo_ &&
           bHi_ == o.bHi_ && frontier_ == o.frontier_ && marks_ == o.marks_ &&
           cells_ == o.cells_;
  }

  // Total order used to canonicalise live sets (schedule independence).
  bool before(const Configuration& o) const {
    auto lhs = std::tie(tLo_, tHi_, bLo_, bHi_, frontier_);
    auto rhs = std::tie(o.tLo_, o.tHi_, o.bLo_, o.bHi_, o.frontier_);
    if (lhs != rhs) return lhs < rhs;
    if (marks_ != o.marks_) return marks_ < o.marks_;
    for (std::size_t idx = 0; idx < cells_.size(); ++idx)
      if (cells_[idx].mask() != o.cells_[idx].mask())
        return cells_[idx].mask() < o.cells_[idx].mask();
    return false;
  }

  // Grid rendering: one row per bottom index (descending), one column per
  // top index (ascending), braced space-separated labels, inf as "inf".
  std::string renderGrid() const {
    std::ostringstream out;
    out << "config k=" << k_ << " top=[" << tLo_ << ".." << tHi_
        << "] bottom=[" << bLo_ << ".." << bHi_ << "] frontier=" << frontier_
        << " marks=";
    if (marks_.empty()) out << "(none)";
    for (std::uint32_t m : marks_) {
      CellRef c = unpackCell(m);
      out << "(" << c.i << "," << c.j << ")";
    }
    out << "\n";
    std::size_t w = 0;
    for (LabelSet s : cells_) w = std::max(w, s.render().size());
    std::size_t head = 0;
    for (int j = bLo_; j <= bHi_; ++j)
      head = std::max(head, std::string("b" + std::to_string(j)).size());
    out << std::string(head, ' ');
    for (int i = tLo_; i <= tHi_; ++i) {
      std::string c = "t" + std::to_string(i);
      out << "  " << c << std::string(w > c.size() ? w - c.size() : 0, ' ');
    }
    out << "\n";
    for (int j = bHi_; j >= bLo_; --j) {
      std::string rh = "b" + std::to_string(j);
      out << rh << std::string(head - rh.size(), ' ');
      for (int i = tLo_; i <= tHi_; ++i) {
        std::string c = at(i, j).render();
        out << "  " << c << std::string(w - c.size(), ' ');
      }
      out << "\n";
    }
    return out.str();
  }

 private:
  static std::uint32_t packCell(int i, int j) {
    assert(i > -2000 && i < 2000 && j > -2000 && j < 2000);
    return (static_cast<std::uint32_t>(i + 2048) << 12) |
           static_cast<std::uint32_t>(j + 2048);
  }
  static CellRef unpackCell(std::uint32_t m) {
    return CellRef{static_cast<int>(m >> 12) - 2048,
                   static_cast<int>(m & 0xfffu) - 2048};
  }

  int k_ = 0;
  int tLo_ = 0, tHi_ = -1;
  int bLo_ = 0, bHi_ = -1;
  int frontier_ = 0;
  std::vector<LabelSet> cells_;
  std::vector<std::uint32_t> marks_;
};

}  // namespace convexdist
