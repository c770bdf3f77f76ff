#pragma once
// Randomised harnesses anchoring the symbolic rules to real geometry.
//
// Soundness: realise the true labels of random convex point sets over
// random disjoint interval pairs, loosen cells to random supersets, and
// propagate. No rule may remove a true label and no rule may report a
// contradiction; either event is an implementation bug and is reported
// with the offending rule and a serialised counterexample.
//
// Exhaustiveness: map a point set into the search's anchored strip
// coordinates and assert that while its per-level target counts keep it
// alive, some live configuration contains its truth pointwise.

#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "convexdist/deduce.hpp"
#include "convexdist/geometry.hpp"
#include "convexdist/search.hpp"

namespace convexdist {

using Propagator =
    std::function<PropagateResult(Configuration&, const TraceSink*)>;

inline Propagator defaultPropagator() {
  return [](Configuration& c, const TraceSink* t) {
    return propagateToFixpoint(c, t);
  };
}

struct SoundnessViolation {
  std::string rule;
  std::uint64_t trial = 0;
  std::string detail;  // serialised truth + loosened configurations
};

struct SoundnessReport {
  std::uint64_t trials = 0;
  std::uint64_t violations = 0;
  std::uint64_t violationsByRule[static_cast<int>(RuleId::Count)] = {};
  std::optional<SoundnessViolation> first;
};

struct SoundnessOptions {
  std::uint64_t trials = 1000;
  std::uint64_t seed = 1;
  int maxN = 40;
  int maxK = 4;
  Propagator propagator = defaultPropagator();
};

inline SoundnessReport soundnessHarness(const SoundnessOptions& opt) {
  SoundnessReport rep;
  std::mt19937_64 rng(opt.seed * 0x2545f4914f6cdd1dull + 99);
  auto pick = [&rng](int lo, int hi) {
    return lo + static_cast<int>(detail::nextBounded(
                    rng, static_cast<std::uint64_t>(hi - lo + 1)));
  };

  for (std::uint64_t trial = 0; trial < opt.trials; ++trial) {
    // Mix in regular polygons: their dense top-k patterns drive the rules
    // far harder than random sets, whose top-k diagonals are scarce.
    int n = pick(8, std::max(8, opt.maxN));
    ConvexPointSet p = trial % 4 == 0
                           ? genRegularOddPolygon(std::max(4, n / 2))
                           : genRandomConvex(n, rng());
    n = p.n();
    DistanceCensus cen = census(p);
    int k = pick(1, opt.maxK);
    int topLen = pick(2, std::min(7, n / 2 - 1));
    int bottomLen = pick(2, std::min(7, n - topLen - 2));
    int slack = n - topLen - bottomLen;
    int g1 = pick(0, slack);
    int topStart = pick(0, n - 1);
    int bottomStart = (topStart + topLen + g1) % n;

    Configuration truth = realizeConfiguration(p, cen, topStart, topLen,
                                               bottomStart, bottomLen, k);
    Configuration loose = truth;
    for (LabelSet& cell : loose.cells()) {
      if (rng() & 1)
        cell = cell.unite(LabelSet::fromMask(
            static_cast<std::uint32_t>(rng()) & LabelSet::all(k).mask()));
    }

    bool bad = false;
    RuleId badRule = RuleId::Count;
    std::vector<std::string> traceLines;
    TraceSink sink = [&](const TraceEvent& ev) {
      if (traceLines.size() < 400) traceLines.push_back(formatTraceEvent(ev));
      if (bad) return;
      LabelSet t = truth.at(ev.cell.i, ev.cell.j);
      if (t.subsetOf(ev.before) && !t.subsetOf(ev.after)) {
        bad = true;
        badRule = ev.rule;
      }
    };
    Configuration work = loose;
    PropagateResult pr = opt.propagator(work, &sink);
    if (pr.status == Status::Contradiction && !bad) {
      bad = true;
      badRule = pr.contradictionRule;
    }
    ++rep.trials;
    if (bad) {
      ++rep.violations;
      ++rep.violationsByRule[static_cast<int>(badRule)];
      if (!rep.first) {
        std::ostringstream detail;
        detail << "trial " << trial << " n=" << n << " k=" << k << "\n";
        detail << "truth:\n" << truth.renderGrid();
        detail << "loosened:\n" << loose.renderGrid();
        detail << "deduction trace:\n";
        for (const std::string& line : traceLines) detail << line << "\n";
        rep.first = SoundnessViolation{ruleName(badRule), trial, detail.str()};
      }
    }
  }
  return rep;
}

// ------------------------------------------------------------------------
// Exhaustiveness spot check
// ------------------------------------------------------------------------

namespace detail {

inline int modCentered(int v, int n) {
  int r = ((v % n) + n) % n;
  return r > n / 2 ? r - n : r;
}

}  // namespace detail

// A point set viewed through the search's anchored strip coordinates:
// t_i = u + i, b_j = v - j + 1 (vertices mod n), anchor t_0 b_1 = (u, v).
struct StripFrame {
  const ConvexPointSet* p = nullptr;
  const DistanceCensus* cen = nullptr;
  int k = 0;
  int u = 0, v = 0;
  int safeDepth = 0;                  // levels with no special diagonal
  std::vector<int> targetsPerLevel;   // strip levels 1..safeDepth

  int topVertex(int i) const {
    int n = p->n();
    return ((u + i) % n + n) % n;
  }
  int bottomVertex(int j) const {
    int n = p->n();
    return ((v - j + 1) % n + n) % n;
  }
  // Truth label of cell (i,j): the class index if <= k, else inf.
  Label truthLabel(int i, int j) const {
    int cls = cen->classOf(topVertex(i), bottomVertex(j));
    return cls <= k ? cls : kInfLabel;
  }
  bool covered(const Configuration& c) const {
    for (int i = c.tLo(); i <= c.tHi(); ++i)
      for (int j = c.bLo(); j <= c.bHi(); ++j)
        if (!c.at(i, j).contains(truthLabel(i, j))) return false;
    return true;
  }
  bool survives(int level, const Rational& alpha) const {
    int total = 0;
    for (int l = 1; l <= level; ++l) {
      total += targetsPerLevel[l - 1];
      if (!(static_cast<__int128>(total) * alpha.den >
            static_cast<__int128>(alpha.num) * l))
        return false;
    }
    return true;
  }
};

// Builds the frame for the level whose target count is largest, anchored at
// its leftmost >= d_k diagonal. Returns nullopt when the point set has
// special diagonals at every depth or no top-k level at all.
inline std::optional<StripFrame> buildStripFrame(const ConvexPointSet& p,
                                                 const DistanceCensus& cen,
                                                 const TargetSpec& spec,
                                                 int maxDepth) {
  const int n = p.n();
  const int k = spec.k;

  // Deepest level with no special diagonal: every pair of length >= d_k
  // must keep more than 2(2k + l) vertices between its endpoints.
  int sepMin = n;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (cen.classOf(i, j) <= k) sepMin = std::min(sepMin, p.step(i, j));
  int safeDepth = 0;
  while (safeDepth < maxDepth && sepMin - 1 > 2 * (2 * k + safeDepth + 1))
    ++safeDepth;
  if (safeDepth == 0) return std::nullopt;

  // Pick the level with the most targets.
  int bestLevel = -1, bestCount = 0;
  for (int lv = 0; lv < n; ++lv) {
    int cnt = 0;
    bool hasTopK = false;
    for (auto [i, j] : cen.levelMembers(lv)) {
      int cls = cen.classOf(i, j);
      if (cls <= k) hasTopK = true;
      if (cls <= k && spec.targets.contains(cls)) ++cnt;
    }
    if (hasTopK && cnt > bestCount) {
      bestCount = cnt;
      bestLevel = lv;
    }
  }
  if (bestLevel < 0) return std::nullopt;

  // Leftmost >= d_k member of the level, trying both orientations: all
  // other >= d_k members must sit at strip positions in (0, 2k-1).
  std::vector<std::pair<int, int>> topk;
  for (auto [i, j] : cen.levelMembers(bestLevel))
    if (cen.classOf(i, j) <= k) topk.emplace_back(i, j);
  auto positionOf = [&](int u, int v, std::pair<int, int> m) {
    // Solve m = (u+s, v-s) mod n for s; both coordinates must agree.
    int s1 = detail::modCentered(m.first - u, n);
    if (((v - s1) % n + n) % n == m.second) return s1;
    int s2 = detail::modCentered(m.second - u, n);
    return s2;
  };
  StripFrame frame;
  frame.p = &p;
  frame.cen = &cen;
  frame.k = k;
  bool found = false;
  for (auto [a, b] : topk) {
    for (auto [u, v] : {std::pair{a, b}, std::pair{b, a}}) {
      bool ok = true;
      for (auto m : topk) {
        if (m.first == a && m.second == b) continue;
        int s = positionOf(u, v, m);
        if (!(s > 0 && s <= 2 * k - 2)) ok = false;
      }
      if (ok) {
        frame.u = u;
        frame.v = v;
        found = true;
        break;
      }
    }
    if (found) break;
  }
  if (!found) return std::nullopt;
  frame.safeDepth = safeDepth;

  // Per-level target counts; every target must land inside the window.
  for (int l = 1; l <= safeDepth; ++l) {
    int geomLevel = ((bestLevel + 1 - l) % n + n) % n;
    int cnt = 0;
    for (auto [a, b] : cen.levelMembers(geomLevel)) {
      int cls = cen.classOf(a, b);
      if (cls > k || !spec.targets.contains(cls)) continue;
      bool placed = false;
      for (auto [x, y] : {std::pair{a, b}, std::pair{b, a}}) {
        int i = detail::modCentered(x - frame.u, n);
        int j = detail::modCentered(frame.v + 1 - y, n);
        if (j - i == l && std::abs(i) <= 2 * k + l && std::abs(j - 1) <= 2 * k + l) {
          placed = true;
          break;
        }
      }
      if (!placed) return std::nullopt;  // outside window: frame unusable
      ++cnt;
    }
    frame.targetsPerLevel.push_back(cnt);
  }
  return frame;
}

struct ExhaustivenessReport {
  int levelsChecked = 0;
  int misses = 0;
};

// Runs the real search and verifies frame coverage level by level.
inline ExhaustivenessReport exhaustivenessSpotCheck(const ConvexPointSet& p,
                                                    const TargetSpec& spec,
                                                    int maxDepth,
                                                    AnchorPolicy policy =
                                                        AnchorPolicy::Superset) {
  ExhaustivenessReport rep;
  DistanceCensus cen = census(p);
  auto frame = buildStripFrame(p, cen, spec, maxDepth);
  if (!frame) return rep;

  SearchParams params;
  params.spec = spec;
  params.policy = policy;
  params.maxLevels = frame->safeDepth;
  LevelObserver obs = [&](int level, const std::vector<Configuration>& live) {
    if (level > frame->safeDepth) return;
    if (!frame->survives(level, spec.alpha)) return;
    ++rep.levelsChecked;
    for (const Configuration& c : live)
      if (frame->covered(c)) return;
    ++rep.misses;
  };
  runSearch(params, obs);
  return rep;
}

}  // namespace convexdist
