#pragma once
// Level-by-level exhaustive search over configurations.
//
// Starting from the anchored root, level l is processed by (1) exhaustively
// guessing which level-l diagonals in the admissible position range have a
// target length, propagating after every assignment, (2) pruning
// configurations whose committed target count fails count > alpha*l
// (exact integer arithmetic), (3) splitting every remaining multi-label
// cell in levels 1..l to singletons, and (4) deduplicating. An empty live
// set proves the bound; the terminating level feeds the certificate.

#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <thread>
#include <unordered_set>
#include <vector>

#include "convexdist/config.hpp"
#include "convexdist/deduce.hpp"

namespace convexdist {

enum class AnchorPolicy { Superset, Paper };

inline const char* anchorPolicyName(AnchorPolicy p) {
  return p == AnchorPolicy::Superset ? "superset" : "paper";
}

struct SearchParams {
  TargetSpec spec;
  int maxLevels = 30;
  AnchorPolicy policy = AnchorPolicy::Superset;
  std::uint64_t nodeBudget = 1ull << 62;
  double timeBudgetSec = 1e18;
  int workers = 1;
  int survivorSample = 3;
};

enum class VerdictKind { Proved, Exhausted };
enum class ExhaustReason { None, LevelCap, NodeBudget, TimeBudget };

inline const char* exhaustReasonName(ExhaustReason r) {
  switch (r) {
    case ExhaustReason::LevelCap:
      return "level-cap";
    case ExhaustReason::NodeBudget:
      return "node-budget";
    case ExhaustReason::TimeBudget:
      return "time-budget";
    default:
      return "none";
  }
}

struct Verdict {
  VerdictKind kind = VerdictKind::Exhausted;
  int level = 0;  // terminating level if proved, last completed otherwise
  ExhaustReason reason = ExhaustReason::None;
  std::vector<Configuration> survivors;
};

struct SearchStats {
  std::uint64_t nodes = 0;     // configurations propagated to fixpoint
  std::uint64_t branches = 0;  // branchCell invocations
  std::uint64_t contradictions[static_cast<int>(RuleId::Count)] = {};
  std::vector<std::uint64_t> livePerLevel;
  double wallSec = 0;
};

// Root configuration: intervals {t_0}, {b_1}. Under the paper policy the
// anchor cell is T and committed as a target; under the superset policy it
// is {1..k} (the anchor is only known to be >= d_k) and its target status
// is guessed along with level 1.
inline Configuration makeRoot(const TargetSpec& spec, AnchorPolicy policy) {
  LabelSet anchor = policy == AnchorPolicy::Paper
                        ? spec.targets
                        : LabelSet::all(spec.k).minus(LabelSet::infOnly());
  Configuration c(spec.k, 0, 0, 1, 1, anchor);
  if (policy == AnchorPolicy::Paper) c.addMark(0, 1);
  return c;
}

// Admissible guess positions for level l: cell (i, i+l). The anchor has a
// defined lower bound d_k, so fact3 confines target positions to
// [3-2k-l, 2k-2]; level 1 additionally starts at the anchor (no finite
// labels left of it by normalisation).
inline std::pair<int, int> guessRange(const TargetSpec& spec,
                                      AnchorPolicy policy, int level) {
  int hi = 2 * spec.k - 2;
  if (level == 1)
    return {policy == AnchorPolicy::Superset ? 0 : 1, hi};
  return {3 - 2 * spec.k - level, hi};
}

// Keep exactly the configurations with count * q > p * l.
inline bool passesPrune(const Configuration& c, int level,
                        const Rational& alpha) {
  std::int64_t count = c.countTargets(level);
  return static_cast<__int128>(count) * alpha.den >
         static_cast<__int128>(alpha.num) * level;
}

// Splits a multi-label cell into the singleton of its least element
// (order 1 < 2 < ... < k < inf) and the rest. The children partition the
// parent's possibility space.
inline std::pair<Configuration, Configuration> branchCell(
    const Configuration& c, int i, int j) {
  LabelSet s = c.at(i, j);
  assert(s.size() > 1);
  Label least = s.hasFinite() ? s.minFinite() : kInfLabel;
  Configuration lo = c, hi = c;
  lo.set(i, j, LabelSet::single(least));
  hi.set(i, j, s.minus(LabelSet::single(least)));
  return {lo, hi};
}

namespace detail {

struct LocalStats {
  std::uint64_t nodes = 0;
  std::uint64_t branches = 0;
  std::uint64_t contradictions[static_cast<int>(RuleId::Count)] = {};

  void mergeInto(SearchStats& s) const {
    s.nodes += nodes;
    s.branches += branches;
    for (int r = 0; r < static_cast<int>(RuleId::Count); ++r)
      s.contradictions[r] += contradictions[r];
  }
};

// Widest cell in levels 1..maxLevel, leftmost on ties. Returns false when
// all such cells are singletons.
inline bool pickBranchCell(const Configuration& c, int maxLevel, int& bi,
                           int& bj) {
  int bestSize = 1;
  for (int i = c.tLo(); i <= c.tHi(); ++i) {
    for (int j = c.bLo(); j <= c.bHi(); ++j) {
      int lv = levelOf(i, j);
      if (lv < 1 || lv > maxLevel) continue;
      int sz = c.at(i, j).size();
      if (sz > bestSize) {
        bestSize = sz;
        bi = i;
        bj = j;
      }
    }
  }
  return bestSize > 1;
}

// Exhaustive target guessing for one configuration at one level; emits the
// fully guessed children (frontier advanced) into sink. Positions are
// visited left to right, target branch first, propagating after every
// assignment that changes a cell.
inline void extendOne(const Configuration& cfg, int level,
                      const SearchParams& params, LocalStats& stats,
                      const std::function<void(Configuration&&)>& sink,
                      const std::atomic<bool>* abort) {
  auto [lo, hi] = guessRange(params.spec, params.policy, level);
  const LabelSet targets = params.spec.targets;
  const int k = params.spec.k;

  struct Rec {
    LocalStats& stats;
    const std::function<void(Configuration&&)>& sink;
    const std::atomic<bool>* abort;
    int level, lo, hi, k;
    LabelSet targets;

    void run(Configuration cur, int pos) {
      if (abort && abort->load(std::memory_order_relaxed)) return;
      if (pos > hi) {
        cur.setFrontier(level);
        sink(std::move(cur));
        return;
      }
      GrowFill fill{k, targets, level - 1, level, pos};
      bool exists = cur.inRange(pos, pos + level);
      LabelSet cell = exists ? cur.at(pos, pos + level) : LabelSet::all(k);

      // Guess TARGET at pos.
      LabelSet asTarget = cell.intersect(targets);
      if (!asTarget.empty()) {
        Configuration child = cur;
        child.grow(std::min(pos, 0), std::max(pos, 0), std::min(pos + level, 1),
                   std::max(pos + level, 1), fill);
        child.set(pos, pos + level, asTarget);
        child.addMark(pos, pos + level);
        ++stats.nodes;
        PropagateResult pr = propagateToFixpoint(child);
        if (pr.status == Status::Contradiction) {
          ++stats.contradictions[static_cast<int>(pr.contradictionRule)];
        } else {
          run(std::move(child), pos + 1);
        }
      }

      // Guess NON-TARGET at pos. Untracked positions stay implicit: the
      // commitment is recorded by GrowFill if the cell materialises later.
      if (!exists) {
        run(std::move(cur), pos + 1);
        return;
      }
      LabelSet asOther = cell.minus(targets);
      if (asOther.empty()) {
        ++stats.contradictions[static_cast<int>(RuleId::Assign)];
        return;  // cell is all-target: the target guess covered it
      }
      if (asOther == cell) {
        run(std::move(cur), pos + 1);
        return;
      }
      Configuration child = std::move(cur);
      child.set(pos, pos + level, asOther);
      ++stats.nodes;
      PropagateResult pr = propagateToFixpoint(child);
      if (pr.status == Status::Contradiction) {
        ++stats.contradictions[static_cast<int>(pr.contradictionRule)];
        return;
      }
      run(std::move(child), pos + 1);
    }
  };

  Rec rec{stats, sink, abort, level, lo, hi, k, targets};
  rec.run(cfg, lo);
}

// Recursively splits every multi-label cell in levels 1..level, emitting
// the all-singleton descendants.
inline void branchToSingletons(
    Configuration cfg, int level, LocalStats& stats,
    const std::function<void(Configuration&&)>& sink,
    const std::atomic<bool>* abort) {
  if (abort && abort->load(std::memory_order_relaxed)) return;
  int bi = 0, bj = 0;
  if (!pickBranchCell(cfg, level, bi, bj)) {
    sink(std::move(cfg));
    return;
  }
  ++stats.branches;
  auto [first, second] = branchCell(cfg, bi, bj);
  for (Configuration* child : {&first, &second}) {
    ++stats.nodes;
    PropagateResult pr = propagateToFixpoint(*child);
    if (pr.status == Status::Contradiction) {
      ++stats.contradictions[static_cast<int>(pr.contradictionRule)];
      continue;
    }
    branchToSingletons(std::move(*child), level, stats, sink, abort);
  }
}

struct ConfigHash {
  std::size_t operator()(const Configuration& c) const { return c.hash(); }
};

// Deduplicate and order canonically, so the live set is identical for any
// worker count.
inline void canonicalise(std::vector<Configuration>& live) {
  std::unordered_set<Configuration, ConfigHash> seen;
  std::vector<Configuration> out;
  out.reserve(live.size());
  for (Configuration& c : live)
    if (seen.insert(c).second) out.push_back(std::move(c));
  std::sort(out.begin(), out.end(),
            [](const Configuration& a, const Configuration& b) {
              return a.before(b);
            });
  live = std::move(out);
}

// Applies fn to every index with the requested worker count. Results must
// be merged by the caller; fn(worker, index).
inline void parallelFor(std::size_t count, int workers,
                        const std::function<void(int, std::size_t)>& fn) {
  if (workers <= 1 || count <= 1) {
    for (std::size_t idx = 0; idx < count; ++idx) fn(0, idx);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  int spawn = std::min<std::size_t>(workers, count);
  for (int w = 0; w < spawn; ++w) {
    pool.emplace_back([&, w] {
      for (;;) {
        std::size_t idx = next.fetch_add(1, std::memory_order_relaxed);
        if (idx >= count) break;
        fn(w, idx);
      }
    });
  }
  for (std::thread& t : pool) t.join();
}

}  // namespace detail

struct RunResult {
  Verdict verdict;
  SearchStats stats;
};

using LevelObserver =
    std::function<void(int level, const std::vector<Configuration>& live)>;

// The full search loop. The node budget is evaluated at level boundaries so
// that verdicts never depend on scheduling; the time budget is cooperative
// and checked between configurations.
inline RunResult runSearch(const SearchParams& params,
                           const LevelObserver& observer = nullptr) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(Clock::now() - start).count();
  };

  RunResult res;
  SearchStats& stats = res.stats;
  std::atomic<bool> timeUp{false};

  std::vector<Configuration> live{makeRoot(params.spec, params.policy)};
  {
    detail::LocalStats ls;
    ++ls.nodes;
    PropagateResult pr = propagateToFixpoint(live[0]);
    ls.mergeInto(stats);
    if (pr.status == Status::Contradiction) live.clear();
  }

  auto finish = [&](VerdictKind kind, int level, ExhaustReason reason) {
    res.verdict.kind = kind;
    res.verdict.level = level;
    res.verdict.reason = reason;
    int keep = std::min<std::size_t>(params.survivorSample, live.size());
    res.verdict.survivors.assign(live.begin(), live.begin() + keep);
    stats.wallSec = elapsed();
    return res;
  };

  if (live.empty()) return finish(VerdictKind::Proved, 0, ExhaustReason::None);

  for (int level = 1; level <= params.maxLevels; ++level) {
    // Per-worker output buffers keep the hot path lock-free; the merged
    // result is canonicalised, so merge order is irrelevant.
    int workers = std::max(1, params.workers);
    std::vector<std::vector<Configuration>> childBuf(workers);
    std::vector<detail::LocalStats> statBuf(workers);

    auto guard = [&](int w) {
      if (elapsed() > params.timeBudgetSec)
        timeUp.store(true, std::memory_order_relaxed);
      (void)w;
    };

    detail::parallelFor(live.size(), workers, [&](int w, std::size_t idx) {
      guard(w);
      if (timeUp.load(std::memory_order_relaxed)) return;
      detail::extendOne(
          live[idx], level, params, statBuf[w],
          [&](Configuration&& c) { childBuf[w].push_back(std::move(c)); },
          &timeUp);
    });

    std::vector<Configuration> children;
    for (auto& buf : childBuf) {
      for (Configuration& c : buf) children.push_back(std::move(c));
      buf.clear();
    }
    for (auto& ls : statBuf) {
      ls.mergeInto(stats);
      ls = detail::LocalStats{};
    }
    if (timeUp.load()) {
      stats.livePerLevel.push_back(live.size());
      return finish(VerdictKind::Exhausted, level - 1,
                    ExhaustReason::TimeBudget);
    }
    detail::canonicalise(children);

    // Prune before splitting: counts depend only on committed marks, so
    // pruning commutes with branching and skips useless work.
    std::vector<Configuration> kept;
    kept.reserve(children.size());
    for (Configuration& c : children)
      if (passesPrune(c, level, params.spec.alpha)) kept.push_back(std::move(c));
    children.clear();

    detail::parallelFor(kept.size(), workers, [&](int w, std::size_t idx) {
      guard(w);
      if (timeUp.load(std::memory_order_relaxed)) return;
      detail::branchToSingletons(
          std::move(kept[idx]), level, statBuf[w],
          [&](Configuration&& c) { childBuf[w].push_back(std::move(c)); },
          &timeUp);
    });

    live.clear();
    for (auto& buf : childBuf) {
      for (Configuration& c : buf) live.push_back(std::move(c));
      buf.clear();
    }
    for (auto& ls : statBuf) ls.mergeInto(stats);
    if (timeUp.load()) {
      stats.livePerLevel.push_back(live.size());
      return finish(VerdictKind::Exhausted, level - 1,
                    ExhaustReason::TimeBudget);
    }
    detail::canonicalise(live);
    stats.livePerLevel.push_back(live.size());
    if (observer) observer(level, live);

    if (live.empty()) return finish(VerdictKind::Proved, level,
                                    ExhaustReason::None);
    if (stats.nodes > params.nodeBudget)
      return finish(VerdictKind::Exhausted, level, ExhaustReason::NodeBudget);
    if (elapsed() > params.timeBudgetSec)
      return finish(VerdictKind::Exhausted, level, ExhaustReason::TimeBudget);
  }
  return finish(VerdictKind::Exhausted, params.maxLevels,
                ExhaustReason::LevelCap);
}

}  // namespace convexdist
