#include <catch2/catch_amalgamated.hpp>

#include "convexdist/search.hpp"

using namespace convexdist;

namespace {

LabelSet ls(std::initializer_list<int> labels, bool inf = false) {
  std::uint32_t m = inf ? 1u : 0u;
  for (int l : labels) m |= 1u << l;
  return LabelSet::fromMask(m);
}

TargetSpec spec(std::initializer_list<int> ts, const char* alpha) {
  return TargetSpec::make(std::vector<int>(ts), *parseRational(alpha));
}

}  // namespace

TEST_CASE("root configuration per anchor policy") {
  TargetSpec t2 = spec({2}, "4/3");
  Configuration sup = makeRoot(t2, AnchorPolicy::Superset);
  CHECK(sup.at(0, 1) == ls({1, 2}));
  CHECK(sup.markCount() == 0);

  Configuration pap = makeRoot(t2, AnchorPolicy::Paper);
  CHECK(pap.at(0, 1) == ls({2}));
  CHECK(pap.hasMark(0, 1));

  TargetSpec t123 = spec({1, 2, 3}, "3");
  CHECK(makeRoot(t123, AnchorPolicy::Superset).at(0, 1) == ls({1, 2, 3}));
  CHECK(makeRoot(t123, AnchorPolicy::Paper).at(0, 1) == ls({1, 2, 3}));
}

TEST_CASE("level-1 guess positions") {
  TargetSpec t2 = spec({2}, "4/3");
  auto [lo, hi] = guessRange(t2, AnchorPolicy::Paper, 1);
  CHECK(lo == 1);
  CHECK(hi == 2);  // i <= 2k-2
  auto [slo, shi] = guessRange(t2, AnchorPolicy::Superset, 1);
  CHECK(slo == 0);  // the anchor's own target status is guessed
  CHECK(shi == 2);
  // Deeper levels extend leftwards, still capped at 2k-2 on the right.
  auto [dlo, dhi] = guessRange(t2, AnchorPolicy::Superset, 3);
  CHECK(dlo == 3 - 2 * 2 - 3);
  CHECK(dhi == 2);
}

TEST_CASE("prune keeps exactly count > alpha * level") {
  TargetSpec t43 = spec({2}, "4/3");
  Configuration c(2, 0, 4, 1, 5, LabelSet::all(2));
  c.setFrontier(3);
  c.addMark(0, 1);
  c.addMark(1, 2);
  c.addMark(2, 3);
  c.addMark(3, 4);              // four level-1 marks
  CHECK_FALSE(passesPrune(c, 3, t43.alpha));  // 4 > 4 fails

  Configuration d(2, 0, 2, 1, 3, LabelSet::all(2));
  d.setFrontier(1);
  d.addMark(0, 1);
  d.addMark(1, 2);
  CHECK(passesPrune(d, 1, t43.alpha));  // 2 > 4/3

  TargetSpec t2a = spec({1, 2}, "2");
  Configuration e(2, 0, 3, 1, 4, LabelSet::all(2));
  e.setFrontier(2);
  e.addMark(0, 1);
  e.addMark(1, 2);
  e.addMark(2, 3);
  e.addMark(0, 2);
  CHECK_FALSE(passesPrune(e, 2, t2a.alpha));  // 4 > 4 fails
}

TEST_CASE("branchCell splits least-first") {
  Configuration c(3, 0, 0, 1, 1, ls({2, 3}, true));
  auto [lo, hi] = branchCell(c, 0, 1);
  CHECK(lo.at(0, 1) == ls({2}));
  CHECK(hi.at(0, 1) == ls({3}, true));

  Configuration d(3, 0, 0, 1, 1, ls({1}, true));
  auto [l2, h2] = branchCell(d, 0, 1);
  CHECK(l2.at(0, 1) == ls({1}));
  CHECK(h2.at(0, 1) == LabelSet::infOnly());

  // Split cells partition the parent.
  CHECK(lo.at(0, 1).unite(hi.at(0, 1)) == c.at(0, 1));
  CHECK(lo.at(0, 1).intersect(hi.at(0, 1)).empty());
}

TEST_CASE("extension on an all-inf level yields a single child") {
  TargetSpec t2 = spec({2}, "4/3");
  // Wide config whose whole level-2 guess range is already {inf}.
  Configuration c(2, -5, 2, -4, 4, LabelSet::infOnly());
  c.setFrontier(1);
  detail::LocalStats stats;
  std::vector<Configuration> out;
  SearchParams params;
  params.spec = t2;
  detail::extendOne(
      c, 2, params, stats,
      [&](Configuration&& child) { out.push_back(std::move(child)); },
      nullptr);
  REQUIRE(out.size() == 1);
  CHECK(out[0].frontier() == 2);
  CHECK(out[0].markCount() == 0);
  CHECK(out[0].topWidth() == c.topWidth());  // no growth
}

TEST_CASE("extension guesses targets and propagates them") {
  // An anchor pre-committed to T ({2} here); the child guessing a target at i = 1 sets
  // D[1,2] = {2} and records the mark.
  TargetSpec t2 = spec({2}, "4/3");
  Configuration root = makeRoot(t2, AnchorPolicy::Paper);
  detail::LocalStats stats;
  std::vector<Configuration> out;
  SearchParams params;
  params.spec = t2;
  params.policy = AnchorPolicy::Paper;
  detail::extendOne(
      root, 1, params, stats,
      [&](Configuration&& child) { out.push_back(std::move(child)); },
      nullptr);
  bool sawTargetAt1 = false;
  for (const Configuration& child : out) {
    if (child.inRange(1, 2) && child.hasMark(1, 2)) {
      sawTargetAt1 = true;
      CHECK(child.at(1, 2) == ls({2}));
    }
  }
  CHECK(sawTargetAt1);

  // Hand application of the crossing rule on the minimal guessed child
  // (anchor + target at i = 1 only): with both nested cells {2}, refining
  // the crossing (1,1) to {2} must force the other crossing (0,2) above
  // d_2, i.e. to {1}.
  for (const Configuration& child : out) {
    if (!(child.markCount() == 2 && child.hasMark(1, 2))) continue;
    Configuration c = child;
    c.set(1, 1, ls({2}));
    PropagateResult pr = propagateToFixpoint(c);
    REQUIRE(pr.status != Status::Contradiction);
    CHECK(c.at(0, 2) == ls({1}));
    break;
  }
}

TEST_CASE("search proves the known easy rows") {
  SearchParams params;
  params.spec = spec({1, 2}, "2");
  params.maxLevels = 6;
  RunResult run = runSearch(params);
  CHECK(run.verdict.kind == VerdictKind::Proved);
  CHECK(run.verdict.level <= 6);
  CHECK(run.stats.livePerLevel.back() == 0);

  SearchParams p2;
  p2.spec = spec({2}, "4/3");
  p2.maxLevels = 12;
  RunResult r2 = runSearch(p2);
  CHECK(r2.verdict.kind == VerdictKind::Proved);
}

TEST_CASE("paper anchor policy also proves and is reproducible") {
  SearchParams params;
  params.spec = spec({2}, "4/3");
  params.maxLevels = 12;
  params.policy = AnchorPolicy::Paper;
  RunResult a = runSearch(params);
  RunResult b = runSearch(params);
  CHECK(a.verdict.kind == VerdictKind::Proved);
  CHECK(a.verdict.level == b.verdict.level);
  CHECK(a.stats.nodes == b.stats.nodes);
}

TEST_CASE("worker count does not change the verdict") {
  for (int workers : {1, 2, 8}) {
    SearchParams params;
    params.spec = spec({1, 2}, "2");
    params.maxLevels = 6;
    params.workers = workers;
    RunResult run = runSearch(params);
    CHECK(run.verdict.kind == VerdictKind::Proved);
    CHECK(run.verdict.level == 2);
  }
}

TEST_CASE("level cap yields exhausted with survivors") {
  SearchParams params;
  params.spec = spec({2}, "10/9");  // far below anything provable
  params.maxLevels = 2;
  RunResult run = runSearch(params);
  CHECK(run.verdict.kind == VerdictKind::Exhausted);
  CHECK(run.verdict.reason == ExhaustReason::LevelCap);
  CHECK_FALSE(run.verdict.survivors.empty());
  // Survivors are singleton on all guessed levels and every committed
  // target cell holds only target labels.
  const Configuration& s = run.verdict.survivors.front();
  for (int i = s.tLo(); i <= s.tHi(); ++i)
    for (int j = s.bLo(); j <= s.bHi(); ++j) {
      int lv = levelOf(i, j);
      if (lv >= 1 && lv <= s.frontier()) CHECK(s.at(i, j).isSingleton());
      if (s.hasMark(i, j)) CHECK(s.at(i, j).subsetOf(params.spec.targets));
    }
}

TEST_CASE("node budget reports exhaustion at a level boundary") {
  SearchParams params;
  params.spec = spec({2}, "10/9");
  params.maxLevels = 8;
  params.nodeBudget = 10;
  RunResult run = runSearch(params);
  CHECK(run.verdict.kind == VerdictKind::Exhausted);
  CHECK(run.verdict.reason == ExhaustReason::NodeBudget);
}

TEST_CASE("window stays within the certified bound") {
  SearchParams params;
  params.spec = spec({2}, "4/3");
  params.maxLevels = 12;
  LevelObserver obs = [&](int level, const std::vector<Configuration>& live) {
    int w = 2 * (2 * params.spec.k + level) + 1;
    for (const Configuration& c : live) {
      CHECK(c.topWidth() <= w);
      CHECK(c.bottomWidth() <= w);
    }
  };
  RunResult run = runSearch(params, obs);
  CHECK(run.verdict.kind == VerdictKind::Proved);
}
