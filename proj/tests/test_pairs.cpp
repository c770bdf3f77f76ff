#include <catch2/catch_amalgamated.hpp>

#include "convexdist/deduce.hpp"
#include "testutil.hpp"

using namespace convexdist;

namespace {

LabelSet ls(std::initializer_list<int> labels, bool inf = false) {
  std::uint32_t m = inf ? 1u : 0u;
  for (int l : labels) m |= 1u << l;
  return LabelSet::fromMask(m);
}

}  // namespace

TEST_CASE("pair node layout") {
  PairInequalityDigraph g(3);
  CHECK(g.nodeCount() == 6);  // C(4,2)
  CHECK(g.nodeId(1, 1) == 0);
  CHECK(g.nodeId(1, 3) == 2);
  CHECK(g.nodeId(3, 1) == 2);
  CHECK(g.nodeId(3, 3) == 5);
}

TEST_CASE("monotone arcs alone are acyclic") {
  for (int k = 1; k <= 5; ++k) {
    PairInequalityDigraph g(k);
    CHECK(g.acyclic());
    CHECK(testutil::digraphFeasible(g, k));
  }
  Configuration c(3, 0, 2, 1, 3, LabelSet::all(3));
  CHECK(derivePairInequalities(c) == Status::Unchanged);
}

TEST_CASE("opposite quadruples force a cycle") {
  // Quadruple A: nested {2,2}, crossing {1,3}. Quadruple B: nested {1,3},
  // crossing {2,2}. Together: d_1 + d_3 > 2 d_2 and 2 d_2 > d_1 + d_3.
  Configuration c(3, 1, 4, 1, 4, LabelSet::all(3));
  c.set(1, 1, ls({2}));
  c.set(2, 2, ls({2}));
  c.set(1, 2, ls({1}));
  c.set(2, 1, ls({3}));
  c.set(3, 3, ls({1}));
  c.set(4, 4, ls({3}));
  c.set(3, 4, ls({2}));
  c.set(4, 3, ls({2}));
  CHECK(derivePairInequalities(c) == Status::Contradiction);

  PairInequalityDigraph g = buildPairDigraph(c);
  CHECK_FALSE(g.acyclic());
  CHECK(g.hasArc(g.nodeId(1, 3), g.nodeId(2, 2)));
  CHECK(g.hasArc(g.nodeId(2, 2), g.nodeId(1, 3)));
  // The independent oracle agrees the inequality system is infeasible.
  CHECK_FALSE(testutil::digraphFeasible(g, 3));
}

TEST_CASE("a single benign quadruple stays consistent") {
  // Nested {2,2}, crossing {1,2}: arc {1,2} -> {2,2} plus monotone arcs;
  // realisable, e.g. d = (2, 1).
  Configuration c(2, 1, 2, 1, 2, LabelSet::all(2));
  c.set(1, 1, ls({2}));
  c.set(2, 2, ls({2}));
  c.set(1, 2, ls({1}));
  c.set(2, 1, ls({2}));
  CHECK(derivePairInequalities(c) == Status::Unchanged);
  PairInequalityDigraph g = buildPairDigraph(c);
  CHECK(g.hasArc(g.nodeId(1, 2), g.nodeId(2, 2)));
  CHECK(testutil::digraphFeasible(g, 2));
}

TEST_CASE("cells containing inf contribute no arcs") {
  // With (2,1) = {1} the quadruple would add {1,1} -> {2,2}; with an inf
  // cell it must not (only the monotone arcs remain).
  Configuration c(2, 1, 2, 1, 2, LabelSet::all(2));
  c.set(1, 1, ls({2}));
  c.set(2, 2, ls({2}));
  c.set(1, 2, ls({1}));
  c.set(2, 1, LabelSet::infOnly());
  PairInequalityDigraph g = buildPairDigraph(c);
  CHECK_FALSE(g.hasArc(g.nodeId(1, 1), g.nodeId(2, 2)));

  Configuration d = c;
  d.set(2, 1, ls({1}));
  PairInequalityDigraph g2 = buildPairDigraph(d);
  CHECK(g2.hasArc(g2.nodeId(1, 1), g2.nodeId(2, 2)));
}

TEST_CASE("every digraph cycle is an infeasible inequality system") {
  // Random singleton matrices: whenever the digraph has a cycle, the
  // Fourier-Motzkin oracle must find the system infeasible.
  std::mt19937_64 rng(2024);
  int cyclesSeen = 0;
  for (int trial = 0; trial < 400; ++trial) {
    int k = 2 + static_cast<int>(rng() % 3);
    Configuration c(k, 0, 2, 1, 3, LabelSet::all(k));
    for (int i = 0; i <= 2; ++i)
      for (int j = 1; j <= 3; ++j)
        c.set(i, j, LabelSet::single(1 + static_cast<int>(rng() % k)));
    PairInequalityDigraph g = buildPairDigraph(c);
    if (!g.acyclic()) {
      ++cyclesSeen;
      CHECK_FALSE(testutil::digraphFeasible(g, k));
    }
  }
  CHECK(cyclesSeen > 10);
}
