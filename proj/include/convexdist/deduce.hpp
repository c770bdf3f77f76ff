#pragma once
// Constraint propagation rules on a configuration.
//
// Four geometric facts about convex polygons drive the deductions:
//   fact1: in a convex quadrangle the two diagonals together are longer
//          than either pair of opposite sides.
//   fact2: of any four vertices a,b,c,d in clockwise order, at least one
//          of four "all points of an arc are farther" cases holds.
//   fact3: if |bc| >= d_i and |ad| >= d_j for nested diagonals ad, bc,
//          then one of the separating arcs has at most i+j-3 vertices.
//   fact4: a six-point comparison bounding a middle diagonal from below.
// A fifth check collects sum inequalities d_y + d_z > d_w + d_x from
// all-singleton quadruples and rejects the configuration when the derived
// digraph over label pairs has a directed cycle.
//
// Every rule only ever shrinks cells; an emptied cell is a contradiction.

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "convexdist/config.hpp"
#include "convexdist/labels.hpp"

namespace convexdist {

enum class RuleId : int {
  Fact1 = 0,
  Fact2,
  Fact3,
  Fact4,
  Pairs,
  Assign,
  Count
};

inline const char* ruleName(RuleId r) {
  switch (r) {
    case RuleId::Fact1:
      return "fact1";
    case RuleId::Fact2:
      return "fact2";
    case RuleId::Fact3:
      return "fact3";
    case RuleId::Fact4:
      return "fact4";
    case RuleId::Pairs:
      return "pairs";
    case RuleId::Assign:
      return "assign";
    default:
      return "?";
  }
}

enum class Status { Unchanged, Changed, Contradiction };

struct TraceEvent {
  RuleId rule;
  std::array<int, 6> witness;  // rule-specific indices, unused slots 0
  int witnessCount;
  CellRef cell;
  LabelSet before;
  LabelSet after;
};

using TraceSink = std::function<void(const TraceEvent&)>;

// One line per firing, hand-auditable:
//   fact1 wit=(1,2,1,2) cell=(2,1) {1 2 3 inf} -> {1}
inline std::string formatTraceEvent(const TraceEvent& ev) {
  std::string line = ruleName(ev.rule);
  line += " wit=(";
  for (int w = 0; w < ev.witnessCount; ++w) {
    if (w) line += ',';
    line += std::to_string(ev.witness[w]);
  }
  line += ") cell=(" + std::to_string(ev.cell.i) + "," +
          std::to_string(ev.cell.j) + ") " + ev.before.render() + " -> " +
          ev.after.render();
  return line;
}

struct DeductionOutcome {
  Status status = Status::Unchanged;
  std::vector<CellRef> touchedCells;
};

namespace detail {

// Shared helper: writes a shrink into the configuration, tracing and
// detecting emptiness. Returns false on contradiction.
struct ShrinkCtx {
  Configuration* c;
  const TraceSink* trace;
  RuleId rule;
  bool changed = false;
  bool contradiction = false;
  std::vector<CellRef>* touched = nullptr;

  bool apply(int i, int j, LabelSet next, std::array<int, 6> wit, int wc) {
    LabelSet cur = c->at(i, j);
    if (next == cur) return true;
    if (trace && *trace)
      (*trace)(TraceEvent{rule, wit, wc, CellRef{i, j}, cur, next});
    if (touched) touched->push_back(CellRef{i, j});
    if (next.empty()) {
      contradiction = true;
      return false;
    }
    c->set(i, j, next);
    changed = true;
    return true;
  }

  Status status() const {
    if (contradiction) return Status::Contradiction;
    return changed ? Status::Changed : Status::Unchanged;
  }
};

}  // namespace detail

// fact1 on the quadruple t_i, t_i', b_j', b_j (i<i', j<j'): the crossing
// cells (i,j') and (i',j) sum to strictly more than the nested cells (i,j)
// and (i',j'). Two sound pointwise specialisations fire whenever one
// crossing cell is bounded above by one nested cell's lower bound:
//   (a) the other crossing cell is strictly longer than the other nested
//       cell's lower bound d_p: drop indices >= p and inf from it;
//   (b) the other nested cell is strictly shorter than the other crossing
//       cell's upper bound d_u: drop indices <= u from it.
inline DeductionOutcome applyFact1(Configuration& c,
                                   const TraceSink* trace = nullptr) {
  detail::ShrinkCtx ctx{&c, trace, RuleId::Fact1};
  DeductionOutcome out;
  ctx.touched = &out.touchedCells;
  const int k = c.k();
  for (int i = c.tLo(); i < c.tHi(); ++i) {
    for (int i2 = i + 1; i2 <= c.tHi(); ++i2) {
      for (int j = c.bLo(); j < c.bHi(); ++j) {
        for (int j2 = j + 1; j2 <= c.bHi(); ++j2) {
          // Nested: P=(i,j), Q=(i2,j2). Crossing: X=(i,j2), Y=(i2,j).
          const CellRef pc{i, j}, qc{i2, j2}, xc{i, j2}, yc{i2, j};
          const std::array<int, 6> wit{i, i2, j, j2, 0, 0};
          // Premise combos: crossing Cp vs nested Np with
          // upperValue(Cp) <= lowerBound(Np).
          for (int cross = 0; cross < 2; ++cross) {
            CellRef cp = cross ? yc : xc;
            CellRef co = cross ? xc : yc;
            for (int nest = 0; nest < 2; ++nest) {
              CellRef np = nest ? qc : pc;
              CellRef no = nest ? pc : qc;
              Label lowNp = c.at(np.i, np.j).lowerIndex();
              if (lowNp == 0) continue;
              if (c.at(cp.i, cp.j).upperIndexEff(k) < lowNp) continue;
              // (a) |Co| > lowerBound(No) when defined.
              Label lowNo = c.at(no.i, no.j).lowerIndex();
              if (lowNo != 0) {
                LabelSet next = c.at(co.i, co.j).removeGeAndInf(lowNo);
                if (!ctx.apply(co.i, co.j, next, wit, 4)) {
                  out.status = Status::Contradiction;
                  return out;
                }
              }
              // (b) |No| < upperValue(Co).
              int uEff = c.at(co.i, co.j).upperIndexEff(k);
              LabelSet next = c.at(no.i, no.j).removeLe(std::min(uEff, k));
              if (!ctx.apply(no.i, no.j, next, wit, 4)) {
                out.status = Status::Contradiction;
                return out;
              }
            }
          }
        }
      }
    }
  }
  out.status = ctx.status();
  return out;
}

// fact3 on nested cells: outer (p,q2), inner (p2,q1) with p<p2, q2<q1.
// With the outer bounded below by d_j, an inner label x is viable only if
// min(top gap, bottom gap) <= x + j - 3; symmetrically for the outer.
inline DeductionOutcome applyFact3(Configuration& c,
                                   const TraceSink* trace = nullptr) {
  detail::ShrinkCtx ctx{&c, trace, RuleId::Fact3};
  DeductionOutcome out;
  ctx.touched = &out.touchedCells;
  const int k = c.k();
  for (int p = c.tLo(); p < c.tHi(); ++p) {
    for (int p2 = p + 1; p2 <= c.tHi(); ++p2) {
      for (int q2 = c.bLo(); q2 < c.bHi(); ++q2) {
        for (int q1 = q2 + 1; q1 <= c.bHi(); ++q1) {
          int gap = std::min(p2 - p - 1, q1 - q2 - 1);
          const std::array<int, 6> wit{p, p2, q1, q2, 0, 0};
          Label lowOuter = c.at(p, q2).lowerIndex();
          if (lowOuter != 0 && gap - lowOuter + 3 > 1) {
            // Inner labels x < gap - j + 3 are impossible.
            int lim = std::min(gap - lowOuter + 2, k);
            LabelSet next = c.at(p2, q1).removeLe(lim);
            if (!ctx.apply(p2, q1, next, wit, 4)) {
              out.status = Status::Contradiction;
              return out;
            }
          }
          Label lowInner = c.at(p2, q1).lowerIndex();
          if (lowInner != 0 && gap - lowInner + 3 > 1) {
            int lim = std::min(gap - lowInner + 2, k);
            LabelSet next = c.at(p, q2).removeLe(lim);
            if (!ctx.apply(p, q2, next, wit, 4)) {
              out.status = Status::Contradiction;
              return out;
            }
          }
        }
      }
    }
  }
  out.status = ctx.status();
  return out;
}

// fact4, instantiated only with three points in one interval and three in
// the other. With the long outer diagonal (p1,q3) dominating (p1,q1) and
// (p3,q3), the middle diagonal (p2,q2) is strictly longer than
// min(d_u, d_v) = d_{max(u,v)} taken from (p2,q1) and (p3,q2).
inline DeductionOutcome applyFact4(Configuration& c,
                                   const TraceSink* trace = nullptr) {
  detail::ShrinkCtx ctx{&c, trace, RuleId::Fact4};
  DeductionOutcome out;
  ctx.touched = &out.touchedCells;
  const int k = c.k();
  // Orientation A: a_1,a_i,a_j on top (p1<p2<p3), a_k,a_l,a_m on bottom
  // (q1>q2>q3).
  for (int p1 = c.tLo(); p1 + 2 <= c.tHi(); ++p1) {
    for (int q3 = c.bLo(); q3 + 2 <= c.bHi(); ++q3) {
      Label w = c.at(p1, q3).lowerIndex();
      if (w == 0) continue;
      for (int q1 = q3 + 2; q1 <= c.bHi(); ++q1) {
        if (c.at(p1, q1).upperIndexEff(k) < w) continue;
        for (int p3 = p1 + 2; p3 <= c.tHi(); ++p3) {
          if (c.at(p3, q3).upperIndexEff(k) < w) continue;
          for (int q2 = q3 + 1; q2 < q1; ++q2) {
            Label v = c.at(p3, q2).lowerIndex();
            if (v == 0) continue;
            for (int p2 = p1 + 1; p2 < p3; ++p2) {
              Label u = c.at(p2, q1).lowerIndex();
              if (u == 0) continue;
              const std::array<int, 6> wit{p1, p2, p3, q1, q2, q3};
              LabelSet next =
                  c.at(p2, q2).removeGeAndInf(std::max(u, v));
              if (!ctx.apply(p2, q2, next, wit, 6)) {
                out.status = Status::Contradiction;
                return out;
              }
            }
          }
        }
      }
    }
  }
  // Orientation B: a_1,a_i,a_j on bottom (r1>r2>r3), a_k,a_l,a_m on top
  // (s1<s2<s3).
  for (int r1 = c.bHi(); r1 - 2 >= c.bLo(); --r1) {
    for (int s3 = c.tHi(); s3 - 2 >= c.tLo(); --s3) {
      Label w = c.at(s3, r1).lowerIndex();
      if (w == 0) continue;
      for (int s1 = s3 - 2; s1 >= c.tLo(); --s1) {
        if (c.at(s1, r1).upperIndexEff(k) < w) continue;
        for (int r3 = r1 - 2; r3 >= c.bLo(); --r3) {
          if (c.at(s3, r3).upperIndexEff(k) < w) continue;
          for (int r2 = r3 + 1; r2 < r1; ++r2) {
            Label u = c.at(s1, r2).lowerIndex();
            if (u == 0) continue;
            for (int s2 = s1 + 1; s2 < s3; ++s2) {
              Label v = c.at(s2, r3).lowerIndex();
              if (v == 0) continue;
              const std::array<int, 6> wit{s1, s2, s3, r1, r2, r3};
              LabelSet next =
                  c.at(s2, r2).removeGeAndInf(std::max(u, v));
              if (!ctx.apply(s2, r2, next, wit, 6)) {
                out.status = Status::Contradiction;
                return out;
              }
            }
          }
        }
      }
    }
  }
  out.status = ctx.status();
  return out;
}

// fact2 on a = t_p, b = t_q (p<q), c = b_r, d = b_s (r>s). Case ranges:
//   1: |a x| > |a d| for x in bottom (s..r]      (angle at d non-acute)
//   2: |b x| > |b c| for x in bottom [s..r)      (angle at c)
//   3: |x c| > |b c| for x in top [p..q)         (angle at b)
//   4: |x d| > |a d| for x in top (p..q]         (angle at a)
// A case is refuted when some tracked x makes its strict inequality
// impossible. All four refuted is a contradiction; a unique survivor has
// its conclusions enforced on every tracked x in range.
inline DeductionOutcome applyFact2(Configuration& c,
                                   const TraceSink* trace = nullptr) {
  detail::ShrinkCtx ctx{&c, trace, RuleId::Fact2};
  DeductionOutcome out;
  ctx.touched = &out.touchedCells;
  const int k = c.k();
  const int tW = c.topWidth(), bW = c.bottomWidth();
  const int tLo = c.tLo(), bLo = c.bLo();

  // Refutation tables, one bool per (owner, far end, scan end). Rebuilt on
  // every pass; cheap next to the quadruple loop.
  auto idxT = [&](int p) { return p - tLo; };
  auto idxB = [&](int j) { return j - bLo; };
  std::vector<std::uint8_t> r1(static_cast<std::size_t>(tW) * bW * bW, 0);
  std::vector<std::uint8_t> r2(static_cast<std::size_t>(tW) * bW * bW, 0);
  std::vector<std::uint8_t> r3(static_cast<std::size_t>(bW) * tW * tW, 0);
  std::vector<std::uint8_t> r4(static_cast<std::size_t>(bW) * tW * tW, 0);
  auto at1 = [&](int p, int s, int r) -> std::uint8_t& {
    return r1[(static_cast<std::size_t>(idxT(p)) * bW + idxB(s)) * bW +
              idxB(r)];
  };
  auto at2 = [&](int q, int r, int s) -> std::uint8_t& {
    return r2[(static_cast<std::size_t>(idxT(q)) * bW + idxB(r)) * bW +
              idxB(s)];
  };
  auto at3 = [&](int r, int q, int p) -> std::uint8_t& {
    return r3[(static_cast<std::size_t>(idxB(r)) * tW + idxT(q)) * tW +
              idxT(p)];
  };
  auto at4 = [&](int s, int p, int q) -> std::uint8_t& {
    return r4[(static_cast<std::size_t>(idxB(s)) * tW + idxT(p)) * tW +
              idxT(q)];
  };

  for (int p = c.tLo(); p <= c.tHi(); ++p) {
    for (int s = c.bLo(); s <= c.bHi(); ++s) {
      Label low = c.at(p, s).lowerIndex();
      // case 1: a = p, d = s; scan x = m over (s..r].
      bool ref = false;
      for (int r = s + 1; r <= c.bHi(); ++r) {
        if (low != 0 && c.at(p, r).upperIndexEff(k) >= low) ref = true;
        at1(p, s, r) = ref;
      }
      // case 4: a = p ranges as the *other* top point; here owner d = s,
      // compared cell (p,s); scan x = m over (p..q].
      ref = false;
      for (int q = p + 1; q <= c.tHi(); ++q) {
        if (low != 0 && c.at(q, s).upperIndexEff(k) >= low) ref = true;
        at4(s, p, q) = ref;
      }
    }
  }
  for (int q = c.tLo(); q <= c.tHi(); ++q) {
    for (int r = c.bLo(); r <= c.bHi(); ++r) {
      Label low = c.at(q, r).lowerIndex();
      // case 2: b = q, c = r; scan x = m over [s..r).
      bool ref = false;
      for (int s = r - 1; s >= c.bLo(); --s) {
        if (low != 0 && c.at(q, s).upperIndexEff(k) >= low) ref = true;
        at2(q, r, s) = ref;
      }
      // case 3: b = q, c = r; scan x = m over [p..q).
      ref = false;
      for (int p = q - 1; p >= c.tLo(); --p) {
        if (low != 0 && c.at(p, r).upperIndexEff(k) >= low) ref = true;
        at3(r, q, p) = ref;
      }
    }
  }

  for (int p = c.tLo(); p < c.tHi(); ++p) {
    for (int q = p + 1; q <= c.tHi(); ++q) {
      for (int s = c.bLo(); s < c.bHi(); ++s) {
        for (int r = s + 1; r <= c.bHi(); ++r) {
          bool f1 = at1(p, s, r);
          bool f2 = at2(q, r, s);
          bool f3 = at3(r, q, p);
          bool f4 = at4(s, p, q);
          int refuted = int(f1) + int(f2) + int(f3) + int(f4);
          if (refuted < 3) continue;
          const std::array<int, 6> wit{p, q, r, s, 0, 0};
          if (refuted == 4) {
            if (trace && *trace)
              (*trace)(TraceEvent{RuleId::Fact2, wit, 4, CellRef{p, s},
                                  c.at(p, s), LabelSet()});
            out.status = Status::Contradiction;
            return out;
          }
          // Exactly one survivor: enforce its conclusions.
          if (!f1) {
            Label low = c.at(p, s).lowerIndex();
            if (low != 0) {
              for (int m = s + 1; m <= r; ++m) {
                LabelSet next = c.at(p, m).removeGeAndInf(low);
                if (!ctx.apply(p, m, next, wit, 4)) {
                  out.status = Status::Contradiction;
                  return out;
                }
              }
            }
          } else if (!f2) {
            Label low = c.at(q, r).lowerIndex();
            if (low != 0) {
              for (int m = s; m < r; ++m) {
                LabelSet next = c.at(q, m).removeGeAndInf(low);
                if (!ctx.apply(q, m, next, wit, 4)) {
                  out.status = Status::Contradiction;
                  return out;
                }
              }
            }
          } else if (!f3) {
            Label low = c.at(q, r).lowerIndex();
            if (low != 0) {
              for (int m = p; m < q; ++m) {
                LabelSet next = c.at(m, r).removeGeAndInf(low);
                if (!ctx.apply(m, r, next, wit, 4)) {
                  out.status = Status::Contradiction;
                  return out;
                }
              }
            }
          } else {
            Label low = c.at(p, s).lowerIndex();
            if (low != 0) {
              for (int m = p + 1; m <= q; ++m) {
                LabelSet next = c.at(m, s).removeGeAndInf(low);
                if (!ctx.apply(m, s, next, wit, 4)) {
                  out.status = Status::Contradiction;
                  return out;
                }
              }
            }
          }
        }
      }
    }
  }
  out.status = ctx.status();
  return out;
}

// Digraph over label pairs {x,y}, 1 <= x <= y <= k: an arc {y,z} -> {w,x}
// records the deduced strict inequality d_y + d_z > d_w + d_x. The
// configuration is consistent only if the digraph is acyclic.
class PairInequalityDigraph {
 public:
  explicit PairInequalityDigraph(int k) : k_(k) {
    n_ = k * (k + 1) / 2;
    adj_.assign(static_cast<std::size_t>(n_) * n_, 0);
    // Monotone arcs {x,y} -> {x,z} for y < z.
    for (int x = 1; x <= k; ++x)
      for (int y = 1; y <= k; ++y)
        for (int z = y + 1; z <= k; ++z) addArc(x, y, x, z);
  }

  int nodeId(int x, int y) const {
    if (x > y) std::swap(x, y);
    // Multisets {x,y}, 1 <= x <= y <= k, in lexicographic order.
    int before = (x - 1) * k_ - (x - 1) * (x - 2) / 2;
    return before + (y - x);
  }

  void addArc(int y, int z, int w, int x) {
    adj_[static_cast<std::size_t>(nodeId(y, z)) * n_ + nodeId(w, x)] = 1;
  }
  bool hasArc(int from, int to) const {
    return adj_[static_cast<std::size_t>(from) * n_ + to] != 0;
  }
  int nodeCount() const { return n_; }

  bool acyclic() const {
    std::vector<int> color(n_, 0);
    std::vector<int> stack;
    for (int s = 0; s < n_; ++s) {
      if (color[s] != 0) continue;
      stack.push_back(s);
      while (!stack.empty()) {
        int v = stack.back();
        if (color[v] == 0) {
          color[v] = 1;
          for (int u = 0; u < n_; ++u) {
            if (!hasArc(v, u)) continue;
            if (color[u] == 1) return false;
            if (color[u] == 0) stack.push_back(u);
          }
        } else {
          if (color[v] == 1) color[v] = 2;
          stack.pop_back();
        }
      }
    }
    return true;
  }

  // Arcs as (y,z,w,x) tuples, monotone ones included.
  std::vector<std::array<int, 4>> arcs() const {
    std::vector<std::array<int, 4>> out;
    std::vector<std::pair<int, int>> nodes;
    for (int x = 1; x <= k_; ++x)
      for (int y = x; y <= k_; ++y) nodes.emplace_back(x, y);
    for (int a = 0; a < n_; ++a)
      for (int b = 0; b < n_; ++b)
        if (hasArc(a, b))
          out.push_back({nodes[a].first, nodes[a].second, nodes[b].first,
                         nodes[b].second});
    return out;
  }

 private:
  int k_;
  int n_;
  std::vector<std::uint8_t> adj_;
};

// Collects pair inequalities from every quadruple whose four cells are
// finite singletons. Returns the digraph; consistent iff acyclic.
inline PairInequalityDigraph buildPairDigraph(const Configuration& c) {
  PairInequalityDigraph g(c.k());
  auto finiteSingleton = [](LabelSet s) { return s.isFiniteSingleton(); };
  for (int i = c.tLo(); i < c.tHi(); ++i) {
    for (int i2 = i + 1; i2 <= c.tHi(); ++i2) {
      for (int j = c.bLo(); j < c.bHi(); ++j) {
        for (int j2 = j + 1; j2 <= c.bHi(); ++j2) {
          LabelSet w = c.at(i, j), x = c.at(i2, j2);
          LabelSet y = c.at(i, j2), z = c.at(i2, j);
          if (!finiteSingleton(w) || !finiteSingleton(x) ||
              !finiteSingleton(y) || !finiteSingleton(z))
            continue;
          g.addArc(y.minFinite(), z.minFinite(), w.minFinite(),
                   x.minFinite());
        }
      }
    }
  }
  return g;
}

inline Status derivePairInequalities(const Configuration& c,
                                     const TraceSink* trace = nullptr) {
  PairInequalityDigraph g = buildPairDigraph(c);
  if (g.acyclic()) return Status::Unchanged;
  if (trace && *trace)
    (*trace)(TraceEvent{RuleId::Pairs,
                        {0, 0, 0, 0, 0, 0},
                        0,
                        CellRef{0, 0},
                        LabelSet(),
                        LabelSet()});
  return Status::Contradiction;
}

struct PropagateResult {
  Status status = Status::Unchanged;
  int changedRounds = 0;
  RuleId contradictionRule = RuleId::Count;
};

// Runs fact1, fact3, fact4, fact2, pair-check rounds until a full round
// leaves every cell unchanged. Terminates: every changed round strictly
// lowers the total label count.
inline PropagateResult propagateToFixpoint(Configuration& c,
                                           const TraceSink* trace = nullptr) {
  PropagateResult res;
  // Each changed round strictly lowers the total label count, so the round
  // count can never exceed (k+1) * cells.
  const int roundCap =
      (c.k() + 1) * c.topWidth() * c.bottomWidth() + 2;
  for (;;) {
    assert(res.changedRounds <= roundCap);
    (void)roundCap;
    bool changed = false;
    DeductionOutcome o = applyFact1(c, trace);
    if (o.status == Status::Contradiction) {
      res.status = Status::Contradiction;
      res.contradictionRule = RuleId::Fact1;
      return res;
    }
    changed |= o.status == Status::Changed;
    o = applyFact3(c, trace);
    if (o.status == Status::Contradiction) {
      res.status = Status::Contradiction;
      res.contradictionRule = RuleId::Fact3;
      return res;
    }
    changed |= o.status == Status::Changed;
    o = applyFact4(c, trace);
    if (o.status == Status::Contradiction) {
      res.status = Status::Contradiction;
      res.contradictionRule = RuleId::Fact4;
      return res;
    }
    changed |= o.status == Status::Changed;
    o = applyFact2(c, trace);
    if (o.status == Status::Contradiction) {
      res.status = Status::Contradiction;
      res.contradictionRule = RuleId::Fact2;
      return res;
    }
    changed |= o.status == Status::Changed;
    if (derivePairInequalities(c, trace) == Status::Contradiction) {
      res.status = Status::Contradiction;
      res.contradictionRule = RuleId::Pairs;
      return res;
    }
    if (!changed) break;
    ++res.changedRounds;
  }
  res.status = res.changedRounds > 0 ? Status::Changed : Status::Unchanged;
  return res;
}

}  // namespace convexdist
