#pragma once
// Machine-checkable run records.
//
// A PROVED certificate for targets T, ratio alpha and terminating level L
// asserts: sum over t in T of m_t <= alpha * n for every convex n-gon with
// n > C(k, l)/(alpha - 1), where l = 2(2k + L) is the special-diagonal
// bound and C is the symbolic boundary-elimination constant (the search
// only reasons about disjoint interval pairs; point sets carrying a
// diagonal of length >= d_k with at most l vertices between its endpoints
// satisfy the bound by a separate counting argument).

#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "convexdist/search.hpp"
#include "convexdist/version.hpp"

namespace convexdist {

struct RunCertificate {
  // params echo
  std::vector<int> targets;
  Rational alpha;
  int k = 0;
  AnchorPolicy policy = AnchorPolicy::Superset;
  int maxLevels = 0;
  std::uint64_t nodeBudget = 0;
  double timeBudgetSec = 0;
  int workers = 1;
  std::string ruleVersion;
  // outcome
  VerdictKind kind = VerdictKind::Exhausted;
  int level = 0;
  ExhaustReason reason = ExhaustReason::None;
  int specialDiagonalBound = 0;  // 2(2k + L), from the terminating level
  std::string statement;
  std::vector<std::uint64_t> livePerLevel;
  std::uint64_t nodes = 0;
  std::uint64_t branches = 0;
  std::uint64_t contradictions[static_cast<int>(RuleId::Count)] = {};
  double wallSec = 0;
  std::vector<std::string> survivorGrids;
};

inline std::string statementFor(const std::vector<int>& targets,
                                const Rational& alpha, int k, int level) {
  std::ostringstream s;
  bool first = true;
  for (int t : targets) {
    if (!first) s << " + ";
    s << "m_" << t;
    first = false;
  }
  int bound = 2 * (2 * k + level);
  s << " <= (" << alpha.str() << ") n for all n > C(" << k << "," << bound
    << ")/(" << alpha.str() << " - 1)";
  return s.str();
}

inline RunCertificate buildCertificate(const SearchParams& params,
                                       const RunResult& run) {
  RunCertificate c;
  c.targets = params.spec.targetList();
  c.alpha = params.spec.alpha;
  c.k = params.spec.k;
  c.policy = params.policy;
  c.maxLevels = params.maxLevels;
  c.nodeBudget = params.nodeBudget;
  c.timeBudgetSec = params.timeBudgetSec;
  c.workers = params.workers;
  c.ruleVersion = ruleVersionHash();
  c.kind = run.verdict.kind;
  c.level = run.verdict.level;
  c.reason = run.verdict.reason;
  if (c.kind == VerdictKind::Proved) {
    c.specialDiagonalBound = 2 * (2 * c.k + c.level);
    c.statement = statementFor(c.targets, c.alpha, c.k, c.level);
  }
  c.livePerLevel = run.stats.livePerLevel;
  c.nodes = run.stats.nodes;
  c.branches = run.stats.branches;
  for (int r = 0; r < static_cast<int>(RuleId::Count); ++r)
    c.contradictions[r] = run.stats.contradictions[r];
  c.wallSec = run.stats.wallSec;
  for (const Configuration& s : run.verdict.survivors)
    c.survivorGrids.push_back(s.renderGrid());
  return c;
}

inline std::string certificateText(const RunCertificate& c) {
  std::ostringstream out;
  out << "convexdist certificate v1\n";
  out << "rule-version: " << c.ruleVersion << "\n";
  out << "targets:";
  for (int t : c.targets) out << " " << t;
  out << "\n";
  out << "alpha: " << c.alpha.str() << "\n";
  out << "k: " << c.k << "\n";
  out << "anchor-policy: " << anchorPolicyName(c.policy) << "\n";
  out << "max-levels: " << c.maxLevels << "\n";
  out << "node-budget: " << c.nodeBudget << "\n";
  out << "time-budget-sec: " << c.timeBudgetSec << "\n";
  out << "workers: " << c.workers << "\n";
  out << "verdict: "
      << (c.kind == VerdictKind::Proved ? "PROVED" : "EXHAUSTED") << "\n";
  out << "level: " << c.level << "\n";
  if (c.kind == VerdictKind::Proved) {
    out << "special-diagonal-bound: " << c.specialDiagonalBound << "\n";
    out << "statement: " << c.statement << "\n";
  } else {
    out << "reason: " << exhaustReasonName(c.reason) << "\n";
  }
  out << "live-after-level:";
  for (std::uint64_t v : c.livePerLevel) out << " " << v;
  out << "\n";
  out << "nodes: " << c.nodes << "\n";
  out << "branches: " << c.branches << "\n";
  out << "contradictions:";
  for (int r = 0; r < static_cast<int>(RuleId::Count); ++r)
    out << " " << ruleName(static_cast<RuleId>(r)) << "="
        << c.contradictions[r];
  out << "\n";
  out << "wall-sec: " << c.wallSec << "\n";
  out << "survivors: " << c.survivorGrids.size() << "\n";
  for (std::size_t s = 0; s < c.survivorGrids.size(); ++s) {
    out << "survivor " << (s + 1) << "\n";
    out << c.survivorGrids[s];
    out << "end survivor\n";
  }
  return out.str();
}

// Minimal parse for replay: key/value headers only; survivor grids are
// carried along verbatim but not interpreted.
struct ParsedCertificate {
  std::map<std::string, std::string> kv;

  const std::string& get(const std::string& key) const {
    static const std::string empty;
    auto it = kv.find(key);
    return it == kv.end() ? empty : it->second;
  }
};

inline ParsedCertificate parseCertificate(std::istream& in) {
  ParsedCertificate p;
  std::string line;
  if (!std::getline(in, line) || line != "convexdist certificate v1")
    throw std::invalid_argument("not a convexdist certificate");
  while (std::getline(in, line)) {
    if (line.rfind("survivor", 0) == 0) break;
    auto colon = line.find(": ");
    if (colon == std::string::npos) {
      colon = line.find(':');
      if (colon == std::string::npos) continue;
      p.kv[line.substr(0, colon)] = "";
      continue;
    }
    p.kv[line.substr(0, colon)] = line.substr(colon + 2);
  }
  return p;
}

inline SearchParams paramsFromCertificate(const ParsedCertificate& p) {
  std::vector<int> targets;
  {
    std::istringstream ts(p.get("targets"));
    int t;
    while (ts >> t) targets.push_back(t);
  }
  auto alpha = parseRational(p.get("alpha"));
  if (targets.empty() || !alpha)
    throw std::invalid_argument("certificate missing targets/alpha");
  SearchParams params;
  params.spec = TargetSpec::make(targets, *alpha);
  params.policy = p.get("anchor-policy") == "paper" ? AnchorPolicy::Paper
                                                    : AnchorPolicy::Superset;
  params.maxLevels = std::stoi(p.get("max-levels"));
  params.nodeBudget = std::stoull(p.get("node-budget"));
  params.timeBudgetSec = std::stod(p.get("time-budget-sec"));
  params.workers = std::stoi(p.get("workers"));
  return params;
}

}  // namespace convexdist
