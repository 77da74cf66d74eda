#pragma once

#include <map>
#include <set>
#include <vector>

#include "iggp/program.hpp"

namespace iggp {

struct DepEdge {
  Symbol from;  // head predicate
  Symbol to;    // body predicate
  bool negated = false;

  friend auto operator<=>(const DepEdge&, const DepEdge&) = default;
};

struct DepGraph {
  std::set<Symbol> nodes;
  /// An edge appears once per (from, to, negated) triple.
  std::set<DepEdge> edges;

  bool has_edge(Symbol from, Symbol to, bool negated) const {
    return edges.contains(DepEdge{from, to, negated});
  }
};

/// Edge p -> q for every rule with head predicate p and a body literal over q.
/// Nodes are every predicate of the program, including fact-only ones.
DepGraph dependency_graph(const Program& p);

/// Ordered partition of predicates; each predicate sits at the lowest level
/// consistent with its rules.
class Strata {
 public:
  Strata() = default;
  explicit Strata(std::vector<std::vector<Symbol>> levels);

  const std::vector<std::vector<Symbol>>& levels() const noexcept { return levels_; }
  std::size_t size() const noexcept { return levels_.size(); }

  /// Stratum of `predicate`; predicates not in the program are base (0).
  std::size_t level_of(Symbol predicate) const;

  friend bool operator==(const Strata& a, const Strata& b) noexcept {
    return a.levels_ == b.levels_;
  }

 private:
  std::vector<std::vector<Symbol>> levels_;
  std::map<Symbol, std::size_t> level_of_;
};

/// Throws Error(Unstratifiable) naming a negated edge on a cycle.
Strata stratify(const Program& p);

}  // namespace iggp
