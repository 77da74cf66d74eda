#include "iggp/dependency.hpp"

#include <algorithm>
#include <deque>

#include "iggp/error.hpp"

namespace iggp {

DepGraph dependency_graph(const Program& p) {
  DepGraph g;
  for (const auto& [pred, arity] : p.predicate_arities()) g.nodes.insert(pred);
  for (const Rule& r : p.rules()) {
    for (const Literal& lit : r.body) {
      g.edges.insert(DepEdge{r.head.predicate, lit.atom.predicate, lit.negated});
    }
  }
  return g;
}

Strata::Strata(std::vector<std::vector<Symbol>> levels) : levels_(std::move(levels)) {
  for (std::size_t i = 0; i < levels_.size(); ++i) {
    std::sort(levels_[i].begin(), levels_[i].end());
    for (Symbol s : levels_[i]) level_of_[s] = i;
  }
}

std::size_t Strata::level_of(Symbol predicate) const {
  auto it = level_of_.find(predicate);
  return it == level_of_.end() ? 0 : it->second;
}

namespace {

bool reaches(const DepGraph& g, Symbol from, Symbol to) {
  std::set<Symbol> seen{from};
  std::deque<Symbol> work{from};
  while (!work.empty()) {
    Symbol s = work.front();
    work.pop_front();
    if (s == to) return true;
    for (auto it = g.edges.lower_bound(DepEdge{s, Symbol(), false});
         it != g.edges.end() && it->from == s; ++it) {
      if (seen.insert(it->to).second) work.push_back(it->to);
    }
  }
  return false;
}

}  // namespace

Strata stratify(const Program& p) {
  const DepGraph g = dependency_graph(p);
  std::map<Symbol, std::size_t> level;
  for (Symbol s : g.nodes) level[s] = 0;

  // Longest-path relaxation: a negated edge costs one level. Without a
  // negated cycle every level is bounded by the number of predicates.
  const std::size_t bound = g.nodes.size();
  bool changed = true;
  while (changed) {
    changed = false;
    for (const DepEdge& e : g.edges) {
      std::size_t need = level[e.to] + (e.negated ? 1 : 0);
      if (level[e.from] < need) {
        level[e.from] = need;
        changed = true;
        if (need > bound) {
          for (const DepEdge& n : g.edges) {
            if (n.negated && reaches(g, n.to, n.from)) {
              throw Error(ErrorKind::Unstratifiable,
                          "program is not stratified: '" + n.from.str() +
                              "' depends negatively on '" + n.to.str() + "' within a cycle");
            }
          }
          throw Error(ErrorKind::Unstratifiable, "program is not stratified");
        }
      }
    }
  }

  std::size_t top = 0;
  for (const auto& [s, l] : level) top = std::max(top, l);
  std::vector<std::vector<Symbol>> levels(g.nodes.empty() ? 0 : top + 1);
  for (const auto& [s, l] : level) levels[l].push_back(s);
  return Strata(std::move(levels));
}

}  // namespace iggp
