#include "iggp/inference.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <shared_mutex>

#include "iggp/error.hpp"

namespace iggp {

// ---------------------------------------------------------------------------
// FactSet

FactSet::FactSet(std::initializer_list<Atom> atoms) {
  for (const auto& a : atoms) insert(a);
}

FactSet::FactSet(std::shared_ptr<const FactSet> base)
    : base_(std::move(base)), size_(base_ ? base_->size() : 0) {}

FactSet::FactSet(const FactSet& other) : base_(other.base_), size_(base_ ? base_->size() : 0) {
  for (const auto& [pred, rel] : other.relations_) {
    // An owned relation shadows the base one, whose atoms it already holds.
    if (base_) size_ -= base_->rows(pred).size();
    Relation& mine = relations_[pred];
    for (const Atom* a : rel.order) size_ += add_row(mine, *a) ? 1 : 0;
  }
}

FactSet& FactSet::operator=(const FactSet& other) {
  if (this != &other) {
    FactSet copy(other);
    *this = std::move(copy);
  }
  return *this;
}

const FactSet::Relation* FactSet::find(Symbol predicate) const {
  auto it = relations_.find(predicate);
  if (it != relations_.end()) return &it->second;
  return base_ ? base_->find(predicate) : nullptr;
}

bool FactSet::insert(Atom a) {
  if (!a.is_ground()) throw Error(ErrorKind::Parse, "fact is not ground: " + to_prolog(a));
  auto owned = relations_.find(a.predicate);
  if (owned == relations_.end()) {
    const Relation* shared = base_ ? base_->find(a.predicate) : nullptr;
    if (shared && shared->set.contains(a)) return false;
    owned = relations_.emplace(a.predicate, Relation{}).first;
    if (shared) {
      // Copy on write: take over the base's atoms of this predicate.
      for (const Atom* row : shared->order) add_row(owned->second, *row);
    }
  }
  if (!add_row(owned->second, std::move(a))) return false;
  ++size_;
  return true;
}

bool FactSet::add_row(Relation& rel, Atom a) {
  auto [it, inserted] = rel.set.insert(std::move(a));
  if (!inserted) return false;
  const Atom* row = &*it;
  const auto index = static_cast<std::uint32_t>(rel.order.size());
  rel.order.push_back(row);
  if (rel.index.size() < row->args.size()) rel.index.resize(row->args.size());
  for (std::size_t i = 0; i < row->args.size(); ++i) rel.index[i][row->args[i]].push_back(index);
  return true;
}

bool FactSet::contains(const Atom& a) const {
  const Relation* rel = find(a.predicate);
  return rel && rel->set.contains(a);
}

std::span<const Atom* const> FactSet::rows(Symbol predicate) const {
  const Relation* rel = find(predicate);
  if (!rel) return {};
  return rel->order;
}

const std::vector<std::uint32_t>* FactSet::lookup(Symbol predicate, std::size_t position,
                                                  const Term& value) const {
  static const std::vector<std::uint32_t> none;
  const Relation* rel = find(predicate);
  if (!rel || position >= rel->index.size()) return &none;
  const auto& idx = rel->index[position];
  auto found = idx.find(value);
  return found == idx.end() ? &none : &found->second;
}

std::vector<Symbol> FactSet::predicates() const {
  std::vector<Symbol> out = base_ ? base_->predicates() : std::vector<Symbol>{};
  for (const auto& [pred, rel] : relations_) out.push_back(pred);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  std::erase_if(out, [&](Symbol p) { return rows(p).empty(); });
  return out;
}

std::vector<Atom> FactSet::sorted() const {
  std::vector<Atom> out;
  out.reserve(size_);
  for (Symbol pred : predicates()) {
    for (const Atom* a : rows(pred)) out.push_back(*a);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool operator==(const FactSet& a, const FactSet& b) {
  if (a.size() != b.size()) return false;
  for (Symbol pred : a.predicates()) {
    for (const Atom* x : a.rows(pred)) {
      if (!b.contains(*x)) return false;
    }
  }
  return true;
}

std::vector<Atom> query(const FactSet& m, Symbol predicate) {
  std::vector<Atom> out;
  for (const Atom* a : m.rows(predicate)) out.push_back(*a);
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Engine

namespace {

enum class StepKind { Match, Negation, Distinct };

struct Step {
  StepKind kind;
  const Literal* literal;
  bool recursive = false;  // Match over a predicate of the rule's own stratum
};

struct Plan {
  const Rule* rule;
  std::uint32_t var_count = 0;
  std::vector<Step> steps;
  bool has_recursive = false;
};

void collect_var_indexes(const Term& t, std::vector<std::uint32_t>& out) {
  if (t.is_variable()) {
    out.push_back(t.var_index());
  } else {
    for (const auto& a : t.args()) collect_var_indexes(a, out);
  }
}

std::vector<std::uint32_t> var_indexes(const Atom& a) {
  std::vector<std::uint32_t> out;
  for (const auto& t : a.args) collect_var_indexes(t, out);
  return out;
}

// Positive literals keep their written order; each negation or `distinct`
// runs as soon as every variable it mentions is bound.
Plan make_plan(const Rule& r, const Strata& strata) {
  Plan plan{&r, 0, {}, false};
  std::uint32_t max_var = 0;
  bool any_var = false;
  auto note = [&](const Atom& a) {
    for (auto v : var_indexes(a)) {
      max_var = std::max(max_var, v);
      any_var = true;
    }
  };
  note(r.head);
  for (const auto& lit : r.body) note(lit.atom);
  plan.var_count = any_var ? max_var + 1 : 0;

  const std::size_t head_level = strata.level_of(r.head.predicate);
  std::vector<bool> bound(plan.var_count, false);
  std::vector<const Literal*> pending;
  auto ready = [&](const Literal* lit) {
    for (auto v : var_indexes(lit->atom)) {
      if (!bound[v]) return false;
    }
    return true;
  };
  auto flush = [&] {
    for (auto it = pending.begin(); it != pending.end();) {
      if (ready(*it)) {
        const bool is_distinct = (*it)->atom.predicate == sym::distinct();
        plan.steps.push_back(
            Step{is_distinct ? StepKind::Distinct : StepKind::Negation, *it, false});
        it = pending.erase(it);
      } else {
        ++it;
      }
    }
  };

  for (const auto& lit : r.body) {
    if (lit.negated || lit.atom.predicate == sym::distinct()) pending.push_back(&lit);
  }
  flush();
  for (const auto& lit : r.body) {
    if (lit.negated || lit.atom.predicate == sym::distinct()) continue;
    const bool recursive = strata.level_of(lit.atom.predicate) == head_level;
    plan.steps.push_back(Step{StepKind::Match, &lit, recursive});
    plan.has_recursive = plan.has_recursive || recursive;
    for (auto v : var_indexes(lit.atom)) bound[v] = true;
    flush();
  }
  if (!pending.empty()) {
    throw Error(ErrorKind::UnsafeRule, "unsafe rule " + to_kif(r) +
                                           ": a negated or distinct literal has unbound variables");
  }
  return plan;
}

using Bindings = std::vector<const Term*>;

bool match(const Term& pattern, const Term& ground, Bindings& b,
           std::vector<std::uint32_t>& trail) {
  switch (pattern.kind()) {
    case Term::Kind::Variable: {
      const Term*& slot = b[pattern.var_index()];
      if (slot) return *slot == ground;
      slot = &ground;
      trail.push_back(pattern.var_index());
      return true;
    }
    case Term::Kind::Constant:
      return ground.is_constant() && ground.symbol() == pattern.symbol();
    case Term::Kind::Compound: {
      if (!ground.is_compound() || ground.symbol() != pattern.symbol() ||
          ground.arity() != pattern.arity()) {
        return false;
      }
      for (std::size_t i = 0; i < pattern.arity(); ++i) {
        if (!match(pattern.args()[i], ground.args()[i], b, trail)) return false;
      }
      return true;
    }
  }
  return false;
}

// Ground copy of `pattern`, or nullopt when some variable is still unbound.
std::optional<Term> instantiate(const Term& pattern, const Bindings& b) {
  switch (pattern.kind()) {
    case Term::Kind::Variable:
      if (const Term* t = b[pattern.var_index()]) return *t;
      return std::nullopt;
    case Term::Kind::Constant:
      return pattern;
    case Term::Kind::Compound: {
      std::vector<Term> args;
      args.reserve(pattern.arity());
      for (const auto& a : pattern.args()) {
        auto g = instantiate(a, b);
        if (!g) return std::nullopt;
        args.push_back(std::move(*g));
      }
      return Term::compound(pattern.symbol(), std::move(args));
    }
  }
  return std::nullopt;
}

bool is_bound(const Term& pattern, const Bindings& b) {
  switch (pattern.kind()) {
    case Term::Kind::Variable: return b[pattern.var_index()] != nullptr;
    case Term::Kind::Constant: return true;
    case Term::Kind::Compound:
      return std::all_of(pattern.args().begin(), pattern.args().end(),
                         [&](const Term& t) { return is_bound(t, b); });
  }
  return false;
}

Atom instantiate_atom(const Atom& pattern, const Bindings& b) {
  Atom out{pattern.predicate, {}};
  out.args.reserve(pattern.args.size());
  for (const auto& t : pattern.args) {
    auto g = instantiate(t, b);
    if (!g) {
      throw Error(ErrorKind::UnsafeRule, "unbound variable while instantiating " + to_prolog(pattern));
    }
    out.args.push_back(std::move(*g));
  }
  return out;
}

struct RowRange {
  std::uint32_t begin = 0;
  std::uint32_t end = 0;
};

class Evaluator {
 public:
  Evaluator(FactSet& model, const EngineLimits& limits, std::size_t& derivations)
      : model_(model), limits_(limits), derivations_(derivations) {}

  // Evaluates `plan`; when `delta_step` is set, that step only sees rows in
  // `delta`. Derived heads are buffered in `out`.
  void run(const Plan& plan, std::optional<std::size_t> delta_step, RowRange delta,
           std::vector<Atom>& out) {
    plan_ = &plan;
    delta_step_ = delta_step;
    delta_ = delta;
    out_ = &out;
    bindings_.assign(plan.var_count, nullptr);
    trail_.clear();
    solve(0);
  }

 private:
  void solve(std::size_t i) {
    if (i == plan_->steps.size()) {
      Atom head = instantiate_atom(plan_->rule->head, bindings_);
      for (const auto& t : head.args) {
        if (t.depth() > limits_.max_term_depth) {
          throw Error(ErrorKind::TermDepthExceeded,
                      "derived term exceeds depth " + std::to_string(limits_.max_term_depth) +
                          ": " + to_prolog(head));
        }
      }
      out_->push_back(std::move(head));
      return;
    }
    const Step& step = plan_->steps[i];
    const Atom& atom = step.literal->atom;
    switch (step.kind) {
      case StepKind::Negation:
        if (!model_.contains(instantiate_atom(atom, bindings_))) solve(i + 1);
        return;
      case StepKind::Distinct: {
        auto lhs = instantiate(atom.args[0], bindings_);
        auto rhs = instantiate(atom.args[1], bindings_);
        if (!lhs || !rhs) {
          throw Error(ErrorKind::NonGroundDistinct,
                      "distinct with unbound argument in " + to_kif(*plan_->rule));
        }
        const bool differ = !(*lhs == *rhs);
        if (differ != step.literal->negated) solve(i + 1);
        return;
      }
      case StepKind::Match:
        match_step(i, atom);
        return;
    }
  }

  void match_step(std::size_t i, const Atom& atom) {
    auto rows = model_.rows(atom.predicate);
    RowRange range{0, static_cast<std::uint32_t>(rows.size())};
    if (delta_step_ == i) range = delta_;
    if (range.begin >= range.end) return;

    const std::vector<std::uint32_t>* candidates = nullptr;
    for (std::size_t pos = 0; pos < atom.args.size(); ++pos) {
      if (is_bound(atom.args[pos], bindings_)) {
        candidates = model_.lookup(atom.predicate, pos, *instantiate(atom.args[pos], bindings_));
        break;
      }
    }

    auto try_row = [&](std::uint32_t r) {
      const Atom& fact = *rows[r];
      const std::size_t mark = trail_.size();
      bool ok = true;
      for (std::size_t k = 0; k < atom.args.size() && ok; ++k) {
        ok = match(atom.args[k], fact.args[k], bindings_, trail_);
      }
      if (ok) solve(i + 1);
      while (trail_.size() > mark) {
        bindings_[trail_.back()] = nullptr;
        trail_.pop_back();
      }
    };

    if (candidates) {
      auto first = std::lower_bound(candidates->begin(), candidates->end(), range.begin);
      for (auto it = first; it != candidates->end() && *it < range.end; ++it) try_row(*it);
    } else {
      for (std::uint32_t r = range.begin; r < range.end; ++r) try_row(r);
    }
  }

  FactSet& model_;
  const EngineLimits& limits_;
  std::size_t& derivations_;
  const Plan* plan_ = nullptr;
  std::optional<std::size_t> delta_step_;
  RowRange delta_;
  std::vector<Atom>* out_ = nullptr;
  Bindings bindings_;
  std::vector<std::uint32_t> trail_;
};

}  // namespace

struct Engine::Impl {
  using PlanLevels = std::vector<std::vector<const Plan*>>;

  // What a model call with extra facts over a given set of predicates has
  // to recompute. Predicates that do not depend on any of them keep their
  // extension from the program alone, held in a shared base.
  struct Layer {
    std::set<Symbol> affected;
    std::shared_ptr<const FactSet> base;
    PlanLevels plans;
    std::vector<const Atom*> facts;  // program facts of affected predicates
  };

  Program program;
  Strata strata;
  EngineLimits limits;
  std::vector<std::vector<Plan>> plans;  // by stratum
  std::map<Symbol, std::vector<Symbol>> dependents;

  mutable std::shared_mutex layers_mutex;
  mutable std::map<std::vector<Symbol>, std::shared_ptr<const Layer>> layers;

  void build_plans() {
    plans.assign(strata.size(), {});
    for (const Rule& r : program.rules()) {
      const std::size_t level = strata.level_of(r.head.predicate);
      plans[level].push_back(make_plan(r, strata));
    }
    for (const DepEdge& e : dependency_graph(program).edges) dependents[e.to].push_back(e.from);
  }

  std::shared_ptr<const Layer> layer_for(const std::vector<Symbol>& key) const {
    {
      std::shared_lock lock(layers_mutex);
      auto it = layers.find(key);
      if (it != layers.end()) return it->second;
    }
    auto layer = std::make_shared<Layer>();
    std::vector<Symbol> work(key.begin(), key.end());
    while (!work.empty()) {
      const Symbol p = work.back();
      work.pop_back();
      if (!layer->affected.insert(p).second) continue;
      auto it = dependents.find(p);
      if (it != dependents.end()) work.insert(work.end(), it->second.begin(), it->second.end());
    }
    PlanLevels static_plans(plans.size());
    layer->plans.resize(plans.size());
    for (std::size_t level = 0; level < plans.size(); ++level) {
      for (const Plan& plan : plans[level]) {
        const bool affected = layer->affected.contains(plan.rule->head.predicate);
        (affected ? layer->plans : static_plans)[level].push_back(&plan);
      }
    }
    FactSet base;
    for (const Atom& f : program.facts()) {
      if (layer->affected.contains(f.predicate)) {
        layer->facts.push_back(&f);
      } else {
        base.insert(f);
      }
    }
    layer->base = std::make_shared<const FactSet>(evaluate(std::move(base), static_plans));

    std::unique_lock lock(layers_mutex);
    return layers.emplace(key, std::move(layer)).first->second;
  }

  FactSet model(const std::vector<const Atom*>& extra) const {
    std::vector<Symbol> key;
    for (const Atom* a : extra) key.push_back(a->predicate);
    std::sort(key.begin(), key.end());
    key.erase(std::unique(key.begin(), key.end()), key.end());
    const auto layer = layer_for(key);
    FactSet m(layer->base);
    for (const Atom* f : layer->facts) m.insert(*f);
    for (const Atom* a : extra) m.insert(*a);
    return evaluate(std::move(m), layer->plans);
  }

  FactSet evaluate(FactSet model, const PlanLevels& levels) const {
    std::size_t derivations = 0;
    Evaluator eval(model, limits, derivations);
    auto add_all = [&](std::vector<Atom>& derived) {
      for (auto& a : derived) {
        if (model.insert(std::move(a)) && ++derivations > limits.max_derivations) {
          throw Error(ErrorKind::IterationCapExceeded,
                      "more than " + std::to_string(limits.max_derivations) + " derivations");
        }
      }
      derived.clear();
    };

    std::vector<Atom> derived;
    for (std::size_t level = 0; level < levels.size(); ++level) {
      const auto& level_plans = levels[level];
      if (level_plans.empty()) continue;

      // Row counts of this stratum's predicates before the current round.
      std::map<Symbol, std::uint32_t> before;
      auto snapshot = [&] {
        std::map<Symbol, std::uint32_t> sizes;
        for (Symbol s : strata.levels()[level]) {
          sizes[s] = static_cast<std::uint32_t>(model.rows(s).size());
        }
        return sizes;
      };

      before = snapshot();
      for (const Plan* plan : level_plans) {
        eval.run(*plan, std::nullopt, {}, derived);
        add_all(derived);
      }
      auto after = snapshot();

      bool recursive = std::any_of(level_plans.begin(), level_plans.end(),
                                   [](const Plan* p) { return p->has_recursive; });
      while (recursive && after != before) {
        for (const Plan* plan : level_plans) {
          if (!plan->has_recursive) continue;
          for (std::size_t i = 0; i < plan->steps.size(); ++i) {
            const Step& step = plan->steps[i];
            if (!step.recursive) continue;
            Symbol pred = step.literal->atom.predicate;
            RowRange delta{before[pred], after[pred]};
            if (delta.begin >= delta.end) continue;
            eval.run(*plan, i, delta, derived);
          }
        }
        // Rules in one round all see the same delta; inserting afterwards
        // keeps the row ranges exact.
        add_all(derived);
        before = std::move(after);
        after = snapshot();
      }
    }
    return model;
  }
};

Engine::Engine(Program program, EngineLimits limits)
    : impl_(std::make_unique<Impl>()) {
  validate_safety(program);
  impl_->strata = stratify(program);
  impl_->program = std::move(program);
  impl_->limits = limits;
  impl_->build_plans();
}

Engine::Engine(Program program, Strata strata, EngineLimits limits)
    : impl_(std::make_unique<Impl>()) {
  validate_safety(program);
  impl_->program = std::move(program);
  impl_->strata = std::move(strata);
  impl_->limits = limits;
  impl_->build_plans();
}

Engine::~Engine() = default;
Engine::Engine(Engine&&) noexcept = default;
Engine& Engine::operator=(Engine&&) noexcept = default;

const Program& Engine::program() const noexcept { return impl_->program; }
const Strata& Engine::strata() const noexcept { return impl_->strata; }

FactSet Engine::model(const FactSet& extra) const {
  std::vector<const Atom*> atoms;
  atoms.reserve(extra.size());
  for (Symbol pred : extra.predicates()) {
    for (const Atom* a : extra.rows(pred)) atoms.push_back(a);
  }
  return impl_->model(atoms);
}

FactSet Engine::model(std::span<const Atom> extra) const {
  std::vector<const Atom*> atoms;
  atoms.reserve(extra.size());
  for (const Atom& a : extra) atoms.push_back(&a);
  return impl_->model(atoms);
}

FactSet minimal_model(const Program& p, const Strata& strata, const FactSet& extra,
                      const EngineLimits& limits) {
  return Engine(p, strata, limits).model(extra);
}

}  // namespace iggp
