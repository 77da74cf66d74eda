#include "iggp/extract.hpp"

#include <algorithm>
#include <iterator>

#include "iggp/dependency.hpp"
#include "iggp/error.hpp"

namespace iggp {

std::string_view to_string(Target t) {
  switch (t) {
    case Target::Legal: return "legal";
    case Target::Goal: return "goal";
    case Target::Terminal: return "terminal";
    case Target::Next: return "next";
  }
  return "?";
}

std::optional<Target> parse_target(std::string_view name) {
  for (Target t : kTargets) {
    if (to_string(t) == name) return t;
  }
  return std::nullopt;
}

Symbol target_predicate(Target t) {
  switch (t) {
    case Target::Legal: return sym::legal();
    case Target::Goal: return sym::goal();
    case Target::Terminal: return sym::terminal();
    case Target::Next: return sym::next();
  }
  return sym::next();
}

std::size_t hash_triple(const Triple& t) {
  std::size_t seed = 0;
  std::hash<std::string> h;
  for (const FlatAtomSet* part : {&t.bk, &t.pos, &t.neg}) {
    hash_combine(seed, part->size());
    for (const FlatAtom& a : *part) hash_combine(seed, h(a.text()));
  }
  return seed;
}

namespace {

bool is_game_predicate(Symbol p) {
  return p == sym::init() || p == sym::legal() || p == sym::goal() || p == sym::terminal() ||
         p == sym::next() || p == sym::true_() || p == sym::does();
}

FlatAtomSet merge(const FlatAtomSet& a, const FlatAtomSet& b) {
  FlatAtomSet out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

FlatAtomSet flatten_all(const std::vector<Atom>& atoms) {
  std::vector<FlatAtom> out;
  out.reserve(atoms.size());
  for (const Atom& a : atoms) out.push_back(flatten(a));
  return make_set(std::move(out));
}

}  // namespace

FlatAtomSet static_facts(const Game& game) {
  const Program& p = game.program();
  const DepGraph g = dependency_graph(p);
  // Predicates that reach true or does through rule bodies are dynamic.
  std::set<Symbol> dynamic = {sym::true_(), sym::does()};
  for (bool changed = true; changed;) {
    changed = false;
    for (const DepEdge& e : g.edges) {
      if (dynamic.contains(e.to) && dynamic.insert(e.from).second) changed = true;
    }
  }
  const FactSet model = game.engine().model(std::span<const Atom>{});
  std::vector<Atom> atoms;
  for (Symbol pred : model.predicates()) {
    if (is_game_predicate(pred) || dynamic.contains(pred) || pred == sym::distinct()) continue;
    for (const Atom* a : model.rows(pred)) atoms.push_back(*a);
  }
  return flatten_all(atoms);
}

FlatAtomSet target_family(const TypeSignature& sig, Target t) {
  return flatten_all(sig.ground_atoms(target_predicate(t)));
}

Extractor::Extractor(const Game& game, const TypeSignature& sig)
    : game_(&game), statics_(static_facts(game)) {
  FlatteningMap check(sig);
  (void)check;
  for (Target t : kTargets) families_[static_cast<std::size_t>(t)] = target_family(sig, t);
}

Triple closed_world(FlatAtomSet bk, const std::vector<FlatAtom>& positives,
                    const FlatAtomSet& family, Target t) {
  Triple out;
  out.bk = std::move(bk);
  out.pos = make_set(positives);
  for (const FlatAtom& a : out.pos) {
    if (!contains(family, a)) {
      throw Error(ErrorKind::IllTyped, "example " + a.text() + " of target " +
                                           std::string(to_string(t)) +
                                           " is not in its ground(signature) family");
    }
  }
  out.neg.reserve(family.size() - out.pos.size());
  std::set_difference(family.begin(), family.end(), out.pos.begin(), out.pos.end(),
                      std::back_inserter(out.neg));
  return out;
}

Triple Extractor::make_triple(FlatAtomSet bk, const std::vector<FlatAtom>& positives,
                              Target t) const {
  return closed_world(std::move(bk), positives, family(t), t);
}

namespace {

FlatAtomSet state_atoms(const GameState& s) { return flatten_all(s.true_atoms()); }

FlatAtomSet transition_atoms(const GameState& s, const JointAction& a) {
  return merge(state_atoms(s), flatten_all(does_atoms(a)));
}

std::vector<FlatAtom> model_examples(const FactSet& model, Target t) {
  std::vector<FlatAtom> out;
  for (const Atom* a : model.rows(target_predicate(t))) out.push_back(flatten(*a));
  return out;
}

std::vector<FlatAtom> next_examples(const GameState& next) {
  std::vector<FlatAtom> out;
  for (const Term& f : next.fluents()) out.push_back(flatten(Atom{sym::next(), {f}}));
  return out;
}

}  // namespace

Triple Extractor::triple_single(const GameState& s, const FactSet& model, Target t) const {
  if (t == Target::Next) {
    throw Error(ErrorKind::Usage, "next triples come from transitions, not single states");
  }
  return make_triple(merge(statics_, state_atoms(s)), model_examples(model, t), t);
}

Triple Extractor::triple_transition(const GameState& s, const JointAction& a,
                                    const GameState& next) const {
  return make_triple(merge(statics_, transition_atoms(s, a)), next_examples(next), Target::Next);
}

std::array<std::vector<Triple>, 4> Extractor::extract_trace_dynamic(const Trace& trace) const {
  std::array<std::vector<Triple>, 4> out;
  const auto& steps = trace.steps;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const FactSet model = game_->model(steps[i].state);
    const FlatAtomSet bk = state_atoms(steps[i].state);
    for (Target t : {Target::Legal, Target::Goal, Target::Terminal}) {
      out[static_cast<std::size_t>(t)].push_back(make_triple(bk, model_examples(model, t), t));
    }
    if (i + 1 < steps.size()) {
      if (!steps[i].action) {
        throw Error(ErrorKind::MalformedFile,
                    "trace step " + std::to_string(i) + " has a successor but no action");
      }
      out[static_cast<std::size_t>(Target::Next)].push_back(
          make_triple(transition_atoms(steps[i].state, *steps[i].action),
                      next_examples(steps[i + 1].state), Target::Next));
    }
  }
  return out;
}

Triple Extractor::with_statics(Triple dynamic) const {
  dynamic.bk = merge(statics_, dynamic.bk);
  return dynamic;
}

std::array<std::vector<Triple>, 4> Extractor::extract_trace(const Trace& trace) const {
  auto out = extract_trace_dynamic(trace);
  for (auto& list : out) {
    for (auto& t : list) t = with_statics(std::move(t));
  }
  return out;
}

Triple triple_single(const GameState& s, const FactSet& model, const FlatAtomSet& statics,
                     Target t, const TypeSignature& sig) {
  return closed_world(merge(statics, state_atoms(s)), model_examples(model, t),
                      target_family(sig, t), t);
}

Triple triple_transition(const GameState& s, const JointAction& a, const GameState& next,
                         const FlatAtomSet& statics, const TypeSignature& sig) {
  return closed_world(merge(statics, transition_atoms(s, a)), next_examples(next),
                      target_family(sig, Target::Next), Target::Next);
}

std::array<std::vector<Triple>, 4> extract_trace(const Trace& trace, const Game& game,
                                                 const TypeSignature& sig) {
  return Extractor(game, sig).extract_trace(trace);
}

}  // namespace iggp
