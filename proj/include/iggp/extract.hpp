#pragma once

#include <array>
#include <optional>
#include <string_view>
#include <vector>

#include "iggp/flat_atom.hpp"
#include "iggp/game.hpp"
#include "iggp/signature.hpp"
#include "iggp/tracegen.hpp"

namespace iggp {

enum class Target { Legal, Goal, Terminal, Next };

inline constexpr std::array<Target, 4> kTargets = {Target::Legal, Target::Goal, Target::Terminal,
                                                   Target::Next};

std::string_view to_string(Target t);
std::optional<Target> parse_target(std::string_view name);
/// The GDL predicate a target is about.
Symbol target_predicate(Target t);

/// One induction instance: background atoms and closed-world examples.
struct Triple {
  FlatAtomSet bk;
  FlatAtomSet pos;
  FlatAtomSet neg;

  friend bool operator==(const Triple&, const Triple&) = default;
};

std::size_t hash_triple(const Triple& t);

/// Flattened ground facts of predicates that do not depend on `true` or
/// `does` and are not themselves distinguished game predicates.
FlatAtomSet static_facts(const Game& game);

/// Flattened ground(Σ, predicate(t)), sorted.
FlatAtomSet target_family(const TypeSignature& sig, Target t);

/// Triple with the given B, E+ = positives and E- = family - E+. Throws
/// Error(IllTyped) if a positive lies outside the family.
Triple closed_world(FlatAtomSet bk, const std::vector<FlatAtom>& positives,
                    const FlatAtomSet& family, Target t);

/// Per-game extraction context. Precomputes the statics and each target's
/// example space, then builds triples from states and traces.
class Extractor {
 public:
  /// Throws Error(NameCollision | Undeclared | EnumerationCap).
  Extractor(const Game& game, const TypeSignature& sig);

  const Game& game() const noexcept { return *game_; }
  const FlatAtomSet& statics() const noexcept { return statics_; }
  const FlatAtomSet& family(Target t) const noexcept {
    return families_[static_cast<std::size_t>(t)];
  }

  /// Triple for legal, goal or terminal at `s`; `model` is the minimal model
  /// at `s`. Throws Error(IllTyped) if the model holds a target atom outside
  /// ground(Σ, target).
  Triple triple_single(const GameState& s, const FactSet& model, Target t) const;
  Triple triple_transition(const GameState& s, const JointAction& a,
                           const GameState& next) const;

  /// Λ1..Λ4 for one trace, indexed by Target.
  std::array<std::vector<Triple>, 4> extract_trace(const Trace& trace) const;

  /// Same as extract_trace but every B omits the statics; add them back with
  /// with_statics. Used to deduplicate without copying the statics around.
  std::array<std::vector<Triple>, 4> extract_trace_dynamic(const Trace& trace) const;
  Triple with_statics(Triple dynamic) const;

 private:
  Triple make_triple(FlatAtomSet bk, const std::vector<FlatAtom>& positives, Target t) const;

  const Game* game_;
  FlatAtomSet statics_;
  std::array<FlatAtomSet, 4> families_;
};

/// Free-function forms over an explicit statics set.
Triple triple_single(const GameState& s, const FactSet& model, const FlatAtomSet& statics,
                     Target t, const TypeSignature& sig);
Triple triple_transition(const GameState& s, const JointAction& a, const GameState& next,
                         const FlatAtomSet& statics, const TypeSignature& sig);
std::array<std::vector<Triple>, 4> extract_trace(const Trace& trace, const Game& game,
                                                 const TypeSignature& sig);

}  // namespace iggp
