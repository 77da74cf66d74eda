#pragma once

#include <map>
#include <vector>

#include "iggp/inference.hpp"
#include "iggp/program.hpp"

namespace iggp {

/// A state: the set of fluents f for which true(f) holds, canonically sorted.
class GameState {
 public:
  GameState() = default;
  explicit GameState(std::vector<Term> fluents);

  const std::vector<Term>& fluents() const noexcept { return fluents_; }
  bool contains(const Term& f) const;
  std::size_t size() const noexcept { return fluents_.size(); }

  /// `true(f)` for every fluent.
  std::vector<Atom> true_atoms() const;

  friend bool operator==(const GameState&, const GameState&) = default;

 private:
  std::vector<Term> fluents_;
};

/// One action per role.
using JointAction = std::map<Symbol, Term>;
/// Role to its reward value (opaque, usually a numeral).
using RewardAssignment = std::map<Symbol, Term>;
/// Role to its canonically sorted legal actions.
using LegalMoves = std::map<Symbol, std::vector<Term>>;

/// `does(r, a)` for every role.
std::vector<Atom> does_atoms(const JointAction& a);

/// A GDL description viewed as a deterministic Markov game. Holds the
/// compiled engine; every operation is a pure function of its arguments.
class Game {
 public:
  /// Stratifies and plans the program. Throws Error(NoRoles | Unstratifiable
  /// | UnsafeRule).
  explicit Game(Program program, EngineLimits limits = {});

  const Program& program() const noexcept { return engine_.program(); }
  const Engine& engine() const noexcept { return engine_; }
  const std::vector<Symbol>& roles() const noexcept { return roles_; }

  GameState initial_state() const;

  /// Model of the program with true(f) for f in `s` (no does atoms).
  FactSet model(const GameState& s) const;
  /// Model with true(f) for f in `s` and does(r, a(r)).
  FactSet model(const GameState& s, const JointAction& a) const;

  /// Throws Error(DeadEnd) when a role has no move in a non-terminal state.
  LegalMoves legal_moves(const GameState& s) const;
  /// Throws Error(IllegalAction) if some role's action is not legal in `s`
  /// or the joint action does not name exactly the game's roles.
  GameState step(const GameState& s, const JointAction& a) const;
  /// Throws Error(MissingReward | DuplicateReward).
  RewardAssignment rewards(const GameState& s) const;
  bool is_terminal(const GameState& s) const;

  // Readers over a precomputed model of `s`.
  LegalMoves legal_moves_in(const FactSet& model, bool terminal) const;
  RewardAssignment rewards_in(const FactSet& model) const;
  static bool terminal_in(const FactSet& model);
  static GameState next_state_in(const FactSet& model);

 private:
  Engine engine_;
  std::vector<Symbol> roles_;
};

/// Roles in declaration order. Throws Error(NoRoles).
std::vector<Symbol> roles(const Program& p);

}  // namespace iggp
