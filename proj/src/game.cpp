#include "iggp/game.hpp"

#include <algorithm>

#include "iggp/error.hpp"

namespace iggp {

GameState::GameState(std::vector<Term> fluents) : fluents_(std::move(fluents)) {
  std::sort(fluents_.begin(), fluents_.end());
  fluents_.erase(std::unique(fluents_.begin(), fluents_.end()), fluents_.end());
  for (const auto& f : fluents_) {
    if (!f.is_ground()) throw Error(ErrorKind::Parse, "fluent is not ground: " + to_prolog(f));
  }
}

bool GameState::contains(const Term& f) const {
  return std::binary_search(fluents_.begin(), fluents_.end(), f);
}

std::vector<Atom> GameState::true_atoms() const {
  std::vector<Atom> out;
  out.reserve(fluents_.size());
  for (const auto& f : fluents_) out.push_back(Atom{sym::true_(), {f}});
  return out;
}

std::vector<Atom> does_atoms(const JointAction& a) {
  std::vector<Atom> out;
  for (const auto& [role, action] : a) {
    out.push_back(Atom{sym::does(), {Term::constant(role), action}});
  }
  return out;
}

std::vector<Symbol> roles(const Program& p) {
  if (p.roles().empty()) throw Error(ErrorKind::NoRoles, "the game declares no (role ...) facts");
  return p.roles();
}

Game::Game(Program program, EngineLimits limits)
    : engine_(std::move(program), limits), roles_(iggp::roles(engine_.program())) {}

namespace {

std::vector<Term> unwrap(const FactSet& model, Symbol wrapper) {
  std::vector<Term> out;
  for (const Atom* a : model.rows(wrapper)) {
    if (a->args.size() == 1) out.push_back(a->args[0]);
  }
  return out;
}

}  // namespace

GameState Game::initial_state() const {
  return GameState(unwrap(engine_.model(std::span<const Atom>{}), sym::init()));
}

FactSet Game::model(const GameState& s) const {
  const auto extra = s.true_atoms();
  return engine_.model(std::span<const Atom>(extra));
}

FactSet Game::model(const GameState& s, const JointAction& a) const {
  auto extra = s.true_atoms();
  auto does = does_atoms(a);
  extra.insert(extra.end(), does.begin(), does.end());
  return engine_.model(std::span<const Atom>(extra));
}

bool Game::terminal_in(const FactSet& model) {
  return model.contains(Atom{sym::terminal(), {}});
}

GameState Game::next_state_in(const FactSet& model) { return GameState(unwrap(model, sym::next())); }

LegalMoves Game::legal_moves_in(const FactSet& model, bool terminal) const {
  LegalMoves moves;
  for (Symbol r : roles_) moves[r];
  for (const Atom* a : model.rows(sym::legal())) {
    if (a->args.size() != 2 || !a->args[0].is_constant()) continue;
    auto it = moves.find(a->args[0].symbol());
    if (it != moves.end()) it->second.push_back(a->args[1]);
  }
  for (auto& [role, actions] : moves) {
    std::sort(actions.begin(), actions.end());
    if (actions.empty() && !terminal) {
      throw Error(ErrorKind::DeadEnd,
                  "role '" + role.str() + "' has no legal move in a non-terminal state");
    }
  }
  return moves;
}

LegalMoves Game::legal_moves(const GameState& s) const {
  const FactSet m = model(s);
  return legal_moves_in(m, terminal_in(m));
}

GameState Game::step(const GameState& s, const JointAction& a) const {
  const FactSet current = model(s);
  const LegalMoves legal = legal_moves_in(current, terminal_in(current));
  if (a.size() != roles_.size()) {
    throw Error(ErrorKind::IllegalAction, "joint action must assign exactly one action to each of " +
                                              std::to_string(roles_.size()) + " role(s)");
  }
  for (const auto& [role, action] : a) {
    auto it = legal.find(role);
    if (it == legal.end()) {
      throw Error(ErrorKind::IllegalAction, "'" + role.str() + "' is not a role of this game");
    }
    if (!std::binary_search(it->second.begin(), it->second.end(), action)) {
      throw Error(ErrorKind::IllegalAction,
                  "action " + to_prolog(action) + " is not legal for role '" + role.str() + "'");
    }
  }
  return next_state_in(model(s, a));
}

RewardAssignment Game::rewards_in(const FactSet& model) const {
  RewardAssignment out;
  for (const Atom* a : model.rows(sym::goal())) {
    if (a->args.size() != 2 || !a->args[0].is_constant()) continue;
    auto [it, inserted] = out.emplace(a->args[0].symbol(), a->args[1]);
    if (!inserted && !(it->second == a->args[1])) {
      throw Error(ErrorKind::DuplicateReward, "role '" + it->first.str() + "' has rewards " +
                                                 to_prolog(it->second) + " and " +
                                                 to_prolog(a->args[1]));
    }
  }
  for (Symbol r : roles_) {
    if (!out.contains(r)) {
      throw Error(ErrorKind::MissingReward, "role '" + r.str() + "' has no reward in this state");
    }
  }
  return out;
}

RewardAssignment Game::rewards(const GameState& s) const { return rewards_in(model(s)); }

bool Game::is_terminal(const GameState& s) const { return terminal_in(model(s)); }

}  // namespace iggp
