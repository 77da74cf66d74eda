#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "iggp/game.hpp"

namespace iggp {

struct EpisodeConfig {
  std::size_t max_traces = 1000;
  std::size_t max_time = 100;  // states per trace, including the initial one
  std::uint64_t master_seed = 7;
};

struct TraceStep {
  GameState state;
  std::optional<JointAction> action;  // empty on the final state

  friend bool operator==(const TraceStep&, const TraceStep&) = default;
};

struct Trace {
  std::vector<TraceStep> steps;
  bool terminated = false;

  std::size_t length() const noexcept { return steps.size(); }
  friend bool operator==(const Trace&, const Trace&) = default;
};

/// Random stream for one episode, a pure function of (master seed, episode
/// index), so generation order never affects output.
std::mt19937_64 episode_stream(std::uint64_t master_seed, std::uint64_t episode);

/// Uniform integer in [0, n), unbiased and identical on every platform.
std::size_t uniform_index(std::mt19937_64& rng, std::size_t n);

/// Independent uniform pick per role (in role-name order) over each role's
/// sorted action list. Throws Error(DeadEnd) on an empty set.
JointAction choose_joint_action(std::mt19937_64& rng, const LegalMoves& legal);

/// One random playout. Terminality is checked at every state including the
/// first; the trace stops at a terminal state or after `max_time` states.
Trace play_episode(const Game& game, std::size_t max_time, std::mt19937_64& rng);

/// `cfg.max_traces` playouts in episode order. `jobs` > 1 runs episodes on
/// worker threads with identical results. DeadEnd errors are rethrown with
/// the episode index and step.
std::vector<Trace> generate_traces(const Game& game, const EpisodeConfig& cfg,
                                   std::size_t jobs = 1);

/// Trace dump: one `#episode` record per trace with flattened atom lines
/// for each state's fluents and the joint action taken from it.
std::string write_traces(const std::vector<Trace>& traces);

/// Runs `work(i)` for i in [0, n) on up to `jobs` threads. The first
/// exception (by index) is rethrown after all workers stop.
void parallel_for(std::size_t n, std::size_t jobs, const std::function<void(std::size_t)>& work);

}  // namespace iggp
