#include "iggp/tracegen.hpp"

#include <algorithm>
#include <exception>
#include <mutex>
#include <thread>

#include "iggp/error.hpp"
#include "iggp/flat_atom.hpp"

namespace iggp {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::mt19937_64 episode_stream(std::uint64_t master_seed, std::uint64_t episode) {
  return std::mt19937_64(splitmix64(splitmix64(master_seed) ^ splitmix64(~episode)));
}

std::size_t uniform_index(std::mt19937_64& rng, std::size_t n) {
  if (n == 0) throw Error(ErrorKind::Usage, "uniform_index over an empty range");
  const std::uint64_t bound = static_cast<std::uint64_t>(n);
  // Values below 2^64 mod n are rejected so the remaining range is a
  // whole number of blocks of size n.
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t x = rng();
    if (x >= threshold) return static_cast<std::size_t>(x % bound);
  }
}

JointAction choose_joint_action(std::mt19937_64& rng, const LegalMoves& legal) {
  JointAction out;
  for (const auto& [role, actions] : legal) {
    if (actions.empty()) {
      throw Error(ErrorKind::DeadEnd, "role '" + role.str() + "' has no legal move");
    }
    out.emplace(role, actions[uniform_index(rng, actions.size())]);
  }
  return out;
}

Trace play_episode(const Game& game, std::size_t max_time, std::mt19937_64& rng) {
  Trace trace;
  GameState state = game.initial_state();
  for (;;) {
    const FactSet model = game.model(state);
    const bool terminal = Game::terminal_in(model);
    if (terminal || trace.steps.size() + 1 >= max_time) {
      trace.steps.push_back(TraceStep{std::move(state), std::nullopt});
      trace.terminated = terminal;
      return trace;
    }
    JointAction action;
    try {
      action = choose_joint_action(rng, game.legal_moves_in(model, false));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::DeadEnd) throw;
      throw Error(ErrorKind::DeadEnd,
                  std::string(e.what()) + " at step " + std::to_string(trace.steps.size()));
    }
    GameState next = Game::next_state_in(game.model(state, action));
    trace.steps.push_back(TraceStep{std::move(state), std::move(action)});
    state = std::move(next);
  }
}

void parallel_for(std::size_t n, std::size_t jobs, const std::function<void(std::size_t)>& work) {
  jobs = std::max<std::size_t>(1, std::min(jobs, n));
  if (jobs == 1) {
    for (std::size_t i = 0; i < n; ++i) work(i);
    return;
  }
  std::mutex mu;
  std::size_t next = 0;
  std::size_t failed_at = n;
  std::exception_ptr failure;
  auto worker = [&] {
    for (;;) {
      std::size_t i;
      {
        std::lock_guard lock(mu);
        if (next >= n || next > failed_at) return;
        i = next++;
      }
      try {
        work(i);
      } catch (...) {
        std::lock_guard lock(mu);
        if (i < failed_at) {
          failed_at = i;
          failure = std::current_exception();
        }
      }
    }
  };
  std::vector<std::thread> threads;
  for (std::size_t t = 0; t < jobs; ++t) threads.emplace_back(worker);
  for (auto& t : threads) t.join();
  if (failure) std::rethrow_exception(failure);
}

std::vector<Trace> generate_traces(const Game& game, const EpisodeConfig& cfg, std::size_t jobs) {
  if (cfg.max_traces == 0) throw Error(ErrorKind::Usage, "max_traces must be at least 1");
  if (cfg.max_time == 0) throw Error(ErrorKind::Usage, "max_time must be at least 1");
  std::vector<Trace> traces(cfg.max_traces);
  parallel_for(cfg.max_traces, jobs, [&](std::size_t i) {
    auto rng = episode_stream(cfg.master_seed, i);
    try {
      traces[i] = play_episode(game, cfg.max_time, rng);
    } catch (const Error& e) {
      throw Error(e.kind(), "episode " + std::to_string(i) + ": " + e.what());
    }
  });
  return traces;
}

std::string write_traces(const std::vector<Trace>& traces) {
  std::string out;
  auto line = [&](const Atom& a) {
    out += flatten(a).text();
    out += ".\n";
  };
  for (std::size_t i = 0; i < traces.size(); ++i) {
    const Trace& t = traces[i];
    out += "#episode " + std::to_string(i) + "\n";
    out += t.terminated ? "#terminated\n" : "#truncated\n";
    for (std::size_t k = 0; k < t.steps.size(); ++k) {
      out += "#state " + std::to_string(k) + "\n";
      for (const Atom& a : t.steps[k].state.true_atoms()) line(a);
      if (t.steps[k].action) {
        out += "#does\n";
        for (const Atom& a : does_atoms(*t.steps[k].action)) line(a);
      }
    }
  }
  return out;
}

}  // namespace iggp
