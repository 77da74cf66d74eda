#pragma once

#include <filesystem>
#include <initializer_list>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "iggp/flat_atom.hpp"
#include "iggp/game.hpp"
#include "iggp/program.hpp"

namespace iggp::testing {

/// Ground atom from KIF text such as "(score p1 0)".
inline Atom atom(const std::string& kif) { return parse_program(kif).facts().at(0); }

/// Ground term from KIF text, e.g. "(score p1 0)" or "stone".
inline Term term(const std::string& kif) { return atom("(holder " + kif + ")").args.at(0); }

inline GameState state(std::initializer_list<const char*> fluents) {
  std::vector<Term> out;
  for (const char* f : fluents) out.push_back(term(f));
  return GameState(std::move(out));
}

inline JointAction joint(std::initializer_list<std::pair<const char*, const char*>> moves) {
  JointAction out;
  for (const auto& [role, action] : moves) out.emplace(Symbol(role), term(action));
  return out;
}

inline FlatAtomSet flats(std::initializer_list<const char*> atoms) {
  std::vector<FlatAtom> out;
  for (const char* a : atoms) out.push_back(FlatAtom::parse(a));
  return make_set(std::move(out));
}

/// Fresh directory under the system temp path, removed on destruction.
class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("iggp-test-" + std::to_string(rd()) + "-" + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const noexcept { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace iggp::testing
