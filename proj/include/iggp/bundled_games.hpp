#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "iggp/program.hpp"
#include "iggp/signature.hpp"

namespace iggp {

/// A reference game description shipped with the library.
struct GameBundle {
  std::string_view name;
  std::string_view gdl;
  std::string_view signature;
  std::string_view provenance;
};

/// A game description with its type signature, checked for consistency.
struct LoadedGame {
  std::string name;
  std::string gdl_text;
  std::string signature_text;
  Program program;
  TypeSignature signature;
};

/// Bundles sorted by name.
std::vector<GameBundle> bundles();
/// Throws Error(UnknownBundle).
const GameBundle& find_bundle(std::string_view name);

/// Parses both texts and checks that the signature covers the program,
/// that the program stratifies and is safe, and that flattening is
/// injective. Throws the corresponding Error.
LoadedGame load_game(std::string name, std::string gdl_text, std::string signature_text);
/// Throws Error(UnknownBundle) or any load_game error.
LoadedGame load_bundle(std::string_view name);

namespace detail {
const std::vector<GameBundle>& bundle_table();
}

}  // namespace iggp
