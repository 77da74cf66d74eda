#include "iggp/bundled_games.hpp"

#include <algorithm>

#include "iggp/dependency.hpp"
#include "iggp/error.hpp"
#include "iggp/flat_atom.hpp"

namespace iggp {

std::vector<GameBundle> bundles() {
  std::vector<GameBundle> out = detail::bundle_table();
  std::sort(out.begin(), out.end(),
            [](const GameBundle& a, const GameBundle& b) { return a.name < b.name; });
  return out;
}

const GameBundle& find_bundle(std::string_view name) {
  for (const GameBundle& b : detail::bundle_table()) {
    if (b.name == name) return b;
  }
  std::string known;
  for (const GameBundle& b : bundles()) known += (known.empty() ? "" : ", ") + std::string(b.name);
  throw Error(ErrorKind::UnknownBundle,
              "unknown bundled game '" + std::string(name) + "' (known: " + known + ")");
}

LoadedGame load_game(std::string name, std::string gdl_text, std::string signature_text) {
  LoadedGame g;
  g.name = std::move(name);
  g.program = parse_program(gdl_text);
  g.signature = TypeSignature::parse(signature_text);
  g.signature.check_covers(g.program);
  validate_safety(g.program);
  stratify(g.program);
  FlatteningMap injective(g.signature);
  (void)injective;
  g.gdl_text = std::move(gdl_text);
  g.signature_text = std::move(signature_text);
  return g;
}

LoadedGame load_bundle(std::string_view name) {
  const GameBundle& b = find_bundle(name);
  return load_game(std::string(b.name), std::string(b.gdl), std::string(b.signature));
}

}  // namespace iggp
