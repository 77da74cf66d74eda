// One PASS/FAIL line per acceptance criterion; exits nonzero on any FAIL.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "iggp/baselines.hpp"
#include "iggp/bundled_games.hpp"
#include "iggp/cli.hpp"
#include "iggp/dataset.hpp"
#include "iggp/dependency.hpp"
#include "iggp/evaluate.hpp"
#include "iggp/extract.hpp"
#include "iggp/inference.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"
#include "support/oracle.hpp"

namespace fs = std::filesystem;
using namespace iggp;
using iggp::testing::flats;
using iggp::testing::joint;
using iggp::testing::state;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* title, double budget_seconds,
               const std::function<Outcome()>& check) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = check();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (budget_seconds > 0 && secs > budget_seconds) {
    o.pass = false;
    o.detail += " (over the " + std::to_string(budget_seconds) + " s budget)";
  }
  if (!o.pass) ++failures;
  std::cout << (o.pass ? "PASS" : "FAIL") << " " << id << " " << title << " [" << secs << " s]";
  if (!o.detail.empty()) std::cout << " " << o.detail;
  std::cout << std::endl;
}

const Game& rps() {
  static const Game g(load_bundle("rock_paper_scissors").program);
  return g;
}

Outcome transition(const GameState& s, const JointAction& a, const GameState& expected) {
  const GameState got = rps().step(s, a);
  if (got == expected) return {true, ""};
  std::string text;
  for (const Term& f : got.fluents()) text += to_kif(f) + " ";
  return {false, "got " + text};
}

int cli(const std::vector<std::string>& args, std::string* out = nullptr) {
  std::ostringstream o, e;
  const int code = run_cli(args, o, e);
  if (out) *out = o.str();
  if (code != 0) std::cerr << e.str();
  return code;
}

std::map<std::string, std::string> tree(const fs::path& dir) {
  std::map<std::string, std::string> files;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (!e.is_regular_file()) continue;
    std::ifstream in(e.path(), std::ios::binary);
    files[fs::relative(e.path(), dir).string()] =
        std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  }
  return files;
}

// Rows of a report as (game/target, ba, perfectly_solved, single_class).
struct Row {
  std::string task;
  double ba;
  bool perfect;
  bool single_class;
};

std::vector<Row> rows_of(const std::string& tsv) {
  std::vector<Row> rows;
  std::istringstream in(tsv);
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    std::vector<std::string> cols;
    std::istringstream fields(line);
    for (std::string c; std::getline(fields, c, '\t');) cols.push_back(c);
    if (cols.size() != 10) continue;
    rows.push_back({cols[0] + "/" + cols[1], std::stod(cols[7]), cols[8] == "true", cols[9] == "true"});
  }
  return rows;
}

}  // namespace

int main() {
  iggp::testing::TempDir tmp;
  const fs::path data = tmp.path() / "datasets";

  criterion(1, "rock paper scissors first-round transition", 1.0, [] {
    return transition(state({"(score p1 0)", "(score p2 0)", "(step 0)"}),
                      joint({{"p1", "stone"}, {"p2", "paper"}}),
                      state({"(score p1 0)", "(score p2 1)", "(step 1)"}));
  });

  criterion(2, "rock paper scissors third-round transition", 1.0, [] {
    return transition(state({"(score p1 0)", "(score p2 2)", "(step 2)"}),
                      joint({{"p1", "paper"}, {"p2", "stone"}}),
                      state({"(score p1 1)", "(score p2 2)", "(step 3)"}));
  });

  criterion(3, "fizz buzz golden scenarios", 1.0, [] {
    const LoadedGame fb = load_bundle("fizz_buzz");
    const Game g(fb.program);
    const Extractor ex(g, fb.signature);
    std::string bad;
    const GameState nine = state({"(count 9)", "(success 3)"});
    const Triple legal = ex.triple_single(nine, g.model(nine), Target::Legal);
    if (legal.pos != flats({"legal_say(player,9)", "legal_say(player,fizz)",
                            "legal_say(player,buzz)", "legal_say(player,fizzbuzz)"})) {
      bad += " legal";
    }
    const GameState twelve = state({"(count 12)", "(success 3)"});
    const JointAction buzz = joint({{"player", "(say buzz)"}});
    const Triple next = ex.triple_transition(twelve, buzz, g.step(twelve, buzz));
    if (next.pos != flats({"next_count(13)", "next_success(3)"})) bad += " next";
    const GameState twenty = state({"(count 23)", "(success 20)"});
    const Triple goal = ex.triple_single(twenty, g.model(twenty), Target::Goal);
    if (goal.pos != flats({"goal(player,50)"})) bad += " goal";
    if (g.is_terminal(state({"(count 27)", "(success 20)"})) ||
        !g.is_terminal(state({"(count 31)", "(success 20)"}))) {
      bad += " terminal";
    }
    return Outcome{bad.empty(), bad.empty() ? "" : "mismatch:" + bad};
  });

  criterion(4, "closed-world legal extraction", 0, [] {
    const LoadedGame g = load_game(
        "moves",
        "(role p1) (init here)"
        "(<= (legal p1 up) (true here)) (<= (legal p1 down) (true here))"
        "(<= (next here) (does p1 up)) (<= (next here) (does p1 down))",
        "role :: agent -> bool. true, next, init :: prop -> bool.\n"
        "legal, does :: agent -> move -> bool. goal :: agent -> reward -> bool.\n"
        "terminal :: bool. p1 :: agent. up, down, left, right :: move.\n"
        "here :: prop. 0 :: reward.");
    const Game game(g.program);
    const Extractor ex(game, g.signature);
    const GameState s = game.initial_state();
    const Triple t = ex.triple_single(s, game.model(s), Target::Legal);
    const bool ok = t.pos == flats({"legal(p1,up)", "legal(p1,down)"}) &&
                    t.neg == flats({"legal(p1,left)", "legal(p1,right)"});
    return Outcome{ok, ""};
  });

  criterion(5, "engine agrees with naive oracle on random programs", 60.0, [] {
    iggp::testing::Rng rng(20190101);
    std::size_t agree = 0;
    const std::size_t total = 200;
    for (std::size_t i = 0; i < total; ++i) {
      const auto rp = iggp::testing::random_stratified_program(rng, 6, 20, 8);
      const Program p = parse_program(rp.text);
      const auto model = minimal_model(p, stratify(p), {}).sorted();
      const std::set<Atom> got(model.begin(), model.end());
      agree += got == iggp::testing::naive_model(p, rp.levels);
    }
    return Outcome{agree == total, std::to_string(agree) + "/" + std::to_string(total)};
  });

  criterion(6, "reference program perfectly solves its own datasets", 300.0, [&] {
    std::string bad;
    std::size_t rows = 0;
    for (const GameBundle& b : bundles()) {
      const std::string name(b.name);
      if (cli({"gen", "--game", name, "--seed", "7", "--traces", "50", "--max-steps", "25",
               "--out", data.string()}) != 0) {
        return Outcome{false, "gen failed for " + name};
      }
      std::string tsv;
      if (cli({"eval", "--dataset", (data / name).string(), "--hypothesis", "reference"}, &tsv) != 0) {
        return Outcome{false, "eval failed for " + name};
      }
      const auto r = rows_of(tsv);
      if (r.size() != 4) bad += " " + name + " has " + std::to_string(r.size()) + " scored tasks";
      for (const Row& row : r) {
        ++rows;
        if (!row.perfect || row.ba != 1.0) bad += " " + row.task;
      }
    }
    return Outcome{bad.empty(), std::to_string(rows) + " tasks" + bad};
  });

  criterion(7, "true scores 0.5 and inertia beats it on next tasks", 0, [&] {
    std::string bad, detail;
    for (const GameBundle& b : bundles()) {
      const fs::path dir = data / std::string(b.name);
      std::string true_tsv, inertia_tsv;
      if (cli({"baseline", "--dataset", dir.string(), "--method", "true", "--target", "next"},
              &true_tsv) != 0 ||
          cli({"baseline", "--dataset", dir.string(), "--method", "inertia", "--target", "next"},
              &inertia_tsv) != 0) {
        return Outcome{false, "baseline failed for " + std::string(b.name)};
      }
      const auto t = rows_of(true_tsv), i = rows_of(inertia_tsv);
      if (t.size() != 1 || i.size() != 1) return Outcome{false, "missing next row"};
      if (!t[0].single_class && t[0].ba != 0.5) bad += " true(" + t[0].task + ")";
      if (!(i[0].ba > t[0].ba)) bad += " inertia(" + i[0].task + ")";
      detail += " " + std::string(b.name) + "=" + std::to_string(i[0].ba);
    }
    return Outcome{bad.empty(), "inertia:" + detail + bad};
  });

  criterion(8, "knn1 cannot generalise to an unseen constant", 0, [] {
    Predictor k = Predictor::make_knn(1);
    k.fit({Triple{flats({"q(a)"}), flats({"p(a)"}), flats({"p(b)", "p(c)"})},
           Triple{flats({"q(b)"}), flats({"p(b)"}), flats({"p(a)", "p(c)"})}});
    return Outcome{!k.predict(flats({"q(c)"}), FlatAtom::parse("p(c)")), ""};
  });

  criterion(9, "distance metric axioms on 10000 random pairs", 0, [] {
    iggp::testing::Rng rng(9);
    const auto pool = iggp::testing::atom_pool(6, 8);
    std::size_t violations = 0;
    for (int i = 0; i < 10'000; ++i) {
      const FlatAtomSet a = iggp::testing::random_subset(rng, pool);
      const FlatAtomSet b = iggp::testing::random_subset(rng, pool);
      const FlatAtomSet c = iggp::testing::random_subset(rng, pool);
      const std::size_t ab = distance(a, b);
      violations += distance(a, a) != 0;
      violations += (ab == 0) != (a == b);
      violations += ab != distance(b, a);
      violations += distance(a, c) > ab + distance(b, c);
    }
    return Outcome{violations == 0, std::to_string(violations) + " violations"};
  });

  criterion(10, "gen output independent of --jobs", 0, [&] {
    const fs::path one = tmp.path() / "jobs1", eight = tmp.path() / "jobs8";
    for (const GameBundle& b : bundles()) {
      const std::string name(b.name);
      if (cli({"gen", "--game", name, "--traces", "50", "--max-steps", "25", "--jobs", "1",
               "--out", one.string()}) != 0 ||
          cli({"gen", "--game", name, "--traces", "50", "--max-steps", "25", "--jobs", "8",
               "--out", eight.string()}) != 0) {
        return Outcome{false, "gen failed for " + name};
      }
    }
    const auto a = tree(one), b = tree(eight);
    return Outcome{a == b && !a.empty(), std::to_string(a.size()) + " files compared"};
  });

  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
