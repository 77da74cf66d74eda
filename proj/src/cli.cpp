#include "iggp/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include "iggp/baselines.hpp"
#include "iggp/bundled_games.hpp"
#include "iggp/dataset.hpp"
#include "iggp/dependency.hpp"
#include "iggp/error.hpp"
#include "iggp/evaluate.hpp"
#include "iggp/manifest.hpp"
#include "iggp/tracegen.hpp"

namespace iggp {

namespace {

namespace fs = std::filesystem;

constexpr std::uint64_t kDefaultSeed = 7;

std::string read_text(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// A game argument resolved to its texts: an existing file path, or the
/// name of a bundled game.
struct GameSource {
  std::string label;
  std::string name;
  std::string gdl;
  std::optional<std::string> signature_label;
  std::optional<std::string> signature;
};

GameSource resolve_game(const std::string& game, const std::string& sig) {
  GameSource src;
  src.label = game;
  if (fs::exists(game)) {
    const fs::path p(game);
    src.gdl = read_text(p);
    src.name = p.stem().string();
    if (src.name == "game" && p.has_parent_path()) {
      src.name = fs::absolute(p).parent_path().filename().string();
    }
    const fs::path sibling = p.parent_path() / "signature.sig";
    if (sig.empty() && fs::exists(sibling)) {
      src.signature_label = sibling.string();
      src.signature = read_text(sibling);
    }
  } else {
    const GameBundle* bundle = nullptr;
    for (const GameBundle& b : detail::bundle_table()) {
      if (b.name == game) bundle = &b;
    }
    if (!bundle) {
      std::string known;
      for (const GameBundle& b : bundles()) known += " " + std::string(b.name);
      throw Error(ErrorKind::Io,
                  "no such file or bundled game '" + game + "' (bundled:" + known + ")");
    }
    src.name = std::string(bundle->name);
    src.gdl = std::string(bundle->gdl);
    src.signature_label = "bundle:" + src.name;
    src.signature = std::string(bundle->signature);
  }
  if (!sig.empty()) {
    src.signature_label = sig;
    src.signature = read_text(sig);
  }
  return src;
}

std::uint64_t pick_seed(std::uint64_t seed, bool random_seed, std::ostream& err) {
  if (!random_seed) return seed;
  std::random_device rd;
  const std::uint64_t s = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
  err << "using random seed " << s << "\n";
  return s;
}

/// Directories holding a dataset (`game.gdl` present): `dir` itself, or its
/// immediate subdirectories in name order.
std::vector<fs::path> dataset_dirs(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw Error(ErrorKind::Io, "not a directory: " + dir.string());
  if (fs::exists(dir / "game.gdl")) return {dir};
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.is_directory() && fs::exists(e.path() / "game.gdl")) out.push_back(e.path());
  }
  std::sort(out.begin(), out.end());
  if (out.empty()) throw Error(ErrorKind::Io, "no dataset found under " + dir.string());
  return out;
}

struct Common {
  std::string game;
  std::string sig;
  std::size_t traces = 1000;
  std::size_t max_steps = 100;
  std::uint64_t seed = kDefaultSeed;
  bool random_seed = false;
  std::size_t jobs = 1;
  std::string out;
};

void add_generation_flags(CLI::App* cmd, Common& c) {
  cmd->add_option("--game", c.game, "Game description file or bundled game name")->required();
  cmd->add_option("--sig", c.sig, "Type signature file (default: signature.sig beside the game)");
  cmd->add_option("--traces", c.traces, "Number of episodes")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--max-steps", c.max_steps, "Maximum states per episode")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--seed", c.seed, "Master seed")->capture_default_str();
  cmd->add_flag("--random-seed", c.random_seed, "Draw a fresh seed (recorded in the manifest)");
  cmd->add_option("--jobs", c.jobs, "Worker threads; output does not depend on it")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

std::string generation_command(const std::string& verb, const Common& c, std::uint64_t seed) {
  std::string cmd = "iggp " + verb + " --game " + c.game;
  if (!c.sig.empty()) cmd += " --sig " + c.sig;
  cmd += " --traces " + std::to_string(c.traces) + " --max-steps " + std::to_string(c.max_steps) +
         " --seed " + std::to_string(seed);
  return cmd;
}

int cmd_parse(const std::string& game, const std::string& sig, std::ostream& out) {
  const GameSource src = resolve_game(game, sig);
  const Program p = parse_program(src.gdl);
  out << "parsed: " << p.facts().size() << " facts, " << p.rules().size() << " rules\n";
  out << "roles:";
  for (Symbol r : p.roles()) out << " " << r.str();
  out << "\n";
  validate_safety(p);
  out << "safe: yes\n";
  const Strata strata = stratify(p);
  out << "stratified: yes, strata: " << strata.size() << "\n";
  if (src.signature) {
    const TypeSignature s = TypeSignature::parse(*src.signature);
    s.check_covers(p);
    FlatteningMap injective(s);
    (void)injective;
    out << "signature: covers the program\n";
  }
  return 0;
}

int cmd_simulate(const Common& c, std::ostream& out, std::ostream& err) {
  const GameSource src = resolve_game(c.game, c.sig);
  const Game game(parse_program(src.gdl));
  const std::uint64_t seed = pick_seed(c.seed, c.random_seed, err);
  const EpisodeConfig cfg{c.traces, c.max_steps, seed};
  const auto traces = generate_traces(game, cfg, c.jobs);
  const std::string dump = write_traces(traces);

  RunManifest m;
  m.command = generation_command("simulate", c, seed);
  m.inputs.emplace_back(src.label, sha256_hex(src.gdl));
  m.seed = seed;
  m.config = {{"traces", std::to_string(c.traces)}, {"max-steps", std::to_string(c.max_steps)}};
  m.output_digest = sha256_hex(dump);

  std::size_t terminated = 0;
  for (const Trace& t : traces) terminated += t.terminated ? 1 : 0;
  if (c.out.empty()) {
    out << dump;
  } else {
    write_file_atomic(c.out, dump);
    write_file_atomic(c.out + ".manifest", m.to_text());
    out << "episodes: " << traces.size() << " (" << terminated << " terminated)\n";
    out << "output-digest: sha256:" << m.output_digest << "\n";
  }
  return 0;
}

int cmd_gen(const Common& c, std::ostream& out, std::ostream& err) {
  const GameSource src = resolve_game(c.game, c.sig);
  if (!src.signature) {
    throw Error(ErrorKind::Usage, "no signature for '" + c.game + "'; pass --sig");
  }
  const LoadedGame loaded = load_game(src.name, src.gdl, *src.signature);
  const Game game(loaded.program);
  const Extractor extractor(game, loaded.signature);
  const std::uint64_t seed = pick_seed(c.seed, c.random_seed, err);
  const EpisodeConfig cfg{c.traces, c.max_steps, seed};
  const auto traces = generate_traces(game, cfg, c.jobs);

  Dataset d = generate_dataset(extractor, traces, seed, c.jobs);
  d.game = src.name;
  d.gdl = src.gdl;
  d.signature = *src.signature;

  auto files = dataset_files(d);
  RunManifest m;
  m.command = generation_command("gen", c, seed);
  m.inputs.emplace_back(src.label, sha256_hex(src.gdl));
  m.inputs.emplace_back(*src.signature_label, sha256_hex(*src.signature));
  m.seed = seed;
  m.config = {{"traces", std::to_string(c.traces)}, {"max-steps", std::to_string(c.max_steps)}};
  m.output_digest = digest_files(files);
  files["manifest.txt"] = m.to_text();

  const fs::path dir = fs::path(c.out) / src.name;
  write_directory_atomic(dir, files);
  for (const auto& [target, task] : d.tasks) {
    out << src.name << "/" << to_string(target) << ": " << task.total() << " triples (train "
        << task.of(Split::Train).size() << ", validate " << task.of(Split::Validate).size()
        << ", test " << task.of(Split::Test).size() << ")\n";
    if (task.undersized) {
      err << "warning: " << src.name << "/" << to_string(target) << " has only " << task.total()
          << " distinct triples; all were placed in train\n";
    }
  }
  out << "wrote " << dir.string() << "\n";
  out << "output-digest: sha256:" << m.output_digest << "\n";
  return 0;
}

std::vector<Target> selected_targets(const std::vector<std::string>& names) {
  if (names.empty()) return {kTargets.begin(), kTargets.end()};
  std::vector<Target> out;
  for (const auto& n : names) {
    auto t = parse_target(n);
    if (!t) throw Error(ErrorKind::Usage, "unknown target '" + n + "'");
    out.push_back(*t);
  }
  return out;
}

struct ScoringRun {
  std::string dataset;
  std::string report;
  std::vector<std::string> targets;
  std::size_t jobs = 1;
};

/// Scores every selected task of every dataset under `dir` and writes the
/// report and its manifest.
int score_datasets(const ScoringRun& run, const std::string& method, const std::string& command,
                   const std::function<std::unique_ptr<Classifier>(
                       const Dataset&, const TaskSplits&)>& make,
                   std::ostream& out, std::ostream& err) {
  EvalReport report;
  RunManifest m;
  m.command = command;
  for (const fs::path& dir : dataset_dirs(run.dataset)) {
    const Dataset d = read_dataset(dir);
    m.inputs.emplace_back(dir.string(), digest_files(dataset_files(d)));
    for (Target t : selected_targets(run.targets)) {
      auto it = d.tasks.find(t);
      if (it == d.tasks.end()) continue;
      const TaskSplits& task = it->second;
      if (task.of(Split::Test).empty()) {
        err << "warning: " << d.game << "/" << to_string(t) << " has an empty test split; skipped\n";
        continue;
      }
      const auto classifier = make(d, task);
      TaskScore s = score(*classifier, task.of(Split::Test), run.jobs);
      s.game = d.game;
      s.target = std::string(to_string(t));
      report.rows.push_back(std::move(s));
    }
  }
  const std::string tsv = report.to_tsv();
  out << tsv;
  err << report.summary();
  fs::path report_path = run.report;
  if (report_path.empty()) {
    report_path = fs::path(run.dataset) / "reports" / (method + ".tsv");
  }
  m.output_digest = sha256_hex(tsv);
  write_file_atomic(report_path, tsv);
  write_file_atomic(report_path.string() + ".manifest", m.to_text());
  return 0;
}

int cmd_baseline(const ScoringRun& run, const std::string& method, std::optional<std::size_t> k,
                 std::ostream& out, std::ostream& err) {
  const Predictor proto = Predictor::from_name(method, k);
  std::string command = "iggp baseline --dataset " + run.dataset + " --method " + proto.name();
  for (const auto& t : run.targets) command += " --target " + t;
  return score_datasets(
      run, proto.name(), command,
      [&](const Dataset&, const TaskSplits& task) {
        auto p = std::make_unique<Predictor>(proto);
        p->fit(task.of(Split::Train));
        return std::unique_ptr<Classifier>(std::move(p));
      },
      out, err);
}

int cmd_eval(const ScoringRun& run, const std::string& hypothesis, std::ostream& out,
             std::ostream& err) {
  const bool reference = hypothesis == "reference";
  std::optional<Program> h;
  std::string method = "reference";
  std::string command = "iggp eval --dataset " + run.dataset + " --hypothesis " + hypothesis;
  if (!reference) {
    const std::string text = read_text(hypothesis);
    h = parse_program(text);
    method = fs::path(hypothesis).stem().string();
    command += " (sha256:" + sha256_hex(text) + ")";
  }
  for (const auto& t : run.targets) command += " --target " + t;
  return score_datasets(
      run, method, command,
      [&](const Dataset& d, const TaskSplits&) {
        const TypeSignature sig = TypeSignature::parse(d.signature);
        Program program = reference ? parse_program(d.gdl) : *h;
        return std::unique_ptr<Classifier>(
            std::make_unique<HypothesisClassifier>(std::move(program), sig, method));
      },
      out, err);
}

int report_error(const std::string& what, int code, std::ostream& err) {
  err << "error: " << what << "\n";
  return code;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Generate and score inductive general game playing tasks", "iggp"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(tool_version()));

  std::string parse_game, parse_sig;
  auto* parse = app.add_subcommand("parse", "Check a game description: parse, safety, strata");
  parse->add_option("game", parse_game, "Game description file or bundled game name")->required();
  parse->add_option("--sig", parse_sig, "Also check this type signature against the game");

  Common sim;
  auto* simulate = app.add_subcommand("simulate", "Play random episodes and dump the traces");
  add_generation_flags(simulate, sim);
  simulate->add_option("--out", sim.out, "Trace dump file (default: standard output)");

  Common gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a train/validate/test dataset for a game");
  add_generation_flags(gen_cmd, gen);
  gen_cmd->add_option("--out", gen.out, "Output directory; the dataset goes in <out>/<game>")
      ->required();

  ScoringRun base_run;
  std::string method;
  std::optional<std::size_t> k;
  auto* baseline = app.add_subcommand("baseline", "Score a baseline predictor on a dataset");
  baseline->add_option("--dataset", base_run.dataset, "Dataset directory")->required();
  baseline->add_option("--method", method, "true, inertia, mean, knn1, knn5 or knn with --k")
      ->required();
  baseline->add_option("--k", k, "Neighbours for --method knn")->check(CLI::PositiveNumber);
  baseline->add_option("--target", base_run.targets, "Restrict to these targets");
  baseline->add_option("--report", base_run.report,
                       "Report file (default: <dataset>/reports/<method>.tsv)");
  baseline->add_option("--jobs", base_run.jobs, "Worker threads")->check(CLI::PositiveNumber);

  ScoringRun eval_run;
  std::string hypothesis;
  auto* eval = app.add_subcommand("eval", "Score a rule hypothesis on a dataset");
  eval->add_option("--dataset", eval_run.dataset, "Dataset directory")->required();
  eval->add_option("--hypothesis", hypothesis,
                   "Hypothesis rule file, or 'reference' for the dataset's own game")
      ->required();
  eval->add_option("--target", eval_run.targets, "Restrict to these targets");
  eval->add_option("--report", eval_run.report,
                   "Report file (default: <dataset>/reports/<name>.tsv)");
  eval->add_option("--jobs", eval_run.jobs, "Worker threads")->check(CLI::PositiveNumber);

  std::vector<const char*> argv;
  argv.push_back("iggp");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*parse) return cmd_parse(parse_game, parse_sig, out);
    if (*simulate) return cmd_simulate(sim, out, err);
    if (*gen_cmd) return cmd_gen(gen, out, err);
    if (*baseline) return cmd_baseline(base_run, method, k, out, err);
    if (*eval) return cmd_eval(eval_run, hypothesis, out, err);
  } catch (const Error& e) {
    return report_error(std::string(to_string(e.kind())) + ": " + e.what(), e.is_io() ? 2 : 1,
                        err);
  } catch (const fs::filesystem_error& e) {
    return report_error(e.what(), 2, err);
  } catch (const std::bad_alloc&) {
    return report_error("out of memory", 2, err);
  }
  return 2;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(args, out, err);
}

}  // namespace iggp
