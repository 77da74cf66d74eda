#include "iggp/dataset.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "iggp/error.hpp"

namespace iggp {

namespace fs = std::filesystem;

std::string_view to_string(Split s) {
  switch (s) {
    case Split::Train: return "train";
    case Split::Validate: return "validate";
    case Split::Test: return "test";
  }
  return "?";
}

std::size_t TaskSplits::total() const {
  return triples[0].size() + triples[1].size() + triples[2].size();
}

void TripleCollector::add(Triple t) {
  const std::size_t h = hash_triple(t);
  auto [lo, hi] = by_hash_.equal_range(h);
  for (auto it = lo; it != hi; ++it) {
    if (triples_[it->second] == t) {
      ++counts_[it->second];
      return;
    }
  }
  by_hash_.emplace(h, triples_.size());
  triples_.push_back(std::move(t));
  counts_.push_back(1);
}

TaskSplits split_task(std::vector<Triple> triples, std::vector<std::size_t> counts,
                      std::uint64_t seed, Target target) {
  if (counts.size() != triples.size()) counts.assign(triples.size(), 1);
  const std::size_t n = triples.size();
  // The shuffle stream is keyed like an episode stream, in a separate range
  // of stream indexes per target.
  auto rng = episode_stream(seed, 0xd5a7a5e7000000ULL + static_cast<std::uint64_t>(target));
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[uniform_index(rng, i)]);

  TaskSplits out;
  out.undersized = n < 6;
  const std::size_t held_out = out.undersized ? 0 : n / 6;
  const std::array<std::size_t, 3> sizes = {n - 2 * held_out, held_out, held_out};
  std::size_t next = 0;
  for (std::size_t s = 0; s < 3; ++s) {
    for (std::size_t k = 0; k < sizes[s]; ++k, ++next) {
      out.triples[s].push_back(std::move(triples[order[next]]));
      out.multiplicity[s].push_back(counts[order[next]]);
    }
  }
  return out;
}

std::map<Target, TaskSplits> build_dataset(const std::map<Target, std::vector<Triple>>& triples,
                                           std::uint64_t seed) {
  std::map<Target, TaskSplits> out;
  for (const auto& [target, list] : triples) {
    TripleCollector c;
    for (const Triple& t : list) c.add(t);
    std::vector<std::size_t> counts = c.counts();
    out.emplace(target, split_task(c.take_triples(), std::move(counts), seed, target));
  }
  return out;
}

Dataset generate_dataset(const Extractor& extractor, const std::vector<Trace>& traces,
                         std::uint64_t seed, std::size_t jobs) {
  std::array<TripleCollector, 4> collectors;
  // Extract in bounded chunks so peak memory does not grow with the number
  // of traces; merging is always in trace order.
  const std::size_t chunk = std::max<std::size_t>(64, 16 * jobs);
  for (std::size_t begin = 0; begin < traces.size(); begin += chunk) {
    const std::size_t end = std::min(traces.size(), begin + chunk);
    std::vector<std::array<std::vector<Triple>, 4>> parts(end - begin);
    parallel_for(end - begin, jobs, [&](std::size_t i) {
      parts[i] = extractor.extract_trace_dynamic(traces[begin + i]);
    });
    for (auto& part : parts) {
      for (std::size_t t = 0; t < 4; ++t) {
        for (Triple& triple : part[t]) collectors[t].add(std::move(triple));
      }
    }
  }
  Dataset d;
  for (Target t : kTargets) {
    auto& c = collectors[static_cast<std::size_t>(t)];
    std::vector<std::size_t> counts = c.counts();
    std::vector<Triple> full = c.take_triples();
    for (Triple& triple : full) triple = extractor.with_statics(std::move(triple));
    d.tasks.emplace(t, split_task(std::move(full), std::move(counts), seed, t));
  }
  return d;
}

std::string write_triples(const std::vector<Triple>& triples) {
  std::string out;
  auto section = [&](const char* header, const FlatAtomSet& atoms) {
    out += header;
    for (const FlatAtom& a : atoms) {
      out += a.text();
      out += ".\n";
    }
  };
  for (std::size_t i = 0; i < triples.size(); ++i) {
    out += "#triple " + std::to_string(i) + "\n";
    section("#bk\n", triples[i].bk);
    section("#pos\n", triples[i].pos);
    section("#neg\n", triples[i].neg);
  }
  return out;
}

std::vector<Triple> read_triples(std::string_view text, std::string_view source) {
  std::vector<Triple> out;
  std::vector<FlatAtom> parts[3];
  int section = -1;  // 0 bk, 1 pos, 2 neg
  std::size_t line_no = 0;
  auto fail = [&](std::size_t column, const std::string& what) -> void {
    throw Error(ErrorKind::MalformedFile, std::string(source) + ":" + std::to_string(line_no) +
                                              ":" + std::to_string(column) + ": " + what);
  };
  auto finish = [&] {
    if (out.empty()) return;
    if (section != 2) fail(1, "triple " + std::to_string(out.size() - 1) + " is missing sections");
    Triple& t = out.back();
    t.bk = make_set(std::move(parts[0]));
    t.pos = make_set(std::move(parts[1]));
    t.neg = make_set(std::move(parts[2]));
    for (auto& p : parts) p.clear();
  };
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (line.starts_with("#triple")) {
      finish();
      const std::string expected = "#triple " + std::to_string(out.size());
      if (line != expected) fail(1, "expected '" + expected + "'");
      out.emplace_back();
      section = -1;
    } else if (line == "#bk" || line == "#pos" || line == "#neg") {
      const int want = line == "#bk" ? 0 : line == "#pos" ? 1 : 2;
      if (out.empty() || want != section + 1) {
        fail(1, "unexpected section header '" + std::string(line) + "'");
      }
      section = want;
    } else if (line.front() == '#') {
      fail(1, "unknown header '" + std::string(line) + "'");
    } else {
      if (section < 0) fail(1, "atom outside a section");
      auto parsed = FlatAtom::try_parse(line);
      if (auto* e = std::get_if<FlatParseError>(&parsed)) fail(e->column, e->message);
      parts[section].push_back(std::get<FlatAtom>(std::move(parsed)));
    }
  }
  finish();
  return out;
}

namespace {

std::string write_multiplicity(const TaskSplits& task) {
  std::string out;
  for (Split s : kSplits) {
    const auto& counts = task.multiplicity[static_cast<std::size_t>(s)];
    for (std::size_t i = 0; i < counts.size(); ++i) {
      out += std::string(to_string(s)) + " " + std::to_string(i) + " " +
             std::to_string(counts[i]) + "\n";
    }
  }
  return out;
}

void read_multiplicity(std::string_view text, const std::string& source, TaskSplits& task) {
  for (std::size_t s = 0; s < 3; ++s) task.multiplicity[s].assign(task.triples[s].size(), 1);
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string split;
    std::size_t index = 0, count = 0;
    std::string rest;
    if (!(fields >> split >> index >> count) || (fields >> rest)) {
      throw Error(ErrorKind::MalformedFile,
                  source + ":" + std::to_string(line_no) + ":1: expected '<split> <index> <count>'");
    }
    std::size_t s = 3;
    for (Split candidate : kSplits) {
      if (to_string(candidate) == split) s = static_cast<std::size_t>(candidate);
    }
    if (s == 3 || index >= task.multiplicity[s].size() || count == 0) {
      throw Error(ErrorKind::MalformedFile,
                  source + ":" + std::to_string(line_no) + ":1: invalid multiplicity entry");
    }
    task.multiplicity[s][index] = count;
  }
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

std::map<std::string, std::string> dataset_files(const Dataset& d) {
  std::map<std::string, std::string> files;
  files["game.gdl"] = d.gdl;
  files["signature.sig"] = d.signature;
  for (const auto& [target, task] : d.tasks) {
    const std::string dir = std::string(to_string(target)) + "/";
    for (Split s : kSplits) {
      files[dir + std::string(to_string(s)) + ".triples"] = write_triples(task.of(s));
    }
    files[dir + "multiplicity.txt"] = write_multiplicity(task);
  }
  return files;
}

void write_dataset(const Dataset& d, const fs::path& dir) {
  for (const auto& [rel, content] : dataset_files(d)) {
    const fs::path p = dir / rel;
    std::error_code ec;
    fs::create_directories(p.parent_path(), ec);
    std::ofstream out(p, std::ios::binary);
    if (!out || !out.write(content.data(), static_cast<std::streamsize>(content.size()))) {
      throw Error(ErrorKind::Io, "cannot write " + p.string());
    }
  }
}

Dataset read_dataset(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw Error(ErrorKind::Io, "not a directory: " + dir.string());
  Dataset d;
  d.game = fs::absolute(dir).lexically_normal().filename().string();
  if (d.game.empty()) d.game = fs::absolute(dir).lexically_normal().parent_path().filename().string();
  d.gdl = read_file(dir / "game.gdl");
  d.signature = read_file(dir / "signature.sig");
  for (Target t : kTargets) {
    const fs::path tdir = dir / std::string(to_string(t));
    if (!fs::is_directory(tdir)) continue;
    TaskSplits task;
    for (Split s : kSplits) {
      const fs::path f = tdir / (std::string(to_string(s)) + ".triples");
      task.triples[static_cast<std::size_t>(s)] = read_triples(read_file(f), f.string());
    }
    const fs::path m = tdir / "multiplicity.txt";
    if (fs::exists(m)) {
      read_multiplicity(read_file(m), m.string(), task);
    } else {
      for (std::size_t s = 0; s < 3; ++s) task.multiplicity[s].assign(task.triples[s].size(), 1);
    }
    task.undersized = task.total() < 6;
    d.tasks.emplace(t, std::move(task));
  }
  if (d.tasks.empty()) throw Error(ErrorKind::Io, "no target directories under " + dir.string());
  return d;
}

}  // namespace iggp
