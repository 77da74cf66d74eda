#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "iggp/extract.hpp"

namespace iggp {

enum class Split { Train, Validate, Test };

inline constexpr std::array<Split, 3> kSplits = {Split::Train, Split::Validate, Split::Test};

std::string_view to_string(Split s);

/// Triples of one (game, target) task, each with the number of times it
/// occurred before deduplication.
struct TaskSplits {
  std::array<std::vector<Triple>, 3> triples;
  std::array<std::vector<std::size_t>, 3> multiplicity;
  /// Fewer than six distinct triples: everything was placed in train.
  bool undersized = false;

  const std::vector<Triple>& of(Split s) const { return triples[static_cast<std::size_t>(s)]; }
  std::size_t total() const;

  friend bool operator==(const TaskSplits&, const TaskSplits&) = default;
};

struct Dataset {
  std::string game;
  std::string gdl;
  std::string signature;
  std::map<Target, TaskSplits> tasks;

  friend bool operator==(const Dataset&, const Dataset&) = default;
};

/// Deduplicates triples in first-occurrence order while counting repeats.
class TripleCollector {
 public:
  void add(Triple t);
  const std::vector<Triple>& triples() const noexcept { return triples_; }
  const std::vector<std::size_t>& counts() const noexcept { return counts_; }
  std::vector<Triple> take_triples() { return std::move(triples_); }

 private:
  std::vector<Triple> triples_;
  std::vector<std::size_t> counts_;
  std::unordered_multimap<std::size_t, std::size_t> by_hash_;
};

/// Seeded shuffle then a 4:1:1 partition: validate and test each get
/// floor(n/6), train the rest. Fewer than six triples all go to train.
TaskSplits split_task(std::vector<Triple> triples, std::vector<std::size_t> counts,
                      std::uint64_t seed, Target target);

/// Deduplicates each target's triples and splits them.
std::map<Target, TaskSplits> build_dataset(const std::map<Target, std::vector<Triple>>& triples,
                                           std::uint64_t seed);

/// Full pipeline from traces: extraction (parallel over traces), statics
/// and deduplication, then splitting.
Dataset generate_dataset(const Extractor& extractor, const std::vector<Trace>& traces,
                         std::uint64_t seed, std::size_t jobs = 1);

/// One `.triples` file body; atoms are written sorted, one per line.
std::string write_triples(const std::vector<Triple>& triples);
/// Throws Error(MalformedFile) with `source:line:column`.
std::vector<Triple> read_triples(std::string_view text, std::string_view source = "<input>");

/// Writes `<dir>/game.gdl`, `<dir>/signature.sig` and per target
/// `<dir>/<target>/{train,validate,test}.triples` plus `multiplicity.txt`.
void write_dataset(const Dataset& d, const std::filesystem::path& dir);
/// Reads a directory written by write_dataset. The game name is the
/// directory's name. Throws Error(Io | MalformedFile).
Dataset read_dataset(const std::filesystem::path& dir);

/// File contents a dataset serializes to, keyed by relative path.
std::map<std::string, std::string> dataset_files(const Dataset& d);

}  // namespace iggp
