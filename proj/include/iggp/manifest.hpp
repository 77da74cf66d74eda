#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace iggp {

/// Lower-case hex SHA-256 of `data`.
std::string sha256_hex(std::string_view data);

/// Digest of a set of files keyed by relative path; covers paths, sizes and
/// contents, independent of the filesystem.
std::string digest_files(const std::map<std::string, std::string>& files);

std::string_view tool_version();

/// Everything needed to rerun a command and check its output.
struct RunManifest {
  std::string command;
  /// Input name (bundle name or path as given) and SHA-256 of its content.
  std::vector<std::pair<std::string, std::string>> inputs;
  std::uint64_t seed = 0;
  /// Output-affecting settings, in the order they are written.
  std::vector<std::pair<std::string, std::string>> config;
  std::string output_digest;

  /// `key: value` lines.
  std::string to_text() const;
};

/// Writes `content` to a temporary file beside `path` and renames it into
/// place. Throws Error(Io).
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

/// Writes every file under a fresh temporary directory beside `dir`, then
/// replaces `dir` with it. Throws Error(Io).
void write_directory_atomic(const std::filesystem::path& dir,
                            const std::map<std::string, std::string>& files);

}  // namespace iggp
