#include "iggp/manifest.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <memory>
#include <random>

#include "iggp/error.hpp"

#ifndef IGGP_VERSION
#define IGGP_VERSION "0.0.0"
#endif

namespace iggp {

namespace fs = std::filesystem;

std::string sha256_hex(std::string_view data) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), data.data(), data.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), digest, &len) != 1) {
    throw Error(ErrorKind::Io, "SHA-256 computation failed");
  }
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 15];
  }
  return out;
}

std::string digest_files(const std::map<std::string, std::string>& files) {
  std::string listing;
  for (const auto& [path, content] : files) {
    listing += path;
    listing += '\0';
    listing += std::to_string(content.size());
    listing += '\0';
    listing += sha256_hex(content);
    listing += '\n';
  }
  return sha256_hex(listing);
}

std::string_view tool_version() { return IGGP_VERSION; }

std::string RunManifest::to_text() const {
  std::string out;
  out += "tool: iggp " + std::string(tool_version()) + "\n";
  out += "command: " + command + "\n";
  for (const auto& [name, digest] : inputs) out += "input: " + name + " sha256:" + digest + "\n";
  out += "seed: " + std::to_string(seed) + "\n";
  for (const auto& [key, value] : config) out += key + ": " + value + "\n";
  out += "output-digest: sha256:" + output_digest + "\n";
  return out;
}

namespace {

std::string temp_suffix() {
  std::random_device rd;
  std::uniform_int_distribution<std::uint64_t> dist;
  static const char* hex = "0123456789abcdef";
  std::uint64_t x = dist(rd);
  std::string s = ".tmp-";
  for (int i = 0; i < 12; ++i, x >>= 4) s += hex[x & 15];
  return s;
}

void write_plain(const fs::path& p, std::string_view content) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out || !out.write(content.data(), static_cast<std::streamsize>(content.size())) ||
      !out.flush()) {
    throw Error(ErrorKind::Io, "cannot write " + p.string());
  }
}

}  // namespace

void write_file_atomic(const fs::path& path, std::string_view content) {
  std::error_code ec;
  if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
  const fs::path tmp = path.string() + temp_suffix();
  write_plain(tmp, content);
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error(ErrorKind::Io, "cannot move output into place at " + path.string());
  }
}

void write_directory_atomic(const fs::path& dir, const std::map<std::string, std::string>& files) {
  std::error_code ec;
  const fs::path target = dir.has_filename() ? dir : dir.parent_path();
  if (target.has_parent_path()) fs::create_directories(target.parent_path(), ec);
  const fs::path tmp = target.string() + temp_suffix();
  try {
    for (const auto& [rel, content] : files) {
      const fs::path p = tmp / rel;
      fs::create_directories(p.parent_path(), ec);
      if (ec) throw Error(ErrorKind::Io, "cannot create " + p.parent_path().string());
      write_plain(p, content);
    }
    if (fs::exists(target)) {
      const fs::path old = target.string() + temp_suffix();
      fs::rename(target, old, ec);
      if (ec) throw Error(ErrorKind::Io, "cannot replace " + target.string());
      fs::rename(tmp, target, ec);
      if (ec) {
        fs::rename(old, target, ec);
        throw Error(ErrorKind::Io, "cannot move output into place at " + target.string());
      }
      fs::remove_all(old, ec);
    } else {
      fs::rename(tmp, target, ec);
      if (ec) throw Error(ErrorKind::Io, "cannot move output into place at " + target.string());
    }
  } catch (...) {
    fs::remove_all(tmp, ec);
    throw;
  }
}

}  // namespace iggp
