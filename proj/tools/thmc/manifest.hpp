// Run manifests: what was run, with which parameters and inputs, and what it
// wrote. One JSON file per invocation, written even when the run fails.

#pragma once

#include <chrono>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

namespace thmc::cli {

/// Hex SHA-256 of a file's exact bytes. Throws std::runtime_error if the
/// file cannot be read.
std::string sha256_file(const std::filesystem::path& path);
std::string sha256_hex(const std::string& bytes);

class Manifest {
 public:
  explicit Manifest(std::string command);

  void param(const std::string& name, const std::string& value) { params_[name] = value; }
  /// Records the digest of an input file.
  void input(const std::filesystem::path& path);
  void output(const std::filesystem::path& path) { outputs_.push_back(path.string()); }
  void error(const std::string& message) { error_ = message; }

  nlohmann::json to_json(int exit_status) const;
  /// Writes <dir>/<command>.manifest.json and returns its path.
  std::filesystem::path write(const std::filesystem::path& dir, int exit_status) const;

 private:
  std::string command_;
  std::map<std::string, std::string> params_;
  std::vector<nlohmann::json> inputs_;
  std::vector<std::string> outputs_;
  std::string error_;
  std::string started_;
  std::chrono::steady_clock::time_point start_;
};

}  // namespace thmc::cli
