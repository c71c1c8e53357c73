#pragma once

#include <chrono>
#include <string>
#include <vector>

#include "lmoment/json_io.hpp"

namespace lmoment::cli {

/// Lowercase hex SHA-256 of a file's bytes. Throws ArgumentError if unreadable.
std::string sha256_file(const std::string& path);

/// Collects the manifest while a command runs.
class ManifestBuilder {
 public:
  explicit ManifestBuilder(std::string command);

  void add_input(const std::string& path);
  void set_tolerances(const SolverConfig& config);
  void set_tolerances(nlohmann::json tolerances);

  /// Closes the current stage (if any) and opens `name`.
  void stage(const std::string& name);

  json::RunManifest finish();

 private:
  json::RunManifest manifest_;
  std::string current_;
  std::chrono::steady_clock::time_point started_;
};

std::string join_argv(int argc, const char* const* argv);

}  // namespace lmoment::cli
