#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace microcell::cli {

inline constexpr const char* kVersion = "1.0.0";

enum ExitCode : int {
  kSuccess = 0,
  kValidationError = 1,
  kInfeasible = 2,
  kUsage = 64,
};

/// Names accepted as the first argument.
const std::vector<std::string>& commands();

std::string usage();

/// Runs one study: reads the config, applies `overrides`, writes the data
/// files plus summary.txt, summary.json and manifest.txt into `out_dir`.
int run_command(const std::string& command, const std::filesystem::path& config_path,
                const std::filesystem::path& out_dir, const std::vector<std::string>& overrides,
                std::ostream& out, std::ostream& err);

/// Full argument vector without the program name:
///   <command> --config <path> [--out <dir>] [--set key=value ...]
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// 64-bit FNV-1a.
std::uint64_t fnv1a(const std::string& bytes);

}  // namespace microcell::cli
