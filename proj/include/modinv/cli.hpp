#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace modinv::cli {

inline constexpr const char* kVersion = "1.0.0";
inline constexpr const char* kCacheEnvVar = "MODINV_CACHE_DIR";

enum class Command { Info, Fusion, Invariants, Classify, ChiralList, Full2DList, Verify };
enum class OutputFormat { Table, Json, Csv };

struct RunConfig {
  Command command = Command::Info;
  int level = 0;  // level, or maximum level for the list commands
  OutputFormat format = OutputFormat::Table;
  double tolerance = 1e-9;
  std::uint64_t budget = 50'000'000;
  std::optional<std::filesystem::path> cache_dir;
  std::optional<std::filesystem::path> input;  // matrix file for verify
  bool with_matrix = false;

  /// Throws DomainError.
  void validate() const;
};

/// Stable hex digest of (level, tolerance, budget, version).
std::string cache_key(const RunConfig& config);
std::string cache_key(int level, double tolerance, std::uint64_t budget);

/// Exit status 0 on success, 1 on domain/validation failure, 2 when the
/// enumeration budget is exceeded. Errors go to `err` as a line
/// "error code=<CODE>: <message>".
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv (CLI11) and runs. `env_cache_dir` is the value of
/// MODINV_CACHE_DIR, if any.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
               const std::optional<std::string>& env_cache_dir = std::nullopt);

}  // namespace modinv::cli
