// Command layer behind the ctxlab executable.
//
// Each command turns a JSON config into a set of in-memory output files.
// run_command() then commits them to the output directory (temp file plus
// rename, so a failing command leaves no partial outputs) and writes
// manifest.json, from which `ctxlab replay` regenerates byte-identical files.
//
// Exit codes:
//   0  success (purity: verdict pure)
//   1  purity verdict mixed
//   2  purity verdict inconclusive
//   3  invalid config or arguments
//   4  input parse error or output write failure
//   5  replay produced different bytes
//   6  internal error

#ifndef CTXLAB_CLI_HPP
#define CTXLAB_CLI_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace ctxlab::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitMixed = 1,
  kExitInconclusive = 2,
  kExitConfigError = 3,
  kExitIoError = 4,
  kExitReplayMismatch = 5,
  kExitInternalError = 6,
};

inline constexpr const char* kArtifactVersion = "0.1.0";
inline constexpr const char* kOutputRootEnv = "CTXLAB_OUTPUT_ROOT";

/// Schema violation; the message names the offending config path.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class TableFormat { csv, json };

struct CommonOptions {
  std::optional<std::uint64_t> seed;  // overrides config "seed"
  std::optional<double> alpha;        // overrides config "alpha" (purity)
  TableFormat format = TableFormat::csv;
  unsigned workers = 0;  // 0: hardware concurrency; never affects output bytes
  std::vector<std::string> inputs;  // purity: TimeSeries JSONL files
};

struct OutputFile {
  std::string name;
  std::string content;
};

struct CommandResult {
  int exit_code = kExitOk;
  std::vector<OutputFile> files;
  nlohmann::json effective_config;  // config with defaults and seed filled in
  std::string summary;              // one-line human summary for stdout
};

CommandResult cmd_spce(const nlohmann::json& config, const CommonOptions& options);
CommandResult cmd_coins(const nlohmann::json& config, const CommonOptions& options);
CommandResult cmd_purity(const nlohmann::json& config, const CommonOptions& options);
CommandResult cmd_bertrand(const nlohmann::json& config, const CommonOptions& options);
CommandResult cmd_qkd(const nlohmann::json& config, const CommonOptions& options);

/// Dispatches by name ("spce", "coins", "purity", "bertrand", "qkd").
CommandResult execute(const std::string& command, const nlohmann::json& config, const CommonOptions& options);

/// Executes, writes outputs and manifest.json to out_dir, reports on the
/// streams and returns the exit code. Never throws.
int run_command(const std::string& command, const nlohmann::json& config, const CommonOptions& options,
                const std::filesystem::path& out_dir, std::ostream& out, std::ostream& err);

/// Re-runs the manifest's command into out_dir and compares every output's
/// digest with the manifest. Returns kExitOk when all are byte-identical.
int replay(const std::filesystem::path& manifest_path, const std::filesystem::path& out_dir, std::ostream& out,
           std::ostream& err);

/// Default output directory: $CTXLAB_OUTPUT_ROOT/<command>, else ./ctxlab-out/<command>.
std::filesystem::path default_output_dir(const std::string& command);

/// 64-bit FNV-1a, rendered as 16 hex digits.
std::string fnv1a64_hex(const std::string& bytes);

/// Reads and parses a JSON config file; throws ConfigError with a diagnostic.
nlohmann::json load_config(const std::filesystem::path& path);

}  // namespace ctxlab::cli

#endif  // CTXLAB_CLI_HPP
