#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <system_error>

#include <fmt/format.h>

#include "ctxlab/cli.hpp"
#include "ctxlab/time_series.hpp"

namespace ctxlab::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_bytes(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_atomic(const fs::path& path, const std::string& content) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw IoError("short write to " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw IoError("cannot rename into " + path.string());
  }
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream out;
  out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return out.str();
}

const char* format_name(TableFormat f) { return f == TableFormat::json ? "json" : "csv"; }

json build_manifest(const std::string& command, const CommonOptions& options, const CommandResult& result) {
  json inputs = json::array();
  for (const auto& path : options.inputs) {
    const std::string bytes = read_bytes(path);
    inputs.push_back({{"path", fs::absolute(path).string()}, {"fnv1a64", fnv1a64_hex(bytes)}, {"bytes", bytes.size()}});
  }
  json outputs = json::array();
  for (const auto& f : result.files) {
    outputs.push_back({{"name", f.name}, {"fnv1a64", fnv1a64_hex(f.content)}, {"bytes", f.content.size()}});
  }
  const json& cfg = result.effective_config;
  return {{"command", command},
          {"version", kArtifactVersion},
          {"master_seed", cfg.contains("seed") ? cfg["seed"] : json(nullptr)},
          {"config", cfg},
          {"config_hash", fnv1a64_hex(cfg.dump())},
          {"format", format_name(options.format)},
          {"alpha", options.alpha ? json(*options.alpha) : json(nullptr)},
          {"inputs", inputs},
          {"outputs", outputs},
          {"exit_code", result.exit_code},
          {"created", utc_timestamp()}};
}

}  // namespace

std::string fnv1a64_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return fmt::format("{:016x}", h);
}

fs::path default_output_dir(const std::string& command) {
  if (const char* root = std::getenv(kOutputRootEnv); root && *root) return fs::path(root) / command;
  return fs::path("ctxlab-out") / command;
}

json load_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(fmt::format("{}: invalid JSON ({})", path.string(), e.what()));
  }
}

int run_command(const std::string& command, const json& config, const CommonOptions& options, const fs::path& out_dir,
                std::ostream& out, std::ostream& err) {
  try {
    const CommandResult result = execute(command, config, options);
    const json manifest = build_manifest(command, options, result);
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create " + out_dir.string() + ": " + ec.message());
    for (const auto& f : result.files) write_atomic(out_dir / f.name, f.content);
    write_atomic(out_dir / "manifest.json", manifest.dump(2) + "\n");
    out << result.summary << "\n";
    out << "outputs written to " << out_dir.string() << "\n";
    return result.exit_code;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const SeriesParseError& e) {
    err << "input error: " << e.what() << "\n";
    return kExitIoError;
  } catch (const IoError& e) {
    err << "io error: " << e.what() << "\n";
    return kExitIoError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternalError;
  }
}

int replay(const fs::path& manifest_path, const fs::path& out_dir, std::ostream& out, std::ostream& err) {
  json manifest;
  try {
    manifest = json::parse(read_bytes(manifest_path));
  } catch (const std::exception& e) {
    err << "cannot read manifest " << manifest_path.string() << ": " << e.what() << "\n";
    return kExitIoError;
  }
  try {
    const std::string command = manifest.at("command").get<std::string>();
    const std::string version = manifest.at("version").get<std::string>();
    if (version != kArtifactVersion) {
      err << "warning: manifest version " << version << " differs from " << kArtifactVersion << "\n";
    }
    CommonOptions options;
    options.format = manifest.at("format").get<std::string>() == "json" ? TableFormat::json : TableFormat::csv;
    if (!manifest.at("alpha").is_null()) options.alpha = manifest["alpha"].get<double>();
    for (const auto& in : manifest.at("inputs")) {
      const std::string path = in.at("path").get<std::string>();
      if (fnv1a64_hex(read_bytes(path)) != in.at("fnv1a64").get<std::string>()) {
        err << "input " << path << " changed since the original run\n";
        return kExitReplayMismatch;
      }
      options.inputs.push_back(path);
    }

    const int code = run_command(command, manifest.at("config"), options, out_dir, out, err);
    if (code >= kExitConfigError) return code;

    int mismatches = 0;
    for (const auto& o : manifest.at("outputs")) {
      const std::string name = o.at("name").get<std::string>();
      const std::string expected = o.at("fnv1a64").get<std::string>();
      std::string actual = "<missing>";
      if (fs::exists(out_dir / name)) actual = fnv1a64_hex(read_bytes(out_dir / name));
      if (actual != expected) {
        err << "mismatch: " << name << " expected " << expected << " got " << actual << "\n";
        ++mismatches;
      }
    }
    if (mismatches > 0) return kExitReplayMismatch;
    out << "replay ok: " << manifest.at("outputs").size() << " output(s) byte-identical\n";
    return kExitOk;
  } catch (const IoError& e) {
    err << "io error: " << e.what() << "\n";
    return kExitIoError;
  } catch (const json::exception& e) {
    err << "malformed manifest: " << e.what() << "\n";
    return kExitIoError;
  }
}

}  // namespace ctxlab::cli
