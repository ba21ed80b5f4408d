#ifndef CTXLAB_CLI_CONFIG_READER_HPP
#define CTXLAB_CLI_CONFIG_READER_HPP

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <set>
#include <string>

#include "json.hpp"

#include "ctxlab/cli.hpp"
#include "ctxlab/randkit.hpp"

namespace ctxlab::cli {

/// Typed, range-checked access to one JSON object of a config. Every
/// failure throws ConfigError naming the full key path; finish() rejects
/// keys that were never read.
class ConfigReader {
 public:
  ConfigReader(const nlohmann::json& object, std::string path);

  bool has(const std::string& key) const;
  const nlohmann::json& raw(const std::string& key);

  double number(const std::string& key, std::optional<double> fallback, double lo, double hi);
  std::uint64_t count(const std::string& key, std::optional<std::uint64_t> fallback, std::uint64_t lo = 1);
  std::uint64_t seed(std::optional<std::uint64_t> override_value);
  bool flag(const std::string& key, bool fallback);
  std::string choice(const std::string& key, std::initializer_list<const char*> options,
                     std::optional<std::string> fallback);
  /// A number is an in-plane angle in degrees; [x, y, z] is normalized.
  Direction direction(const std::string& key, std::optional<double> fallback_degrees = std::nullopt);
  ConfigReader child(const std::string& key);

  std::string where(const std::string& key) const { return path_ + "." + key; }
  void finish() const;

 private:
  const nlohmann::json& object_;
  std::string path_;
  std::set<std::string> seen_;
};

nlohmann::json direction_json(const Direction& d);

}  // namespace ctxlab::cli

#endif  // CTXLAB_CLI_CONFIG_READER_HPP
