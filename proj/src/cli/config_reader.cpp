#include "config_reader.hpp"

#include <algorithm>

#include <fmt/format.h>

namespace ctxlab::cli {

using nlohmann::json;

namespace {

const json& empty_object() {
  static const json obj = json::object();
  return obj;
}

}  // namespace

ConfigReader::ConfigReader(const json& object, std::string path)
    : object_(object.is_null() ? empty_object() : object), path_(std::move(path)) {
  if (!object_.is_object()) throw ConfigError(fmt::format("{}: expected a JSON object", path_));
}

bool ConfigReader::has(const std::string& key) const { return object_.contains(key); }

const json& ConfigReader::raw(const std::string& key) {
  seen_.insert(key);
  auto it = object_.find(key);
  if (it == object_.end()) throw ConfigError(fmt::format("{}: required field is missing", where(key)));
  return *it;
}

double ConfigReader::number(const std::string& key, std::optional<double> fallback, double lo, double hi) {
  seen_.insert(key);
  auto it = object_.find(key);
  if (it == object_.end()) {
    if (!fallback) throw ConfigError(fmt::format("{}: required field is missing", where(key)));
    return *fallback;
  }
  if (!it->is_number()) throw ConfigError(fmt::format("{}: expected a number", where(key)));
  const double v = it->get<double>();
  if (!(v >= lo && v <= hi)) throw ConfigError(fmt::format("{}: {} is outside [{}, {}]", where(key), v, lo, hi));
  return v;
}

std::uint64_t ConfigReader::count(const std::string& key, std::optional<std::uint64_t> fallback, std::uint64_t lo) {
  seen_.insert(key);
  auto it = object_.find(key);
  if (it == object_.end()) {
    if (!fallback) throw ConfigError(fmt::format("{}: required field is missing", where(key)));
    return *fallback;
  }
  if (!it->is_number_integer() || (it->is_number_integer() && !it->is_number_unsigned() && it->get<long long>() < 0)) {
    throw ConfigError(fmt::format("{}: expected a non-negative integer", where(key)));
  }
  const auto v = it->get<std::uint64_t>();
  if (v < lo) throw ConfigError(fmt::format("{}: must be at least {}, got {}", where(key), lo, v));
  return v;
}

std::uint64_t ConfigReader::seed(std::optional<std::uint64_t> override_value) {
  const std::uint64_t from_config = count("seed", std::uint64_t{0}, 0);
  return override_value ? *override_value : from_config;
}

bool ConfigReader::flag(const std::string& key, bool fallback) {
  seen_.insert(key);
  auto it = object_.find(key);
  if (it == object_.end()) return fallback;
  if (!it->is_boolean()) throw ConfigError(fmt::format("{}: expected true or false", where(key)));
  return it->get<bool>();
}

std::string ConfigReader::choice(const std::string& key, std::initializer_list<const char*> options,
                                 std::optional<std::string> fallback) {
  seen_.insert(key);
  auto it = object_.find(key);
  if (it == object_.end()) {
    if (!fallback) throw ConfigError(fmt::format("{}: required field is missing", where(key)));
    return *fallback;
  }
  if (it->is_string()) {
    const auto& s = it->get_ref<const std::string&>();
    for (const char* o : options) {
      if (s == o) return s;
    }
  }
  std::string allowed;
  for (const char* o : options) allowed += (allowed.empty() ? "" : ", ") + std::string(o);
  throw ConfigError(fmt::format("{}: expected one of {}, got {}", where(key), allowed, it->dump()));
}

Direction ConfigReader::direction(const std::string& key, std::optional<double> fallback_degrees) {
  seen_.insert(key);
  auto it = object_.find(key);
  if (it == object_.end()) {
    if (!fallback_degrees) throw ConfigError(fmt::format("{}: required field is missing", where(key)));
    return Direction::in_plane_degrees(*fallback_degrees);
  }
  if (it->is_number()) return Direction::in_plane_degrees(it->get<double>());
  if (it->is_array() && it->size() == 3 && std::all_of(it->begin(), it->end(), [](const json& v) { return v.is_number(); })) {
    try {
      return Direction::from_components((*it)[0].get<double>(), (*it)[1].get<double>(), (*it)[2].get<double>());
    } catch (const std::domain_error& e) {
      throw ConfigError(fmt::format("{}: {}", where(key), e.what()));
    }
  }
  throw ConfigError(fmt::format("{}: expected an angle in degrees or a 3-vector [x, y, z]", where(key)));
}

ConfigReader ConfigReader::child(const std::string& key) {
  seen_.insert(key);
  auto it = object_.find(key);
  return ConfigReader(it == object_.end() ? empty_object() : *it, where(key));
}

void ConfigReader::finish() const {
  for (const auto& [key, value] : object_.items()) {
    if (!seen_.count(key)) throw ConfigError(fmt::format("{}: unknown field", where(key)));
  }
}

json direction_json(const Direction& d) { return json::array({d.x(), d.y(), d.z()}); }

}  // namespace ctxlab::cli
