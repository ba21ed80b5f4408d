#include "ctxlab/time_series.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <optional>

#include <fmt/format.h>

namespace ctxlab {

using nlohmann::json;

std::size_t TimeSeries::count(CoinFace face) const {
  return static_cast<std::size_t>(std::count(outcomes.begin(), outcomes.end(), face));
}

std::string TimeSeries::str() const {
  std::string out;
  out.reserve(outcomes.size());
  for (CoinFace f : outcomes) out.push_back(to_char(f));
  return out;
}

TimeSeries TimeSeries::from_string(std::string_view faces, SeriesMeta meta) {
  TimeSeries ts;
  ts.meta = std::move(meta);
  ts.outcomes.reserve(faces.size());
  for (char c : faces) {
    if (c == 'B') {
      ts.outcomes.push_back(CoinFace::B);
    } else if (c == 'R') {
      ts.outcomes.push_back(CoinFace::R);
    } else {
      throw std::invalid_argument(fmt::format("TimeSeries::from_string: bad face '{}'", c));
    }
  }
  return ts;
}

SeriesParseError::SeriesParseError(std::string source, std::size_t line, const std::string& what)
    : std::runtime_error(fmt::format("{}:{}: {}", source, line, what)),
      source_(std::move(source)),
      line_(line) {}

std::string to_jsonl(const TimeSeries& series, const json& config) {
  json header = {{"type", "header"},
                 {"master_seed", series.meta.master_seed},
                 {"stream_id", series.meta.stream_id},
                 {"stream_offset", series.meta.stream_offset},
                 {"generator_id", series.meta.generator_id},
                 {"length", series.size()},
                 {"config", config}};
  std::string out = header.dump();
  out.push_back('\n');
  // Records are formatted directly; json::dump per line is needlessly slow
  // for million-trial series. generator_id is escaped once.
  const std::string gid = json(series.meta.generator_id).dump();
  fmt::memory_buffer buf;
  for (std::size_t i = 0; i < series.size(); ++i) {
    fmt::format_to(std::back_inserter(buf), "{{\"index\":{},\"outcome\":\"{}\",\"generator_id\":{}}}\n", i,
                   to_char(series.outcomes[i]), gid);
  }
  out.append(buf.data(), buf.size());
  return out;
}

namespace {

CoinFace parse_outcome(const json& v, const std::string& source, std::size_t line) {
  if (v.is_string()) {
    const auto& s = v.get_ref<const std::string&>();
    if (s == "B") return CoinFace::B;
    if (s == "R") return CoinFace::R;
  } else if (v.is_number_integer()) {
    const auto i = v.get<long long>();
    if (i == 1) return CoinFace::B;
    if (i == -1) return CoinFace::R;
  }
  throw SeriesParseError(source, line, "outcome must be \"B\", \"R\", 1 or -1, got " + v.dump());
}

template <typename T>
T required(const json& obj, const char* key, const std::string& source, std::size_t line) {
  auto it = obj.find(key);
  if (it == obj.end()) throw SeriesParseError(source, line, fmt::format("missing field \"{}\"", key));
  try {
    return it->get<T>();
  } catch (const json::exception&) {
    throw SeriesParseError(source, line, fmt::format("field \"{}\" has the wrong type", key));
  }
}

}  // namespace

std::vector<TimeSeries> read_jsonl(std::istream& in, std::string source) {
  std::vector<TimeSeries> result;
  std::optional<std::size_t> expected_length;
  std::size_t header_line = 0;

  auto close_current = [&](std::size_t line) {
    if (!expected_length) return;
    const auto got = result.back().size();
    if (got != *expected_length) {
      throw SeriesParseError(source, line,
                             fmt::format("series declared at line {} has {} records, header says {}",
                                         header_line, got, *expected_length));
    }
  };

  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (std::all_of(text.begin(), text.end(), [](unsigned char c) { return std::isspace(c); })) continue;
    json rec;
    try {
      rec = json::parse(text);
    } catch (const json::parse_error& e) {
      throw SeriesParseError(source, line, std::string("invalid JSON: ") + e.what());
    }
    if (!rec.is_object()) throw SeriesParseError(source, line, "record is not a JSON object");

    if (rec.value("type", "") == "header") {
      close_current(line);
      TimeSeries ts;
      ts.meta.master_seed = required<std::uint64_t>(rec, "master_seed", source, line);
      ts.meta.stream_id = required<std::uint64_t>(rec, "stream_id", source, line);
      ts.meta.stream_offset = rec.value("stream_offset", std::uint64_t{0});
      ts.meta.generator_id = required<std::string>(rec, "generator_id", source, line);
      expected_length = required<std::size_t>(rec, "length", source, line);
      ts.outcomes.reserve(std::min<std::size_t>(*expected_length, 1u << 20));
      result.push_back(std::move(ts));
      header_line = line;
      continue;
    }

    if (!expected_length) throw SeriesParseError(source, line, "record before any header");
    auto& ts = result.back();
    const auto index = required<std::size_t>(rec, "index", source, line);
    if (index != ts.size()) {
      throw SeriesParseError(source, line, fmt::format("expected index {}, got {}", ts.size(), index));
    }
    if (ts.size() >= *expected_length) {
      throw SeriesParseError(source, line, "more records than the header's length");
    }
    auto it = rec.find("outcome");
    if (it == rec.end()) throw SeriesParseError(source, line, "missing field \"outcome\"");
    ts.outcomes.push_back(parse_outcome(*it, source, line));
  }
  close_current(line + 1);
  if (result.empty()) throw SeriesParseError(source, line + 1, "no series header found");
  return result;
}

std::vector<TimeSeries> read_jsonl_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SeriesParseError(path, 0, "cannot open file");
  return read_jsonl(in, path);
}

}  // namespace ctxlab
