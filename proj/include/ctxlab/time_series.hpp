// Binary outcome series and their JSONL encoding.
//
// File layout: a header line
//   {"type":"header","master_seed":S,"stream_id":I,"stream_offset":K,
//    "generator_id":G,"length":N,"config":{...}}
// followed by N records {"index":i,"outcome":"B"|"R","generator_id":G}.
// A file may hold several series back to back; each header starts one.
// Readers also accept +1 / -1 for "outcome".

#ifndef CTXLAB_TIME_SERIES_HPP
#define CTXLAB_TIME_SERIES_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace ctxlab {

enum class CoinFace : std::uint8_t { B, R };

constexpr CoinFace complement(CoinFace f) { return f == CoinFace::B ? CoinFace::R : CoinFace::B; }
/// B -> +1, R -> -1.
constexpr int to_spin(CoinFace f) { return f == CoinFace::B ? 1 : -1; }
constexpr CoinFace from_spin(int s) { return s > 0 ? CoinFace::B : CoinFace::R; }
constexpr char to_char(CoinFace f) { return f == CoinFace::B ? 'B' : 'R'; }

struct SeriesMeta {
  std::uint64_t master_seed = 0;
  std::uint64_t stream_id = 0;
  std::uint64_t stream_offset = 0;  // words consumed from the stream before the first trial
  std::string generator_id;
};

struct TimeSeries {
  std::vector<CoinFace> outcomes;
  SeriesMeta meta;

  std::size_t size() const { return outcomes.size(); }
  bool empty() const { return outcomes.empty(); }
  std::size_t count(CoinFace face) const;
  /// "BRRB..." rendering.
  std::string str() const;

  static TimeSeries from_string(std::string_view faces, SeriesMeta meta = {});
};

class SeriesParseError : public std::runtime_error {
 public:
  SeriesParseError(std::string source, std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }
  const std::string& source() const { return source_; }

 private:
  std::string source_;
  std::size_t line_;
};

std::string to_jsonl(const TimeSeries& series, const nlohmann::json& config = nlohmann::json::object());

/// Parses every series in the stream. Throws SeriesParseError on malformed
/// JSON, out-of-order indices, unknown outcomes or a series whose record
/// count differs from its header's length (truncation).
std::vector<TimeSeries> read_jsonl(std::istream& in, std::string source = "<stream>");
std::vector<TimeSeries> read_jsonl_file(const std::string& path);

}  // namespace ctxlab

#endif  // CTXLAB_TIME_SERIES_HPP
