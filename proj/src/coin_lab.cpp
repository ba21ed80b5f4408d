#include "ctxlab/coin_lab.hpp"

#include <stdexcept>

#include <fmt/format.h>

namespace ctxlab::coins {

namespace {

SeriesMeta meta_for(const RngStream& rng, std::string generator_id) {
  return SeriesMeta{rng.master_seed(), rng.stream_id(), rng.position(), std::move(generator_id)};
}

void require_trials(std::size_t n, const char* op) {
  if (n == 0) throw std::domain_error(fmt::format("{}: trial count must be at least 1", op));
}

}  // namespace

std::string to_string(DeviceKind kind) {
  switch (kind) {
    case DeviceKind::D1_flip: return "D1";
    case DeviceKind::D2_alternating: return "D2";
    case DeviceKind::D3_bernoulli: return "D3";
  }
  return "?";
}

std::string to_string(BoxKind kind) { return kind == BoxKind::mixed_E5 ? "E5" : "E6"; }

CoinFace FlipDevice::flip(CoinFace face_up, RngStream& rng) {
  switch (kind_) {
    case DeviceKind::D1_flip:
      return complement(face_up);
    case DeviceKind::D2_alternating: {
      if (!half_turn_next_) half_turn_next_ = rng.bernoulli(0.5);
      const CoinFace rotated = *half_turn_next_ ? complement(face_up) : face_up;
      half_turn_next_ = !*half_turn_next_;
      return complement(rotated);
    }
    case DeviceKind::D3_bernoulli:
      return rng.bernoulli(0.5) ? CoinFace::B : CoinFace::R;
  }
  throw std::logic_error("FlipDevice: unknown kind");
}

TimeSeries run_device(DeviceKind kind, CoinFace initial_face, std::size_t n, RngStream& rng) {
  require_trials(n, "run_device");
  TimeSeries ts;
  ts.meta = meta_for(rng, fmt::format("{}:{}", to_string(kind), to_char(initial_face)));
  ts.outcomes.reserve(n);
  FlipDevice device(kind);
  for (std::size_t i = 0; i < n; ++i) ts.outcomes.push_back(device.flip(initial_face, rng));
  return ts;
}

UrnDraw draw_urn(UrnState urn, std::size_t n, bool with_replacement, RngStream& rng) {
  require_trials(n, "draw_urn");
  if (urn.total() == 0) throw std::domain_error("draw_urn: urn is empty");
  if (!with_replacement && n > urn.total()) {
    throw std::domain_error(
        fmt::format("draw_urn: cannot draw {} coins without replacement from {}", n, urn.total()));
  }
  UrnDraw out;
  out.series.meta = meta_for(rng, fmt::format("E4:{}/{}:{}", urn.n_blue, urn.n_red,
                                              with_replacement ? "with-replacement" : "without-replacement"));
  out.series.outcomes.reserve(n);
  UrnState state = urn;
  for (std::size_t i = 0; i < n; ++i) {
    const bool blue = rng.below(state.total()) < state.n_blue;
    out.series.outcomes.push_back(blue ? CoinFace::B : CoinFace::R);
    if (!with_replacement) --(blue ? state.n_blue : state.n_red);
  }
  out.urn = with_replacement ? urn : state;
  return out;
}

TimeSeries run_box_experiment(BoxKind box, UrnState urn, std::size_t n, RngStream& rng) {
  require_trials(n, "run_box_experiment");
  if (urn.total() == 0) throw std::domain_error("run_box_experiment: urn is empty");
  TimeSeries ts;
  ts.meta = meta_for(rng, fmt::format("{}:{}/{}", to_string(box), urn.n_blue, urn.n_red));
  ts.outcomes.reserve(n);
  FlipDevice d3(DeviceKind::D3_bernoulli);
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t picked = rng.below(urn.total());
    if (box == BoxKind::mixed_E5) {
      // Both faces of a one-coloured coin show its colour.
      ts.outcomes.push_back(picked < urn.n_blue ? CoinFace::B : CoinFace::R);
    } else {
      ts.outcomes.push_back(d3.flip(CoinFace::B, rng));
    }
  }
  return ts;
}

UrnState remove_coins(UrnState urn, std::uint64_t count, RngStream& rng) {
  if (count > urn.total()) {
    throw std::domain_error(
        fmt::format("remove_coins: cannot remove {} coins from an urn of {}", count, urn.total()));
  }
  for (std::uint64_t i = 0; i < count; ++i) {
    const bool blue = rng.below(urn.total()) < urn.n_blue;
    --(blue ? urn.n_blue : urn.n_red);
  }
  return urn;
}

}  // namespace ctxlab::coins
