// Macroscopic coin experiments: flipping devices D1-D3 (E1-E3), the urn
// drawn with or without replacement (E4), the mixed and pure boxes (E5, E6)
// and the "hole in the box" coin-removal perturbation.

#ifndef CTXLAB_COIN_LAB_HPP
#define CTXLAB_COIN_LAB_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include "ctxlab/randkit.hpp"
#include "ctxlab/time_series.hpp"

namespace ctxlab::coins {

enum class DeviceKind { D1_flip, D2_alternating, D3_bernoulli };

std::string to_string(DeviceKind kind);

/// A flipping device. D1 turns the inserted face over. D2 first rotates the
/// coin by 180 or 360 degrees, alternating between the two, then acts like
/// D1; its first rotation mode is random. D3 ignores the inserted face.
class FlipDevice {
 public:
  explicit FlipDevice(DeviceKind kind) : kind_(kind) {}

  CoinFace flip(CoinFace face_up, RngStream& rng);
  DeviceKind kind() const { return kind_; }

 private:
  DeviceKind kind_;
  std::optional<bool> half_turn_next_;  // D2 memory bit, unset until first flip
};

/// n flips of one coin, inserted with `initial_face` up every time.
TimeSeries run_device(DeviceKind kind, CoinFace initial_face, std::size_t n, RngStream& rng);

struct UrnState {
  std::uint64_t n_blue = 0;
  std::uint64_t n_red = 0;

  std::uint64_t total() const { return n_blue + n_red; }
  double blue_fraction() const { return static_cast<double>(n_blue) / static_cast<double>(total()); }
  bool operator==(const UrnState&) const = default;
};

struct UrnDraw {
  TimeSeries series;
  UrnState urn;  // after the draws; equal to the input when drawing with replacement
};

UrnDraw draw_urn(UrnState urn, std::size_t n, bool with_replacement, RngStream& rng);

enum class BoxKind { mixed_E5, pure_E6 };

std::string to_string(BoxKind kind);

/// E5: an arm picks a one-coloured coin uniformly (with replacement) and D3
/// reveals its colour, so P(B) = n_blue / total. E6: every coin is two-sided
/// and D3 gives P(B) = 1/2 whatever the urn holds.
TimeSeries run_box_experiment(BoxKind box, UrnState urn, std::size_t n, RngStream& rng);

/// Removes `count` coins uniformly at random without replacement.
UrnState remove_coins(UrnState urn, std::uint64_t count, RngStream& rng);

}  // namespace ctxlab::coins

#endif  // CTXLAB_COIN_LAB_HPP
