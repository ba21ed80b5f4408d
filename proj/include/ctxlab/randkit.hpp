// Deterministic random streams, unit directions, spherical caps and the
// small distribution formulas shared by every simulator in the project.
//
// Streams are counter-based (Philox4x32-10) and keyed by
// (master_seed, stream_id), so a Monte Carlo loop that gives trial i the
// stream substream(seed, i) produces the same numbers no matter how the
// trials are split across threads.

#ifndef CTXLAB_RANDKIT_HPP
#define CTXLAB_RANDKIT_HPP

#include <array>
#include <cstdint>
#include <limits>

namespace ctxlab {

namespace philox {

using Counter = std::array<std::uint32_t, 4>;
using Key = std::array<std::uint32_t, 2>;

/// Philox4x32 with 10 rounds (Salmon et al., Random123).
Counter philox4x32_10(Counter ctr, Key key);

}  // namespace philox

class RngStream {
 public:
  using result_type = std::uint64_t;

  RngStream(std::uint64_t master_seed, std::uint64_t stream_id);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() { return next_u64(); }
  std::uint64_t next_u64();

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform on (0, 1).
  double uniform_open();
  bool bernoulli(double p);
  /// Uniform integer in [0, n); n must be positive.
  std::uint64_t below(std::uint64_t n);

  std::uint64_t master_seed() const { return master_seed_; }
  std::uint64_t stream_id() const { return stream_id_; }
  /// Number of 64-bit words consumed so far.
  std::uint64_t position() const { return position_; }

 private:
  std::uint64_t master_seed_;
  std::uint64_t stream_id_;
  std::uint64_t block_ = 0;
  std::uint64_t position_ = 0;
  std::array<std::uint64_t, 2> buffer_{};
  bool has_buffered_ = false;
};

RngStream substream(std::uint64_t master_seed, std::uint64_t stream_id);

/// Mixes a tag into a seed (splitmix64 finalizer). Used to give independent
/// experiments inside one command their own master seeds.
std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t tag);

/// Unit vector on S^2. Construction normalizes; |v| = 1 within 1e-12.
class Direction {
 public:
  static Direction from_components(double x, double y, double z);
  /// polar angle from +z, azimuth from +x (radians).
  static Direction from_spherical(double polar, double azimuth);
  /// Direction in the x-y plane at the given angle from +x, in degrees.
  static Direction in_plane_degrees(double degrees);

  double x() const { return x_; }
  double y() const { return y_; }
  double z() const { return z_; }

  double dot(const Direction& other) const { return x_ * other.x_ + y_ * other.y_ + z_ * other.z_; }
  Direction operator-() const { return Direction(-x_, -y_, -z_); }
  bool operator==(const Direction&) const = default;

  /// Rodrigues rotation of this vector about `axis` by `angle` radians.
  Direction rotated(const Direction& axis, double angle) const;

  /// Two unit vectors completing this one to a right-handed orthonormal frame.
  std::array<Direction, 2> orthonormal_complement() const;

 private:
  Direction(double x, double y, double z) : x_(x), y_(y), z_(z) {}

  double x_;
  double y_;
  double z_;
};

/// The set { a in S^2 : |1 - a.axis| <= epsilon }, epsilon in [0, 2].
class CapSpec {
 public:
  CapSpec(Direction axis, double epsilon);

  const Direction& axis() const { return axis_; }
  double epsilon() const { return epsilon_; }
  bool contains(const Direction& a) const;

 private:
  Direction axis_;
  double epsilon_;
};

/// Draws a direction uniformly from the cap: cos(theta) uniform on
/// [1 - epsilon, 1], azimuth uniform. epsilon = 0 returns the axis.
Direction sample_cap(const CapSpec& cap, RngStream& rng);

/// Uniform direction on the whole sphere.
Direction sample_sphere(RngStream& rng);

/// Angle in [0, pi]; the dot product is clamped to [-1, 1] first.
double angle_between(const Direction& a, const Direction& b);

/// Probability that draw k+1 from an urn that started with n_per_color blue
/// and n_per_color red coins is blue, given m blue among the first k draws:
/// (N - m) / (2N - k).
double hypergeometric_step_prob(std::uint64_t k, std::uint64_t m, std::uint64_t n_per_color);

}  // namespace ctxlab

#endif  // CTXLAB_RANDKIT_HPP
