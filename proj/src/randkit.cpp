#include "ctxlab/randkit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ctxlab {

namespace {

constexpr std::uint32_t lo32(std::uint64_t v) { return static_cast<std::uint32_t>(v); }
constexpr std::uint32_t hi32(std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); }

}  // namespace

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t stream_id)
    : master_seed_(master_seed), stream_id_(stream_id) {}

std::uint64_t RngStream::next_u64() {
  ++position_;
  if (has_buffered_) {
    has_buffered_ = false;
    return buffer_[1];
  }
  const philox::Counter ctr{lo32(block_), hi32(block_), lo32(stream_id_), hi32(stream_id_)};
  const philox::Key key{lo32(master_seed_), hi32(master_seed_)};
  const philox::Counter out = philox::philox4x32_10(ctr, key);
  ++block_;
  buffer_[0] = (static_cast<std::uint64_t>(out[1]) << 32) | out[0];
  buffer_[1] = (static_cast<std::uint64_t>(out[3]) << 32) | out[2];
  has_buffered_ = true;
  return buffer_[0];
}

double RngStream::uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

double RngStream::uniform_open() {
  return (static_cast<double>(next_u64() >> 12) + 0.5) * 0x1.0p-52;
}

bool RngStream::bernoulli(double p) { return uniform() < p; }

std::uint64_t RngStream::below(std::uint64_t n) {
  if (n == 0) throw std::domain_error("RngStream::below: n must be positive");
  // Lemire's nearly-divisionless method.
  __extension__ using u128 = unsigned __int128;
  u128 m = static_cast<u128>(next_u64()) * n;
  auto low = static_cast<std::uint64_t>(m);
  if (low < n) {
    const std::uint64_t threshold = -n % n;
    while (low < threshold) {
      m = static_cast<u128>(next_u64()) * n;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

RngStream substream(std::uint64_t master_seed, std::uint64_t stream_id) {
  return RngStream(master_seed, stream_id);
}

std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t tag) {
  std::uint64_t z = master_seed + 0x9E3779B97F4A7C15ull * (tag + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// ---------------------------------------------------------------------------

Direction Direction::from_components(double x, double y, double z) {
  const double norm = std::sqrt(x * x + y * y + z * z);
  if (!std::isfinite(norm) || norm == 0.0) {
    throw std::domain_error("Direction: components must be finite and not all zero");
  }
  Direction d(x / norm, y / norm, z / norm);
  const double n2 = d.dot(d);
  if (std::abs(n2 - 1.0) > 1e-12) throw std::domain_error("Direction: normalization failed");
  return d;
}

Direction Direction::from_spherical(double polar, double azimuth) {
  const double s = std::sin(polar);
  return from_components(s * std::cos(azimuth), s * std::sin(azimuth), std::cos(polar));
}

Direction Direction::in_plane_degrees(double degrees) {
  const double rad = degrees * std::numbers::pi / 180.0;
  return from_components(std::cos(rad), std::sin(rad), 0.0);
}

Direction Direction::rotated(const Direction& axis, double angle) const {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  const double k_dot_v = axis.dot(*this);
  // v c + (k x v) s + k (k.v)(1 - c)
  const double cx = axis.y_ * z_ - axis.z_ * y_;
  const double cy = axis.z_ * x_ - axis.x_ * z_;
  const double cz = axis.x_ * y_ - axis.y_ * x_;
  return from_components(x_ * c + cx * s + axis.x_ * k_dot_v * (1.0 - c),
                         y_ * c + cy * s + axis.y_ * k_dot_v * (1.0 - c),
                         z_ * c + cz * s + axis.z_ * k_dot_v * (1.0 - c));
}

std::array<Direction, 2> Direction::orthonormal_complement() const {
  // Pick the coordinate axis least aligned with *this to seed Gram-Schmidt.
  const double ax = std::abs(x_), ay = std::abs(y_), az = std::abs(z_);
  double ux = 0, uy = 0, uz = 0;
  if (ax <= ay && ax <= az) {
    ux = 1;
  } else if (ay <= az) {
    uy = 1;
  } else {
    uz = 1;
  }
  const double proj = ux * x_ + uy * y_ + uz * z_;
  const Direction e1 = from_components(ux - proj * x_, uy - proj * y_, uz - proj * z_);
  const Direction e2 = from_components(y_ * e1.z_ - z_ * e1.y_, z_ * e1.x_ - x_ * e1.z_,
                                       x_ * e1.y_ - y_ * e1.x_);
  return {e1, e2};
}

// ---------------------------------------------------------------------------

CapSpec::CapSpec(Direction axis, double epsilon) : axis_(axis), epsilon_(epsilon) {
  if (!(epsilon >= 0.0 && epsilon <= 2.0)) {
    throw std::domain_error("CapSpec: epsilon must lie in [0, 2], got " + std::to_string(epsilon));
  }
}

bool CapSpec::contains(const Direction& a) const {
  return std::abs(1.0 - a.dot(axis_)) <= epsilon_;
}

Direction sample_cap(const CapSpec& cap, RngStream& rng) {
  if (cap.epsilon() == 0.0) return cap.axis();
  const auto [e1, e2] = cap.axis().orthonormal_complement();
  const Direction& axis = cap.axis();
  // Rounding in the frame can push a draw a few ulps past the boundary;
  // such draws are rejected so membership holds exactly.
  while (true) {
    const double cos_t = std::max(-1.0, 1.0 - cap.epsilon() * rng.uniform());
    const double sin_t = std::sqrt(std::max(0.0, 1.0 - cos_t * cos_t));
    const double phi = 2.0 * std::numbers::pi * rng.uniform();
    const double cp = sin_t * std::cos(phi);
    const double sp = sin_t * std::sin(phi);
    const Direction a = Direction::from_components(cp * e1.x() + sp * e2.x() + cos_t * axis.x(),
                                                   cp * e1.y() + sp * e2.y() + cos_t * axis.y(),
                                                   cp * e1.z() + sp * e2.z() + cos_t * axis.z());
    if (cap.contains(a)) return a;
  }
}

Direction sample_sphere(RngStream& rng) {
  static const CapSpec whole(Direction::from_components(0, 0, 1), 2.0);
  return sample_cap(whole, rng);
}

double angle_between(const Direction& a, const Direction& b) {
  return std::acos(std::clamp(a.dot(b), -1.0, 1.0));
}

double hypergeometric_step_prob(std::uint64_t k, std::uint64_t m, std::uint64_t n_per_color) {
  const std::uint64_t total = 2 * n_per_color;
  if (m > k || k >= total || m > n_per_color || k - m > n_per_color) {
    throw std::domain_error("hypergeometric_step_prob: need 0 <= m <= k < 2N, m <= N, k - m <= N");
  }
  return static_cast<double>(n_per_color - m) / static_cast<double>(total - k);
}

}  // namespace ctxlab
