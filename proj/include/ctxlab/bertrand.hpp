// Three chord-drawing machines for Bertrand's question: does a random chord
// of the circle of radius R = 1 meet the concentric circle of radius 1/2?
//
//   M1  point Q on the circle, distance r ~ U[0, 2] along the diameter from
//       Q, stick of length 2 laid perpendicular to the diameter there.
//   M2  two endpoints independently uniform on the circle.
//   M3  chord midpoint uniform over the disk.
//
// With R = 1 the stick's half-length 1 always covers the chord's half-length
// sqrt(1 - d^2), so "the stick touches the inner circle" is the test d <= 1/2
// on the chord's distance d from the center.

#ifndef CTXLAB_BERTRAND_HPP
#define CTXLAB_BERTRAND_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>

#include "ctxlab/randkit.hpp"

namespace ctxlab::bertrand {

enum class Machine { M1, M2, M3 };

std::string to_string(Machine m);
Machine machine_from_string(const std::string& name);

inline constexpr double kInnerRadius = 0.5;

struct M1Geometry {
  double q_angle;   // position of Q on the unit circle
  double distance;  // r in [0, 2] from Q toward the opposite point
};

struct M2Geometry {
  double first_angle;
  double second_angle;
};

struct M3Geometry {
  double mid_x;
  double mid_y;
};

using Geometry = std::variant<M1Geometry, M2Geometry, M3Geometry>;

struct ChordTrial {
  Machine machine;
  Geometry geometry;
  bool hit;
};

/// Distance from the center to the chord's line, from the machine's own parameters.
double center_distance(const Geometry& geometry);

/// Rebuilds a trial's hit flag from its geometry.
ChordTrial make_trial(const Geometry& geometry);

/// Rotates the geometry about the center; hit is unchanged.
Geometry rotated(const Geometry& geometry, double angle);

ChordTrial machine_m1(RngStream& rng);
/// Coincident endpoints are redrawn.
ChordTrial machine_m2(RngStream& rng);
/// A midpoint exactly at the center is redrawn.
ChordTrial machine_m3(RngStream& rng);

ChordTrial run_machine(Machine m, RngStream& rng);

struct ProbabilityEstimate {
  double p_hat = 0.0;
  double std_error = 0.0;  // sqrt(p_hat (1 - p_hat) / N)
  std::size_t n = 0;
};

/// Trial i uses substream(master_seed, i).
ProbabilityEstimate estimate_probability(Machine m, std::size_t n, std::uint64_t master_seed, unsigned workers = 1);

}  // namespace ctxlab::bertrand

#endif  // CTXLAB_BERTRAND_HPP
