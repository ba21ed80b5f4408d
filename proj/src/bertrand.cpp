#include "ctxlab/bertrand.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "ctxlab/parallel.hpp"

namespace ctxlab::bertrand {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

std::string to_string(Machine m) {
  switch (m) {
    case Machine::M1: return "M1";
    case Machine::M2: return "M2";
    case Machine::M3: return "M3";
  }
  return "?";
}

Machine machine_from_string(const std::string& name) {
  if (name == "M1") return Machine::M1;
  if (name == "M2") return Machine::M2;
  if (name == "M3") return Machine::M3;
  throw std::invalid_argument("unknown Bertrand machine '" + name + "' (expected M1, M2 or M3)");
}

double center_distance(const Geometry& geometry) {
  return std::visit(overloaded{
                        // Q1 sits on the diameter at distance r from Q, i.e. |1 - r| from the center.
                        [](const M1Geometry& g) { return std::abs(1.0 - g.distance); },
                        // Chord subtending angle delta lies at distance cos(delta / 2).
                        [](const M2Geometry& g) {
                          double delta = std::fmod(std::abs(g.first_angle - g.second_angle), kTwoPi);
                          if (delta > std::numbers::pi) delta = kTwoPi - delta;
                          return std::cos(delta / 2.0);
                        },
                        [](const M3Geometry& g) { return std::hypot(g.mid_x, g.mid_y); },
                    },
                    geometry);
}

ChordTrial make_trial(const Geometry& geometry) {
  const Machine m = static_cast<Machine>(geometry.index());
  return {m, geometry, center_distance(geometry) <= kInnerRadius};
}

Geometry rotated(const Geometry& geometry, double angle) {
  return std::visit(overloaded{
                        [&](const M1Geometry& g) -> Geometry { return M1Geometry{g.q_angle + angle, g.distance}; },
                        [&](const M2Geometry& g) -> Geometry {
                          return M2Geometry{g.first_angle + angle, g.second_angle + angle};
                        },
                        [&](const M3Geometry& g) -> Geometry {
                          const double c = std::cos(angle), s = std::sin(angle);
                          return M3Geometry{c * g.mid_x - s * g.mid_y, s * g.mid_x + c * g.mid_y};
                        },
                    },
                    geometry);
}

ChordTrial machine_m1(RngStream& rng) {
  const double q = kTwoPi * rng.uniform();
  const double r = 2.0 * rng.uniform();
  return make_trial(M1Geometry{q, r});
}

ChordTrial machine_m2(RngStream& rng) {
  while (true) {
    const double first = kTwoPi * rng.uniform();
    const double second = kTwoPi * rng.uniform();
    if (first != second) return make_trial(M2Geometry{first, second});
  }
}

ChordTrial machine_m3(RngStream& rng) {
  while (true) {
    const double x = 2.0 * rng.uniform() - 1.0;
    const double y = 2.0 * rng.uniform() - 1.0;
    const double r2 = x * x + y * y;
    if (r2 <= 1.0 && r2 > 0.0) return make_trial(M3Geometry{x, y});
  }
}

ChordTrial run_machine(Machine m, RngStream& rng) {
  switch (m) {
    case Machine::M1: return machine_m1(rng);
    case Machine::M2: return machine_m2(rng);
    case Machine::M3: return machine_m3(rng);
  }
  throw std::logic_error("run_machine: unknown machine");
}

ProbabilityEstimate estimate_probability(Machine m, std::size_t n, std::uint64_t master_seed, unsigned workers) {
  if (n == 0) throw std::domain_error("estimate_probability: N must be at least 1");
  std::vector<unsigned char> hits(n);
  parallel_for(n, workers, [&](std::size_t i) {
    RngStream rng = substream(master_seed, i);
    hits[i] = run_machine(m, rng).hit ? 1 : 0;
  });
  std::size_t count = 0;
  for (unsigned char h : hits) count += h;
  ProbabilityEstimate e;
  e.n = n;
  e.p_hat = static_cast<double>(count) / static_cast<double>(n);
  e.std_error = std::sqrt(e.p_hat * (1.0 - e.p_hat) / static_cast<double>(n));
  return e;
}

}  // namespace ctxlab::bertrand
