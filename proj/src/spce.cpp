#include "ctxlab/spce.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include <boost/math/quadrature/gauss.hpp>

#include "ctxlab/parallel.hpp"

namespace ctxlab::spce {

namespace {

constexpr std::uint64_t kFrozenSettingsTag = 0x46524F5A454E;  // "FROZEN"

void require_unit_interval(double v, const char* name) {
  if (!(v >= -1.0 && v <= 1.0)) {
    throw std::domain_error(std::string(name) + " must lie in [-1, 1], got " + std::to_string(v));
  }
}

std::pair<int, int> draw_outcomes(const Direction& a, const Direction& b, RngStream& rng) {
  const JointProbs p = singlet_joint_probs(a, b);
  const double u = rng.uniform();
  if (u < p.pp) return {1, 1};
  if (u < p.pp + p.pm) return {1, -1};
  if (u < p.pp + p.pm + p.mp) return {-1, 1};
  return {-1, -1};
}

double passage_density(const Direction& a, const Direction& b) {
  const double s = std::sin(angle_between(a, b) / 2.0);
  return 0.5 * s * s;
}

// Average of f over the uniform cap, by Gauss-Legendre in cos(theta) and azimuth.
template <typename F>
double cap_average(const CapSpec& cap, F&& f) {
  if (cap.epsilon() == 0.0) return f(cap.axis());
  using rule = boost::math::quadrature::gauss<double, 20>;
  const auto [e1, e2] = cap.axis().orthonormal_complement();
  const Direction& ax = cap.axis();
  const double lo = std::max(-1.0, 1.0 - cap.epsilon());
  const double integral = rule::integrate(
      [&](double cos_t) {
        const double sin_t = std::sqrt(std::max(0.0, 1.0 - cos_t * cos_t));
        return rule::integrate(
            [&](double phi) {
              const double cp = sin_t * std::cos(phi), sp = sin_t * std::sin(phi);
              return f(Direction::from_components(cp * e1.x() + sp * e2.x() + cos_t * ax.x(),
                                                  cp * e1.y() + sp * e2.y() + cos_t * ax.y(),
                                                  cp * e1.z() + sp * e2.z() + cos_t * ax.z()));
            },
            0.0, 2.0 * std::numbers::pi);
      },
      lo, 1.0);
  return integral / ((1.0 - lo) * 2.0 * std::numbers::pi);
}

}  // namespace

JointProbs singlet_joint_probs(const Direction& a, const Direction& b) {
  const double half = angle_between(a, b) / 2.0;
  const double s2 = std::sin(half) * std::sin(half);
  const double c2 = std::cos(half) * std::cos(half);
  return {0.5 * s2, 0.5 * c2, 0.5 * c2, 0.5 * s2};
}

PairRecord sample_pair(const Polarizer& pol_a, const Polarizer& pol_b, RngStream& rng) {
  const Direction a = sample_cap(pol_a.cap, rng);
  const Direction b = sample_cap(pol_b.cap, rng);
  const auto [s1, s2] = draw_outcomes(a, b, rng);
  return {a, b, s1, s2};
}

ExperimentRun run_experiment(const Polarizer& pol_a, const Polarizer& pol_b, std::size_t n,
                             std::uint64_t master_seed, const RunOptions& options) {
  if (n == 0) throw std::domain_error("run_experiment: N must be at least 1");
  ExperimentRun run{pol_a, pol_b, {}, master_seed};
  const Direction placeholder = pol_a.axis();
  run.records.assign(n, PairRecord{placeholder, placeholder, 0, 0});

  if (options.freeze_microscopic_settings) {
    RngStream settings_rng = substream(derive_seed(master_seed, kFrozenSettingsTag), 0);
    const Direction a = sample_cap(pol_a.cap, settings_rng);
    const Direction b = sample_cap(pol_b.cap, settings_rng);
    parallel_for(n, options.workers, [&](std::size_t i) {
      RngStream rng = substream(master_seed, i);
      const auto [s1, s2] = draw_outcomes(a, b, rng);
      run.records[i] = {a, b, s1, s2};
    });
  } else {
    parallel_for(n, options.workers, [&](std::size_t i) {
      RngStream rng = substream(master_seed, i);
      run.records[i] = sample_pair(pol_a, pol_b, rng);
    });
  }
  return run;
}

double empirical_correlator(const ExperimentRun& run) {
  if (run.records.empty()) throw std::domain_error("empirical_correlator: empty run");
  long long sum = 0;
  for (const auto& r : run.records) sum += r.s1 * r.s2;
  return -static_cast<double>(sum) / static_cast<double>(run.records.size());
}

double correlator_stderr(const ExperimentRun& run) {
  const double r = empirical_correlator(run);
  return std::sqrt(std::max(0.0, 1.0 - r * r) / static_cast<double>(run.records.size()));
}

double same_outcome_fraction(const ExperimentRun& run) {
  if (run.records.empty()) throw std::domain_error("same_outcome_fraction: empty run");
  std::size_t same = 0;
  for (const auto& r : run.records) same += (r.s1 == r.s2);
  return static_cast<double>(same) / static_cast<double>(run.records.size());
}

Estimate passage_probability(const Polarizer& pol_a, const Polarizer& pol_b, const PassageMethod& method) {
  if (const auto* mc = std::get_if<MonteCarlo>(&method)) {
    if (mc->samples == 0) throw std::domain_error("passage_probability: Monte Carlo needs samples > 0");
    std::vector<double> values(mc->samples);
    parallel_for(mc->samples, 1, [&](std::size_t i) {
      RngStream rng = substream(mc->seed, i);
      const Direction a = sample_cap(pol_a.cap, rng);
      const Direction b = sample_cap(pol_b.cap, rng);
      values[i] = passage_density(a, b);
    });
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(values.size());
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    const double n = static_cast<double>(values.size());
    const double var = values.size() > 1 ? ss / (n - 1.0) : 0.0;
    return {mean, std::sqrt(var / n)};
  }
  const double value = cap_average(pol_a.cap, [&](const Direction& a) {
    return cap_average(pol_b.cap, [&](const Direction& b) { return passage_density(a, b); });
  });
  return {value, 0.0};
}

double chsh(double r_ab, double r_ab_prime, double r_a_prime_b, double r_a_prime_b_prime) {
  require_unit_interval(r_ab, "chsh: r(A,B)");
  require_unit_interval(r_ab_prime, "chsh: r(A,B')");
  require_unit_interval(r_a_prime_b, "chsh: r(A',B)");
  require_unit_interval(r_a_prime_b_prime, "chsh: r(A',B')");
  return std::abs(r_ab - r_ab_prime) + std::abs(r_a_prime_b + r_a_prime_b_prime);
}

SettingQuad SettingQuad::in_plane_degrees(double a, double a_prime, double b, double b_prime) {
  return {Direction::in_plane_degrees(a), Direction::in_plane_degrees(a_prime),
          Direction::in_plane_degrees(b), Direction::in_plane_degrees(b_prime)};
}

SharedLambdaResult run_shared_lambda_model(const SettingQuad& settings, std::size_t n,
                                           std::uint64_t master_seed, unsigned workers) {
  if (n == 0) throw std::domain_error("run_shared_lambda_model: N must be at least 1");
  SharedLambdaResult result{{std::vector<Direction>(n, settings.a), settings}, {}};
  auto& lambdas = result.run.lambdas;

  parallel_for(n, workers, [&](std::size_t i) {
    RngStream rng = substream(master_seed, i);
    while (true) {
      const Direction l = sample_sphere(rng);
      if (settings.a.dot(l) != 0.0 && settings.a_prime.dot(l) != 0.0 && settings.b.dot(l) != 0.0 &&
          settings.b_prime.dot(l) != 0.0) {
        lambdas[i] = l;
        break;
      }
    }
  });

  auto sign = [](double v) { return v > 0.0 ? 1 : -1; };
  // r(X, Y) = -(1/N) sum s1(X) s2(Y) with s1 = s, s2 = -s.
  long long ab = 0, ab_p = 0, a_pb = 0, a_pb_p = 0;
  for (const Direction& l : lambdas) {
    const int sa = sign(settings.a.dot(l)), sa_p = sign(settings.a_prime.dot(l));
    const int sb = sign(settings.b.dot(l)), sb_p = sign(settings.b_prime.dot(l));
    ab += sa * sb;
    ab_p += sa * sb_p;
    a_pb += sa_p * sb;
    a_pb_p += sa_p * sb_p;
  }
  const double nn = static_cast<double>(n);
  result.correlators = {ab / nn, ab_p / nn, a_pb / nn, a_pb_p / nn};
  return result;
}

double chsh_sample_term(double x, double x_prime, double y, double y_prime) {
  return std::abs(x * y - x * y_prime) + std::abs(x_prime * y + x_prime * y_prime);
}

BoundCheck independent_bound_check(double m1, double m1_prime, double m2, double m2_prime) {
  require_unit_interval(m1, "independent_bound_check: m1");
  require_unit_interval(m1_prime, "independent_bound_check: m1'");
  require_unit_interval(m2, "independent_bound_check: m2");
  require_unit_interval(m2_prime, "independent_bound_check: m2'");
  BoundCheck check;
  check.lhs = chsh_sample_term(m1, m1_prime, m2, m2_prime);
  check.middle = std::abs(m2 - m2_prime) + std::abs(m2 + m2_prime);
  // One rounding step of slack: both sides are sums of two products.
  constexpr double slack = 4.0 * std::numeric_limits<double>::epsilon();
  check.bound_holds = check.lhs <= check.middle + slack && check.middle <= 2.0 + slack;
  return check;
}

}  // namespace ctxlab::spce
