// Spin polarization correlation experiments (SPCE).
//
// A polarizer is a macroscopic axis plus a cap of microscopic directions
// around it. Each pair in a run gets fresh microscopic settings a, b drawn
// from the two caps and its outcomes from the singlet table at angle(a, b).
//
// Sign convention: correlators carry a leading minus,
//     r_N(A, B) = -(1/N) sum_i s1_i s2_i,
// so perfectly anti-correlated outcomes (aligned polarizers, no smearing)
// give r = +1 and the contextual model's expectation is
// (1 - eps_A/2)(1 - eps_B/2) cos(theta_AB).

#ifndef CTXLAB_SPCE_HPP
#define CTXLAB_SPCE_HPP

#include <cstddef>
#include <cstdint>
#include <variant>
#include <vector>

#include "ctxlab/randkit.hpp"

namespace ctxlab::spce {

struct Polarizer {
  CapSpec cap;

  Polarizer(Direction axis, double epsilon) : cap(axis, epsilon) {}
  explicit Polarizer(CapSpec c) : cap(c) {}

  const Direction& axis() const { return cap.axis(); }
  double epsilon() const { return cap.epsilon(); }
};

/// Joint outcome probabilities over (s1, s2).
struct JointProbs {
  double pp;  // (+1, +1)
  double pm;  // (+1, -1)
  double mp;  // (-1, +1)
  double mm;  // (-1, -1)

  double sum() const { return pp + pm + mp + mm; }
};

/// Singlet table: p(++) = p(--) = sin^2(theta/2) / 2, p(+-) = p(-+) = cos^2(theta/2) / 2.
JointProbs singlet_joint_probs(const Direction& a, const Direction& b);

struct PairRecord {
  Direction a;
  Direction b;
  int s1;
  int s2;
};

PairRecord sample_pair(const Polarizer& pol_a, const Polarizer& pol_b, RngStream& rng);

struct RunOptions {
  /// Draw (a, b) once per run instead of once per pair.
  bool freeze_microscopic_settings = false;
  /// 0 picks the hardware concurrency. Output does not depend on it.
  unsigned workers = 1;
};

/// Runs below this size are flagged as statistically weak in reports.
inline constexpr std::size_t kWeakRunThreshold = 100;

struct ExperimentRun {
  Polarizer pol_a;
  Polarizer pol_b;
  std::vector<PairRecord> records;
  std::uint64_t master_seed = 0;

  std::size_t size() const { return records.size(); }
  bool statistically_weak() const { return records.size() < kWeakRunThreshold; }
};

/// Pair i is drawn from substream(master_seed, i).
ExperimentRun run_experiment(const Polarizer& pol_a, const Polarizer& pol_b, std::size_t n,
                             std::uint64_t master_seed, const RunOptions& options = {});

/// -(1/N) sum s1 s2.
double empirical_correlator(const ExperimentRun& run);
/// Binomial standard error sqrt((1 - r^2) / N) of the correlator.
double correlator_stderr(const ExperimentRun& run);
/// Fraction of pairs with s1 == s2.
double same_outcome_fraction(const ExperimentRun& run);

struct Estimate {
  double value = 0.0;
  double std_error = 0.0;
};

struct MonteCarlo {
  std::size_t samples = 100000;
  std::uint64_t seed = 0;
};

/// Tensor Gauss-Legendre rule over (cos theta, azimuth) of each cap.
struct Quadrature {};

using PassageMethod = std::variant<MonteCarlo, Quadrature>;

/// Probability that both particles pass: the cap average of
/// p12(a, b) = sin^2(theta_ab / 2) / 2. Quadrature reports std_error 0.
Estimate passage_probability(const Polarizer& pol_a, const Polarizer& pol_b, const PassageMethod& method);

/// |r_AB - r_AB'| + |r_A'B + r_A'B'|. Inputs must lie in [-1, 1].
double chsh(double r_ab, double r_ab_prime, double r_a_prime_b, double r_a_prime_b_prime);

struct SettingQuad {
  Direction a;
  Direction a_prime;
  Direction b;
  Direction b_prime;

  /// Coplanar settings given as angles in degrees.
  static SettingQuad in_plane_degrees(double a, double a_prime, double b, double b_prime);
};

struct CorrelatorQuad {
  double ab = 0.0;
  double ab_prime = 0.0;
  double a_prime_b = 0.0;
  double a_prime_b_prime = 0.0;

  double chsh() const { return spce::chsh(ab, ab_prime, a_prime_b, a_prime_b_prime); }
};

/// One hidden direction lambda per pair, reused for every setting.
struct SharedLambdaRun {
  std::vector<Direction> lambdas;
  SettingQuad settings;
};

struct SharedLambdaResult {
  SharedLambdaRun run;
  CorrelatorQuad correlators;
};

/// s(x) = sign(x . lambda), s1 = s, s2 = -s, with all four correlators
/// evaluated on the same lambda sample. Expected r(X, Y) = 1 - 2 theta_XY / pi.
SharedLambdaResult run_shared_lambda_model(const SettingQuad& settings, std::size_t n,
                                           std::uint64_t master_seed, unsigned workers = 1);

/// |x y - x y'| + |x' y + x' y'| for one sample; at most 2 when all inputs are in [-1, 1].
double chsh_sample_term(double x, double x_prime, double y, double y_prime);

struct BoundCheck {
  double lhs = 0.0;
  double middle = 0.0;  // |m2 - m2'| + |m2 + m2'|
  bool bound_holds = false;
};

/// The factorized (independent variables) form:
/// |m1 m2 - m1 m2'| + |m1' m2 + m1' m2'| <= |m2 - m2'| + |m2 + m2'| <= 2.
BoundCheck independent_bound_check(double m1, double m1_prime, double m2, double m2_prime);

}  // namespace ctxlab::spce

#endif  // CTXLAB_SPCE_HPP
