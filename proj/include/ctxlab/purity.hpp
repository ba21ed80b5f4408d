// Purity tests for ensembles of binary outcome series.
//
// A source is judged pure when repeated samples S_i, their intensity-reduced
// versions S_i(j) and random rich sub-ensembles all look like draws from one
// population (chi-square homogeneity) and each member looks random (runs
// test), after Holm correction across the whole battery.

#ifndef CTXLAB_PURITY_HPP
#define CTXLAB_PURITY_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "ctxlab/randkit.hpp"
#include "ctxlab/time_series.hpp"

namespace ctxlab::purity {

struct SampleLabel {
  std::size_t run = 0;
  std::optional<std::size_t> reduction;    // j in S_i(j)
  std::optional<std::size_t> subensemble;  // index of a random sub-ensemble of S_i

  /// "S3", "S3(1)" or "S3[sub 0]".
  std::string str() const;
  auto operator<=>(const SampleLabel&) const = default;
};

struct Sample {
  TimeSeries series;
  SampleLabel label;
};

struct TestReport {
  std::string test_name;
  std::string label;  // which sample(s) the test ran on
  double statistic = 0.0;
  double p_value = 1.0;
  double alpha = 0.05;
  bool reject = false;  // p_value < alpha
  bool valid = true;    // false when a validity rule failed; never counted as a rejection
  std::string note;
  std::optional<double> adjusted_p;  // set by purity_verdict
};

// -- intensity reduction ----------------------------------------------------

/// Keep each outcome independently with probability q in (0, 1].
struct Thin {
  double keep_probability = 0.5;
};
/// Keep indices 0, k, 2k, ...
struct EveryKth {
  std::size_t k = 2;
};
/// Keep the leading floor(fraction * n) outcomes.
struct Prefix {
  double fraction = 0.5;
};

using Reduction = std::variant<Thin, EveryKth, Prefix>;

std::string to_string(const Reduction& procedure);

TimeSeries reduce_intensity(const TimeSeries& series, const Reduction& procedure, RngStream& rng);

/// A sub-ensemble is rich when it keeps at least min_size outcomes and at
/// least min_fraction of its parent.
struct RichnessFloor {
  std::size_t min_size = 20;
  double min_fraction = 0.1;
};

/// Uniformly random subset of floor(fraction * n) outcomes, order preserved.
TimeSeries random_subensemble(const TimeSeries& series, double fraction, RngStream& rng,
                              const RichnessFloor& floor = {});

// -- tests ------------------------------------------------------------------

/// k x 2 contingency chi-square with k - 1 degrees of freedom. Requires at
/// least two samples; a table with an expected count below 5 yields a report
/// marked invalid.
TestReport chi2_homogeneity(std::span<const Sample> samples, double alpha);

/// Two-sample Kolmogorov-Smirnov with the asymptotic p-value
/// Q_KS(sqrt(n m / (n + m)) D). Both samples need at least 20 values.
TestReport ks_two_sample(std::span<const double> x, std::span<const double> y, double alpha);

/// Lengths of maximal same-face blocks, a real-valued statistic for KS.
std::vector<double> run_lengths(const TimeSeries& series);

/// Wald-Wolfowitz runs test, normal approximation, two-sided. Requires at
/// least 20 outcomes with both faces present.
TestReport runs_test(const TimeSeries& series, double alpha);

// -- verdict ----------------------------------------------------------------

enum class Verdict { pure, mixed, inconclusive };

std::string to_string(Verdict v);

struct VerdictConfig {
  std::size_t subensemble_count = 5;
  double subensemble_fraction = 0.5;
  /// Total base outcomes needed before a "pure" verdict is allowed.
  std::size_t power_floor = 1000;
  RichnessFloor richness;
  std::uint64_t seed = 0;
};

struct PurityVerdict {
  Verdict verdict = Verdict::inconclusive;
  std::vector<TestReport> reports;
  std::string correction = "holm";
  std::vector<std::string> notes;
  /// Smallest Holm-adjusted p over the homogeneity family (1 when none ran).
  double min_homogeneity_adjusted_p = 1.0;
};

/// Builds {S_i} + {S_i(j)} + sub-ensembles, runs one chi-square across the
/// family and a runs test on every member, Holm-corrects all valid reports.
/// mixed: some homogeneity test rejects after correction.
/// pure: nothing rejects and the base samples reach the power floor.
/// inconclusive: otherwise (low power, or only randomness rejected).
PurityVerdict purity_verdict(std::span<const Sample> base_samples, std::span<const Reduction> procedures,
                             double alpha, const VerdictConfig& config = {});

nlohmann::json to_json(const TestReport& report);
nlohmann::json to_json(const PurityVerdict& verdict);

}  // namespace ctxlab::purity

#endif  // CTXLAB_PURITY_HPP
