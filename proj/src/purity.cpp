#include "ctxlab/purity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <fmt/format.h>

#include "ctxlab/statistics.hpp"

namespace ctxlab::purity {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr std::uint64_t kReductionTag = 1;
constexpr std::uint64_t kSubensembleTag = 2;

TestReport make_report(std::string name, std::string label, double statistic, double p, double alpha) {
  TestReport r;
  r.test_name = std::move(name);
  r.label = std::move(label);
  r.statistic = statistic;
  r.p_value = std::clamp(p, 0.0, 1.0);
  r.alpha = alpha;
  r.reject = r.p_value < alpha;
  return r;
}

TestReport invalid_report(std::string name, std::string label, double alpha, std::string note) {
  TestReport r = make_report(std::move(name), std::move(label), 0.0, 1.0, alpha);
  r.valid = false;
  r.note = std::move(note);
  return r;
}

void require_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("significance level must lie in (0, 1)");
}

}  // namespace

std::string SampleLabel::str() const {
  if (reduction) return fmt::format("S{}({})", run, *reduction);
  if (subensemble) return fmt::format("S{}[sub {}]", run, *subensemble);
  return fmt::format("S{}", run);
}

std::string to_string(const Reduction& procedure) {
  return std::visit(overloaded{
                        [](const Thin& t) { return fmt::format("thin({})", t.keep_probability); },
                        [](const EveryKth& e) { return fmt::format("every_kth({})", e.k); },
                        [](const Prefix& p) { return fmt::format("prefix({})", p.fraction); },
                    },
                    procedure);
}

TimeSeries reduce_intensity(const TimeSeries& series, const Reduction& procedure, RngStream& rng) {
  TimeSeries out;
  out.meta = series.meta;
  out.meta.generator_id = series.meta.generator_id + "|" + to_string(procedure);
  std::visit(overloaded{
                 [&](const Thin& t) {
                   if (!(t.keep_probability > 0.0 && t.keep_probability <= 1.0)) {
                     throw std::domain_error("thin: keep probability must lie in (0, 1]");
                   }
                   for (CoinFace f : series.outcomes) {
                     if (rng.bernoulli(t.keep_probability)) out.outcomes.push_back(f);
                   }
                 },
                 [&](const EveryKth& e) {
                   if (e.k < 1) throw std::domain_error("every_kth: k must be at least 1");
                   for (std::size_t i = 0; i < series.size(); i += e.k) out.outcomes.push_back(series.outcomes[i]);
                 },
                 [&](const Prefix& p) {
                   if (!(p.fraction > 0.0 && p.fraction <= 1.0)) {
                     throw std::domain_error("prefix: fraction must lie in (0, 1]");
                   }
                   const auto keep = static_cast<std::size_t>(std::floor(p.fraction * series.size() + 1e-9));
                   out.outcomes.assign(series.outcomes.begin(),
                                       series.outcomes.begin() + std::min(keep, series.size()));
                 },
             },
             procedure);
  return out;
}

TimeSeries random_subensemble(const TimeSeries& series, double fraction, RngStream& rng,
                              const RichnessFloor& floor) {
  if (!(fraction > 0.0 && fraction <= 1.0)) throw std::domain_error("random_subensemble: fraction must lie in (0, 1]");
  const std::size_t n = series.size();
  const auto want = static_cast<std::size_t>(std::floor(fraction * n + 1e-9));
  if (want < floor.min_size || fraction + 1e-12 < floor.min_fraction) {
    throw std::domain_error(fmt::format(
        "random_subensemble: {} outcomes ({} of parent) is below the richness floor of {} outcomes and {} of parent",
        want, fraction, floor.min_size, floor.min_fraction));
  }
  TimeSeries out;
  out.meta = series.meta;
  out.meta.generator_id = series.meta.generator_id + fmt::format("|subensemble({})", fraction);
  out.outcomes.reserve(want);
  // Selection sampling: keep index i with probability (needed / remaining).
  std::size_t needed = want;
  for (std::size_t i = 0; i < n && needed > 0; ++i) {
    if (rng.below(n - i) < needed) {
      out.outcomes.push_back(series.outcomes[i]);
      --needed;
    }
  }
  return out;
}

TestReport chi2_homogeneity(std::span<const Sample> samples, double alpha) {
  require_alpha(alpha);
  if (samples.size() < 2) throw std::domain_error("chi2_homogeneity: need at least two samples");
  const std::string label = fmt::format("family({})", samples.size());
  std::vector<double> blue(samples.size()), total(samples.size());
  double all_blue = 0.0, all = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    blue[i] = static_cast<double>(samples[i].series.count(CoinFace::B));
    total[i] = static_cast<double>(samples[i].series.size());
    all_blue += blue[i];
    all += total[i];
  }
  const double all_red = all - all_blue;
  double statistic = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double exp_b = total[i] * all_blue / all;
    const double exp_r = total[i] * all_red / all;
    if (exp_b < 5.0 || exp_r < 5.0) {
      return invalid_report("chi2_homogeneity", label, alpha,
                            fmt::format("expected count below 5 in sample {}", samples[i].label.str()));
    }
    const double red = total[i] - blue[i];
    statistic += (blue[i] - exp_b) * (blue[i] - exp_b) / exp_b + (red - exp_r) * (red - exp_r) / exp_r;
  }
  const double dof = static_cast<double>(samples.size() - 1);
  return make_report("chi2_homogeneity", label, statistic, stats::chi2_survival(statistic, dof), alpha);
}

TestReport ks_two_sample(std::span<const double> x, std::span<const double> y, double alpha) {
  require_alpha(alpha);
  if (x.size() < 20 || y.size() < 20) throw std::domain_error("ks_two_sample: both samples need at least 20 values");
  std::vector<double> xs(x.begin(), x.end()), ys(y.begin(), y.end());
  std::sort(xs.begin(), xs.end());
  std::sort(ys.begin(), ys.end());
  const double n = static_cast<double>(xs.size()), m = static_cast<double>(ys.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < xs.size() && j < ys.size()) {
    const double v = std::min(xs[i], ys[j]);
    while (i < xs.size() && xs[i] == v) ++i;
    while (j < ys.size() && ys[j] == v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / n - static_cast<double>(j) / m));
  }
  const double lambda = std::sqrt(n * m / (n + m)) * d;
  return make_report("ks_two_sample", fmt::format("n={},m={}", xs.size(), ys.size()), d,
                     stats::kolmogorov_survival(lambda), alpha);
}

std::vector<double> run_lengths(const TimeSeries& series) {
  std::vector<double> lengths;
  std::size_t current = 0;
  for (std::size_t i = 0; i < series.size(); ++i) {
    if (i > 0 && series.outcomes[i] != series.outcomes[i - 1]) {
      lengths.push_back(static_cast<double>(current));
      current = 0;
    }
    ++current;
  }
  if (current > 0) lengths.push_back(static_cast<double>(current));
  return lengths;
}

TestReport runs_test(const TimeSeries& series, double alpha) {
  require_alpha(alpha);
  if (series.size() < 20) throw std::domain_error("runs_test: series needs at least 20 outcomes");
  const double n_plus = static_cast<double>(series.count(CoinFace::B));
  const double n_minus = static_cast<double>(series.size()) - n_plus;
  if (n_plus == 0.0 || n_minus == 0.0) throw std::domain_error("runs_test: undefined for a single-symbol series");
  const double n = n_plus + n_minus;
  const double runs = static_cast<double>(run_lengths(series).size());
  const double mean = 2.0 * n_plus * n_minus / n + 1.0;
  const double var = 2.0 * n_plus * n_minus * (2.0 * n_plus * n_minus - n) / (n * n * (n - 1.0));
  // var is 0 only for a single outcome of one face, excluded above.
  const double z = (runs - mean) / std::sqrt(var);
  TestReport r = make_report("runs_test", series.meta.generator_id, z, stats::normal_two_sided(z), alpha);
  r.note = fmt::format("runs={}", runs);
  return r;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pure: return "pure";
    case Verdict::mixed: return "mixed";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

PurityVerdict purity_verdict(std::span<const Sample> base_samples, std::span<const Reduction> procedures,
                             double alpha, const VerdictConfig& config) {
  require_alpha(alpha);
  if (base_samples.size() < 2) throw std::domain_error("purity_verdict: need at least two base samples");

  PurityVerdict verdict;
  std::vector<Sample> family(base_samples.begin(), base_samples.end());

  const std::uint64_t reduction_seed = derive_seed(config.seed, kReductionTag);
  for (std::size_t i = 0; i < base_samples.size(); ++i) {
    for (std::size_t j = 0; j < procedures.size(); ++j) {
      RngStream rng = substream(reduction_seed, i * procedures.size() + j);
      SampleLabel label = base_samples[i].label;
      label.reduction = j;
      family.push_back({reduce_intensity(base_samples[i].series, procedures[j], rng), label});
    }
  }

  const std::uint64_t sub_seed = derive_seed(config.seed, kSubensembleTag);
  for (std::size_t m = 0; m < config.subensemble_count; ++m) {
    const Sample& parent = base_samples[m % base_samples.size()];
    RngStream rng = substream(sub_seed, m);
    SampleLabel label = parent.label;
    label.subensemble = m;
    try {
      family.push_back({random_subensemble(parent.series, config.subensemble_fraction, rng, config.richness), label});
    } catch (const std::domain_error& e) {
      verdict.notes.push_back(fmt::format("{} skipped: {}", label.str(), e.what()));
    }
  }

  verdict.reports.push_back(chi2_homogeneity(family, alpha));
  for (const Sample& s : family) {
    try {
      TestReport r = runs_test(s.series, alpha);
      r.label = s.label.str();
      verdict.reports.push_back(std::move(r));
    } catch (const std::domain_error& e) {
      verdict.reports.push_back(invalid_report("runs_test", s.label.str(), alpha, e.what()));
    }
  }

  std::vector<double> p_values;
  std::vector<std::size_t> valid_index;
  for (std::size_t k = 0; k < verdict.reports.size(); ++k) {
    const TestReport& r = verdict.reports[k];
    if (!r.valid) {
      verdict.notes.push_back(fmt::format("{} on {} excluded: {}", r.test_name, r.label, r.note));
      continue;
    }
    p_values.push_back(r.p_value);
    valid_index.push_back(k);
  }
  const std::vector<double> adjusted = stats::holm_adjust(p_values);
  bool homogeneity_rejected = false, randomness_rejected = false;
  for (std::size_t v = 0; v < valid_index.size(); ++v) {
    TestReport& r = verdict.reports[valid_index[v]];
    r.adjusted_p = adjusted[v];
    const bool corrected_reject = adjusted[v] < alpha;
    if (r.test_name == "chi2_homogeneity") {
      verdict.min_homogeneity_adjusted_p = std::min(verdict.min_homogeneity_adjusted_p, adjusted[v]);
      homogeneity_rejected |= corrected_reject;
    } else {
      randomness_rejected |= corrected_reject;
    }
  }

  std::size_t base_total = 0;
  for (const Sample& s : base_samples) base_total += s.series.size();

  if (homogeneity_rejected) {
    verdict.verdict = Verdict::mixed;
  } else if (randomness_rejected) {
    verdict.verdict = Verdict::inconclusive;
    verdict.notes.push_back("homogeneity holds but at least one member fails the runs test");
  } else if (base_total < config.power_floor || valid_index.empty() || !verdict.reports.front().valid) {
    verdict.verdict = Verdict::inconclusive;
    verdict.notes.push_back(fmt::format("{} base outcomes, power floor is {}", base_total, config.power_floor));
  } else {
    verdict.verdict = Verdict::pure;
  }
  return verdict;
}

nlohmann::json to_json(const TestReport& report) {
  nlohmann::json j = {{"test", report.test_name}, {"label", report.label},     {"statistic", report.statistic},
                      {"p", report.p_value},      {"alpha", report.alpha},     {"reject", report.reject},
                      {"valid", report.valid}};
  if (report.adjusted_p) j["adjusted_p"] = *report.adjusted_p;
  if (!report.note.empty()) j["note"] = report.note;
  return j;
}

nlohmann::json to_json(const PurityVerdict& verdict) {
  nlohmann::json reports = nlohmann::json::array();
  for (const auto& r : verdict.reports) reports.push_back(to_json(r));
  return {{"verdict", to_string(verdict.verdict)},
          {"correction", verdict.correction},
          {"min_homogeneity_adjusted_p", verdict.min_homogeneity_adjusted_p},
          {"notes", verdict.notes},
          {"reports", reports}};
}

}  // namespace ctxlab::purity
