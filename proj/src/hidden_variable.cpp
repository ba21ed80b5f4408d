#include "ctxlab/hidden_variable.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace ctxlab::spce {

namespace {

double checked(double p, const char* which) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::domain_error(std::string("factorized model: ") + which + " returned a value outside [0, 1]");
  }
  return p;
}

void validate(const DiscretePrior& prior) {
  if (prior.atoms.empty() || prior.atoms.size() != prior.weights.size()) {
    throw std::domain_error("DiscretePrior: atoms and weights must be non-empty and of equal length");
  }
  double total = 0.0;
  for (double w : prior.weights) {
    if (!(w >= 0.0)) throw std::domain_error("DiscretePrior: weights must be non-negative");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw std::domain_error("DiscretePrior: weights sum to " + std::to_string(total) + ", not 1");
  }
}

// Calls visit(lambda, weight) over the prior and returns the total weight:
// every atom for a discrete prior, budget.samples unit-weight draws
// otherwise. Unit weights keep sign-model sums exact.
template <typename Visit>
double for_each_lambda(const Prior& prior, const MonteCarlo& budget, Visit&& visit) {
  if (const auto* discrete = std::get_if<DiscretePrior>(&prior)) {
    validate(*discrete);
    double total = 0.0;
    for (std::size_t i = 0; i < discrete->atoms.size(); ++i) {
      visit(discrete->atoms[i], discrete->weights[i]);
      total += discrete->weights[i];
    }
    return total;
  }
  const auto& sampler = std::get<PriorSampler>(prior);
  if (!sampler) throw std::domain_error("factorized model: prior sampler is empty");
  if (budget.samples == 0) throw std::domain_error("factorized model: Monte Carlo needs samples > 0");
  for (std::size_t i = 0; i < budget.samples; ++i) {
    RngStream rng = substream(budget.seed, i);
    visit(sampler(rng), 1.0);
  }
  return static_cast<double>(budget.samples);
}

}  // namespace

Estimate ch_factorized_probability(const FactorizedModel& model, const Direction& a, const Direction& b,
                                   const MonteCarlo& budget) {
  double sum = 0.0, sum_sq = 0.0;
  const double total = for_each_lambda(model.prior, budget, [&](const Direction& lambda, double w) {
    const double v = checked(model.p1(lambda, a), "p1") * checked(model.p2(lambda, b), "p2");
    sum += w * v;
    sum_sq += w * v * v;
  });
  const double mean = sum / total, mean_sq = sum_sq / total;
  if (std::holds_alternative<DiscretePrior>(model.prior)) return {mean, 0.0};
  const double var = std::max(0.0, mean_sq - mean * mean);
  return {mean, std::sqrt(var / static_cast<double>(budget.samples))};
}

CorrelatorQuad ch_correlators(const FactorizedModel& model, const SettingQuad& settings,
                              const MonteCarlo& budget) {
  CorrelatorQuad q;
  const double total = for_each_lambda(model.prior, budget, [&](const Direction& lambda, double w) {
    const double x = 2.0 * checked(model.p1(lambda, settings.a), "p1") - 1.0;
    const double x_p = 2.0 * checked(model.p1(lambda, settings.a_prime), "p1") - 1.0;
    const double y = 2.0 * checked(model.p2(lambda, settings.b), "p2") - 1.0;
    const double y_p = 2.0 * checked(model.p2(lambda, settings.b_prime), "p2") - 1.0;
    q.ab -= w * x * y;
    q.ab_prime -= w * x * y_p;
    q.a_prime_b -= w * x_p * y;
    q.a_prime_b_prime -= w * x_p * y_p;
  });
  // Discrete weights can overshoot +-1 by rounding.
  for (double* r : {&q.ab, &q.ab_prime, &q.a_prime_b, &q.a_prime_b_prime}) *r = std::clamp(*r / total, -1.0, 1.0);
  return q;
}

FactorizedModel sign_detection_model() {
  return FactorizedModel{
      PriorSampler([](RngStream& rng) { return sample_sphere(rng); }),
      [](const Direction& lambda, const Direction& setting) { return setting.dot(lambda) > 0.0 ? 1.0 : 0.0; },
      [](const Direction& lambda, const Direction& setting) { return setting.dot(lambda) < 0.0 ? 1.0 : 0.0; },
  };
}

}  // namespace ctxlab::spce
