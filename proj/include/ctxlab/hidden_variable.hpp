// Factorized hidden-variable models of the Clauser-Horne type:
//     p(A, B) = integral over Lambda of p1(lambda, A) p2(lambda, B) d rho(lambda).
// Lambda is a direction on S^2; rho is either a sampler or a finite
// weighted prior.

#ifndef CTXLAB_HIDDEN_VARIABLE_HPP
#define CTXLAB_HIDDEN_VARIABLE_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <variant>
#include <vector>

#include "ctxlab/randkit.hpp"
#include "ctxlab/spce.hpp"

namespace ctxlab::spce {

using PriorSampler = std::function<Direction(RngStream&)>;

/// Finite prior; weights must be non-negative and sum to 1 within 1e-9.
struct DiscretePrior {
  std::vector<Direction> atoms;
  std::vector<double> weights;
};

using Prior = std::variant<PriorSampler, DiscretePrior>;

/// Probability, in [0, 1], that a component is detected given lambda and the setting.
using DetectionMap = std::function<double(const Direction& lambda, const Direction& setting)>;

struct FactorizedModel {
  Prior prior;
  DetectionMap p1;
  DetectionMap p2;
};

/// Monte Carlo over a sampled prior (sample i uses substream(seed, i)); a
/// discrete prior is summed exactly and reports stderr 0. Throws
/// std::domain_error on an unnormalized discrete prior or a detection map
/// leaving [0, 1].
Estimate ch_factorized_probability(const FactorizedModel& model, const Direction& a, const Direction& b,
                                   const MonteCarlo& budget = {});

/// Correlators r(X, Y) = -E[(2 p1 - 1)(2 p2 - 1)] for the four settings,
/// all evaluated on one shared prior sample. Outcome +1 means detected.
CorrelatorQuad ch_correlators(const FactorizedModel& model, const SettingQuad& settings,
                              const MonteCarlo& budget = {});

/// Deterministic sign model: p1 = [A . lambda > 0], p2 = [B . lambda < 0],
/// uniform prior on the sphere.
FactorizedModel sign_detection_model();

}  // namespace ctxlab::spce

#endif  // CTXLAB_HIDDEN_VARIABLE_HPP
