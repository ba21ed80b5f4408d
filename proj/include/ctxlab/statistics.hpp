// Distribution tails and multiple-testing helpers used by the purity tests.

#ifndef CTXLAB_STATISTICS_HPP
#define CTXLAB_STATISTICS_HPP

#include <span>
#include <vector>

namespace ctxlab::stats {

/// P(X >= x) for X ~ chi-square with `dof` degrees of freedom.
double chi2_survival(double x, double dof);

/// Two-sided standard-normal tail P(|Z| >= |z|).
double normal_two_sided(double z);

/// Kolmogorov limiting distribution tail P(K > lambda).
double kolmogorov_survival(double lambda);

/// Holm step-down adjusted p-values, in input order.
std::vector<double> holm_adjust(std::span<const double> p_values);

}  // namespace ctxlab::stats

#endif  // CTXLAB_STATISTICS_HPP
