#pragma once

#include <span>
#include <vector>

#include "tailci/interval.hpp"
#include "tailci/sample.hpp"

namespace tailci {

// Entropy tilt of the full complete-data sample at a candidate tail index:
// the probability vector over all n observations minimizing the KL distance
// to uniform subject to the exceedance constraint
//   sum_{exceedances} w_i (log(X_i/threshold) - 1/alpha) = 0.
// Off the tail the weights share a single common value.
struct CompleteTilt {
  double lambda1 = 0.0;  // normalization multiplier
  double lambda2 = 0.0;  // exceedance-constraint multiplier
  std::vector<double> weights;  // one weight per original observation
  double alpha = 0.0;
  double statistic = 0.0;  // 2n * sum w_i log(n w_i)
};

struct WeightedEstimates {
  double alpha_hat = 0.0;
  double c_hat = 0.0;
};

// Weighted posterior-mode estimators of the Pareto tail (index and scale)
// for complete data, at an arbitrary probability vector over the sample:
//   alpha(w) = (sum w_i d_i - 1/n) / (sum w_i d_i log(X_i/u) + log(u)/n)
//   c(w)     = u^{alpha(w)} * (2n/(2n-1)) * sum w_i d_i
// with u the (k+1)-th largest value and d_i = 1{X_i > u}.
WeightedEstimates weighted_estimators(const CensoredSample& sample, int k,
                                      std::span<const double> weights);

// Solve the two Lagrange multipliers of the entropy tilt. The exceedance
// constraint decouples: lambda2 inverts the strictly decreasing map
//   phi(lambda) = sum e^{-lambda Z_i} Z_i / sum e^{-lambda Z_i}
// over the tail log-excesses at the target 1/alpha (no solution when the
// target leaves the open range of the excesses); lambda1 is then the root of
// the increasing normalization residual, bracketed around -1 and expanded by
// doubling when needed.
CompleteTilt solve_multipliers(const CensoredSample& sample, int k, double alpha);

// Tilting statistic 2n sum w_i log(n w_i) >= 0; zero exactly when the tilt
// is uniform, i.e. at alpha = 1/hill.
double cl_stat(const CensoredSample& sample, int k, double alpha);

// Confidence interval {alpha : cl_stat <= chi^2_1 quantile of 1 - theta},
// endpoints bisected to 1e-8 relative accuracy and clamped to the range of
// alpha for which the tilt exists.
Interval ci_cl(const CensoredSample& sample, int k, double theta);

}  // namespace tailci
