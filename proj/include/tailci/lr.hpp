#pragma once

#include "tailci/interval.hpp"
#include "tailci/sample.hpp"

namespace tailci {

// Maximum-likelihood tail index under random right censoring:
// (sum of tail statuses) / (sum of log-excesses).
double ml_alpha(const TailStats& tail);

// Likelihood ratio statistic, minus twice the log ratio against the ML fit:
//   R(alpha) = 2 k p_hat [alpha/alpha_ml - 1 - log(alpha/alpha_ml)].
// Strictly convex in alpha with minimum value 0 at the ML index.
double lr_stat(const TailStats& tail, double alpha);

// Confidence interval {alpha : R(alpha) <= chi^2_1 quantile of 1 - theta}.
// Endpoints are bracketed by halving/doubling away from the ML index and
// bisected to 1e-9 relative accuracy.
Interval ci_ml(const TailStats& tail, double theta);

}  // namespace tailci
