#pragma once

#include <span>
#include <vector>

#include "tailci/interval.hpp"
#include "tailci/sample.hpp"

namespace tailci {

// A tilted probability vector over the k tail points, together with the
// Lagrange multiplier and the tail index it was solved at. Weights are
// nonnegative, sum to one, and satisfy the estimating-equation constraint
// sum_i w_i * u_i(alpha) = 0 for the score terms below.
struct TiltedWeights {
  std::vector<double> weights;
  double lambda = 0.0;
  double alpha = 0.0;
};

// Per-observation score of the censored tail log-likelihood in alpha:
//   u_i = delta_i / alpha - V_i,
// where V_i is the i-th log-excess and delta_i its censoring status. The
// scores sum to zero exactly at the maximum-likelihood tail index, so
// tilting the uniform weights to enforce sum w_i u_i = 0 recenters the
// sample at any candidate alpha.
std::vector<double> score_terms(const TailStats& tail, double alpha);

// Solve sum_i u_i / (1 + lambda * u_i) = 0 for lambda. The map is strictly
// decreasing on the admissible interval (-1/max u, -1/min u), located by
// bisection to absolute tolerance 1e-12. Scores of a single sign admit no
// interior solution (the target lies outside the convex hull of the scores).
double solve_lambda(std::span<const double> u);

// Tilted weights w_i = (1/k) / (1 + lambda * u_i(alpha)).
TiltedWeights tilt_weights(const TailStats& tail, double alpha);

// Tilting statistic l(alpha) = 2 sum_i log(1 + lambda * u_i(alpha)); zero at
// the maximum-likelihood index and strictly positive elsewhere. Returns
// +infinity when alpha is outside the tiltable hull, so region inversion can
// scan freely.
double elr_stat(const TailStats& tail, double alpha);

// Admissible range of alpha for which the scores change sign: the open
// interval (lower, upper) outside of which tilting is infeasible.
struct TiltHull {
  double lower = 0.0;
  double upper = 0.0;
};
TiltHull tilt_hull(const TailStats& tail);

// Confidence interval {alpha : l(alpha) <= chi^2_1 quantile of 1 - theta},
// endpoints located by bisection to 1e-9 relative accuracy and clamped to
// the tiltable hull.
Interval ci_el(const TailStats& tail, double theta);

}  // namespace tailci
