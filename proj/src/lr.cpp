#include "tailci/lr.hpp"

#include <cmath>

#include "tailci/errors.hpp"
#include "tailci/gamma_math.hpp"

namespace tailci {

double ml_alpha(const TailStats& tail) {
  double sum_d = 0.0, sum_v = 0.0;
  for (std::size_t i = 0; i < tail.log_excesses.size(); ++i) {
    sum_d += tail.indicators[i];
    sum_v += tail.log_excesses[i];
  }
  if (sum_d <= 0.0) {
    throw AllCensored("every tail observation is censored");
  }
  return sum_d / sum_v;
}

double lr_stat(const TailStats& tail, double alpha) {
  const double a_ml = ml_alpha(tail);
  const double ratio = alpha / a_ml;
  const double kp = tail.k * tail.p_hat;
  return 2.0 * kp * (ratio - 1.0 - std::log(ratio));
}

Interval ci_ml(const TailStats& tail, double theta) {
  const double a_ml = ml_alpha(tail);
  const double q = chi2_quantile_1(1.0 - theta);
  const double tol = 1e-9 * a_ml;

  Interval ci;
  ci.level = 1.0 - theta;
  ci.method = Method::ML;

  // R diverges at 0+ and +inf, so halving/doubling always brackets the
  // threshold crossing on each side of the minimum.
  double lo = 0.5 * a_ml;
  while (lr_stat(tail, lo) < q) lo *= 0.5;
  double a = lo, b = a_ml;
  while (b - a > tol) {
    const double mid = 0.5 * (a + b);
    if (lr_stat(tail, mid) > q) {
      a = mid;
    } else {
      b = mid;
    }
  }
  ci.lower = 0.5 * (a + b);

  double hi = 2.0 * a_ml;
  while (lr_stat(tail, hi) < q) hi *= 2.0;
  a = a_ml, b = hi;
  while (b - a > tol) {
    const double mid = 0.5 * (a + b);
    if (lr_stat(tail, mid) > q) {
      b = mid;
    } else {
      a = mid;
    }
  }
  ci.upper = 0.5 * (a + b);
  return ci;
}

}  // namespace tailci
