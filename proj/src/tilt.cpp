#include "tailci/tilt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tailci/errors.hpp"
#include "tailci/gamma_math.hpp"
#include "tailci/lr.hpp"

namespace tailci {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

std::vector<double> score_terms(const TailStats& tail, double alpha) {
  std::vector<double> u(tail.log_excesses.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    u[i] = tail.indicators[i] / alpha - tail.log_excesses[i];
  }
  return u;
}

double solve_lambda(std::span<const double> u) {
  double umin = kInf, umax = -kInf;
  for (double x : u) {
    umin = std::min(umin, x);
    umax = std::max(umax, x);
  }
  if (umin == 0.0 && umax == 0.0) return 0.0;  // already balanced
  if (!(umin < 0.0) || !(umax > 0.0)) {
    throw NoInteriorSolution(
        "score terms are single-signed: no tilt balances them");
  }
  // 1 + lambda*u_i > 0 for all i exactly on (-1/umax, -1/umin); the objective
  // diverges to -inf / +inf at the ends, so a root is bracketed. Endpoints
  // are pulled in slightly to avoid evaluating at the poles.
  double lo = -1.0 / umax;
  double hi = -1.0 / umin;
  const double width = hi - lo;
  lo += 1e-12 * width;
  hi -= 1e-12 * width;
  const auto g = [&u](double lambda) {
    double s = 0.0;
    for (double x : u) s += x / (1.0 + lambda * x);
    return s;
  };
  for (int it = 0; it < 300 && hi - lo > 1e-12; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (g(mid) > 0.0) {
      lo = mid;  // g is strictly decreasing
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

TiltedWeights tilt_weights(const TailStats& tail, double alpha) {
  const std::vector<double> u = score_terms(tail, alpha);
  TiltedWeights tw;
  tw.alpha = alpha;
  tw.lambda = solve_lambda(u);
  tw.weights.resize(u.size());
  const double k = static_cast<double>(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    tw.weights[i] = 1.0 / (k * (1.0 + tw.lambda * u[i]));
  }
  return tw;
}

double elr_stat(const TailStats& tail, double alpha) {
  const std::vector<double> u = score_terms(tail, alpha);
  double lambda;
  try {
    lambda = solve_lambda(u);
  } catch (const NoInteriorSolution&) {
    return kInf;
  }
  double stat = 0.0;
  for (double x : u) stat += std::log1p(lambda * x);
  return std::max(0.0, 2.0 * stat);
}

TiltHull tilt_hull(const TailStats& tail) {
  // u_i(alpha) = delta_i/alpha - V_i. Censored scores are always negative;
  // an uncensored score is positive iff alpha < 1/V_i. Mixed signs therefore
  // require alpha < 1/min(uncensored V), and - when nothing is censored -
  // alpha > 1/max(V).
  double vmin = kInf, vmax = -kInf;
  bool any_censored = false;
  bool any_uncensored = false;
  for (std::size_t i = 0; i < tail.log_excesses.size(); ++i) {
    if (tail.indicators[i] > 0.5) {
      any_uncensored = true;
      vmin = std::min(vmin, tail.log_excesses[i]);
      vmax = std::max(vmax, tail.log_excesses[i]);
    } else {
      any_censored = true;
    }
  }
  if (!any_uncensored) {
    throw AllCensored("every tail observation is censored");
  }
  TiltHull hull;
  hull.upper = 1.0 / vmin;
  hull.lower = any_censored ? 0.0 : 1.0 / vmax;
  if (!(hull.lower < hull.upper)) {
    throw DegenerateHull(
        "all scores coincide: the tiltable hull has no interior");
  }
  return hull;
}

Interval ci_el(const TailStats& tail, double theta) {
  const TiltHull hull = tilt_hull(tail);
  const double center = ml_alpha(tail);
  const double q = chi2_quantile_1(1.0 - theta);
  const double tol = 1e-9 * center;

  // l(alpha) increases from 0 at the ML index towards +inf at the hull
  // edges; each endpoint is the crossing of l with the chi^2 threshold,
  // found by bisection on the exceedance predicate. If l never reaches the
  // threshold on one side, the interval is clamped to that hull edge.
  Interval ci;
  ci.level = 1.0 - theta;
  ci.method = Method::EL;

  double a = hull.lower > 0.0 ? hull.lower * (1.0 + 1e-12) : center * 1e-12;
  double b = center;
  if (elr_stat(tail, a) <= q) {
    ci.lower = hull.lower;
  } else {
    while (b - a > tol) {
      const double mid = 0.5 * (a + b);
      if (elr_stat(tail, mid) > q) {
        a = mid;
      } else {
        b = mid;
      }
    }
    ci.lower = 0.5 * (a + b);
  }

  a = center;
  b = hull.upper * (1.0 - 1e-12);
  if (elr_stat(tail, b) <= q) {
    ci.upper = hull.upper;
  } else {
    while (b - a > tol) {
      const double mid = 0.5 * (a + b);
      if (elr_stat(tail, mid) > q) {
        b = mid;
      } else {
        a = mid;
      }
    }
    ci.upper = 0.5 * (a + b);
  }
  return ci;
}

}  // namespace tailci
