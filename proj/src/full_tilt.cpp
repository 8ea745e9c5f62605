#include "tailci/full_tilt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "tailci/errors.hpp"
#include "tailci/gamma_math.hpp"
#include "tailci/lr.hpp"

namespace tailci {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_complete(const CensoredSample& sample) {
  if (!sample.complete()) {
    throw ParseError("this estimator requires complete (uncensored) data");
  }
}

}  // namespace

WeightedEstimates weighted_estimators(const CensoredSample& sample, int k,
                                      std::span<const double> weights) {
  require_complete(sample);
  const std::size_t n = sample.values.size();
  if (weights.size() != n) {
    throw ParseError("weight vector length does not match the sample size");
  }
  // Reuse the tail extraction for threshold validation (range of k, ties).
  const TailStats tail = tail_view(sample, k);
  const double u = tail.threshold;

  double sum_wd = 0.0;
  double sum_wdlog = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (sample.values[i] > u) {
      sum_wd += weights[i];
      sum_wdlog += weights[i] * std::log(sample.values[i] / u);
    }
  }
  const double nn = static_cast<double>(n);
  const double num = sum_wd - 1.0 / nn;
  const double den = sum_wdlog + std::log(u) / nn;
  if (!(num > 0.0) || !(den > 0.0)) {
    throw EstimatorUndefined(
        "weighted tail-index estimator has a nonpositive numerator or "
        "denominator");
  }
  WeightedEstimates est;
  est.alpha_hat = num / den;
  est.c_hat = std::pow(u, est.alpha_hat) * (2.0 * nn / (2.0 * nn - 1.0)) * sum_wd;
  return est;
}

CompleteTilt solve_multipliers(const CensoredSample& sample, int k, double alpha) {
  require_complete(sample);
  if (!(alpha > 0.0)) {
    throw NumericalFailure("tail index must be strictly positive");
  }
  const TailStats tail = tail_view(sample, k);
  const std::vector<double>& z = tail.log_excesses;
  const std::size_t n = sample.values.size();
  const double nn = static_cast<double>(n);
  const double t = 1.0 / alpha;

  double zmin = kInf, zmax = -kInf, zmean = 0.0;
  for (double v : z) {
    zmin = std::min(zmin, v);
    zmax = std::max(zmax, v);
    zmean += v;
  }
  zmean /= k;

  // Inner problem: lambda2 from the exceedance constraint. phi is strictly
  // decreasing with range (zmin, zmax); exponentials are centered at the
  // mean excess for stability.
  double lambda2 = 0.0;
  if (zmin == zmax) {
    if (t != zmin) {
      throw NoInteriorSolution(
          "constraint target outside the range of the tail excesses");
    }
  } else {
    if (!(zmin < t && t < zmax)) {
      throw NoInteriorSolution(
          "constraint target outside the range of the tail excesses");
    }
    const auto phi = [&](double lambda) {
      double sw = 0.0, swz = 0.0;
      for (double v : z) {
        const double w = std::exp(-lambda * (v - zmean));
        sw += w;
        swz += w * v;
      }
      return swz / sw;
    };
    double half = 1.0;
    while (phi(-half) < t || phi(half) > t) {
      half *= 2.0;
      if (half > 1e12) {
        throw NumericalFailure("constraint-multiplier bracket exhausted");
      }
    }
    double lo = -half, hi = half;
    for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::fabs(lo) + std::fabs(hi)); ++it) {
      const double mid = 0.5 * (lo + hi);
      if (phi(mid) > t) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    lambda2 = 0.5 * (lo + hi);
  }

  // Normalization term: log of (n - k) + sum_i e^{-lambda2 (Z_i - t)},
  // accumulated in log space so extreme tilts cannot overflow.
  double amax = 0.0;  // exponent of the (n - k) block
  for (double v : z) amax = std::max(amax, -lambda2 * (v - t));
  double bulk = (nn - k) * std::exp(-amax);
  for (double v : z) bulk += std::exp(-lambda2 * (v - t) - amax);
  const double log_norm = amax + std::log(bulk);  // log((n-k) + S)

  // Outer problem: normalization residual h(lambda1) = 1 - e^{-1-lambda1}
  // * ((n-k) + S)/n is increasing in lambda1. Start from the entropy
  // bracket around -1 and widen by doubling until the root is straddled.
  const auto h = [&](double l1) {
    return 1.0 - std::exp(-1.0 - l1 + log_norm - std::log(nn));
  };
  const double rk = std::sqrt(static_cast<double>(k)) / (nn - k);
  double lo1 = -1.0 - std::log1p(rk);
  double hi1 = rk < 1.0 ? -1.0 - std::log(1.0 - rk) : lo1 + 1.0;
  double step = hi1 - lo1;
  while (h(lo1) > 0.0) {
    lo1 -= step;
    step *= 2.0;
    if (step > 1e12) throw NumericalFailure("normalization bracket exhausted");
  }
  while (h(hi1) < 0.0) {
    hi1 += step;
    step *= 2.0;
    if (step > 1e12) throw NumericalFailure("normalization bracket exhausted");
  }
  for (int it = 0; it < 200 && hi1 - lo1 > 1e-15 * std::max(1.0, std::fabs(lo1) + std::fabs(hi1)); ++it) {
    const double mid = 0.5 * (lo1 + hi1);
    if (h(mid) < 0.0) {
      lo1 = mid;
    } else {
      hi1 = mid;
    }
  }
  const double lambda1 = 0.5 * (lo1 + hi1);

  // Weights and statistic from the exact log-weight forms
  //   log(n w_i) = -1 - lambda1                       off the tail,
  //   log(n w_i) = -1 - lambda1 - lambda2 (Z_i - t)   on the tail.
  CompleteTilt tilt;
  tilt.alpha = alpha;
  tilt.lambda1 = lambda1;
  tilt.lambda2 = lambda2;
  tilt.weights.assign(n, 0.0);
  const double lognw_off = -1.0 - lambda1;
  const double w_off = std::exp(lognw_off) / nn;
  double stat = (nn - static_cast<double>(k)) * w_off * lognw_off;
  for (std::size_t i = 0; i < n; ++i) tilt.weights[i] = w_off;
  for (std::size_t i = 0; i < n; ++i) {
    if (sample.values[i] > tail.threshold) {
      const double zi = std::log(sample.values[i] / tail.threshold);
      const double lognw = lognw_off - lambda2 * (zi - t);
      const double w = std::exp(lognw) / nn;
      tilt.weights[i] = w;
      stat += w * lognw;
    }
  }
  tilt.statistic = std::max(0.0, 2.0 * nn * stat);
  return tilt;
}

double cl_stat(const CensoredSample& sample, int k, double alpha) {
  return solve_multipliers(sample, k, alpha).statistic;
}

namespace {

double cl_stat_or_inf(const CensoredSample& sample, int k, double alpha) {
  try {
    return cl_stat(sample, k, alpha);
  } catch (const NoInteriorSolution&) {
    return kInf;
  }
}

}  // namespace

Interval ci_cl(const CensoredSample& sample, int k, double theta) {
  require_complete(sample);
  const TailStats tail = tail_view(sample, k);
  double zmin = kInf, zmax = -kInf;
  for (double v : tail.log_excesses) {
    zmin = std::min(zmin, v);
    zmax = std::max(zmax, v);
  }
  if (zmin == zmax) {
    throw DegenerateHull("all tail excesses coincide: no tiltable range");
  }
  // The tilt exists for 1/alpha inside (zmin, zmax); the statistic vanishes
  // at alpha = 1/hill and grows towards the edges of that range.
  const double center = 1.0 / hill(tail);
  const double lo_edge = 1.0 / zmax;
  const double hi_edge = 1.0 / zmin;
  const double q = chi2_quantile_1(1.0 - theta);
  const double tol = 1e-8 * center;

  Interval ci;
  ci.level = 1.0 - theta;
  ci.method = Method::CL2;

  double a = lo_edge * (1.0 + 1e-12);
  double b = center;
  if (cl_stat_or_inf(sample, k, a) <= q) {
    ci.lower = lo_edge;
  } else {
    while (b - a > tol) {
      const double mid = 0.5 * (a + b);
      if (cl_stat_or_inf(sample, k, mid) > q) {
        a = mid;
      } else {
        b = mid;
      }
    }
    ci.lower = 0.5 * (a + b);
  }

  a = center;
  b = hi_edge * (1.0 - 1e-12);
  if (cl_stat_or_inf(sample, k, b) <= q) {
    ci.upper = hi_edge;
  } else {
    while (b - a > tol) {
      const double mid = 0.5 * (a + b);
      if (cl_stat_or_inf(sample, k, mid) > q) {
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
