#include "tailci/bayes.hpp"

#include <algorithm>
#include <cmath>

#include "tailci/errors.hpp"
#include "tailci/gamma_math.hpp"

namespace tailci {

GammaPosterior posterior_jeffrey(const TailStats& tail) {
  double sum_d = 0.0, sum_v = 0.0;
  for (std::size_t i = 0; i < tail.log_excesses.size(); ++i) {
    sum_d += tail.indicators[i];
    sum_v += tail.log_excesses[i];
  }
  if (sum_d <= 0.0) {
    throw AllCensored("every tail observation is censored");
  }
  return GammaPosterior{sum_d, sum_v};
}

GammaPosterior posterior_cl(const TailStats& tail, std::span<const double> weights) {
  const std::size_t k = tail.log_excesses.size();
  if (weights.size() != k) {
    throw ParseError("weight vector length does not match the tail size");
  }
  double sum_wd = 0.0, sum_wv = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    sum_wd += weights[i] * tail.indicators[i];
    sum_wv += weights[i] * tail.log_excesses[i];
  }
  const double kd = static_cast<double>(k);
  if (kd * sum_wd <= 0.0) {
    throw AllCensored("weighted status sum is zero: posterior degenerates");
  }
  return GammaPosterior{kd * sum_wd, kd * sum_wv};
}

GammaPosterior posterior_cl(const TailStats& tail, const TiltedWeights& weights) {
  return posterior_cl(tail, std::span<const double>(weights.weights));
}

double posterior_mean(const GammaPosterior& post) {
  return post.shape / post.rate;
}

double posterior_mode(const GammaPosterior& post) {
  if (post.shape <= 1.0) {
    throw MapUndefined("posterior mode requires shape > 1");
  }
  return (post.shape - 1.0) / post.rate;
}

double quantile(const GammaPosterior& post, double p) {
  return gamma_quantile(post.shape, post.rate, p);
}

Interval hpdi(const GammaPosterior& post, double theta) {
  Interval ci;
  ci.level = 1.0 - theta;
  ci.method = Method::B;

  if (post.shape <= 1.0) {
    // Monotone nonincreasing density: the shortest interval starts at zero.
    ci.lower = 0.0;
    ci.upper = gamma_quantile(post.shape, post.rate, 1.0 - theta);
    return ci;
  }

  // For each candidate lower endpoint a, the upper endpoint b(a) is pinned
  // by the coverage constraint; the optimum equalizes the density at the two
  // ends. g(a) = log f(a) - log f(b(a)) is increasing in a, negative for
  // a near 0 and positive at the mode, so it brackets a root.
  const double mode = (post.shape - 1.0) / post.rate;
  const auto logf = [&](double x) {
    return (post.shape - 1.0) * std::log(x) - post.rate * x;
  };
  const auto upper_for = [&](double a) {
    const double pa = gamma_cdf(post.shape, post.rate, a);
    return gamma_quantile(post.shape, post.rate, pa + 1.0 - theta);
  };
  const auto g = [&](double a) { return logf(a) - logf(upper_for(a)); };

  const double amax = gamma_quantile(post.shape, post.rate, theta);
  double lo = mode * 1e-6;
  double hi = std::min(mode, amax) * (1.0 - 1e-12);
  double a;
  if (g(lo) > 0.0) {
    // Density so flat near zero that the optimum is indistinguishable from
    // the left edge at this scale.
    a = lo;
  } else {
    for (int it = 0; it < 200 && hi - lo > 1e-14 * mode; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (g(mid) < 0.0) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    a = 0.5 * (lo + hi);
  }
  ci.lower = a;
  ci.upper = upper_for(a);
  return ci;
}

std::vector<double> rank_power_weights(int k) {
  std::vector<double> w(k);
  double total = 0.0;
  for (int i = 0; i < k; ++i) {
    w[i] = std::pow(static_cast<double>(i + 1), 0.2);
    total += w[i];
  }
  for (double& x : w) x /= total;
  return w;
}

Interval ci_b(const TailStats& tail, double theta) {
  Interval ci = hpdi(posterior_jeffrey(tail), theta);
  ci.method = Method::B;
  return ci;
}

Interval ci_bcl(const TailStats& tail, double theta) {
  const std::vector<double> w = rank_power_weights(tail.k);
  Interval ci = hpdi(posterior_cl(tail, w), theta);
  ci.method = Method::BCL;
  return ci;
}

}  // namespace tailci
