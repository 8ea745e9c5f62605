#pragma once

#include <span>
#include <vector>

#include "tailci/interval.hpp"
#include "tailci/sample.hpp"
#include "tailci/tilt.hpp"

namespace tailci {

// Rate-parameterized Gamma posterior of the tail index: density
// proportional to x^{shape-1} e^{-rate x}.
struct GammaPosterior {
  double shape = 0.0;
  double rate = 0.0;
};

// Posterior under Jeffrey's prior for the censored tail likelihood:
// Gamma(sum of tail statuses, sum of log-excesses).
GammaPosterior posterior_jeffrey(const TailStats& tail);

// Composite-likelihood posterior at a given weight vector over the tail
// points: Gamma(k * sum w_i delta_i, k * sum w_i V_i). Uniform weights
// reproduce posterior_jeffrey exactly.
GammaPosterior posterior_cl(const TailStats& tail, std::span<const double> weights);
GammaPosterior posterior_cl(const TailStats& tail, const TiltedWeights& weights);

// Posterior mean (shape/rate) and posterior mode ((shape-1)/rate). The mode
// only exists for shape > 1; otherwise MapUndefined is thrown.
double posterior_mean(const GammaPosterior& post);
double posterior_mode(const GammaPosterior& post);

// Posterior quantile: inverse of the Gamma CDF at probability p.
double quantile(const GammaPosterior& post, double p);

// Highest posterior density interval with credibility 1 - theta: the
// shortest interval holding that posterior mass. For shape <= 1 the density
// is monotone nonincreasing, so the interval starts at 0; for shape > 1 the
// endpoints carry equal density.
Interval hpdi(const GammaPosterior& post, double theta);

// Default rank-power weight profile for the composite-likelihood interval:
// w_i proportional to i^0.2 with i = 1 at the largest excess, normalized to
// sum 1. Mildly downweights the most extreme excesses, which stabilizes the
// posterior against the bias of the largest order statistics.
std::vector<double> rank_power_weights(int k);

// Credible intervals used as confidence regions: plain Jeffrey-posterior
// HPDI, and composite-likelihood HPDI at the rank-power profile.
Interval ci_b(const TailStats& tail, double theta);
Interval ci_bcl(const TailStats& tail, double theta);

}  // namespace tailci
