#include "tailci/ks.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tailci/errors.hpp"

namespace tailci {

namespace {

// Statistic from the ascending tail ratios s_1 <= ... <= s_k (all > 1).
// The empirical tail is piecewise constant with jumps at the s values and
// r^{-alpha} is monotone, so the supremum over r > 1 is attained at a
// one-sided limit at some distinct s: check both sides of every jump.
double stat_from_ratios(const std::vector<double>& s) {
  const int k = static_cast<int>(s.size());
  double sum_log = 0.0;
  for (double x : s) sum_log += std::log(x);
  const double alpha_hat = k / sum_log;  // inverse Hill estimate

  double best = 0.0;
  int i = 0;
  while (i < k) {
    int j = i;
    while (j < k && s[j] == s[i]) ++j;  // block of tied ratios
    const double model = std::pow(s[i], -alpha_hat);
    const double surv_left = static_cast<double>(k - i) / k;  // limit from below
    const double surv_at = static_cast<double>(k - j) / k;    // value at the jump
    best = std::max(best, std::fabs(surv_left - model));
    best = std::max(best, std::fabs(surv_at - model));
    i = j;
  }
  return std::sqrt(static_cast<double>(k)) * best;
}

std::vector<double> sorted_values(const CensoredSample& sample) {
  if (!sample.complete()) {
    throw ParseError("the heavy-tail test requires complete (uncensored) data");
  }
  if (sample.values.size() != sample.statuses.size()) {
    throw ParseError("sample has mismatched values/statuses lengths");
  }
  std::vector<double> v = sample.values;
  std::sort(v.begin(), v.end());
  return v;
}

double stat_at_k(const std::vector<double>& sorted, int k) {
  const int n = static_cast<int>(sorted.size());
  if (k < 1 || k > n - 1) {
    throw InvalidK("k = " + std::to_string(k) + " outside 1..n-1 for n = " +
                   std::to_string(n));
  }
  const double threshold = sorted[n - 1 - k];
  if (!(threshold > 0.0) || !std::isfinite(threshold)) {
    throw ParseError("observations must be finite and strictly positive");
  }
  if (!(sorted[n - k] > threshold)) {
    throw ThresholdTie(
        "the k-th and (k+1)-th largest observations coincide at k = " +
        std::to_string(k) + "; choose a different k");
  }
  std::vector<double> ratios(sorted.begin() + (n - k), sorted.end());
  for (double& r : ratios) r /= threshold;
  return stat_from_ratios(ratios);
}

}  // namespace

double ks_stat(const CensoredSample& sample, int k) {
  return stat_at_k(sorted_values(sample), k);
}

std::vector<KsRow> ks_scan(const CensoredSample& sample, int k_min, int k_max) {
  const std::vector<double> sorted = sorted_values(sample);
  const int n = static_cast<int>(sorted.size());
  if (k_min < 2 || k_min > k_max || k_max > n - 1) {
    throw InvalidK("scan range [" + std::to_string(k_min) + ", " +
                   std::to_string(k_max) + "] invalid for n = " +
                   std::to_string(n));
  }
  std::vector<KsRow> rows;
  rows.reserve(k_max - k_min + 1);
  for (int k = k_min; k <= k_max; ++k) {
    const double stat = stat_at_k(sorted, k);
    rows.push_back(KsRow{k, stat, stat > ks_critical_095});
  }
  return rows;
}

}  // namespace tailci
