#include "tailci/sample.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "tailci/errors.hpp"

namespace tailci {

TailStats tail_view(const CensoredSample& sample, int k) {
  const std::size_t n = sample.values.size();
  if (sample.statuses.size() != n) {
    throw ParseError("sample has " + std::to_string(n) + " values but " +
                     std::to_string(sample.statuses.size()) + " statuses");
  }
  if (n < 2) throw ParseError("sample must contain at least 2 observations");
  if (k < 2 || static_cast<std::size_t>(k) > n - 1) {
    throw InvalidK("k = " + std::to_string(k) + " outside 2..n-1 for n = " +
                   std::to_string(n));
  }

  // Sort indices by (value, index): ties keep their original relative order,
  // so concomitant statuses follow values deterministically.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (sample.values[a] != sample.values[b]) {
      return sample.values[a] < sample.values[b];
    }
    return a < b;
  });

  const double threshold = sample.values[order[n - 1 - k]];
  if (!(threshold > 0.0) || !std::isfinite(threshold)) {
    throw ParseError("observations must be finite and strictly positive");
  }
  if (!(sample.values[order[n - k]] > threshold)) {
    throw ThresholdTie(
        "the k-th and (k+1)-th largest observations coincide at k = " +
        std::to_string(k) + "; choose a different k");
  }

  TailStats tail;
  tail.n = static_cast<int>(n);
  tail.k = k;
  tail.threshold = threshold;
  tail.log_excesses.reserve(k);
  tail.indicators.reserve(k);
  double sum_ind = 0.0;
  for (int i = 1; i <= k; ++i) {
    const std::size_t idx = order[n - i];  // i-th largest observation
    const double value = sample.values[idx];
    if (!std::isfinite(value)) {
      throw ParseError("observations must be finite and strictly positive");
    }
    tail.log_excesses.push_back(std::log(value / threshold));
    tail.indicators.push_back(sample.statuses[idx]);
    sum_ind += sample.statuses[idx];
  }
  tail.p_hat = sum_ind / k;
  return tail;
}

double hill(const TailStats& tail) {
  double sum = 0.0;
  for (double v : tail.log_excesses) sum += v;
  return sum / tail.k;
}

double censored_hill(const TailStats& tail) {
  if (tail.p_hat <= 0.0) {
    throw AllCensored("every tail observation is censored");
  }
  return hill(tail) / tail.p_hat;
}

}  // namespace tailci
