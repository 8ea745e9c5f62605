#pragma once

#include <vector>

namespace tailci {

// A sample under random right censoring: values[i] = min(X_i, Y_i) and
// statuses[i] = 1 when the event time X_i was observed (0 = censored).
// A complete sample is the special case with every status equal to 1.
struct CensoredSample {
  std::vector<double> values;
  std::vector<double> statuses;  // entries are exactly 0.0 or 1.0

  bool complete() const {
    for (double s : statuses) {
      if (s != 1.0) return false;
    }
    return true;
  }
};

// Sufficient statistics of the k largest observations: log-excesses over the
// threshold (the (k+1)-th largest value), with censoring statuses carried
// along as concomitants, largest observation first.
struct TailStats {
  int n = 0;             // original sample size
  int k = 0;             // number of exceedances used
  double threshold = 0;  // (k+1)-th largest observation
  std::vector<double> log_excesses;  // V_i = log(Z_(n-i+1) / threshold), nonincreasing
  std::vector<double> indicators;    // concomitant statuses, same order
  double p_hat = 0;                  // mean of indicators
};

// Extract the top-k view of the sample. Requires 2 <= k <= n-1 and a strict
// gap between the k-th and (k+1)-th largest values (ties at the threshold
// make the log-excesses degenerate and are rejected).
TailStats tail_view(const CensoredSample& sample, int k);

// Hill estimator of the extreme value index: mean log-excess.
double hill(const TailStats& tail);

// Censoring-adjusted Hill estimator: hill / p_hat. Throws AllCensored when
// no uncensored observation is left in the tail.
double censored_hill(const TailStats& tail);

}  // namespace tailci
