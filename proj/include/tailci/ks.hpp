#pragma once

#include <vector>

#include "tailci/sample.hpp"

namespace tailci {

// Large-sample 5% critical value of the heavy-tail supremum test.
inline constexpr double ks_critical_095 = 1.076;

// Supremum-type test statistic of the heavy-tail hypothesis on the top k
// observations:
//   KS(k) = sup_{r>1} sqrt(k) | (1/k) #{X_i > r u} - r^{-alpha_hat} |,
// with u the (k+1)-th largest value and alpha_hat the inverse Hill estimate.
// The supremum is evaluated exactly over the jump points of the empirical
// tail (both one-sided limits at every distinct excess ratio). Requires
// complete data and 1 <= k <= n-1.
double ks_stat(const CensoredSample& sample, int k);

struct KsRow {
  int k = 0;
  double stat = 0.0;
  bool reject = false;  // stat > ks_critical_095
};

// Statistic and 5%-level decision for every k in [k_min, k_max].
std::vector<KsRow> ks_scan(const CensoredSample& sample, int k_min, int k_max);

}  // namespace tailci
