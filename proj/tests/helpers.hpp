#pragma once

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "tailci/rng.hpp"
#include "tailci/sample.hpp"

namespace testutil {

// Standard Pareto with survival x^{-alpha} on [1, inf); inverse-transform draw.
inline std::vector<double> pareto_values(int n, double alpha, std::uint64_t seed) {
  tailci::Rng rng(seed);
  std::vector<double> out(static_cast<std::size_t>(n));
  for (auto& x : out) x = std::pow(rng.next_uniform(), -1.0 / alpha);
  return out;
}

inline tailci::CensoredSample complete_sample(std::vector<double> values) {
  tailci::CensoredSample s;
  s.statuses.assign(values.size(), 1.0);
  s.values = std::move(values);
  return s;
}

inline tailci::CensoredSample make_sample(std::vector<double> values,
                                          std::vector<double> statuses) {
  tailci::CensoredSample s;
  s.values = std::move(values);
  s.statuses = std::move(statuses);
  return s;
}

// Builds tail statistics directly from already-ordered tail data: `excesses`
// are the log-excesses in nonincreasing order, `indicators` the matching
// censoring statuses. Useful when a test pins the tail itself rather than a
// raw sample.
inline tailci::TailStats make_tail(std::vector<double> excesses,
                                   std::vector<double> indicators,
                                   double threshold = 1.0, int n = 0) {
  tailci::TailStats t;
  t.k = static_cast<int>(excesses.size());
  t.n = n == 0 ? t.k + 1 : n;
  t.threshold = threshold;
  t.log_excesses = std::move(excesses);
  t.indicators = std::move(indicators);
  double sum = 0.0;
  for (double d : t.indicators) sum += d;
  t.p_hat = t.k == 0 ? 0.0 : sum / t.k;
  return t;
}

}  // namespace testutil
