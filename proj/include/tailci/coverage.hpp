#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "tailci/interval.hpp"
#include "tailci/models.hpp"
#include "tailci/sample.hpp"

namespace tailci {

// Configuration of one Monte-Carlo coverage experiment: m replications of
// size-n samples from `target`, optionally right-censored by `censor`, with
// every requested interval method evaluated at every k in [k_min, k_max].
struct SimConfig {
  int n = 0;
  int m = 0;
  ModelSpec target;
  std::optional<ModelSpec> censor;  // absent = complete data
  int k_min = 0;
  int k_max = 0;
  double level = 0.95;
  std::vector<Method> methods;
  std::uint64_t master_seed = 1;
  int threads = 0;  // execution knob only (0 = auto); never affects results
};

// One aggregated cell of the coverage table.
struct CoverageRow {
  double beta = 0.0;  // censor tail index; NaN in complete-data experiments
  Method method = Method::ML;
  int k = 0;
  double coverage = 0.0;    // fraction of replications covering the truth
  double avg_length = 0.0;  // mean interval length over successful fits; NaN if none
  double p_bar = 0.0;       // mean uncensored proportion in the tail
  long failures = 0;        // replications where the method failed at this k
};

// Build the interval of one method on one sample. `tail` must be
// tail_view(sample, k) for the k of interest; the complete-data method reads
// the full sample.
Interval method_interval(Method method, const CensoredSample& sample,
                         const TailStats& tail, double theta);

// Run the experiment. Replication r draws its sample from a stream derived
// from (master_seed, r); failures count as non-coverage with their lengths
// excluded. Rows are ordered (method, k); results are bit-identical across
// runs and thread counts.
std::vector<CoverageRow> coverage_experiment(const SimConfig& config);

// Per method, the row whose coverage is closest to the nominal level
// (ties broken towards smaller k).
std::vector<CoverageRow> optimal_k_summary(const std::vector<CoverageRow>& rows,
                                           double level);

}  // namespace tailci
