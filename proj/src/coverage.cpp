#include "tailci/coverage.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <string>
#include <thread>

#include "tailci/bayes.hpp"
#include "tailci/errors.hpp"
#include "tailci/full_tilt.hpp"
#include "tailci/lr.hpp"
#include "tailci/rng.hpp"
#include "tailci/tilt.hpp"

namespace tailci {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

// Replications are aggregated in fixed-size blocks that are merged in block
// order, so floating-point sums do not depend on how many threads ran.
constexpr int kBlockSize = 16;

struct CellAcc {
  long cover = 0;
  double len_sum = 0.0;
  long len_count = 0;
  long failures = 0;
};

struct BlockAcc {
  std::vector<CellAcc> cells;   // indexed method-major, then k
  std::vector<double> p_sum;    // per k
  std::vector<long> p_count;    // per k
};

void validate(const SimConfig& c) {
  if (c.n < 3) throw ParseError("n must be at least 3");
  if (c.m < 1) throw ParseError("m must be at least 1");
  if (c.k_min < 2 || c.k_min > c.k_max || c.k_max > c.n - 1) {
    throw ParseError("k range [" + std::to_string(c.k_min) + ", " +
                     std::to_string(c.k_max) + "] invalid for n = " +
                     std::to_string(c.n));
  }
  if (!(c.level > 0.0 && c.level < 1.0)) {
    throw ParseError("level must lie strictly inside (0,1)");
  }
  if (c.methods.empty()) throw ParseError("at least one method is required");
  if (c.censor.has_value()) {
    for (Method m : c.methods) {
      if (m == Method::CL2) {
        throw ParseError(
            "method CL2 applies to complete data only; drop it or remove the "
            "censoring model");
      }
    }
    if (!(c.censor->index > 0.0)) throw ParseError("censor index must be positive");
  }
  if (!(c.target.index > 0.0)) throw ParseError("target index must be positive");
}

}  // namespace

Interval method_interval(Method method, const CensoredSample& sample,
                         const TailStats& tail, double theta) {
  switch (method) {
    case Method::EL: return ci_el(tail, theta);
    case Method::BCL: return ci_bcl(tail, theta);
    case Method::B: return ci_b(tail, theta);
    case Method::ML: return ci_ml(tail, theta);
    case Method::CL2: return ci_cl(sample, tail.k, theta);
  }
  throw NumericalFailure("unreachable method tag");
}

std::vector<CoverageRow> coverage_experiment(const SimConfig& config) {
  validate(config);

  // Deduplicate methods and fix their order so the output layout is stable.
  std::vector<Method> methods;
  for (Method m : all_methods) {
    if (std::find(config.methods.begin(), config.methods.end(), m) !=
        config.methods.end()) {
      methods.push_back(m);
    }
  }

  const int num_k = config.k_max - config.k_min + 1;
  const int num_cells = static_cast<int>(methods.size()) * num_k;
  const double alpha_true = config.target.index;
  const double theta = 1.0 - config.level;
  const int num_blocks = (config.m + kBlockSize - 1) / kBlockSize;

  std::vector<BlockAcc> blocks(num_blocks);
  std::atomic<int> next_block{0};

  const auto run_blocks = [&]() {
    for (;;) {
      const int b = next_block.fetch_add(1);
      if (b >= num_blocks) return;
      BlockAcc& acc = blocks[b];
      acc.cells.assign(num_cells, CellAcc{});
      acc.p_sum.assign(num_k, 0.0);
      acc.p_count.assign(num_k, 0);
      const int r_end = std::min(config.m, (b + 1) * kBlockSize);
      for (int r = b * kBlockSize; r < r_end; ++r) {
        const std::uint64_t seed =
            Rng::derive_seed(config.master_seed, static_cast<std::uint64_t>(r));
        const CensoredSample sample =
            config.censor.has_value()
                ? generate_censored(config.n, config.target, *config.censor, seed)
                : generate_complete(config.n, config.target, seed);
        for (int ki = 0; ki < num_k; ++ki) {
          const int k = config.k_min + ki;
          TailStats tail;
          bool tail_ok = true;
          try {
            tail = tail_view(sample, k);
          } catch (const Error&) {
            tail_ok = false;  // e.g. a threshold tie at this k
          }
          if (tail_ok) {
            acc.p_sum[ki] += tail.p_hat;
            acc.p_count[ki] += 1;
          }
          for (std::size_t mi = 0; mi < methods.size(); ++mi) {
            CellAcc& cell = acc.cells[mi * num_k + ki];
            if (!tail_ok) {
              cell.failures += 1;
              continue;
            }
            try {
              const Interval ci =
                  method_interval(methods[mi], sample, tail, theta);
              if (ci.contains(alpha_true)) cell.cover += 1;
              cell.len_sum += ci.length();
              cell.len_count += 1;
            } catch (const Error&) {
              cell.failures += 1;
            }
          }
        }
      }
    }
  };

  int num_threads = config.threads;
  if (num_threads <= 0) {
    num_threads = static_cast<int>(std::thread::hardware_concurrency());
    if (num_threads < 1) num_threads = 1;
  }
  num_threads = std::min(num_threads, num_blocks);
  if (num_threads <= 1) {
    run_blocks();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(num_threads);
    for (int t = 0; t < num_threads; ++t) pool.emplace_back(run_blocks);
    for (std::thread& t : pool) t.join();
  }

  // Merge blocks in index order: the summation order is fixed regardless of
  // which thread produced which block.
  std::vector<CellAcc> cells(num_cells);
  std::vector<double> p_sum(num_k, 0.0);
  std::vector<long> p_count(num_k, 0);
  for (const BlockAcc& acc : blocks) {
    for (int c = 0; c < num_cells; ++c) {
      cells[c].cover += acc.cells[c].cover;
      cells[c].len_sum += acc.cells[c].len_sum;
      cells[c].len_count += acc.cells[c].len_count;
      cells[c].failures += acc.cells[c].failures;
    }
    for (int ki = 0; ki < num_k; ++ki) {
      p_sum[ki] += acc.p_sum[ki];
      p_count[ki] += acc.p_count[ki];
    }
  }

  const double beta = config.censor.has_value() ? config.censor->index : kNan;
  std::vector<CoverageRow> rows;
  rows.reserve(num_cells);
  for (std::size_t mi = 0; mi < methods.size(); ++mi) {
    for (int ki = 0; ki < num_k; ++ki) {
      const CellAcc& cell = cells[mi * num_k + ki];
      CoverageRow row;
      row.beta = beta;
      row.method = methods[mi];
      row.k = config.k_min + ki;
      row.coverage = static_cast<double>(cell.cover) / config.m;
      row.avg_length =
          cell.len_count > 0 ? cell.len_sum / cell.len_count : kNan;
      row.p_bar = p_count[ki] > 0 ? p_sum[ki] / p_count[ki] : kNan;
      row.failures = cell.failures;
      rows.push_back(row);
    }
  }
  return rows;
}

std::vector<CoverageRow> optimal_k_summary(const std::vector<CoverageRow>& rows,
                                           double level) {
  // Group by (method, beta) preserving first appearance; within each group
  // keep the row with coverage closest to nominal, earliest (smallest) k on
  // ties.
  std::vector<CoverageRow> best;
  const auto same_group = [](const CoverageRow& a, const CoverageRow& b) {
    const bool beta_eq =
        (std::isnan(a.beta) && std::isnan(b.beta)) || a.beta == b.beta;
    return a.method == b.method && beta_eq;
  };
  for (const CoverageRow& row : rows) {
    bool found = false;
    for (CoverageRow& b : best) {
      if (same_group(b, row)) {
        if (std::fabs(row.coverage - level) < std::fabs(b.coverage - level)) {
          b = row;
        }
        found = true;
        break;
      }
    }
    if (!found) best.push_back(row);
  }
  return best;
}

}  // namespace tailci
