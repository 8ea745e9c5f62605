// Command-line surface of the tail-index toolkit: point estimation and
// confidence regions on CSV samples, k-sweeps, the heavy-tail test, and the
// Monte-Carlo coverage engine. Exit codes: 0 success, 1 estimator failure,
// 2 usage / input errors.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tailci/bayes.hpp"
#include "tailci/coverage.hpp"
#include "tailci/errors.hpp"
#include "tailci/full_tilt.hpp"
#include "tailci/io.hpp"
#include "tailci/ks.hpp"
#include "tailci/lr.hpp"
#include "tailci/sample.hpp"
#include "tailci/tilt.hpp"

namespace {

using tailci::CensoredSample;
using tailci::Interval;
using tailci::Method;
using tailci::TailStats;

int exit_code_for(const tailci::Error& e) {
  const std::string tag = e.tag();
  if (tag == "parse_error" || tag == "invalid_k" || tag == "threshold_tie" ||
      tag == "invalid_uniform") {
    return 2;
  }
  return 1;
}

// Writes to the given path, or to stdout for "" / "-".
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_.open(path);
      if (!file_) throw tailci::ParseError("cannot open output file '" + path + "'");
      os_ = &file_;
    } else {
      os_ = &std::cout;
    }
  }
  std::ostream& os() { return *os_; }

 private:
  std::ofstream file_;
  std::ostream* os_ = nullptr;
};

std::vector<Method> parse_methods_flag(const std::string& flag,
                                       bool complete_data) {
  std::vector<Method> methods;
  if (flag.empty()) {
    for (Method m : tailci::all_methods) {
      if (m == Method::CL2 && !complete_data) continue;
      methods.push_back(m);
    }
    return methods;
  }
  std::stringstream ss(flag);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    const Method m = tailci::parse_method(tok);
    if (m == Method::CL2 && !complete_data) {
      throw tailci::ParseError(
          "method CL2 applies to complete data only, but the input contains "
          "censored observations");
    }
    methods.push_back(m);
  }
  if (methods.empty()) throw tailci::ParseError("--methods: empty list");
  return methods;
}

double point_estimate_for(Method m, const TailStats& tail) {
  switch (m) {
    case Method::EL:
    case Method::ML:
    case Method::B:
      return tailci::ml_alpha(tail);
    case Method::BCL:
      return tailci::posterior_mean(
          tailci::posterior_cl(tail, tailci::rank_power_weights(tail.k)));
    case Method::CL2:
      return 1.0 / tailci::hill(tail);
  }
  return 0.0;
}

struct EstimateArgs {
  std::string input;
  int k = 0;
  double level = 0.95;
  std::string methods;
  std::string out;
};

int run_estimate(const EstimateArgs& args) {
  const CensoredSample sample = tailci::read_censored_csv_file(args.input);
  const bool complete = sample.complete();
  const std::vector<Method> methods = parse_methods_flag(args.methods, complete);
  const TailStats tail = tailci::tail_view(sample, args.k);
  const double theta = 1.0 - args.level;

  Output output(args.out);
  std::ostream& os = output.os();
  bool estimator_failed = false;

  os << "n = " << tail.n << "\n";
  os << "k = " << tail.k << "\n";
  os << "threshold = " << tailci::format_double(tail.threshold) << "\n";
  os << "p_hat = " << tailci::format_double(tail.p_hat) << "\n";
  os << "complete = " << (complete ? "yes" : "no") << "\n";
  os << "hill = " << tailci::format_double(tailci::hill(tail)) << "\n";

  const auto report_value = [&](const std::string& name, auto&& compute) {
    try {
      os << name << " = " << tailci::format_double(compute()) << "\n";
    } catch (const tailci::Error& e) {
      os << name << " = undefined (" << e.tag() << ": " << e.what() << ")\n";
      if (std::string(e.tag()) != "map_undefined") estimator_failed = true;
    }
  };
  report_value("censored_hill", [&] { return tailci::censored_hill(tail); });
  report_value("ml_alpha", [&] { return tailci::ml_alpha(tail); });
  report_value("mpe_jeffrey",
               [&] { return tailci::posterior_mean(tailci::posterior_jeffrey(tail)); });
  report_value("map_jeffrey",
               [&] { return tailci::posterior_mode(tailci::posterior_jeffrey(tail)); });
  // Composite-likelihood point estimates at uniform weights coincide with
  // the Jeffrey-posterior ones; reported for completeness.
  const std::vector<double> uniform(tail.k, 1.0 / tail.k);
  report_value("mpe_cl_uniform", [&] {
    return tailci::posterior_mean(tailci::posterior_cl(tail, uniform));
  });
  report_value("map_cl_uniform", [&] {
    return tailci::posterior_mode(tailci::posterior_cl(tail, uniform));
  });
  if (complete) {
    report_value("weighted_alpha_uniform", [&] {
      const std::vector<double> w(sample.values.size(),
                                  1.0 / sample.values.size());
      return tailci::weighted_estimators(sample, args.k, w).alpha_hat;
    });
  }

  os << "level = " << tailci::format_double(args.level) << "\n";
  for (Method m : methods) {
    try {
      const Interval ci = tailci::method_interval(m, sample, tail, theta);
      os << tailci::method_name(m) << ": [" << tailci::format_double(ci.lower)
         << ", " << tailci::format_double(ci.upper)
         << "]  length = " << tailci::format_double(ci.length()) << "\n";
    } catch (const tailci::Error& e) {
      os << tailci::method_name(m) << ": error (" << e.tag() << ") " << e.what()
         << "\n";
      estimator_failed = true;
    }
  }
  return estimator_failed ? 1 : 0;
}

struct SweepArgs {
  std::string input;
  int k_min = 0;
  int k_max = 0;
  double level = 0.95;
  std::string methods;
  std::string out;
};

int run_sweep(const SweepArgs& args) {
  const CensoredSample sample = tailci::read_censored_csv_file(args.input);
  const bool complete = sample.complete();
  const std::vector<Method> methods = parse_methods_flag(args.methods, complete);
  const int n = static_cast<int>(sample.values.size());
  if (args.k_min < 2 || args.k_min > args.k_max || args.k_max > n - 1) {
    throw tailci::InvalidK("sweep range [" + std::to_string(args.k_min) + ", " +
                           std::to_string(args.k_max) + "] invalid for n = " +
                           std::to_string(n));
  }
  const double theta = 1.0 - args.level;

  Output output(args.out);
  std::ostream& os = output.os();
  os << "k,method,alpha_hat,lower,upper,length,p_hat,status\n";
  for (int k = args.k_min; k <= args.k_max; ++k) {
    TailStats tail;
    bool tail_ok = true;
    std::string tail_err;
    try {
      tail = tailci::tail_view(sample, k);
    } catch (const tailci::Error& e) {
      tail_ok = false;
      tail_err = e.tag();
    }
    for (Method m : methods) {
      os << k << ',' << tailci::method_name(m) << ',';
      if (!tail_ok) {
        os << ",,,,," << tail_err << "\n";
        continue;
      }
      std::string alpha_hat;
      try {
        alpha_hat = tailci::format_double(point_estimate_for(m, tail));
      } catch (const tailci::Error&) {
        alpha_hat.clear();
      }
      try {
        const Interval ci = tailci::method_interval(m, sample, tail, theta);
        os << alpha_hat << ',' << tailci::format_double(ci.lower) << ','
           << tailci::format_double(ci.upper) << ','
           << tailci::format_double(ci.length()) << ','
           << tailci::format_double(tail.p_hat) << ",ok\n";
      } catch (const tailci::Error& e) {
        os << alpha_hat << ",,,," << tailci::format_double(tail.p_hat) << ','
           << e.tag() << "\n";
      }
    }
  }
  return 0;
}

struct KsArgs {
  std::string input;
  int k_min = 0;
  int k_max = 0;
  std::string out;
};

int run_ks(const KsArgs& args) {
  const CensoredSample sample = tailci::read_censored_csv_file(args.input);
  const auto rows = tailci::ks_scan(sample, args.k_min, args.k_max);
  Output output(args.out);
  std::ostream& os = output.os();
  os << "k,stat,reject\n";
  for (const auto& row : rows) {
    os << row.k << ',' << tailci::format_double(row.stat) << ','
       << (row.reject ? 1 : 0) << "\n";
  }
  return 0;
}

struct SimulateArgs {
  std::string config;
  std::string out;
  std::string summary_out;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
};

int run_simulate(const SimulateArgs& args) {
  tailci::SimConfig cfg = tailci::read_sim_config_file(args.config);
  if (args.seed) cfg.master_seed = *args.seed;
  if (args.threads) cfg.threads = *args.threads;

  const std::vector<tailci::CoverageRow> rows = tailci::coverage_experiment(cfg);
  const std::vector<tailci::CoverageRow> summary =
      tailci::optimal_k_summary(rows, cfg.level);

  char hash_hex[24];
  std::snprintf(hash_hex, sizeof(hash_hex), "%016llx",
                static_cast<unsigned long long>(tailci::config_hash(cfg)));
  const std::vector<std::string> meta = {
      "seed = " + std::to_string(cfg.master_seed),
      "generator = splitmix64",
      std::string("config_hash = ") + hash_hex,
  };

  std::string summary_path = args.summary_out;
  if (summary_path.empty() && !args.out.empty() && args.out != "-") {
    summary_path = args.out + ".summary.csv";
  }

  {
    Output output(args.out);
    std::vector<std::string> coverage_meta = meta;
    coverage_meta.insert(coverage_meta.begin(), "table = coverage");
    tailci::write_coverage_csv(output.os(), rows, coverage_meta);
    if (summary_path.empty()) {
      // Both tables go to stdout; the repeated header delimits them.
      std::vector<std::string> summary_meta = meta;
      summary_meta.insert(summary_meta.begin(), "table = optimal_k");
      tailci::write_coverage_csv(output.os(), summary, summary_meta);
    }
  }
  if (!summary_path.empty()) {
    Output output(summary_path);
    std::vector<std::string> summary_meta = meta;
    summary_meta.insert(summary_meta.begin(), "table = optimal_k");
    tailci::write_coverage_csv(output.os(), summary, summary_meta);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tail-index estimation and confidence regions for heavy-tailed, "
               "randomly right-censored data"};
  app.require_subcommand(1);

  EstimateArgs est;
  CLI::App* cmd_est = app.add_subcommand(
      "estimate", "Point estimates and confidence intervals at one k");
  cmd_est->add_option("--input", est.input, "input CSV (value[,status])")->required();
  cmd_est->add_option("--k", est.k, "number of tail exceedances")->required();
  cmd_est->add_option("--level", est.level, "confidence level (default 0.95)");
  cmd_est->add_option("--methods", est.methods, "comma list of EL,BCL,B,ML,CL2");
  cmd_est->add_option("--out", est.out, "output path (default stdout)");

  SweepArgs sweep;
  CLI::App* cmd_sweep = app.add_subcommand(
      "sweep", "Interval endpoints and lengths for a range of k");
  cmd_sweep->add_option("--input", sweep.input, "input CSV (value[,status])")->required();
  cmd_sweep->add_option("--k-min", sweep.k_min, "smallest k")->required();
  cmd_sweep->add_option("--k-max", sweep.k_max, "largest k")->required();
  cmd_sweep->add_option("--level", sweep.level, "confidence level (default 0.95)");
  cmd_sweep->add_option("--methods", sweep.methods, "comma list of EL,BCL,B,ML,CL2");
  cmd_sweep->add_option("--out", sweep.out, "output path (default stdout)");

  KsArgs ks;
  CLI::App* cmd_ks = app.add_subcommand(
      "ks", "Heavy-tail supremum test over a range of k");
  cmd_ks->add_option("--input", ks.input, "input CSV (complete data)")->required();
  cmd_ks->add_option("--k-min", ks.k_min, "smallest k")->required();
  cmd_ks->add_option("--k-max", ks.k_max, "largest k")->required();
  cmd_ks->add_option("--out", ks.out, "output path (default stdout)");

  SimulateArgs sim;
  CLI::App* cmd_sim = app.add_subcommand(
      "simulate", "Monte-Carlo coverage experiment from a config file");
  cmd_sim->add_option("--config", sim.config, "key = value config file")->required();
  cmd_sim->add_option("--out", sim.out, "coverage CSV path (default stdout)");
  cmd_sim->add_option("--summary-out", sim.summary_out,
                      "optimal-k summary CSV path");
  cmd_sim->add_option("--seed", sim.seed, "override the config seed");
  cmd_sim->add_option("--threads", sim.threads,
                      "worker threads (0 = auto); never changes results");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (cmd_est->parsed()) return run_estimate(est);
    if (cmd_sweep->parsed()) return run_sweep(sweep);
    if (cmd_ks->parsed()) return run_ks(ks);
    if (cmd_sim->parsed()) return run_simulate(sim);
  } catch (const tailci::Error& e) {
    std::cerr << "error (" << e.tag() << "): " << e.what() << std::endl;
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 1;
  }
  return 2;
}
