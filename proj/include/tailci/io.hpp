#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "tailci/coverage.hpp"
#include "tailci/sample.hpp"

namespace tailci {

// Shortest decimal form that round-trips the exact double; NaN prints "NA".
std::string format_double(double x);

// Strict double parser: the whole token must be consumed. "NA" yields NaN.
double parse_double(const std::string& token, const std::string& context);

// Read a sample from CSV. A header is required; the columns are `value`
// (positive reals) and optionally `status` (0/1). A missing status column
// means complete data. Malformed rows are rejected with their line numbers.
CensoredSample read_censored_csv(std::istream& in);
CensoredSample read_censored_csv_file(const std::string& path);

// Read a simulation config from flat `key = value` text ('#' comments).
// Keys: n, m, target_family, target_index, censor_family, censor_index,
// k_min, k_max, level, methods, seed, threads. The methods default is every
// method applicable to the configured data (censored data excludes CL2).
SimConfig read_sim_config(std::istream& in);
SimConfig read_sim_config_file(const std::string& path);

// Stable 64-bit hash of the statistical identity of a config (threads, an
// execution knob, is excluded), for output provenance lines.
std::uint64_t config_hash(const SimConfig& config);

// Coverage table serialization. Metadata lines are emitted with a '#'
// prefix before the header; the reader skips them. A second header line in
// the stream ends the table, so concatenated tables parse cleanly.
void write_coverage_csv(std::ostream& out, const std::vector<CoverageRow>& rows,
                        const std::vector<std::string>& metadata);
std::vector<CoverageRow> read_coverage_csv(std::istream& in);

}  // namespace tailci
