#include "tailci/io.hpp"

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "tailci/errors.hpp"

namespace tailci {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::string lower(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  parts.push_back(cur);
  return parts;
}

long parse_long(const std::string& token, const std::string& context) {
  const std::string t = trim(token);
  if (t.empty()) throw ParseError(context + ": empty integer");
  char* end = nullptr;
  errno = 0;
  const long v = std::strtol(t.c_str(), &end, 10);
  if (errno != 0 || end != t.c_str() + t.size()) {
    throw ParseError(context + ": '" + token + "' is not an integer");
  }
  return v;
}

std::uint64_t parse_u64(const std::string& token, const std::string& context) {
  const std::string t = trim(token);
  if (t.empty()) throw ParseError(context + ": empty integer");
  char* end = nullptr;
  errno = 0;
  const unsigned long long v = std::strtoull(t.c_str(), &end, 10);
  if (errno != 0 || end != t.c_str() + t.size()) {
    throw ParseError(context + ": '" + token + "' is not an unsigned integer");
  }
  return static_cast<std::uint64_t>(v);
}

std::string unquote(const std::string& s) {
  if (s.size() >= 2 && ((s.front() == '"' && s.back() == '"') ||
                        (s.front() == '\'' && s.back() == '\''))) {
    return s.substr(1, s.size() - 2);
  }
  return s;
}

}  // namespace

std::string format_double(double x) {
  if (std::isnan(x)) return "NA";
  char buf[40];
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof(buf), "%.*g", prec, x);
    if (std::strtod(buf, nullptr) == x) break;  // shortest exact form
  }
  return buf;
}

double parse_double(const std::string& token, const std::string& context) {
  const std::string t = trim(token);
  if (t == "NA") return std::numeric_limits<double>::quiet_NaN();
  if (t.empty()) throw ParseError(context + ": empty number");
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(t.c_str(), &end);
  if (end != t.c_str() + t.size()) {
    throw ParseError(context + ": '" + token + "' is not a number");
  }
  return v;
}

CensoredSample read_censored_csv(std::istream& in) {
  std::string line;
  long line_no = 0;

  // Header.
  std::optional<std::size_t> value_col, status_col;
  std::size_t num_cols = 0;
  for (;;) {
    if (!std::getline(in, line)) throw ParseError("empty input: a header row is required");
    ++line_no;
    if (trim(line).empty() || trim(line).front() == '#') continue;
    const std::vector<std::string> cols = split(line, ',');
    num_cols = cols.size();
    for (std::size_t c = 0; c < cols.size(); ++c) {
      const std::string name = lower(trim(cols[c]));
      if (name == "value") {
        if (value_col) throw ParseError("duplicate 'value' column in header");
        value_col = c;
      } else if (name == "status") {
        if (status_col) throw ParseError("duplicate 'status' column in header");
        status_col = c;
      } else {
        throw ParseError("unknown column '" + trim(cols[c]) +
                         "' in header (expected value[,status])");
      }
    }
    if (!value_col) throw ParseError("header must name a 'value' column");
    break;
  }

  CensoredSample sample;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const std::vector<std::string> fields = split(line, ',');
    const std::string where = "line " + std::to_string(line_no);
    if (fields.size() != num_cols) {
      throw ParseError(where + ": expected " + std::to_string(num_cols) +
                       " fields, found " + std::to_string(fields.size()));
    }
    const double value = parse_double(fields[*value_col], where);
    if (!std::isfinite(value) || value <= 0.0) {
      throw ParseError(where + ": value must be finite and strictly positive");
    }
    double status = 1.0;
    if (status_col) {
      status = parse_double(fields[*status_col], where);
      if (status != 0.0 && status != 1.0) {
        throw ParseError(where + ": status must be exactly 0 or 1");
      }
    }
    sample.values.push_back(value);
    sample.statuses.push_back(status);
  }
  if (sample.values.size() < 2) {
    throw ParseError("sample must contain at least 2 observations");
  }
  return sample;
}

CensoredSample read_censored_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open input file '" + path + "'");
  return read_censored_csv(in);
}

SimConfig read_sim_config(std::istream& in) {
  std::map<std::string, std::pair<std::string, long>> kv;  // key -> (value, line)
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    const std::size_t eq = t.find('=');
    if (eq == std::string::npos) {
      throw ParseError("config line " + std::to_string(line_no) +
                       ": expected 'key = value'");
    }
    const std::string key = trim(t.substr(0, eq));
    const std::string value = unquote(trim(t.substr(eq + 1)));
    if (key.empty()) {
      throw ParseError("config line " + std::to_string(line_no) + ": empty key");
    }
    if (kv.count(key)) {
      throw ParseError("config line " + std::to_string(line_no) +
                       ": duplicate key '" + key + "'");
    }
    kv[key] = {value, line_no};
  }

  const auto take = [&](const std::string& key) -> std::optional<std::string> {
    const auto it = kv.find(key);
    if (it == kv.end()) return std::nullopt;
    const std::string v = it->second.first;
    kv.erase(it);
    return v;
  };
  const auto require = [&](const std::string& key) -> std::string {
    auto v = take(key);
    if (!v) throw ParseError("config: missing required key '" + key + "'");
    return *v;
  };

  SimConfig cfg;
  cfg.n = static_cast<int>(parse_long(require("n"), "config key 'n'"));
  cfg.m = static_cast<int>(parse_long(require("m"), "config key 'm'"));
  cfg.target.family = parse_family(require("target_family"));
  cfg.target.index = parse_double(require("target_index"), "config key 'target_index'");
  cfg.k_min = static_cast<int>(parse_long(require("k_min"), "config key 'k_min'"));
  cfg.k_max = static_cast<int>(parse_long(require("k_max"), "config key 'k_max'"));
  cfg.master_seed = parse_u64(require("seed"), "config key 'seed'");

  const auto cf = take("censor_family");
  const auto ci = take("censor_index");
  if (cf.has_value() != ci.has_value()) {
    throw ParseError("config: censor_family and censor_index must be given together");
  }
  if (cf) {
    ModelSpec censor;
    censor.family = parse_family(*cf);
    censor.index = parse_double(*ci, "config key 'censor_index'");
    cfg.censor = censor;
  }

  if (const auto lv = take("level")) {
    cfg.level = parse_double(*lv, "config key 'level'");
  }
  if (const auto th = take("threads")) {
    cfg.threads = static_cast<int>(parse_long(*th, "config key 'threads'"));
  }
  if (const auto ms = take("methods")) {
    for (const std::string& tok : split(*ms, ',')) {
      const std::string name = trim(tok);
      if (name.empty()) continue;
      cfg.methods.push_back(parse_method(name));
    }
    if (cfg.methods.empty()) throw ParseError("config key 'methods': empty list");
  } else {
    for (Method m : all_methods) {
      if (m == Method::CL2 && cfg.censor.has_value()) continue;
      cfg.methods.push_back(m);
    }
  }

  if (!kv.empty()) {
    const auto& first = *kv.begin();
    throw ParseError("config line " + std::to_string(first.second.second) +
                     ": unknown key '" + first.first + "'");
  }
  return cfg;
}

SimConfig read_sim_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config file '" + path + "'");
  return read_sim_config(in);
}

std::uint64_t config_hash(const SimConfig& config) {
  std::ostringstream canon;
  canon << "n=" << config.n << ";m=" << config.m
        << ";target=" << family_name(config.target.family) << ":"
        << format_double(config.target.index);
  if (config.censor) {
    canon << ";censor=" << family_name(config.censor->family) << ":"
          << format_double(config.censor->index);
  }
  canon << ";k=" << config.k_min << ".." << config.k_max
        << ";level=" << format_double(config.level) << ";methods=";
  for (Method m : config.methods) canon << method_name(m) << ",";
  canon << ";seed=" << config.master_seed;

  // FNV-1a over the canonical text.
  std::uint64_t h = 1469598103934665603ULL;
  for (char c : canon.str()) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ULL;
  }
  return h;
}

namespace {
const char* kCoverageHeader = "beta,method,k,coverage,avg_length,p_bar,failures";
}

void write_coverage_csv(std::ostream& out, const std::vector<CoverageRow>& rows,
                        const std::vector<std::string>& metadata) {
  for (const std::string& m : metadata) out << "# " << m << "\n";
  out << kCoverageHeader << "\n";
  for (const CoverageRow& r : rows) {
    out << format_double(r.beta) << ',' << method_name(r.method) << ',' << r.k
        << ',' << format_double(r.coverage) << ',' << format_double(r.avg_length)
        << ',' << format_double(r.p_bar) << ',' << r.failures << "\n";
  }
}

std::vector<CoverageRow> read_coverage_csv(std::istream& in) {
  std::vector<CoverageRow> rows;
  std::string line;
  long line_no = 0;
  bool seen_header = false;
  std::istream::pos_type before = in.tellg();
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t == kCoverageHeader && seen_header) {
      // A second table begins here. Rewind to its header when the stream
      // allows it, so the next call picks up that table.
      if (before != std::istream::pos_type(-1)) {
        in.clear();
        in.seekg(before);
      }
      break;
    }
    before = in.tellg();
    if (t.empty() || t.front() == '#') continue;
    if (t == kCoverageHeader) {
      seen_header = true;
      continue;
    }
    if (!seen_header) {
      throw ParseError("line " + std::to_string(line_no) +
                       ": expected header '" + kCoverageHeader + "'");
    }
    const std::vector<std::string> f = split(t, ',');
    const std::string where = "line " + std::to_string(line_no);
    if (f.size() != 7) {
      throw ParseError(where + ": expected 7 fields, found " +
                       std::to_string(f.size()));
    }
    CoverageRow row;
    row.beta = parse_double(f[0], where);
    row.method = parse_method(f[1]);
    row.k = static_cast<int>(parse_long(f[2], where));
    row.coverage = parse_double(f[3], where);
    row.avg_length = parse_double(f[4], where);
    row.p_bar = parse_double(f[5], where);
    row.failures = parse_long(f[6], where);
    rows.push_back(row);
  }
  if (!seen_header) throw ParseError("missing coverage table header");
  return rows;
}

}  // namespace tailci
