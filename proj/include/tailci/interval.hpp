#pragma once

#include <array>
#include <cctype>
#include <cmath>
#include <string>

#include "tailci/errors.hpp"

namespace tailci {

// The five confidence-region constructions offered by the toolkit:
//   EL  — data-tilting (empirical-likelihood-type) region for censored tails
//   BCL — highest-density credible interval of the composite-likelihood
//         posterior with the default rank-power weight profile
//   B   — highest-density credible interval of the Jeffrey-prior posterior
//   ML  — likelihood-ratio region of the censored maximum-likelihood fit
//   CL2 — complete-data entropy-tilting (composite-likelihood) region
enum class Method { EL, BCL, B, ML, CL2 };

inline constexpr std::array<Method, 5> all_methods = {
    Method::EL, Method::BCL, Method::B, Method::ML, Method::CL2};

inline const char* method_name(Method m) {
  switch (m) {
    case Method::EL: return "EL";
    case Method::BCL: return "BCL";
    case Method::B: return "B";
    case Method::ML: return "ML";
    case Method::CL2: return "CL2";
  }
  return "?";
}

inline Method parse_method(const std::string& name) {
  std::string up;
  for (char c : name) up.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  for (Method m : all_methods) {
    if (up == method_name(m)) return m;
  }
  throw ParseError("unknown method '" + name + "' (expected EL, BCL, B, ML, or CL2)");
}

// A confidence / credibility interval for the tail index. `lower == 0` is a
// legitimate endpoint (heavily censored tails); `level` is the nominal
// coverage 1 - theta.
struct Interval {
  double lower = 0.0;
  double upper = 0.0;
  double level = 0.0;
  Method method = Method::ML;

  double length() const { return upper - lower; }
  bool contains(double x) const { return x >= lower && x <= upper; }
  bool bounded() const { return std::isfinite(lower) && std::isfinite(upper); }
};

}  // namespace tailci
