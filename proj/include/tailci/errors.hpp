#pragma once

#include <stdexcept>
#include <string>

namespace tailci {

// Base class for all failures raised by this library. Each concrete type
// names one estimator- or data-level failure condition so callers (and the
// CLI) can map it to a stable tag.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
  virtual const char* tag() const noexcept = 0;
};

#define TAILCI_DEFINE_ERROR(Name, Tag)                              \
  class Name : public Error {                                       \
   public:                                                          \
    explicit Name(const std::string& msg) : Error(msg) {}           \
    const char* tag() const noexcept override { return Tag; }       \
  }

// The k-th and (k+1)-th largest observations coincide, so the tail view at
// this k is not well defined.
TAILCI_DEFINE_ERROR(ThresholdTie, "threshold_tie");
// k outside the admissible range for the sample.
TAILCI_DEFINE_ERROR(InvalidK, "invalid_k");
// Every observation in the tail is censored; rate-type estimators degenerate.
TAILCI_DEFINE_ERROR(AllCensored, "all_censored");
// Posterior mode requested for a shape parameter <= 1 (density has no
// interior maximum).
TAILCI_DEFINE_ERROR(MapUndefined, "map_undefined");
// An iterative numeric routine exhausted its budget without converging.
TAILCI_DEFINE_ERROR(NumericalFailure, "numerical_failure");
// A tilting problem has no solution with positive weights (target outside
// the convex hull of the scores).
TAILCI_DEFINE_ERROR(NoInteriorSolution, "no_interior_solution");
// All score points coincide: the tiltable hull has no interior at all.
TAILCI_DEFINE_ERROR(DegenerateHull, "degenerate_hull");
// A weighted estimator's numerator or denominator is not positive.
TAILCI_DEFINE_ERROR(EstimatorUndefined, "estimator_undefined");
// An inverse-CDF was asked to transform u outside the open interval (0,1).
TAILCI_DEFINE_ERROR(InvalidUniform, "invalid_uniform");
// Malformed input: CSV, config file, or CLI argument values.
TAILCI_DEFINE_ERROR(ParseError, "parse_error");

#undef TAILCI_DEFINE_ERROR

}  // namespace tailci
