#pragma once

#include <cstdint>
#include <string>

#include "tailci/sample.hpp"

namespace tailci {

// The three heavy-tailed families used by the simulation engine. `index` is
// the tail index of the family (polynomial decay rate of the survival
// function).
enum class Family { gpd, frechet, loglogistic };

const char* family_name(Family f);
Family parse_family(const std::string& name);

struct ModelSpec {
  Family family = Family::gpd;
  double index = 1.0;
};

// Inverse transform of the family CDF; u must lie strictly inside (0,1).
//   gpd:         a ((1-u)^{-1/a} - 1)
//   frechet:     (-log u)^{-1/b}
//   loglogistic: (u/(1-u))^{1/a}
double inverse_cdf(const ModelSpec& model, double u);

// Draw n pairs (Z, delta) with Z = min(X, Y), delta = 1{X <= Y}, where X
// follows `target` and Y follows `censor`, independently. Streams for X and
// Y are derived from the single stream_seed, so the X sample is identical to
// what generate_complete yields with the same seed.
CensoredSample generate_censored(int n, const ModelSpec& target,
                                 const ModelSpec& censor,
                                 std::uint64_t stream_seed);

// Draw n observations of `target` with all statuses 1 (complete data).
CensoredSample generate_complete(int n, const ModelSpec& target,
                                 std::uint64_t stream_seed);

}  // namespace tailci
