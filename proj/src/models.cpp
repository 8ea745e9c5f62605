#include "tailci/models.hpp"

#include <cmath>

#include "tailci/errors.hpp"
#include "tailci/rng.hpp"

namespace tailci {

const char* family_name(Family f) {
  switch (f) {
    case Family::gpd: return "gpd";
    case Family::frechet: return "frechet";
    case Family::loglogistic: return "loglogistic";
  }
  return "?";
}

Family parse_family(const std::string& name) {
  if (name == "gpd") return Family::gpd;
  if (name == "frechet") return Family::frechet;
  if (name == "loglogistic") return Family::loglogistic;
  throw ParseError("unknown family '" + name +
                   "' (expected gpd, frechet, or loglogistic)");
}

double inverse_cdf(const ModelSpec& model, double u) {
  if (!(u > 0.0 && u < 1.0)) {
    throw InvalidUniform("uniform input must lie strictly inside (0,1)");
  }
  const double a = model.index;
  switch (model.family) {
    case Family::gpd:
      return a * (std::pow(1.0 - u, -1.0 / a) - 1.0);
    case Family::frechet:
      return std::pow(-std::log(u), -1.0 / a);
    case Family::loglogistic:
      return std::pow(u / (1.0 - u), 1.0 / a);
  }
  throw NumericalFailure("unreachable family tag");
}

CensoredSample generate_censored(int n, const ModelSpec& target,
                                 const ModelSpec& censor,
                                 std::uint64_t stream_seed) {
  Rng rx = Rng::derive(stream_seed, 1);
  Rng ry = Rng::derive(stream_seed, 2);
  CensoredSample sample;
  sample.values.reserve(n);
  sample.statuses.reserve(n);
  for (int i = 0; i < n; ++i) {
    const double x = inverse_cdf(target, rx.next_uniform());
    const double y = inverse_cdf(censor, ry.next_uniform());
    sample.values.push_back(std::min(x, y));
    sample.statuses.push_back(x <= y ? 1.0 : 0.0);
  }
  return sample;
}

CensoredSample generate_complete(int n, const ModelSpec& target,
                                 std::uint64_t stream_seed) {
  Rng rx = Rng::derive(stream_seed, 1);
  CensoredSample sample;
  sample.values.reserve(n);
  sample.statuses.assign(n, 1.0);
  for (int i = 0; i < n; ++i) {
    sample.values.push_back(inverse_cdf(target, rx.next_uniform()));
  }
  return sample;
}

}  // namespace tailci
