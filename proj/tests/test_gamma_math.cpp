#include <cmath>
#include <vector>

#include <doctest.h>

#include "tailci/errors.hpp"
#include "tailci/gamma_math.hpp"

using tailci::gamma_cdf;
using tailci::gamma_log_pdf;
using tailci::gamma_p;
using tailci::gamma_quantile;

namespace {

// Independent quantile oracle: trapezoid integration of the Gamma density on
// a fine grid, then linear interpolation of the first crossing of p.
double trapezoid_quantile(double shape, double rate, double p, double hi,
                          double step) {
  auto pdf = [&](double x) { return std::exp(gamma_log_pdf(shape, rate, x)); };
  double cum = 0.0;
  double prev = pdf(0.0);
  if (!std::isfinite(prev)) prev = 0.0;  // integrable endpoint singularities
  for (double x = step; x <= hi; x += step) {
    double cur = pdf(x);
    double next_cum = cum + 0.5 * (prev + cur) * step;
    if (next_cum >= p) {
      double frac = (p - cum) / (next_cum - cum);
      return x - step + frac * step;
    }
    cum = next_cum;
    prev = cur;
  }
  return hi;
}

}  // namespace

TEST_CASE("regularized incomplete gamma matches the error function at shape 1/2") {
  // P(1/2, x) = erf(sqrt(x)) is an exact identity.
  for (double x : {0.05, 0.1, 0.5, 1.0, 2.0, 5.0, 12.0}) {
    CHECK(gamma_p(0.5, x) == doctest::Approx(std::erf(std::sqrt(x))).epsilon(1e-13));
  }
}

TEST_CASE("incomplete gamma at shape 1 is the exponential distribution") {
  for (double x : {0.1, 1.0, 3.0, 10.0}) {
    CHECK(gamma_p(1.0, x) == doctest::Approx(1.0 - std::exp(-x)).epsilon(1e-13));
  }
}

TEST_CASE("gamma quantile inverts known closed forms") {
  // Exponential(1): Q(p) = -log(1-p).
  CHECK(gamma_quantile(1.0, 1.0, 0.95) ==
        doctest::Approx(2.99573227355399099).epsilon(1e-10));
  // Chi-squared(1) = Gamma(1/2, 1/2): the 95% point.
  CHECK(gamma_quantile(0.5, 0.5, 0.95) == doctest::Approx(3.8415).epsilon(5e-5));
  CHECK(tailci::chi2_quantile_1(0.95) ==
        doctest::Approx(3.841458820694124).epsilon(1e-10));
  CHECK(gamma_quantile(0.5, 0.5, 0.95) == tailci::chi2_quantile_1(0.95));
}

TEST_CASE("gamma quantile agrees with a trapezoid-integration oracle") {
  double q = gamma_quantile(5.0, 2.0, 0.5);
  double oracle = trapezoid_quantile(5.0, 2.0, 0.5, 30.0, 1e-4);
  CHECK(std::fabs(q - oracle) < 1e-6);
}

TEST_CASE("gamma quantile and CDF are mutually inverse") {
  for (double shape : {0.3, 0.8, 1.0, 2.5, 7.0, 40.0}) {
    for (double rate : {0.25, 1.0, 3.0}) {
      for (double p : {0.01, 0.1, 0.5, 0.9, 0.99}) {
        double x = gamma_quantile(shape, rate, p);
        CHECK(gamma_cdf(shape, rate, x) == doctest::Approx(p).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("gamma quantile is monotone in p and scales with the rate") {
  double prev = 0.0;
  for (double p = 0.05; p < 1.0; p += 0.05) {
    double q = gamma_quantile(3.0, 1.5, p);
    CHECK(q > prev);
    prev = q;
  }
  // Rate is a pure scale: Q(shape, c*rate, p) = Q(shape, rate, p)/c.
  double base = gamma_quantile(3.0, 1.0, 0.9);
  CHECK(gamma_quantile(3.0, 4.0, 0.9) == doctest::Approx(base / 4.0).epsilon(1e-12));
}

TEST_CASE("gamma quantile endpoints and domain errors") {
  CHECK(gamma_quantile(2.0, 1.0, 0.0) == 0.0);
  CHECK_THROWS_AS(gamma_quantile(2.0, 1.0, 1.0), tailci::Error);
  CHECK_THROWS_AS(gamma_quantile(2.0, 1.0, -0.1), tailci::Error);
}

TEST_CASE("normal quantile hits the standard table points") {
  CHECK(tailci::normal_quantile(0.5) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(tailci::normal_quantile(0.975) ==
        doctest::Approx(1.959963984540054).epsilon(1e-10));
  CHECK(tailci::normal_quantile(0.025) ==
        doctest::Approx(-1.959963984540054).epsilon(1e-10));
  CHECK(tailci::normal_quantile(0.841344746068543) ==
        doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("gamma log density matches direct evaluation") {
  // Gamma(3, 2) at x = 1.5: log(2^3) + 2 log(1.5) - 3 - log(Gamma(3)).
  double expected = 3.0 * std::log(2.0) + 2.0 * std::log(1.5) - 3.0 - std::log(2.0);
  CHECK(gamma_log_pdf(3.0, 2.0, 1.5) == doctest::Approx(expected).epsilon(1e-12));
}
