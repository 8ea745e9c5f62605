#pragma once

namespace tailci {

// Regularized lower incomplete gamma P(shape, x). Series expansion for
// x < shape + 1, continued fraction otherwise; absolute accuracy ~1e-14.
double gamma_p(double shape, double x);

// Gamma(shape, rate) distribution helpers (rate parameterization:
// density proportional to x^{shape-1} e^{-rate x}).
double gamma_cdf(double shape, double rate, double x);
double gamma_log_pdf(double shape, double rate, double x);

// Inverse of gamma_cdf in its x argument. p in [0,1); accuracy 1e-10 in
// probability. Throws NumericalFailure if the refinement stalls.
double gamma_quantile(double shape, double rate, double p);

// Standard normal quantile (used to seed the gamma quantile iteration and
// exposed for tests).
double normal_quantile(double p);

// Quantile of the chi-squared distribution with 1 degree of freedom.
double chi2_quantile_1(double p);

}  // namespace tailci
