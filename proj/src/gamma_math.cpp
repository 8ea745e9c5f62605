#include "tailci/gamma_math.hpp"

#include <cmath>
#include <limits>

#include "tailci/errors.hpp"

namespace tailci {

namespace {

// Series expansion of P(a,x); converges quickly for x < a + 1.
double gamma_p_series(double a, double x) {
  double term = 1.0 / a;
  double sum = term;
  double ap = a;
  for (int n = 0; n < 500; ++n) {
    ap += 1.0;
    term *= x / ap;
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * 1e-16) {
      return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
    }
  }
  throw NumericalFailure("incomplete gamma series did not converge");
}

// Modified Lentz continued fraction for Q(a,x); preferred for x >= a + 1.
double gamma_q_cf(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 500; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < 1e-16) {
      return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
    }
  }
  throw NumericalFailure("incomplete gamma continued fraction did not converge");
}

}  // namespace

double gamma_p(double shape, double x) {
  if (!(shape > 0.0)) throw NumericalFailure("gamma_p requires shape > 0");
  if (x <= 0.0) return 0.0;
  if (x < shape + 1.0) return gamma_p_series(shape, x);
  return 1.0 - gamma_q_cf(shape, x);
}

double gamma_cdf(double shape, double rate, double x) {
  if (!(rate > 0.0)) throw NumericalFailure("gamma_cdf requires rate > 0");
  if (x <= 0.0) return 0.0;
  return gamma_p(shape, rate * x);
}

double gamma_log_pdf(double shape, double rate, double x) {
  if (!(shape > 0.0) || !(rate > 0.0)) {
    throw NumericalFailure("gamma_log_pdf requires positive parameters");
  }
  if (x <= 0.0) return -std::numeric_limits<double>::infinity();
  return shape * std::log(rate) - std::lgamma(shape) +
         (shape - 1.0) * std::log(x) - rate * x;
}

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw NumericalFailure("normal_quantile requires p in (0,1)");
  }
  // Acklam's rational approximation, |relative error| < 1.15e-9, followed by
  // one Halley refinement step against erfc for near machine accuracy.
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425;
  double x;
  if (p < plow) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - plow) {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) *
        q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log(1.0 - p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  // Halley refinement.
  const double e = 0.5 * std::erfc(-x / std::sqrt(2.0)) - p;
  const double u = e * std::sqrt(2.0 * M_PI) * std::exp(x * x / 2.0);
  x -= u / (1.0 + x * u / 2.0);
  return x;
}

double gamma_quantile(double shape, double rate, double p) {
  if (!(shape > 0.0) || !(rate > 0.0)) {
    throw NumericalFailure("gamma_quantile requires positive parameters");
  }
  if (!(p >= 0.0 && p < 1.0)) {
    throw NumericalFailure("gamma_quantile requires p in [0,1)");
  }
  if (p == 0.0) return 0.0;

  // Wilson-Hilferty starting point for the unit-rate quantile.
  const double z = normal_quantile(p);
  const double t = 1.0 - 1.0 / (9.0 * shape) + z / (3.0 * std::sqrt(shape));
  double x = shape * t * t * t;
  if (!(x > 0.0)) x = shape * std::exp((std::log(p) + std::lgamma(shape + 1.0)) / shape);
  if (!(x > 0.0) || !std::isfinite(x)) x = shape;

  // Newton iterations on the unit-rate CDF, with a bisection bracket that is
  // maintained as a safety net.
  double lo = 0.0;
  double hi = std::numeric_limits<double>::infinity();
  for (int it = 0; it < 200; ++it) {
    const double f = gamma_p(shape, x) - p;
    if (f > 0.0) {
      hi = std::min(hi, x);
    } else {
      lo = std::max(lo, x);
    }
    if (std::fabs(f) < 1e-10) {
      // Polish once more if the density is healthy, then stop.
      const double logpdf =
          (shape - 1.0) * std::log(x) - x - std::lgamma(shape);
      const double pdf = std::exp(logpdf);
      if (pdf > 0.0 && std::isfinite(pdf)) {
        const double step = f / pdf;
        double xn = x - step;
        if (xn > lo && (xn < hi || !std::isfinite(hi))) x = xn;
      }
      return x / rate;
    }
    double xn = x;
    const double logpdf = (shape - 1.0) * std::log(x) - x - std::lgamma(shape);
    const double pdf = std::exp(logpdf);
    if (pdf > 0.0 && std::isfinite(pdf)) {
      xn = x - f / pdf;
    }
    const bool inside =
        xn > lo && (std::isfinite(hi) ? xn < hi : true) && std::isfinite(xn);
    if (!inside) {
      xn = std::isfinite(hi) ? 0.5 * (lo + hi) : (lo > 0.0 ? 2.0 * lo : 1.0);
      if (!std::isfinite(hi) && lo == 0.0) xn = std::max(x * 0.5, 1e-12);
    }
    if (xn == x) {
      return x / rate;
    }
    x = xn;
  }
  throw NumericalFailure("gamma_quantile iteration did not converge");
}

double chi2_quantile_1(double p) {
  // chi^2 with 1 df is Gamma(shape 1/2, rate 1/2).
  return gamma_quantile(0.5, 0.5, p);
}

}  // namespace tailci
