#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include <doctest.h>

#include "helpers.hpp"
#include "tailci/errors.hpp"
#include "tailci/gamma_math.hpp"
#include "tailci/lr.hpp"
#include "tailci/sample.hpp"
#include "tailci/tilt.hpp"

using tailci::ci_el;
using tailci::elr_stat;
using tailci::Interval;
using tailci::score_terms;
using tailci::solve_lambda;
using tailci::TailStats;
using tailci::tilt_hull;
using tailci::tilt_weights;
using tailci::TiltedWeights;
using testutil::complete_sample;
using testutil::make_tail;
using testutil::pareto_values;

namespace {

// Grid oracle for the multiplier: scan the admissible open interval for the
// sign change of g(lambda) = sum u_i / (1 + lambda u_i). Returns the midpoint
// of the bracketing step.
double lambda_grid_oracle(std::span<const double> u, int steps) {
  double umin = u[0], umax = u[0];
  for (double x : u) {
    umin = std::min(umin, x);
    umax = std::max(umax, x);
  }
  const double lo = -1.0 / umax, hi = -1.0 / umin;
  const double width = hi - lo;
  auto g = [&](double lam) {
    double s = 0.0;
    for (double x : u) s += x / (1.0 + lam * x);
    return s;
  };
  double step = width * (1.0 - 2e-9) / steps;
  double a = lo + width * 1e-9;
  double ga = g(a);
  for (int i = 1; i <= steps; ++i) {
    double b = lo + width * 1e-9 + i * step;
    double gb = g(b);
    if ((ga > 0.0) != (gb > 0.0)) return 0.5 * (a + b);
    a = b;
    ga = gb;
  }
  return 0.5 * (lo + hi);
}

TailStats random_censored_tail(int k, std::uint64_t seed) {
  tailci::Rng rng(seed);
  std::vector<double> v(k);
  std::vector<double> d(k);
  for (int i = 0; i < k; ++i) {
    v[i] = -std::log(rng.next_uniform());
    d[i] = rng.next_uniform() < 0.25 ? 0.0 : 1.0;
  }
  std::sort(v.rbegin(), v.rend());
  return make_tail(std::move(v), std::move(d));
}

}  // namespace

TEST_CASE("score terms sum to zero at the maximum-likelihood index") {
  TailStats t = random_censored_tail(30, 8101ULL);
  double am = tailci::ml_alpha(t);
  std::vector<double> u = score_terms(t, am);
  double s = 0.0;
  for (double x : u) s += x;
  CHECK(std::fabs(s) < 1e-12 * t.k);
}

TEST_CASE("multiplier solve on pinned score vectors") {
  std::vector<double> sym = {-1.0, 1.0};
  CHECK(std::fabs(solve_lambda(sym)) < 1e-10);

  std::vector<double> skew = {-0.5, 1.0};
  CHECK(solve_lambda(skew) == doctest::Approx(0.5).epsilon(1e-9));

  std::vector<double> onesided = {0.2, 0.7};
  CHECK_THROWS_AS(solve_lambda(onesided), tailci::NoInteriorSolution);

  std::vector<double> zeros = {0.0, 0.0, 0.0};
  CHECK(solve_lambda(zeros) == 0.0);
}

TEST_CASE("multiplier solve agrees with a grid scan on random score vectors") {
  tailci::Rng rng(555ULL);
  const int steps = 200000;
  for (int rep = 0; rep < 100; ++rep) {
    int k = 3 + static_cast<int>(rng.next_u64() % 20);
    std::vector<double> u(k);
    bool pos = false, neg = false;
    for (auto& x : u) {
      x = (2.0 * rng.next_uniform() - 1.0) * (0.5 + 3.0 * rng.next_uniform());
      pos = pos || x > 0.0;
      neg = neg || x < 0.0;
    }
    if (!pos || !neg) {
      --rep;
      continue;
    }
    double lam = solve_lambda(u);
    double ref = lambda_grid_oracle(u, steps);
    double umin = *std::min_element(u.begin(), u.end());
    double umax = *std::max_element(u.begin(), u.end());
    double width = -1.0 / umin - (-1.0 / umax);
    CHECK(std::fabs(lam - ref) <= 2.0 * width / steps);
  }
}

TEST_CASE("tilted weights on a two-point tail") {
  // Log-excesses 2.5 and 1, both uncensored, probed at index 1/2: scores are
  // (-1/2, 1), multiplier 1/2, weights (2/3, 1/3).
  TailStats t = make_tail({2.5, 1.0}, {1.0, 1.0});
  TiltedWeights w = tilt_weights(t, 0.5);
  CHECK(w.lambda == doctest::Approx(0.5).epsilon(1e-9));
  REQUIRE(w.weights.size() == 2);
  CHECK(w.weights[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-9));
  CHECK(w.weights[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
}

TEST_CASE("tilted weights are uniform at the maximum-likelihood index") {
  TailStats t = random_censored_tail(25, 31ULL);
  double am = tailci::ml_alpha(t);
  TiltedWeights w = tilt_weights(t, am);
  for (double wi : w.weights) {
    CHECK(wi == doctest::Approx(1.0 / t.k).epsilon(1e-9));
  }
}

TEST_CASE("tilted weights satisfy their constraints") {
  TailStats t = random_censored_tail(40, 77ULL);
  tailci::TiltHull hull = tilt_hull(t);
  for (double frac : {0.15, 0.5, 0.85}) {
    double lo = std::max(hull.lower, 1e-3);
    double alpha = lo + frac * (hull.upper - lo);
    TiltedWeights w = tilt_weights(t, alpha);
    std::vector<double> u = score_terms(t, alpha);
    double wsum = 0.0, cons = 0.0;
    for (int i = 0; i < t.k; ++i) {
      CHECK(w.weights[i] > 0.0);
      wsum += w.weights[i];
      cons += w.weights[i] * u[i];
    }
    CHECK(std::fabs(wsum - 1.0) < 1e-10);
    CHECK(std::fabs(cons) < 1e-8);
  }
}

TEST_CASE("tilting statistic on the two-point tail") {
  TailStats t = make_tail({2.5, 1.0}, {1.0, 1.0});
  double expected = 2.0 * (std::log(0.75) + std::log(1.5));
  CHECK(elr_stat(t, 0.5) == doctest::Approx(expected).epsilon(1e-9));
  CHECK(elr_stat(t, 0.5) == doctest::Approx(0.235566).epsilon(1e-5));
}

TEST_CASE("tilting statistic vanishes at the maximum-likelihood index") {
  TailStats t = random_censored_tail(35, 4001ULL);
  double am = tailci::ml_alpha(t);
  CHECK(elr_stat(t, am) == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("tilting statistic equals minus twice the log weight product") {
  TailStats t = random_censored_tail(30, 6007ULL);
  tailci::TiltHull hull = tilt_hull(t);
  for (double frac : {0.2, 0.6, 0.9}) {
    double lo = std::max(hull.lower, 1e-3);
    double alpha = lo + frac * (hull.upper - lo);
    TiltedWeights w = tilt_weights(t, alpha);
    double sum = 0.0;
    for (double wi : w.weights) sum += std::log(t.k * wi);
    CHECK(elr_stat(t, alpha) == doctest::Approx(-2.0 * sum).epsilon(1e-10));
  }
}

TEST_CASE("tilting statistic is infinite outside the admissible hull") {
  TailStats t = random_censored_tail(20, 99ULL);
  tailci::TiltHull hull = tilt_hull(t);
  CHECK(std::isinf(elr_stat(t, hull.upper * 1.01)));
  if (hull.lower > 0.0) {
    CHECK(std::isinf(elr_stat(t, hull.lower * 0.99)));
  }
}

TEST_CASE("admissible hull endpoints come from the uncensored extremes") {
  // With censored points present the lower edge collapses to zero.
  TailStats t = make_tail({2.0, 1.0, 0.5}, {1.0, 0.0, 1.0});
  tailci::TiltHull hull = tilt_hull(t);
  CHECK(hull.lower == 0.0);
  CHECK(hull.upper == doctest::Approx(1.0 / 0.5).epsilon(1e-12));

  TailStats c = make_tail({2.0, 1.0, 0.5}, {1.0, 1.0, 1.0});
  tailci::TiltHull hc = tilt_hull(c);
  CHECK(hc.lower == doctest::Approx(1.0 / 2.0).epsilon(1e-12));
  CHECK(hc.upper == doctest::Approx(1.0 / 0.5).epsilon(1e-12));

  TailStats all0 = make_tail({2.0, 1.0, 0.5}, {0.0, 0.0, 0.0});
  CHECK_THROWS_AS(tilt_hull(all0), tailci::AllCensored);

  TailStats degen = make_tail({1.0, 1.0, 1.0}, {1.0, 1.0, 1.0});
  CHECK_THROWS_AS(tilt_hull(degen), tailci::DegenerateHull);
}

TEST_CASE("tilting interval matches a grid scan on a five-point tail") {
  TailStats t = make_tail({1.0, 0.8, 0.5, 0.4, 0.3}, {1.0, 1.0, 1.0, 1.0, 1.0});
  const double q = tailci::chi2_quantile_1(0.95);
  Interval iv = ci_el(t, 0.05);

  tailci::TiltHull hull = tilt_hull(t);
  double lo_grid = 0.0, hi_grid = 0.0;
  for (double a = hull.lower + 1e-6; a < hull.upper; a += 1e-4) {
    if (elr_stat(t, a) <= q) {
      lo_grid = a;
      break;
    }
  }
  for (double a = hull.upper - 1e-6; a > hull.lower; a -= 1e-4) {
    if (elr_stat(t, a) <= q) {
      hi_grid = a;
      break;
    }
  }
  REQUIRE(lo_grid > 0.0);
  REQUIRE(hi_grid > lo_grid);
  CHECK(std::fabs(iv.lower - lo_grid) < 2e-4);
  CHECK(std::fabs(iv.upper - hi_grid) < 2e-4);
  CHECK(iv.method == tailci::Method::EL);
}

TEST_CASE("tilting interval brackets the maximum-likelihood index and nests") {
  TailStats t = random_censored_tail(45, 2024ULL);
  Interval wide = ci_el(t, 0.05);
  Interval narrow = ci_el(t, 0.10);
  double am = tailci::ml_alpha(t);
  CHECK(wide.contains(am));
  CHECK(narrow.lower >= wide.lower);
  CHECK(narrow.upper <= wide.upper);
  tailci::TiltHull hull = tilt_hull(t);
  CHECK(wide.lower >= hull.lower);
  CHECK(wide.upper <= hull.upper);
}

TEST_CASE("tilting statistic is quasi-convex across the hull") {
  TailStats t = random_censored_tail(25, 12321ULL);
  tailci::TiltHull hull = tilt_hull(t);
  double am = tailci::ml_alpha(t);
  double lo = std::max(hull.lower * 1.001, hull.upper * 1e-4);
  double prev = std::numeric_limits<double>::infinity();
  // Decreasing to the left of the optimum...
  for (double a = lo; a < am; a += (am - lo) / 40.0) {
    double cur = elr_stat(t, a);
    CHECK(cur <= prev + 1e-9);
    prev = cur;
  }
  // ...and increasing to the right.
  prev = 0.0;
  for (double a = am; a < hull.upper * 0.999; a += (hull.upper - am) / 40.0) {
    double cur = elr_stat(t, a);
    CHECK(cur >= prev - 1e-9);
    prev = cur;
  }
}

TEST_CASE("tilting statistic is exactly scale invariant for binary scalers") {
  std::vector<double> vals = pareto_values(200, 1.0, 65ULL);
  TailStats a = tailci::tail_view(complete_sample(vals), 50);
  for (auto& v : vals) v *= 0x1.0p7;
  TailStats b = tailci::tail_view(complete_sample(vals), 50);
  for (double alpha : {0.7, 1.0, 1.6}) {
    CHECK(elr_stat(a, alpha) == elr_stat(b, alpha));
  }
}

TEST_CASE("degenerate all-equal tails cannot be tilted into an interval") {
  TailStats degen = make_tail({1.0, 1.0, 1.0}, {1.0, 1.0, 1.0});
  CHECK_THROWS_AS(ci_el(degen, 0.05), tailci::DegenerateHull);

  TailStats all0 = make_tail({2.0, 1.0}, {0.0, 0.0});
  CHECK_THROWS_AS(ci_el(all0, 0.05), tailci::AllCensored);
}
