#include "votecount/intervals.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "votecount/dist_core.hpp"

namespace votecount {

namespace {

void check_interval_inputs(int n, int x, double level) {
  if (n < 1) throw std::domain_error("interval requires n >= 1");
  if (x < 0 || x > n) throw std::domain_error("interval requires 0 <= x <= n");
  if (!(level > 0.0 && level < 1.0)) {
    throw std::domain_error("confidence level must lie in (0, 1)");
  }
}

double log_beta(double a, double b) {
  return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

// Continued fraction for the incomplete beta, modified Lentz iteration.
double beta_continued_fraction(double x, double a, double b) {
  constexpr double tiny = 1e-300;
  constexpr double eps = 1e-16;

  double c = 1.0;
  double d = 1.0 - (a + b) * x / (a + 1.0);
  if (std::abs(d) < tiny) d = tiny;
  d = 1.0 / d;
  double result = d;

  for (int m = 1; m <= 10000; ++m) {
    const double m2 = 2.0 * m;
    // even-numbered term
    double numer = m * (b - m) * x / ((a + m2 - 1.0) * (a + m2));
    d = 1.0 + numer * d;
    if (std::abs(d) < tiny) d = tiny;
    c = 1.0 + numer / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    result *= d * c;
    // odd-numbered term
    numer = -(a + m) * (a + b + m) * x / ((a + m2) * (a + m2 + 1.0));
    d = 1.0 + numer * d;
    if (std::abs(d) < tiny) d = tiny;
    c = 1.0 + numer / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    result *= delta;
    if (std::abs(delta - 1.0) < eps) break;
  }
  return result;
}

}  // namespace

double regularized_incomplete_beta(double x, double a, double b) {
  if (!(a > 0.0 && b > 0.0)) {
    throw std::domain_error("incomplete beta requires a > 0 and b > 0");
  }
  if (!(x >= 0.0 && x <= 1.0)) {
    throw std::domain_error("incomplete beta requires x in [0, 1]");
  }
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double front =
      std::exp(a * std::log(x) + b * std::log1p(-x) - log_beta(a, b));
  // Use the expansion on whichever side converges fast, mirror the other.
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * beta_continued_fraction(x, a, b) / a;
  }
  return 1.0 - front * beta_continued_fraction(1.0 - x, b, a) / b;
}

double beta_quantile(double p, double a, double b) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::domain_error("beta_quantile requires p in [0, 1]");
  }
  if (p == 0.0) return 0.0;
  if (p == 1.0) return 1.0;
  double lo = 0.0, hi = 1.0;
  // 200 halvings take the bracket far below any tolerance of interest;
  // the loop exits early once the midpoint stops moving.
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (regularized_incomplete_beta(mid, a, b) < p) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

IntervalEstimate wilson_interval(int n, int x, double level) {
  check_interval_inputs(n, x, level);
  const double z = std_normal_quantile(1.0 - (1.0 - level) / 2.0);
  const double z2 = z * z;
  const double nd = static_cast<double>(n);
  const double xd = static_cast<double>(x);
  const double center = (xd + z2 / 2.0) / (nd + z2);
  const double half =
      (z / (nd + z2)) * std::sqrt(xd * (nd - xd) / nd + z2 / 4.0);

  IntervalEstimate est;
  est.method = IntervalMethod::wilson;
  est.level = level;
  est.point = xd / nd;
  // x = 0 and x = n hit the boundary exactly; clamping alone would leave
  // rounding dust from center - half.
  est.lower = x == 0 ? 0.0 : std::max(0.0, center - half);
  est.upper = x == n ? 1.0 : std::min(1.0, center + half);
  return est;
}

IntervalEstimate jeffreys_interval(int n, int x, double level) {
  check_interval_inputs(n, x, level);
  const double a = x + 0.5;
  const double b = n - x + 0.5;
  const double tail = (1.0 - level) / 2.0;

  IntervalEstimate est;
  est.method = IntervalMethod::jeffreys;
  est.level = level;
  est.point = static_cast<double>(x) / n;
  if (x == 0) {
    est.lower = 0.0;
    est.boundary_adjusted = true;
  } else {
    est.lower = beta_quantile(tail, a, b);
  }
  if (x == n) {
    est.upper = 1.0;
    est.boundary_adjusted = true;
  } else {
    est.upper = beta_quantile(1.0 - tail, a, b);
  }
  return est;
}

IntervalEstimate proportion_interval(IntervalMethod method, int n, int x,
                                     double level) {
  return method == IntervalMethod::wilson ? wilson_interval(n, x, level)
                                          : jeffreys_interval(n, x, level);
}

}  // namespace votecount
