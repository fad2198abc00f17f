#include "votecount/dist_core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace votecount {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kInvSqrt2Pi = 0.39894228040143267794;

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) {
    throw std::domain_error(std::string(what) + " must be finite");
  }
}

// Exact C(n, k) in a double. Intermediate products stay below 2^53 for
// n <= 50, so every division is exact.
double choose_exact(int n, int k) {
  if (k > n - k) k = n - k;
  double result = 1.0;
  for (int i = 0; i < k; ++i) {
    result *= static_cast<double>(n - i);
    result /= static_cast<double>(i + 1);
  }
  return result;
}

double log_choose(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

}  // namespace

ProbabilityVector::ProbabilityVector(std::vector<double> probs)
    : probs_(std::move(probs)) {
  if (probs_.empty()) {
    throw std::domain_error("probability vector must have length >= 1");
  }
  for (double p : probs_) {
    if (!(p > 0.0 && p < 1.0)) {
      throw std::domain_error(
          "probability vector elements must lie strictly in (0, 1), got " +
          std::to_string(p));
    }
  }
}

BinomialParams::BinomialParams(int n_, double pi_) : n(n_), pi(pi_) {
  if (n < 1) throw std::domain_error("binomial n must be >= 1");
  if (!(pi >= 0.0 && pi <= 1.0)) {
    throw std::domain_error("binomial pi must lie in [0, 1]");
  }
}

double std_normal_cdf(double z) {
  require_finite(z, "std_normal_cdf argument");
  return 0.5 * std::erfc(-z * kInvSqrt2);
}

double std_normal_pdf(double z) {
  return kInvSqrt2Pi * std::exp(-0.5 * z * z);
}

double std_normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::domain_error("std_normal_quantile requires p in (0, 1)");
  }
  if (p == 0.5) return 0.0;

  // Crude logistic-flavoured starting point; the safeguarded Newton below
  // does the real work and converges in a handful of steps.
  double x = (p < 0.5 ? -1.0 : 1.0) *
             std::sqrt(std::max(0.0, -2.0 * std::log(2.0 * std::min(p, 1.0 - p))));

  double lo = -40.0, hi = 40.0;
  for (int iter = 0; iter < 200; ++iter) {
    const double f = std_normal_cdf(x) - p;
    if (f > 0.0) {
      hi = x;
    } else if (f < 0.0) {
      lo = x;
    } else {
      return x;
    }
    const double dens = std_normal_pdf(x);
    double step = dens > 0.0 ? f / dens : 0.0;
    double next = x - step;
    if (!(next > lo && next < hi) || step == 0.0) {
      next = 0.5 * (lo + hi);  // Newton left the bracket; bisect instead
    }
    if (std::abs(next - x) <= 1e-15 * std::max(1.0, std::abs(x))) {
      return next;
    }
    x = next;
  }
  return x;
}

double upper_tail_quantile(double p) { return -std_normal_quantile(p); }

double binomial_pmf(const BinomialParams& params, int x) {
  if (x < 0 || x > params.n) {
    throw std::domain_error("binomial_pmf requires 0 <= x <= n");
  }
  const int n = params.n;
  const double pi = params.pi;
  if (pi == 0.0) return x == 0 ? 1.0 : 0.0;
  if (pi == 1.0) return x == n ? 1.0 : 0.0;
  if (pi == 0.5 && n <= 50) {
    // Dyadic rationals: C(n, x) / 2^n is exact in a double at this size.
    return choose_exact(n, x) * std::ldexp(1.0, -n);
  }
  const double log_pmf =
      log_choose(n, x) + x * std::log(pi) + (n - x) * std::log1p(-pi);
  return std::exp(log_pmf);
}

double binomial_cdf(const BinomialParams& params, int x) {
  if (x < 0 || x > params.n) {
    throw std::domain_error("binomial_cdf requires 0 <= x <= n");
  }
  double sum = 0.0;
  for (int k = 0; k <= x; ++k) {
    sum += binomial_pmf(params, k);
  }
  return std::min(sum, 1.0);
}

std::vector<double> poisson_binomial_pmf(const ProbabilityVector& pv) {
  std::vector<double> pmf{1.0};
  pmf.reserve(pv.size() + 1);
  for (double p : pv) {
    std::vector<double> next(pmf.size() + 1, 0.0);
    for (std::size_t k = 0; k < pmf.size(); ++k) {
      next[k] += pmf[k] * (1.0 - p);
      next[k + 1] += pmf[k] * p;
    }
    pmf = std::move(next);
  }
  return pmf;
}

double poisson_binomial_cdf(const ProbabilityVector& pv, int x) {
  const int n = static_cast<int>(pv.size());
  if (x < 0 || x > n) {
    throw std::domain_error("poisson_binomial_cdf requires 0 <= x <= n");
  }
  const std::vector<double> pmf = poisson_binomial_pmf(pv);
  double sum = 0.0;
  for (int k = 0; k <= x; ++k) sum += pmf[k];
  return std::min(sum, 1.0);
}

double poisson_binomial_mean(const ProbabilityVector& pv) {
  return std::accumulate(pv.begin(), pv.end(), 0.0);
}

}  // namespace votecount
