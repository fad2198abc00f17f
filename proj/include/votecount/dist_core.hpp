#ifndef VOTECOUNT_DIST_CORE_HPP
#define VOTECOUNT_DIST_CORE_HPP

#include <cstddef>
#include <vector>

namespace votecount {

/// Per-study success probabilities (pi_1, ..., pi_n) parameterizing a
/// Poisson-Binomial distribution. Every element must lie strictly inside
/// (0, 1); probabilities of exactly 0 or 1 would encode deterministic
/// studies and are rejected. The null case pi_i = 0.5 is allowed.
class ProbabilityVector {
 public:
  explicit ProbabilityVector(std::vector<double> probs);

  std::size_t size() const { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }
  const std::vector<double>& probs() const { return probs_; }

  auto begin() const { return probs_.begin(); }
  auto end() const { return probs_.end(); }

 private:
  std::vector<double> probs_;
};

/// Trial count and per-trial success probability of a Binomial distribution.
struct BinomialParams {
  int n;      // n >= 1
  double pi;  // 0 <= pi <= 1

  BinomialParams(int n_, double pi_);
};

/// Standard normal CDF. Absolute error below 1e-12 everywhere.
double std_normal_cdf(double z);

/// Standard normal density.
double std_normal_pdf(double z);

/// Inverse of std_normal_cdf on (0, 1). Safeguarded Newton on the CDF;
/// satisfies std_normal_cdf(std_normal_quantile(p)) = p within 1e-10.
double std_normal_quantile(double p);

/// z_p with Phi(z_p) = 1 - p, i.e. the upper-tail critical point.
/// Computed as -std_normal_quantile(p), which is the same function with
/// better behaviour when p is tiny.
double upper_tail_quantile(double p);

/// Binomial point mass P(X = x). Exact dyadic arithmetic when pi = 1/2 and
/// n <= 50; log-gamma evaluation otherwise.
double binomial_pmf(const BinomialParams& params, int x);

/// Binomial lower tail P(X <= x).
double binomial_cdf(const BinomialParams& params, int x);

/// Full Poisson-Binomial PMF over {0, ..., n} by iterative convolution:
/// start from [1] and fold in one Bernoulli(pi_i) at a time. O(n^2), exact
/// up to rounding; with a constant vector it reproduces the Binomial PMF.
std::vector<double> poisson_binomial_pmf(const ProbabilityVector& pv);

/// Poisson-Binomial lower tail P(X <= x).
double poisson_binomial_cdf(const ProbabilityVector& pv, int x);

/// Mean of the Poisson-Binomial distribution, sum of the pi_i.
double poisson_binomial_mean(const ProbabilityVector& pv);

}  // namespace votecount

#endif
