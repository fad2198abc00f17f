#ifndef VOTECOUNT_INTERVALS_HPP
#define VOTECOUNT_INTERVALS_HPP

namespace votecount {

enum class IntervalMethod { wilson, jeffreys };

struct IntervalEstimate {
  double lower = 0.0;
  double upper = 1.0;
  double level = 0.0;
  double point = 0.0;  // x / n
  IntervalMethod method = IntervalMethod::wilson;
  bool boundary_adjusted = false;  // Jeffreys endpoint rule fired (x = 0 or x = n)
};

/// Score interval for a binomial proportion: center (x + z^2/2) / (n + z^2),
/// half-width (z / (n + z^2)) sqrt(x(n-x)/n + z^2/4), clamped to [0, 1].
IntervalEstimate wilson_interval(int n, int x, double level);

/// Equal-tailed Beta(x + 1/2, n - x + 1/2) credible interval, with the
/// usual endpoint modification: lower = 0 when x = 0, upper = 1 when x = n.
IntervalEstimate jeffreys_interval(int n, int x, double level);

IntervalEstimate proportion_interval(IntervalMethod method, int n, int x,
                                     double level);

/// Regularized incomplete beta I_x(a, b), continued-fraction evaluation.
double regularized_incomplete_beta(double x, double a, double b);

/// Inverse of the regularized incomplete beta in x: bisection until the
/// bracket collapses, so I_q(a, b) = p well within 1e-10.
double beta_quantile(double p, double a, double b);

}  // namespace votecount

#endif
