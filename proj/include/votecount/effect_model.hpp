#ifndef VOTECOUNT_EFFECT_MODEL_HPP
#define VOTECOUNT_EFFECT_MODEL_HPP

#include <span>
#include <vector>

namespace votecount {

/// One study: patient count N and standardized true effect delta = mu / sigma.
struct StudyEffect {
  int sample_size;  // N >= 1
  double delta;     // finite

  StudyEffect(int sample_size_, double delta_);
};

/// Mean and heterogeneity of a normal random-effects model for the
/// standardized effect, delta ~ N(theta, tau^2). tau = 0 recovers the
/// fixed-effect case.
struct RandomEffectsSpec {
  double theta;
  double tau;  // >= 0

  RandomEffectsSpec(double theta_, double tau_);
};

struct IsoCurvePoint {
  int sample_size;
  double delta;
};

/// Probability that the study's effect estimate lands on the positive side:
/// Phi(sqrt(N) * delta). Strictly inside (0, 1), equal to 1/2 iff delta = 0.
double sign_probability(const StudyEffect& study);

/// CDF of the study's one-sided p-value at p, 1 - Phi(z_p - sqrt(N) delta)
/// with Phi(z_p) = 1 - p. Under delta = 0 the p-value is uniform; at
/// p = 1/2 this equals sign_probability.
double p_value_cdf(const StudyEffect& study, double p);

/// For each sample size N, the standardized effect delta with
/// sign probability exactly pi_target: delta = Phi^{-1}(pi_target) / sqrt(N).
std::vector<IsoCurvePoint> iso_curve(double pi_target,
                                     std::span<const int> sample_sizes);

/// Marginal sign probability E[Phi(sqrt(N) delta)] under
/// delta ~ N(theta, tau^2), in closed form:
/// Phi(sqrt(N) theta / sqrt(1 + N tau^2)).
double marginal_sign_probability(int sample_size, const RandomEffectsSpec& re);

/// Two-arm convenience mapping: with N patients per arm and standardized
/// difference delta, the one-sample machinery applies with an effective
/// sqrt(N/2) scaling. This is an extension beyond the one-sample model the
/// rest of the library is built on.
double two_sample_sign_probability(int n_per_arm, double delta);

}  // namespace votecount

#endif
