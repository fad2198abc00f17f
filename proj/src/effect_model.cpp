#include "votecount/effect_model.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "votecount/dist_core.hpp"

namespace votecount {

namespace {

// Sign probabilities must stay strictly inside (0, 1): they parameterize
// Bernoulli studies and feed ProbabilityVector, which rejects degenerate
// values. For |sqrt(N) delta| beyond ~8 the CDF rounds to 0 or 1 in double
// precision, so pin to the nearest representable interior value.
double clamp_open_unit(double p) {
  if (p <= 0.0) return std::numeric_limits<double>::min();
  if (p >= 1.0) return std::nextafter(1.0, 0.0);
  return p;
}

}  // namespace

StudyEffect::StudyEffect(int sample_size_, double delta_)
    : sample_size(sample_size_), delta(delta_) {
  if (sample_size < 1) throw std::domain_error("study sample size must be >= 1");
  if (!std::isfinite(delta)) throw std::domain_error("delta must be finite");
}

RandomEffectsSpec::RandomEffectsSpec(double theta_, double tau_)
    : theta(theta_), tau(tau_) {
  if (!std::isfinite(theta)) throw std::domain_error("theta must be finite");
  if (!(tau >= 0.0) || !std::isfinite(tau)) {
    throw std::domain_error("tau must be finite and >= 0");
  }
}

double sign_probability(const StudyEffect& study) {
  return clamp_open_unit(std_normal_cdf(
      std::sqrt(static_cast<double>(study.sample_size)) * study.delta));
}

double p_value_cdf(const StudyEffect& study, double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::domain_error("p_value_cdf requires p in (0, 1)");
  }
  const double shift =
      std::sqrt(static_cast<double>(study.sample_size)) * study.delta;
  return 1.0 - std_normal_cdf(upper_tail_quantile(p) - shift);
}

std::vector<IsoCurvePoint> iso_curve(double pi_target,
                                     std::span<const int> sample_sizes) {
  if (!(pi_target > 0.0 && pi_target < 1.0)) {
    throw std::domain_error("iso_curve requires pi_target in (0, 1)");
  }
  if (sample_sizes.empty()) {
    throw std::domain_error("iso_curve requires at least one sample size");
  }
  const double z = std_normal_quantile(pi_target);
  std::vector<IsoCurvePoint> points;
  points.reserve(sample_sizes.size());
  for (int n : sample_sizes) {
    if (n < 1) throw std::domain_error("sample sizes must be >= 1");
    points.push_back({n, z / std::sqrt(static_cast<double>(n))});
  }
  return points;
}

double marginal_sign_probability(int sample_size, const RandomEffectsSpec& re) {
  if (sample_size < 1) throw std::domain_error("sample size must be >= 1");
  const double n = static_cast<double>(sample_size);
  return clamp_open_unit(std_normal_cdf(
      std::sqrt(n) * re.theta / std::sqrt(1.0 + n * re.tau * re.tau)));
}

double two_sample_sign_probability(int n_per_arm, double delta) {
  if (n_per_arm < 1) throw std::domain_error("per-arm sample size must be >= 1");
  if (!std::isfinite(delta)) throw std::domain_error("delta must be finite");
  return clamp_open_unit(std_normal_cdf(std::sqrt(n_per_arm / 2.0) * delta));
}

}  // namespace votecount
