#include "votecount/vote_analysis.hpp"

#include <stdexcept>

#include "votecount/errors.hpp"
#include "votecount/sign_test.hpp"

namespace votecount {

ScenarioSpec::ScenarioSpec(int n_, int k_, double pi_low_, double pi_high_)
    : n(n_), k(k_), pi_low(pi_low_), pi_high(pi_high_) {
  if (n < 1) throw std::domain_error("scenario requires n >= 1");
  if (k < 0 || k > n) throw std::domain_error("scenario requires 0 <= k <= n");
  if (!(pi_low > 0.0 && pi_low < 0.5)) {
    throw std::domain_error("scenario requires pi_low in (0, 0.5)");
  }
  if (!(pi_high > 0.5 && pi_high < 1.0)) {
    throw std::domain_error("scenario requires pi_high in (0.5, 1)");
  }
}

ProbabilityVector scenario_to_probability_vector(const ScenarioSpec& spec) {
  std::vector<double> probs;
  probs.reserve(spec.n);
  probs.insert(probs.end(), spec.k, spec.pi_high);
  probs.insert(probs.end(), spec.n - spec.k, spec.pi_low);
  return ProbabilityVector(std::move(probs));
}

double pi_plus(const ScenarioSpec& spec) {
  return static_cast<double>(spec.k) / spec.n;
}

bool h1_holds(const ProbabilityVector& pv) {
  int above = 0;
  for (double p : pv) {
    if (p > 0.5) ++above;
  }
  return 2 * above > static_cast<int>(pv.size());
}

RejectionProbabilities rejection_probabilities(const ProbabilityVector& pv,
                                               double alpha_one_sided) {
  const int n = static_cast<int>(pv.size());
  const CriticalValues cv = critical_values(n, alpha_one_sided);
  if (!cv.c_minus.has_value()) {
    throw DegenerateTestError(n, alpha_one_sided);
  }
  RejectionProbabilities out;
  out.c_minus = *cv.c_minus;
  out.c_plus = *cv.c_plus;
  out.alpha_one_sided = alpha_one_sided;
  out.pr_r_minus = poisson_binomial_cdf(pv, out.c_minus);
  out.pr_r_plus = 1.0 - poisson_binomial_cdf(pv, out.c_plus - 1);
  return out;
}

std::vector<std::pair<int, ScenarioSpec>> table1_scenarios() {
  return {
      {1, ScenarioSpec(12, 7, 0.05, 0.55)},
      {1, ScenarioSpec(12, 8, 0.05, 0.55)},
      {1, ScenarioSpec(12, 9, 0.05, 0.55)},
      {1, ScenarioSpec(12, 10, 0.05, 0.55)},
      {2, ScenarioSpec(12, 7, 0.10, 0.60)},
      {2, ScenarioSpec(12, 8, 0.10, 0.60)},
      {3, ScenarioSpec(12, 7, 0.15, 0.65)},
  };
}

std::vector<Table1Row> reproduce_table1() {
  std::vector<Table1Row> rows;
  for (const auto& [scenario, spec] : table1_scenarios()) {
    const ProbabilityVector pv = scenario_to_probability_vector(spec);
    const RejectionProbabilities rp =
        rejection_probabilities(pv, kTable1AlphaOneSided);
    rows.push_back({scenario, spec, pi_plus(spec), rp.pr_r_minus, rp.pr_r_plus});
  }
  return rows;
}

}  // namespace votecount
