#ifndef VOTECOUNT_VOTE_ANALYSIS_HPP
#define VOTECOUNT_VOTE_ANALYSIS_HPP

#include <vector>

#include "votecount/dist_core.hpp"

namespace votecount {

/// Two-point heterogeneity configuration: k of the n studies have sign
/// probability pi_high (> 1/2, positive true effect) and the remaining
/// n - k have pi_low (< 1/2, negative true effect).
struct ScenarioSpec {
  int n;
  int k;
  double pi_low;
  double pi_high;

  ScenarioSpec(int n_, int k_, double pi_low_, double pi_high_);
};

/// Sign-test rejection probabilities under a Poisson-Binomial truth:
/// pr_r_minus = P(X <= c_minus), pr_r_plus = P(X >= c_plus).
struct RejectionProbabilities {
  double pr_r_minus = 0.0;
  double pr_r_plus = 0.0;
  int c_minus = -1;
  int c_plus = -1;
  double alpha_one_sided = 0.0;
};

ProbabilityVector scenario_to_probability_vector(const ScenarioSpec& spec);

/// The estimand: proportion k / n of studies whose true effect is positive.
double pi_plus(const ScenarioSpec& spec);

/// Whether more than half of the sign probabilities lie strictly above 1/2,
/// the composite "majority of studies favour the intervention" alternative.
bool h1_holds(const ProbabilityVector& pv);

/// Exact rejection probabilities of the sign test at one-sided level
/// alpha_one_sided when X is Poisson-Binomial(pv). Throws
/// DegenerateTestError when no critical value exists at this (n, alpha).
RejectionProbabilities rejection_probabilities(const ProbabilityVector& pv,
                                               double alpha_one_sided);

/// One row of the bundled reference table: a heterogeneity scenario and the
/// exact sign-test rejection probabilities it induces at one-sided
/// alpha = 0.025.
struct Table1Row {
  int scenario;
  ScenarioSpec spec;
  double pi_plus;
  double pr_r_minus;
  double pr_r_plus;
};

/// The seven bundled (scenario, k) configurations: n = 12 throughout,
/// scenario 1 uses (pi_low, pi_high) = (0.05, 0.55) with k = 7..10,
/// scenario 2 uses (0.10, 0.60) with k = 7, 8, and scenario 3 uses
/// (0.15, 0.65) with k = 7.
std::vector<std::pair<int, ScenarioSpec>> table1_scenarios();

/// Rejection-probability columns of the reference table, computed exactly.
std::vector<Table1Row> reproduce_table1();

constexpr double kTable1AlphaOneSided = 0.025;

}  // namespace votecount

#endif
