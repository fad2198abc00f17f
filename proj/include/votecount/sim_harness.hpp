#ifndef VOTECOUNT_SIM_HARNESS_HPP
#define VOTECOUNT_SIM_HARNESS_HPP

#include <cstdint>
#include <vector>

#include "votecount/dist_core.hpp"
#include "votecount/intervals.hpp"
#include "votecount/vote_analysis.hpp"

namespace votecount {

/// splitmix64 (Steele, Lea & Flood's SplittableRandom finalizer). Small,
/// seedable and cheap enough to instantiate once per replication.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

/// Generator for one replication, derived from (master seed, replication
/// index) alone. Replications are therefore independent of execution order
/// and of how they are distributed over threads.
SplitMix64 replication_stream(std::uint64_t master_seed, std::uint64_t index);

/// One Poisson-Binomial draw: the count of u_i < pi_i over the vector.
int draw_poisson_binomial(const ProbabilityVector& pv, SplitMix64& rng);

struct CoverageReport {
  IntervalMethod method = IntervalMethod::wilson;
  double level = 0.0;
  std::uint64_t replications = 0;
  std::uint64_t seed = 0;
  double pi_target = 0.0;
  double coverage = 0.0;
  double mc_std_error = 0.0;  // sqrt(coverage (1 - coverage) / replications)
};

/// Monte Carlo coverage of the (Wilson or Jeffreys) interval for pi_target
/// when X ~ PoissonBinomial(pv): per replication draw x, form the interval
/// from (n, x) and score closed containment lower <= pi_target <= upper.
/// Deterministic for fixed seed regardless of the thread count.
CoverageReport coverage_experiment(const ProbabilityVector& pv,
                                   double pi_target, IntervalMethod method,
                                   double level, std::uint64_t replications,
                                   std::uint64_t seed, int threads = 1);

/// Scenario convenience: the target is pi_plus = k / n.
CoverageReport coverage_experiment(const ScenarioSpec& spec,
                                   IntervalMethod method, double level,
                                   std::uint64_t replications,
                                   std::uint64_t seed, int threads = 1);

/// The quantity the simulation above estimates, summed exactly over the
/// n + 1 outcomes: sum_x pmf[x] 1{interval(n, x) contains pi_target}.
double exact_coverage(const ProbabilityVector& pv, double pi_target,
                      IntervalMethod method, double level);

/// Reference-table row with simulated and exact coverage columns attached.
/// method_asymmetry is set when the exact Jeffreys and Wilson coverages
/// disagree materially (the target sitting between the two interval
/// boundaries for an outcome with non-trivial mass).
struct Table1FullRow {
  Table1Row base;
  double exact_cov_jeffreys = 0.0;
  double exact_cov_wilson = 0.0;
  double sim_cov_jeffreys = 0.0;
  double sim_cov_wilson = 0.0;
  double mc_se_jeffreys = 0.0;
  double mc_se_wilson = 0.0;
  bool method_asymmetry = false;
};

constexpr double kTable1Level = 0.95;
constexpr double kMethodAsymmetryTolerance = 0.02;

std::vector<Table1FullRow> reproduce_table1_full(std::uint64_t replications,
                                                 std::uint64_t seed,
                                                 int threads = 1);

}  // namespace votecount

#endif
