#include "votecount/sim_harness.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace votecount {

namespace {

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Containment of the target by the interval formed from each of the n + 1
// possible outcomes. Both the simulation and the exact sum reduce to this
// table, which keeps the two on identical interval semantics.
std::vector<bool> containment_table(int n, double pi_target,
                                    IntervalMethod method, double level) {
  std::vector<bool> contains(n + 1);
  for (int x = 0; x <= n; ++x) {
    const IntervalEstimate est = proportion_interval(method, n, x, level);
    contains[x] = est.lower <= pi_target && pi_target <= est.upper;
  }
  return contains;
}

}  // namespace

SplitMix64 replication_stream(std::uint64_t master_seed, std::uint64_t index) {
  // Hash (seed, index) into a well-spread initial state; consecutive indices
  // must not yield overlapping streams.
  return SplitMix64(mix64(master_seed + 0x9e3779b97f4a7c15ULL * (index + 1)));
}

int draw_poisson_binomial(const ProbabilityVector& pv, SplitMix64& rng) {
  int count = 0;
  for (double p : pv) {
    if (rng.uniform01() < p) ++count;
  }
  return count;
}

CoverageReport coverage_experiment(const ProbabilityVector& pv,
                                   double pi_target, IntervalMethod method,
                                   double level, std::uint64_t replications,
                                   std::uint64_t seed, int threads) {
  if (replications < 1) {
    throw std::domain_error("coverage experiment requires replications >= 1");
  }
  const int n = static_cast<int>(pv.size());
  const std::vector<bool> contains =
      containment_table(n, pi_target, method, level);

  const std::uint64_t worker_count = std::clamp<std::uint64_t>(
      threads < 1 ? 1 : static_cast<std::uint64_t>(threads), 1, replications);

  std::vector<std::uint64_t> hits_per_worker(worker_count, 0);
  auto run_block = [&](std::uint64_t worker) {
    const std::uint64_t begin = replications * worker / worker_count;
    const std::uint64_t end = replications * (worker + 1) / worker_count;
    std::uint64_t hits = 0;
    for (std::uint64_t rep = begin; rep < end; ++rep) {
      SplitMix64 rng = replication_stream(seed, rep);
      const int x = draw_poisson_binomial(pv, rng);
      if (contains[x]) ++hits;
    }
    hits_per_worker[worker] = hits;
  };

  if (worker_count == 1) {
    run_block(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(worker_count);
    for (std::uint64_t w = 0; w < worker_count; ++w) {
      pool.emplace_back(run_block, w);
    }
    for (auto& t : pool) t.join();
  }

  std::uint64_t hits = 0;
  for (std::uint64_t h : hits_per_worker) hits += h;

  CoverageReport report;
  report.method = method;
  report.level = level;
  report.replications = replications;
  report.seed = seed;
  report.pi_target = pi_target;
  report.coverage = static_cast<double>(hits) / static_cast<double>(replications);
  report.mc_std_error = std::sqrt(report.coverage * (1.0 - report.coverage) /
                                  static_cast<double>(replications));
  return report;
}

CoverageReport coverage_experiment(const ScenarioSpec& spec,
                                   IntervalMethod method, double level,
                                   std::uint64_t replications,
                                   std::uint64_t seed, int threads) {
  return coverage_experiment(scenario_to_probability_vector(spec),
                             pi_plus(spec), method, level, replications, seed,
                             threads);
}

double exact_coverage(const ProbabilityVector& pv, double pi_target,
                      IntervalMethod method, double level) {
  const int n = static_cast<int>(pv.size());
  const std::vector<bool> contains =
      containment_table(n, pi_target, method, level);
  const std::vector<double> pmf = poisson_binomial_pmf(pv);
  double total = 0.0;
  for (int x = 0; x <= n; ++x) {
    if (contains[x]) total += pmf[x];
  }
  return total;
}

std::vector<Table1FullRow> reproduce_table1_full(std::uint64_t replications,
                                                 std::uint64_t seed,
                                                 int threads) {
  std::vector<Table1FullRow> rows;
  for (const Table1Row& base : reproduce_table1()) {
    const ProbabilityVector pv = scenario_to_probability_vector(base.spec);
    const double target = base.pi_plus;

    const double exact_j =
        exact_coverage(pv, target, IntervalMethod::jeffreys, kTable1Level);
    const double exact_w =
        exact_coverage(pv, target, IntervalMethod::wilson, kTable1Level);
    const CoverageReport sim_j =
        coverage_experiment(pv, target, IntervalMethod::jeffreys, kTable1Level,
                            replications, seed, threads);
    const CoverageReport sim_w =
        coverage_experiment(pv, target, IntervalMethod::wilson, kTable1Level,
                            replications, seed, threads);
    rows.push_back(Table1FullRow{
        base, exact_j, exact_w, sim_j.coverage, sim_w.coverage,
        sim_j.mc_std_error, sim_w.mc_std_error,
        std::abs(exact_j - exact_w) > kMethodAsymmetryTolerance});
  }
  return rows;
}

}  // namespace votecount
