// Scenario-file ingestion. The file is JSON:
//
//   {
//     "alpha": 0.025,            // optional, one-sided test level
//     "level": 0.95,             // optional, interval confidence level
//     "replications": 10000,     // optional
//     "seed": 20200917,          // optional
//     "scenarios": [
//       {"label": "s1k7", "n": 12, "k": 7, "pi_low": 0.05, "pi_high": 0.55}
//     ],
//     "probability_vectors": [
//       {"label": "direct", "probs": [0.55, 0.55, 0.05], "target": 0.6667}
//     ]
//   }
//
// Unknown fields are rejected with the JSON path of the offender.
#ifndef VOTECOUNT_TOOLS_SCENARIO_FILE_HPP
#define VOTECOUNT_TOOLS_SCENARIO_FILE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace vctool {

struct ScenarioEntry {
  std::string label;
  int n = 0;
  int k = 0;
  double pi_low = 0.0;
  double pi_high = 0.0;
};

struct VectorEntry {
  std::string label;
  std::vector<double> probs;
  std::optional<double> target;
};

struct ScenarioFileData {
  std::optional<double> alpha;
  std::optional<double> level;
  std::optional<std::uint64_t> replications;
  std::optional<std::uint64_t> seed;
  std::vector<ScenarioEntry> scenarios;
  std::vector<VectorEntry> vectors;
};

/// Throws std::runtime_error with a file/path-bearing message on any
/// syntax or schema violation.
ScenarioFileData parse_scenario_file(const std::string& path);

}  // namespace vctool

#endif
