#include "scenario_file.hpp"

#include <fstream>
#include <set>
#include <stdexcept>

#include "json.hpp"

namespace vctool {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& where,
                       const std::string& message) {
  throw std::runtime_error("scenario file " + path + ": " + message +
                           " at " + where);
}

void reject_unknown_fields(const std::string& path, const json& object,
                           const std::string& where,
                           const std::set<std::string>& allowed) {
  for (const auto& item : object.items()) {
    if (!allowed.count(item.key())) {
      fail(path, where, "unknown field \"" + item.key() + "\"");
    }
  }
}

double require_number(const std::string& path, const json& object,
                      const std::string& where, const std::string& key) {
  if (!object.contains(key)) fail(path, where, "missing field \"" + key + "\"");
  const json& value = object.at(key);
  if (!value.is_number()) fail(path, where + "/" + key, "expected a number");
  return value.get<double>();
}

int require_int(const std::string& path, const json& object,
                const std::string& where, const std::string& key) {
  if (!object.contains(key)) fail(path, where, "missing field \"" + key + "\"");
  const json& value = object.at(key);
  if (!value.is_number_integer()) {
    fail(path, where + "/" + key, "expected an integer");
  }
  return value.get<int>();
}

}  // namespace

ScenarioFileData parse_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("scenario file " + path + ": cannot open");
  }

  json root;
  try {
    root = json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::runtime_error("scenario file " + path + ": " + e.what());
  }
  if (!root.is_object()) {
    fail(path, "/", "expected a JSON object");
  }
  reject_unknown_fields(path, root, "/",
                        {"alpha", "level", "replications", "seed", "scenarios",
                         "probability_vectors"});

  ScenarioFileData data;
  if (root.contains("alpha")) {
    data.alpha = require_number(path, root, "/", "alpha");
  }
  if (root.contains("level")) {
    data.level = require_number(path, root, "/", "level");
  }
  if (root.contains("replications")) {
    const int reps = require_int(path, root, "/", "replications");
    if (reps < 1) fail(path, "/replications", "must be >= 1");
    data.replications = static_cast<std::uint64_t>(reps);
  }
  if (root.contains("seed")) {
    if (!root.at("seed").is_number_unsigned() &&
        !root.at("seed").is_number_integer()) {
      fail(path, "/seed", "expected an integer");
    }
    data.seed = root.at("seed").get<std::uint64_t>();
  }

  if (root.contains("scenarios")) {
    const json& list = root.at("scenarios");
    if (!list.is_array()) fail(path, "/scenarios", "expected an array");
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string where = "/scenarios/" + std::to_string(i);
      const json& item = list[i];
      if (!item.is_object()) fail(path, where, "expected an object");
      reject_unknown_fields(path, item, where,
                            {"label", "n", "k", "pi_low", "pi_high"});
      ScenarioEntry entry;
      entry.n = require_int(path, item, where, "n");
      entry.k = require_int(path, item, where, "k");
      entry.pi_low = require_number(path, item, where, "pi_low");
      entry.pi_high = require_number(path, item, where, "pi_high");
      entry.label = item.value("label", "scenario" + std::to_string(i));
      data.scenarios.push_back(std::move(entry));
    }
  }

  if (root.contains("probability_vectors")) {
    const json& list = root.at("probability_vectors");
    if (!list.is_array()) fail(path, "/probability_vectors", "expected an array");
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string where = "/probability_vectors/" + std::to_string(i);
      const json& item = list[i];
      if (!item.is_object()) fail(path, where, "expected an object");
      reject_unknown_fields(path, item, where, {"label", "probs", "target"});
      if (!item.contains("probs") || !item.at("probs").is_array()) {
        fail(path, where, "missing or non-array field \"probs\"");
      }
      VectorEntry entry;
      for (const json& p : item.at("probs")) {
        if (!p.is_number()) fail(path, where + "/probs", "expected numbers");
        entry.probs.push_back(p.get<double>());
      }
      if (entry.probs.empty()) fail(path, where + "/probs", "must be non-empty");
      if (item.contains("target")) {
        entry.target = require_number(path, item, where, "target");
      }
      entry.label = item.value("label", "vector" + std::to_string(i));
      data.vectors.push_back(std::move(entry));
    }
  }

  return data;
}

}  // namespace vctool
