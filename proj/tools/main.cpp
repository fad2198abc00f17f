// votecount: sign tests, rejection probabilities and interval coverage for
// direction-of-effect vote counting, on top of the C library interface.
#include <array>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "render.hpp"
#include "scenario_file.hpp"
#include "votecount.h"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitDomain = 3;
constexpr std::uint64_t kDefaultSeed = 20200917;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check(vc_status status) {
  if (status != VC_OK) {
    throw std::runtime_error(std::string(vc_status_name(status)) + ": " +
                             vc_last_error());
  }
}

struct PvecHandle {
  vc_pvec* ptr = nullptr;
  PvecHandle() = default;
  PvecHandle(const PvecHandle&) = delete;
  PvecHandle& operator=(const PvecHandle&) = delete;
  PvecHandle(PvecHandle&& other) noexcept : ptr(other.ptr) { other.ptr = nullptr; }
  PvecHandle& operator=(PvecHandle&& other) noexcept {
    std::swap(ptr, other.ptr);
    return *this;
  }
  ~PvecHandle() { vc_pvec_free(ptr); }
};

PvecHandle make_pvec(const std::vector<double>& probs) {
  PvecHandle handle;
  check(vc_pvec_create(probs.data(), probs.size(), &handle.ptr));
  return handle;
}

vctool::Format parse_format(const std::string& name) {
  if (name == "table") return vctool::Format::table;
  if (name == "csv") return vctool::Format::csv;
  return vctool::Format::record;
}

vc_interval_method parse_method(const std::string& name) {
  return name == "jeffreys" ? VC_METHOD_JEFFREYS : VC_METHOD_WILSON;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::fputs(text.c_str(), stdout);
    return;
  }
  // The full output is assembled before the file is opened, so a failed
  // computation never leaves a partial file behind.
  std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open output file " + out_path);
  out << text;
  out.flush();
  if (!out) throw std::runtime_error("failed writing output file " + out_path);
}

// One analysis input for the power / coverage commands: a probability
// vector plus the proportion it targets and labelling metadata.
struct AnalysisInput {
  std::string label;
  std::vector<double> probs;
  double pi_target = 0.0;
  bool from_scenario = false;
  int n = 0;
  int k = 0;
  double pi_low = 0.0;
  double pi_high = 0.0;
};

double fraction_above_half(const std::vector<double>& probs) {
  int above = 0;
  for (double p : probs) {
    if (p > 0.5) ++above;
  }
  return static_cast<double>(above) / static_cast<double>(probs.size());
}

AnalysisInput input_from_scenario(std::string label, int n, int k,
                                  double pi_low, double pi_high) {
  AnalysisInput input;
  input.label = std::move(label);
  input.from_scenario = true;
  input.n = n;
  input.k = k;
  input.pi_low = pi_low;
  input.pi_high = pi_high;
  input.pi_target = static_cast<double>(k) / n;
  input.probs.insert(input.probs.end(), k, pi_high);
  input.probs.insert(input.probs.end(), n - k, pi_low);
  return input;
}

// Flag set shared by `power` and `coverage` for choosing the inputs.
struct InputFlags {
  int builtin_scenario = 0;  // 1..3 from the bundled table
  int k = -1;                // optional row filter for --scenario
  int n = 0;
  double pi_low = 0.0;
  double pi_high = 0.0;
  std::vector<double> pi;
  double target = 0.0;
  std::string scenario_file;

  CLI::Option* scenario_opt = nullptr;
  CLI::Option* n_opt = nullptr;
  CLI::Option* pi_low_opt = nullptr;
  CLI::Option* pi_high_opt = nullptr;
  CLI::Option* pi_opt = nullptr;
  CLI::Option* file_opt = nullptr;
  CLI::Option* target_opt = nullptr;
};

void add_input_flags(CLI::App& cmd, InputFlags& flags, bool with_target) {
  flags.scenario_opt =
      cmd.add_option("--scenario", flags.builtin_scenario,
                     "Bundled heterogeneity scenario (1, 2 or 3)")
          ->check(CLI::Range(1, 3));
  cmd.add_option("--k", flags.k,
                 "Positive-study count; filters --scenario rows or completes "
                 "a custom scenario")
      ->check(CLI::NonNegativeNumber);
  flags.n_opt = cmd.add_option("--n", flags.n, "Study count of a custom scenario")
                    ->check(CLI::PositiveNumber);
  flags.pi_low_opt =
      cmd.add_option("--pi-low", flags.pi_low,
                     "Sign probability of the negative-effect studies (< 0.5)");
  flags.pi_high_opt =
      cmd.add_option("--pi-high", flags.pi_high,
                     "Sign probability of the positive-effect studies (> 0.5)");
  flags.pi_opt = cmd.add_option("--pi", flags.pi,
                                "Comma-separated per-study sign probabilities")
                     ->delimiter(',');
  flags.file_opt = cmd.add_option("--scenario-file", flags.scenario_file,
                                  "JSON file with scenarios and/or vectors");
  if (with_target) {
    flags.target_opt =
        cmd.add_option("--target", flags.target,
                       "Proportion targeted by the interval (defaults to "
                       "the fraction of probabilities above 0.5)");
  }
}

std::vector<AnalysisInput> resolve_inputs(const InputFlags& flags,
                                          const vctool::ScenarioFileData* file) {
  const bool has_builtin = flags.scenario_opt->count() > 0;
  const bool has_custom = flags.n_opt->count() > 0;
  const bool has_pi = flags.pi_opt->count() > 0;
  const bool has_file = flags.file_opt->count() > 0;
  const int sources = static_cast<int>(has_builtin) + static_cast<int>(has_custom) +
                      static_cast<int>(has_pi) + static_cast<int>(has_file);
  if (sources == 0) {
    throw UsageError(
        "choose an input: --scenario, --n/--k/--pi-low/--pi-high, --pi or "
        "--scenario-file");
  }
  if (sources > 1) {
    throw UsageError("choose exactly one input source");
  }

  std::vector<AnalysisInput> inputs;
  if (has_builtin) {
    std::array<vc_table1_row, VC_TABLE1_ROWS> rows;
    check(vc_table1_rejection(rows.data()));
    for (const vc_table1_row& row : rows) {
      if (row.scenario != flags.builtin_scenario) continue;
      if (flags.k >= 0 && row.k != flags.k) continue;
      inputs.push_back(input_from_scenario(
          "s" + std::to_string(row.scenario) + "k" + std::to_string(row.k),
          row.n, row.k, row.pi_low, row.pi_high));
    }
    if (inputs.empty()) {
      throw UsageError("no bundled row matches --scenario/--k");
    }
  } else if (has_custom) {
    if (flags.k < 0 || flags.pi_low_opt->count() == 0 ||
        flags.pi_high_opt->count() == 0) {
      throw UsageError("custom scenario needs --n, --k, --pi-low and --pi-high");
    }
    inputs.push_back(input_from_scenario("custom", flags.n, flags.k,
                                         flags.pi_low, flags.pi_high));
  } else if (has_pi) {
    if (flags.pi.empty()) throw UsageError("--pi needs at least one probability");
    AnalysisInput input;
    input.label = "pi";
    input.probs = flags.pi;
    const bool has_target = flags.target_opt && flags.target_opt->count() > 0;
    input.pi_target =
        has_target ? flags.target : fraction_above_half(flags.pi);
    inputs.push_back(std::move(input));
  } else {
    for (const vctool::ScenarioEntry& entry : file->scenarios) {
      inputs.push_back(input_from_scenario(entry.label, entry.n, entry.k,
                                           entry.pi_low, entry.pi_high));
    }
    for (const vctool::VectorEntry& entry : file->vectors) {
      AnalysisInput input;
      input.label = entry.label;
      input.probs = entry.probs;
      input.pi_target =
          entry.target.value_or(fraction_above_half(entry.probs));
      inputs.push_back(std::move(input));
    }
    if (inputs.empty()) {
      throw UsageError("scenario file contains no scenarios or vectors");
    }
  }
  return inputs;
}

// ---- sign-test ----

int run_sign_test_cmd(int n, int x, double alpha, const std::string& sided,
                      int ties, const std::string& format,
                      const std::string& out_path) {
  if (ties < 0) throw UsageError("--ties must be >= 0");
  if (ties >= n) throw UsageError("--ties must leave at least one study");
  const int analyzed_n = n - ties;

  vc_sign_test_report report;
  check(vc_sign_test(analyzed_n, x, alpha,
                     sided == "one" ? VC_ONE_SIDED : VC_TWO_SIDED, &report));

  std::string note;
  if (ties > 0) {
    note = std::to_string(ties) + " tie(s) excluded from n";
  }
  if (report.degenerate) {
    if (!note.empty()) note += "; ";
    note += "test degenerate at this alpha";
  }

  vctool::RowSet rows("sign_test",
                      {"n", "x", "ties", "alpha", "sided", "p_plus", "p_minus",
                       "p_two_sided", "c_minus", "c_plus", "exact_size",
                       "decision", "degenerate", "note"});
  const char* decision = report.decision == VC_REJECT_PLUS    ? "reject_plus"
                         : report.decision == VC_REJECT_MINUS ? "reject_minus"
                                                              : "fail_to_reject";
  rows.add({vctool::int_cell(report.n), vctool::int_cell(report.x),
            vctool::int_cell(ties), vctool::param_cell(report.alpha),
            vctool::str_cell(sided), vctool::prob_cell(report.p_plus),
            vctool::prob_cell(report.p_minus),
            vctool::prob_cell(report.p_two_sided),
            vctool::int_cell(report.c_minus), vctool::int_cell(report.c_plus),
            vctool::prob_cell(report.exact_size), vctool::str_cell(decision),
            vctool::int_cell(report.degenerate), vctool::str_cell(note)});
  emit(rows.render(parse_format(format), /*card_when_single=*/true), out_path);
  return 0;
}

// ---- power ----

int run_power_cmd(const std::vector<AnalysisInput>& inputs, double alpha,
                  const std::string& format, const std::string& out_path) {
  vctool::RowSet rows("rejection_probabilities",
                      {"label", "n", "pi_plus", "h1", "alpha_one_sided",
                       "c_minus", "c_plus", "pr_r_minus", "pr_r_plus"});
  for (const AnalysisInput& input : inputs) {
    const PvecHandle pv = make_pvec(input.probs);
    vc_rejection_report rp;
    check(vc_rejection_probabilities(pv.ptr, alpha, &rp));
    int h1 = 0;
    check(vc_h1_holds(pv.ptr, &h1));
    rows.add({vctool::str_cell(input.label),
              vctool::int_cell(static_cast<long long>(input.probs.size())),
              vctool::prob_cell(input.pi_target), vctool::int_cell(h1),
              vctool::param_cell(rp.alpha_one_sided),
              vctool::int_cell(rp.c_minus), vctool::int_cell(rp.c_plus),
              vctool::prob_cell(rp.pr_r_minus),
              vctool::prob_cell(rp.pr_r_plus)});
  }
  emit(rows.render(parse_format(format)), out_path);
  return 0;
}

// ---- coverage ----

int run_coverage_cmd(const std::vector<AnalysisInput>& inputs,
                     const std::string& method_name, double level,
                     std::uint64_t replications, std::uint64_t seed,
                     int threads, const std::string& format,
                     const std::string& out_path) {
  const vc_interval_method method = parse_method(method_name);
  vctool::RowSet rows("coverage",
                      {"label", "n", "method", "level", "replications", "seed",
                       "pi_target", "coverage", "mc_std_error",
                       "exact_coverage"});
  for (const AnalysisInput& input : inputs) {
    const PvecHandle pv = make_pvec(input.probs);
    vc_coverage_report report;
    check(vc_coverage_experiment(pv.ptr, input.pi_target, method, level,
                                 replications, seed, threads, &report));
    double exact = 0.0;
    check(vc_exact_coverage(pv.ptr, input.pi_target, method, level, &exact));
    rows.add({vctool::str_cell(input.label),
              vctool::int_cell(static_cast<long long>(input.probs.size())),
              vctool::str_cell(method_name), vctool::param_cell(report.level),
              vctool::int_cell(static_cast<long long>(report.replications)),
              vctool::int_cell(static_cast<long long>(report.seed)),
              vctool::param_cell(report.pi_target),
              vctool::prob_cell(report.coverage),
              vctool::param_cell(report.mc_std_error),
              vctool::prob_cell(exact)});
  }
  emit(rows.render(parse_format(format)), out_path);
  return 0;
}

// ---- iso-curve ----

int run_iso_curve_cmd(const std::vector<double>& targets, int n_min, int n_max,
                      int n_step, const std::string& format,
                      const std::string& out_path) {
  if (targets.empty()) throw UsageError("--pi needs at least one target");
  if (n_min < 1 || n_max < n_min || n_step < 1) {
    throw UsageError("sample-size range needs 1 <= n-min <= n-max, n-step >= 1");
  }
  vctool::RowSet rows("iso_curve", {"pi_target", "sample_size", "delta"});
  for (double target : targets) {
    for (int n = n_min; n <= n_max; n += n_step) {
      double delta = 0.0;
      check(vc_iso_curve_delta(target, n, &delta));
      rows.add({vctool::param_cell(target), vctool::int_cell(n),
                vctool::param_cell(delta)});
    }
  }
  emit(rows.render(parse_format(format)), out_path);
  return 0;
}

// ---- reproduce-table1 ----

int run_table1_cmd(std::uint64_t replications, std::uint64_t seed, int threads,
                   const std::string& format, const std::string& out_path) {
  std::array<vc_table1_row, VC_TABLE1_ROWS> table;
  check(vc_table1_full(replications, seed, threads, table.data()));

  vctool::RowSet rows("table1_row",
                      {"scenario", "pi_low", "pi_high", "k", "pi_plus",
                       "pr_r_minus", "pr_r_plus", "cov_jeffreys_sim",
                       "cov_jeffreys_exact", "cov_wilson_sim",
                       "cov_wilson_exact", "mc_se_jeffreys", "mc_se_wilson",
                       "method_asymmetry"});
  for (const vc_table1_row& row : table) {
    rows.add({vctool::int_cell(row.scenario), vctool::param_cell(row.pi_low),
              vctool::param_cell(row.pi_high), vctool::int_cell(row.k),
              vctool::prob_cell(row.pi_plus), vctool::prob_cell(row.pr_r_minus),
              vctool::prob_cell(row.pr_r_plus),
              vctool::prob_cell(row.sim_cov_jeffreys),
              vctool::prob_cell(row.exact_cov_jeffreys),
              vctool::prob_cell(row.sim_cov_wilson),
              vctool::prob_cell(row.exact_cov_wilson),
              vctool::param_cell(row.mc_se_jeffreys),
              vctool::param_cell(row.mc_se_wilson),
              vctool::Cell{row.method_asymmetry ? "1" : "0",
                           row.method_asymmetry ? "J/W-asymmetry" : ""}});
  }

  std::string body = rows.render(parse_format(format));
  if (parse_format(format) == vctool::Format::table) {
    for (const vc_table1_row& row : table) {
      if (row.method_asymmetry) {
        body += "\nnote: scenario " + std::to_string(row.scenario) + ", k=" +
                std::to_string(row.k) +
                " - Jeffreys and Wilson coverage differ because the target "
                "proportion falls between the two interval bounds for an "
                "outcome with non-trivial mass; both exact and simulated "
                "values are reported above.\n";
      }
    }
  }
  emit(body, out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "votecount - exact sign tests, Poisson-Binomial rejection\n"
      "probabilities and interval coverage for direction-of-effect vote\n"
      "counting in evidence synthesis"};
  app.require_subcommand(1);

  std::string format = "table";
  std::string out_path;
  const auto add_output_flags = [&](CLI::App& cmd) {
    cmd.add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"table", "csv", "record"}));
    cmd.add_option("--out", out_path, "Write output to this file");
  };

  // sign-test
  auto* sign = app.add_subcommand(
      "sign-test", "Exact sign test on a count of positive effects");
  int st_n = 0, st_x = 0, st_ties = 0;
  double st_alpha = 0.05;
  std::string st_sided = "two";
  sign->add_option("--n", st_n, "Number of studies (including ties)")
      ->required()
      ->check(CLI::PositiveNumber);
  sign->add_option("--x", st_x, "Number of positive effects")
      ->required()
      ->check(CLI::NonNegativeNumber);
  sign->add_option("--alpha", st_alpha, "Significance level");
  sign->add_option("--sided", st_sided, "one or two sided")
      ->check(CLI::IsMember({"one", "two"}));
  sign->add_option("--ties", st_ties,
                   "Zero effects; excluded from n before testing")
      ->check(CLI::NonNegativeNumber);
  add_output_flags(*sign);

  // power
  auto* power = app.add_subcommand(
      "power", "Exact sign-test rejection probabilities under a "
               "Poisson-Binomial truth");
  InputFlags power_inputs;
  double power_alpha = 0.025;
  add_input_flags(*power, power_inputs, /*with_target=*/false);
  power->add_option("--alpha", power_alpha, "One-sided significance level");
  add_output_flags(*power);

  // coverage
  auto* coverage = app.add_subcommand(
      "coverage", "Monte Carlo and exact interval coverage for the "
                  "positive-study proportion");
  InputFlags cov_inputs;
  std::string cov_method = "wilson";
  double cov_level = 0.95;
  std::uint64_t cov_reps = 10000;
  std::uint64_t cov_seed = kDefaultSeed;
  int cov_threads = 1;
  add_input_flags(*coverage, cov_inputs, /*with_target=*/true);
  coverage->add_option("--method", cov_method, "Interval method")
      ->check(CLI::IsMember({"wilson", "jeffreys"}));
  coverage->add_option("--level", cov_level, "Confidence level");
  coverage->add_option("--reps", cov_reps, "Monte Carlo replications")
      ->check(CLI::PositiveNumber);
  coverage->add_option("--seed", cov_seed, "Master seed");
  coverage->add_option("--threads", cov_threads, "Worker threads")
      ->check(CLI::PositiveNumber);
  add_output_flags(*coverage);

  // iso-curve
  auto* iso = app.add_subcommand(
      "iso-curve", "Sample-size / effect-size combinations with a fixed "
                   "sign probability");
  std::vector<double> iso_targets;
  int iso_n_min = 10, iso_n_max = 500, iso_n_step = 10;
  iso->add_option("--pi", iso_targets,
                  "Comma-separated target sign probabilities")
      ->required()
      ->delimiter(',');
  iso->add_option("--n-min", iso_n_min, "Smallest sample size");
  iso->add_option("--n-max", iso_n_max, "Largest sample size");
  iso->add_option("--n-step", iso_n_step, "Sample-size increment");
  add_output_flags(*iso);

  // reproduce-table1
  auto* table1 = app.add_subcommand(
      "reproduce-table1",
      "Bundled reference table: exact rejection probabilities plus "
      "simulated and exact 95% interval coverage");
  std::uint64_t t1_reps = 10000;
  std::uint64_t t1_seed = kDefaultSeed;
  int t1_threads = 1;
  table1->add_option("--reps", t1_reps, "Monte Carlo replications")
      ->check(CLI::PositiveNumber);
  table1->add_option("--seed", t1_seed, "Master seed");
  table1->add_option("--threads", t1_threads, "Worker threads")
      ->check(CLI::PositiveNumber);
  add_output_flags(*table1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (sign->parsed()) {
      return run_sign_test_cmd(st_n, st_x, st_alpha, st_sided, st_ties, format,
                               out_path);
    }
    if (power->parsed()) {
      std::optional<vctool::ScenarioFileData> file;
      double alpha = power_alpha;
      if (power_inputs.file_opt->count() > 0) {
        file = vctool::parse_scenario_file(power_inputs.scenario_file);
        if (power->get_option("--alpha")->count() == 0 && file->alpha) {
          alpha = *file->alpha;
        }
      }
      return run_power_cmd(resolve_inputs(power_inputs, file ? &*file : nullptr),
                           alpha, format, out_path);
    }
    if (coverage->parsed()) {
      std::optional<vctool::ScenarioFileData> file;
      double level = cov_level;
      std::uint64_t reps = cov_reps;
      std::uint64_t seed = cov_seed;
      if (cov_inputs.file_opt->count() > 0) {
        file = vctool::parse_scenario_file(cov_inputs.scenario_file);
        if (coverage->get_option("--level")->count() == 0 && file->level) {
          level = *file->level;
        }
        if (coverage->get_option("--reps")->count() == 0 && file->replications) {
          reps = *file->replications;
        }
        if (coverage->get_option("--seed")->count() == 0 && file->seed) {
          seed = *file->seed;
        }
      }
      return run_coverage_cmd(resolve_inputs(cov_inputs, file ? &*file : nullptr),
                              cov_method, level, reps, seed, cov_threads,
                              format, out_path);
    }
    if (iso->parsed()) {
      return run_iso_curve_cmd(iso_targets, iso_n_min, iso_n_max, iso_n_step,
                               format, out_path);
    }
    if (table1->parsed()) {
      return run_table1_cmd(t1_reps, t1_seed, t1_threads, format, out_path);
    }
  } catch (const UsageError& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitDomain;
  }
  return 0;
}
