#include "votecount.h"

#include <array>
#include <exception>
#include <new>
#include <string>
#include <vector>

#include "votecount/dist_core.hpp"
#include "votecount/effect_model.hpp"
#include "votecount/errors.hpp"
#include "votecount/intervals.hpp"
#include "votecount/sign_test.hpp"
#include "votecount/sim_harness.hpp"
#include "votecount/vote_analysis.hpp"

struct vc_pvec {
  votecount::ProbabilityVector impl;
};

namespace {

thread_local std::string g_last_error;

void set_error(const char* message) { g_last_error = message; }

template <typename Fn>
vc_status wrap(Fn&& fn) noexcept {
  try {
    fn();
    return VC_OK;
  } catch (const votecount::DegenerateTestError& e) {
    set_error(e.what());
    return VC_ERR_DEGENERATE;
  } catch (const std::domain_error& e) {
    set_error(e.what());
    return VC_ERR_DOMAIN;
  } catch (const std::bad_alloc&) {
    set_error("out of memory");
    return VC_ERR_INTERNAL;
  } catch (const std::exception& e) {
    set_error(e.what());
    return VC_ERR_INTERNAL;
  } catch (...) {
    set_error("unknown failure");
    return VC_ERR_INTERNAL;
  }
}

vc_status null_arg(const char* name) {
  set_error((std::string(name) + " must not be NULL").c_str());
  return VC_ERR_NULL;
}

votecount::IntervalMethod to_method(vc_interval_method m) {
  return m == VC_METHOD_WILSON ? votecount::IntervalMethod::wilson
                               : votecount::IntervalMethod::jeffreys;
}

void fill_base_row(const votecount::Table1Row& in, vc_table1_row& out) {
  out = vc_table1_row{};
  out.scenario = in.scenario;
  out.n = in.spec.n;
  out.k = in.spec.k;
  out.pi_low = in.spec.pi_low;
  out.pi_high = in.spec.pi_high;
  out.pi_plus = in.pi_plus;
  out.pr_r_minus = in.pr_r_minus;
  out.pr_r_plus = in.pr_r_plus;
}

}  // namespace

extern "C" {

const char* vc_status_name(vc_status status) {
  switch (status) {
    case VC_OK:
      return "ok";
    case VC_ERR_NULL:
      return "null argument";
    case VC_ERR_DOMAIN:
      return "domain error";
    case VC_ERR_DEGENERATE:
      return "degenerate test";
    case VC_ERR_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

const char* vc_last_error(void) { return g_last_error.c_str(); }

vc_status vc_std_normal_cdf(double z, double* out) {
  if (!out) return null_arg("out");
  return wrap([&] { *out = votecount::std_normal_cdf(z); });
}

vc_status vc_std_normal_quantile(double p, double* out) {
  if (!out) return null_arg("out");
  return wrap([&] { *out = votecount::std_normal_quantile(p); });
}

vc_status vc_binomial_pmf(int n, double pi, int x, double* out) {
  if (!out) return null_arg("out");
  return wrap([&] {
    *out = votecount::binomial_pmf(votecount::BinomialParams(n, pi), x);
  });
}

vc_status vc_binomial_cdf(int n, double pi, int x, double* out) {
  if (!out) return null_arg("out");
  return wrap([&] {
    *out = votecount::binomial_cdf(votecount::BinomialParams(n, pi), x);
  });
}

vc_status vc_pvec_create(const double* probs, size_t n, vc_pvec** out) {
  if (!out) return null_arg("out");
  if (!probs) return null_arg("probs");
  *out = nullptr;
  return wrap([&] {
    *out = new vc_pvec{
        votecount::ProbabilityVector(std::vector<double>(probs, probs + n))};
  });
}

vc_status vc_pvec_from_scenario(int n, int k, double pi_low, double pi_high,
                                vc_pvec** out) {
  if (!out) return null_arg("out");
  *out = nullptr;
  return wrap([&] {
    *out = new vc_pvec{votecount::scenario_to_probability_vector(
        votecount::ScenarioSpec(n, k, pi_low, pi_high))};
  });
}

void vc_pvec_free(vc_pvec* pv) { delete pv; }

size_t vc_pvec_size(const vc_pvec* pv) { return pv ? pv->impl.size() : 0; }

vc_status vc_pvec_get(const vc_pvec* pv, size_t i, double* out) {
  if (!pv) return null_arg("pv");
  if (!out) return null_arg("out");
  if (i >= pv->impl.size()) {
    set_error("probability vector index out of range");
    return VC_ERR_DOMAIN;
  }
  *out = pv->impl[i];
  return VC_OK;
}

vc_status vc_poisson_binomial_pmf(const vc_pvec* pv, double* out) {
  if (!pv) return null_arg("pv");
  if (!out) return null_arg("out");
  return wrap([&] {
    const std::vector<double> pmf = votecount::poisson_binomial_pmf(pv->impl);
    for (size_t i = 0; i < pmf.size(); ++i) out[i] = pmf[i];
  });
}

vc_status vc_poisson_binomial_cdf(const vc_pvec* pv, int x, double* out) {
  if (!pv) return null_arg("pv");
  if (!out) return null_arg("out");
  return wrap([&] { *out = votecount::poisson_binomial_cdf(pv->impl, x); });
}

vc_status vc_sign_test(int n, int x, double alpha, vc_sidedness sidedness,
                       vc_sign_test_report* out) {
  if (!out) return null_arg("out");
  return wrap([&] {
    const votecount::SignTestReport report = votecount::run_sign_test(
        n, x, alpha,
        sidedness == VC_TWO_SIDED ? votecount::Sidedness::two
                                  : votecount::Sidedness::one);
    out->n = report.n;
    out->x = report.x;
    out->p_plus = report.p_plus;
    out->p_minus = report.p_minus;
    out->p_two_sided = report.p_two_sided;
    out->alpha = report.alpha;
    out->sidedness = sidedness;
    out->c_minus = report.c_minus.value_or(-1);
    out->c_plus = report.c_plus.value_or(-1);
    out->exact_size = report.exact_size;
    out->degenerate = report.degenerate ? 1 : 0;
    switch (report.decision) {
      case votecount::Decision::reject_plus:
        out->decision = VC_REJECT_PLUS;
        break;
      case votecount::Decision::reject_minus:
        out->decision = VC_REJECT_MINUS;
        break;
      default:
        out->decision = VC_FAIL_TO_REJECT;
        break;
    }
  });
}

vc_status vc_critical_values(int n, double alpha_one_sided, int* c_minus,
                             int* c_plus, double* exact_size) {
  if (!c_minus || !c_plus || !exact_size) return null_arg("out");
  return wrap([&] {
    const votecount::CriticalValues cv =
        votecount::critical_values(n, alpha_one_sided);
    *c_minus = cv.c_minus.value_or(-1);
    *c_plus = cv.c_plus.value_or(-1);
    *exact_size = cv.exact_size;
  });
}

vc_status vc_proportion_interval(vc_interval_method method, int n, int x,
                                 double level, vc_interval* out) {
  if (!out) return null_arg("out");
  return wrap([&] {
    const votecount::IntervalEstimate est =
        votecount::proportion_interval(to_method(method), n, x, level);
    out->lower = est.lower;
    out->upper = est.upper;
    out->level = est.level;
    out->point = est.point;
    out->method = method;
    out->boundary_adjusted = est.boundary_adjusted ? 1 : 0;
  });
}

vc_status vc_sign_probability(int sample_size, double delta, double* out) {
  if (!out) return null_arg("out");
  return wrap([&] {
    *out = votecount::sign_probability(votecount::StudyEffect(sample_size, delta));
  });
}

vc_status vc_p_value_cdf(int sample_size, double delta, double p, double* out) {
  if (!out) return null_arg("out");
  return wrap([&] {
    *out = votecount::p_value_cdf(votecount::StudyEffect(sample_size, delta), p);
  });
}

vc_status vc_iso_curve_delta(double pi_target, int sample_size, double* out) {
  if (!out) return null_arg("out");
  return wrap([&] {
    const std::array<int, 1> sizes{sample_size};
    *out = votecount::iso_curve(pi_target, sizes).front().delta;
  });
}

vc_status vc_marginal_sign_probability(int sample_size, double theta,
                                       double tau, double* out) {
  if (!out) return null_arg("out");
  return wrap([&] {
    *out = votecount::marginal_sign_probability(
        sample_size, votecount::RandomEffectsSpec(theta, tau));
  });
}

vc_status vc_h1_holds(const vc_pvec* pv, int* out) {
  if (!pv) return null_arg("pv");
  if (!out) return null_arg("out");
  return wrap([&] { *out = votecount::h1_holds(pv->impl) ? 1 : 0; });
}

vc_status vc_rejection_probabilities(const vc_pvec* pv, double alpha_one_sided,
                                     vc_rejection_report* out) {
  if (!pv) return null_arg("pv");
  if (!out) return null_arg("out");
  return wrap([&] {
    const votecount::RejectionProbabilities rp =
        votecount::rejection_probabilities(pv->impl, alpha_one_sided);
    out->pr_r_minus = rp.pr_r_minus;
    out->pr_r_plus = rp.pr_r_plus;
    out->c_minus = rp.c_minus;
    out->c_plus = rp.c_plus;
    out->alpha_one_sided = rp.alpha_one_sided;
  });
}

vc_status vc_draw_poisson_binomial(const vc_pvec* pv, uint64_t seed,
                                   uint64_t index, int* out) {
  if (!pv) return null_arg("pv");
  if (!out) return null_arg("out");
  return wrap([&] {
    votecount::SplitMix64 rng = votecount::replication_stream(seed, index);
    *out = votecount::draw_poisson_binomial(pv->impl, rng);
  });
}

vc_status vc_coverage_experiment(const vc_pvec* pv, double pi_target,
                                 vc_interval_method method, double level,
                                 uint64_t replications, uint64_t seed,
                                 int threads, vc_coverage_report* out) {
  if (!pv) return null_arg("pv");
  if (!out) return null_arg("out");
  return wrap([&] {
    const votecount::CoverageReport report = votecount::coverage_experiment(
        pv->impl, pi_target, to_method(method), level, replications, seed,
        threads);
    out->method = method;
    out->level = report.level;
    out->replications = report.replications;
    out->seed = report.seed;
    out->pi_target = report.pi_target;
    out->coverage = report.coverage;
    out->mc_std_error = report.mc_std_error;
  });
}

vc_status vc_exact_coverage(const vc_pvec* pv, double pi_target,
                            vc_interval_method method, double level,
                            double* out) {
  if (!pv) return null_arg("pv");
  if (!out) return null_arg("out");
  return wrap([&] {
    *out = votecount::exact_coverage(pv->impl, pi_target, to_method(method),
                                     level);
  });
}

vc_status vc_table1_rejection(vc_table1_row* rows) {
  if (!rows) return null_arg("rows");
  return wrap([&] {
    const std::vector<votecount::Table1Row> base = votecount::reproduce_table1();
    for (size_t i = 0; i < base.size(); ++i) {
      fill_base_row(base[i], rows[i]);
    }
  });
}

vc_status vc_table1_full(uint64_t replications, uint64_t seed, int threads,
                         vc_table1_row* rows) {
  if (!rows) return null_arg("rows");
  return wrap([&] {
    const std::vector<votecount::Table1FullRow> full =
        votecount::reproduce_table1_full(replications, seed, threads);
    for (size_t i = 0; i < full.size(); ++i) {
      fill_base_row(full[i].base, rows[i]);
      rows[i].exact_cov_jeffreys = full[i].exact_cov_jeffreys;
      rows[i].exact_cov_wilson = full[i].exact_cov_wilson;
      rows[i].sim_cov_jeffreys = full[i].sim_cov_jeffreys;
      rows[i].sim_cov_wilson = full[i].sim_cov_wilson;
      rows[i].mc_se_jeffreys = full[i].mc_se_jeffreys;
      rows[i].mc_se_wilson = full[i].mc_se_wilson;
      rows[i].method_asymmetry = full[i].method_asymmetry ? 1 : 0;
    }
  });
}

}  // extern "C"
