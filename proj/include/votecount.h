/*
 * votecount - direction-of-effect vote counting statistics.
 *
 * C interface to the votecount core. All functions return VC_OK on success
 * or an error code; scalar results are written through out-pointers.
 * Probability vectors are opaque handles created and released through
 * vc_pvec_create / vc_pvec_free. vc_last_error() returns a thread-local
 * description of the most recent failure on the calling thread.
 */
#ifndef VOTECOUNT_H
#define VOTECOUNT_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#ifndef VC_API
#if defined(_WIN32)
#define VC_API __declspec(dllexport)
#else
#define VC_API __attribute__((visibility("default")))
#endif
#endif

typedef enum vc_status {
  VC_OK = 0,
  VC_ERR_NULL = 1,       /* required pointer argument was NULL */
  VC_ERR_DOMAIN = 2,     /* input outside the documented domain */
  VC_ERR_DEGENERATE = 3, /* sign test has no critical value at (n, alpha) */
  VC_ERR_INTERNAL = 4
} vc_status;

VC_API const char* vc_status_name(vc_status status);
VC_API const char* vc_last_error(void);

/* ---- normal and binomial machinery ---- */

VC_API vc_status vc_std_normal_cdf(double z, double* out);
VC_API vc_status vc_std_normal_quantile(double p, double* out);
VC_API vc_status vc_binomial_pmf(int n, double pi, int x, double* out);
VC_API vc_status vc_binomial_cdf(int n, double pi, int x, double* out);

/* ---- Poisson-Binomial probability vector (opaque) ---- */

typedef struct vc_pvec vc_pvec;

VC_API vc_status vc_pvec_create(const double* probs, size_t n, vc_pvec** out);
/* k studies at pi_high followed by n - k at pi_low. */
VC_API vc_status vc_pvec_from_scenario(int n, int k, double pi_low,
                                       double pi_high, vc_pvec** out);
VC_API void vc_pvec_free(vc_pvec* pv);
VC_API size_t vc_pvec_size(const vc_pvec* pv);
VC_API vc_status vc_pvec_get(const vc_pvec* pv, size_t i, double* out);

/* out must hold vc_pvec_size(pv) + 1 doubles. */
VC_API vc_status vc_poisson_binomial_pmf(const vc_pvec* pv, double* out);
VC_API vc_status vc_poisson_binomial_cdf(const vc_pvec* pv, int x, double* out);

/* ---- exact sign test ---- */

typedef enum vc_sidedness { VC_ONE_SIDED = 0, VC_TWO_SIDED = 1 } vc_sidedness;

typedef enum vc_decision {
  VC_FAIL_TO_REJECT = 0,
  VC_REJECT_PLUS = 1,
  VC_REJECT_MINUS = 2
} vc_decision;

typedef struct vc_sign_test_report {
  int n;
  int x;
  double p_plus;      /* P(X >= x | Bin(n, 1/2)) */
  double p_minus;     /* P(X <= x | Bin(n, 1/2)) */
  double p_two_sided; /* min(1, 2 min(p_plus, p_minus)) */
  double alpha;
  vc_sidedness sidedness;
  int c_minus; /* -1 when the test is degenerate at this alpha */
  int c_plus;  /* -1 when the test is degenerate at this alpha */
  double exact_size;
  vc_decision decision;
  int degenerate;
} vc_sign_test_report;

VC_API vc_status vc_sign_test(int n, int x, double alpha,
                              vc_sidedness sidedness,
                              vc_sign_test_report* out);

/* c_minus/c_plus are -1 and exact_size 0 when no critical value exists. */
VC_API vc_status vc_critical_values(int n, double alpha_one_sided,
                                    int* c_minus, int* c_plus,
                                    double* exact_size);

/* ---- proportion intervals ---- */

typedef enum vc_interval_method {
  VC_METHOD_WILSON = 0,
  VC_METHOD_JEFFREYS = 1
} vc_interval_method;

typedef struct vc_interval {
  double lower;
  double upper;
  double level;
  double point; /* x / n */
  vc_interval_method method;
  int boundary_adjusted;
} vc_interval;

VC_API vc_status vc_proportion_interval(vc_interval_method method, int n,
                                        int x, double level, vc_interval* out);

/* ---- study effect model ---- */

VC_API vc_status vc_sign_probability(int sample_size, double delta,
                                     double* out);
VC_API vc_status vc_p_value_cdf(int sample_size, double delta, double p,
                                double* out);
/* delta solving Phi(sqrt(N) delta) = pi_target at this sample size. */
VC_API vc_status vc_iso_curve_delta(double pi_target, int sample_size,
                                    double* out);
VC_API vc_status vc_marginal_sign_probability(int sample_size, double theta,
                                              double tau, double* out);

/* ---- vote-counting analysis ---- */

typedef struct vc_rejection_report {
  double pr_r_minus; /* P(X <= c_minus) under PoissonBinomial(pv) */
  double pr_r_plus;  /* P(X >= c_plus) under PoissonBinomial(pv) */
  int c_minus;
  int c_plus;
  double alpha_one_sided;
} vc_rejection_report;

VC_API vc_status vc_h1_holds(const vc_pvec* pv, int* out);
VC_API vc_status vc_rejection_probabilities(const vc_pvec* pv,
                                            double alpha_one_sided,
                                            vc_rejection_report* out);

/* ---- simulation harness ---- */

typedef struct vc_coverage_report {
  vc_interval_method method;
  double level;
  uint64_t replications;
  uint64_t seed;
  double pi_target;
  double coverage;
  double mc_std_error;
} vc_coverage_report;

/* Value of replication `index` under the (seed, index) substream contract. */
VC_API vc_status vc_draw_poisson_binomial(const vc_pvec* pv, uint64_t seed,
                                          uint64_t index, int* out);
VC_API vc_status vc_coverage_experiment(const vc_pvec* pv, double pi_target,
                                        vc_interval_method method,
                                        double level, uint64_t replications,
                                        uint64_t seed, int threads,
                                        vc_coverage_report* out);
VC_API vc_status vc_exact_coverage(const vc_pvec* pv, double pi_target,
                                   vc_interval_method method, double level,
                                   double* out);

/* ---- bundled reference table (heterogeneity demonstration) ---- */

#define VC_TABLE1_ROWS 7

typedef struct vc_table1_row {
  int scenario;
  int n;
  int k;
  double pi_low;
  double pi_high;
  double pi_plus;
  double pr_r_minus;
  double pr_r_plus;
  double exact_cov_jeffreys;
  double exact_cov_wilson;
  double sim_cov_jeffreys;
  double sim_cov_wilson;
  double mc_se_jeffreys;
  double mc_se_wilson;
  int method_asymmetry;
} vc_table1_row;

/* Fills the scenario layout and exact rejection columns; coverage fields
 * are zeroed. rows must hold VC_TABLE1_ROWS entries. */
VC_API vc_status vc_table1_rejection(vc_table1_row* rows);

/* Full table including exact and simulated coverage at the 95% level. */
VC_API vc_status vc_table1_full(uint64_t replications, uint64_t seed,
                                int threads, vc_table1_row* rows);

#ifdef __cplusplus
}
#endif

#endif /* VOTECOUNT_H */
