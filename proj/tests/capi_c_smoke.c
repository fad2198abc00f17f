/* Compile-and-run check that the public header works from plain C. */
#include <stdio.h>
#include <stdlib.h>

#include "votecount.h"

static int fail(const char* what) {
  fprintf(stderr, "FAIL: %s (%s)\n", what, vc_last_error());
  return 1;
}

int main(void) {
  double phi = 0.0;
  if (vc_std_normal_cdf(0.0, &phi) != VC_OK || phi != 0.5) {
    return fail("vc_std_normal_cdf");
  }

  vc_sign_test_report report;
  if (vc_sign_test(12, 10, 0.05, VC_TWO_SIDED, &report) != VC_OK) {
    return fail("vc_sign_test");
  }
  if (report.decision != VC_REJECT_PLUS) {
    return fail("sign test decision");
  }

  vc_pvec* pv = NULL;
  if (vc_pvec_from_scenario(12, 7, 0.05, 0.55, &pv) != VC_OK) {
    return fail("vc_pvec_from_scenario");
  }
  vc_rejection_report rp;
  if (vc_rejection_probabilities(pv, 0.025, &rp) != VC_OK) {
    vc_pvec_free(pv);
    return fail("vc_rejection_probabilities");
  }
  vc_pvec_free(pv);
  if (!(rp.pr_r_minus > rp.pr_r_plus)) {
    return fail("rejection ordering");
  }

  printf("ok\n");
  return 0;
}
