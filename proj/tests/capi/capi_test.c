/* Exercises the C interface end to end: generate, solve, audit, verify,
 * refine, and the error paths. */

#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "wnd/wnd.h"

static int failures = 0;

#define EXPECT(cond)                                                   \
  do {                                                                 \
    if (!(cond)) {                                                     \
      fprintf(stderr, "%s:%d: expected %s (last error: %s)\n", __FILE__, \
              __LINE__, #cond, wnd_last_error());                      \
      ++failures;                                                      \
    }                                                                  \
  } while (0)

static const char* kTiny =
    "{\"transmitters\":[{\"id\":\"t1\",\"pmax_mw\":\"1\"},{\"id\":\"t2\",\"pmax_mw\":\"1\"}],"
    "\"receivers\":[{\"id\":\"r1\",\"noise_mw\":\"1e-12\",\"delta\":\"2\"}],"
    "\"fading\":[[\"1e-9\",\"1e-10\"]]}";

static void tiny(void) {
  wnd_instance* inst = NULL;
  EXPECT(wnd_instance_from_json(kTiny, &inst) == WND_OK);
  if (!inst) return;
  EXPECT(wnd_instance_num_receivers(inst) == 1);
  EXPECT(wnd_instance_num_transmitters(inst) == 2);

  size_t vars = 0, rows = 0, nnz = 0;
  EXPECT(wnd_spap_dimensions(inst, &vars, &rows, &nnz) == WND_OK);
  EXPECT(vars == 4 && rows == 3);

  wnd_solution* brute = NULL;
  EXPECT(wnd_brute_force(inst, &brute) == WND_OK);
  char* obj = NULL;
  EXPECT(wnd_solution_objective(brute, &obj) == WND_OK);
  EXPECT(obj && strcmp(obj, "1") == 0);
  wnd_string_free(obj);

  wnd_solve_options opt;
  wnd_solve_options_default(&opt);
  wnd_solution* sol = NULL;
  EXPECT(wnd_solve_spap(inst, &opt, &sol) == WND_OK);
  EXPECT(wnd_solution_served_count(sol) == 1);
  char* status = NULL;
  EXPECT(wnd_solution_status(sol, &status) == WND_OK);
  EXPECT(status && strcmp(status, "optimal") == 0);
  wnd_string_free(status);

  char* text = NULL;
  EXPECT(wnd_solution_to_json(sol, &text) == WND_OK);
  wnd_solution* back = NULL;
  EXPECT(wnd_solution_from_json(inst, text, &back) == WND_OK);
  EXPECT(wnd_solution_served_count(back) == 1);
  wnd_string_free(text);

  char* mps = NULL;
  EXPECT(wnd_export_mps(inst, "spap", "1e12", NULL, &mps) == WND_OK);
  EXPECT(mps && strstr(mps, "ENDATA") != NULL);
  wnd_string_free(mps);
  EXPECT(wnd_export_mps(inst, "pap", NULL, sol, &mps) == WND_OK);
  wnd_string_free(mps);
  EXPECT(wnd_export_mps(inst, "lp", NULL, NULL, &mps) == WND_ERR_DOMAIN);

  wnd_solution_free(back);
  wnd_solution_free(sol);
  wnd_solution_free(brute);
  wnd_instance_free(inst);
}

static void pipeline(void) {
  wnd_gen_params gp;
  wnd_gen_params_default(&gp);
  gp.receivers = 20;
  gp.transmitters = 4;
  gp.pathloss_exponent = 4;
  gp.shadowing_sigma_db = 16;
  gp.seed = 9;
  wnd_instance* inst = NULL;
  EXPECT(wnd_instance_generate(&gp, &inst) == WND_OK);
  if (!inst) return;
  char* seed = NULL;
  EXPECT(wnd_instance_meta(inst, "seed", &seed) == WND_OK);
  EXPECT(seed && strcmp(seed, "9") == 0);
  wnd_string_free(seed);
  double lo = 0, hi = 0;
  EXPECT(wnd_instance_fading_range(inst, &lo, &hi) == WND_OK);
  EXPECT(lo > 0 && hi <= 1 && lo < hi);

  wnd_solve_options opt;
  wnd_solve_options_default(&opt);
  opt.node_limit = 50;

  /* Unscaled: the claimed plan does not survive the exact audit. */
  opt.scale = "1";
  wnd_solution* raw = NULL;
  EXPECT(wnd_solve_spap(inst, &opt, &raw) == WND_OK);
  wnd_report* rep = NULL;
  EXPECT(wnd_audit(inst, raw, NULL, &rep) == WND_OK);
  EXPECT(wnd_report_claimed(rep) > 0);
  EXPECT(wnd_report_unserved(rep) > 0);
  wnd_verification* ver = NULL;
  EXPECT(wnd_verify(inst, raw, &ver) == WND_OK);
  EXPECT(!wnd_verification_feasible(ver));
  char* vtext = NULL;
  EXPECT(wnd_verification_to_json(ver, &vtext) == WND_OK);
  EXPECT(vtext && strstr(vtext, "certificate") != NULL);
  wnd_string_free(vtext);
  wnd_solution* bad_apply = NULL;
  EXPECT(wnd_verification_apply(ver, raw, &bad_apply) == WND_ERR_DOMAIN);
  wnd_verification_free(ver);
  wnd_report_free(rep);

  /* Scaled: verified, repaired, re-audited. */
  opt.scale = "1e12";
  wnd_solution* sol = NULL;
  EXPECT(wnd_solve_spap(inst, &opt, &sol) == WND_OK);
  EXPECT(wnd_verify(inst, sol, &ver) == WND_OK);
  EXPECT(wnd_verification_feasible(ver));
  wnd_solution* fixed = NULL;
  EXPECT(wnd_verification_apply(ver, sol, &fixed) == WND_OK);
  EXPECT(wnd_audit(inst, fixed, "0", &rep) == WND_OK);
  EXPECT(wnd_report_served(rep) == wnd_report_claimed(rep));
  EXPECT(wnd_report_claimed(rep) == wnd_solution_served_count(sol));
  char* sir = NULL;
  EXPECT(wnd_report_max_sir_violation(rep, &sir) == WND_OK);
  EXPECT(sir && strcmp(sir, "0") == 0);
  wnd_string_free(sir);
  char* table = NULL;
  EXPECT(wnd_report_table(rep, &table) == WND_OK);
  EXPECT(table && strstr(table, "served") != NULL);
  wnd_string_free(table);
  wnd_report_free(rep);

  wnd_refinement* ref = NULL;
  EXPECT(wnd_refine(inst, sol, "1e-25", 10, NULL, &ref) == WND_OK);
  EXPECT(wnd_refinement_success(ref));
  EXPECT(wnd_refinement_rounds(ref) >= 1 && wnd_refinement_rounds(ref) <= 10);
  wnd_solution* refined = NULL;
  EXPECT(wnd_refinement_apply(ref, sol, &refined) == WND_OK);
  EXPECT(wnd_solution_served_count(refined) == wnd_solution_served_count(sol));
  double power[4];
  EXPECT(wnd_solution_power(refined, power, 4) == WND_OK);
  EXPECT(wnd_solution_power(refined, power, 3) == WND_ERR_DOMAIN);

  wnd_solution* pap = NULL;
  EXPECT(wnd_solve_pap(inst, sol, &opt, &pap) == WND_OK);
  EXPECT(wnd_solution_served_count(pap) == wnd_solution_served_count(sol));

  wnd_solution_free(pap);
  wnd_solution_free(refined);
  wnd_refinement_free(ref);
  wnd_solution_free(fixed);
  wnd_verification_free(ver);
  wnd_solution_free(sol);
  wnd_solution_free(raw);
  wnd_instance_free(inst);
}

static void errors(void) {
  wnd_instance* inst = NULL;
  EXPECT(wnd_instance_from_json(NULL, &inst) == WND_ERR_NULL);
  EXPECT(wnd_instance_from_json("{", &inst) == WND_ERR_FORMAT);
  EXPECT(strlen(wnd_last_error()) > 0);
  EXPECT(inst == NULL);
  EXPECT(wnd_instance_load("/nonexistent/instance.json", &inst) == WND_ERR_IO);

  wnd_gen_params gp;
  wnd_gen_params_default(&gp);
  gp.delta_db = 20;
  EXPECT(wnd_instance_generate(&gp, &inst) == WND_ERR_DOMAIN);

  wnd_gen_params_default(&gp);
  gp.receivers = 12;
  gp.transmitters = 3;
  EXPECT(wnd_instance_generate(&gp, &inst) == WND_OK);
  wnd_solution* sol = NULL;
  EXPECT(wnd_brute_force(inst, &sol) == WND_ERR_LIMIT);
  wnd_solve_options opt;
  wnd_solve_options_default(&opt);
  opt.scale = "abc";
  EXPECT(wnd_solve_spap(inst, &opt, &sol) == WND_ERR_FORMAT);
  opt.scale = "-1";
  EXPECT(wnd_solve_spap(inst, &opt, &sol) == WND_ERR_DOMAIN);
  wnd_instance_free(inst);
  wnd_instance_free(NULL);
  wnd_string_free(NULL);
  EXPECT(wnd_version() != NULL && strlen(wnd_version()) > 0);
}

int main(void) {
  tiny();
  pipeline();
  errors();
  if (failures) {
    fprintf(stderr, "%d check(s) failed\n", failures);
    return 1;
  }
  printf("C API checks passed\n");
  return 0;
}
