/* Exercises the shared library through its C header only. */
#include <math.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "iawlab/iawlab.h"

static int failures = 0;

#define EXPECT(cond)                                                 \
  do {                                                               \
    if (!(cond)) {                                                   \
      fprintf(stderr, "%s:%d: expected %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                    \
    }                                                                \
  } while (0)

static int lines = 0;
static void count_line(const char* line, void* user) {
  (void)line;
  ++*(int*)user;
}

int main(int argc, char** argv) {
  const char* out = argc > 1 ? argv[1] : "capi_out";
  char dir[1024];
  iaw_context* ctx = NULL;
  iaw_options* opts = NULL;
  iaw_wave* w = NULL;
  iaw_sim* sim = NULL;
  int passed = -1;

  EXPECT(strlen(iaw_version()) > 0);
  EXPECT(strcmp(iaw_status_name(IAW_EINVAL), "invalid argument") == 0);
  EXPECT(iaw_context_new(&ctx) == IAW_OK);
  iaw_set_printer(ctx, count_line, &lines);

  /* options */
  EXPECT(iaw_options_new(ctx, &opts) == IAW_OK);
  EXPECT(iaw_options_set(ctx, opts, "nodot", "1") == IAW_EINVAL);
  EXPECT(strlen(iaw_last_error(ctx)) > 0);
  EXPECT(iaw_options_set(ctx, opts, "eigencurve.model", "kp") == IAW_OK);
  EXPECT(strlen(iaw_last_error(ctx)) == 0);

  /* a run */
  snprintf(dir, sizeof dir, "%s/kp", out);
  EXPECT(iaw_run(ctx, "eigencurve", opts, dir, &passed) == IAW_OK);
  EXPECT(passed == 1);
  EXPECT(lines > 0);
  EXPECT(iaw_run(ctx, "nonsense", opts, dir, &passed) == IAW_EINVAL);
  iaw_options_free(opts);

  /* unknown keys are rejected */
  EXPECT(iaw_options_new(ctx, &opts) == IAW_OK);
  EXPECT(iaw_options_set(ctx, opts, "profile.epz", "0.1") == IAW_OK);
  snprintf(dir, sizeof dir, "%s/profile", out);
  EXPECT(iaw_run(ctx, "profile", opts, dir, &passed) == IAW_EINVAL);
  iaw_options_free(opts);

  /* a wave */
  EXPECT(iaw_wave_new(ctx, "isothermal", 1e-9, 256, 100.0, &w) != IAW_OK);
  EXPECT(iaw_wave_new(ctx, "isothermal", 0.2, 1024, 200.0, &w) == IAW_OK);
  if (w) {
    iaw_wave_summary s;
    size_t n = iaw_wave_size(w);
    double* x = malloc(n * sizeof(double));
    double* nn = malloc(n * sizeof(double));
    EXPECT(n == 1024);
    EXPECT(iaw_wave_summary_get(w, &s) == IAW_OK);
    EXPECT(fabs(s.c - (sqrt(2.0) + 0.04)) < 1e-14);
    EXPECT(s.amplitude > 0.08 && s.amplitude < 0.1);
    EXPECT(iaw_wave_copy_fields(ctx, w, x, nn, NULL, NULL, n) == IAW_OK);
    EXPECT(fabs(x[n / 2]) < 1e-12);
    EXPECT(fabs(nn[n / 2] - s.amplitude) < 1e-15);
    EXPECT(iaw_wave_copy_fields(ctx, w, x, nn, NULL, NULL, n - 1) == IAW_EINVAL);
    free(x);
    free(nn);
    iaw_wave_free(w);
  }

  /* a simulation */
  EXPECT(iaw_options_new(ctx, &opts) == IAW_OK);
  iaw_options_set(ctx, opts, "grid.nx", "256");
  iaw_options_set(ctx, opts, "grid.lx", "150");
  iaw_options_set(ctx, opts, "run.t_end", "2");
  iaw_options_set(ctx, opts, "run.sample_every", "1");
  iaw_options_set(ctx, opts, "sponge.width", "0");
  EXPECT(iaw_sim_new(ctx, opts, &sim) == IAW_OK);
  if (sim) {
    iaw_diagnostics d0, d1;
    EXPECT(iaw_sim_dt(sim) > 0.0);
    EXPECT(iaw_sim_diagnostics(ctx, sim, &d0) == IAW_OK);
    EXPECT(iaw_sim_advance(ctx, sim, 1.0) == IAW_OK);
    EXPECT(iaw_sim_diagnostics(ctx, sim, &d1) == IAW_OK);
    EXPECT(d1.t == 1.0);
    EXPECT(fabs(d1.mass - d0.mass) < 1e-12 * fabs(d0.mass));
    EXPECT(iaw_sim_advance(ctx, sim, 0.5) == IAW_EINVAL);
    iaw_sim_free(sim);
  }
  iaw_options_free(opts);

  EXPECT(iaw_set_threads(ctx, -1) == IAW_EINVAL);
  EXPECT(iaw_set_threads(ctx, 0) == IAW_OK);
  iaw_context_free(ctx);

  if (failures) fprintf(stderr, "%d failure(s)\n", failures);
  else printf("c interface: all checks passed\n");
  return failures ? 1 : 0;
}
