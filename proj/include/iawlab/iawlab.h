#ifndef IAWLAB_H
#define IAWLAB_H

/* C interface to the ion-acoustic wave lab.
 *
 * All objects are opaque handles. Functions return an iaw_status; on
 * failure the message is kept in the context and read back with
 * iaw_last_error. A context may be used from one thread at a time.
 */

#include <stddef.h>

#if defined(_WIN32)
#  if defined(IAW_BUILDING_LIBRARY)
#    define IAW_API __declspec(dllexport)
#  else
#    define IAW_API __declspec(dllimport)
#  endif
#else
#  define IAW_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum iaw_status {
  IAW_OK = 0,
  IAW_EINVAL = 1,       /* bad argument, option or config key */
  IAW_EDOMAIN = 2,      /* outside the model's domain, e.g. no solitary wave */
  IAW_ECONVERGENCE = 3, /* an iteration failed to converge */
  IAW_EIO = 4,
  IAW_EINTERNAL = 5,
  IAW_ECHECK = 6        /* a consistency check failed during a run */
} iaw_status;

typedef struct iaw_context iaw_context;
typedef struct iaw_options iaw_options;
typedef struct iaw_wave iaw_wave;
typedef struct iaw_sim iaw_sim;

/* receives one line of progress text, without the trailing newline */
typedef void (*iaw_printer)(const char* line, void* user);

IAW_API const char* iaw_version(void);
IAW_API const char* iaw_status_name(iaw_status s);

IAW_API iaw_status iaw_context_new(iaw_context** out);
IAW_API void iaw_context_free(iaw_context* ctx);
/* message of the last failed call on ctx; empty string if none */
IAW_API const char* iaw_last_error(const iaw_context* ctx);
IAW_API void iaw_set_printer(iaw_context* ctx, iaw_printer fn, void* user);
/* 0 restores the default (IAW_THREADS, else the hardware count) */
IAW_API iaw_status iaw_set_threads(iaw_context* ctx, int n);

/* Options are "section.key" / value pairs, the same keys as config files. */
IAW_API iaw_status iaw_options_new(iaw_context* ctx, iaw_options** out);
IAW_API iaw_status iaw_options_set(iaw_context* ctx, iaw_options* opts, const char* key, const char* value);
/* merges a config file; keys already set are an error */
IAW_API iaw_status iaw_options_load(iaw_context* ctx, iaw_options* opts, const char* path);
IAW_API void iaw_options_free(iaw_options* opts);

/* Runs one of: profile, eigencurve, dispersion, modulation, simulate,
 * report, accept. Outputs go to out_dir. *all_passed is set to 1 when every
 * check of the run passed. For accept the options are accept.suite
 * (quick or full). */
IAW_API iaw_status iaw_run(iaw_context* ctx, const char* command, const iaw_options* opts, const char* out_dir,
                           int* all_passed);

/* Solitary wave of speed sqrt(h'(1) + 1) + eps^2 on a periodic line. */
typedef struct iaw_wave_summary {
  double c;
  double eps;
  double amplitude; /* max of n */
  double phi_star;  /* crest potential */
  double kappa;     /* decay rate at infinity */
  double decay_rate; /* fitted from the sampled tail */
  double poisson_residual;
} iaw_wave_summary;

IAW_API iaw_status iaw_wave_new(iaw_context* ctx, const char* law, double eps, size_t n, double length,
                                iaw_wave** out);
IAW_API size_t iaw_wave_size(const iaw_wave* w);
IAW_API iaw_status iaw_wave_summary_get(const iaw_wave* w, iaw_wave_summary* out);
/* any of x, n, u, phi may be NULL; the others need len >= iaw_wave_size */
IAW_API iaw_status iaw_wave_copy_fields(iaw_context* ctx, const iaw_wave* w, double* x, double* n, double* u,
                                        double* phi, size_t len);
IAW_API void iaw_wave_free(iaw_wave* w);

/* Perturbed-wave simulation built from experiment keys (wave.*, grid.*, ...). */
typedef struct iaw_diagnostics {
  double t;
  double mass;
  double hamiltonian;
  double weighted_norm;
  double sup_norm;
  double c_tilde_inf;
  double gamma_inf;
  double absorbed_mass;
  double absorbed_energy;
} iaw_diagnostics;

IAW_API iaw_status iaw_sim_new(iaw_context* ctx, const iaw_options* opts, iaw_sim** out);
IAW_API double iaw_sim_dt(const iaw_sim* sim);
/* t must be a multiple of iaw_sim_dt and not in the past */
IAW_API iaw_status iaw_sim_advance(iaw_context* ctx, iaw_sim* sim, double t);
IAW_API iaw_status iaw_sim_diagnostics(iaw_context* ctx, iaw_sim* sim, iaw_diagnostics* out);
IAW_API void iaw_sim_free(iaw_sim* sim);

#ifdef __cplusplus
}
#endif

#endif
