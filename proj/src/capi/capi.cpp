#include "iawlab/iawlab.h"

#include <new>
#include <string>

#include "app/acceptance.hpp"
#include "app/commands.hpp"
#include "core/error.hpp"
#include "core/parallel.hpp"
#include "profiles/solitary_wave.hpp"
#include "sim/experiment.hpp"

struct iaw_context {
  std::string error;
  iaw_printer printer = nullptr;
  void* user = nullptr;
};

struct iaw_options {
  iaw::Config config = iaw::Config::parse("", "options");
};

struct iaw_wave {
  iaw::SolitaryWave w;
};

struct iaw_sim {
  explicit iaw_sim(const iaw::ExperimentConfig& c) : ex(c) {}
  iaw::Experiment ex;
};

namespace {

iaw_status to_status(iaw::Errc c) { return static_cast<iaw_status>(static_cast<int>(c)); }

// Runs body, turning exceptions into a status and a stored message.
template <class F>
iaw_status guarded(iaw_context* ctx, F&& body) {
  if (ctx) ctx->error.clear();
  try {
    body();
    return IAW_OK;
  } catch (const iaw::Error& e) {
    if (ctx) ctx->error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    if (ctx) ctx->error = "out of memory";
    return IAW_EINTERNAL;
  } catch (const std::exception& e) {
    if (ctx) ctx->error = e.what();
    return IAW_EINTERNAL;
  }
}

iaw::Log printer_of(const iaw_context* ctx) {
  if (!ctx || !ctx->printer) return nullptr;
  return [fn = ctx->printer, user = ctx->user](const std::string& line) { fn(line.c_str(), user); };
}

void need(bool ok, const char* what) { iaw::require(ok, iaw::Errc::invalid_argument, what); }

}  // namespace

extern "C" {

const char* iaw_version(void) { return iaw::code_version(); }

const char* iaw_status_name(iaw_status s) {
  switch (s) {
    case IAW_OK: return "ok";
    case IAW_EINVAL: return "invalid argument";
    case IAW_EDOMAIN: return "domain error";
    case IAW_ECONVERGENCE: return "no convergence";
    case IAW_EIO: return "i/o error";
    case IAW_EINTERNAL: return "internal error";
    case IAW_ECHECK: return "check failed";
  }
  return "unknown status";
}

iaw_status iaw_context_new(iaw_context** out) {
  if (!out) return IAW_EINVAL;
  *out = new (std::nothrow) iaw_context();
  return *out ? IAW_OK : IAW_EINTERNAL;
}

void iaw_context_free(iaw_context* ctx) { delete ctx; }

const char* iaw_last_error(const iaw_context* ctx) { return ctx ? ctx->error.c_str() : "null context"; }

void iaw_set_printer(iaw_context* ctx, iaw_printer fn, void* user) {
  if (!ctx) return;
  ctx->printer = fn;
  ctx->user = user;
}

iaw_status iaw_set_threads(iaw_context* ctx, int n) {
  return guarded(ctx, [&] { iaw::set_thread_count(n); });
}

iaw_status iaw_options_new(iaw_context* ctx, iaw_options** out) {
  return guarded(ctx, [&] {
    need(out != nullptr, "null output pointer");
    *out = new iaw_options();
  });
}

iaw_status iaw_options_set(iaw_context* ctx, iaw_options* opts, const char* key, const char* value) {
  return guarded(ctx, [&] {
    need(opts && key && value, "null argument");
    const std::string k = key;
    need(k.find('.') != std::string::npos && k.front() != '.' && k.back() != '.', "keys have the form section.key");
    opts->config.set(k, value);
  });
}

iaw_status iaw_options_load(iaw_context* ctx, iaw_options* opts, const char* path) {
  return guarded(ctx, [&] {
    need(opts && path, "null argument");
    const iaw::Config file = iaw::Config::load(path);
    for (const auto& [k, v] : file.values()) {
      iaw::require(!opts->config.has(k), iaw::Errc::invalid_argument, std::string("key set twice: ") + k);
      opts->config.set(k, v);
    }
  });
}

void iaw_options_free(iaw_options* opts) { delete opts; }

iaw_status iaw_run(iaw_context* ctx, const char* command, const iaw_options* opts, const char* out_dir,
                   int* all_passed) {
  return guarded(ctx, [&] {
    need(command != nullptr, "null command");
    const iaw::Config empty;
    const iaw::Config& cfg = opts ? opts->config : empty;
    const std::string cmd = command;
    const std::string out = out_dir ? out_dir : "";
    const iaw::Log log = printer_of(ctx);
    bool passed = false;
    if (cmd == "accept") {
      const std::string suite = cfg.get("accept.suite", std::string("quick"));
      cfg.require_all_used();
      passed = iaw::run_acceptance(suite, out, log).passed();
    } else {
      const iaw::RunManifest m = iaw::run_command(cmd, cfg, out, log);
      if (cmd != "report" && log) {
        std::string body = iaw::format_metrics(m);
        if (!body.empty() && body.back() == '\n') body.pop_back();
        log(body);
      }
      passed = m.passed();
    }
    if (all_passed) *all_passed = passed ? 1 : 0;
  });
}

iaw_status iaw_wave_new(iaw_context* ctx, const char* law, double eps, size_t n, double length, iaw_wave** out) {
  return guarded(ctx, [&] {
    need(out != nullptr, "null output pointer");
    need(n >= 16 && length > 0.0, "need n >= 16 and length > 0");
    const iaw::PressureLaw pl = iaw::PressureLaw::parse(law ? law : "isothermal");
    auto* w = new iaw_wave{iaw::sagdeev_profile_eps(pl, eps, iaw::Grid::line(n, length))};
    *out = w;
  });
}

size_t iaw_wave_size(const iaw_wave* w) { return w ? w->w.grid.n(0) : 0; }

iaw_status iaw_wave_summary_get(const iaw_wave* w, iaw_wave_summary* out) {
  if (!w || !out) return IAW_EINVAL;
  out->c = w->w.c;
  out->eps = w->w.eps;
  out->amplitude = iaw::sup_norm(w->w.n);
  out->phi_star = w->w.phi_star;
  out->kappa = w->w.kappa;
  out->decay_rate = w->w.decay_rate;
  out->poisson_residual = w->w.poisson_residual;
  return IAW_OK;
}

iaw_status iaw_wave_copy_fields(iaw_context* ctx, const iaw_wave* w, double* x, double* n, double* u, double* phi,
                                size_t len) {
  return guarded(ctx, [&] {
    need(w != nullptr, "null wave");
    const std::size_t N = w->w.grid.n(0);
    need(len >= N, "buffer shorter than the wave");
    for (std::size_t i = 0; i < N; ++i) {
      if (x) x[i] = w->w.grid.coord(0, i);
      if (n) n[i] = w->w.n[i];
      if (u) u[i] = w->w.u[i];
      if (phi) phi[i] = w->w.phi[i];
    }
  });
}

void iaw_wave_free(iaw_wave* w) { delete w; }

iaw_status iaw_sim_new(iaw_context* ctx, const iaw_options* opts, iaw_sim** out) {
  return guarded(ctx, [&] {
    need(out != nullptr, "null output pointer");
    const iaw::Config empty;
    *out = new iaw_sim(iaw::ExperimentConfig::from(opts ? opts->config : empty));
  });
}

double iaw_sim_dt(const iaw_sim* sim) { return sim ? sim->ex.dt() : 0.0; }

iaw_status iaw_sim_advance(iaw_context* ctx, iaw_sim* sim, double t) {
  return guarded(ctx, [&] {
    need(sim != nullptr, "null simulation");
    sim->ex.advance_to(t);
  });
}

iaw_status iaw_sim_diagnostics(iaw_context* ctx, iaw_sim* sim, iaw_diagnostics* out) {
  return guarded(ctx, [&] {
    need(sim && out, "null argument");
    const iaw::SeriesRecord r = sim->ex.sample();
    *out = {r.t, r.mass, r.hamiltonian, r.weighted_norm, r.sup_norm, r.c_tilde_inf, r.gamma_inf, r.absorbed_mass,
            r.absorbed_energy};
  });
}

void iaw_sim_free(iaw_sim* sim) { delete sim; }

}  // extern "C"
