// Command-line front end. Everything goes through the C interface.
//
// Exit codes: 0 all checks passed, 1 a check failed, 2 bad usage or
// invalid options, 3 the run itself failed (I/O, convergence, domain).

#include <CLI11.hpp>

#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "iawlab/iawlab.h"

namespace {

struct Flag {
  const char* name;  // without the leading dashes
  const char* key;   // option key handed to the library
  const char* help;
};

struct Sub {
  CLI::App* app = nullptr;
  std::string command;
  std::string out;
  std::map<std::string, std::string> values;  // key -> text
  std::vector<std::pair<std::string, CLI::Option*>> options;
};

void add_flags(Sub& s, const std::vector<Flag>& flags) {
  for (const auto& f : flags) {
    auto* opt = s.app->add_option(std::string("--") + f.name, s.values[f.key], f.help);
    s.options.emplace_back(f.key, opt);
  }
}

void print_line(const char* line, void*) { std::printf("%s\n", line); }

int exit_code(iaw_status st) {
  switch (st) {
    case IAW_OK: return 0;
    case IAW_EINVAL: return 2;
    case IAW_ECHECK: return 1;
    default: return 3;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ion-acoustic solitary wave lab"};
  app.require_subcommand(1);
  app.set_version_flag("--version", iaw_version());
  int threads = 0;
  app.add_option("--threads", threads, "worker threads (default: IAW_THREADS or all cores)")
      ->check(CLI::Range(0, 1024));
  bool quiet = false;
  app.add_flag("-q,--quiet", quiet, "suppress progress lines");

  std::vector<Sub> subs(7);
  auto make = [&](int i, const char* name, const char* help) -> Sub& {
    Sub& s = subs[i];
    s.command = name;
    s.app = app.add_subcommand(name, help);
    s.out = std::string("out/") + name;
    s.app->add_option("--out", s.out, "output directory")->capture_default_str();
    return s;
  };

  add_flags(make(0, "profile", "solitary wave profiles and their KdV limit"),
            {{"law", "profile.law", "pressure law: isothermal, polytropic:K:gamma or poly:a1,a2,..."},
             {"eps", "profile.eps", "comma list of amplitudes eps (speed sqrt(h'(1)+1) + eps^2)"},
             {"grid", "profile.grid", "n,L (default 2048, 40/eps)"},
             {"tol", "profile.tol", "profile tolerance"}});

  add_flags(make(1, "eigencurve", "resonant eigenvalue curve and related spectral checks"),
            {{"model", "eigencurve.model", "ep | zero | kp | symbols"},
             {"law", "eigencurve.law", "pressure law"},
             {"eps", "eigencurve.eps", "amplitude"},
             {"ahat", "eigencurve.ahat", "weight a / eps"},
             {"etahat-min", "eigencurve.etahat_min", "smallest eta / eps^2"},
             {"etahat-max", "eigencurve.etahat_max", "largest eta / eps^2"},
             {"samples", "eigencurve.samples", "number of eta samples"},
             {"n", "eigencurve.n", "grid points"},
             {"length", "eigencurve.length", "box length"},
             {"separation", "eigencurve.separation", "required spectral gap ratio"},
             {"eta", "eigencurve.eta", "kp: comma list of eta"},
             {"weight", "eigencurve.weight", "kp: weight a"},
             {"n-xi", "eigencurve.n_xi", "symbols: xi samples"},
             {"n-zeta", "eigencurve.n_zeta", "symbols: zeta samples"},
             {"xi-max", "eigencurve.xi_max", "symbols: xi range"},
             {"zeta-max", "eigencurve.zeta_max", "symbols: zeta range"},
             {"per-axis", "eigencurve.per_axis", "symbols: margin samples per axis"}});

  add_flags(make(2, "dispersion", "decay of the linear dispersive flow"),
            {{"hp1", "dispersion.hp1", "h'(1)"},
             {"mode", "dispersion.mode", "radial | periodic"},
             {"data", "dispersion.data", "gaussian | lowfreq | both"},
             {"sigma", "dispersion.sigma", "Gaussian width"},
             {"rho-c", "dispersion.rho_c", "low-frequency band edge"},
             {"times", "dispersion.times", "comma list of times"},
             {"p", "dispersion.p", "comma list of norms: 2, inf"},
             {"n", "dispersion.n", "periodic: points per axis"},
             {"length", "dispersion.length", "periodic: box length"},
             {"window", "dispersion.window", "fit window t_lo,t_hi"}});

  add_flags(make(3, "modulation", "linear modulation equations and longitudinal recovery"),
            {{"part", "modulation.part", "semigroup | decay | recover | all"},
             {"law", "modulation.law", "pressure law"},
             {"c0", "modulation.c0", "wave speed"},
             {"eta0", "modulation.eta0", "transverse band"},
             {"nu", "modulation.nu", "diagonal splitting"},
             {"kappa", "modulation.kappa", "higher-order correction strength"},
             {"times", "modulation.times", "comma list of times"},
             {"window", "modulation.window", "fit window t_lo,t_hi"}});

  Sub& sim = make(4, "simulate", "perturbed solitary wave in the moving frame");
  std::string config_file;
  std::vector<std::string> sets;
  sim.app->add_option("--config", config_file, "config file of section.key = value lines")->check(CLI::ExistingFile);
  sim.app->add_option("--set", sets, "override one key, key=value (repeatable)");
  add_flags(sim, {{"check", "simulate.check", "integrator | extraction instead of a run"}});

  Sub& rep = make(5, "report", "print the tables of every manifest below a directory");
  rep.app->remove_option(rep.app->get_option("--out"));
  add_flags(rep, {{"in", "report.in", "directory to scan (default .)"}});

  Sub& acc = make(6, "accept", "acceptance suite, one line per criterion");
  add_flags(acc, {{"suite", "accept.suite", "quick | full"}});

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  iaw_context* ctx = nullptr;
  if (iaw_context_new(&ctx) != IAW_OK) return 3;
  if (!quiet) iaw_set_printer(ctx, print_line, nullptr);
  iaw_options* opts = nullptr;
  iaw_status st = iaw_options_new(ctx, &opts);
  if (st == IAW_OK && threads > 0) st = iaw_set_threads(ctx, threads);

  Sub* chosen = nullptr;
  for (auto& s : subs)
    if (s.app->parsed()) chosen = &s;

  if (st == IAW_OK && chosen == &sim && !config_file.empty()) st = iaw_options_load(ctx, opts, config_file.c_str());
  for (const auto& kv : sets) {
    if (st != IAW_OK) break;
    const auto eq = kv.find('=');
    if (eq == std::string::npos) {
      std::fprintf(stderr, "error: --set expects key=value, got '%s'\n", kv.c_str());
      st = IAW_EINVAL;
      break;
    }
    st = iaw_options_set(ctx, opts, kv.substr(0, eq).c_str(), kv.substr(eq + 1).c_str());
  }
  for (const auto& [key, opt] : chosen->options)
    if (st == IAW_OK && opt->count() > 0) st = iaw_options_set(ctx, opts, key.c_str(), chosen->values[key].c_str());

  int passed = 0;
  if (st == IAW_OK)
    st = iaw_run(ctx, chosen->command.c_str(), opts, chosen->command == "report" ? "" : chosen->out.c_str(), &passed);

  int code = exit_code(st);
  if (st != IAW_OK) {
    std::fprintf(stderr, "error (%s): %s\n", iaw_status_name(st), iaw_last_error(ctx));
    if (st == IAW_EINVAL) std::fprintf(stderr, "%s", chosen->app->help().c_str());
  } else if (!passed) {
    std::fprintf(stderr, "%s: one or more checks failed\n", chosen->command.c_str());
    code = 1;
  }
  iaw_options_free(opts);
  iaw_context_free(ctx);
  return code;
}
