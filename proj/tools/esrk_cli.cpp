#include <CLI11.hpp>
#include <iostream>
#include <string>
#include <vector>

#include "esrk/app/commands.hpp"
#include "esrk/app/config.hpp"
#include "esrk/app/selftest.hpp"

namespace {

using esrk::app::RunConfig;

struct Override {
  const char* flag;
  const char* section;
  const char* key;
  const char* help;
};

const Override kOverrides[] = {
    {"--model", "model", "type", "sh or pfc"},
    {"--epsilon", "model", "epsilon", "bulk parameter in (0, 1)"},
    {"--kappa", "model", "kappa", "stabilization parameter, or 'auto'"},
    {"--radius", "model", "radius", "max-norm radius used by kappa = auto"},
    {"--c-omega", "model", "c_omega", "embedding constant used by kappa = auto"},
    {"--dealias", "model", "dealias", "filter the nonlinear term (true/false)"},
    {"--modes", "grid", "modes", "grid points per direction (even)"},
    {"--length", "grid", "length", "domain side length"},
    {"--method", "method", "name", "method id, e.g. eerk2 or cif2_heun:tif"},
    {"--form", "method", "form", "native, differential or doc"},
    {"--tau", "time", "tau", "time-step size"},
    {"--steps", "time", "steps", "number of steps"},
    {"--initial", "initial", "type", "zero, constant, random, cosine or file"},
    {"--value", "initial", "value", "constant value or amplitude"},
    {"--amplitude", "initial", "amplitude", "amplitude of random or cosine data"},
    {"--seed", "initial", "seed", "seed of the random initial data"},
    {"--mode-m", "initial", "m", "x wavenumber of the cosine"},
    {"--mode-n", "initial", "n", "y wavenumber of the cosine"},
    {"--initial-path", "initial", "path", "snapshot file with initial data"},
    {"--energy-csv", "output", "energy_csv", "energy log path ('' disables)"},
    {"--snapshot", "output", "snapshot", "final snapshot path ('' disables)"},
    {"--summary", "output", "summary", "summary file path"},
    {"--check-monotonic", "checks", "monotonic", "enable the energy check"},
    {"--check-bounds", "checks", "bounds", "enable the C0 bound check"},
    {"--check-volume", "checks", "volume", "enable the PFC volume check"},
    {"--check-inequality", "checks", "inequality", "enable the energy inequality check"},
    {"--rel-tol", "checks", "rel_tol", "relative tolerance of the energy check"},
};

struct RunOptions {
  std::string config;
  std::vector<std::string> values = std::vector<std::string>(std::size(kOverrides));
  std::vector<CLI::Option*> options;
  std::vector<std::string> params;
};

void add_run_options(CLI::App* sub, RunOptions& o) {
  sub->add_option("--config", o.config, "configuration file");
  for (std::size_t i = 0; i < std::size(kOverrides); ++i) {
    o.options.push_back(sub->add_option(kOverrides[i].flag, o.values[i], kOverrides[i].help));
  }
  sub->add_option("--param", o.params, "method parameter key=value (repeatable)");
}

RunConfig build_config(const RunOptions& o, RunConfig base) {
  RunConfig cfg = o.config.empty() ? std::move(base) : esrk::app::load_config(o.config, std::move(base));
  for (std::size_t i = 0; i < o.options.size(); ++i) {
    if (o.options[i]->count() > 0) {
      esrk::app::set_value(cfg, kOverrides[i].section, kOverrides[i].key, o.values[i]);
    }
  }
  for (const auto& p : o.params) {
    const auto eq = p.find('=');
    if (eq == std::string::npos) throw esrk::app::ConfigError("--param expects key=value");
    esrk::app::set_value(cfg, "method", p.substr(0, eq), p.substr(eq + 1));
  }
  return cfg;
}

std::vector<std::string> nonempty(const std::vector<std::string>& v) {
  std::vector<std::string> out;
  for (const auto& s : v)
    if (!s.empty()) out.push_back(s);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Energy-stable Runge-Kutta solvers for Swift-Hohenberg and phase field crystal models"};
  app.require_subcommand(1);

  RunOptions sim_opts;
  auto* sim = app.add_subcommand("simulate", "run a simulation with diagnostics");
  add_run_options(sim, sim_opts);

  esrk::app::ScanRequest scan_req;
  std::vector<std::string> scan_methods;
  auto* scan = app.add_subcommand("scan-eigs", "certify lambda_min(S(D(z))) over a z grid");
  auto* scan_methods_opt =
      scan->add_option("--methods", scan_methods, "method specs (default: all certified)");
  scan->add_option("--points", scan_req.points, "log-spaced points besides z = 0");
  scan->add_option("--z-min", scan_req.z_min, "most negative z");
  scan->add_option("--z-max", scan_req.z_max, "least negative z");
  scan->add_option("--csv", scan_req.csv, "CSV output (method,z,lambda_min)");
  scan->add_option("--report", scan_req.report, "certification report file");

  RunOptions conv_opts;
  esrk::app::ConvergenceRequest conv_req;
  auto* conv = app.add_subcommand("convergence", "observed orders under time-step refinement");
  add_run_options(conv, conv_opts);
  conv->add_option("--levels", conv_req.levels, "refinement levels (>= 3)");
  conv->add_flag("--linear-hook", conv_req.linear_hook, "drop the cubic term, compare to exact");
  conv->add_option("--tolerance", conv_req.tolerance, "fail if |observed - order| exceeds this");
  conv->add_option("--methods", conv_req.methods, "method specs or 'all' (default: --method)");

  auto* self = app.add_subcommand("selftest", "oracle and identity suites");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : esrk::app::kExitConfig;
  }

  try {
    if (*sim) {
      return esrk::app::cmd_simulate(build_config(sim_opts, RunConfig{}), std::cout, std::cerr);
    }
    if (*scan) {
      if (scan_methods_opt->count() == 0) {
        scan_req.methods = {"all"};
      } else {
        scan_req.methods = nonempty(scan_methods);
      }
      return esrk::app::cmd_scan_eigs(scan_req, std::cout, std::cerr);
    }
    if (*conv) {
      RunConfig base;
      base.modes = 32;
      base.length = 32.0;
      base.tau = 0.05;
      base.steps = 20;
      base.initial.kind = esrk::app::InitialKind::Cosine;
      base.initial.value = 0.3;
      base.initial.mode_m = 1;
      base.initial.mode_n = 1;
      conv_req.base = build_config(conv_opts, base);
      return esrk::app::cmd_convergence(conv_req, std::cout, std::cerr);
    }
    if (*self) return esrk::app::cmd_selftest(std::cout);
  } catch (const esrk::app::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return esrk::app::kExitConfig;
  }
  return esrk::app::kExitConfig;
}
