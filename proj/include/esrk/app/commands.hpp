#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "esrk/app/config.hpp"
#include "esrk/diagnostics.hpp"
#include "esrk/diffmat.hpp"

namespace esrk::app {

enum ExitCode : int { kExitOk = 0, kExitCheckFailed = 1, kExitConfig = 2, kExitBlowUp = 3 };

struct SimulationResult {
  Method method;
  double kappa = 0.0;
  double e0 = 0.0;
  double c0 = 0.0;
  double volume0 = 0.0;
  double volume_scale = 1.0;
  std::vector<EnergyRecord> records;
  /// Enabled checks; all must pass for exit code 0.
  std::vector<CheckReport> checks;
  /// Reported only (never affect the exit code).
  std::vector<CheckReport> info;
  std::optional<Field> final_field;
  double t_final = 0.0;
  bool blew_up = false;
  std::string blowup_message;
  bool pass() const;
};

/// Radius-based kappa for kappa = auto: kappa_floor(radius) with radius either
/// configured or c_omega * 4 * C0.
double auto_kappa(const RunConfig& cfg, double c0);

/// Step-size threshold min{l/(2 C s), 6 l/(C^2 s)} with C = eps + kappa + (c_omega C0)^2.
double tau0_estimate(double lambda_es, int stages, double eps, double kappa, double c_omega,
                     double c0);

/// Runs the configured simulation without touching the file system (file
/// initial data excepted). Throws ConfigError.
SimulationResult simulate(const RunConfig& cfg);

/// simulate() plus energy CSV, snapshot and summary output.
int cmd_simulate(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// "name[:variant][,key=value...]", e.g. "eerk3_2,c2=0.5,c3=0.7" or "cif2_heun:tif".
Method parse_method_spec(const std::string& spec);

struct ScanRequest {
  /// Method specs; "all" expands to every certified method.
  std::vector<std::string> methods;
  int points = 2000;
  double z_min = -1e4;
  double z_max = -1e-6;
  std::string csv;     // empty: no CSV
  std::string report;  // empty: stdout only
};

int cmd_scan_eigs(const ScanRequest& req, std::ostream& out, std::ostream& err);

struct ConvergenceRow {
  std::string method;
  int order = 0;
  std::vector<double> taus;
  /// ||u_l - u_{l+1}|| (self-refinement) or ||u_l - exact|| (linear hook).
  std::vector<double> errors;
  std::vector<double> orders;
  double observed = 0.0;
};

/// Runs to t = tau0 * steps0 with tau0 / 2^l, l = 0..levels-1. With the linear
/// hook the exact solution u0 exp(t m (l - kappa)) is the reference; otherwise
/// orders come from consecutive-level differences. observed is the finest pair.
ConvergenceRow convergence_study(const ModelSpec& model, const Method& method, const Field& u0,
                                 double tau0, int steps0, int levels);

struct ConvergenceRequest {
  RunConfig base;
  std::vector<std::string> methods;  // empty: base.method
  int levels = 5;
  bool linear_hook = false;
  /// When > 0, exit 1 unless |observed - order| <= tolerance for every method.
  double tolerance = 0.0;
};

int cmd_convergence(const ConvergenceRequest& req, std::ostream& out, std::ostream& err);

}  // namespace esrk::app
