#include "esrk/app/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include "esrk/app/initial.hpp"
#include "esrk/app/snapshot.hpp"

namespace esrk::app {

bool SimulationResult::pass() const {
  if (blew_up) return false;
  return std::all_of(checks.begin(), checks.end(), [](const CheckReport& c) { return c.pass; });
}

double auto_kappa(const RunConfig& cfg, double c0) {
  const double radius = cfg.radius > 0.0 ? cfg.radius : cfg.c_omega * 4.0 * c0;
  return kappa_floor(radius, cfg.epsilon);
}

double tau0_estimate(double lambda_es, int stages, double eps, double kappa, double c_omega,
                     double c0) {
  const double ck = eps + kappa + c_omega * c_omega * c0 * c0;
  return std::min(lambda_es / (2.0 * ck * stages), 6.0 * lambda_es / (ck * ck * stages));
}

SimulationResult simulate(const RunConfig& cfg) {
  validate(cfg);
  SimulationResult res;
  res.method = config_method(cfg);
  SpectralGrid grid(cfg.modes, cfg.length);
  Field u0 = make_initial(grid, cfg.initial);

  res.e0 = energy(u0, cfg.epsilon);
  res.c0 = c0_bound(res.e0, cfg.epsilon, grid.area());
  res.kappa = cfg.kappa_auto ? auto_kappa(cfg, res.c0) : cfg.kappa;
  res.volume0 = volume(u0);
  double l1 = 0.0;
  for (double v : u0.values()) l1 += std::abs(v);
  l1 *= grid.spacing() * grid.spacing();
  res.volume_scale = std::max({std::abs(res.volume0), l1, 1e-300});

  ModelSpec model = make_model(cfg.model, cfg.epsilon, res.kappa, grid);
  model.dealias = cfg.dealias;
  Stepper stepper(model, res.method, cfg.tau);
  const bool inequality = cfg.check_inequality && res.method.family != Family::Lawson;
  EnergyMonitor monitor(inequality);
  res.final_field = u0;
  try {
    res.final_field = run(stepper, u0, cfg.steps, monitor.hook(), cfg.form);
    res.t_final = cfg.steps * cfg.tau;
  } catch (const BlowUpError& e) {
    res.blew_up = true;
    res.blowup_message = e.what();
    res.t_final = (e.step() - 1) * cfg.tau;
    if (!stepper.stage_fields().empty()) res.final_field = stepper.stage_fields().front();
  }
  res.records = monitor.records();

  const auto& rec = res.records;
  if (cfg.check_monotonic) {
    res.checks.push_back(check_monotonic(rec, cfg.rel_tol));
  }
  res.info.push_back(check_monotonic(rec, cfg.rel_tol, MonotoneMode::Consecutive));
  if (cfg.check_bounds) res.checks.push_back(check_bounds(rec, res.c0));
  if (cfg.check_volume && cfg.model == Mobility::PFC) {
    res.checks.push_back(check_volume(rec, grid.area(), res.volume0, res.volume_scale));
  }
  if (inequality) res.checks.push_back(check_sandwich(rec));
  return res;
}

namespace {

void write_summary(std::ostream& os, const RunConfig& cfg, const SimulationResult& r) {
  os << std::setprecision(10);
  os << "method " << r.method.label() << " model " << to_string(cfg.model) << " M=" << cfg.modes
     << " L=" << cfg.length << " tau=" << cfg.tau << " steps=" << cfg.steps << "\n";
  os << "kappa " << r.kappa << (cfg.kappa_auto ? " (auto)" : "") << "  E0 " << r.e0 << "  C0 "
     << r.c0 << "\n";
  if (!r.records.empty()) os << "final energy " << r.records.back().energy << "\n";
  double ratio = 0.0;
  for (const auto& e : r.records) ratio = std::max(ratio, e.embed_ratio);
  os << "max embedding ratio " << ratio << "\n";
  try {
    const double lam = registered_lambda(r.method);
    os << "tau0 estimate (lambda_es=" << lam << ", c_omega=" << cfg.c_omega
       << ") " << tau0_estimate(lam, r.method.stages, cfg.epsilon, r.kappa, cfg.c_omega, r.c0)
       << "\n";
  } catch (const std::invalid_argument&) {
    os << "tau0 estimate: no registered lambda_es for this method\n";
  }
  if (r.blew_up) os << "BLOW-UP " << r.blowup_message << "\n";
  for (const auto& c : r.checks) os << to_string(c) << "\n";
  for (const auto& c : r.info) os << "info " << to_string(c) << "\n";
  os << (r.pass() ? "RESULT pass" : "RESULT fail") << "\n";
}

}  // namespace

int cmd_simulate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  SimulationResult r;
  try {
    r = simulate(cfg);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  }
  try {
    if (!cfg.energy_csv.empty()) {
      std::ofstream csv(cfg.energy_csv);
      if (!csv) throw ConfigError("cannot write '" + cfg.energy_csv + "'");
      write_energy_csv(csv, r.records);
    }
    if (!cfg.snapshot.empty()) write_snapshot(cfg.snapshot, *r.final_field, r.t_final);
    write_summary(out, cfg, r);
    if (!cfg.summary.empty()) {
      std::ofstream s(cfg.summary);
      if (!s) throw ConfigError("cannot write '" + cfg.summary + "'");
      write_summary(s, cfg, r);
    }
  } catch (const ConfigError& e) {
    err << "io error: " << e.what() << "\n";
    return kExitConfig;
  }
  if (r.blew_up) return kExitBlowUp;
  return r.pass() ? kExitOk : kExitCheckFailed;
}

Method parse_method_spec(const std::string& spec) {
  std::stringstream ss(spec);
  std::string id, item;
  std::getline(ss, id, ',');
  ParamMap params;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ConfigError("method spec '" + spec + "': expected key=value");
    RunConfig tmp;
    set_value(tmp, "method", item.substr(0, eq), item.substr(eq + 1));
    params.insert(tmp.params.begin(), tmp.params.end());
  }
  try {
    return make_method(id, params);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

int cmd_scan_eigs(const ScanRequest& req, std::ostream& out, std::ostream& err) {
  if (req.methods.empty()) {
    err << "config error: empty method list\n";
    return kExitConfig;
  }
  std::vector<Method> methods;
  std::vector<double> grid;
  try {
    for (const auto& s : req.methods) {
      if (s == "all") {
        for (auto& m : certified_methods()) methods.push_back(m);
      } else {
        methods.push_back(parse_method_spec(s));
      }
    }
    grid = default_z_grid(req.points, req.z_min, req.z_max);
  } catch (const std::exception& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  }
  std::vector<CertRecord> records;
  bool ok = true;
  for (const auto& m : methods) {
    if (m.family == Family::Lawson) {
      err << "config error: " << m.name << " has no differentiation matrix\n";
      return kExitConfig;
    }
    double lam = 0.0;
    bool registered = true;
    try {
      lam = registered_lambda(m);
    } catch (const std::invalid_argument&) {
      registered = false;
    }
    try {
      CertRecord r = scan_lambda(m, grid, lam);
      if (!registered) {
        r.pass = false;
        err << "no registered lambda_es for " << m.label() << "\n";
      }
      ok = ok && r.pass;
      records.push_back(std::move(r));
    } catch (const SingularStageError& e) {
      err << m.label() << ": " << e.what() << "\n";
      ok = false;
    }
  }
  write_cert_report(out, records);
  try {
    if (!req.report.empty()) {
      std::ofstream rep(req.report);
      if (!rep) throw ConfigError("cannot write '" + req.report + "'");
      write_cert_report(rep, records);
    }
    if (!req.csv.empty()) {
      std::ofstream csv(req.csv);
      if (!csv) throw ConfigError("cannot write '" + req.csv + "'");
      write_scan_csv(csv, records);
    }
  } catch (const ConfigError& e) {
    err << "io error: " << e.what() << "\n";
    return kExitConfig;
  }
  return ok ? kExitOk : kExitCheckFailed;
}

ConvergenceRow convergence_study(const ModelSpec& model, const Method& method, const Field& u0,
                                 double tau0, int steps0, int levels) {
  if (levels < 3) throw ConfigError("convergence: need at least 3 levels");
  if (steps0 < 1) throw ConfigError("convergence: need at least one step");
  ConvergenceRow row;
  row.method = method.label();
  row.order = method.order;
  std::vector<Field> sol;
  for (int l = 0; l < levels; ++l) {
    const double tau = tau0 / std::pow(2.0, l);
    Stepper st(model, method, tau);
    row.taus.push_back(tau);
    sol.push_back(run(st, u0, steps0 << l));
  }
  if (model.linear_test_hook) {
    const double t = tau0 * steps0;
    auto c = to_fourier(u0);
    const Symbol mob = mobility_symbol(model);
    const Symbol lk = stabilized_symbol(model);
    for (std::size_t k = 0; k < c.size(); ++k) c[k] *= std::exp(t * mob[k] * (lk[k] - model.kappa));
    const Field exact = to_physical(model.grid, c);
    for (const auto& s : sol) row.errors.push_back(norm_l2(s - exact));
  } else {
    for (int l = 0; l + 1 < levels; ++l) row.errors.push_back(norm_l2(sol[l] - sol[l + 1]));
  }
  for (std::size_t l = 0; l + 1 < row.errors.size(); ++l) {
    row.orders.push_back(std::log2(row.errors[l] / row.errors[l + 1]));
  }
  row.observed = row.orders.back();
  return row;
}

int cmd_convergence(const ConvergenceRequest& req, std::ostream& out, std::ostream& err) {
  std::vector<Method> methods;
  std::optional<ModelSpec> model;
  std::optional<Field> u0;
  try {
    RunConfig cfg = req.base;
    if (req.levels < 3) throw ConfigError("convergence: need at least 3 levels");
    validate(cfg);
    if (req.methods.empty()) {
      methods.push_back(config_method(cfg));
    } else {
      for (const auto& s : req.methods) {
        if (s == "all") {
          for (auto& m : certified_methods()) methods.push_back(m);
        } else {
          methods.push_back(parse_method_spec(s));
        }
      }
    }
    SpectralGrid grid(cfg.modes, cfg.length);
    u0 = make_initial(grid, cfg.initial);
    const double kappa =
        cfg.kappa_auto ? auto_kappa(cfg, c0_bound(energy(*u0, cfg.epsilon), cfg.epsilon, grid.area()))
                       : cfg.kappa;
    model = make_model(cfg.model, cfg.epsilon, kappa, grid);
    model->linear_test_hook = req.linear_hook;
    model->dealias = cfg.dealias;
  } catch (const std::exception& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  }
  bool ok = true;
  out << std::setprecision(6);
  out << (req.linear_hook ? "reference: exact linear solution\n"
                          : "reference: consecutive refinement levels\n");
  for (const auto& m : methods) {
    ConvergenceRow row;
    try {
      row = convergence_study(*model, m, *u0, req.base.tau, std::max(1, req.base.steps), req.levels);
    } catch (const BlowUpError& e) {
      err << m.label() << ": " << e.what() << "\n";
      return kExitBlowUp;
    }
    out << row.method << " order " << row.order << "\n";
    for (std::size_t l = 0; l < row.errors.size(); ++l) {
      out << "  tau " << row.taus[l] << "  err " << row.errors[l];
      if (l > 0) out << "  rate " << row.orders[l - 1];
      out << "\n";
    }
    out << "  observed " << row.observed << "\n";
    if (req.tolerance > 0.0 && std::abs(row.observed - row.order) > req.tolerance) ok = false;
  }
  return ok ? kExitOk : kExitCheckFailed;
}

}  // namespace esrk::app
