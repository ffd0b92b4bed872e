#include "esrk/app/config.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace esrk::app {

std::string to_string(InitialKind k) {
  switch (k) {
    case InitialKind::Zero: return "zero";
    case InitialKind::Constant: return "constant";
    case InitialKind::Random: return "random";
    case InitialKind::Cosine: return "cosine";
    case InitialKind::File: return "file";
  }
  return "?";
}

InitialKind parse_initial_kind(const std::string& s) {
  if (s == "zero") return InitialKind::Zero;
  if (s == "constant") return InitialKind::Constant;
  if (s == "random") return InitialKind::Random;
  if (s == "cosine") return InitialKind::Cosine;
  if (s == "file") return InitialKind::File;
  throw ConfigError("unknown initial type '" + s + "'");
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  errno = 0;
  char* end = nullptr;
  const double x = std::strtod(v.c_str(), &end);
  if (v.empty() || end != v.c_str() + v.size() || errno == ERANGE) {
    throw ConfigError(key + ": expected a number, got '" + v + "'");
  }
  return x;
}

long long to_integer(const std::string& key, const std::string& v) {
  errno = 0;
  char* end = nullptr;
  const long long x = std::strtoll(v.c_str(), &end, 10);
  if (v.empty() || end != v.c_str() + v.size() || errno == ERANGE) {
    throw ConfigError(key + ": expected an integer, got '" + v + "'");
  }
  return x;
}

int to_int(const std::string& key, const std::string& v) {
  const long long x = to_integer(key, v);
  if (x < -2147483647LL || x > 2147483647LL) throw ConfigError(key + ": out of range");
  return static_cast<int>(x);
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError(key + ": expected true/false, got '" + v + "'");
}

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

StepForm parse_form(const std::string& v) {
  if (v == "native") return StepForm::Native;
  if (v == "differential") return StepForm::Differential;
  if (v == "doc") return StepForm::Doc;
  throw ConfigError("form: expected native|differential|doc, got '" + v + "'");
}

}  // namespace

void set_value(RunConfig& c, const std::string& section, const std::string& key,
               const std::string& value) {
  const std::string v = trim(value);
  const std::string k = section + "." + key;
  if (section == "model") {
    if (key == "type") {
      try {
        c.model = parse_mobility(v);
      } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
      }
    } else if (key == "epsilon") c.epsilon = to_double(k, v);
    else if (key == "kappa") {
      if (v == "auto") {
        c.kappa_auto = true;
      } else {
        c.kappa_auto = false;
        c.kappa = to_double(k, v);
      }
    } else if (key == "radius") c.radius = to_double(k, v);
    else if (key == "c_omega") c.c_omega = to_double(k, v);
    else if (key == "dealias") c.dealias = to_bool(k, v);
    else throw ConfigError("unknown key " + k);
  } else if (section == "grid") {
    if (key == "modes") c.modes = to_int(k, v);
    else if (key == "length") c.length = to_double(k, v);
    else throw ConfigError("unknown key " + k);
  } else if (section == "method") {
    if (key == "name") c.method = v;
    else if (key == "form") c.form = parse_form(v);
    else c.params[key] = to_double(k, v);
  } else if (section == "time") {
    if (key == "tau") c.tau = to_double(k, v);
    else if (key == "steps") c.steps = to_int(k, v);
    else throw ConfigError("unknown key " + k);
  } else if (section == "initial") {
    if (key == "type") c.initial.kind = parse_initial_kind(v);
    else if (key == "value" || key == "amplitude") c.initial.value = to_double(k, v);
    else if (key == "seed") {
      const long long s = to_integer(k, v);
      if (s < 0) throw ConfigError(k + ": must be >= 0");
      c.initial.seed = static_cast<std::uint64_t>(s);
      c.initial.has_seed = true;
    } else if (key == "m") c.initial.mode_m = to_int(k, v);
    else if (key == "n") c.initial.mode_n = to_int(k, v);
    else if (key == "path") c.initial.path = v;
    else throw ConfigError("unknown key " + k);
  } else if (section == "output") {
    if (key == "energy_csv") c.energy_csv = v;
    else if (key == "snapshot") c.snapshot = v;
    else if (key == "summary") c.summary = v;
    else throw ConfigError("unknown key " + k);
  } else if (section == "checks") {
    if (key == "monotonic") c.check_monotonic = to_bool(k, v);
    else if (key == "bounds") c.check_bounds = to_bool(k, v);
    else if (key == "volume") c.check_volume = to_bool(k, v);
    else if (key == "inequality") c.check_inequality = to_bool(k, v);
    else if (key == "rel_tol") c.rel_tol = to_double(k, v);
    else throw ConfigError("unknown key " + k);
  } else {
    throw ConfigError("unknown section [" + section + "]");
  }
}

RunConfig parse_config(std::istream& in, RunConfig base) {
  RunConfig cfg = std::move(base);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find_first_of("#;");
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("line " + std::to_string(lineno) + ": bad section");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos || section.empty()) {
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value inside a section");
    }
    try {
      set_value(cfg, section, trim(line.substr(0, eq)), line.substr(eq + 1));
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return cfg;
}

RunConfig load_config(const std::string& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  return parse_config(in, std::move(base));
}

std::string serialize_config(const RunConfig& c) {
  std::ostringstream os;
  auto b = [](bool x) { return x ? "true" : "false"; };
  os << "[model]\n"
     << "type = " << to_string(c.model) << "\n"
     << "epsilon = " << num(c.epsilon) << "\n"
     << "kappa = " << (c.kappa_auto ? std::string("auto") : num(c.kappa)) << "\n"
     << "radius = " << num(c.radius) << "\n"
     << "c_omega = " << num(c.c_omega) << "\n"
     << "dealias = " << b(c.dealias) << "\n\n"
     << "[grid]\n"
     << "modes = " << c.modes << "\n"
     << "length = " << num(c.length) << "\n\n"
     << "[method]\n"
     << "name = " << c.method << "\n"
     << "form = " << to_string(c.form) << "\n";
  for (const auto& [k, v] : c.params) os << k << " = " << num(v) << "\n";
  os << "\n[time]\n"
     << "tau = " << num(c.tau) << "\n"
     << "steps = " << c.steps << "\n\n"
     << "[initial]\n"
     << "type = " << to_string(c.initial.kind) << "\n"
     << "value = " << num(c.initial.value) << "\n";
  if (c.initial.has_seed) os << "seed = " << c.initial.seed << "\n";
  os << "m = " << c.initial.mode_m << "\n"
     << "n = " << c.initial.mode_n << "\n";
  if (!c.initial.path.empty()) os << "path = " << c.initial.path << "\n";
  os << "\n[output]\n"
     << "energy_csv = " << c.energy_csv << "\n"
     << "snapshot = " << c.snapshot << "\n";
  if (!c.summary.empty()) os << "summary = " << c.summary << "\n";
  os << "\n[checks]\n"
     << "monotonic = " << b(c.check_monotonic) << "\n"
     << "bounds = " << b(c.check_bounds) << "\n"
     << "volume = " << b(c.check_volume) << "\n"
     << "inequality = " << b(c.check_inequality) << "\n"
     << "rel_tol = " << num(c.rel_tol) << "\n";
  return os.str();
}

Method config_method(const RunConfig& cfg) {
  try {
    return make_method(cfg.method, cfg.params);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

void validate(const RunConfig& c) {
  if (!(c.epsilon > 0.0 && c.epsilon < 1.0)) throw ConfigError("model.epsilon must lie in (0, 1)");
  if (!c.kappa_auto && !(c.kappa >= 0.0 && std::isfinite(c.kappa))) {
    throw ConfigError("model.kappa must be >= 0 or auto");
  }
  if (c.kappa_auto && !(c.c_omega > 0.0)) throw ConfigError("model.c_omega must be > 0");
  if (c.modes < 4 || c.modes % 2 != 0) throw ConfigError("grid.modes must be even and >= 4");
  if (!(c.length > 0.0 && std::isfinite(c.length))) throw ConfigError("grid.length must be > 0");
  if (!(c.tau > 0.0 && std::isfinite(c.tau))) throw ConfigError("time.tau must be > 0");
  if (c.steps < 0) throw ConfigError("time.steps must be >= 0");
  if (!(c.rel_tol >= 0.0)) throw ConfigError("checks.rel_tol must be >= 0");
  const Method m = config_method(c);
  if (m.family == Family::Lawson && c.form != StepForm::Native) {
    throw ConfigError("Lawson methods only support form = native");
  }
  switch (c.initial.kind) {
    case InitialKind::Random:
      if (!c.initial.has_seed) throw ConfigError("initial.seed is required for random data");
      if (!(c.initial.value >= 0.0)) throw ConfigError("initial.amplitude must be >= 0");
      break;
    case InitialKind::File:
      if (c.initial.path.empty()) throw ConfigError("initial.path is required for file data");
      break;
    default:
      if (!std::isfinite(c.initial.value)) throw ConfigError("initial.value must be finite");
      break;
  }
}

}  // namespace esrk::app
