#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "esrk/methods.hpp"
#include "esrk/model.hpp"
#include "esrk/stepper.hpp"

namespace esrk::app {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class InitialKind { Zero, Constant, Random, Cosine, File };

std::string to_string(InitialKind k);
InitialKind parse_initial_kind(const std::string& s);

struct InitialSpec {
  InitialKind kind = InitialKind::Random;
  /// Constant value, or amplitude for random and cosine data.
  double value = 0.1;
  bool has_seed = false;
  std::uint64_t seed = 0;
  int mode_m = 1;
  int mode_n = 0;
  std::string path;
};

struct RunConfig {
  // [model]
  Mobility model = Mobility::SH;
  double epsilon = 0.25;
  double kappa = 2.0;
  bool kappa_auto = false;
  /// Max-norm radius for automatic kappa; <= 0 means c_omega * 4 * C0.
  double radius = 0.0;
  double c_omega = 1.0;
  bool dealias = false;
  // [grid]
  int modes = 64;
  double length = 32.0;
  // [method]
  std::string method = "eerk2";
  ParamMap params;
  StepForm form = StepForm::Native;
  // [time]
  double tau = 0.1;
  int steps = 200;
  // [initial]
  InitialSpec initial;
  // [output]
  std::string energy_csv = "energy.csv";
  std::string snapshot = "final.bin";
  std::string summary;  // empty: stdout only
  // [checks]
  bool check_monotonic = true;
  bool check_bounds = true;
  bool check_volume = true;
  bool check_inequality = true;
  double rel_tol = 1e-9;
};

/// Sets one key; section names as in the file format ("model", "grid", ...).
/// Throws ConfigError for unknown keys or malformed values.
void set_value(RunConfig& cfg, const std::string& section, const std::string& key,
               const std::string& value);

/// Keys absent from the input keep their values from base.
RunConfig parse_config(std::istream& in, RunConfig base = {});
RunConfig load_config(const std::string& path, RunConfig base = {});
std::string serialize_config(const RunConfig& cfg);

/// Range checks mirroring the model, grid, method and stepper preconditions.
void validate(const RunConfig& cfg);

/// The method selected by cfg (registry id plus parameters).
Method config_method(const RunConfig& cfg);

}  // namespace esrk::app
