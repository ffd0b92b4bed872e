#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "esrk/model.hpp"
#include "esrk/stepper.hpp"

namespace esrk {

struct EnergyRecord {
  int n = 0;
  int stage = 1;  // 1..s+1
  double t = 0.0;
  double energy = 0.0;
  double l2 = 0.0;
  double h2semi = 0.0;  // ||(I + Delta_h) u||
  double maxnorm = 0.0;
  double mean = 0.0;
  /// E[u^{n,stage}] - E[u^{n,1}] and the quadratic-form bound over stages
  /// 1..stage-1; both 0 on stage 1.
  double ineq_lhs = 0.0;
  double ineq_rhs = 0.0;
  /// ||u||_inf / (||u|| + ||(I + Delta_h) u||), logged only.
  double embed_ratio = 0.0;
};

EnergyRecord record_stage(const ModelSpec& model, const Field& u, int n, int stage, double t);

struct InequalityPartials {
  /// Entry k-1 holds the sides for stage k+1, k = 1..s.
  std::vector<double> lhs;
  std::vector<double> rhs;
};

/// lhs_k = E[u^{n,k+1}] - E[u^{n,1}],
/// rhs_k = (1/tau) sum_{i<=k} <M_h^{-1} delta_i, sum_{j<=i} d_ij(z) delta_j>,
/// with delta_i = u^{n,i+1} - u^{n,i} from the last step of the stepper. The
/// PFC zero mode is skipped (delta has zero mean there).
InequalityPartials energy_inequality(const Stepper& stepper, const std::vector<double>& stage_energy);

/// All s+1 records of the stepper's last step. The inequality columns are
/// filled when with_inequality is set and the method has a differential form.
std::vector<EnergyRecord> record_step(const Stepper& stepper, const StepView& view,
                                      bool with_inequality = true);

/// Accumulates records from run() hooks.
class EnergyMonitor {
 public:
  explicit EnergyMonitor(bool with_inequality = true) : with_inequality_(with_inequality) {}
  void operator()(const StepView& view);
  StepHook hook() {
    return [this](const StepView& v) { (*this)(v); };
  }
  const std::vector<EnergyRecord>& records() const { return records_; }

 private:
  bool with_inequality_;
  std::vector<EnergyRecord> records_;
};

struct CheckReport {
  std::string name;
  bool pass = true;
  /// Location of the first violation (0 when none).
  int n = 0;
  int stage = 0;
  /// Largest violation (monotonic, sandwich, volume) or smallest margin (bounds).
  double worst = 0.0;
  std::string detail;
};

enum class MonotoneMode {
  /// E[u^{n,i}] <= E[u^{n,1}] for every stage and E[u^{n+1,1}] <= E[u^{n,1}].
  StageBound,
  /// Every record no larger than its predecessor.
  Consecutive,
};

CheckReport check_monotonic(const std::vector<EnergyRecord>& records, double rel_tol = 1e-9,
                            MonotoneMode mode = MonotoneMode::StageBound);
/// l2 + h2semi <= c0 + tol at every record.
CheckReport check_bounds(const std::vector<EnergyRecord>& records, double c0, double tol = 1e-9);
/// |volume - v0| / scale <= rel_tol, volume = mean * area.
CheckReport check_volume(const std::vector<EnergyRecord>& records, double area, double v0,
                         double scale, double rel_tol = 1e-11);
/// lhs <= rhs + tol (1 + |lhs|) and rhs <= tol on every stage >= 2.
CheckReport check_sandwich(const std::vector<EnergyRecord>& records, double tol = 1e-9);

std::string to_string(const CheckReport& r);

/// Header n,stage,t,energy,l2,h2semi,maxnorm,mean,ineq_lhs,ineq_rhs with 17
/// significant digits.
void write_energy_csv(std::ostream& os, const std::vector<EnergyRecord>& records,
                      bool header = true);

}  // namespace esrk
