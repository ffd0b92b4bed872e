#include "esrk/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace esrk {

EnergyRecord record_stage(const ModelSpec& model, const Field& u, int n, int stage, double t) {
  EnergyRecord r;
  r.n = n;
  r.stage = stage;
  r.t = t;
  r.energy = energy(u, model.epsilon);
  r.l2 = norm_l2(u);
  r.h2semi = seminorm_h2(u);
  r.maxnorm = norm_max(u);
  r.mean = mean(u);
  const double den = r.l2 + r.h2semi;
  r.embed_ratio = den > 0.0 ? r.maxnorm / den : 0.0;
  return r;
}

InequalityPartials energy_inequality(const Stepper& stepper, const std::vector<double>& stage_energy) {
  const auto s = static_cast<std::size_t>(stepper.stages());
  const auto& modes = stepper.stage_modes();
  if (modes.size() != s + 1 || stage_energy.size() != s + 1) {
    throw std::invalid_argument("energy_inequality: stage storage incomplete");
  }
  const auto& mob = stepper.mobility();
  const std::size_t n = mob.size();
  InequalityPartials out;
  out.lhs.resize(s);
  out.rhs.assign(s, 0.0);
  std::vector<Complex> delta(s);
  for (std::size_t k = 0; k < n; ++k) {
    if (mob[k] == 0.0) continue;
    const SmallMatrix& d = stepper.diff_matrix_at(k);
    for (std::size_t i = 0; i < s; ++i) delta[i] = modes[i + 1][k] - modes[i][k];
    double partial = 0.0;
    for (std::size_t i = 0; i < s; ++i) {
      Complex acc = 0.0;
      for (std::size_t j = 0; j <= i; ++j) acc += d(i, j) * delta[j];
      partial += (std::conj(delta[i]) * acc).real() / mob[k];
      out.rhs[i] += partial;
    }
  }
  const double w = fourier_weight(stepper.model().grid) / stepper.tau();
  for (std::size_t i = 0; i < s; ++i) {
    out.rhs[i] *= w;
    out.lhs[i] = stage_energy[i + 1] - stage_energy[0];
  }
  return out;
}

std::vector<EnergyRecord> record_step(const Stepper& stepper, const StepView& view,
                                      bool with_inequality) {
  const auto& fields = stepper.stage_fields();
  const auto& c = stepper.method().abscissas;
  std::vector<EnergyRecord> out;
  std::vector<double> e;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    out.push_back(record_stage(stepper.model(), fields[i], view.n, static_cast<int>(i) + 1,
                               view.t0 + c[i] * stepper.tau()));
    e.push_back(out.back().energy);
  }
  if (with_inequality && stepper.method().family != Family::Lawson) {
    const auto p = energy_inequality(stepper, e);
    for (std::size_t i = 0; i < p.lhs.size(); ++i) {
      out[i + 1].ineq_lhs = p.lhs[i];
      out[i + 1].ineq_rhs = p.rhs[i];
    }
  }
  return out;
}

void EnergyMonitor::operator()(const StepView& view) {
  auto rows = record_step(*view.stepper, view, with_inequality_);
  records_.insert(records_.end(), rows.begin(), rows.end());
}

namespace {

CheckReport fail_at(CheckReport r, const EnergyRecord& rec, double amount) {
  if (r.pass) {
    r.pass = false;
    r.n = rec.n;
    r.stage = rec.stage;
  }
  r.worst = std::max(r.worst, amount);
  return r;
}

}  // namespace

CheckReport check_monotonic(const std::vector<EnergyRecord>& records, double rel_tol,
                            MonotoneMode mode) {
  CheckReport r;
  r.name = mode == MonotoneMode::StageBound ? "energy" : "energy-consecutive";
  const EnergyRecord* step_start = nullptr;
  const EnergyRecord* prev = nullptr;
  const EnergyRecord* prev_start = nullptr;
  for (const auto& rec : records) {
    if (mode == MonotoneMode::Consecutive) {
      if (prev) {
        const double excess = rec.energy - prev->energy;
        if (excess > rel_tol * (1.0 + std::abs(prev->energy))) r = fail_at(r, rec, excess);
      }
    } else {
      if (rec.stage == 1) {
        prev_start = step_start;
        step_start = &rec;
        if (prev_start) {
          const double excess = rec.energy - prev_start->energy;
          if (excess > rel_tol * (1.0 + std::abs(prev_start->energy))) r = fail_at(r, rec, excess);
        }
      } else if (step_start) {
        const double excess = rec.energy - step_start->energy;
        if (excess > rel_tol * (1.0 + std::abs(step_start->energy))) r = fail_at(r, rec, excess);
      }
    }
    prev = &rec;
  }
  if (!r.pass) {
    std::ostringstream os;
    os << "energy increase at step " << r.n << " stage " << r.stage << " (max excess "
       << std::setprecision(3) << r.worst << ")";
    r.detail = os.str();
  }
  return r;
}

CheckReport check_bounds(const std::vector<EnergyRecord>& records, double c0, double tol) {
  CheckReport r;
  r.name = "bounds";
  double margin = records.empty() ? c0 : INFINITY;
  for (const auto& rec : records) {
    const double m = c0 - (rec.l2 + rec.h2semi);
    margin = std::min(margin, m);
    if (m < -tol && r.pass) {
      r.pass = false;
      r.n = rec.n;
      r.stage = rec.stage;
    }
  }
  r.worst = margin;
  std::ostringstream os;
  os << "C0=" << std::setprecision(6) << c0 << " min margin " << margin;
  if (!r.pass) os << ", first exceeded at step " << r.n << " stage " << r.stage;
  r.detail = os.str();
  return r;
}

CheckReport check_volume(const std::vector<EnergyRecord>& records, double area, double v0,
                         double scale, double rel_tol) {
  CheckReport r;
  r.name = "volume";
  const double denom = scale > 0.0 ? scale : 1.0;
  for (const auto& rec : records) {
    const double drift = std::abs(rec.mean * area - v0) / denom;
    if (drift > rel_tol) r = fail_at(r, rec, drift);
    r.worst = std::max(r.worst, drift);
  }
  std::ostringstream os;
  os << "max relative drift " << std::setprecision(3) << r.worst;
  if (!r.pass) os << ", first exceeded at step " << r.n << " stage " << r.stage;
  r.detail = os.str();
  return r;
}

CheckReport check_sandwich(const std::vector<EnergyRecord>& records, double tol) {
  CheckReport r;
  r.name = "inequality";
  for (const auto& rec : records) {
    if (rec.stage < 2) continue;
    const double upper = rec.ineq_lhs - rec.ineq_rhs - tol * (1.0 + std::abs(rec.ineq_lhs));
    const double sign = rec.ineq_rhs - tol;
    if (upper > 0.0 || sign > 0.0) r = fail_at(r, rec, std::max(upper, sign));
  }
  if (!r.pass) {
    std::ostringstream os;
    os << "lhs <= rhs <= 0 violated at step " << r.n << " stage " << r.stage << " (by "
       << std::setprecision(3) << r.worst << ")";
    r.detail = os.str();
  }
  return r;
}

std::string to_string(const CheckReport& r) {
  std::string s = (r.pass ? "ok   " : "FAIL ") + r.name;
  if (!r.detail.empty()) s += ": " + r.detail;
  return s;
}

void write_energy_csv(std::ostream& os, const std::vector<EnergyRecord>& records, bool header) {
  if (header) os << "n,stage,t,energy,l2,h2semi,maxnorm,mean,ineq_lhs,ineq_rhs\n";
  const auto flags = os.flags();
  const auto prec = os.precision(17);
  for (const auto& r : records) {
    os << r.n << ',' << r.stage << ',' << r.t << ',' << r.energy << ',' << r.l2 << ',' << r.h2semi
       << ',' << r.maxnorm << ',' << r.mean << ',' << r.ineq_lhs << ',' << r.ineq_rhs << '\n';
  }
  os.precision(prec);
  os.flags(flags);
}

}  // namespace esrk
