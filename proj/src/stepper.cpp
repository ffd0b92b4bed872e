#include "esrk/stepper.hpp"

#include <cmath>
#include <unordered_map>

#include "esrk/diffmat.hpp"

namespace esrk {

std::string to_string(StepForm f) {
  switch (f) {
    case StepForm::Native: return "native";
    case StepForm::Differential: return "differential";
    case StepForm::Doc: return "doc";
  }
  return "?";
}

BlowUpError::BlowUpError(int step, int stage)
    : std::runtime_error("non-finite value at step " + std::to_string(step) + ", stage " +
                         std::to_string(stage)),
      step_(step),
      stage_(stage) {}

Stepper::Stepper(ModelSpec model, Method method, double tau)
    : model_(std::move(model)), method_(std::move(method)), tau_(tau) {
  if (!(tau_ > 0.0) || !std::isfinite(tau_)) throw std::invalid_argument("stepper: tau must be > 0");
  if (method_.stages < 1) throw std::invalid_argument("stepper: method has no stages");
  build_caches();
}

void Stepper::build_caches() {
  const auto& grid = model_.grid;
  const std::size_t n = grid.size();
  mobility_ = mobility_symbol(model_);
  const Symbol lk = stabilized_symbol(model_);
  z_.resize(n);
  tau_m_.resize(n);
  slot_.resize(n);
  std::unordered_map<double, std::size_t> seen;
  for (std::size_t k = 0; k < n; ++k) {
    tau_m_[k] = tau_ * mobility_[k];
    double zk = tau_m_[k] * lk[k];
    if (zk == 0.0) zk = 0.0;  // drop the sign of -0
    if (zk > 0.0) throw std::logic_error("stepper: positive z at a Fourier mode");
    z_[k] = zk;
    const auto [it, inserted] = seen.try_emplace(zk, slot_z_.size());
    if (inserted) slot_z_.push_back(zk);
    slot_[k] = it->second;
  }

  const auto s = static_cast<std::size_t>(method_.stages);
  for (double zk : slot_z_) {
    switch (method_.family) {
      case Family::IERK: {
        std::vector<double> p(s);
        for (std::size_t r = 0; r < s; ++r) {
          const double den = 1.0 - zk * method_.implicit_part(r, r);
          if (den == 0.0) throw SingularStageError(r + 2, den);
          p[r] = 1.0 / den;
        }
        piv_.push_back(std::move(p));
        break;
      }
      case Family::EERK:
      case Family::CIFRK_TIF:
      case Family::CIFRK_NIF:
        coeff_.push_back(method_.coefficients(zk));
        break;
      case Family::Lawson: {
        SmallMatrix w(s);
        std::vector<double> e(s);
        const auto& c = method_.abscissas;
        for (std::size_t r = 0; r < s; ++r) {
          e[r] = std::exp(c[r + 1] * zk);
          for (std::size_t j = 0; j <= r; ++j)
            w(r, j) = method_.explicit_part(r, j) * std::exp((c[r + 1] - c[j]) * zk);
        }
        lawson_.push_back(w);
        lawson_exp_.push_back(std::move(e));
        break;
      }
    }
  }
}

void Stepper::build_diff_caches() const {
  if (!diff_.empty()) return;
  diff_.reserve(slot_z_.size());
  theta_.reserve(slot_z_.size());
  for (double zk : slot_z_) {
    diff_.push_back(differentiation_matrix(method_, zk));
    theta_.push_back(doc_kernels_recursive(diff_.back()));
  }
}

const SmallMatrix& Stepper::diff_matrix_at(std::size_t k) const {
  build_diff_caches();
  return diff_.at(slot_.at(k));
}

const SmallMatrix& Stepper::doc_kernel_at(std::size_t k) const {
  build_diff_caches();
  return theta_.at(slot_.at(k));
}

ModeArray Stepper::nonlinear_modes(const Field& u) const {
  return to_fourier(stabilized_nonlinearity(model_, u));
}

Field Stepper::step(const Field& u, StepForm form) {
  if (!(u.grid() == model_.grid)) throw std::invalid_argument("stepper: field on a different grid");
  if (form != StepForm::Native) {
    if (method_.family == Family::Lawson) {
      throw std::invalid_argument("stepper: Lawson methods only support the native form");
    }
    build_diff_caches();
  }
  const auto s = static_cast<std::size_t>(method_.stages);
  const std::size_t n = z_.size();
  const int step_no = steps_ + 1;
  const auto& grid = model_.grid;

  stage_fields_.assign(1, u);
  stage_modes_.assign(1, to_fourier(u));
  stage_fields_.reserve(s + 1);
  stage_modes_.reserve(s + 1);
  std::vector<ModeArray> fhat;
  fhat.reserve(s);
  // delta_j = U_{j+1} - U_j, needed by the differential and DOC forms.
  std::vector<ModeArray> delta;

  const ModeArray& u0 = stage_modes_[0];
  for (std::size_t r = 0; r < s; ++r) {
    fhat.push_back(nonlinear_modes(stage_fields_[r]));
    ModeArray next(n);
    ModeArray dr(form == StepForm::Native ? 0 : n);
    for (std::size_t k = 0; k < n; ++k) {
      const double zk = z_[k];
      const double tm = tau_m_[k];
      const std::size_t q = slot_[k];
      auto g = [&](std::size_t j) { return tm * fhat[j][k] - zk * u0[k]; };
      if (form == StepForm::Native) {
        switch (method_.family) {
          case Family::IERK: {
            Complex acc = 0.0;
            for (std::size_t j = 0; j < r; ++j)
              acc += zk * method_.implicit_part(r, j) * (stage_modes_[j + 1][k] - u0[k]);
            for (std::size_t j = 0; j <= r; ++j) acc -= method_.explicit_part(r, j) * g(j);
            next[k] = u0[k] + acc * piv_[q][r];
            break;
          }
          case Family::EERK:
          case Family::CIFRK_TIF:
          case Family::CIFRK_NIF: {
            Complex acc = u0[k];
            for (std::size_t j = 0; j <= r; ++j) acc -= coeff_[q](r, j) * g(j);
            next[k] = acc;
            break;
          }
          case Family::Lawson: {
            Complex acc = lawson_exp_[q][r] * u0[k];
            for (std::size_t j = 0; j <= r; ++j) acc -= tm * lawson_[q](r, j) * fhat[j][k];
            next[k] = acc;
            break;
          }
        }
      } else if (form == StepForm::Differential) {
        const SmallMatrix& d = diff_[q];
        Complex rhs = zk * stage_modes_[r][k] - tm * fhat[r][k];
        for (std::size_t j = 0; j < r; ++j) rhs -= d(r, j) * delta[j][k];
        dr[k] = rhs / (d(r, r) - 0.5 * zk);
        next[k] = stage_modes_[r][k] + dr[k];
      } else {
        const SmallMatrix& th = theta_[q];
        Complex rhs = th(r, r) * (zk * stage_modes_[r][k] - tm * fhat[r][k]);
        for (std::size_t j = 0; j < r; ++j)
          rhs += th(r, j) * (zk * stage_modes_[j][k] + 0.5 * zk * delta[j][k] - tm * fhat[j][k]);
        dr[k] = rhs / (1.0 - 0.5 * th(r, r) * zk);
        next[k] = stage_modes_[r][k] + dr[k];
      }
    }
    Field field = to_physical(grid, next);
    if (!field.all_finite()) throw BlowUpError(step_no, static_cast<int>(r) + 2);
    stage_fields_.push_back(std::move(field));
    stage_modes_.push_back(std::move(next));
    if (form != StepForm::Native) delta.push_back(std::move(dr));
  }
  steps_ = step_no;
  return stage_fields_.back();
}

Field run(Stepper& stepper, Field u0, int n_steps, const StepHook& hook, StepForm form,
          double t0) {
  if (n_steps < 0) throw std::invalid_argument("run: n_steps must be >= 0");
  if (!u0.all_finite()) throw BlowUpError(stepper.step_count(), 1);
  Field u = std::move(u0);
  for (int i = 0; i < n_steps; ++i) {
    const double t = t0 + i * stepper.tau();
    u = stepper.step(u, form);
    if (hook) hook(StepView{stepper.step_count(), t, &stepper});
  }
  return u;
}

}  // namespace esrk
