#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "esrk/methods.hpp"
#include "esrk/model.hpp"
#include "esrk/small_matrix.hpp"
#include "esrk/spectral.hpp"

namespace esrk {

/// Which algebraic form advances a step. All three give the same stages up to
/// rounding for every method with a differential form.
enum class StepForm {
  Native,        ///< steady-state form (IERK), coefficient form (EERK/CIFRK/Lawson)
  Differential,  ///< lower triangular solve with D(z) per mode
  Doc,           ///< explicit update with the DOC kernels Theta(z) = D(z)^{-1}
};

std::string to_string(StepForm f);

/// A non-finite value appeared in a stage field.
class BlowUpError : public std::runtime_error {
 public:
  BlowUpError(int step, int stage);
  int step() const { return step_; }
  /// 1-based stage index u^{n,stage}.
  int stage() const { return stage_; }

 private:
  int step_;
  int stage_;
};

/// Mode-wise time stepper for d/dt u = M_h [L_kappa u - f_kappa(u)].
///
/// Every linear solve and operator function acts on a single Fourier mode with
/// z_k = tau * m_k * l_k <= 0. Coefficients are cached per distinct z value.
class Stepper {
 public:
  Stepper(ModelSpec model, Method method, double tau);

  const ModelSpec& model() const { return model_; }
  const Method& method() const { return method_; }
  double tau() const { return tau_; }
  int stages() const { return method_.stages; }
  /// Number of completed steps.
  int step_count() const { return steps_; }
  void reset_count(int n = 0) { steps_ = n; }

  const std::vector<double>& z() const { return z_; }
  const Symbol& mobility() const { return mobility_; }

  /// Advances u by one step and retains u^{n,1..s+1}. Throws BlowUpError.
  Field step(const Field& u, StepForm form = StepForm::Native);

  /// Stage fields u^{n,1}, ..., u^{n,s+1} of the last step.
  const std::vector<Field>& stage_fields() const { return stage_fields_; }
  /// Fourier coefficients of the stage fields as produced by the update.
  const std::vector<ModeArray>& stage_modes() const { return stage_modes_; }

  /// D(z_k) and Theta(z_k) of the mode with flat index k (built on first use).
  const SmallMatrix& diff_matrix_at(std::size_t k) const;
  const SmallMatrix& doc_kernel_at(std::size_t k) const;

 private:
  void build_caches();
  void build_diff_caches() const;
  ModeArray nonlinear_modes(const Field& u) const;

  ModelSpec model_;
  Method method_;
  double tau_;
  int steps_ = 0;

  Symbol mobility_;
  std::vector<double> z_;
  std::vector<double> tau_m_;
  std::vector<std::size_t> slot_;  // mode -> distinct-z slot
  std::vector<double> slot_z_;

  std::vector<SmallMatrix> coeff_;        // EERK/CIFRK: A(z)
  std::vector<std::vector<double>> piv_;  // IERK: 1 / (1 - z a_{i+1,i+1})
  std::vector<SmallMatrix> lawson_;       // Lawson: a_{ij} e^{(c_{i+1} - c_j) z}
  std::vector<std::vector<double>> lawson_exp_;  // e^{c_{i+1} z}

  mutable std::vector<SmallMatrix> diff_;
  mutable std::vector<SmallMatrix> theta_;

  std::vector<Field> stage_fields_;
  std::vector<ModeArray> stage_modes_;
};

/// Completed step as seen by run() hooks.
struct StepView {
  int n = 0;        ///< 1-based step number
  double t0 = 0.0;  ///< time of u^{n,1}
  const Stepper* stepper = nullptr;
};

using StepHook = std::function<void(const StepView&)>;

/// Takes n_steps steps from u0 and calls hook after each one.
Field run(Stepper& stepper, Field u0, int n_steps, const StepHook& hook = {},
          StepForm form = StepForm::Native, double t0 = 0.0);

}  // namespace esrk
