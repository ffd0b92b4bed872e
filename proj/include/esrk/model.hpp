#pragma once

#include <string>

#include "esrk/spectral.hpp"

namespace esrk {

enum class Mobility {
  SH,   ///< M_h = -I, L^2 gradient flow
  PFC,  ///< M_h = Delta_h, H^{-1} gradient flow (volume conserving)
};

std::string to_string(Mobility m);
Mobility parse_mobility(const std::string& s);

/// SH/PFC model with stabilized splitting
///   d/dt u = M_h [ L_kappa u - f_kappa(u) ],
///   L_kappa = (I + Delta_h)^2 + kappa I,  f_kappa(u) = kappa u + eps u - u^3.
struct ModelSpec {
  Mobility mobility = Mobility::SH;
  double epsilon = 0.25;
  double kappa = 2.0;
  SpectralGrid grid;

  /// Test hook: replace f by zero so f_kappa(u) = kappa u. Only oracle tests
  /// set this.
  bool linear_test_hook = false;
  /// Filter the nonlinear term to |m|, |n| < M/3 after evaluation. Off by
  /// default: the analyzed scheme interpolates the cubic without dealiasing.
  bool dealias = false;
};

/// Validates 0 < eps < 1 and kappa >= 0.
ModelSpec make_model(Mobility mobility, double epsilon, double kappa, SpectralGrid grid);

/// Symbol of M_h: -1 (SH) or lap_symbol (PFC).
Symbol mobility_symbol(const ModelSpec& model);
/// Symbol of L_kappa: (1 + lap)^2 + kappa.
Symbol stabilized_symbol(const ModelSpec& model);
/// Symbol of (I + Delta_h)^2.
Symbol sh_operator_symbol(const SpectralGrid& grid);

/// f(u) = eps u - u^3, pointwise.
Field bulk_f(const Field& u, double eps);
/// f_kappa(u) = kappa u + f(u), pointwise.
Field bulk_f_kappa(const Field& u, double eps, double kappa);
/// Nonlinear term f_kappa used by the steppers (honors the test hook and the
/// dealiasing flag).
Field stabilized_nonlinearity(const ModelSpec& model, const Field& u);

/// F(u) = u^4/4 - eps u^2/2.
double potential(double u, double eps);

/// E[u] = 1/2 <u, (I+Delta_h)^2 u> + <F(u), 1>, linear part evaluated in
/// Fourier space.
double energy(const Field& u, double eps);
/// E[u] via 1/2 ||(I+Delta_h) u||^2 + <F(u), 1>.
double energy_split(const Field& u, double eps);

/// C_0 = sqrt(4 E0 + (1 + eps)^2 * area). With area = |Omega| this is the
/// bound ||(I+Delta_h)v|| + ||v|| <= C_0 for every v with E[v] <= E0; area = 1
/// gives the unit-domain form.
double c0_bound(double e0, double eps, double area = 1.0);

/// max_{|xi| <= radius} |f'(xi)| = max(eps, 3 radius^2 - eps).
double kappa_floor(double radius, double eps);

/// Left side of the per-step stabilization inequality
///   <v1 - v0, f_kappa(v0) - 1/2 L_kappa (v1 + v0)>,
/// which is bounded by E[v0] - E[v1] whenever kappa dominates |f'| between
/// v0 and v1.
double stabilization_lhs(const ModelSpec& model, const Field& v0, const Field& v1);

}  // namespace esrk
