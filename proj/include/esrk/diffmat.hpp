#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "esrk/methods.hpp"
#include "esrk/small_matrix.hpp"

namespace esrk {

/// D(z) of one method at one z <= 0.
struct DiffMatrixSample {
  double z = 0.0;
  SmallMatrix d;
  SmallMatrix sym;  // (D + D^T) / 2
  double sym_min_eig = 0.0;
};

/// Lower triangular D(z) without the eigenvalue.
///   IERK:       D_E - z D_EI,  D_E = A_E^{-1} E_s,  D_EI = A_E^{-1} A_I E_s - E_s + I/2
///   EERK/CIFRK: A(z)^{-1} E_s + z E_s - (z/2) I
/// Throws SingularStageError for a vanishing diagonal entry of A, and
/// std::invalid_argument for Lawson methods (no differential form).
SmallMatrix differentiation_matrix(const Method& method, double z);

DiffMatrixSample diff_matrix(const Method& method, double z);

/// IERK building blocks D_E and D_EI.
SmallMatrix ierk_de(const Method& method);
SmallMatrix ierk_dei(const Method& method);

struct DocKernels {
  double z = 0.0;
  SmallMatrix theta;  // D^{-1}
};

/// Theta = D^{-1}; the recursive definition for lower triangular D, a general
/// inverse otherwise.
DocKernels doc_kernels(const DiffMatrixSample& sample);
/// theta_kk = 1/d_kk, theta_kj = -(1/d_jj) sum_{l=j+1}^{k} theta_kl d_lj.
SmallMatrix doc_kernels_recursive(const SmallMatrix& d);

/// lambda_min((D + D^T)/2) by cyclic Jacobi rotations.
double sym_min_eig(const SmallMatrix& d);

struct CertRecord {
  std::string method;
  double lambda_es = 0.0;
  double grid_min = 0.0;
  double argmin_z = 0.0;
  /// Golden-section refinement of the grid argmin between its neighbours.
  double refined_min = 0.0;
  double refined_z = 0.0;
  /// Least-squares slope of lambda_min against z over the fit window.
  double slope = 0.0;
  double limit_z0 = 0.0;
  /// lambda_min at the most negative grid point.
  double value_at_zmin = 0.0;
  std::size_t samples = 0;
  bool pass = false;
  std::vector<std::pair<double, double>> curve;  // (z, lambda_min)
};

/// 0, then 2000 log-spaced points from -1e-6 down to -1e4.
std::vector<double> default_z_grid(int points = 2000, double z_min = -1e4, double z_max = -1e-6);

struct ScanOptions {
  double fit_lo = -1e4;
  double fit_hi = -1e3;
  double tolerance = 1e-6;
};

/// Scans lambda_min(S(D(z))) over z_grid. pass iff min(grid, refined) >= lambda_es - tol.
CertRecord scan_lambda(const Method& method, const std::vector<double>& z_grid, double lambda_es,
                       const ScanOptions& options = {});

struct LambdaEntry {
  Method method;
  double lambda_es = 0.0;
};

/// The registered lambda_es bound of every certified method.
std::vector<LambdaEntry> registered_lambda_table();
/// Registered bound for a method (matching id and parameters); throws
/// std::invalid_argument when none is registered.
double registered_lambda(const Method& method);

/// CSV with header "method,z,lambda_min".
void write_scan_csv(std::ostream& os, const std::vector<CertRecord>& records, bool header = true);
/// Human-readable certification report, one line per record.
void write_cert_report(std::ostream& os, const std::vector<CertRecord>& records);

}  // namespace esrk
