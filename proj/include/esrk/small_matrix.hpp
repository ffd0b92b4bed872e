#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace esrk {

/// Dense row-major square matrix for stage-coupling arrays (at most 5x5).
///
/// Every matrix the solver touches (Butcher blocks, coefficient matrices A(z),
/// differentiation matrices D(z) and their inverses) has dimension s <= 4, so
/// storage is inline and copies are cheap.
class SmallMatrix {
 public:
  static constexpr std::size_t kMaxDim = 5;

  SmallMatrix() = default;
  explicit SmallMatrix(std::size_t n);
  SmallMatrix(std::initializer_list<std::initializer_list<double>> rows);

  static SmallMatrix identity(std::size_t n);
  /// Lower triangular matrix of ones, E_s = (1_{i>=j}).
  static SmallMatrix lower_ones(std::size_t n);

  std::size_t dim() const { return n_; }

  double& operator()(std::size_t i, std::size_t j) { return a_[i * kMaxDim + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a_[i * kMaxDim + j]; }

  SmallMatrix transpose() const;
  SmallMatrix symmetric_part() const;

  bool is_lower_triangular(double tol = 0.0) const;
  double max_abs() const;
  double row_sum(std::size_t i) const;

  friend SmallMatrix operator+(const SmallMatrix& a, const SmallMatrix& b);
  friend SmallMatrix operator-(const SmallMatrix& a, const SmallMatrix& b);
  friend SmallMatrix operator*(const SmallMatrix& a, const SmallMatrix& b);
  friend SmallMatrix operator*(double s, const SmallMatrix& a);

  std::vector<double> apply(const std::vector<double>& v) const;
  /// v^T M w
  double bilinear(const std::vector<double>& v, const std::vector<double>& w) const;

 private:
  std::size_t n_ = 0;
  std::array<double, kMaxDim * kMaxDim> a_{};
};

/// A stage coefficient vanished where a pivot was required.
class SingularStageError : public std::runtime_error {
 public:
  SingularStageError(std::size_t stage, double pivot);
  /// 1-based stage index of the offending diagonal entry.
  std::size_t stage() const { return stage_; }

 private:
  std::size_t stage_;
};

/// Inverse of a lower triangular matrix by forward substitution, column by
/// column. Throws SingularStageError when |a_ii| <= pivot_tol.
SmallMatrix lower_triangular_inverse(const SmallMatrix& a, double pivot_tol = 1e-300);

/// Inverse by Gauss-Jordan elimination with partial pivoting.
SmallMatrix general_inverse(const SmallMatrix& a);

struct SymmetricEigen {
  std::vector<double> values;  // ascending
  int sweeps = 0;
  double off_norm = 0.0;
};

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations. Iterates until
/// the off-diagonal Frobenius norm is <= off_tol relative to the full norm.
SymmetricEigen jacobi_eigenvalues(const SmallMatrix& sym, double off_tol = 1e-14,
                                  int max_sweeps = 100);

std::string to_string(const SmallMatrix& m, int precision = 6);

}  // namespace esrk
