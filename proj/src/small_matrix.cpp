#include "esrk/small_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

namespace esrk {

SmallMatrix::SmallMatrix(std::size_t n) : n_(n) {
  if (n > kMaxDim) {
    throw std::invalid_argument("SmallMatrix: dimension " + std::to_string(n) +
                                " exceeds " + std::to_string(kMaxDim));
  }
}

SmallMatrix::SmallMatrix(std::initializer_list<std::initializer_list<double>> rows)
    : SmallMatrix(rows.size()) {
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() > n_) throw std::invalid_argument("SmallMatrix: ragged initializer");
    std::size_t j = 0;
    for (double v : row) (*this)(i, j++) = v;
    ++i;
  }
}

SmallMatrix SmallMatrix::identity(std::size_t n) {
  SmallMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

SmallMatrix SmallMatrix::lower_ones(std::size_t n) {
  SmallMatrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) m(i, j) = 1.0;
  return m;
}

SmallMatrix SmallMatrix::transpose() const {
  SmallMatrix t(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

SmallMatrix SmallMatrix::symmetric_part() const {
  SmallMatrix s(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    s(i, i) = (*this)(i, i);
    for (std::size_t j = 0; j < i; ++j) {
      const double v = 0.5 * ((*this)(i, j) + (*this)(j, i));
      s(i, j) = v;
      s(j, i) = v;
    }
  }
  return s;
}

bool SmallMatrix::is_lower_triangular(double tol) const {
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j)
      if (std::abs((*this)(i, j)) > tol) return false;
  return true;
}

double SmallMatrix::max_abs() const {
  double m = 0.0;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) m = std::max(m, std::abs((*this)(i, j)));
  return m;
}

double SmallMatrix::row_sum(std::size_t i) const {
  double s = 0.0;
  for (std::size_t j = 0; j < n_; ++j) s += (*this)(i, j);
  return s;
}

SmallMatrix operator+(const SmallMatrix& a, const SmallMatrix& b) {
  SmallMatrix c(a.n_);
  for (std::size_t i = 0; i < a.n_; ++i)
    for (std::size_t j = 0; j < a.n_; ++j) c(i, j) = a(i, j) + b(i, j);
  return c;
}

SmallMatrix operator-(const SmallMatrix& a, const SmallMatrix& b) {
  SmallMatrix c(a.n_);
  for (std::size_t i = 0; i < a.n_; ++i)
    for (std::size_t j = 0; j < a.n_; ++j) c(i, j) = a(i, j) - b(i, j);
  return c;
}

SmallMatrix operator*(const SmallMatrix& a, const SmallMatrix& b) {
  SmallMatrix c(a.n_);
  for (std::size_t i = 0; i < a.n_; ++i)
    for (std::size_t k = 0; k < a.n_; ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < a.n_; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

SmallMatrix operator*(double s, const SmallMatrix& a) {
  SmallMatrix c(a.n_);
  for (std::size_t i = 0; i < a.n_; ++i)
    for (std::size_t j = 0; j < a.n_; ++j) c(i, j) = s * a(i, j);
  return c;
}

std::vector<double> SmallMatrix::apply(const std::vector<double>& v) const {
  std::vector<double> r(n_, 0.0);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) r[i] += (*this)(i, j) * v[j];
  return r;
}

double SmallMatrix::bilinear(const std::vector<double>& v, const std::vector<double>& w) const {
  double s = 0.0;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) s += v[i] * (*this)(i, j) * w[j];
  return s;
}

SingularStageError::SingularStageError(std::size_t stage, double pivot)
    : std::runtime_error("singular stage " + std::to_string(stage) +
                         ": diagonal coefficient " + std::to_string(pivot)),
      stage_(stage) {}

SmallMatrix lower_triangular_inverse(const SmallMatrix& a, double pivot_tol) {
  const std::size_t n = a.dim();
  for (std::size_t i = 0; i < n; ++i) {
    if (!(std::abs(a(i, i)) > pivot_tol)) throw SingularStageError(i + 1, a(i, i));
  }
  SmallMatrix inv(n);
  for (std::size_t j = 0; j < n; ++j) {
    inv(j, j) = 1.0 / a(j, j);
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = 0.0;
      for (std::size_t k = j; k < i; ++k) s += a(i, k) * inv(k, j);
      inv(i, j) = -s / a(i, i);
    }
  }
  return inv;
}

SmallMatrix general_inverse(const SmallMatrix& a) {
  const std::size_t n = a.dim();
  SmallMatrix m = a;
  SmallMatrix inv = SmallMatrix::identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(m(r, col)) > std::abs(m(piv, col))) piv = r;
    if (m(piv, col) == 0.0) throw SingularStageError(col + 1, 0.0);
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(m(piv, j), m(col, j));
        std::swap(inv(piv, j), inv(col, j));
      }
    }
    const double p = m(col, col);
    for (std::size_t j = 0; j < n; ++j) {
      m(col, j) /= p;
      inv(col, j) /= p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const double f = m(r, col);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        m(r, j) -= f * m(col, j);
        inv(r, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

namespace {

double off_diagonal_norm(const SmallMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      if (i != j) s += a(i, j) * a(i, j);
  return std::sqrt(s);
}

double frobenius_norm(const SmallMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) s += a(i, j) * a(i, j);
  return std::sqrt(s);
}

}  // namespace

SymmetricEigen jacobi_eigenvalues(const SmallMatrix& sym, double off_tol, int max_sweeps) {
  const std::size_t n = sym.dim();
  SmallMatrix a = sym;
  SymmetricEigen out;
  const double scale = std::max(1.0, frobenius_norm(a));

  for (out.sweeps = 0; out.sweeps < max_sweeps; ++out.sweeps) {
    out.off_norm = off_diagonal_norm(a);
    if (out.off_norm <= off_tol * scale) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        // Rotation angle annihilating a(p,q), small-angle root for stability.
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
      }
    }
  }
  out.off_norm = off_diagonal_norm(a);
  out.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.values[i] = a(i, i);
  std::sort(out.values.begin(), out.values.end());
  return out;
}

std::string to_string(const SmallMatrix& m, int precision) {
  std::ostringstream os;
  os << std::setprecision(precision) << "[";
  for (std::size_t i = 0; i < m.dim(); ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < m.dim(); ++j) os << (j ? ", " : "") << m(i, j);
    os << "]";
  }
  os << "]";
  return os.str();
}

}  // namespace esrk
