#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace esrk {

using Complex = std::complex<double>;
/// Fourier coefficients in FFT index order, index = iy * M + ix.
using ModeArray = std::vector<Complex>;
/// Per-mode real multiplier in the same index order as ModeArray.
using Symbol = std::vector<double>;

/// Periodic M x M collocation grid on (0, L)^2 together with the Fourier
/// symbol of the pseudo-spectral Laplacian.
///
/// Grid points are x = ix * h, y = iy * h for 0 <= ix, iy < M; point and mode
/// arrays are row-major with y as the slow index. Signed wavenumbers run over
/// [-M/2, M/2 - 1]; the Nyquist index M/2 carries the mode -M/2.
///
/// Instances are immutable and cheap to copy (shared state).
class SpectralGrid {
 public:
  SpectralGrid(int modes, double length);

  int modes() const { return m_; }
  double length() const { return length_; }
  double spacing() const { return length_ / m_; }
  double base_wavenumber() const;
  /// Number of grid points, M^2.
  std::size_t size() const { return static_cast<std::size_t>(m_) * m_; }
  double area() const { return length_ * length_; }

  /// Signed wavenumber of an FFT index in [0, M).
  int wavenumber(int index) const { return index < m_ / 2 ? index : index - m_; }
  /// Flat mode index of signed wavenumbers (m along x, n along y).
  std::size_t mode_index(int m, int n) const;
  /// Flat index of the mode (-m, -n) for the mode at flat index k.
  std::size_t mirror(std::size_t k) const;

  const Symbol& lap_symbol() const;

  /// Forward transform: coefficients c such that v(x) = sum_k c_k e^{i nu k.x}.
  ModeArray forward(std::span<const double> values) const;
  ModeArray forward_complex(std::span<const Complex> values) const;
  /// Inverse transform keeping the complex result.
  std::vector<Complex> inverse_complex(const ModeArray& coeffs) const;
  /// Inverse transform of Hermitian-symmetric coefficients; the imaginary
  /// residue is discarded.
  std::vector<double> inverse(const ModeArray& coeffs) const;

  bool operator==(const SpectralGrid& other) const {
    return m_ == other.m_ && length_ == other.length_;
  }

 private:
  struct Impl;
  int m_;
  double length_;
  std::shared_ptr<const Impl> impl_;
};

SpectralGrid make_grid(int modes, double length);

/// Real grid function on a SpectralGrid.
class Field {
 public:
  explicit Field(SpectralGrid grid);
  Field(SpectralGrid grid, std::vector<double> values);

  static Field constant(const SpectralGrid& grid, double c);

  const SpectralGrid& grid() const { return grid_; }
  std::size_t size() const { return values_.size(); }
  double& operator[](std::size_t i) { return values_[i]; }
  double operator[](std::size_t i) const { return values_[i]; }
  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }
  double at(int ix, int iy) const {
    return values_[static_cast<std::size_t>(iy) * grid_.modes() + ix];
  }

  Field& operator+=(const Field& other);
  Field& operator-=(const Field& other);
  Field& operator*=(double s);
  friend Field operator+(Field a, const Field& b) { return a += b; }
  friend Field operator-(Field a, const Field& b) { return a -= b; }
  friend Field operator*(double s, Field a) { return a *= s; }

  bool all_finite() const;

 private:
  SpectralGrid grid_;
  std::vector<double> values_;
};

/// Sample a function f(x, y) at the grid points.
template <typename F>
Field sample(const SpectralGrid& grid, F&& f) {
  Field out(grid);
  const int m = grid.modes();
  const double h = grid.spacing();
  for (int iy = 0; iy < m; ++iy)
    for (int ix = 0; ix < m; ++ix)
      out[static_cast<std::size_t>(iy) * m + ix] = f(ix * h, iy * h);
  return out;
}

ModeArray to_fourier(const Field& f);
Field to_physical(const SpectralGrid& grid, const ModeArray& coeffs);

/// Largest |sym_k - sym_mirror(k)| over all modes.
double symbol_asymmetry(const SpectralGrid& grid, const Symbol& sym);

/// Multiply every Fourier mode by a real symbol. Rejects symbols that break the
/// (m, n) -> (-m, -n) symmetry by more than 1e-13 relative to max |sym|.
Field apply_symbol(const Field& f, const Symbol& sym);

/// Discrete inner product h^2 sum u v.
double inner(const Field& u, const Field& v);
double norm_l2(const Field& u);
double norm_max(const Field& u);
/// h^2 sum u, i.e. <u, 1>.
double volume(const Field& u);
double mean(const Field& u);
/// ||(I + Delta_h) u||.
double seminorm_h2(const Field& u);
/// ||u||_{-1} for mean-zero u (zero mode excluded). Throws std::domain_error
/// when |<u, 1>| > 1e-12 ||u|| L.
double norm_hm1(const Field& u);
/// <u, v>_{-1} = <(-Delta_h)^{-1} u, v> for mean-zero fields.
double inner_hm1(const Field& u, const Field& v);
/// Discrete <grad_h u, grad_h v> with the full pseudo-spectral first derivative
/// (the Nyquist mode keeps its symbol i nu (-M/2), so the derivative is complex
/// there and the product uses the real part of u' conj(v')).
double grad_inner(const Field& u, const Field& v);
double norm_grad(const Field& u);

/// Parseval weight: ||u||^2 = area * sum_k |c_k|^2 for the forward convention.
double fourier_weight(const SpectralGrid& grid);

}  // namespace esrk
