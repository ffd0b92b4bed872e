#include "esrk/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace esrk {

namespace {

// FFTW's planner is not re-entrant; plan execution through the new-array
// interface is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

fftw_complex* as_fftw(Complex* p) { return reinterpret_cast<fftw_complex*>(p); }
fftw_complex* as_fftw(const Complex* p) {
  return reinterpret_cast<fftw_complex*>(const_cast<Complex*>(p));
}

}  // namespace

struct SpectralGrid::Impl {
  int m = 0;
  Symbol lap;
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;

  Impl(int modes, double nu) : m(modes) {
    const std::size_t n = static_cast<std::size_t>(m) * m;
    lap.resize(n);
    for (int iy = 0; iy < m; ++iy) {
      const int ky = iy < m / 2 ? iy : iy - m;
      for (int ix = 0; ix < m; ++ix) {
        const int kx = ix < m / 2 ? ix : ix - m;
        lap[static_cast<std::size_t>(iy) * m + ix] =
            -nu * nu * static_cast<double>(kx * kx + ky * ky);
      }
    }
    std::vector<Complex> a(n), b(n);
    std::lock_guard<std::mutex> lock(planner_mutex());
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    fwd = fftw_plan_dft_2d(m, m, as_fftw(a.data()), as_fftw(b.data()), FFTW_FORWARD, flags);
    bwd = fftw_plan_dft_2d(m, m, as_fftw(a.data()), as_fftw(b.data()), FFTW_BACKWARD, flags);
    if (fwd == nullptr || bwd == nullptr) throw std::runtime_error("FFTW planning failed");
  }

  ~Impl() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(fwd);
    fftw_destroy_plan(bwd);
  }

  Impl(const Impl&) = delete;
  Impl& operator=(const Impl&) = delete;
};

SpectralGrid::SpectralGrid(int modes, double length) : m_(modes), length_(length) {
  if (modes < 4 || modes % 2 != 0) {
    throw std::invalid_argument("SpectralGrid: M must be even and >= 4, got " +
                                std::to_string(modes));
  }
  if (!(length > 0.0) || !std::isfinite(length)) {
    throw std::invalid_argument("SpectralGrid: L must be positive");
  }
  impl_ = std::make_shared<const Impl>(modes, base_wavenumber());
}

SpectralGrid make_grid(int modes, double length) { return SpectralGrid(modes, length); }

double SpectralGrid::base_wavenumber() const { return 2.0 * std::numbers::pi / length_; }

std::size_t SpectralGrid::mode_index(int m, int n) const {
  if (m < -m_ / 2 || m >= m_ / 2 || n < -m_ / 2 || n >= m_ / 2) {
    throw std::out_of_range("SpectralGrid::mode_index: wavenumber outside [-M/2, M/2-1]");
  }
  const int ix = (m + m_) % m_;
  const int iy = (n + m_) % m_;
  return static_cast<std::size_t>(iy) * m_ + ix;
}

std::size_t SpectralGrid::mirror(std::size_t k) const {
  const int ix = static_cast<int>(k % m_);
  const int iy = static_cast<int>(k / m_);
  return static_cast<std::size_t>((m_ - iy) % m_) * m_ + (m_ - ix) % m_;
}

const Symbol& SpectralGrid::lap_symbol() const { return impl_->lap; }

ModeArray SpectralGrid::forward(std::span<const double> values) const {
  if (values.size() != size()) throw std::invalid_argument("forward: shape mismatch");
  std::vector<Complex> in(values.begin(), values.end());
  return forward_complex(in);
}

ModeArray SpectralGrid::forward_complex(std::span<const Complex> values) const {
  if (values.size() != size()) throw std::invalid_argument("forward: shape mismatch");
  ModeArray out(size());
  fftw_execute_dft(impl_->fwd, as_fftw(values.data()), as_fftw(out.data()));
  const double scale = 1.0 / static_cast<double>(size());
  for (auto& c : out) c *= scale;
  return out;
}

std::vector<Complex> SpectralGrid::inverse_complex(const ModeArray& coeffs) const {
  if (coeffs.size() != size()) throw std::invalid_argument("inverse: shape mismatch");
  std::vector<Complex> out(size());
  fftw_execute_dft(impl_->bwd, as_fftw(coeffs.data()), as_fftw(out.data()));
  return out;
}

std::vector<double> SpectralGrid::inverse(const ModeArray& coeffs) const {
  const auto c = inverse_complex(coeffs);
  std::vector<double> out(c.size());
  std::transform(c.begin(), c.end(), out.begin(), [](const Complex& z) { return z.real(); });
  return out;
}

Field::Field(SpectralGrid grid) : grid_(std::move(grid)), values_(grid_.size(), 0.0) {}

Field::Field(SpectralGrid grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_.size()) throw std::invalid_argument("Field: shape mismatch");
}

Field Field::constant(const SpectralGrid& grid, double c) {
  return Field(grid, std::vector<double>(grid.size(), c));
}

Field& Field::operator+=(const Field& other) {
  if (!(grid_ == other.grid_)) throw std::invalid_argument("Field: grid mismatch");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  return *this;
}

Field& Field::operator-=(const Field& other) {
  if (!(grid_ == other.grid_)) throw std::invalid_argument("Field: grid mismatch");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
  return *this;
}

Field& Field::operator*=(double s) {
  for (double& v : values_) v *= s;
  return *this;
}

bool Field::all_finite() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

ModeArray to_fourier(const Field& f) { return f.grid().forward(f.values()); }

Field to_physical(const SpectralGrid& grid, const ModeArray& coeffs) {
  return Field(grid, grid.inverse(coeffs));
}

double symbol_asymmetry(const SpectralGrid& grid, const Symbol& sym) {
  if (sym.size() != grid.size()) throw std::invalid_argument("symbol: shape mismatch");
  double worst = 0.0;
  for (std::size_t k = 0; k < sym.size(); ++k)
    worst = std::max(worst, std::abs(sym[k] - sym[grid.mirror(k)]));
  return worst;
}

Field apply_symbol(const Field& f, const Symbol& sym) {
  const auto& grid = f.grid();
  const double scale =
      std::max(1.0, std::abs(*std::max_element(sym.begin(), sym.end(), [](double a, double b) {
        return std::abs(a) < std::abs(b);
      })));
  if (symbol_asymmetry(grid, sym) > 1e-13 * scale) {
    throw std::invalid_argument("apply_symbol: symbol violates (m,n)->(-m,-n) symmetry");
  }
  ModeArray c = to_fourier(f);
  for (std::size_t k = 0; k < c.size(); ++k) c[k] *= sym[k];
  return to_physical(grid, c);
}

double inner(const Field& u, const Field& v) {
  if (!(u.grid() == v.grid())) throw std::invalid_argument("inner: grid mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
  const double h = u.grid().spacing();
  return h * h * s;
}

double norm_l2(const Field& u) { return std::sqrt(inner(u, u)); }

double norm_max(const Field& u) {
  double m = 0.0;
  for (double v : u.values()) m = std::max(m, std::abs(v));
  return m;
}

double volume(const Field& u) {
  double s = 0.0;
  for (double v : u.values()) s += v;
  const double h = u.grid().spacing();
  return h * h * s;
}

double mean(const Field& u) { return volume(u) / u.grid().area(); }

double fourier_weight(const SpectralGrid& grid) { return grid.area(); }

double seminorm_h2(const Field& u) {
  const auto& grid = u.grid();
  const auto c = to_fourier(u);
  const auto& lap = grid.lap_symbol();
  double s = 0.0;
  for (std::size_t k = 0; k < c.size(); ++k) s += std::norm(c[k]) * std::pow(1.0 + lap[k], 2);
  return std::sqrt(fourier_weight(grid) * s);
}

namespace {

void require_mean_zero(const Field& u, const char* who) {
  const double tol = 1e-12 * norm_l2(u) * u.grid().length();
  if (std::abs(volume(u)) > tol) {
    throw std::domain_error(std::string(who) + ": field is not mean-zero");
  }
}

}  // namespace

double inner_hm1(const Field& u, const Field& v) {
  require_mean_zero(u, "inner_hm1");
  require_mean_zero(v, "inner_hm1");
  const auto& grid = u.grid();
  const auto cu = to_fourier(u);
  const auto cv = to_fourier(v);
  const auto& lap = grid.lap_symbol();
  double s = 0.0;
  for (std::size_t k = 1; k < cu.size(); ++k) s += (std::conj(cu[k]) * cv[k]).real() / (-lap[k]);
  return fourier_weight(grid) * s;
}

double norm_hm1(const Field& u) { return std::sqrt(inner_hm1(u, u)); }

double grad_inner(const Field& u, const Field& v) {
  const auto& grid = u.grid();
  const int m = grid.modes();
  const double nu = grid.base_wavenumber();
  const auto cu = to_fourier(u);
  const auto cv = to_fourier(v);
  double total = 0.0;
  for (int axis = 0; axis < 2; ++axis) {
    ModeArray du(cu.size()), dv(cv.size());
    for (int iy = 0; iy < m; ++iy)
      for (int ix = 0; ix < m; ++ix) {
        const std::size_t k = static_cast<std::size_t>(iy) * m + ix;
        const int w = axis == 0 ? grid.wavenumber(ix) : grid.wavenumber(iy);
        const Complex sym(0.0, nu * w);
        du[k] = sym * cu[k];
        dv[k] = sym * cv[k];
      }
    const auto gu = grid.inverse_complex(du);
    const auto gv = grid.inverse_complex(dv);
    for (std::size_t i = 0; i < gu.size(); ++i) total += (gu[i] * std::conj(gv[i])).real();
  }
  const double h = grid.spacing();
  return h * h * total;
}

double norm_grad(const Field& u) { return std::sqrt(grad_inner(u, u)); }

}  // namespace esrk
