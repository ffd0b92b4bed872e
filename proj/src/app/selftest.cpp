#include "esrk/app/selftest.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>

#include "esrk/app/initial.hpp"
#include "esrk/diffmat.hpp"
#include "esrk/phi.hpp"
#include "esrk/stepper.hpp"

namespace esrk::app {

namespace {

SuiteResult finish(std::string name, double worst, double tol, std::string detail = {}) {
  SuiteResult r;
  r.name = std::move(name);
  r.worst = worst;
  r.tolerance = tol;
  r.pass = worst <= tol;
  r.detail = std::move(detail);
  return r;
}

double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

double phi_quadrature(int j, double z) {
  if (j == 0) return std::exp(z);
  double fact = 1.0;
  for (int k = 2; k < j; ++k) fact *= k;
  auto f = [&](double t) { return std::exp((1.0 - t) * z) * std::pow(t, j - 1) / fact; };
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, 1.0, 12, 1e-14);
}

}  // namespace

SuiteResult phi_oracle_suite(double tol) {
  double worst = 0.0;
  std::string where;
  std::vector<double> zs;
  for (int i = 0; i <= 500; ++i) zs.push_back(-50.0 * i / 500.0);
  for (double z : {-1e-8, -1e-4, -0.3, -0.4999, -0.5, -0.5001, -0.7, -1.3}) zs.push_back(z);
  for (int j = 0; j <= kMaxPhiIndex; ++j) {
    for (double z : zs) {
      const double err = std::abs(phi(j, z) - phi_quadrature(j, z));
      if (err > worst) {
        worst = err;
        std::ostringstream os;
        os << "j=" << j << " z=" << z;
        where = os.str();
      }
    }
  }
  return finish("phi-oracle", worst, tol, where);
}

SuiteResult doc_identity_suite(int samples, std::uint64_t seed, double tol) {
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  std::string where;
  for (const Method& m : certified_methods()) {
    for (int i = 0; i < samples; ++i) {
      const double z = i == 0 ? 0.0 : -std::pow(10.0, -6.0 + 10.0 * unit(rng));
      const DiffMatrixSample d = diff_matrix(m, z);
      const SmallMatrix theta = doc_kernels(d).theta;
      const SmallMatrix general = general_inverse(d.d);
      const SmallMatrix id = theta * d.d - SmallMatrix::identity(d.d.dim());
      const double scale = std::max(1.0, general.max_abs());
      const double err = std::max(id.max_abs(), (theta - general).max_abs() / scale);
      if (err > worst) {
        worst = err;
        std::ostringstream os;
        os << m.label() << " z=" << z;
        where = os.str();
      }
    }
  }
  return finish("doc-identity", worst, tol, where);
}

SuiteResult dual_form_suite(int seeds, double tol) {
  const SpectralGrid grid(32, 32.0);
  double worst = 0.0;
  std::string where;
  for (Mobility mob : {Mobility::SH, Mobility::PFC}) {
    const ModelSpec model = make_model(mob, 0.25, 2.0, grid);
    for (const Method& m : certified_methods()) {
      Stepper st(model, m, 0.1);
      for (int s = 1; s <= seeds; ++s) {
        const Field u0 = random_field(grid, 0.5, static_cast<std::uint64_t>(s));
        const Field a = st.step(u0, StepForm::Native);
        const Field b = st.step(u0, StepForm::Differential);
        const Field c = st.step(u0, StepForm::Doc);
        const double err = std::max(norm_max(a - b), norm_max(b - c));
        if (err > worst) {
          worst = err;
          where = to_string(mob) + " " + m.label() + " seed " + std::to_string(s);
        }
      }
    }
  }
  return finish("dual-form", worst, tol, where);
}

namespace {

std::vector<double> scalar_step(const Method& m, double u0, double tau, double eps, double kappa) {
  const double lam = -(1.0 + kappa);
  const double z = tau * lam;
  auto nl = [&](double u) { return kappa * u + eps * u - u * u * u; };
  const auto s = static_cast<std::size_t>(m.stages);
  std::vector<double> u{u0};
  for (std::size_t r = 0; r < s; ++r) {
    double next = 0.0;
    if (m.family == Family::IERK) {
      double rhs = u0 - z * m.implicit_part(r, r) * u0;
      for (std::size_t j = 0; j < r; ++j) rhs += z * m.implicit_part(r, j) * (u[j + 1] - u0);
      for (std::size_t j = 0; j <= r; ++j) rhs += tau * m.explicit_part(r, j) * (lam * u0 + nl(u[j]));
      next = rhs / (1.0 - z * m.implicit_part(r, r));
    } else if (m.family == Family::Lawson) {
      const auto& c = m.abscissas;
      next = std::exp(c[r + 1] * z) * u0;
      for (std::size_t j = 0; j <= r; ++j)
        next += tau * m.explicit_part(r, j) * std::exp((c[r + 1] - c[j]) * z) * nl(u[j]);
    } else {
      const SmallMatrix a = m.coefficients(z);
      next = u0;
      for (std::size_t j = 0; j <= r; ++j) next += tau * a(r, j) * (lam * u0 + nl(u[j]));
    }
    u.push_back(next);
  }
  return u;
}

}  // namespace

SuiteResult constant_field_suite(double tol) {
  const SpectralGrid grid(16, 10.0);
  std::vector<Method> methods = certified_methods();
  for (const char* n : {"lawson2_heun", "lawson2_ralston", "lawson3_heun", "lawson3_ralston"})
    methods.push_back(lawson_method(n));
  double worst = 0.0;
  std::string where;
  for (double tau : {0.1, 1.0}) {
    const ModelSpec model = make_model(Mobility::SH, 0.25, 2.0, grid);
    for (const Method& m : methods) {
      Stepper st(model, m, tau);
      const double c = 0.37;
      st.step(Field::constant(grid, c));
      const auto oracle = scalar_step(m, c, tau, model.epsilon, model.kappa);
      for (std::size_t i = 0; i < oracle.size(); ++i) {
        const double err = norm_max(st.stage_fields()[i] - Field::constant(grid, oracle[i]));
        if (err > worst) {
          worst = err;
          std::ostringstream os;
          os << m.label() << " tau=" << tau << " stage " << i + 1;
          where = os.str();
        }
      }
    }
  }
  return finish("constant-field", worst, tol, where);
}

SuiteResult green_identity_suite(double tol) {
  const SpectralGrid grid(32, 32.0);
  double worst = 0.0;
  std::string where;
  auto check = [&](const std::string& what, double a, double b) {
    const double err = std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
    if (err > worst) {
      worst = err;
      where = what;
    }
  };
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Field u = random_field(grid, 1.0, seed);
    const Field v = random_field(grid, 1.0, seed + 100);
    const Field lu = apply_symbol(u, grid.lap_symbol());
    const Field lv = apply_symbol(v, grid.lap_symbol());
    check("<lap u, v> = <u, lap v>", inner(lu, v), inner(u, lv));
    check("<lap u, v> = -<grad u, grad v>", inner(lu, v), -grad_inner(u, v));
    const double h2 = seminorm_h2(u);
    check("||(I+lap)u||^2 expansion", h2 * h2,
          inner(u, u) - 2.0 * grad_inner(u, u) + inner(lu, lu));
    check("energy routes", energy(u, 0.25), energy_split(u, 0.25));
    const auto c = to_fourier(u);
    double parseval = 0.0;
    for (const auto& x : c) parseval += std::norm(x);
    check("Parseval", inner(u, u), fourier_weight(grid) * parseval);
    const Field u0 = u - Field::constant(grid, mean(u));
    const Field v0 = v - Field::constant(grid, mean(v));
    check("<lap u, v>_{-1} = -<u, v>", inner_hm1(apply_symbol(u0, grid.lap_symbol()), v0),
          -inner(u0, v0));
    check("<u, v>_{-1} symmetric", inner_hm1(u0, v0), inner_hm1(v0, u0));
  }
  return finish("green-identity", worst, tol, where);
}

std::vector<SuiteResult> run_selftests() {
  return {phi_oracle_suite(), doc_identity_suite(), dual_form_suite(), constant_field_suite(),
          green_identity_suite()};
}

std::string to_string(const SuiteResult& r) {
  std::ostringstream os;
  os << (r.pass ? "PASS " : "FAIL ") << r.name << " worst=" << std::setprecision(3) << r.worst
     << " tol=" << r.tolerance;
  if (!r.detail.empty()) os << " (" << r.detail << ")";
  return os.str();
}

int cmd_selftest(std::ostream& out) {
  bool ok = true;
  for (const auto& r : run_selftests()) {
    out << to_string(r) << "\n";
    ok = ok && r.pass;
  }
  return ok ? 0 : 1;
}

}  // namespace esrk::app
