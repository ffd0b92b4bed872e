#include "esrk/model.hpp"

#include <cmath>
#include <stdexcept>

namespace esrk {

std::string to_string(Mobility m) { return m == Mobility::SH ? "sh" : "pfc"; }

Mobility parse_mobility(const std::string& s) {
  if (s == "sh" || s == "SH") return Mobility::SH;
  if (s == "pfc" || s == "PFC") return Mobility::PFC;
  throw std::invalid_argument("unknown model '" + s + "' (expected sh|pfc)");
}

ModelSpec make_model(Mobility mobility, double epsilon, double kappa, SpectralGrid grid) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw std::invalid_argument("model: epsilon must lie in (0, 1)");
  }
  if (!(kappa >= 0.0) || !std::isfinite(kappa)) {
    throw std::invalid_argument("model: kappa must be >= 0");
  }
  return ModelSpec{mobility, epsilon, kappa, std::move(grid)};
}

Symbol mobility_symbol(const ModelSpec& model) {
  if (model.mobility == Mobility::PFC) return model.grid.lap_symbol();
  return Symbol(model.grid.size(), -1.0);
}

Symbol sh_operator_symbol(const SpectralGrid& grid) {
  Symbol s = grid.lap_symbol();
  for (double& v : s) v = (1.0 + v) * (1.0 + v);
  return s;
}

Symbol stabilized_symbol(const ModelSpec& model) {
  Symbol s = sh_operator_symbol(model.grid);
  for (double& v : s) v += model.kappa;
  return s;
}

Field bulk_f(const Field& u, double eps) {
  Field out(u.grid());
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double x = u[i];
    out[i] = eps * x - x * x * x;
  }
  return out;
}

Field bulk_f_kappa(const Field& u, double eps, double kappa) {
  Field out(u.grid());
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double x = u[i];
    out[i] = kappa * x + (eps * x - x * x * x);
  }
  return out;
}

Field stabilized_nonlinearity(const ModelSpec& model, const Field& u) {
  Field out = model.linear_test_hook ? model.kappa * Field(u)
                                     : bulk_f_kappa(u, model.epsilon, model.kappa);
  if (!model.dealias) return out;
  const auto& grid = out.grid();
  const int m = grid.modes();
  auto c = to_fourier(out);
  for (int iy = 0; iy < m; ++iy)
    for (int ix = 0; ix < m; ++ix)
      if (3 * std::abs(grid.wavenumber(ix)) >= m || 3 * std::abs(grid.wavenumber(iy)) >= m)
        c[static_cast<std::size_t>(iy) * m + ix] = 0.0;
  return to_physical(grid, c);
}

double potential(double u, double eps) {
  const double u2 = u * u;
  return 0.25 * u2 * u2 - 0.5 * eps * u2;
}

namespace {

double potential_sum(const Field& u, double eps) {
  double s = 0.0;
  for (double v : u.values()) s += potential(v, eps);
  const double h = u.grid().spacing();
  return h * h * s;
}

}  // namespace

double energy(const Field& u, double eps) {
  const auto& grid = u.grid();
  const auto c = to_fourier(u);
  const auto& lap = grid.lap_symbol();
  double quad = 0.0;
  for (std::size_t k = 0; k < c.size(); ++k) {
    const double w = 1.0 + lap[k];
    quad += std::norm(c[k]) * w * w;
  }
  return 0.5 * fourier_weight(grid) * quad + potential_sum(u, eps);
}

double energy_split(const Field& u, double eps) {
  std::vector<double> s(u.grid().size());
  for (std::size_t k = 0; k < s.size(); ++k) s[k] = 1.0 + u.grid().lap_symbol()[k];
  const Field w = apply_symbol(u, s);
  return 0.5 * inner(w, w) + potential_sum(u, eps);
}

double c0_bound(double e0, double eps, double area) {
  const double radicand = 4.0 * e0 + (1.0 + eps) * (1.0 + eps) * area;
  if (radicand < 0.0) throw std::domain_error("c0_bound: negative radicand");
  return std::sqrt(radicand);
}

double kappa_floor(double radius, double eps) {
  if (radius < 0.0) throw std::invalid_argument("kappa_floor: radius must be >= 0");
  return std::max(eps, 3.0 * radius * radius - eps);
}

double stabilization_lhs(const ModelSpec& model, const Field& v0, const Field& v1) {
  const Symbol lk = stabilized_symbol(model);
  const Field rhs = bulk_f_kappa(v0, model.epsilon, model.kappa) - 0.5 * apply_symbol(v0 + v1, lk);
  return inner(v1 - v0, rhs);
}

}  // namespace esrk
