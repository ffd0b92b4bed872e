#include "esrk/diffmat.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <stdexcept>

namespace esrk {

SmallMatrix ierk_de(const Method& method) {
  const std::size_t s = method.explicit_part.dim();
  return lower_triangular_inverse(method.explicit_part) * SmallMatrix::lower_ones(s);
}

SmallMatrix ierk_dei(const Method& method) {
  const std::size_t s = method.explicit_part.dim();
  const SmallMatrix es = SmallMatrix::lower_ones(s);
  return lower_triangular_inverse(method.explicit_part) * method.implicit_part * es - es +
         0.5 * SmallMatrix::identity(s);
}

SmallMatrix differentiation_matrix(const Method& method, double z) {
  if (!(z <= 0.0)) throw std::invalid_argument("differentiation_matrix: z must be <= 0");
  const auto s = static_cast<std::size_t>(method.stages);
  switch (method.family) {
    case Family::IERK:
      return ierk_de(method) - z * ierk_dei(method);
    case Family::EERK:
    case Family::CIFRK_TIF:
    case Family::CIFRK_NIF: {
      const SmallMatrix es = SmallMatrix::lower_ones(s);
      return lower_triangular_inverse(method.coefficients(z)) * es + z * es -
             (0.5 * z) * SmallMatrix::identity(s);
    }
    case Family::Lawson:
      break;
  }
  throw std::invalid_argument(method.name + ": Lawson methods have no differential form");
}

double sym_min_eig(const SmallMatrix& d) {
  return jacobi_eigenvalues(d.symmetric_part()).values.front();
}

DiffMatrixSample diff_matrix(const Method& method, double z) {
  DiffMatrixSample out;
  out.z = z;
  out.d = differentiation_matrix(method, z);
  out.sym = out.d.symmetric_part();
  out.sym_min_eig = jacobi_eigenvalues(out.sym).values.front();
  return out;
}

SmallMatrix doc_kernels_recursive(const SmallMatrix& d) {
  const std::size_t s = d.dim();
  SmallMatrix theta(s);
  for (std::size_t k = 0; k < s; ++k) {
    if (d(k, k) == 0.0) throw SingularStageError(k + 1, 0.0);
  }
  for (std::size_t k = 0; k < s; ++k) {
    theta(k, k) = 1.0 / d(k, k);
    for (std::size_t jj = k; jj-- > 0;) {
      double acc = 0.0;
      for (std::size_t l = jj + 1; l <= k; ++l) acc += theta(k, l) * d(l, jj);
      theta(k, jj) = -acc / d(jj, jj);
    }
  }
  return theta;
}

DocKernels doc_kernels(const DiffMatrixSample& sample) {
  DocKernels out;
  out.z = sample.z;
  out.theta = sample.d.is_lower_triangular() ? doc_kernels_recursive(sample.d)
                                             : general_inverse(sample.d);
  return out;
}

std::vector<double> default_z_grid(int points, double z_min, double z_max) {
  if (points < 2 || !(z_min < z_max) || !(z_max < 0.0)) {
    throw std::invalid_argument("default_z_grid: need points >= 2 and z_min < z_max < 0");
  }
  std::vector<double> z{0.0};
  const double a = std::log10(-z_max);
  const double b = std::log10(-z_min);
  for (int i = 0; i < points; ++i) {
    const double e = a + (b - a) * i / (points - 1);
    z.push_back(-std::pow(10.0, e));
  }
  z[1] = z_max;
  z.back() = z_min;
  return z;
}

namespace {

double lambda_at(const Method& m, double z) { return sym_min_eig(differentiation_matrix(m, z)); }

std::pair<double, double> golden_min(const Method& m, double lo, double hi) {
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double x1 = b - g * (b - a), x2 = a + g * (b - a);
  double f1 = lambda_at(m, x1), f2 = lambda_at(m, x2);
  for (int it = 0; it < 200 && (b - a) > 1e-12 * (1.0 + std::abs(a)); ++it) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - g * (b - a);
      f1 = lambda_at(m, x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + g * (b - a);
      f2 = lambda_at(m, x2);
    }
  }
  return f1 <= f2 ? std::pair{x1, f1} : std::pair{x2, f2};
}

}  // namespace

CertRecord scan_lambda(const Method& method, const std::vector<double>& z_grid, double lambda_es,
                       const ScanOptions& options) {
  if (z_grid.empty()) throw std::invalid_argument("scan_lambda: empty z grid");
  CertRecord rec;
  rec.method = method.label();
  rec.lambda_es = lambda_es;
  rec.samples = z_grid.size();
  rec.curve.reserve(z_grid.size());
  for (double z : z_grid) {
    if (!(z <= 0.0)) throw std::invalid_argument("scan_lambda: grid points must be <= 0");
    rec.curve.emplace_back(z, lambda_at(method, z));
  }

  std::size_t best = 0;
  for (std::size_t i = 1; i < rec.curve.size(); ++i) {
    const auto& [z, v] = rec.curve[i];
    const auto& [zb, vb] = rec.curve[best];
    if (v < vb || (v == vb && z < zb)) best = i;
  }
  rec.grid_min = rec.curve[best].second;
  rec.argmin_z = rec.curve[best].first;
  rec.refined_min = rec.grid_min;
  rec.refined_z = rec.argmin_z;

  // Refine between the neighbours of the argmin in z order.
  std::vector<double> sorted(z_grid);
  std::sort(sorted.begin(), sorted.end());
  const auto pos = std::lower_bound(sorted.begin(), sorted.end(), rec.argmin_z) - sorted.begin();
  if (pos > 0 && pos + 1 < static_cast<std::ptrdiff_t>(sorted.size())) {
    const auto [zr, vr] = golden_min(method, sorted[pos - 1], sorted[pos + 1]);
    if (vr < rec.refined_min) {
      rec.refined_min = vr;
      rec.refined_z = zr;
    }
  }

  double sz = 0, sv = 0, szz = 0, szv = 0;
  int n = 0;
  double zmin_seen = 0.0;
  for (const auto& [z, v] : rec.curve) {
    if (z < zmin_seen) {
      zmin_seen = z;
      rec.value_at_zmin = v;
    }
    if (z == 0.0) rec.limit_z0 = v;
    if (z >= options.fit_lo && z <= options.fit_hi) {
      sz += z;
      sv += v;
      szz += z * z;
      szv += z * v;
      ++n;
    }
  }
  if (zmin_seen == 0.0) rec.value_at_zmin = rec.limit_z0;
  if (n >= 2) {
    const double den = n * szz - sz * sz;
    rec.slope = den != 0.0 ? (n * szv - sz * sv) / den : 0.0;
  }
  rec.pass = std::min(rec.grid_min, rec.refined_min) >= lambda_es - options.tolerance;
  return rec;
}

std::vector<LambdaEntry> registered_lambda_table() {
  static const double kBounds[] = {1.0,  0.13, 0.5,  0.5,  0.12, 0.79, 0.91, 1.04,
                                   0.79, 0.79, 0.99, 0.99, 0.67, 0.67, 0.76, 0.76};
  std::vector<LambdaEntry> out;
  const auto methods = certified_methods();
  for (std::size_t i = 0; i < methods.size(); ++i) out.push_back({methods[i], kBounds[i]});
  return out;
}

double registered_lambda(const Method& method) {
  for (const auto& e : registered_lambda_table()) {
    if (e.method.id() != method.id() || e.method.params.size() != method.params.size()) continue;
    bool same = true;
    for (const auto& [k, v] : e.method.params) {
      const auto it = method.params.find(k);
      if (it == method.params.end() || std::abs(it->second - v) > 1e-12) same = false;
    }
    if (same) return e.lambda_es;
  }
  throw std::invalid_argument("no registered lambda_es for " + method.label());
}

void write_scan_csv(std::ostream& os, const std::vector<CertRecord>& records, bool header) {
  if (header) os << "method,z,lambda_min\n";
  os << std::setprecision(17);
  for (const auto& r : records)
    for (const auto& [z, v] : r.curve) os << r.method << ',' << z << ',' << v << '\n';
}

void write_cert_report(std::ostream& os, const std::vector<CertRecord>& records) {
  const auto flags = os.flags();
  os << std::setprecision(6);
  for (const auto& r : records) {
    os << (r.pass ? "PASS " : "FAIL ") << r.method << " lambda_es=" << r.lambda_es
       << " min=" << std::min(r.grid_min, r.refined_min) << " at z=" << r.refined_z
       << " z0_limit=" << r.limit_z0 << " slope=" << r.slope << " samples=" << r.samples << '\n';
  }
  os.flags(flags);
}

}  // namespace esrk
