#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "esrk/diffmat.hpp"

using namespace esrk;

namespace {

double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::vector<double> sample_z() {
  std::vector<double> z{0.0};
  for (int i = 0; i <= 40; ++i) z.push_back(-std::pow(10.0, -6.0 + 0.25 * i));
  return z;
}

}  // namespace

TEST_CASE("ierk2 D_E and its DOC kernels") {
  const Method m = ierk_tableau("ierk2");
  const double r2 = std::sqrt(2.0);
  const SmallMatrix de = ierk_de(m);
  CHECK((de - SmallMatrix{{r2, 0}, {2 * r2 - 2, r2}}).max_abs() <= 1e-14);
  CHECK((differentiation_matrix(m, 0.0) - de).max_abs() <= 1e-15);
  CHECK(std::abs(sym_min_eig(de) - 1.0) <= 1e-13);
  const SmallMatrix theta = doc_kernels(diff_matrix(m, 0.0)).theta;
  CHECK((theta - 0.5 * SmallMatrix{{r2, 0}, {2 - 2 * r2, r2}}).max_abs() <= 1e-14);
}

TEST_CASE("ierk3 D_E eigenvalue") {
  const SmallMatrix de = ierk_de(ierk_tableau("ierk3"));
  CHECK(sym_min_eig(de) == doctest::Approx(0.136355).epsilon(1e-5));
}

TEST_CASE("trivial eigen and kernel cases") {
  CHECK(sym_min_eig(SmallMatrix{{1, 0}, {0, 2}}) == 1.0);
  const SmallMatrix id = SmallMatrix::identity(3);
  CHECK((doc_kernels_recursive(id) - id).max_abs() == 0.0);
  DiffMatrixSample s;
  s.d = id;
  CHECK((doc_kernels(s).theta - id).max_abs() == 0.0);
}

TEST_CASE("EERK D(0) = A(0)^{-1} E_s") {
  for (const char* n : {"eerk2", "eerk2w", "eerk3_1", "eerk3_2"}) {
    const Method m = eerk_method(n);
    const SmallMatrix e = SmallMatrix::lower_ones(static_cast<std::size_t>(m.stages));
    const SmallMatrix d0 = general_inverse(m.coefficients(0.0)) * e;
    CHECK((differentiation_matrix(m, 0.0) - d0).max_abs() <= 1e-13);
  }
}

TEST_CASE("eerk2 D(-1) by an explicit 2x2 inverse") {
  const Method m = eerk_method("eerk2");
  const double z = -1.0;
  const SmallMatrix a = m.coefficients(z);
  const double det = a(0, 0) * a(1, 1);
  const SmallMatrix inv{{a(1, 1) / det, 0}, {-a(1, 0) / det, a(0, 0) / det}};
  const SmallMatrix e = SmallMatrix::lower_ones(2);
  const SmallMatrix d = inv * e + z * e - (z / 2) * SmallMatrix::identity(2);
  CHECK((differentiation_matrix(m, z) - d).max_abs() <= 1e-14);
}

TEST_CASE("recursive kernels match direct inversion") {
  std::mt19937_64 rng(42);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 1 + t % 4;
    SmallMatrix d(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < i; ++j) d(i, j) = 2 * unit(rng) - 1;
      d(i, i) = 0.5 + unit(rng);
    }
    const SmallMatrix a = doc_kernels_recursive(d);
    CHECK((a - general_inverse(d)).max_abs() <= 1e-12);
    CHECK((a * d - SmallMatrix::identity(n)).max_abs() <= 1e-12);
  }
}

TEST_CASE("orthogonal identity for every certified method") {
  for (const auto& m : certified_methods()) {
    for (double z : sample_z()) {
      const DiffMatrixSample s = diff_matrix(m, z);
      const SmallMatrix theta = doc_kernels(s).theta;
      CHECK((theta * s.d - SmallMatrix::identity(s.d.dim())).max_abs() <= 1e-12);
      CHECK((s.sym - s.sym.transpose()).max_abs() == 0.0);
    }
  }
}

TEST_CASE("Lawson has no differential form") {
  CHECK_THROWS_AS(differentiation_matrix(lawson_method("lawson"), -1.0), std::invalid_argument);
}

TEST_CASE("quadratic-form and DOC bounds") {
  std::mt19937_64 rng(7);
  for (const auto& entry : registered_lambda_table()) {
    const double lam = entry.lambda_es;
    for (double z : sample_z()) {
      const DiffMatrixSample s = diff_matrix(entry.method, z);
      const SmallMatrix theta = doc_kernels(s).theta;
      const std::size_t n = s.d.dim();
      for (int t = 0; t < 5; ++t) {
        // vector-valued stages of length 6
        std::vector<std::vector<double>> v(n, std::vector<double>(6)), u = v;
        for (auto& row : v)
          for (auto& x : row) x = 2 * unit(rng) - 1;
        for (auto& row : u)
          for (auto& x : row) x = 2 * unit(rng) - 1;
        auto dot = [](const std::vector<double>& a, const std::vector<double>& b) {
          double s = 0;
          for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
          return s;
        };
        double q = 0, sq = 0, doc = 0, cross = 0;
        for (std::size_t i = 0; i < n; ++i) {
          sq += dot(v[i], v[i]);
          cross += std::sqrt(dot(v[i], v[i]) * dot(u[i], u[i]));
          for (std::size_t j = 0; j <= i; ++j) {
            q += s.d(i, j) * dot(v[j], v[i]);
            doc += theta(i, j) * dot(v[j], u[i]);
          }
        }
        CHECK(q >= lam * sq - 1e-9);
        CHECK(doc <= cross / lam + 1e-9);
      }
    }
  }
}

TEST_CASE("IERK D(z) dominates D_E") {
  for (const char* n : {"ierk2", "ierk3"}) {
    const Method m = ierk_tableau(n);
    const double base = sym_min_eig(ierk_de(m));
    CHECK(sym_min_eig(ierk_dei(m)) >= -1e-12);
    for (double z : sample_z()) CHECK(diff_matrix(m, z).sym_min_eig >= base - 1e-10);
  }
}

TEST_CASE("scan reproduces the published constants") {
  const auto grid = default_z_grid();
  CHECK(grid.size() == 2001);
  CHECK(grid.front() == 0.0);
  const Method w = eerk_method("eerk2w", {{"c2", 3.0 / 11.0}});
  const CertRecord r = scan_lambda(w, grid, 0.12);
  CHECK(r.pass);
  CHECK(r.refined_min == doctest::Approx(0.121853).epsilon(2e-6));
  CHECK(r.refined_z == doctest::Approx(-2.15036).epsilon(1e-4));

  const CertRecord e32 = scan_lambda(eerk_method("eerk3_2"), grid, 1.04);
  CHECK(e32.limit_z0 == doctest::Approx(1.04656).epsilon(1e-5));
  CHECK(e32.slope == doctest::Approx(-0.0135238).epsilon(1e-3));

  const CertRecord r2 = scan_lambda(cifrk_method("cif2_ralston", CifVariant::TIF), grid, 0.99);
  CHECK(r2.limit_z0 == doctest::Approx((17 - std::sqrt(26.0)) / 12).epsilon(1e-12));
  const CertRecord h3 = scan_lambda(cifrk_method("cif3_heun", CifVariant::NIF), grid, 0.67);
  CHECK(h3.limit_z0 == doctest::Approx(0.675972).epsilon(1e-5));
  const CertRecord h2 = scan_lambda(cifrk_method("cif2_heun", CifVariant::TIF), grid, 0.79);
  CHECK(h2.limit_z0 == doctest::Approx((3 - std::sqrt(2.0)) / 2).epsilon(1e-12));

  const CertRecord e2 = scan_lambda(eerk_method("eerk2"), grid, 0.5);
  const double zmin = grid.back();
  CHECK(e2.value_at_zmin == doctest::Approx(zmin / (2 * zmin + 2)).epsilon(1e-2));
}

TEST_CASE("every registered method certifies") {
  const auto grid = default_z_grid();
  const auto table = registered_lambda_table();
  CHECK(table.size() == 16);
  for (const auto& entry : table) {
    INFO(entry.method.label());
    const CertRecord r = scan_lambda(entry.method, grid, entry.lambda_es);
    CHECK(r.pass);
    CHECK(r.grid_min >= entry.lambda_es - 1e-6);
    if (entry.method.family == Family::CIFRK_TIF || entry.method.family == Family::CIFRK_NIF)
      CHECK(std::abs(r.slope + 0.5) <= 0.005);
  }
  CHECK(registered_lambda(eerk_method("eerk2", {{"c2", 1.0}})) == 0.5);
  CHECK_THROWS_AS(registered_lambda(eerk_method("eerk2", {{"c2", 0.7}})), std::invalid_argument);
}

TEST_CASE("scan csv format") {
  std::ostringstream os;
  write_scan_csv(os, {scan_lambda(ierk_tableau("ierk2"), {0.0, -1.0}, 1.0)});
  const std::string s = os.str();
  CHECK(s.rfind("method,z,lambda_min\n", 0) == 0);
  CHECK(std::count(s.begin(), s.end(), '\n') == 3);
}
