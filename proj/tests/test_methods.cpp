#include <doctest.h>

#include <cmath>

#include "esrk/methods.hpp"
#include "esrk/phi.hpp"

using namespace esrk;

namespace {

double max_diff(const SmallMatrix& a, const SmallMatrix& b) { return (a - b).max_abs(); }

std::vector<Method> coefficient_methods() {
  std::vector<Method> out;
  for (const auto& m : certified_methods())
    if (m.family != Family::IERK) out.push_back(m);
  return out;
}

}  // namespace

TEST_CASE("ierk2 tableau") {
  const Method m = ierk_tableau("ierk2");
  const double r2 = std::sqrt(2.0);
  const double a33 = (1.0 + r2) / 4.0;
  CHECK(m.stages == 2);
  CHECK(m.order == 2);
  CHECK(m.explicit_part(0, 0) == doctest::Approx(r2 / 2).epsilon(1e-15));
  CHECK(m.explicit_part(0, 1) == 0.0);
  CHECK(m.explicit_part(1, 0) == doctest::Approx((2 - r2) / 2).epsilon(1e-15));
  CHECK(m.explicit_part(1, 1) == doctest::Approx(r2 / 2).epsilon(1e-15));
  CHECK(m.implicit_part(0, 0) == doctest::Approx(a33).epsilon(1e-15));
  CHECK(m.implicit_part(1, 0) == doctest::Approx((1 - (1 + r2) / 2) / r2).epsilon(1e-15));
  CHECK_THROWS_AS(ierk_tableau("ierk2", {{"a33", 0.5}}), std::invalid_argument);
  CHECK_NOTHROW(ierk_tableau("ierk2", {{"a33", 0.7}}));
  CHECK_THROWS_AS(ierk_tableau("ierk2", {{"a44", 0.7}}), std::invalid_argument);
}

TEST_CASE("ierk3 tableau and canopy sums") {
  const Method m = ierk_tableau("ierk3");
  CHECK(m.stages == 4);
  CHECK(m.order == 3);
  CHECK(m.explicit_part(0, 0) == doctest::Approx(0.8).epsilon(1e-15));
  const std::vector<double> c{0.0, 0.8, 1.4, 1.2, 1.0};
  for (std::size_t i = 0; i < 5; ++i) CHECK(std::abs(m.abscissas[i] - c[i]) <= 1e-14);
  for (std::size_t r = 0; r < 4; ++r) CHECK(std::abs(m.explicit_part.row_sum(r) - c[r + 1]) <= 1e-14);
  const double a43 = -0.5;
  CHECK(m.implicit_part(2, 1) == a43);
  CHECK(m.implicit_part(2, 0) == doctest::Approx(-7 * a43 / 4 - 1229.0 / 12600).epsilon(1e-15));
  CHECK_THROWS_AS(ierk_tableau("ierk3", {{"a43", -0.7}}), std::invalid_argument);
  CHECK_THROWS_AS(ierk_tableau("ierk3", {{"a43", -0.3}}), std::invalid_argument);
  CHECK_NOTHROW(ierk_tableau("ierk3", {{"a43", -0.6}}));
}

TEST_CASE("eerk coefficients") {
  for (double c2 : {0.5, 0.75, 1.0}) {
    const SmallMatrix a0 = eerk_coeff("eerk2", {{"c2", c2}}, 0.0);
    CHECK(max_diff(a0, SmallMatrix{{c2, 0}, {1 - 1 / (2 * c2), 1 / (2 * c2)}}) <= 1e-15);
  }
  const SmallMatrix w = eerk_coeff("eerk2w", {{"c2", 3.0 / 11.0}}, 0.0);
  CHECK(w(1, 0) == doctest::Approx(1 - 11.0 / 6.0).epsilon(1e-14));
  CHECK(w(1, 1) == doctest::Approx(11.0 / 6.0).epsilon(1e-14));
  const double z = -1.7, c2 = 0.5;
  const SmallMatrix a = eerk_coeff("eerk2", {{"c2", c2}}, z);
  CHECK(a(0, 0) == doctest::Approx(c2 * phi(1, c2 * z)).epsilon(1e-14));
  CHECK(a(1, 0) == doctest::Approx(phi(1, z) - phi(2, z) / c2).epsilon(1e-14));
  CHECK(a(1, 1) == doctest::Approx(phi(2, z) / c2).epsilon(1e-14));
  CHECK_THROWS_AS(eerk_coeff("eerk2", {{"c2", 0.3}}, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(eerk_coeff("eerk2w", {{"c2", 0.2}}, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(eerk_coeff("eerk3_2", {{"c2", 2.0 / 3.0}}, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(eerk_coeff("eerk3_2", {{"c2", 0.6}, {"c3", 0.6}}, 0.0), std::invalid_argument);
  for (const char* n : {"eerk2", "eerk2w", "eerk3_1", "eerk3_2"}) {
    for (double zz : {0.0, -0.3, -4.0, -300.0}) {
      const SmallMatrix e = eerk_coeff(n, {}, zz);
      CHECK(std::abs(e.row_sum(e.dim() - 1) - phi(1, zz)) <= 1e-13);
    }
  }
}

TEST_CASE("eerk3_2 gamma") {
  const double c2 = 0.5, c3 = 0.7;
  const double gamma = (3 * c3 - 2) * c3 / ((2 - 3 * c2) * c2);
  CHECK(gamma == doctest::Approx(0.28).epsilon(1e-14));
  // the last row's second entry equals gamma times the third at z = 0 by construction
  // of the order conditions a32 c2 + a33 c3 = 1/2, a32 c2^2 + a33 c3^2 = 1/3
  const SmallMatrix a = eerk_coeff("eerk3_2", {}, 0.0);
  CHECK(std::abs(a(2, 1) * c2 + a(2, 2) * c3 - 0.5) <= 1e-14);
  CHECK(std::abs(a(2, 1) * c2 * c2 + a(2, 2) * c3 * c3 - 1.0 / 3.0) <= 1e-14);
}

TEST_CASE("cifrk closed forms and limits") {
  const SmallMatrix nif0 = cifrk_coeff("cif2_heun", CifVariant::NIF, 0.0);
  CHECK(max_diff(nif0, SmallMatrix{{1, 0}, {0.5, 0.5}}) == 0.0);
  CHECK(max_diff(cifrk_coeff("cif3_ralston", CifVariant::TIF, 0.0),
                 SmallMatrix{{0.5, 0, 0}, {0, 0.75, 0}, {2.0 / 9, 1.0 / 3, 4.0 / 9}}) <= 1e-15);
  const double z = -1.0;
  const SmallMatrix t = cifrk_coeff("cif2_heun", CifVariant::TIF, z);
  CHECK(t(0, 0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(t(1, 1) == doctest::Approx(1.0 / (2 * std::exp(z) - z * (1 + std::exp(z)))).epsilon(1e-14));
  CHECK(t(1, 0) == doctest::Approx(0.174877705).epsilon(1e-8));
  const SmallMatrix n = cifrk_coeff("cif2_heun", CifVariant::NIF, z);
  CHECK(n(0, 0) == doctest::Approx((std::exp(z) - 1) / z).epsilon(1e-15));
}

TEST_CASE("cifrk nonnegative") {
  for (const auto& m : coefficient_methods()) {
    if (m.family != Family::CIFRK_TIF && m.family != Family::CIFRK_NIF) continue;
    for (int i = 0; i <= 60; ++i) {
      const double z = i == 0 ? 0.0 : -std::pow(10.0, -6.0 + 0.17 * i);
      const SmallMatrix a = m.coefficients(z);
      for (std::size_t r = 0; r < a.dim(); ++r)
        for (std::size_t c = 0; c <= r; ++c) CHECK(a(r, c) >= 0.0);
    }
  }
}

TEST_CASE("z = 0 row sums and continuity") {
  for (const auto& m : coefficient_methods()) {
    INFO(m.label());
    const SmallMatrix a0 = m.coefficients(0.0);
    CHECK(a0.is_lower_triangular());
    for (std::size_t r = 0; r < a0.dim(); ++r)
      CHECK(std::abs(a0.row_sum(r) - m.abscissas[r + 1]) <= 1e-14);
    double ratio = 0.0;
    for (double z : {-1e-4, -1e-5, -1e-6}) ratio = std::max(ratio, max_diff(m.coefficients(z), a0) / -z);
    CHECK(ratio < 10.0);
    for (double z : {-1e-12, -0.5, -10.0, -1e4}) {
      const SmallMatrix a = m.coefficients(z);
      CHECK(std::isfinite(a.max_abs()));
    }
  }
}

TEST_CASE("registry") {
  CHECK(certified_methods().size() == 16);
  CHECK(make_method("cif2_heun:nif").family == Family::CIFRK_NIF);
  CHECK(make_method("cif2_heun:tif").family == Family::CIFRK_TIF);
  CHECK_THROWS_AS(make_method("cif2_heun"), std::invalid_argument);
  CHECK(make_method("eerk3_2", {{"c2", 0.4}, {"c3", 0.8}}).params.at("c3") == 0.8);
  CHECK(make_method("lawson").family == Family::Lawson);
  CHECK_THROWS_AS(make_method("rk4"), std::invalid_argument);
  CHECK_THROWS_AS(make_method("eerk2", {{"c3", 0.5}}), std::invalid_argument);
  CHECK_THROWS_AS(ierk_tableau("ierk2").coefficients(0.0), std::logic_error);
  for (const auto& n : method_names())
    CHECK_NOTHROW(make_method(n.rfind("cif", 0) == 0 ? n + ":nif" : n));
}
