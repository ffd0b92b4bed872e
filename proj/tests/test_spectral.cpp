#include <doctest.h>

#include <cmath>
#include <random>

#include "esrk/spectral.hpp"

using namespace esrk;

namespace {

Field noise(const SpectralGrid& g, unsigned seed) {
  std::mt19937_64 rng(seed);
  Field u(g);
  for (std::size_t i = 0; i < u.size(); ++i) u[i] = static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5;
  return u;
}

Field zero_mean(Field u) { return u - Field::constant(u.grid(), mean(u)); }

}  // namespace

TEST_CASE("grid construction") {
  CHECK_THROWS_AS(make_grid(5, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(2, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(8, 0.0), std::invalid_argument);
  const auto g = make_grid(4, 2.0 * M_PI);
  CHECK(g.lap_symbol()[g.mode_index(1, 0)] == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(g.lap_symbol()[g.mode_index(0, 0)] == 0.0);
  const auto g8 = make_grid(8, 32.0);
  const double nu = 2.0 * M_PI / 32.0;
  CHECK(std::abs(g8.lap_symbol()[g8.mode_index(2, 1)] - (-0.192765)) < 1e-6);
  CHECK(g8.lap_symbol()[g8.mode_index(2, 1)] == doctest::Approx(-5.0 * nu * nu).epsilon(1e-15));
  for (double v : g8.lap_symbol()) CHECK(v <= 0.0);
  CHECK(symbol_asymmetry(g8, g8.lap_symbol()) == 0.0);
}

TEST_CASE("transforms") {
  const auto g = make_grid(16, 2.0 * M_PI);
  const auto c = to_fourier(Field::constant(g, 3.0));
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (k == 0) CHECK(std::abs(c[k] - Complex(3.0)) < 1e-15);
    else CHECK(std::abs(c[k]) < 1e-15);
  }
  const Field cx = sample(g, [](double x, double) { return std::cos(x); });
  const auto cc = to_fourier(cx);
  int nonzero = 0;
  for (std::size_t k = 0; k < cc.size(); ++k)
    if (std::abs(cc[k]) > 1e-14) ++nonzero;
  CHECK(nonzero == 2);
  CHECK(std::abs(cc[g.mode_index(1, 0)] - Complex(0.5)) < 1e-15);
  CHECK(std::abs(cc[g.mode_index(-1, 0)] - Complex(0.5)) < 1e-15);

  const auto g2 = make_grid(32, 7.0);
  const Field u = noise(g2, 3);
  const Field back = to_physical(g2, to_fourier(u));
  CHECK(norm_max(back - u) <= 1e-12 * norm_max(u));
  const auto cu = to_fourier(u);
  for (std::size_t k = 0; k < cu.size(); ++k) CHECK(std::abs(cu[k] - std::conj(cu[g2.mirror(k)])) < 1e-15);
}

TEST_CASE("apply_symbol") {
  const auto g = make_grid(16, 2.0 * M_PI);
  const Field u = noise(g, 1);
  CHECK(norm_max(apply_symbol(u, Symbol(g.size(), 1.0)) - u) < 1e-15);
  const Field cx = sample(g, [](double x, double) { return std::cos(x); });
  CHECK(norm_max(apply_symbol(cx, g.lap_symbol()) + cx) < 1e-14);
  Symbol sq = g.lap_symbol();
  for (double& v : sq) v *= v;
  const Field twice = apply_symbol(apply_symbol(u, g.lap_symbol()), g.lap_symbol());
  CHECK(norm_max(twice - apply_symbol(u, sq)) <= 1e-11);
  Symbol bad(g.size(), 1.0);
  bad[g.mode_index(1, 2)] = 2.0;
  CHECK_THROWS_AS(apply_symbol(u, bad), std::invalid_argument);
  const Field v = noise(g, 2);
  const Field lhs = apply_symbol(2.0 * u + (-3.0) * v, g.lap_symbol());
  const Field rhs = 2.0 * apply_symbol(u, g.lap_symbol()) + (-3.0) * apply_symbol(v, g.lap_symbol());
  CHECK(norm_max(lhs - rhs) <= 1e-12);
}

TEST_CASE("inner products and norms") {
  const double L = 2.0 * M_PI;
  const auto g = make_grid(16, L);
  const Field one = Field::constant(g, 1.0);
  CHECK(inner(one, one) == doctest::Approx(L * L).epsilon(1e-15));
  const Field cx = sample(g, [](double x, double) { return std::cos(x); });
  CHECK(norm_l2(cx) == doctest::Approx(std::sqrt(2.0 * M_PI * M_PI)).epsilon(1e-14));
  CHECK(norm_max(cx) == doctest::Approx(1.0));
  CHECK(seminorm_h2(cx) < 1e-13);  // (I + lap) cos x = 0 on L = 2 pi
  CHECK(volume(one) == doctest::Approx(L * L));
  CHECK_THROWS_AS(norm_hm1(one), std::domain_error);
  CHECK(norm_hm1(cx) == doctest::Approx(norm_l2(cx)).epsilon(1e-14));  // -lap cos x = cos x
}

TEST_CASE("Green identities and Cauchy-Schwarz") {
  const auto g = make_grid(32, 12.0);
  for (unsigned s = 0; s < 100; ++s) {
    const Field v = noise(g, 2 * s + 1);
    const Field w = noise(g, 2 * s + 2);
    const Field lv = apply_symbol(v, g.lap_symbol());
    const Field lw = apply_symbol(w, g.lap_symbol());
    const double a = inner(apply_symbol(lv, g.lap_symbol()), w);
    const double b = inner(lv, lw);
    CHECK(std::abs(a - b) <= 1e-11 * std::max(1.0, std::abs(a)));
    const double c = -inner(lv, w);
    const double d = grad_inner(v, w);
    CHECK(std::abs(c - d) <= 1e-11 * std::max(1.0, std::abs(c)));
    const Field v0 = zero_mean(v), w0 = zero_mean(w);
    CHECK(inner(v0, w0) <= norm_grad(v0) * norm_hm1(w0) + 1e-11);
  }
}

TEST_CASE("Parseval") {
  const auto g = make_grid(32, 5.0);
  const Field u = noise(g, 9);
  double s = 0.0;
  for (const auto& c : to_fourier(u)) s += std::norm(c);
  CHECK(std::abs(inner(u, u) - fourier_weight(g) * s) <= 1e-12 * inner(u, u));
}
