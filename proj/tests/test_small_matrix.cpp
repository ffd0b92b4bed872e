#include <doctest.h>

#include <cmath>

#include "esrk/small_matrix.hpp"

using esrk::SmallMatrix;

TEST_CASE("lower triangular inverse matches hand computation") {
  const SmallMatrix a{{2.0, 0.0, 0.0}, {1.0, 4.0, 0.0}, {-1.0, 2.0, 5.0}};
  const SmallMatrix inv = esrk::lower_triangular_inverse(a);
  const SmallMatrix expect{{0.5, 0.0, 0.0}, {-0.125, 0.25, 0.0}, {0.15, -0.1, 0.2}};
  CHECK((inv - expect).max_abs() < 1e-15);
  CHECK((inv * a - SmallMatrix::identity(3)).max_abs() < 1e-15);
}

TEST_CASE("singular stage reports its index") {
  const SmallMatrix a{{1.0, 0.0, 0.0}, {1.0, 1.0, 0.0}, {1.0, 1.0, 0.0}};
  try {
    esrk::lower_triangular_inverse(a);
    FAIL("no exception");
  } catch (const esrk::SingularStageError& e) {
    CHECK(e.stage() == 3);
  }
}

TEST_CASE("general inverse needs pivoting") {
  const SmallMatrix a{{0.0, 1.0}, {1.0, 0.0}};
  CHECK((esrk::general_inverse(a) - a).max_abs() == 0.0);
  const SmallMatrix b{{4.0, 7.0, 2.0}, {3.0, 6.0, 1.0}, {2.0, 5.0, 3.0}};
  CHECK((esrk::general_inverse(b) * b - SmallMatrix::identity(3)).max_abs() < 1e-14);
}

TEST_CASE("Jacobi eigenvalues") {
  CHECK(esrk::jacobi_eigenvalues(SmallMatrix{{1.0, 0.0}, {0.0, 2.0}}).values.front() == 1.0);
  const auto e2 = esrk::jacobi_eigenvalues(SmallMatrix{{2.0, 1.0}, {1.0, 2.0}});
  CHECK(e2.values[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(e2.values[1] == doctest::Approx(3.0).epsilon(1e-15));
  // tridiag(-1, 2, -1) of order 4: 2 - 2 cos(k pi / 5)
  SmallMatrix t(4);
  for (std::size_t i = 0; i < 4; ++i) {
    t(i, i) = 2.0;
    if (i > 0) t(i, i - 1) = t(i - 1, i) = -1.0;
  }
  const auto e4 = esrk::jacobi_eigenvalues(t);
  for (int k = 1; k <= 4; ++k) {
    CHECK(std::abs(e4.values[k - 1] - (2.0 - 2.0 * std::cos(k * M_PI / 5.0))) < 1e-14);
  }
  CHECK(e4.off_norm <= 1e-14 * 10.0);
}

TEST_CASE("symmetric part and triangularity") {
  const SmallMatrix a{{1.0, 0.0}, {3.0, 1.0}};
  const SmallMatrix s = a.symmetric_part();
  CHECK(s(0, 1) == 1.5);
  CHECK(s(1, 0) == 1.5);
  CHECK(a.is_lower_triangular());
  CHECK_FALSE(a.transpose().is_lower_triangular());
  CHECK(a.bilinear({1.0, 2.0}, {1.0, 1.0}) == doctest::Approx(1.0 + 2.0 * 4.0));
  CHECK_THROWS(SmallMatrix(6));
}
