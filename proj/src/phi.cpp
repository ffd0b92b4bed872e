#include "esrk/phi.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace esrk {

namespace {

constexpr int kSeriesTerms = 25;

void check_domain(int j, double z) {
  if (j < 0 || j > kMaxPhiIndex) {
    throw std::invalid_argument("phi: index " + std::to_string(j) + " outside 0..4");
  }
  if (!(z <= 0.0)) throw std::invalid_argument("phi: argument must be <= 0");
}

}  // namespace

double phi_series(int j, double z) {
  // sum_{m>=0} z^m / (m + j)!
  double fact = 1.0;
  for (int k = 2; k <= j; ++k) fact *= k;
  double term = 1.0 / fact;
  double sum = term;
  for (int m = 1; m < kSeriesTerms; ++m) {
    term *= z / (m + j);
    sum += term;
    if (std::abs(term) < 1e-18) break;
  }
  return sum;
}

double phi_recursion(int j, double z) {
  if (j == 0) return std::exp(z);
  // phi_1 via expm1 keeps the first level free of cancellation.
  double value = std::expm1(z) / z;
  double inv_fact = 1.0;  // 1/k! for k = 1
  for (int k = 1; k < j; ++k) {
    value = (value - inv_fact) / z;
    inv_fact /= (k + 1);
  }
  return value;
}

double phi(int j, double z) {
  check_domain(j, z);
  if (j == 0) return std::exp(z);
  if (z == 0.0) return phi_series(j, 0.0);
  return std::abs(z) < kPhiSeriesThreshold ? phi_series(j, z) : phi_recursion(j, z);
}

}  // namespace esrk
