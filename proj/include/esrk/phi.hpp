#pragma once

namespace esrk {

inline constexpr int kMaxPhiIndex = 4;
/// |z| below which phi_j uses its Taylor series instead of the recursion.
inline constexpr double kPhiSeriesThreshold = 0.5;

/// phi_0(z) = e^z, phi_{k+1}(z) = (phi_k(z) - 1/k!) / z, for z <= 0 and
/// 0 <= j <= 4. Absolute error below 1e-13 on the whole half line.
double phi(int j, double z);

/// Branch-specific evaluators, exposed so the two routes can be compared in
/// their overlap band.
double phi_series(int j, double z);
double phi_recursion(int j, double z);

}  // namespace esrk
