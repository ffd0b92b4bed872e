#pragma once

#include <cstdint>

#include "esrk/app/config.hpp"
#include "esrk/spectral.hpp"

namespace esrk::app {

/// Uniform samples in [-a, a] from std::mt19937_64: each 64-bit draw x maps to
/// a * (2 * (x >> 11) * 2^-53 - 1), filled in grid (row-major) order.
Field random_field(const SpectralGrid& grid, double amplitude, std::uint64_t seed);

/// a * cos(nu (m x + n y)).
Field cosine_field(const SpectralGrid& grid, double amplitude, int m, int n);

/// Initial data of the requested kind; file data must match the grid.
Field make_initial(const SpectralGrid& grid, const InitialSpec& spec);

}  // namespace esrk::app
