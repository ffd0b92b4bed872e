#include "esrk/app/initial.hpp"

#include <cmath>
#include <random>

#include "esrk/app/snapshot.hpp"

namespace esrk::app {

Field random_field(const SpectralGrid& grid, double amplitude, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Field u(grid);
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double unit = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    u[i] = amplitude * (2.0 * unit - 1.0);
  }
  return u;
}

Field cosine_field(const SpectralGrid& grid, double amplitude, int m, int n) {
  const double nu = grid.base_wavenumber();
  return sample(grid, [&](double x, double y) { return amplitude * std::cos(nu * (m * x + n * y)); });
}

Field make_initial(const SpectralGrid& grid, const InitialSpec& spec) {
  switch (spec.kind) {
    case InitialKind::Zero: return Field(grid);
    case InitialKind::Constant: return Field::constant(grid, spec.value);
    case InitialKind::Random:
      if (!spec.has_seed) throw ConfigError("random initial data needs a seed");
      return random_field(grid, spec.value, spec.seed);
    case InitialKind::Cosine: return cosine_field(grid, spec.value, spec.mode_m, spec.mode_n);
    case InitialKind::File: {
      Snapshot s = read_snapshot(spec.path);
      if (!(s.field.grid() == grid)) {
        throw ConfigError("initial file '" + spec.path + "' does not match the configured grid");
      }
      return s.field;
    }
  }
  throw ConfigError("bad initial kind");
}

}  // namespace esrk::app
