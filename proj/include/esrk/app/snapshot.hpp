#pragma once

#include <string>

#include "esrk/spectral.hpp"

namespace esrk::app {

/// 8-byte magic of the snapshot header.
inline constexpr char kSnapshotMagic[8] = {'E', 'S', 'R', 'K', 'S', 'N', 'P', '1'};

struct Snapshot {
  Field field;
  double t = 0.0;
};

/// 32-byte little-endian header (magic, uint64 M, float64 L, float64 t)
/// followed by M*M float64 values, row-major with y as the slow index.
void write_snapshot(const std::string& path, const Field& u, double t);
Snapshot read_snapshot(const std::string& path);

}  // namespace esrk::app
