#include "esrk/app/snapshot.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "esrk/app/config.hpp"

namespace esrk::app {

namespace {

void put_u64(std::ostream& os, std::uint64_t v) {
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  os.write(reinterpret_cast<const char*>(b), 8);
}

std::uint64_t get_u64(std::istream& is) {
  unsigned char b[8];
  if (!is.read(reinterpret_cast<char*>(b), 8)) throw ConfigError("snapshot: truncated file");
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | b[i];
  return v;
}

void put_f64(std::ostream& os, double x) { put_u64(os, std::bit_cast<std::uint64_t>(x)); }
double get_f64(std::istream& is) { return std::bit_cast<double>(get_u64(is)); }

}  // namespace

void write_snapshot(const std::string& path, const Field& u, double t) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ConfigError("cannot write snapshot '" + path + "'");
  os.write(kSnapshotMagic, 8);
  put_u64(os, static_cast<std::uint64_t>(u.grid().modes()));
  put_f64(os, u.grid().length());
  put_f64(os, t);
  for (double v : u.values()) put_f64(os, v);
  if (!os) throw ConfigError("error writing snapshot '" + path + "'");
}

Snapshot read_snapshot(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ConfigError("cannot open snapshot '" + path + "'");
  char magic[8];
  if (!is.read(magic, 8) || std::memcmp(magic, kSnapshotMagic, 8) != 0) {
    throw ConfigError("snapshot '" + path + "': bad magic");
  }
  const std::uint64_t m = get_u64(is);
  const double length = get_f64(is);
  const double t = get_f64(is);
  if (m < 4 || m > 65536 || m % 2 != 0) throw ConfigError("snapshot: invalid grid size");
  Field u(SpectralGrid(static_cast<int>(m), length));
  for (std::size_t i = 0; i < u.size(); ++i) u[i] = get_f64(is);
  return Snapshot{std::move(u), t};
}

}  // namespace esrk::app
