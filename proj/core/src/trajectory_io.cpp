#include <bit>
#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>

#include "fdlab/error.hpp"
#include "fdlab/format.hpp"
#include "fdlab/trajectory.hpp"

namespace fdlab {
namespace {

constexpr char kMagic[8] = {'F', 'D', 'L', 'S', 'N', 'A', 'P', '\0'};
constexpr std::uint32_t kVersion = 1;

static_assert(std::endian::native == std::endian::little,
              "snapshot container is written in native order and assumes little-endian hosts");

template <class T>
void put(std::ostream& os, T value) {
  os.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <class T>
T get(std::istream& is) {
  T value{};
  if (!is.read(reinterpret_cast<char*>(&value), sizeof(T))) {
    throw Error("snapshot container is truncated");
  }
  return value;
}

}  // namespace

void write_csv(std::ostream& os, const Trajectory& traj) {
  os << "t";
  for (int k = 0; k < kRecordedNormOrders; ++k) os << ",H" << k;
  os << ",E\n";
  for (const auto& s : traj.snapshots) {
    os << format_double(s.t);
    for (double v : s.diagnostics.sobolev) os << ',' << format_double(v);
    os << ',' << format_double(s.diagnostics.energy) << '\n';
  }
}

void write_snapshots(std::ostream& os, const Trajectory& traj) {
  os.write(kMagic, sizeof kMagic);
  put<std::uint32_t>(os, kVersion);
  const std::size_t n = traj.snapshots.empty() ? 0 : traj.front().q.components();
  const std::size_t npts = traj.snapshots.empty() ? 0 : traj.front().q.points();
  const double hw = traj.snapshots.empty() ? 0.0 : traj.front().q.grid().half_width();
  put<std::uint32_t>(os, static_cast<std::uint32_t>(n));
  put<std::uint32_t>(os, static_cast<std::uint32_t>(npts));
  put<double>(os, hw);
  put<std::uint64_t>(os, traj.snapshots.size());
  for (const auto& s : traj.snapshots) {
    put<double>(os, s.t);
    for (const cplx& z : s.q.values()) {
      put<double>(os, z.real());
      put<double>(os, z.imag());
    }
  }
  if (!os) throw Error("failed to write snapshot container");
}

Trajectory read_snapshots(std::istream& is) {
  char magic[8];
  if (!is.read(magic, sizeof magic) || std::memcmp(magic, kMagic, sizeof magic) != 0) {
    throw Error("not a snapshot container (bad magic)");
  }
  const auto version = get<std::uint32_t>(is);
  if (version != kVersion) throw Error("unsupported snapshot version " + std::to_string(version));
  const auto n = get<std::uint32_t>(is);
  const auto npts = get<std::uint32_t>(is);
  const auto hw = get<double>(is);
  const auto count = get<std::uint64_t>(is);
  Trajectory traj;
  if (count == 0) return traj;
  const Grid grid(hw, npts);
  for (std::uint64_t c = 0; c < count; ++c) {
    Snapshot s{get<double>(is), SpectralField(grid, n), {}};
    for (cplx& z : s.q.values()) {
      const double re = get<double>(is);
      z = {re, get<double>(is)};
    }
    traj.snapshots.push_back(std::move(s));
  }
  return traj;
}

}  // namespace fdlab
