#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "fdlab/field.hpp"

namespace fdlab {

inline constexpr int kRecordedNormOrders = 5;  // H^0 .. H^4

struct DiagnosticsRecord {
  std::array<double, kRecordedNormOrders> sobolev{};  ///< ||Q||_{H^k}, k = 0..4
  double energy = 0.0;                                ///< gauged energy E_m
  double phi_sup = 0.0;
};

struct Snapshot {
  double t = 0.0;
  SpectralField q;
  DiagnosticsRecord diagnostics;
};

struct Trajectory {
  std::vector<Snapshot> snapshots;  ///< strictly increasing t
  bool blew_up = false;
  double blowup_time = 0.0;
  std::string blowup_reason;
  /// E_m(t) <= 2 E_m(0) at every recorded snapshot.
  bool energy_window_held = true;
  std::size_t steps = 0;
  double dt = 0.0;  ///< uniform step actually taken
  std::vector<std::string> warnings;

  const Snapshot& front() const { return snapshots.front(); }
  const Snapshot& back() const { return snapshots.back(); }
};

/// One row per snapshot: t, H0..H4, E.
void write_csv(std::ostream& os, const Trajectory& traj);

/// Binary container, all little-endian:
///   "FDLSNAP\0" | u32 version=1 | u32 n | u32 N | f64 half_width | u64 count
///   then per snapshot: f64 t, n*N pairs of f64 (re, im), component-major.
void write_snapshots(std::ostream& os, const Trajectory& traj);
/// Reads back a container; diagnostics are left zero.
Trajectory read_snapshots(std::istream& is);

}  // namespace fdlab
