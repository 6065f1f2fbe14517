#pragma once

#include <span>
#include <vector>

#include "fdlab/field.hpp"
#include "fdlab/fit.hpp"
#include "fdlab/spectral.hpp"

namespace fdlab {

struct Trajectory;

/// Weight L and derivative order m of the gauged variable
///   V_j = d^m Q_j + (L / (4 a_j)) Phi i d^{m-1} Q_j.
struct GaugeConfig {
  double L = 10.0;
  int m = 4;
  std::vector<double> a;
  /// Drops the Phi term (L treated as 0). Only for consistency checks.
  bool gauge_off = false;

  double effective_L() const { return gauge_off ? 0.0 : L; }
  /// Throws InvalidArgument unless L > 1 (or gauge_off), 1 <= m <= 8 and
  /// every a_j is nonzero.
  void check() const;
};

struct EnergyRecord {
  double t = 0.0;
  double energy = 0.0;      ///< E_m
  double v_norm = 0.0;      ///< ||V||_{L^2}
  double lower_norm = 0.0;  ///< ||Q||_{H^{m-1}}
  double hm_norm = 0.0;     ///< ||Q||_{H^m}
  double phi_sup = 0.0;
  /// Sandwich ||Q||_{H^m}^2 / c1 <= E_m^2 <= c2 ||Q||_{H^m}^2 with
  /// c1 = c2 = 2 (1 + kappa^2), kappa = (L / (4 min|a_j|)) max(sup Phi, ||Q||^2).
  double c1 = 1.0, c2 = 1.0;
  double sandwich_lower = 0.0;
  double sandwich_upper = 0.0;
  bool sandwich_holds = true;
};

/// Phi(x) = int_{-half_width}^x sum_j |Q_j|^2 dy (one component).
IntegralResult gauge_phi(const SpectralField& q, double decay_tol = kDefaultDecayTol);

SpectralField gauged_variable(const SpectralField& q, const GaugeConfig& cfg);

EnergyRecord energy(const SpectralField& q, const GaugeConfig& cfg, double t = 0.0);

/// E_k^{a,b} with W = Qa - Qb, k = cfg.m, and Phi built from Qa.
EnergyRecord difference_energy(const SpectralField& qa, const SpectralField& qb,
                               const GaugeConfig& cfg, double t = 0.0);

struct GronwallReport {
  GrowthFit fit;
  std::vector<double> t;
  std::vector<double> energy_squared;
};

/// Exponential envelope fit of E_m(t)^2 over samples (at least eight).
GronwallReport gronwall_rate(std::span<const double> t, std::span<const double> energy_squared);
GronwallReport gronwall_rate(const Trajectory& traj, const GaugeConfig& cfg);

}  // namespace fdlab
