#pragma once

#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fdlab/field.hpp"
#include "fdlab/fit.hpp"
#include "fdlab/trajectory.hpp"

namespace fdlab {

/// Coefficients of
///   (d_t - i a d^4 - b d^3) u = i d(beta1 d u) + i d(beta2 conj(d u))
///                              + gamma1 d u + gamma2 conj(d u)
/// with envelopes |Im beta1| + |beta2| <= phi_a and |Im gamma1| <= phi_b.
struct LinearCoefficients {
  using Coefficient = std::function<cplx(double t, double x)>;
  using Envelope = std::function<double(double x)>;

  std::string name = "zero";
  Coefficient beta1, beta2, gamma1, gamma2;  ///< empty means identically zero
  Envelope phi_a, phi_b;                     ///< empty means identically zero

  bool is_zero() const { return !beta1 && !beta2 && !gamma1 && !gamma2; }
};

/// Named presets: "zero", "real-beta1", "decaying-im-gamma1", "violating-im-beta1".
LinearCoefficients linear_preset(std::string_view name);
std::vector<std::string> linear_preset_names();

struct EnvelopeCheck {
  bool pointwise = true;      ///< bounds hold at every sampled (t, x)
  bool integrable = true;     ///< phi_a and |phi_b|^2 negligible at both edges
  double phi_a_integral = 0.0;
  double phi_b_sq_integral = 0.0;
};

/// Samples the envelope inequalities on the grid at the given times.
EnvelopeCheck check_envelopes(const LinearCoefficients& c, const Grid& grid,
                              std::span<const double> times, double edge_tol = 1e-8);

/// Smooth even cutoff: 0 on |xi| <= r, 1 on |xi| >= r + 1.
double gauge_cutoff(double xi, double r);

/// Lambda = I + Lambda~ with Lambda~ v = Phi(x) * IFFT(m(xi) v_hat),
/// Phi(x) = L int_0^x (phi_a + |phi_b|^2) dy and m(xi) = cutoff(xi) / (4 a xi).
class GaugeOperator {
 public:
  /// Requires L > 3, r > 0, a != 0 and sup|Phi| / (4 |a| r) < 0.9; otherwise
  /// throws InvalidArgument naming a radius that would work.
  static GaugeOperator build(const LinearCoefficients& c, double a, double L, double r,
                             const Grid& grid);

  const Grid& grid() const { return grid_; }
  double radius() const { return r_; }
  double norm_bound() const { return norm_bound_; }
  std::span<const double> phi() const { return phi_; }
  std::span<const double> multiplier() const { return mult_; }

  SpectralField apply_tilde(const SpectralField& v) const;
  SpectralField apply(const SpectralField& v) const;
  /// Solves Lambda w = v by w <- v - Lambda~ w; throws Error if the
  /// residual stays above `tol` (relative) after `max_iterations`.
  SpectralField apply_inverse(const SpectralField& v, double tol = 1e-12,
                              int max_iterations = 200) const;

 private:
  GaugeOperator(Grid grid) : grid_(grid) {}
  Grid grid_;
  double r_ = 0.0;
  double norm_bound_ = 0.0;
  std::vector<double> phi_, mult_;
};

struct LinearRunConfig {
  double a = 1.0;
  double b = 0.0;
  double horizon = 0.5;
  double dt = 1e-4;
  std::size_t snapshot_stride = 0;
  bool dealias = true;
  double blowup_threshold = 1e8;
};

/// Exponential integrator for the linear equation above; the variable
/// coefficient terms are formed pseudospectrally. Snapshot diagnostics hold
/// Sobolev norms; `energy` holds ||u||_{L^2}.
Trajectory evolve_linear(const SpectralField& u0, const LinearCoefficients& c,
                         const LinearRunConfig& config);

struct GaugedEnergyReport {
  GrowthFit fit;  ///< rate is the fitted C
  std::vector<double> t;
  std::vector<double> energy_squared;  ///< ||Lambda u(t)||^2
  std::vector<double> raw_squared;     ///< ||u(t)||^2
};

/// Fits ||Lambda u(t)||^2 <= ||Lambda u(0)||^2 exp((C + margin) t) over at
/// least eight snapshots.
GaugedEnergyReport gauged_energy_trace(const Trajectory& traj, const GaugeOperator& gauge);

}  // namespace fdlab
