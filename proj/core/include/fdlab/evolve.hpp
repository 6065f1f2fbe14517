#pragma once

#include <limits>
#include <vector>

#include "fdlab/field.hpp"
#include "fdlab/etdrk4.hpp"
#include "fdlab/nonlinearity.hpp"
#include "fdlab/system.hpp"
#include "fdlab/trajectory.hpp"

namespace fdlab {

/// s_j(xi) = -eps^5 xi^4 + i (a_j xi^4 - b_j xi^3 - lambda_j xi^2), tabulated
/// per component and FFT index. The xi^3 term is odd and vanishes at the
/// Nyquist mode.
class LinearSymbol {
 public:
  /// eps in [0, 1). Throws if some a_j = 0 or the table is not dissipative.
  LinearSymbol(const SystemSpec& spec, const Grid& grid, double eps);

  const Grid& grid() const { return grid_; }
  std::size_t components() const { return n_; }
  double eps() const { return eps_; }
  cplx operator()(std::size_t j, std::size_t k) const { return table_[j * grid_.points() + k]; }
  std::span<const cplx> values() const { return table_; }
  double max_abs() const;

  /// The time-reversed symbol -s. Not dissipative unless eps = 0.
  LinearSymbol negated() const;

 private:
  LinearSymbol(Grid grid, std::size_t n, double eps, std::vector<cplx> table)
      : grid_(grid), n_(n), eps_(eps), table_(std::move(table)) {}
  Grid grid_;
  std::size_t n_;
  double eps_;
  std::vector<cplx> table_;
};

struct SolverConfig {
  double half_width = 16.0;
  std::size_t points = 512;
  double dt = 1e-4;
  double horizon = 0.25;
  double eps_parabolic = 0.0;
  /// Record every `snapshot_stride` steps; 0 records only t = 0 and t = T.
  std::size_t snapshot_stride = 0;
  bool dealias = true;
  /// dt <= stability_constant / sigma, sigma the nonlinear stiffness of Q0.
  double stability_constant = 5.0;
  bool enforce_stability = true;
  /// Sup-norm level treated as blow-up alongside non-finite values.
  double blowup_threshold = 1e8;
  double decay_tol = kDefaultDecayTol;
  /// Gauge for the per-snapshot E_m diagnostic.
  double gauge_L = 10.0;
  int energy_order = 4;

  Grid grid() const { return Grid(half_width, points); }
  /// Number of uniform steps and the step dt_eff = T / steps <= dt.
  std::size_t steps() const;
  double effective_dt() const { return horizon / static_cast<double>(steps()); }
  void check() const;
};

/// Linearized stiffness of F at Q: a bound on |dF/dQ| as a multiplier,
/// with derivative slots weighted by the dealiased wavenumber.
double nonlinear_stiffness(const NonlinearitySpec& spec, const SpectralField& q);

/// Stepper with cached ETDRK4 weights for a fixed system, symbol and dt.
class Evolver {
 public:
  Evolver(const SystemSpec& spec, LinearSymbol symbol, double dt, bool dealias = true,
          double decay_tol = kDefaultDecayTol);

  /// Advances one step; throws BlowUp(t) if the result is non-finite.
  Spectrum advance(const Spectrum& state, double t) const;

  /// F(Q) in frequency space (dealiased when configured).
  Spectrum nonlinear_term(const Spectrum& state) const;

  const LinearSymbol& symbol() const { return symbol_; }
  std::vector<DecayWarning> take_warnings() const;

 private:
  SystemSpec spec_;
  LinearSymbol symbol_;
  NonlinearityEvaluator evaluator_;
  EtdRk4 stepper_;
  bool dealias_;
  double decay_tol_;
  bool linear_;
  mutable std::vector<DecayWarning> warnings_;
};

/// One step from t to t + dt.
SpectralField step(const SpectralField& state, double t, double dt, const SystemSpec& spec,
                   const LinearSymbol& symbol);

/// Marches Q0 to the horizon. On blow-up returns the partial trajectory
/// with `blew_up` set.
Trajectory solve(const SpectralField& q0, const SystemSpec& spec, const SolverConfig& config);
/// As above with a caller-supplied symbol (e.g. a negated one).
Trajectory solve(const SpectralField& q0, const SystemSpec& spec, const SolverConfig& config,
                 const LinearSymbol& symbol);

DiagnosticsRecord diagnose(const SpectralField& q, const SystemSpec& spec, double gauge_L,
                           int energy_order);

}  // namespace fdlab
