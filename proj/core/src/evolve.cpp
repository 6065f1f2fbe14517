#include "fdlab/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fdlab/error.hpp"
#include "fdlab/format.hpp"
#include "fdlab/etdrk4.hpp"
#include "fdlab/gauge.hpp"
#include "fdlab/spectral.hpp"

namespace fdlab {
namespace {

struct Sup {
  double u = 0.0, v = 0.0, w = 0.0;
};

double component_sup(const SpectralField& f) {
  double s = 0.0;
  for (const cplx& z : f.values()) s = std::max(s, std::abs(z));
  return s;
}

/// |dP/du| + xi |dP/dv| + xi^2 |dP/dw| bounded monomial by monomial.
double sensitivity(const PolyExpr& p, const Sup& s, double xi) {
  double total = 0.0;
  for (const auto& m : p.monomials()) {
    const int a = m.degree_in(0), b = m.degree_in(1), g = m.degree_in(2);
    const double c = std::abs(m.coefficient);
    auto pw = [](double x, int e) { return e <= 0 ? 1.0 : std::pow(x, e); };
    if (a > 0) total += a * c * pw(s.u, a - 1) * pw(s.v, b) * pw(s.w, g);
    if (b > 0) total += xi * b * c * pw(s.u, a) * pw(s.v, b - 1) * pw(s.w, g);
    if (g > 0) total += xi * xi * g * c * pw(s.u, a) * pw(s.v, b) * pw(s.w, g - 1);
  }
  return total;
}

double magnitude(const PolyExpr& p, const Sup& s) {
  double total = 0.0;
  for (const auto& m : p.monomials()) {
    total += std::abs(m.coefficient) * std::pow(s.u, m.degree_in(0)) *
             std::pow(s.v, m.degree_in(1)) * std::pow(s.w, m.degree_in(2));
  }
  return total;
}

void check_budget(const NonlinearitySpec& f, const SpectralField& q, double dt, double c_stab) {
  const double sigma = nonlinear_stiffness(f, q);
  if (sigma > 0.0 && dt * sigma > c_stab) {
    std::ostringstream msg;
    msg << "dt = " << dt << " exceeds the stability budget " << c_stab / sigma
        << " (stiffness " << sigma << ", constant " << c_stab << ")";
    throw InvalidArgument(msg.str());
  }
}

}  // namespace

LinearSymbol::LinearSymbol(const SystemSpec& spec, const Grid& grid, double eps)
    : grid_(grid), n_(spec.n()), eps_(eps) {
  spec.check();
  if (!(eps >= 0.0 && eps < 1.0)) throw InvalidArgument("linear symbol: eps must lie in [0, 1)");
  const double e5 = std::pow(eps, 5);
  const std::size_t npts = grid.points();
  table_.resize(n_ * npts);
  for (std::size_t j = 0; j < n_; ++j) {
    for (std::size_t k = 0; k < npts; ++k) {
      const double xi = grid.wavenumber(k);
      const double xi2 = xi * xi;
      const double xi3 = grid.is_nyquist(k) ? 0.0 : xi2 * xi;
      const double im = spec.a[j] * xi2 * xi2 - spec.b[j] * xi3 - spec.lambda[j] * xi2;
      table_[j * npts + k] = {-e5 * xi2 * xi2, im};
    }
  }
  for (const cplx& s : table_) {
    if (!(s.real() <= 0.0) || !std::isfinite(s.imag())) {
      throw InvalidArgument("linear symbol is not dissipative");
    }
  }
}

double LinearSymbol::max_abs() const {
  double m = 0.0;
  for (const cplx& s : table_) m = std::max(m, std::abs(s));
  return m;
}

LinearSymbol LinearSymbol::negated() const {
  std::vector<cplx> t(table_.size());
  std::transform(table_.begin(), table_.end(), t.begin(), [](cplx s) { return -s; });
  return LinearSymbol(grid_, n_, eps_, std::move(t));
}

std::size_t SolverConfig::steps() const {
  // Guard against T/dt landing a rounding error above an integer.
  const double ratio = horizon / dt;
  const double nearest = std::round(ratio);
  const double n = std::abs(ratio - nearest) <= 1e-9 * nearest ? nearest : std::ceil(ratio);
  return static_cast<std::size_t>(std::max(1.0, n));
}

void SolverConfig::check() const {
  static_cast<void>(grid());  // Grid validates half_width and points
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidArgument("solver: dt must be positive");
  if (!(horizon > 0.0) || !std::isfinite(horizon)) {
    throw InvalidArgument("solver: horizon must be positive");
  }
  if (!(eps_parabolic >= 0.0 && eps_parabolic < 1.0)) {
    throw InvalidArgument("solver: eps_parabolic must lie in [0, 1)");
  }
  if (!(stability_constant > 0.0)) throw InvalidArgument("solver: stability constant must be positive");
  if (!(gauge_L > 1.0)) throw InvalidArgument("solver: gauge L must exceed 1");
  if (energy_order < 1 || energy_order > kMaxDerivativeOrder) {
    throw InvalidArgument("solver: energy order must lie in [1, 8]");
  }
}

double nonlinear_stiffness(const NonlinearitySpec& spec, const SpectralField& q) {
  const Spectrum s = q.to_spectrum();
  Sup sup;
  sup.u = component_sup(q);
  sup.v = component_sup(fourier_derivative(s, 1).to_physical());
  sup.w = component_sup(fourier_derivative(s, 2).to_physical());
  const double xi = q.grid().dealiased_max_wavenumber();
  const double len = q.grid().length();
  double sigma = 0.0;
  for (std::size_t j = 0; j < spec.n(); ++j) {
    double row = sensitivity(spec.f1(j), sup, xi) + sensitivity(spec.f2(j), sup, xi);
    for (std::size_t r = 0; r < spec.n(); ++r) {
      const auto& pair = spec.f3(j, r);
      if (!pair) continue;
      row += len * (sensitivity(pair->a, sup, xi) * magnitude(pair->b, sup) +
                    magnitude(pair->a, sup) * sensitivity(pair->b, sup, xi));
    }
    sigma = std::max(sigma, row);
  }
  return sigma;
}

Evolver::Evolver(const SystemSpec& spec, LinearSymbol symbol, double dt, bool dealias,
                 double decay_tol)
    : spec_(spec),
      symbol_(std::move(symbol)),
      evaluator_(spec.nonlinearity),
      stepper_(symbol_.values(), dt),
      dealias_(dealias),
      decay_tol_(decay_tol) {
  spec_.check();
  if (symbol_.components() != spec_.n()) {
    throw InvalidArgument("evolver: symbol and system disagree on component count");
  }
  linear_ = true;
  for (std::size_t j = 0; j < spec_.n(); ++j) {
    linear_ = linear_ && spec_.nonlinearity.f1(j).empty() && spec_.nonlinearity.f2(j).empty();
  }
  linear_ = linear_ && !spec_.nonlinearity.has_nonlocal();
}

Spectrum Evolver::nonlinear_term(const Spectrum& state) const {
  if (linear_) return Spectrum(state.grid(), state.components());
  const SpectralField q = state.to_physical();
  const SpectralField qx = fourier_derivative(state, 1).to_physical();
  const SpectralField qxx = fourier_derivative(state, 2).to_physical();
  EvaluateOptions opts;
  opts.dealias = false;
  opts.decay_tol = decay_tol_;
  std::vector<DecayWarning> warn;
  Spectrum out = evaluator_(q, qx, qxx, opts, &warn).to_spectrum();
  for (const auto& w : warn) {
    const bool seen = std::any_of(warnings_.begin(), warnings_.end(),
                                  [&](const DecayWarning& x) { return x.component == w.component; });
    if (!seen) warnings_.push_back(w);
  }
  if (dealias_) dealias_in_place(out);
  return out;
}

Spectrum Evolver::advance(const Spectrum& state, double t) const {
  if (state.grid() != symbol_.grid() || state.components() != symbol_.components()) {
    throw InvalidArgument("evolver: state shape does not match the symbol");
  }
  Spectrum out = stepper_.step(state, t, [this](double, const Spectrum& v) {
    return nonlinear_term(v);
  });
  if (dealias_ && !linear_) dealias_in_place(out);
  for (const cplx& z : out.values()) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw BlowUp(t + stepper_.h());
  }
  return out;
}

std::vector<DecayWarning> Evolver::take_warnings() const {
  std::vector<DecayWarning> out;
  out.swap(warnings_);
  return out;
}

SpectralField step(const SpectralField& state, double t, double dt, const SystemSpec& spec,
                   const LinearSymbol& symbol) {
  state.require_finite();
  check_budget(spec.nonlinearity, state, dt, SolverConfig{}.stability_constant);
  const Evolver ev(spec, symbol, dt);
  return ev.advance(state.to_spectrum(), t).to_physical();
}

DiagnosticsRecord diagnose(const SpectralField& q, const SystemSpec& spec, double gauge_L,
                           int energy_order) {
  DiagnosticsRecord d;
  const Spectrum s = q.to_spectrum();
  for (int k = 0; k < kRecordedNormOrders; ++k) d.sobolev[k] = sobolev_norm(s, k);
  GaugeConfig cfg;
  cfg.L = gauge_L;
  cfg.m = energy_order;
  cfg.a = spec.a;
  const EnergyRecord e = energy(q, cfg);
  d.energy = e.energy;
  d.phi_sup = e.phi_sup;
  return d;
}

Trajectory solve(const SpectralField& q0, const SystemSpec& spec, const SolverConfig& config) {
  return solve(q0, spec, config, LinearSymbol(spec, config.grid(), config.eps_parabolic));
}

Trajectory solve(const SpectralField& q0, const SystemSpec& spec, const SolverConfig& config,
                 const LinearSymbol& symbol) {
  config.check();
  spec.check();
  if (q0.grid() != config.grid()) throw InvalidArgument("solve: data grid differs from config");
  if (q0.components() != spec.n()) throw InvalidArgument("solve: data has wrong component count");
  if (symbol.grid() != config.grid()) throw InvalidArgument("solve: symbol grid differs from config");
  q0.require_finite();

  const std::size_t steps = config.steps();
  const double dt = config.effective_dt();
  if (config.enforce_stability) {
    check_budget(spec.nonlinearity, q0, dt, config.stability_constant);
  }

  Trajectory traj;
  traj.dt = dt;
  auto record = [&](double t, SpectralField q) {
    DiagnosticsRecord d = diagnose(q, spec, config.gauge_L, config.energy_order);
    traj.snapshots.push_back({t, std::move(q), d});
  };

  const Evolver ev(spec, symbol, dt, config.dealias, config.decay_tol);
  Spectrum v = q0.to_spectrum();
  record(0.0, q0);

  for (std::size_t i = 1; i <= steps; ++i) {
    const double t0 = static_cast<double>(i - 1) * dt;
    const double t1 = i == steps ? config.horizon : static_cast<double>(i) * dt;
    try {
      v = ev.advance(v, t0);
    } catch (const BlowUp& e) {
      traj.blew_up = true;
      traj.blowup_time = e.time();
      traj.blowup_reason = "non-finite values";
      break;
    }
    traj.steps = i;
    const bool keep = i == steps || (config.snapshot_stride > 0 && i % config.snapshot_stride == 0);
    if (!keep && !std::isfinite(config.blowup_threshold)) continue;
    SpectralField q = v.to_physical();
    if (q.sup_norm() > config.blowup_threshold) {
      traj.blew_up = true;
      traj.blowup_time = t1;
      traj.blowup_reason = "sup norm exceeded " + format_double(config.blowup_threshold);
      break;
    }
    if (keep) record(t1, std::move(q));
  }

  const double e0 = traj.front().diagnostics.energy;
  for (const auto& s : traj.snapshots) {
    if (s.diagnostics.energy > 2.0 * e0 * (1.0 + 1e-12)) traj.energy_window_held = false;
  }
  for (const auto& w : ev.take_warnings()) traj.warnings.push_back(w.message());
  return traj;
}

}  // namespace fdlab
