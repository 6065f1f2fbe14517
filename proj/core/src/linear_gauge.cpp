#include "fdlab/linear_gauge.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "fdlab/error.hpp"
#include "fdlab/etdrk4.hpp"
#include "fdlab/evolve.hpp"
#include "fdlab/spectral.hpp"

namespace fdlab {
namespace {

constexpr cplx I{0.0, 1.0};

double bump(double s) { return s > 0.0 ? std::exp(-1.0 / s) : 0.0; }

cplx eval(const LinearCoefficients::Coefficient& f, double t, double x) {
  return f ? f(t, x) : cplx{};
}

double eval(const LinearCoefficients::Envelope& f, double x) { return f ? f(x) : 0.0; }

}  // namespace

LinearCoefficients linear_preset(std::string_view name) {
  LinearCoefficients c;
  c.name = std::string(name);
  if (name == "zero") return c;
  if (name == "real-beta1") {
    c.beta1 = [](double, double) { return cplx{0.5, 0.0}; };
    return c;
  }
  if (name == "decaying-im-gamma1") {
    c.gamma1 = [](double, double x) { return cplx{0.0, 0.5 * std::exp(-x * x)}; };
    c.phi_b = [](double x) { return 0.5 * std::exp(-x * x); };
    return c;
  }
  if (name == "violating-im-beta1") {
    c.beta1 = [](double, double) { return cplx{0.5, 0.1}; };
    // The tightest envelope is the constant 0.1, which is not integrable.
    c.phi_a = [](double) { return 0.1; };
    return c;
  }
  throw InvalidArgument("unknown coefficient preset '" + std::string(name) + "'");
}

std::vector<std::string> linear_preset_names() {
  return {"zero", "real-beta1", "decaying-im-gamma1", "violating-im-beta1"};
}

EnvelopeCheck check_envelopes(const LinearCoefficients& c, const Grid& grid,
                              std::span<const double> times, double edge_tol) {
  EnvelopeCheck out;
  const std::size_t npts = grid.points();
  for (double t : times) {
    for (std::size_t i = 0; i < npts; ++i) {
      const double x = grid.x(i);
      const double lhs_a = std::abs(eval(c.beta1, t, x).imag()) + std::abs(eval(c.beta2, t, x));
      const double lhs_b = std::abs(eval(c.gamma1, t, x).imag());
      // Closures may round differently from their envelopes; allow ulp-level slack.
      if (lhs_a > eval(c.phi_a, x) * (1.0 + 1e-14) + 1e-300) out.pointwise = false;
      if (lhs_b > eval(c.phi_b, x) * (1.0 + 1e-14) + 1e-300) out.pointwise = false;
    }
  }
  for (std::size_t i = 0; i < npts; ++i) {
    const double x = grid.x(i);
    out.phi_a_integral += grid.dx() * eval(c.phi_a, x);
    out.phi_b_sq_integral += grid.dx() * std::pow(eval(c.phi_b, x), 2);
  }
  const double left = grid.x(0), right = grid.half_width();
  for (double x : {left, right}) {
    if (eval(c.phi_a, x) > edge_tol || std::pow(eval(c.phi_b, x), 2) > edge_tol) {
      out.integrable = false;
    }
  }
  return out;
}

double gauge_cutoff(double xi, double r) {
  const double s = std::abs(xi) - r;
  if (s <= 0.0) return 0.0;
  if (s >= 1.0) return 1.0;
  const double up = bump(s), down = bump(1.0 - s);
  return up / (up + down);
}

GaugeOperator GaugeOperator::build(const LinearCoefficients& c, double a, double L, double r,
                                   const Grid& grid) {
  if (!(L > 3.0)) throw InvalidArgument("gauge operator: L must exceed 3");
  if (!(r > 0.0)) throw InvalidArgument("gauge operator: r must be positive");
  if (a == 0.0) throw InvalidArgument("gauge operator: a must be nonzero");
  GaugeOperator g(grid);
  g.r_ = r;
  const std::size_t npts = grid.points();

  // Phi = L int_0^x phi with the trapezoid rule, anchored at the grid point x = 0.
  SpectralField density(grid, 1);
  for (std::size_t i = 0; i < npts; ++i) {
    const double x = grid.x(i);
    density(0, i) = eval(c.phi_a, x) + std::pow(eval(c.phi_b, x), 2);
  }
  const SpectralField cum =
      cumulative_integral(density, std::numeric_limits<double>::infinity()).field;
  const double origin = cum(0, npts / 2).real();
  g.phi_.resize(npts);
  double phi_sup = 0.0;
  for (std::size_t i = 0; i < npts; ++i) {
    g.phi_[i] = L * (cum(0, i).real() - origin);
    phi_sup = std::max(phi_sup, std::abs(g.phi_[i]));
  }

  g.mult_.resize(npts);
  for (std::size_t k = 0; k < npts; ++k) {
    const double xi = grid.wavenumber(k);
    // The Nyquist mode has no partner -xi; zeroing it keeps m odd on the grid.
    g.mult_[k] = grid.is_nyquist(k) || xi == 0.0 ? 0.0 : gauge_cutoff(xi, r) / (4.0 * a * xi);
  }
  g.norm_bound_ = phi_sup / (4.0 * std::abs(a) * r);
  if (!(g.norm_bound_ < 0.9)) {
    std::ostringstream msg;
    msg << "gauge operator: norm bound " << g.norm_bound_ << " >= 0.9 for r = " << r
        << "; try r >= " << std::ceil(phi_sup / (2.0 * std::abs(a)));
    throw InvalidArgument(msg.str());
  }
  return g;
}

SpectralField GaugeOperator::apply_tilde(const SpectralField& v) const {
  if (v.grid() != grid_) throw InvalidArgument("gauge operator: grid mismatch");
  Spectrum s = v.to_spectrum();
  for (std::size_t j = 0; j < s.components(); ++j) {
    auto c = s.component(j);
    for (std::size_t k = 0; k < c.size(); ++k) c[k] *= mult_[k];
  }
  SpectralField out = s.to_physical();
  for (std::size_t j = 0; j < out.components(); ++j) {
    auto c = out.component(j);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] *= phi_[i];
  }
  return out;
}

SpectralField GaugeOperator::apply(const SpectralField& v) const { return v + apply_tilde(v); }

SpectralField GaugeOperator::apply_inverse(const SpectralField& v, double tol,
                                           int max_iterations) const {
  const double scale = std::max(l2_norm(v), std::numeric_limits<double>::min());
  SpectralField w = v;
  for (int it = 0; it < max_iterations; ++it) {
    const SpectralField lw = apply_tilde(w);
    const SpectralField residual = v - (w + lw);
    if (l2_norm(residual) <= tol * scale) return w;
    w = v - lw;
  }
  if (l2_norm(v - apply(w)) <= tol * scale) return w;
  throw Error("gauge operator: inverse iteration did not converge");
}

Trajectory evolve_linear(const SpectralField& u0, const LinearCoefficients& c,
                         const LinearRunConfig& config) {
  if (config.a == 0.0) throw InvalidArgument("evolve_linear: a must be nonzero");
  if (!(config.dt > 0.0) || !(config.horizon > 0.0)) {
    throw InvalidArgument("evolve_linear: dt and horizon must be positive");
  }
  u0.require_finite();
  const Grid& grid = u0.grid();
  const std::size_t n = u0.components();
  const std::size_t npts = grid.points();

  SolverConfig timing;
  timing.dt = config.dt;
  timing.horizon = config.horizon;
  const std::size_t steps = timing.steps();
  const double dt = timing.effective_dt();

  SystemSpec lin{std::vector<double>(n, config.a), std::vector<double>(n, config.b),
                 std::vector<double>(n, 0.0), NonlinearitySpec(n)};
  const LinearSymbol symbol(lin, grid, 0.0);
  const EtdRk4 stepper(symbol.values(), dt);

  auto rhs = [&](double t, const Spectrum& v) {
    Spectrum out(grid, n);
    if (c.is_zero()) return out;
    const SpectralField ux = fourier_derivative(v, 1).to_physical();
    SpectralField flux(grid, n), direct(grid, n);
    for (std::size_t i = 0; i < npts; ++i) {
      const double x = grid.x(i);
      const cplx b1 = eval(c.beta1, t, x), b2 = eval(c.beta2, t, x);
      const cplx g1 = eval(c.gamma1, t, x), g2 = eval(c.gamma2, t, x);
      for (std::size_t j = 0; j < n; ++j) {
        const cplx d = ux(j, i);
        flux(j, i) = b1 * d + b2 * std::conj(d);
        direct(j, i) = g1 * d + g2 * std::conj(d);
      }
    }
    out = fourier_derivative(flux.to_spectrum(), 1);
    out *= I;
    out += direct.to_spectrum();
    if (config.dealias) dealias_in_place(out);
    return out;
  };

  Trajectory traj;
  traj.dt = dt;
  auto record = [&](double t, SpectralField q) {
    DiagnosticsRecord d;
    const Spectrum s = q.to_spectrum();
    for (int k = 0; k < kRecordedNormOrders; ++k) d.sobolev[k] = sobolev_norm(s, k);
    d.energy = d.sobolev[0];
    traj.snapshots.push_back({t, std::move(q), d});
  };
  record(0.0, u0);
  Spectrum v = u0.to_spectrum();
  for (std::size_t i = 1; i <= steps; ++i) {
    const double t0 = static_cast<double>(i - 1) * dt;
    const double t1 = i == steps ? config.horizon : static_cast<double>(i) * dt;
    v = stepper.step(v, t0, rhs);
    if (config.dealias && !c.is_zero()) dealias_in_place(v);
    traj.steps = i;
    SpectralField q = v.to_physical();
    if (!q.is_finite() || q.sup_norm() > config.blowup_threshold) {
      traj.blew_up = true;
      traj.blowup_time = t1;
      traj.blowup_reason = q.is_finite() ? "sup norm exceeded threshold" : "non-finite values";
      break;
    }
    const bool keep = i == steps || (config.snapshot_stride > 0 && i % config.snapshot_stride == 0);
    if (keep) record(t1, std::move(q));
  }
  return traj;
}

GaugedEnergyReport gauged_energy_trace(const Trajectory& traj, const GaugeOperator& gauge) {
  if (traj.snapshots.size() < 8) {
    throw InvalidArgument("gauged_energy_trace: need at least eight snapshots");
  }
  GaugedEnergyReport r;
  for (const auto& s : traj.snapshots) {
    r.t.push_back(s.t);
    r.energy_squared.push_back(std::pow(l2_norm(gauge.apply(s.q)), 2));
    r.raw_squared.push_back(std::pow(l2_norm(s.q), 2));
  }
  r.fit = fit_exponential_growth(r.t, r.energy_squared);
  return r;
}

}  // namespace fdlab
