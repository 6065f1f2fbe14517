#include "fdlab/gauge.hpp"

#include <algorithm>
#include <cmath>

#include "fdlab/error.hpp"
#include "fdlab/trajectory.hpp"

namespace fdlab {
namespace {

constexpr cplx I{0.0, 1.0};

double max_phi(const SpectralField& phi) {
  double s = 0.0;
  for (const cplx& z : phi.values()) s = std::max(s, std::abs(z));
  return s;
}

/// V_j = d^m W_j + (L / (4 a_j)) Phi i d^{m-1} W_j.
SpectralField apply_gauge(const Spectrum& ws, const SpectralField& phi, const GaugeConfig& cfg) {
  SpectralField v = fourier_derivative(ws, cfg.m).to_physical();
  const SpectralField dm1 = fourier_derivative(ws, cfg.m - 1).to_physical();
  const double L = cfg.effective_L();
  for (std::size_t j = 0; j < v.components(); ++j) {
    const cplx scale = I * (L / (4.0 * cfg.a[j]));
    for (std::size_t i = 0; i < v.points(); ++i) v(j, i) += scale * phi(0, i) * dm1(j, i);
  }
  return v;
}

void check_shape(const GaugeConfig& cfg, std::size_t components) {
  cfg.check();
  if (cfg.a.size() != components) {
    throw InvalidArgument("gauge: a has " + std::to_string(cfg.a.size()) +
                          " entries but the field has " + std::to_string(components) +
                          " components");
  }
}

/// Shared core of energy and difference_energy: W is gauged with Phi.
EnergyRecord gauged_energy(const SpectralField& w, const SpectralField& phi, double mass,
                           const GaugeConfig& cfg, double t) {
  check_shape(cfg, w.components());
  const int m = cfg.m;
  const double L = cfg.effective_L();
  const Spectrum ws = w.to_spectrum();
  const SpectralField v = apply_gauge(ws, phi, cfg);

  EnergyRecord r;
  r.t = t;
  r.v_norm = l2_norm(v);
  r.lower_norm = sobolev_norm(ws, m - 1);
  r.hm_norm = sobolev_norm(ws, m);
  r.phi_sup = max_phi(phi);
  r.energy = std::sqrt(r.v_norm * r.v_norm + r.lower_norm * r.lower_norm);

  double amin = std::abs(cfg.a.front());
  for (double a : cfg.a) amin = std::min(amin, std::abs(a));
  const double kappa = L / (4.0 * amin) * std::max(r.phi_sup, mass);
  r.c1 = r.c2 = 2.0 * (1.0 + kappa * kappa);
  const double hm2 = r.hm_norm * r.hm_norm, e2 = r.energy * r.energy;
  r.sandwich_lower = hm2 / r.c1;
  r.sandwich_upper = r.c2 * hm2;
  // Relative slack for rounding in the three independently summed norms.
  const double slack = 1e-12 * std::max(hm2, e2);
  r.sandwich_holds = r.sandwich_lower <= e2 + slack && e2 <= r.sandwich_upper + slack;
  return r;
}

}  // namespace

void GaugeConfig::check() const {
  if (!gauge_off && !(L > 1.0)) throw InvalidArgument("gauge: L must exceed 1");
  if (m < 1 || m > kMaxDerivativeOrder) throw InvalidArgument("gauge: m must lie in [1, 8]");
  if (a.empty()) throw InvalidArgument("gauge: dispersion vector a is empty");
  for (double x : a) {
    if (x == 0.0) throw InvalidArgument("gauge: every a_j must be nonzero");
  }
}

IntegralResult gauge_phi(const SpectralField& q, double decay_tol) {
  SpectralField density(q.grid(), 1);
  for (std::size_t j = 0; j < q.components(); ++j) {
    for (std::size_t i = 0; i < q.points(); ++i) density(0, i) += std::norm(q(j, i));
  }
  IntegralResult out = cumulative_integral(density, decay_tol);
  // The integrand is real; drop the rounding-level imaginary part.
  for (cplx& z : out.field.values()) z = {z.real(), 0.0};
  return out;
}

SpectralField gauged_variable(const SpectralField& q, const GaugeConfig& cfg) {
  check_shape(cfg, q.components());
  return apply_gauge(q.to_spectrum(), gauge_phi(q).field, cfg);
}

EnergyRecord energy(const SpectralField& q, const GaugeConfig& cfg, double t) {
  const double mass = std::pow(l2_norm(q), 2);
  return gauged_energy(q, gauge_phi(q).field, mass, cfg, t);
}

EnergyRecord difference_energy(const SpectralField& qa, const SpectralField& qb,
                               const GaugeConfig& cfg, double t) {
  if (!qa.same_shape(qb)) throw InvalidArgument("difference_energy: shape mismatch");
  const double mass = std::pow(l2_norm(qa), 2);
  return gauged_energy(qa - qb, gauge_phi(qa).field, mass, cfg, t);
}

GronwallReport gronwall_rate(std::span<const double> t, std::span<const double> energy_squared) {
  if (t.size() != energy_squared.size()) throw InvalidArgument("gronwall_rate: size mismatch");
  if (t.size() < 8) throw InvalidArgument("gronwall_rate: need at least eight samples");
  GronwallReport r;
  r.t.assign(t.begin(), t.end());
  r.energy_squared.assign(energy_squared.begin(), energy_squared.end());
  r.fit = fit_exponential_growth(t, energy_squared);
  return r;
}

GronwallReport gronwall_rate(const Trajectory& traj, const GaugeConfig& cfg) {
  std::vector<double> t, e2;
  for (const auto& s : traj.snapshots) {
    const double e = energy(s.q, cfg, s.t).energy;
    t.push_back(s.t);
    e2.push_back(e * e);
  }
  return gronwall_rate(t, e2);
}

}  // namespace fdlab
