#include "fdlab/mollifier.hpp"

#include <cmath>
#include <limits>

#include "fdlab/error.hpp"
#include "fdlab/spectral.hpp"

namespace fdlab {
namespace {

double bump(double s) { return s > 0.0 ? std::exp(-1.0 / s) : 0.0; }

void check_eps(double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw InvalidArgument("mollify: eps must lie in (0, 1)");
}

void apply(Spectrum& s, double eps, const MollifierProfile& profile) {
  const Grid& g = s.grid();
  std::vector<double> mult(g.points());
  for (std::size_t k = 0; k < g.points(); ++k) mult[k] = profile(eps * g.wavenumber(k));
  for (std::size_t j = 0; j < s.components(); ++j) {
    auto c = s.component(j);
    for (std::size_t k = 0; k < c.size(); ++k) c[k] *= mult[k];
  }
}

}  // namespace

MollifierProfile::MollifierProfile(double inner_radius, double outer_radius)
    : r0_(inner_radius), r1_(outer_radius) {
  if (!(r0_ > 0.0) || !(r1_ > r0_)) {
    throw InvalidArgument("mollifier profile needs 0 < inner_radius < outer_radius");
  }
}

double MollifierProfile::operator()(double xi) const {
  const double r = std::abs(xi);
  if (r <= r0_) return 1.0;
  if (r >= r1_) return 0.0;
  // Rescale the transition to unit width so the bridge shape is radius-independent.
  const double t = (r - r0_) / (r1_ - r0_);
  const double hi = bump(1.0 - t), lo = bump(t);
  return hi / (hi + lo);
}

Spectrum mollify(const Spectrum& q0, double eps, const MollifierProfile& profile) {
  check_eps(eps);
  Spectrum out = q0;
  apply(out, eps, profile);
  return out;
}

SpectralField mollify(const SpectralField& q0, double eps, const MollifierProfile& profile) {
  check_eps(eps);
  // Skip the round trip when the multiplier is 1 on every resolved mode.
  if (profile.inner_radius() / eps >= q0.grid().max_wavenumber()) return q0;
  return mollify(q0.to_spectrum(), eps, profile).to_physical();
}

Verdict RateReport::overall() const {
  if (vacuous) return Verdict::Vacuous;
  if (!contraction_holds) return Verdict::Fail;
  Verdict worst = Verdict::Pass;
  for (const auto* group : {&growth, &decay}) {
    for (const auto& s : *group) {
      if (s.verdict == Verdict::Fail) return Verdict::Fail;
      if (s.verdict == Verdict::Marginal) worst = Verdict::Marginal;
    }
  }
  return worst;
}

RateReport verify_rates(const SpectralField& q0, int m, std::span<const double> eps_list,
                        const MollifierProfile& profile) {
  if (m < 4 || m + 2 > kMaxDerivativeOrder) {
    throw InvalidArgument("verify_rates: m must lie in [4, " +
                          std::to_string(kMaxDerivativeOrder - 2) + "]");
  }
  if (eps_list.size() < 4) throw InvalidArgument("verify_rates: need at least four eps values");
  for (std::size_t i = 0; i < eps_list.size(); ++i) {
    check_eps(eps_list[i]);
    if (i > 0 && !(eps_list[i] < eps_list[i - 1])) {
      throw InvalidArgument("verify_rates: eps values must be strictly decreasing");
    }
  }
  if (eps_list.front() / eps_list.back() < 4.0) {
    throw InvalidArgument("verify_rates: eps values must span at least two octaves");
  }

  RateReport rep;
  rep.m = m;
  rep.eps.assign(eps_list.begin(), eps_list.end());
  const Spectrum s0 = q0.to_spectrum();
  rep.hm_norm_data = sobolev_norm(s0, m);

  for (int l = 1; l <= 2; ++l) {
    RateSeries g;
    g.exponent = l;
    g.sobolev_index = m + l;
    g.expected_slope = -l;
    rep.growth.push_back(g);
    RateSeries d;
    d.exponent = l;
    d.sobolev_index = m - l;
    d.expected_slope = l;
    rep.decay.push_back(d);
  }

  for (double eps : eps_list) {
    const Spectrum se = mollify(s0, eps, profile);
    const Spectrum diff = se - s0;
    const double hm = sobolev_norm(se, m);
    rep.hm_norms.push_back(hm);
    // Multipliers in [0, 1] contract exactly; allow only summation rounding.
    if (hm > rep.hm_norm_data * (1.0 + 1e-12)) rep.contraction_holds = false;
    for (std::size_t i = 0; i < 2; ++i) {
      rep.growth[i].values.push_back(sobolev_norm(se, rep.growth[i].sobolev_index));
      rep.decay[i].values.push_back(sobolev_norm(diff, rep.decay[i].sobolev_index));
    }
    rep.hm_diffs.push_back(sobolev_norm(diff, m));
  }

  // Differences are exact in frequency space, so anything below this
  // relative level is rounding rather than signal.
  const double decay_floor = 1e-12 * rep.hm_norm_data;
  // Transform rounding spreads over every mode; in H^m it is amplified by the
  // top wavenumber.
  const double kmax = q0.grid().max_wavenumber();
  const double rounding = 64.0 * std::numeric_limits<double>::epsilon() * sobolev_norm(s0, 0) *
                          std::pow(1.0 + kmax * kmax, 0.5 * m);
  rep.vacuity_floor = std::max(decay_floor, rounding);
  rep.vacuous = true;
  for (double d : rep.hm_diffs) rep.vacuous = rep.vacuous && !(d > rep.vacuity_floor);
  if (rep.vacuous) return rep;

  auto finish = [&](RateSeries& s, double floor) {
    const PowerFit fit = fit_power_law(rep.eps, s.values, floor);
    s.hit_floor = fit.hit_floor;
    if (fit.vacuous) {
      s.verdict = Verdict::Vacuous;
      return;
    }
    s.fitted_slope = fit.line.slope;
    s.residual = fit.line.residual;
    s.verdict = slope_verdict(s.fitted_slope, s.expected_slope);
  };
  for (auto& s : rep.growth) finish(s, 0.0);
  for (auto& s : rep.decay) finish(s, decay_floor);
  return rep;
}

}  // namespace fdlab
