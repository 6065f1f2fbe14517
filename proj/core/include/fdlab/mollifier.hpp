#pragma once

#include <span>
#include <vector>

#include "fdlab/field.hpp"
#include "fdlab/fit.hpp"

namespace fdlab {

/// Radial low-pass profile: 1 on |xi| <= r0, 0 on |xi| >= r1, smooth and
/// nonincreasing in between.
class MollifierProfile {
 public:
  MollifierProfile() : MollifierProfile(1.0, 2.0) {}
  MollifierProfile(double inner_radius, double outer_radius);

  double inner_radius() const { return r0_; }
  double outer_radius() const { return r1_; }
  double operator()(double xi) const;

 private:
  double r0_, r1_;
};

/// Scales the frequency content by profile(eps * xi). eps must lie in (0, 1).
SpectralField mollify(const SpectralField& q0, double eps, const MollifierProfile& profile = {});
Spectrum mollify(const Spectrum& q0, double eps, const MollifierProfile& profile = {});

/// One fitted log-log rate against eps.
struct RateSeries {
  int exponent = 0;             ///< l
  int sobolev_index = 0;        ///< m + l for growth, m - l for decay
  double expected_slope = 0.0;  ///< -l for growth, +l for decay
  double fitted_slope = 0.0;
  double residual = 0.0;
  bool hit_floor = false;
  Verdict verdict = Verdict::Vacuous;
  std::vector<double> values;  ///< one norm per eps
};

struct RateReport {
  int m = 0;
  std::vector<double> eps;
  std::vector<RateSeries> growth;  ///< l = 1, 2
  std::vector<RateSeries> decay;   ///< l = 1, 2
  std::vector<double> hm_norms;    ///< ||Q0^eps||_{H^m} per eps
  double hm_norm_data = 0.0;       ///< ||Q0||_{H^m}
  std::vector<double> hm_diffs;    ///< ||Q0^eps - Q0||_{H^m} per eps
  /// Differences at or below this level count as rounding; the report is
  /// vacuous when every entry of hm_diffs is.
  double vacuity_floor = 0.0;
  bool contraction_holds = true;
  bool vacuous = false;

  /// PASS if every series passes, FAIL if any fails or contraction breaks,
  /// MARGINAL otherwise; VACUOUS when the data sits inside every band.
  Verdict overall() const;
};

/// Fits the growth of ||Q0^eps||_{H^{m+l}} and decay of ||Q0^eps - Q0||_{H^{m-l}}
/// over a decreasing eps schedule (at least four values spanning two octaves).
RateReport verify_rates(const SpectralField& q0, int m, std::span<const double> eps_list,
                        const MollifierProfile& profile = {});

}  // namespace fdlab
