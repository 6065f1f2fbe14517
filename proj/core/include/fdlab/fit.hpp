#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fdlab {

inline constexpr double kSlopeTolerance = 0.3;

enum class Verdict { Pass, Marginal, Fail, Vacuous };

std::string_view to_string(Verdict v);

/// Three-valued comparison of a fitted slope against a lower bound:
/// PASS when slope >= expected - tol, MARGINAL within 2 tol, FAIL otherwise.
Verdict slope_verdict(double slope, double expected, double tol = kSlopeTolerance);

/// Least-squares line y = intercept + slope * x.
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  ///< RMS of y - fit
  std::size_t used = 0;
};

LineFit fit_line(std::span<const double> x, std::span<const double> y);

/// Log-log slope of a positive quantity q against a parameter p.
///
/// Values at or below `floor` carry no information. The first such value is
/// clamped to `floor` and kept (this only lowers the fitted decay rate);
/// everything after it is dropped. With fewer than two usable points the
/// fit is flagged vacuous.
struct PowerFit {
  LineFit line;
  bool vacuous = false;
  bool hit_floor = false;
};

PowerFit fit_power_law(std::span<const double> param, std::span<const double> q, double floor);

/// Exponential envelope fit of a nonnegative series e(t) (an energy).
///
/// With y_i = log(e_i / e_0) the rate K is the least-squares slope through
/// the origin. The rate residual is the RMS of (y_i - K t_i) / t_i over
/// t_i > 0, margin = 2 * residual, and the envelope holds when
/// e_i <= e_0 exp((K + margin) t_i) at every sample.
struct GrowthFit {
  double rate = 0.0;
  double residual = 0.0;
  double margin = 0.0;
  bool envelope_holds = false;
  bool degenerate_seed = false;
};

GrowthFit fit_exponential_growth(std::span<const double> t, std::span<const double> e);

}  // namespace fdlab
