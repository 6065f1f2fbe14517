#include "fdlab/fit.hpp"

#include <cmath>
#include <limits>

#include "fdlab/error.hpp"

namespace fdlab {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::Marginal: return "MARGINAL";
    case Verdict::Fail: return "FAIL";
    case Verdict::Vacuous: return "VACUOUS";
  }
  return "?";
}

Verdict slope_verdict(double slope, double expected, double tol) {
  if (!std::isfinite(slope)) return Verdict::Fail;
  if (slope >= expected - tol) return Verdict::Pass;
  if (slope >= expected - 2.0 * tol) return Verdict::Marginal;
  return Verdict::Fail;
}

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw InvalidArgument("fit_line: size mismatch");
  LineFit f;
  f.used = x.size();
  if (x.size() < 2) return f;
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw InvalidArgument("fit_line: abscissae are all equal");
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (f.intercept + f.slope * x[i]);
    ss += r * r;
  }
  f.residual = std::sqrt(ss / n);
  return f;
}

PowerFit fit_power_law(std::span<const double> param, std::span<const double> q, double floor) {
  if (param.size() != q.size()) throw InvalidArgument("fit_power_law: size mismatch");
  PowerFit out;
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (!(param[i] > 0.0)) throw InvalidArgument("fit_power_law: parameters must be positive");
    if (q[i] > floor) {
      lx.push_back(std::log(param[i]));
      ly.push_back(std::log(q[i]));
      continue;
    }
    out.hit_floor = true;
    if (!lx.empty() && floor > 0.0) {
      lx.push_back(std::log(param[i]));
      ly.push_back(std::log(floor));
    }
    break;
  }
  if (lx.size() < 2) {
    out.vacuous = true;
    out.line.used = lx.size();
    return out;
  }
  out.line = fit_line(lx, ly);
  return out;
}

GrowthFit fit_exponential_growth(std::span<const double> t, std::span<const double> e) {
  if (t.size() != e.size()) throw InvalidArgument("fit_exponential_growth: size mismatch");
  GrowthFit g;
  if (t.empty()) {
    g.envelope_holds = true;
    return g;
  }
  const double e0 = e[0];
  bool later_nonzero = false;
  for (std::size_t i = 1; i < e.size(); ++i) later_nonzero = later_nonzero || e[i] > 0.0;
  if (e0 <= 0.0) {
    g.degenerate_seed = later_nonzero;
    g.envelope_holds = !later_nonzero;
    return g;
  }
  const double tiny = e0 * 1e-300;
  double stt = 0.0, sty = 0.0;
  std::vector<double> y(e.size());
  for (std::size_t i = 0; i < e.size(); ++i) {
    y[i] = std::log(std::max(e[i], tiny) / e0);
    const double dt = t[i] - t[0];
    stt += dt * dt;
    sty += dt * y[i];
  }
  g.rate = stt > 0.0 ? sty / stt : 0.0;
  double ss = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < e.size(); ++i) {
    const double dt = t[i] - t[0];
    if (dt <= 0.0) continue;
    const double r = (y[i] - g.rate * dt) / dt;
    ss += r * r;
    ++count;
  }
  g.residual = count > 0 ? std::sqrt(ss / static_cast<double>(count)) : 0.0;
  g.margin = 2.0 * g.residual;
  g.envelope_holds = true;
  for (std::size_t i = 0; i < e.size(); ++i) {
    const double dt = t[i] - t[0];
    // Tiny relative slack so an exactly conserved energy is not failed by rounding.
    const double bound = (g.rate + g.margin) * dt + 64.0 * std::numeric_limits<double>::epsilon();
    if (y[i] > bound) g.envelope_holds = false;
  }
  return g;
}

}  // namespace fdlab
