#include "fdlab/etdrk4.hpp"

#include <cmath>
#include <numbers>

#include "fdlab/error.hpp"

namespace fdlab {
namespace {

constexpr int kContourPoints = 64;
constexpr double kContourRadius = 2.0;
constexpr double kDirectThreshold = 1.0;

struct Phi {
  cplx q, f1, f2, f3;  // not yet scaled by h
};

Phi direct(cplx z) {
  const cplx ez = std::exp(z), ez2 = std::exp(z / 2.0);
  const cplx z3 = z * z * z;
  return {(ez2 - 1.0) / z, (-4.0 - z + ez * (4.0 - 3.0 * z + z * z)) / z3,
          (2.0 + z + ez * (z - 2.0)) / z3, (-4.0 - 3.0 * z - z * z + ez * (4.0 - z)) / z3};
}

}  // namespace

EtdRk4::Weights EtdRk4::weights(cplx z, double h) {
  Phi p{};
  if (std::abs(z) >= kDirectThreshold) {
    p = direct(z);
  } else {
    // The direct formulas cancel catastrophically near z = 0; average them
    // over a circle around z, which leaves the analytic value unchanged.
    for (int k = 0; k < kContourPoints; ++k) {
      const double theta = 2.0 * std::numbers::pi * (k + 0.5) / kContourPoints;
      const Phi d = direct(z + kContourRadius * std::polar(1.0, theta));
      p.q += d.q;
      p.f1 += d.f1;
      p.f2 += d.f2;
      p.f3 += d.f3;
    }
    const double inv = 1.0 / kContourPoints;
    p = {p.q * inv, p.f1 * inv, p.f2 * inv, p.f3 * inv};
  }
  return {std::exp(z), std::exp(z / 2.0), h * p.q, h * p.f1, h * p.f2, h * p.f3};
}

EtdRk4::EtdRk4(std::span<const cplx> symbol, double h) : h_(h) {
  if (!(h > 0.0) || !std::isfinite(h)) throw InvalidArgument("etdrk4: step must be positive");
  const std::size_t n = symbol.size();
  for (auto* v : {&e_, &e2_, &q_, &f1_, &f2_, &f3_}) v->resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Weights w = weights(h * symbol[i], h);
    e_[i] = w.e;
    e2_[i] = w.e2;
    q_[i] = w.q;
    f1_[i] = w.f1;
    f2_[i] = w.f2;
    f3_[i] = w.f3;
  }
}

Spectrum EtdRk4::step(const Spectrum& v, double t, const Nonlinear& nonlinear) const {
  const std::size_t n = v.values().size();
  if (n != e_.size()) throw InvalidArgument("etdrk4: state size does not match the symbol");
  const Spectrum nv = nonlinear(t, v);

  Spectrum a = v;
  {
    auto av = a.values();
    auto vv = v.values();
    auto nn = nv.values();
    for (std::size_t i = 0; i < n; ++i) av[i] = e2_[i] * vv[i] + q_[i] * nn[i];
  }
  const Spectrum na = nonlinear(t + 0.5 * h_, a);

  Spectrum b = v;
  {
    auto bv = b.values();
    auto vv = v.values();
    auto nn = na.values();
    for (std::size_t i = 0; i < n; ++i) bv[i] = e2_[i] * vv[i] + q_[i] * nn[i];
  }
  const Spectrum nb = nonlinear(t + 0.5 * h_, b);

  Spectrum c = a;
  {
    auto cv = c.values();
    auto av = a.values();
    auto n0 = nv.values();
    auto nbv = nb.values();
    for (std::size_t i = 0; i < n; ++i) cv[i] = e2_[i] * av[i] + q_[i] * (2.0 * nbv[i] - n0[i]);
  }
  const Spectrum nc = nonlinear(t + h_, c);

  Spectrum out = v;
  auto ov = out.values();
  auto vv = v.values();
  auto n0 = nv.values(), n1 = na.values(), n2 = nb.values(), n3 = nc.values();
  for (std::size_t i = 0; i < n; ++i) {
    ov[i] = e_[i] * vv[i] + f1_[i] * n0[i] + 2.0 * f2_[i] * (n1[i] + n2[i]) + f3_[i] * n3[i];
  }
  return out;
}

}  // namespace fdlab
