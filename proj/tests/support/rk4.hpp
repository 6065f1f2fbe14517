#pragma once

// Classical explicit fourth-order Runge-Kutta on v' = s v + N(v) in
// frequency space: the dense small-step reference for the exponential
// integrator. Shares only the nonlinearity evaluation with the library.

#include "fdlab/evolve.hpp"

namespace rk4 {

inline fdlab::Spectrum rhs(const fdlab::Evolver& ev, const fdlab::Spectrum& v) {
  fdlab::Spectrum out = ev.nonlinear_term(v);
  const auto& s = ev.symbol();
  for (std::size_t j = 0; j < v.components(); ++j)
    for (std::size_t k = 0; k < v.points(); ++k) out(j, k) += s(j, k) * v(j, k);
  return out;
}

inline fdlab::Spectrum axpy(const fdlab::Spectrum& v, double h, const fdlab::Spectrum& k) {
  fdlab::Spectrum out = v;
  auto o = out.values();
  auto kv = k.values();
  for (std::size_t i = 0; i < o.size(); ++i) o[i] += h * kv[i];
  return out;
}

/// Integrates over `span` with `substeps` equal RK4 steps.
inline fdlab::Spectrum integrate(const fdlab::Evolver& ev, fdlab::Spectrum v, double span,
                                 std::size_t substeps) {
  const double h = span / static_cast<double>(substeps);
  for (std::size_t n = 0; n < substeps; ++n) {
    const auto k1 = rhs(ev, v);
    const auto k2 = rhs(ev, axpy(v, h / 2, k1));
    const auto k3 = rhs(ev, axpy(v, h / 2, k2));
    const auto k4 = rhs(ev, axpy(v, h, k3));
    auto o = v.values();
    auto a = k1.values(), b = k2.values(), c = k3.values(), d = k4.values();
    for (std::size_t i = 0; i < o.size(); ++i) o[i] += h / 6.0 * (a[i] + 2.0 * b[i] + 2.0 * c[i] + d[i]);
  }
  return v;
}

}  // namespace rk4
