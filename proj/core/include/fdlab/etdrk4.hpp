#pragma once

#include <functional>
#include <span>
#include <vector>

#include "fdlab/field.hpp"

namespace fdlab {

/// Fourth-order exponential time differencing Runge-Kutta step for
/// v' = s v + N(t, v), diagonal in frequency space (Cox-Matthews weights).
class EtdRk4 {
 public:
  /// N(t, v_hat) -> N_hat. Must not retain references to its argument.
  using Nonlinear = std::function<Spectrum(double t, const Spectrum& v)>;

  /// `symbol` holds s per (component, FFT index), component-major.
  EtdRk4(std::span<const cplx> symbol, double h);

  double h() const { return h_; }

  Spectrum step(const Spectrum& v, double t, const Nonlinear& nonlinear) const;

  /// Weights for one value z = h s, each already multiplied by h:
  /// e^z, e^{z/2}, h (e^{z/2} - 1)/z and the three fourth-order weights.
  struct Weights {
    cplx e, e2, q, f1, f2, f3;
  };
  static Weights weights(cplx z, double h);

 private:
  double h_;
  std::vector<cplx> e_, e2_, q_, f1_, f2_, f3_;
};

}  // namespace fdlab
