#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "fdlab/field.hpp"

namespace fdlab {

inline constexpr int kMaxDerivativeOrder = 8;
inline constexpr double kDefaultDecayTol = 1e-12;

/// Multiplies the frequency content by (i xi)^order. The Nyquist mode is
/// zeroed for odd orders. Rejects non-finite input and order > 8.
SpectralField fourier_derivative(const SpectralField& f, int order);
Spectrum fourier_derivative(const Spectrum& f, int order);

/// (i xi)^order at FFT index k, with the odd-order Nyquist convention.
cplx derivative_symbol(const Grid& grid, std::size_t k, int order);

/// H^k norm (sum over l <= k of ||d^l f||^2)^(1/2), evaluated in frequency
/// space. Consistent with dx-weighted physical quadrature of the spectral
/// derivatives.
double sobolev_norm(const SpectralField& f, int k);
double sobolev_norm(const Spectrum& f, int k);

/// Squared seminorm ||d^l f||^2 for a single derivative order.
double derivative_norm_squared(const Spectrum& f, int order);

inline double l2_norm(const SpectralField& f) { return sobolev_norm(f, 0); }

/// Raised when integrand mass sits at the left edge, where the periodic
/// box stands in for the real line.
struct DecayWarning {
  std::size_t component;
  double edge_magnitude;
  double tolerance;
  std::string message() const;
};

struct IntegralResult {
  SpectralField field;
  std::vector<DecayWarning> warnings;
};

/// Cumulative trapezoid g(x_i) = int_{-half_width}^{x_i} f dy per component;
/// g(x_0) = 0. Components whose left-edge magnitude exceeds decay_tol get a
/// warning but are still integrated.
IntegralResult cumulative_integral(const SpectralField& f, double decay_tol = kDefaultDecayTol);

/// Two-thirds rule: zero every mode with 3|k| > N.
SpectralField dealias(const SpectralField& f);
void dealias_in_place(Spectrum& f);

}  // namespace fdlab
