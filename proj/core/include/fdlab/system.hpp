#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "fdlab/nonlinearity.hpp"

namespace fdlab {

/// (d_t - i M_a d^4 - M_b d^3 - i M_lambda d^2) Q = F(Q, Q_x, Q_xx).
struct SystemSpec {
  std::vector<double> a;       ///< fourth-order dispersion, every entry nonzero
  std::vector<double> b;       ///< third-order dispersion
  std::vector<double> lambda;  ///< second-order dispersion
  NonlinearitySpec nonlinearity;

  std::size_t n() const { return nonlinearity.n(); }

  /// Throws InvalidArgument when vector lengths disagree with n or some a_j = 0.
  void check() const;

  /// Same dispersion with F = 0.
  SystemSpec linear_part() const;
};

/// Single-component fourth-order NLS with the six-term nonlinearity of the
/// Heisenberg spin-chain continuum limit:
///   (d_t - i nu d^4 - i d^2) psi = mu1 |psi|^2 psi + mu2 |psi|^4 psi
///     + mu3 (psi_x)^2 conj(psi) + mu4 |psi_x|^2 psi
///     + mu5 psi^2 conj(psi_xx) + mu6 |psi|^2 psi_xx.
SystemSpec builtin_4shro(double nu, const std::array<double, 6>& mu);

/// n-component fourth-order NLS for ultrashort pulses in a fiber:
///   q_t = i alpha (q_xx/2 + q q* q) - eps (q_xxx/2 + 3/2 (q_x q* q + q q* q_x))
///       + i gamma (q_xxxx/2 + q (q_x* q)_x + q_x q_x* q + 2 (q_xx q* q + q q* q_xx)
///                  + 3 (q_x q* q_x + q (q* q)^2))
/// with q a column vector and * the Hermitian transpose.
SystemSpec builtin_wzy(double alpha, double eps, double gamma, std::size_t n);

/// Matrix equation for q in C^{k0 x (n0-k0)} on the compact complex
/// Grassmannian, flattened column-major: component j = j2 * k0 + j1 holds
/// q(j1, j2). Includes the two nonlocal terms with coefficient
/// -2i(beta + 8 gamma). Products are expanded symbolically.
SystemSpec builtin_grassmannian(double alpha, double beta, double gamma, int k0, int n0);

}  // namespace fdlab
