#include "fdlab/spectral.hpp"

#include <cmath>
#include <sstream>

#include "fdlab/error.hpp"

namespace fdlab {
namespace {

void check_order(int order) {
  if (order < 0 || order > kMaxDerivativeOrder) {
    throw InvalidArgument("derivative order must lie in [0, 8], got " + std::to_string(order));
  }
}

cplx ipow(int order) {
  switch (order % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

}  // namespace

cplx derivative_symbol(const Grid& grid, std::size_t k, int order) {
  if (order == 0) return {1.0, 0.0};
  if (order % 2 == 1 && grid.is_nyquist(k)) return {0.0, 0.0};
  return ipow(order) * std::pow(grid.wavenumber(k), order);
}

Spectrum fourier_derivative(const Spectrum& f, int order) {
  check_order(order);
  Spectrum out = f;
  if (order == 0) return out;
  const Grid& g = f.grid();
  for (std::size_t k = 0; k < g.points(); ++k) {
    const cplx sym = derivative_symbol(g, k, order);
    for (std::size_t j = 0; j < f.components(); ++j) out(j, k) *= sym;
  }
  return out;
}

SpectralField fourier_derivative(const SpectralField& f, int order) {
  check_order(order);
  f.require_finite();
  if (order == 0) return f;
  return fourier_derivative(f.to_spectrum(), order).to_physical();
}

double derivative_norm_squared(const Spectrum& f, int order) {
  check_order(order);
  const Grid& g = f.grid();
  double sum = 0.0;
  for (std::size_t k = 0; k < g.points(); ++k) {
    const double w = std::norm(derivative_symbol(g, k, order));
    if (w == 0.0) continue;
    double s = 0.0;
    for (std::size_t j = 0; j < f.components(); ++j) s += std::norm(f(j, k));
    sum += w * s;
  }
  // Parseval with the trapezoid weight dx: dx * sum|f_i|^2 = dx/N sum|fhat_k|^2.
  return sum * g.dx() / static_cast<double>(g.points());
}

double sobolev_norm(const Spectrum& f, int k) {
  check_order(k);
  const Grid& g = f.grid();
  double sum = 0.0;
  for (std::size_t q = 0; q < g.points(); ++q) {
    double w = 0.0;
    for (int l = 0; l <= k; ++l) w += std::norm(derivative_symbol(g, q, l));
    double s = 0.0;
    for (std::size_t j = 0; j < f.components(); ++j) s += std::norm(f(j, q));
    sum += w * s;
  }
  return std::sqrt(sum * g.dx() / static_cast<double>(g.points()));
}

double sobolev_norm(const SpectralField& f, int k) {
  check_order(k);
  f.require_finite();
  return sobolev_norm(f.to_spectrum(), k);
}

std::string DecayWarning::message() const {
  std::ostringstream os;
  os << "component " << component << " has magnitude " << edge_magnitude
     << " at the left edge (tolerance " << tolerance
     << "); truncation of the real line is not justified";
  return os.str();
}

IntegralResult cumulative_integral(const SpectralField& f, double decay_tol) {
  const Grid& g = f.grid();
  IntegralResult result{SpectralField(g, f.components()), {}};
  const double half_dx = 0.5 * g.dx();
  for (std::size_t j = 0; j < f.components(); ++j) {
    auto in = f.component(j);
    auto out = result.field.component(j);
    const double edge = std::abs(in[0]);
    if (edge > decay_tol) result.warnings.push_back({j, edge, decay_tol});
    cplx acc{0.0, 0.0};
    out[0] = acc;
    for (std::size_t i = 1; i < in.size(); ++i) {
      acc += half_dx * (in[i - 1] + in[i]);
      out[i] = acc;
    }
  }
  return result;
}

void dealias_in_place(Spectrum& f) {
  const Grid& g = f.grid();
  for (std::size_t k = 0; k < g.points(); ++k) {
    if (g.resolved(k)) continue;
    for (std::size_t j = 0; j < f.components(); ++j) f(j, k) = 0.0;
  }
}

SpectralField dealias(const SpectralField& f) {
  Spectrum s = f.to_spectrum();
  dealias_in_place(s);
  return s.to_physical();
}

}  // namespace fdlab
