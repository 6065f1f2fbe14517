#include "fdlab/data.hpp"

#include <cmath>
#include <numbers>

#include "fdlab/error.hpp"
#include "fdlab/spectral.hpp"

namespace fdlab {

SpectralField gaussian_data(const Grid& grid, std::size_t n, double amplitude,
                            const std::vector<double>& carriers) {
  if (carriers.empty() || (carriers.size() != 1 && carriers.size() != n)) {
    throw InvalidArgument("gaussian_data: need one carrier or one per component");
  }
  return SpectralField::from_function(grid, n, [&](std::size_t j, double x) {
    const double k = carriers.size() == 1 ? carriers[0] : carriers[j];
    return amplitude * std::exp(-x * x / 4.0) * std::polar(1.0, k * x);
  });
}

double Rng::uniform() {
  // 53 random mantissa bits.
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

SpectralField random_perturbation(const Grid& grid, std::size_t n, int m, Rng& rng,
                                  int packets) {
  if (packets < 1) throw InvalidArgument("random_perturbation: need at least one packet");
  SpectralField f(grid, n);
  for (std::size_t j = 0; j < n; ++j) {
    for (int p = 0; p < packets; ++p) {
      const double center = rng.uniform(-4.0, 4.0);
      const double width = rng.uniform(0.7, 1.5);
      const double carrier = rng.uniform(-3.0, 3.0);
      const cplx weight{rng.normal(), rng.normal()};
      for (std::size_t i = 0; i < grid.points(); ++i) {
        const double y = (grid.x(i) - center) / width;
        f(j, i) += weight * std::exp(-0.5 * y * y) * std::polar(1.0, carrier * grid.x(i));
      }
    }
  }
  const double norm = sobolev_norm(f, m);
  if (!(norm > 0.0)) throw Error("random_perturbation: degenerate draw");
  f *= 1.0 / norm;
  return f;
}

}  // namespace fdlab
