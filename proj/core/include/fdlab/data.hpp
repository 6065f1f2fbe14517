#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "fdlab/field.hpp"

namespace fdlab {

/// Q0_j(x) = amplitude * exp(-x^2 / 4) * exp(i k_j x). `carriers` holds one
/// k_j per component (a single entry is broadcast).
SpectralField gaussian_data(const Grid& grid, std::size_t n, double amplitude,
                            const std::vector<double>& carriers = {0.0});

/// Deterministic random source: mt19937_64 with fixed-formula uniform and
/// normal draws, so sequences do not depend on the standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform();  ///< [0, 1)
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double normal();   ///< Box-Muller, standard normal

 private:
  std::mt19937_64 engine_;
};

/// Sum of a few random Gaussian packets (centers in [-4, 4], widths in
/// [0.7, 1.5], carriers in [-3, 3]) normalized to unit H^m norm.
SpectralField random_perturbation(const Grid& grid, std::size_t n, int m, Rng& rng,
                                  int packets = 4);

}  // namespace fdlab
