#include "fdlab/grid.hpp"

#include <cmath>
#include <numbers>

#include "fdlab/error.hpp"

namespace fdlab {

Grid::Grid(double half_width, std::size_t points)
    : half_width_(half_width), points_(points), dx_(0.0) {
  if (!(half_width > 0.0) || !std::isfinite(half_width)) {
    throw InvalidArgument("grid half_width must be positive and finite");
  }
  if (points < 2 || points % 2 != 0) {
    throw InvalidArgument("grid point count must be a positive even integer");
  }
  dx_ = 2.0 * half_width / static_cast<double>(points);
}

double Grid::wavenumber(std::size_t k) const {
  return std::numbers::pi * static_cast<double>(mode(k)) / half_width_;
}

double Grid::max_wavenumber() const {
  return std::numbers::pi * static_cast<double>(points_ / 2) / half_width_;
}

double Grid::dealiased_max_wavenumber() const {
  return std::numbers::pi * static_cast<double>(points_ / 3) / half_width_;
}

}  // namespace fdlab
