#include "fdlab/field.hpp"

#include <cmath>

#include "fdlab/error.hpp"
#include "fdlab/fft.hpp"

namespace fdlab {
namespace detail {

Block::Block(Grid grid, std::size_t components)
    : grid_(grid), components_(components), data_(components * grid.points()) {
  if (components == 0) throw InvalidArgument("a field needs at least one component");
}

void Block::require_same_shape(const Block& other) const {
  if (!same_shape(other)) throw InvalidArgument("field grid or component count mismatch");
}

}  // namespace detail

SpectralField::SpectralField(Grid grid, std::size_t components) : Block(grid, components) {}

SpectralField SpectralField::from_function(
    const Grid& grid, std::size_t components,
    const std::function<cplx(std::size_t, double)>& f) {
  SpectralField out(grid, components);
  for (std::size_t j = 0; j < components; ++j) {
    for (std::size_t i = 0; i < grid.points(); ++i) out(j, i) = f(j, grid.x(i));
  }
  return out;
}

Spectrum SpectralField::to_spectrum() const {
  Spectrum s(grid_, components_);
  for (std::size_t j = 0; j < components_; ++j) fft::forward(component(j), s.component(j));
  return s;
}

void SpectralField::require_finite() const {
  for (std::size_t j = 0; j < components_; ++j) {
    auto c = component(j);
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (!std::isfinite(c[i].real()) || !std::isfinite(c[i].imag())) {
        throw NonFiniteError(j, i);
      }
    }
  }
}

bool SpectralField::is_finite() const {
  for (const auto& c : data_) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
  }
  return true;
}

double SpectralField::sup_norm() const {
  double best = 0.0;
  for (std::size_t i = 0; i < points(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < components_; ++j) s += std::norm((*this)(j, i));
    best = std::max(best, s);
  }
  return std::sqrt(best);
}

SpectralField& SpectralField::operator+=(const SpectralField& o) {
  require_same_shape(o);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& o) {
  require_same_shape(o);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

SpectralField& SpectralField::operator*=(cplx s) {
  for (auto& c : data_) c *= s;
  return *this;
}

SpectralField SpectralField::conj() const {
  SpectralField out = *this;
  for (auto& c : out.data_) c = std::conj(c);
  return out;
}

Spectrum::Spectrum(Grid grid, std::size_t components) : Block(grid, components) {}

SpectralField Spectrum::to_physical() const {
  SpectralField f(grid_, components_);
  for (std::size_t j = 0; j < components_; ++j) fft::inverse(component(j), f.component(j));
  return f;
}

Spectrum& Spectrum::operator+=(const Spectrum& o) {
  require_same_shape(o);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

Spectrum& Spectrum::operator-=(const Spectrum& o) {
  require_same_shape(o);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

Spectrum& Spectrum::operator*=(cplx s) {
  for (auto& c : data_) c *= s;
  return *this;
}

}  // namespace fdlab
