#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "fdlab/grid.hpp"

namespace fdlab {

using cplx = std::complex<double>;

namespace detail {

/// Component-major n x N block of complex samples on a grid.
class Block {
 public:
  Block(Grid grid, std::size_t components);

  const Grid& grid() const { return grid_; }
  std::size_t components() const { return components_; }
  std::size_t points() const { return grid_.points(); }

  std::span<cplx> component(std::size_t j) {
    return {data_.data() + j * points(), points()};
  }
  std::span<const cplx> component(std::size_t j) const {
    return {data_.data() + j * points(), points()};
  }

  cplx& operator()(std::size_t j, std::size_t i) { return data_[j * points() + i]; }
  const cplx& operator()(std::size_t j, std::size_t i) const { return data_[j * points() + i]; }

  std::span<cplx> values() { return data_; }
  std::span<const cplx> values() const { return data_; }

  bool same_shape(const Block& other) const {
    return grid_ == other.grid_ && components_ == other.components_;
  }

 protected:
  void require_same_shape(const Block& other) const;

  Grid grid_;
  std::size_t components_;
  std::vector<cplx> data_;
};

}  // namespace detail

class Spectrum;

/// n-component complex field sampled on a uniform periodic grid.
class SpectralField : public detail::Block {
 public:
  SpectralField(Grid grid, std::size_t components);

  static SpectralField from_function(
      const Grid& grid, std::size_t components,
      const std::function<cplx(std::size_t component, double x)>& f);

  Spectrum to_spectrum() const;

  /// Throws NonFiniteError naming the first non-finite sample.
  void require_finite() const;
  bool is_finite() const;

  /// Largest pointwise Euclidean norm |Q(x)| over the grid.
  double sup_norm() const;

  SpectralField& operator+=(const SpectralField& o);
  SpectralField& operator-=(const SpectralField& o);
  SpectralField& operator*=(cplx s);

  friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
  friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
  friend SpectralField operator*(cplx s, SpectralField a) { return a *= s; }

  SpectralField conj() const;
};

/// Frequency-space mirror of a SpectralField: per component, the
/// unnormalized DFT coefficients in FFT storage order.
class Spectrum : public detail::Block {
 public:
  Spectrum(Grid grid, std::size_t components);

  SpectralField to_physical() const;

  Spectrum& operator+=(const Spectrum& o);
  Spectrum& operator-=(const Spectrum& o);
  Spectrum& operator*=(cplx s);
  friend Spectrum operator-(Spectrum a, const Spectrum& b) { return a -= b; }
};

}  // namespace fdlab
