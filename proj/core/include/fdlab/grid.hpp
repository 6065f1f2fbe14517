#pragma once

#include <cstddef>

namespace fdlab {

/// Uniform periodic grid on [-half_width, half_width).
///
/// Wavenumbers are indexed in FFT storage order: index k < N/2 carries
/// mode k, index k >= N/2 carries mode k - N. The mode -N/2 is the Nyquist
/// mode and has no positive partner.
class Grid {
 public:
  Grid(double half_width, std::size_t points);

  double half_width() const { return half_width_; }
  std::size_t points() const { return points_; }
  double dx() const { return dx_; }
  double length() const { return 2.0 * half_width_; }

  /// Physical coordinate of sample i.
  double x(std::size_t i) const { return -half_width_ + static_cast<double>(i) * dx_; }

  /// Signed integer mode number stored at FFT index k.
  long mode(std::size_t k) const {
    const auto n = static_cast<long>(points_);
    const auto kk = static_cast<long>(k);
    return kk < n / 2 ? kk : kk - n;
  }

  /// Angular wavenumber pi * mode / half_width at FFT index k.
  double wavenumber(std::size_t k) const;

  bool is_nyquist(std::size_t k) const { return k == points_ / 2; }

  /// Largest |wavenumber| on the grid (the Nyquist magnitude).
  double max_wavenumber() const;

  /// Largest |wavenumber| kept by the two-thirds rule.
  double dealiased_max_wavenumber() const;

  /// True when mode k survives the two-thirds rule (3|k| <= N).
  bool resolved(std::size_t k) const {
    const long m = mode(k);
    return 3 * (m < 0 ? -m : m) <= static_cast<long>(points_);
  }

  friend bool operator==(const Grid& a, const Grid& b) {
    return a.half_width_ == b.half_width_ && a.points_ == b.points_;
  }

 private:
  double half_width_;
  std::size_t points_;
  double dx_;
};

}  // namespace fdlab
