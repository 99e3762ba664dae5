#pragma once

#include <array>
#include <cstddef>
#include <numbers>

namespace nsac {

/// Uniform periodic box [0, length)^dim with n collocation points per axis.
///
/// Physical arrays are row-major with axis 0 slowest. Spectral arrays use the
/// real-to-complex half layout: the last axis stores modes 0..n/2 only.
struct Grid {
  int dim = 3;
  int n = 64;
  double length = 2.0 * std::numbers::pi;

  /// Throws InvalidArgument unless dim in {1,2,3}, n >= 8 is a power of two
  /// and length > 0.
  void validate() const;

  std::size_t size() const noexcept;           ///< n^dim
  std::size_t spectral_size() const noexcept;  ///< n^(dim-1) * (n/2+1)
  int half_n() const noexcept { return n / 2 + 1; }

  double spacing() const noexcept { return length / n; }
  double cell_volume() const noexcept;
  double volume() const noexcept;
  double wavenumber_unit() const noexcept { return 2.0 * std::numbers::pi / length; }

  /// Coordinate of point index i along any axis.
  double coordinate(int i) const noexcept { return spacing() * i; }

  /// Per-axis indices of the flat physical index.
  std::array<int, 3> point_index(std::size_t flat) const noexcept;

  /// Signed integer mode numbers (axes beyond dim are zero) of a flat
  /// spectral index. Full axes map j -> j for j < n/2, j - n otherwise; the
  /// last axis is 0..n/2.
  std::array<int, 3> mode_index(std::size_t flat) const noexcept;

  friend bool operator==(const Grid&, const Grid&) = default;
};

}  // namespace nsac
