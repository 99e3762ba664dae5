#include "nsac/grid.hpp"

#include <cmath>
#include <string>

#include "nsac/errors.hpp"

namespace nsac {

void Grid::validate() const {
  if (dim < 1 || dim > 3) {
    throw InvalidArgument("grid.dim must be 1, 2 or 3 (got " + std::to_string(dim) + ")");
  }
  if (n < 8 || (n & (n - 1)) != 0) {
    throw InvalidArgument("grid.n must be a power of two >= 8 (got " + std::to_string(n) + ")");
  }
  if (!(length > 0.0) || !std::isfinite(length)) {
    throw InvalidArgument("grid.length must be positive");
  }
}

std::size_t Grid::size() const noexcept {
  std::size_t s = 1;
  for (int d = 0; d < dim; ++d) s *= static_cast<std::size_t>(n);
  return s;
}

std::size_t Grid::spectral_size() const noexcept {
  std::size_t s = static_cast<std::size_t>(half_n());
  for (int d = 1; d < dim; ++d) s *= static_cast<std::size_t>(n);
  return s;
}

double Grid::cell_volume() const noexcept { return std::pow(spacing(), dim); }

double Grid::volume() const noexcept { return std::pow(length, dim); }

std::array<int, 3> Grid::point_index(std::size_t flat) const noexcept {
  std::array<int, 3> idx{0, 0, 0};
  for (int d = dim - 1; d >= 0; --d) {
    idx[d] = static_cast<int>(flat % static_cast<std::size_t>(n));
    flat /= static_cast<std::size_t>(n);
  }
  return idx;
}

std::array<int, 3> Grid::mode_index(std::size_t flat) const noexcept {
  std::array<int, 3> m{0, 0, 0};
  const auto hn = static_cast<std::size_t>(half_n());
  m[dim - 1] = static_cast<int>(flat % hn);
  flat /= hn;
  for (int d = dim - 2; d >= 0; --d) {
    const int j = static_cast<int>(flat % static_cast<std::size_t>(n));
    flat /= static_cast<std::size_t>(n);
    m[d] = j < n / 2 ? j : j - n;
  }
  return m;
}

}  // namespace nsac
