#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "nsac/grid.hpp"

namespace nsac {

using Complex = std::complex<double>;

/// FFT plans and per-mode wavenumber tables for one grid.
///
/// Coefficients are normalized so that f(x) = sum_k c_k exp(i k.x), i.e. the
/// forward transform divides by the number of points. Instances are shared
/// and immutable; transforms may be called concurrently.
class FourierBasis {
 public:
  /// Cached basis for the grid (validated on first use).
  static std::shared_ptr<const FourierBasis> for_grid(const Grid& grid);

  explicit FourierBasis(const Grid& grid);
  ~FourierBasis();
  FourierBasis(const FourierBasis&) = delete;
  FourierBasis& operator=(const FourierBasis&) = delete;

  const Grid& grid() const noexcept { return grid_; }

  void forward(std::span<const double> in, std::span<Complex> out) const;
  void inverse(std::span<const Complex> in, std::span<double> out) const;

  /// Wavenumber component used for first derivatives (zero on Nyquist modes).
  double k(int axis, std::size_t idx) const noexcept { return k_[axis][idx]; }
  /// |xi|^2 including the Nyquist magnitude n/2.
  double k2(std::size_t idx) const noexcept { return k2_[idx]; }
  double kabs(std::size_t idx) const noexcept { return kabs_[idx]; }
  /// 2 for modes whose conjugate partner is not stored, 1 otherwise.
  double multiplicity(std::size_t idx) const noexcept { return mult_[idx]; }
  /// Two-thirds-rule mask: false for modes with any |m_axis| >= n/3.
  bool retained(std::size_t idx) const noexcept { return keep_[idx] != 0; }
  /// Largest integer mode number kept by the two-thirds rule.
  int dealias_cutoff() const noexcept { return cutoff_; }

 private:
  Grid grid_;
  void* plan_r2c_ = nullptr;
  void* plan_c2r_ = nullptr;
  std::vector<double> k_[3];
  std::vector<double> k2_;
  std::vector<double> kabs_;
  std::vector<double> mult_;
  std::vector<unsigned char> keep_;
  int cutoff_ = 0;
};

/// Fourier coefficients of a real periodic field in half-spectrum layout.
///
/// Hermitian symmetry of the stored modes is implied for the missing half;
/// is_real_symmetric() checks it within the planes the layout stores twice.
class SpectralField {
 public:
  SpectralField() = default;
  SpectralField(const Grid& grid, std::vector<Complex> coeffs);

  static SpectralField zeros(const Grid& grid);
  static SpectralField from_physical(const Grid& grid, std::span<const double> values);

  std::vector<double> to_physical() const;

  const Grid& grid() const noexcept { return basis_->grid(); }
  const FourierBasis& basis() const noexcept { return *basis_; }
  std::span<const Complex> coeffs() const noexcept { return coeffs_; }
  std::size_t size() const noexcept { return coeffs_.size(); }
  Complex operator[](std::size_t i) const noexcept { return coeffs_[i]; }

  /// Zero-mode coefficient (the spatial mean).
  Complex mean() const noexcept { return coeffs_.empty() ? Complex{} : coeffs_[0]; }

  /// Largest Hermitian-symmetry defect relative to the largest coefficient.
  double hermitian_defect() const;
  bool is_real_symmetric(double tol = 1e-12) const { return hermitian_defect() <= tol; }

  SpectralField& operator+=(const SpectralField& other);
  SpectralField& operator*=(double scale);

 private:
  std::shared_ptr<const FourierBasis> basis_;
  std::vector<Complex> coeffs_;
};

SpectralField operator+(SpectralField a, const SpectralField& b);
SpectralField operator*(double s, SpectralField a);

/// Partial derivative along axis (i k multiplier, Nyquist dropped).
SpectralField derivative(const SpectralField& f, int axis);
/// Laplacian (-|xi|^2 multiplier).
SpectralField laplacian(const SpectralField& f);
std::vector<SpectralField> gradient(const SpectralField& f);
/// Two-thirds-rule truncation.
SpectralField dealias(const SpectralField& f);

/// Sum over all modes of |c_k|^2 weight(k), accounting for the conjugate half.
template <class Weight>
double weighted_power(const SpectralField& f, Weight&& weight) {
  const FourierBasis& b = f.basis();
  double acc = 0.0;
  const auto c = f.coeffs();
  for (std::size_t i = 0; i < c.size(); ++i) {
    acc += b.multiplicity(i) * weight(i) * std::norm(c[i]);
  }
  return acc;
}

}  // namespace nsac
