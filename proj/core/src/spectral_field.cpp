#include "nsac/spectral_field.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

#include "nsac/errors.hpp"

namespace nsac {
namespace {

// FFTW planning is not thread-safe; execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

std::vector<Complex>& complex_scratch(std::size_t n) {
  thread_local std::vector<Complex> buf;
  if (buf.size() < n) buf.resize(n);
  return buf;
}

}  // namespace

std::shared_ptr<const FourierBasis> FourierBasis::for_grid(const Grid& grid) {
  static std::mutex cache_mutex;
  static std::map<std::tuple<int, int, double>, std::shared_ptr<const FourierBasis>> cache;
  std::lock_guard lock(cache_mutex);
  auto key = std::make_tuple(grid.dim, grid.n, grid.length);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto basis = std::make_shared<const FourierBasis>(grid);
  cache.emplace(key, basis);
  return basis;
}

FourierBasis::FourierBasis(const Grid& grid) : grid_(grid) {
  grid_.validate();
  const int dim = grid_.dim;
  const int n = grid_.n;
  int dims[3] = {n, n, n};

  {
    std::lock_guard lock(planner_mutex());
    std::vector<double> r(grid_.size());
    std::vector<Complex> c(grid_.spectral_size());
    // ESTIMATE keeps the algorithm choice deterministic across runs.
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    plan_r2c_ = fftw_plan_dft_r2c(dim, dims, r.data(),
                                  reinterpret_cast<fftw_complex*>(c.data()), flags);
    plan_c2r_ = fftw_plan_dft_c2r(dim, dims, reinterpret_cast<fftw_complex*>(c.data()),
                                  r.data(), flags | FFTW_DESTROY_INPUT);
  }
  if (plan_r2c_ == nullptr || plan_c2r_ == nullptr) {
    throw std::runtime_error("FFTW planning failed");
  }

  const std::size_t ns = grid_.spectral_size();
  const double unit = grid_.wavenumber_unit();
  // Largest mode strictly below n/3.
  cutoff_ = (n % 3 == 0) ? n / 3 - 1 : n / 3;
  for (auto& v : k_) v.assign(ns, 0.0);
  k2_.resize(ns);
  kabs_.resize(ns);
  mult_.resize(ns);
  keep_.resize(ns);
  for (std::size_t i = 0; i < ns; ++i) {
    const auto m = grid_.mode_index(i);
    double k2 = 0.0;
    bool keep = true;
    for (int d = 0; d < dim; ++d) {
      const bool nyquist = std::abs(m[d]) == n / 2;
      k_[d][i] = nyquist ? 0.0 : unit * m[d];
      const double kd = unit * m[d];
      k2 += kd * kd;
      if (std::abs(m[d]) > cutoff_) keep = false;
    }
    k2_[i] = k2;
    kabs_[i] = std::sqrt(k2);
    const int last = m[dim - 1];
    mult_[i] = (last == 0 || last == n / 2) ? 1.0 : 2.0;
    keep_[i] = keep ? 1 : 0;
  }
}

FourierBasis::~FourierBasis() {
  std::lock_guard lock(planner_mutex());
  if (plan_r2c_) fftw_destroy_plan(static_cast<fftw_plan>(plan_r2c_));
  if (plan_c2r_) fftw_destroy_plan(static_cast<fftw_plan>(plan_c2r_));
}

void FourierBasis::forward(std::span<const double> in, std::span<Complex> out) const {
  if (in.size() != grid_.size() || out.size() != grid_.spectral_size()) {
    throw InvalidArgument("FourierBasis::forward: size mismatch");
  }
  // r2c does not modify its input, but the API takes a non-const pointer.
  fftw_execute_dft_r2c(static_cast<fftw_plan>(plan_r2c_), const_cast<double*>(in.data()),
                       reinterpret_cast<fftw_complex*>(out.data()));
  const double inv_n = 1.0 / static_cast<double>(grid_.size());
  for (auto& c : out) c *= inv_n;
}

void FourierBasis::inverse(std::span<const Complex> in, std::span<double> out) const {
  if (in.size() != grid_.spectral_size() || out.size() != grid_.size()) {
    throw InvalidArgument("FourierBasis::inverse: size mismatch");
  }
  auto& scratch = complex_scratch(in.size());
  std::copy(in.begin(), in.end(), scratch.begin());
  fftw_execute_dft_c2r(static_cast<fftw_plan>(plan_c2r_),
                       reinterpret_cast<fftw_complex*>(scratch.data()), out.data());
}

SpectralField::SpectralField(const Grid& grid, std::vector<Complex> coeffs)
    : basis_(FourierBasis::for_grid(grid)), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != grid.spectral_size()) {
    throw InvalidArgument("SpectralField: coefficient count does not match grid");
  }
}

SpectralField SpectralField::zeros(const Grid& grid) {
  return SpectralField(grid, std::vector<Complex>(grid.spectral_size()));
}

SpectralField SpectralField::from_physical(const Grid& grid, std::span<const double> values) {
  auto basis = FourierBasis::for_grid(grid);
  std::vector<Complex> c(grid.spectral_size());
  basis->forward(values, c);
  return SpectralField(grid, std::move(c));
}

std::vector<double> SpectralField::to_physical() const {
  std::vector<double> out(grid().size());
  basis_->inverse(coeffs_, out);
  return out;
}

double SpectralField::hermitian_defect() const {
  const Grid& g = grid();
  double cmax = 0.0;
  for (const auto& c : coeffs_) cmax = std::max(cmax, std::abs(c));
  if (cmax == 0.0) return 0.0;
  const int n = g.n;
  const int hn = g.half_n();
  double defect = 0.0;
  auto flat = [&](int j0, int j1, int last) -> std::size_t {
    if (g.dim == 1) return static_cast<std::size_t>(last);
    if (g.dim == 2) return static_cast<std::size_t>(j0) * hn + last;
    return (static_cast<std::size_t>(j0) * n + j1) * hn + last;
  };
  const int n0 = g.dim >= 2 ? n : 1;
  const int n1 = g.dim >= 3 ? n : 1;
  for (int last : {0, n / 2}) {
    for (int j0 = 0; j0 < n0; ++j0) {
      for (int j1 = 0; j1 < n1; ++j1) {
        const int c0 = g.dim >= 2 ? (n - j0) % n : 0;
        const int c1 = g.dim >= 3 ? (n - j1) % n : 0;
        const Complex a = coeffs_[flat(j0, j1, last)];
        const Complex b = coeffs_[flat(c0, c1, last)];
        defect = std::max(defect, std::abs(a - std::conj(b)));
      }
    }
  }
  return defect / cmax;
}

SpectralField& SpectralField::operator+=(const SpectralField& other) {
  if (other.grid() != grid()) throw InvalidArgument("SpectralField: grid mismatch in +=");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

SpectralField& SpectralField::operator*=(double scale) {
  for (auto& c : coeffs_) c *= scale;
  return *this;
}

SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
SpectralField operator*(double s, SpectralField a) { return a *= s; }

SpectralField derivative(const SpectralField& f, int axis) {
  const FourierBasis& b = f.basis();
  if (axis < 0 || axis >= f.grid().dim) throw InvalidArgument("derivative: axis out of range");
  std::vector<Complex> out(f.size());
  const auto c = f.coeffs();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = Complex(0.0, b.k(axis, i)) * c[i];
  return SpectralField(f.grid(), std::move(out));
}

SpectralField laplacian(const SpectralField& f) {
  const FourierBasis& b = f.basis();
  std::vector<Complex> out(f.size());
  const auto c = f.coeffs();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = -b.k2(i) * c[i];
  return SpectralField(f.grid(), std::move(out));
}

std::vector<SpectralField> gradient(const SpectralField& f) {
  std::vector<SpectralField> g;
  g.reserve(static_cast<std::size_t>(f.grid().dim));
  for (int d = 0; d < f.grid().dim; ++d) g.push_back(derivative(f, d));
  return g;
}

SpectralField dealias(const SpectralField& f) {
  const FourierBasis& b = f.basis();
  std::vector<Complex> out(f.coeffs().begin(), f.coeffs().end());
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (!b.retained(i)) out[i] = 0.0;
  }
  return SpectralField(f.grid(), std::move(out));
}

}  // namespace nsac
