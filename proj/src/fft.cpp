#include "fasthankel/fft.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <utility>

#include <fftw3.h>

namespace fasthankel {

namespace {

// std::complex<double> is layout-compatible with fftw_complex.
fftw_complex* as_fftw(Complex* p) { return reinterpret_cast<fftw_complex*>(p); }

class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(std::span<const std::size_t> shape, FftDirection dir) {
    Key key{std::vector<int>(shape.begin(), shape.end()), dir == FftDirection::Forward};
    std::lock_guard lock(mutex_);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    // Planned in place on a scratch buffer; FFTW_UNALIGNED lets the plan run
    // on any caller buffer through fftw_execute_dft.
    std::vector<Complex> scratch(shape_product(shape));
    fftw_plan plan = fftw_plan_dft(static_cast<int>(key.first.size()), key.first.data(),
                                   as_fftw(scratch.data()), as_fftw(scratch.data()),
                                   key.second ? FFTW_FORWARD : FFTW_BACKWARD,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (plan == nullptr) throw std::runtime_error("FFTW failed to create a plan");
    plans_.emplace(std::move(key), plan);
    return plan;
  }

 private:
  using Key = std::pair<std::vector<int>, bool>;
  std::mutex mutex_;
  std::map<Key, fftw_plan> plans_;
};

PlanCache& plan_cache() {
  static PlanCache cache;
  return cache;
}

}  // namespace

void transform_inplace(std::span<Complex> data, std::span<const std::size_t> shape,
                       FftDirection dir) {
  if (shape.empty()) throw DimensionError("transform needs at least one axis");
  const std::size_t total = shape_product(shape);
  if (total == 0) throw DimensionError("transform of an empty array");
  if (data.size() != total) throw DimensionError("transform buffer does not match shape");
  fftw_plan plan = plan_cache().get(shape, dir);
  fftw_execute_dft(plan, as_fftw(data.data()), as_fftw(data.data()));
  if (dir == FftDirection::Inverse) {
    const double scale = 1.0 / static_cast<double>(total);
    for (Complex& v : data) v *= scale;
  }
}

ComplexVector fft(const ComplexVector& v) {
  ComplexVector out = v;
  const std::size_t n = static_cast<std::size_t>(v.size());
  transform_inplace({out.data(), n}, std::span<const std::size_t>(&n, 1), FftDirection::Forward);
  return out;
}

ComplexVector ifft(const ComplexVector& v) {
  ComplexVector out = v;
  const std::size_t n = static_cast<std::size_t>(v.size());
  transform_inplace({out.data(), n}, std::span<const std::size_t>(&n, 1), FftDirection::Inverse);
  return out;
}

// A column-major n x N matrix is a row-major N x n array.
ComplexMatrix fft2(const ComplexMatrix& m) {
  ComplexMatrix out = m;
  const std::size_t shape[2] = {static_cast<std::size_t>(m.cols()),
                                static_cast<std::size_t>(m.rows())};
  transform_inplace({out.data(), static_cast<std::size_t>(out.size())}, shape,
                    FftDirection::Forward);
  return out;
}

ComplexMatrix ifft2(const ComplexMatrix& m) {
  ComplexMatrix out = m;
  const std::size_t shape[2] = {static_cast<std::size_t>(m.cols()),
                                static_cast<std::size_t>(m.rows())};
  transform_inplace({out.data(), static_cast<std::size_t>(out.size())}, shape,
                    FftDirection::Inverse);
  return out;
}

DenseTensor fftn(const DenseTensor& t) {
  DenseTensor out = t;
  transform_inplace(out.data(), out.shape(), FftDirection::Forward);
  return out;
}

DenseTensor ifftn(const DenseTensor& t) {
  DenseTensor out = t;
  transform_inplace(out.data(), out.shape(), FftDirection::Inverse);
  return out;
}

ComplexMatrix fourier_matrix(std::size_t n) {
  ComplexMatrix f(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      // Reduce jk mod n first so large n keeps full phase accuracy.
      const double angle = -2.0 * std::numbers::pi * static_cast<double>((j * k) % n) /
                           static_cast<double>(n);
      f(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) = std::polar(1.0, angle);
    }
  }
  return f;
}

}  // namespace fasthankel
