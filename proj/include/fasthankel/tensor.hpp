#pragma once

// Dense complex tensors, the contraction-on-first-index mode product, and
// brute-force builders for every structured tensor in the library. Anything
// in here that touches n^m entries is a reference path, never a fast path.

#include <atomic>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace fasthankel {

using Complex = std::complex<double>;
using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;
using Shape = std::vector<std::size_t>;

/// Thrown when operand sizes do not fit together.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when a numerical step has no meaningful answer (singular TLS
/// block, zero signal, defective eigensystem).
class DegenerateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Default bound on the number of entries any dense oracle may allocate.
inline constexpr std::size_t kDefaultDenseCap = 10'000'000;

std::size_t shape_product(std::span<const std::size_t> shape);
std::string shape_string(std::span<const std::size_t> shape);

/// Row-major (last index fastest) complex tensor of order >= 1.
class DenseTensor {
 public:
  DenseTensor() = default;
  explicit DenseTensor(Shape shape);
  DenseTensor(Shape shape, std::vector<Complex> data);

  const Shape& shape() const noexcept { return shape_; }
  std::size_t order() const noexcept { return shape_.size(); }
  std::size_t dim(std::size_t p) const { return shape_.at(p); }
  std::size_t size() const noexcept { return data_.size(); }

  std::span<Complex> data() noexcept { return data_; }
  std::span<const Complex> data() const noexcept { return data_; }

  std::size_t offset(std::span<const std::size_t> index) const;
  Complex& operator()(std::span<const std::size_t> index) { return data_[offset(index)]; }
  const Complex& operator()(std::span<const std::size_t> index) const {
    return data_[offset(index)];
  }
  Complex& operator()(std::initializer_list<std::size_t> index) {
    return (*this)(std::span<const std::size_t>(index.begin(), index.size()));
  }
  const Complex& operator()(std::initializer_list<std::size_t> index) const {
    return (*this)(std::span<const std::size_t>(index.begin(), index.size()));
  }

  double frobenius_norm() const;

  DenseTensor& operator+=(const DenseTensor& other);
  DenseTensor& operator-=(const DenseTensor& other);

 private:
  Shape shape_;
  std::vector<Complex> data_;
};

DenseTensor operator+(DenseTensor a, const DenseTensor& b);
DenseTensor operator-(DenseTensor a, const DenseTensor& b);

/// ||a - b||_F / ||b||_F, or the absolute difference when b is zero.
double relative_error(const DenseTensor& a, const DenseTensor& b);

/// (A x_p M)_{..j..} = sum_i A_{..i..} M_{ij}. No conjugation, no transpose.
/// Modes are 0-based.
DenseTensor mode_product(const DenseTensor& a, std::size_t p, const ComplexMatrix& m);

/// y_i = sum A_{i,i2..im} x_2[i2] ... x_m[im]; xs holds x_2..x_m.
ComplexVector contract_partial(const DenseTensor& a, std::span<const ComplexVector> xs);

/// Full contraction of every mode; xs holds x_1..x_m.
Complex contract_full(const DenseTensor& a, std::span<const ComplexVector> xs);

/// Mode-p unfolding: n_p rows, remaining indices enumerated row-major
/// (lowest remaining mode slowest) across the columns.
ComplexMatrix unfold(const DenseTensor& a, std::size_t p);

/// Inverse of unfold for a tensor of the given shape.
DenseTensor fold(const ComplexMatrix& m, std::size_t p, const Shape& shape);

/// Number of dense oracle tensors built so far by the builders below.
std::size_t dense_build_count() noexcept;

/// Entry (i_1..i_m) = h[i_1 + ... + i_m].
DenseTensor build_hankel_dense(const ComplexVector& h, const Shape& shape,
                               std::size_t max_entries = kDefaultDenseCap);

/// Entry (i_1..i_m) = c[(i_1 + ... + i_m) mod n], order m, dimension n = len(c).
DenseTensor build_acirc_dense(const ComplexVector& c, std::size_t order,
                              std::size_t max_entries = kDefaultDenseCap);

/// Block Hankel tensor with Hankel blocks. Mode p has size
/// block_sizes[p] * outer_sizes[p]; its flat index is i + block_sizes[p] * j
/// for inner index i and block index j. Entry = H(sum i_p, sum j_p).
DenseTensor build_bhhb_dense(const ComplexMatrix& generating, const Shape& block_sizes,
                             const Shape& outer_sizes,
                             std::size_t max_entries = kDefaultDenseCap);

/// Block anti-circulant tensor with anti-circulant blocks, compressed
/// generating matrix C (n x N). Entry = C((sum i_p) mod n, (sum j_p) mod N).
DenseTensor build_baab_dense(const ComplexMatrix& compressed, std::size_t order,
                             std::size_t max_entries = kDefaultDenseCap);

}  // namespace fasthankel
