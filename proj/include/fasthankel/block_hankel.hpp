#pragma once

// Multi-level block structures: BAAB (block anti-circulant with
// anti-circulant blocks), BHHB (block Hankel with Hankel blocks), and the
// general level-k block Hankel tensor.
//
// Index convention for a level-2 mode of size n * N: the flat index is
// i + n * j with inner (within-block) index i and block index j, i.e. the
// column-stacking vec of an n x N matrix. vec / vec^{-1} are always
// column-stacking.

#include <span>
#include <vector>

#include "fasthankel/hankel.hpp"
#include "fasthankel/tensor.hpp"

namespace fasthankel {

class BaabTensor {
 public:
  BaabTensor(std::size_t order, ComplexMatrix compressed);

  std::size_t order() const noexcept { return order_; }
  std::size_t inner_dim() const noexcept { return static_cast<std::size_t>(c_.rows()); }
  std::size_t outer_dim() const noexcept { return static_cast<std::size_t>(c_.cols()); }
  std::size_t mode_size() const noexcept { return inner_dim() * outer_dim(); }
  const ComplexMatrix& compressed() const noexcept { return c_; }
  /// ifft2(C) = (1/nN) conj(F_n) C conj(F_N).
  const ComplexMatrix& spectrum() const noexcept { return spectrum_; }

 private:
  std::size_t order_;
  ComplexMatrix c_;
  ComplexMatrix spectrum_;
};

class BhhbTensor {
 public:
  BhhbTensor(Shape block_sizes, Shape outer_sizes, ComplexMatrix generating);

  std::size_t order() const noexcept { return block_sizes_.size(); }
  const Shape& block_sizes() const noexcept { return block_sizes_; }
  const Shape& outer_sizes() const noexcept { return outer_sizes_; }
  std::size_t mode_size(std::size_t p) const { return block_sizes_.at(p) * outer_sizes_.at(p); }
  Shape shape() const;
  bool is_square() const noexcept;
  /// (sum n_p - m + 1) x (sum N_p - m + 1).
  const ComplexMatrix& generating() const noexcept { return h_; }
  const ComplexMatrix& spectrum() const noexcept { return spectrum_; }

  Complex entry(std::span<const std::size_t> index) const;

  /// Same tensor with mode p moved to the front.
  BhhbTensor with_leading_mode(std::size_t p) const;

 private:
  Shape block_sizes_;
  Shape outer_sizes_;
  ComplexMatrix h_;
  ComplexMatrix spectrum_;
};

/// Level-k block Hankel tensor of order m. level_dims[l][p] is the size of
/// mode p at level l (l = 0 innermost). A mode-p index is
/// i^(0) + n^(0) (i^(1) + n^(1) (...)). The generating tensor is row-major
/// with shape (d^(k-1), ..., d^(0)), d^(l) = sum_p level_dims[l][p] - m + 1,
/// and the entry is G[sum_p i_p^(k-1), ..., sum_p i_p^(0)].
class LevelKHankelTensor {
 public:
  LevelKHankelTensor(std::vector<Shape> level_dims, DenseTensor generating);

  static LevelKHankelTensor from_hankel(const HankelTensor& h);
  static LevelKHankelTensor from_bhhb(const BhhbTensor& h);

  std::size_t levels() const noexcept { return level_dims_.size(); }
  std::size_t order() const noexcept { return level_dims_.front().size(); }
  const std::vector<Shape>& level_dims() const noexcept { return level_dims_; }
  std::size_t mode_size(std::size_t p) const;
  /// Row-major shape (n_p^(k-1), ..., n_p^(0)) of a mode-p vector.
  Shape mode_array_shape(std::size_t p) const;
  const DenseTensor& generating() const noexcept { return g_; }
  const DenseTensor& spectrum() const noexcept { return spectrum_; }

 private:
  std::vector<Shape> level_dims_;
  DenseTensor g_;
  DenseTensor spectrum_;
};

/// Y = fft2(ifft2(C) .* fft2(X_2) .* ... ), y = vec(Y); xs holds x_2..x_m.
ComplexVector baab_tvp_partial(const BaabTensor& c, std::span<const ComplexVector> xs);
/// <ifft2(C), fft2(X_1) .* ... .* fft2(X_m)>, unconjugated inner product.
Complex baab_tvp_full(const BaabTensor& c, std::span<const ComplexVector> xs);

/// Result kept as the n_1 x N_1 matrix Y(0:n_1-1, 0:N_1-1).
ComplexMatrix bhhb_tvp_partial_matrix(const BhhbTensor& h, std::span<const ComplexVector> xs);
/// vec of bhhb_tvp_partial_matrix, length n_1 N_1.
ComplexVector bhhb_tvp_partial(const BhhbTensor& h, std::span<const ComplexVector> xs);
Complex bhhb_tvp_full(const BhhbTensor& h, std::span<const ComplexVector> xs);

/// H x_2 U_2 ... x_m U_m via one BHHB product per column combination.
DenseTensor bhhb_tmp(const BhhbTensor& h, std::span<const ComplexMatrix> factors);

ComplexVector levelk_tvp_partial(const LevelKHankelTensor& t, std::span<const ComplexVector> xs);
Complex levelk_tvp_full(const LevelKHankelTensor& t, std::span<const ComplexVector> xs);

/// vec^{-1}_{n,N}: reshape a length-nN vector column by column.
ComplexMatrix unvec(const ComplexVector& v, std::size_t rows, std::size_t cols);
ComplexVector vec(const ComplexMatrix& m);

}  // namespace fasthankel
