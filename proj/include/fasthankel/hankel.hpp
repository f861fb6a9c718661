#pragma once

// Anti-circulant and Hankel tensors and their FFT-based tensor-vector
// products. Neither type ever stores more than its generating vector and the
// inverse DFT of it.

#include <span>
#include <vector>

#include "fasthankel/tensor.hpp"

namespace fasthankel {

/// Square tensor of order m and dimension n whose entry depends only on
/// (i_1 + ... + i_m) mod n. Fully described by the compressed generating
/// vector c (the first column C(:, 0, ..., 0)).
class AntiCirculantTensor {
 public:
  AntiCirculantTensor(std::size_t order, ComplexVector compressed);

  std::size_t order() const noexcept { return order_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(c_.size()); }
  const ComplexVector& compressed() const noexcept { return c_; }
  /// ifft(c): the diagonal of D in C = D x_1 F_n ... x_m F_n.
  const ComplexVector& spectrum() const noexcept { return spectrum_; }

  Complex entry(std::span<const std::size_t> index) const;

 private:
  std::size_t order_;
  ComplexVector c_;
  ComplexVector spectrum_;
};

/// Tensor with entry h[i_1 + ... + i_m]; h has length d_H = sum n_p - m + 1.
class HankelTensor {
 public:
  HankelTensor(Shape shape, ComplexVector generating);

  /// Square Hankel tensor of the given order and dimension.
  static HankelTensor square(std::size_t order, std::size_t dim, ComplexVector generating);

  const Shape& shape() const noexcept { return shape_; }
  std::size_t order() const noexcept { return shape_.size(); }
  std::size_t dim(std::size_t p) const { return shape_.at(p); }
  std::size_t degree_of_freedom() const noexcept { return static_cast<std::size_t>(h_.size()); }
  bool is_square() const noexcept;
  const ComplexVector& generating() const noexcept { return h_; }
  /// ifft(h), computed once at construction.
  const ComplexVector& spectrum() const noexcept { return spectrum_; }

  Complex entry(std::span<const std::size_t> index) const;

  /// Same tensor with mode p moved to the front (still Hankel, same h).
  HankelTensor with_leading_mode(std::size_t p) const;

 private:
  Shape shape_;
  ComplexVector h_;
  ComplexVector spectrum_;
};

/// d_H = sum(shape) - m + 1.
std::size_t hankel_degree_of_freedom(std::span<const std::size_t> shape);

struct EigenPair {
  Complex value;
  ComplexVector vector;
};

/// ifft(c).
ComplexVector acirc_spectrum(const AntiCirculantTensor& c);

/// The closed-form pairs: (n^{m-2} sum c, 1) always, and for even n also
/// (n^{m-2} sum (-1)^k c_k, [1,-1,...]).
std::vector<EigenPair> acirc_special_eigenpairs(const AntiCirculantTensor& c);

/// y = fft(ifft(c) .* fft(x_2) .* ... .* fft(x_m)); xs holds x_2..x_m.
ComplexVector acirc_tvp_partial(const AntiCirculantTensor& c, std::span<const ComplexVector> xs);
/// alpha = ifft(c)^T (fft(x_1) .* ... .* fft(x_m)); xs holds x_1..x_m.
Complex acirc_tvp_full(const AntiCirculantTensor& c, std::span<const ComplexVector> xs);

/// Anti-circulant tensor of dimension d_H with compressed generating vector
/// h; the Hankel tensor is its leading corner.
AntiCirculantTensor embed(const HankelTensor& h);

/// y = H x_2 x_2 ... x_m x_m, length n_1; xs holds x_2..x_m.
ComplexVector hankel_tvp_partial(const HankelTensor& h, std::span<const ComplexVector> xs);
/// alpha = H x_1 x_1 ... x_m x_m; xs holds x_1..x_m.
Complex hankel_tvp_full(const HankelTensor& h, std::span<const ComplexVector> xs);

/// H x_2 U_2 ... x_m U_m, shape n_1 x R_2 x ... x R_m, one fast product per
/// column combination. Factors are used as given (callers conjugate).
DenseTensor hankel_tmp(const HankelTensor& h, std::span<const ComplexMatrix> factors);

/// Zero-pad v to the given length.
ComplexVector zero_pad(const ComplexVector& v, std::size_t length);

}  // namespace fasthankel
