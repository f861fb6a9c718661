#pragma once

// Discrete Fourier transforms, any length.
//
// Forward:  fft(v)_j  = sum_k v_k exp(-2 pi i jk / n)      (= F_n v)
// Inverse:  ifft(v)_j = (1/n) sum_k v_k exp(+2 pi i jk / n)
//
// Multi-dimensional variants apply the same kernel along every axis. Plans
// are cached per (shape, direction) behind a mutex; execution is lock-free,
// so every function here may be called from several threads at once.

#include <span>

#include "fasthankel/tensor.hpp"

namespace fasthankel {

enum class FftDirection { Forward, Inverse };

ComplexVector fft(const ComplexVector& v);
ComplexVector ifft(const ComplexVector& v);

/// fft2(M) = F_n M F_N for an n x N matrix.
ComplexMatrix fft2(const ComplexMatrix& m);
ComplexMatrix ifft2(const ComplexMatrix& m);

DenseTensor fftn(const DenseTensor& t);
DenseTensor ifftn(const DenseTensor& t);

/// In-place transform of a row-major array with the given shape. The
/// inverse includes the 1/prod(shape) factor.
void transform_inplace(std::span<Complex> data, std::span<const std::size_t> shape,
                       FftDirection dir);

/// The n x n Fourier matrix (exp(-2 pi i jk / n)).
ComplexMatrix fourier_matrix(std::size_t n);

}  // namespace fasthankel
