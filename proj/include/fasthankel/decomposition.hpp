#pragma once

// Tucker approximation by higher-order orthogonal iteration (HOOI), in a
// dense reference form and in structured forms whose tensor-matrix products
// run through the FFT-based Hankel / BHHB kernels. Also the total least
// squares solve used downstream for shift-invariance equations.
//
// Product convention throughout: (A x_p M) contracts mode p with M's first
// index, so the core is S = A x_1 conj(U_1) ... x_m conj(U_m) and the
// approximation is S x_1 U_1^T ... x_m U_m^T.

#include <span>
#include <vector>

#include "fasthankel/block_hankel.hpp"
#include "fasthankel/hankel.hpp"
#include "fasthankel/tensor.hpp"

namespace fasthankel {

struct HooiConfig {
  /// One rank per mode, or a single rank applied to every mode.
  std::vector<std::size_t> ranks;
  /// Stop when |fit_t - fit_{t-1}| / max(fit_t, eps) < tol, fit = ||S||_F.
  double tol = 1e-10;
  std::size_t max_iter = 100;
};

struct TuckerFactors {
  DenseTensor core;
  std::vector<ComplexMatrix> factors;
  std::size_t iterations = 0;
  bool converged = false;
  /// False if some sweep decreased the fit by more than the 1e-12 slack.
  bool monotone = true;
  /// ||S||_F after initialization, then after every sweep.
  std::vector<double> fit_history;
};

/// Output of the single-factor (symmetric) iteration: U_1 = ... = U_m = factor.
struct SymmetricTucker {
  DenseTensor core;
  ComplexMatrix factor;
  std::size_t iterations = 0;
  bool converged = false;
  bool monotone = true;
  std::vector<double> fit_history;
};

/// Mode-p unfolding with redundant columns removed: the I_p x (d_H - I_p + 1)
/// Hankel matrix with entry h[i + j].
ComplexMatrix reduced_unfold(const HankelTensor& h, std::size_t p);

/// Mode-p unfolding of a BHHB tensor with redundant columns removed. Rows
/// are i + n_p j; column a + (d_n - n_p + 1) b holds H(i + a, j + b).
ComplexMatrix reduced_unfold(const BhhbTensor& h, std::size_t p);

/// The r leading left singular vectors, ordered by descending singular
/// value, each scaled so its largest-magnitude entry is real and positive.
ComplexMatrix truncated_left_sv(const ComplexMatrix& m, std::size_t r);

/// Singular values in descending order.
Eigen::VectorXd singular_values(const ComplexMatrix& m);

/// S x_1 U_1^T ... x_m U_m^T.
DenseTensor tucker_reconstruct(const DenseTensor& core, std::span<const ComplexMatrix> factors);

/// Reference HOOI on a dense tensor, HOSVD initialization.
TuckerFactors hooi_general(const DenseTensor& a, const HooiConfig& cfg);

/// HOOI on a (possibly non-square) Hankel tensor with one factor per mode.
/// Initialization from reduced unfoldings; every product is a fast one.
TuckerFactors hooi_hankel(const HankelTensor& h, const HooiConfig& cfg);

/// Single-factor HOOI for a square Hankel tensor. Returns the best iterate
/// by fit; `monotone` is false when the fit ever dropped.
SymmetricTucker hooi_square_hankel(const HankelTensor& h, std::size_t rank,
                                   const HooiConfig& cfg = {});

TuckerFactors hooi_bhhb(const BhhbTensor& h, const HooiConfig& cfg);
SymmetricTucker hooi_square_bhhb(const BhhbTensor& h, std::size_t rank,
                                 const HooiConfig& cfg = {});

/// Classical total least squares for A W = B (both p x K): with the SVD
/// [A B] = U S V^*, W = -V_12 V_22^{-1}. Throws DegenerateError when V_22 is
/// numerically singular (sigma_min < 1e-12 sigma_max).
ComplexMatrix tls_solve(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace fasthankel
