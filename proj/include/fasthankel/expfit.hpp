#pragma once

// Exponential data fitting. A 1D signal x_n = sum_k c_k z_k^n is lifted
// into a Hankel tensor, a 2D signal x_{n1 n2} = sum_k c_k z1_k^n1 z2_k^n2
// into a BHHB tensor. The mode-1 HOOI factor spans the (level-2)
// Vandermonde space, so shift-invariance plus TLS recovers the poles.

#include <algorithm>
#include <cstdint>
#include <future>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "fasthankel/block_hankel.hpp"
#include "fasthankel/decomposition.hpp"
#include "fasthankel/hankel.hpp"
#include "fasthankel/tensor.hpp"

namespace fasthankel {

/// a exp(i phi) exp((-alpha + i omega) n dt).
struct ExpTerm {
  double amplitude = 1.0;
  double phase = 0.0;
  double damping = 0.0;
  double pulsation = 0.0;
};

struct ExpModel1D {
  std::vector<ExpTerm> terms;
  double dt = 1.0;

  std::size_t size() const noexcept { return terms.size(); }
  Complex amplitude(std::size_t k) const;
  Complex pole(std::size_t k) const;
  std::vector<Complex> amplitudes() const;
  std::vector<Complex> poles() const;

  /// Model with the given complex amplitudes and (nonzero) poles.
  static ExpModel1D from_poles(std::span<const Complex> c, std::span<const Complex> z,
                               double dt = 1.0);
};

struct ExpTerm2D {
  double amplitude = 1.0;
  double phase = 0.0;
  double damping1 = 0.0;
  double pulsation1 = 0.0;
  double damping2 = 0.0;
  double pulsation2 = 0.0;
};

struct ExpModel2D {
  std::vector<ExpTerm2D> terms;
  double dt1 = 1.0;
  double dt2 = 1.0;

  std::size_t size() const noexcept { return terms.size(); }
  Complex amplitude(std::size_t k) const;
  Complex pole1(std::size_t k) const;
  Complex pole2(std::size_t k) const;
  std::vector<Complex> amplitudes() const;
  std::vector<Complex> poles1() const;
  std::vector<Complex> poles2() const;

  static ExpModel2D from_poles(std::span<const Complex> c, std::span<const Complex> z1,
                               std::span<const Complex> z2, double dt1 = 1.0,
                               double dt2 = 1.0);
};

/// Two damped 2D peaks:
///   exp((-0.01 + 2 pi i 0.20) n1) exp((-0.02 + 2 pi i 0.18) n2)
/// + exp((-0.02 + 2 pi i 0.22) n1) exp((-0.01 - 2 pi i 0.20) n2).
ExpModel2D two_peak_model();

/// Adds complex circular Gaussian noise, standard deviation sigma on the real
/// and on the imaginary part, from a generator seeded with `seed`.
void add_complex_noise(std::span<Complex> data, double sigma, std::uint64_t seed);

ComplexVector synth_1d(const ExpModel1D& model, std::size_t n, double sigma = 0.0,
                       std::uint64_t seed = 0);
/// N1 x N2 matrix with entry x_{n1 n2}.
ComplexMatrix synth_2d(const ExpModel2D& model, std::size_t n1, std::size_t n2,
                       double sigma = 0.0, std::uint64_t seed = 0);

/// rows x K matrix with entry z_k^i, i.e. Z such that Z^T has rows (1, z_k, z_k^2, ...).
ComplexMatrix vandermonde(std::span<const Complex> z, std::size_t rows);

/// (A ⊘ B)(:, j) = A(:, j) ⊗ B(:, j).
ComplexMatrix columnwise_kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// diag(c) x_1 Z_1^T ... x_m Z_m^T.
DenseTensor vandermonde_tensor_1d(const ExpModel1D& model, const Shape& shape);
/// diag(c) x_p (Z_{2,p} ⊘ Z_{1,p})^T on every mode.
DenseTensor vandermonde_tensor_2d(const ExpModel2D& model, const Shape& block_sizes,
                                  const Shape& outer_sizes);

struct VandermondeCheck {
  /// ||Vandermonde form - dense Hankel (BHHB) build||_F / ||dense||_F.
  double residual = 0.0;
  /// Poles coincide or some mode is shorter than K.
  bool rank_deficient = false;
};

VandermondeCheck vandermonde_check_1d(const ExpModel1D& model, const Shape& shape);
VandermondeCheck vandermonde_check_2d(const ExpModel2D& model, const Shape& block_sizes,
                                      const Shape& outer_sizes);

enum class Selection { Up1, Down1, Up2, Down2 };

/// Row selection on an (I J) x K matrix whose row index is i + I j:
/// Up1 drops i = I-1, Down1 drops i = 0, Up2 drops j = J-1, Down2 drops j = 0.
ComplexMatrix selection(const ComplexMatrix& a, Selection which, std::size_t i_size,
                        std::size_t j_size);

struct PoleEstimate {
  /// 1D poles, or the first-dimension poles of the 2D pairs.
  std::vector<Complex> poles;
  /// Second-dimension poles; poles2[k] pairs with poles[k]. Empty for 1D.
  std::vector<Complex> poles2;
  /// Least-squares complex amplitudes against the fitted Vandermonde basis.
  std::vector<Complex> amplitudes;
  /// |z_est - z_true| / |z_true| per pole once compared to ground truth.
  std::vector<double> relative_errors;
  std::vector<double> relative_errors2;
  std::vector<std::string> warnings;
  std::size_t hooi_iterations = 0;
  bool hooi_converged = false;
  /// ||offdiag(T^-1 W2 T)||_F / ||diag||, 2D only.
  double pairing_residual = 0.0;
};

/// Sizes summing to n + m - 1 that are as equal as possible.
Shape default_square_shape(std::size_t n, std::size_t order);

PoleEstimate estimate_poles_1d(const ComplexVector& x, const Shape& shape, std::size_t k,
                               const HooiConfig& cfg = {});

PoleEstimate estimate_poles_2d(const ComplexMatrix& x, const Shape& block_sizes,
                               const Shape& outer_sizes, std::size_t k,
                               const HooiConfig& cfg = {});

/// Reorders the estimate to the truth's order (best permutation) and fills
/// relative_errors.
void compare_with_truth(PoleEstimate& est, std::span<const Complex> truth);
void compare_with_truth(PoleEstimate& est, std::span<const Complex> truth1,
                        std::span<const Complex> truth2);

/// Singular values of the reduced mode-1 unfolding of the BHHB tensor built
/// from x.
Eigen::VectorXd mode1_singular_values(const ComplexMatrix& x, const Shape& block_sizes,
                                      const Shape& outer_sizes);

struct SingularValueRow {
  double noise = 0.0;
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  Eigen::VectorXd values;
};

/// One row per (noise level, trial); noise level 0 yields a single row. The
/// trial t of every level uses seed + t.
std::vector<SingularValueRow> singular_value_study(const ComplexMatrix& x,
                                                   const Shape& block_sizes,
                                                   const Shape& outer_sizes,
                                                   std::span<const double> noise_levels,
                                                   std::size_t trials, std::uint64_t seed);

/// Runs fn(trial) for every trial on worker threads and returns the results
/// in trial order. Each trial must own its state (seeded RNG included).
template <class Fn>
auto run_trials(std::size_t trials, Fn fn) -> std::vector<decltype(fn(std::size_t{}))> {
  using Result = decltype(fn(std::size_t{}));
  std::vector<Result> results;
  results.reserve(trials);
  const std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
  for (std::size_t start = 0; start < trials; start += workers) {
    std::vector<std::future<Result>> batch;
    for (std::size_t t = start; t < std::min(trials, start + workers); ++t) {
      batch.push_back(std::async(std::launch::async, fn, t));
    }
    for (auto& f : batch) results.push_back(f.get());
  }
  return results;
}

}  // namespace fasthankel
