#include "fasthankel/expfit.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>

namespace fasthankel {

namespace {

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

Complex term_pole(double damping, double pulsation, double dt) {
  return std::exp(Complex(-damping, pulsation) * dt);
}

// Inverse of term_pole for a nonzero pole.
void pole_to_rates(Complex z, double dt, double& damping, double& pulsation) {
  if (z == Complex{}) throw DimensionError("poles must be nonzero");
  if (!(dt > 0.0)) throw DimensionError("sampling interval must be positive");
  damping = -std::log(std::abs(z)) / dt;
  pulsation = std::arg(z) / dt;
}

bool poles_coincide(std::span<const Complex> z) {
  for (std::size_t a = 0; a < z.size(); ++a) {
    for (std::size_t b = a + 1; b < z.size(); ++b) {
      if (std::abs(z[a] - z[b]) <= 1e-12 * std::max(1.0, std::abs(z[a]))) return true;
    }
  }
  return false;
}

DenseTensor diagonal_core(std::span<const Complex> c, std::size_t order) {
  const Shape shape(order, c.size());
  DenseTensor core(shape);
  std::vector<std::size_t> index(order);
  for (std::size_t k = 0; k < c.size(); ++k) {
    std::fill(index.begin(), index.end(), k);
    core(index) = c[k];
  }
  return core;
}

std::vector<Complex> lstsq(const ComplexMatrix& basis, const ComplexVector& rhs) {
  const ComplexVector c = basis.colPivHouseholderQr().solve(rhs);
  return {c.data(), c.data() + c.size()};
}

double relative_pole_error(Complex est, Complex truth) {
  const double scale = std::abs(truth);
  return scale > 0.0 ? std::abs(est - truth) / scale : std::abs(est - truth);
}

// Permutation perm minimizing sum cost(perm[t], t): estimate perm[t] matches
// truth t. Exhaustive for small K, greedy otherwise.
template <class Cost>
std::vector<std::size_t> best_matching(std::size_t k, Cost cost) {
  std::vector<std::size_t> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  if (k <= 8) {
    std::vector<std::size_t> best = perm;
    double best_cost = std::numeric_limits<double>::infinity();
    do {
      double total = 0.0;
      for (std::size_t t = 0; t < k; ++t) total += cost(perm[t], t);
      if (total < best_cost) {
        best_cost = total;
        best = perm;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
  }
  std::vector<bool> used(k, false);
  for (std::size_t t = 0; t < k; ++t) {
    std::size_t pick = k;
    for (std::size_t e = 0; e < k; ++e) {
      if (!used[e] && (pick == k || cost(e, t) < cost(pick, t))) pick = e;
    }
    used[pick] = true;
    perm[t] = pick;
  }
  return perm;
}

template <class T>
std::vector<T> permuted(const std::vector<T>& v, const std::vector<std::size_t>& perm) {
  if (v.size() != perm.size()) return v;
  std::vector<T> out(perm.size());
  for (std::size_t t = 0; t < perm.size(); ++t) out[t] = v[perm[t]];
  return out;
}

void check_signal_nonzero(double norm) {
  if (!(norm > 0.0)) throw DegenerateError("signal is identically zero");
  if (!std::isfinite(norm)) throw DimensionError("signal contains non-finite samples");
}

}  // namespace

// ---------------------------------------------------------------------------
// Models

Complex ExpModel1D::amplitude(std::size_t k) const {
  const ExpTerm& t = terms.at(k);
  return std::polar(t.amplitude, t.phase);
}

Complex ExpModel1D::pole(std::size_t k) const {
  const ExpTerm& t = terms.at(k);
  return term_pole(t.damping, t.pulsation, dt);
}

std::vector<Complex> ExpModel1D::amplitudes() const {
  std::vector<Complex> out;
  for (std::size_t k = 0; k < size(); ++k) out.push_back(amplitude(k));
  return out;
}

std::vector<Complex> ExpModel1D::poles() const {
  std::vector<Complex> out;
  for (std::size_t k = 0; k < size(); ++k) out.push_back(pole(k));
  return out;
}

ExpModel1D ExpModel1D::from_poles(std::span<const Complex> c, std::span<const Complex> z,
                                  double dt) {
  if (c.size() != z.size()) throw DimensionError("one amplitude per pole required");
  ExpModel1D model;
  model.dt = dt;
  for (std::size_t k = 0; k < z.size(); ++k) {
    ExpTerm t;
    t.amplitude = std::abs(c[k]);
    t.phase = std::arg(c[k]);
    pole_to_rates(z[k], dt, t.damping, t.pulsation);
    model.terms.push_back(t);
  }
  return model;
}

Complex ExpModel2D::amplitude(std::size_t k) const {
  const ExpTerm2D& t = terms.at(k);
  return std::polar(t.amplitude, t.phase);
}

Complex ExpModel2D::pole1(std::size_t k) const {
  const ExpTerm2D& t = terms.at(k);
  return term_pole(t.damping1, t.pulsation1, dt1);
}

Complex ExpModel2D::pole2(std::size_t k) const {
  const ExpTerm2D& t = terms.at(k);
  return term_pole(t.damping2, t.pulsation2, dt2);
}

std::vector<Complex> ExpModel2D::amplitudes() const {
  std::vector<Complex> out;
  for (std::size_t k = 0; k < size(); ++k) out.push_back(amplitude(k));
  return out;
}

std::vector<Complex> ExpModel2D::poles1() const {
  std::vector<Complex> out;
  for (std::size_t k = 0; k < size(); ++k) out.push_back(pole1(k));
  return out;
}

std::vector<Complex> ExpModel2D::poles2() const {
  std::vector<Complex> out;
  for (std::size_t k = 0; k < size(); ++k) out.push_back(pole2(k));
  return out;
}

ExpModel2D ExpModel2D::from_poles(std::span<const Complex> c, std::span<const Complex> z1,
                                  std::span<const Complex> z2, double dt1, double dt2) {
  if (c.size() != z1.size() || c.size() != z2.size()) {
    throw DimensionError("one amplitude per pole pair required");
  }
  ExpModel2D model;
  model.dt1 = dt1;
  model.dt2 = dt2;
  for (std::size_t k = 0; k < c.size(); ++k) {
    ExpTerm2D t;
    t.amplitude = std::abs(c[k]);
    t.phase = std::arg(c[k]);
    pole_to_rates(z1[k], dt1, t.damping1, t.pulsation1);
    pole_to_rates(z2[k], dt2, t.damping2, t.pulsation2);
    model.terms.push_back(t);
  }
  return model;
}

ExpModel2D two_peak_model() {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  ExpModel2D model;
  model.terms.push_back({1.0, 0.0, 0.01, two_pi * 0.20, 0.02, two_pi * 0.18});
  model.terms.push_back({1.0, 0.0, 0.02, two_pi * 0.22, 0.01, -two_pi * 0.20});
  return model;
}

void add_complex_noise(std::span<Complex> data, double sigma, std::uint64_t seed) {
  if (sigma < 0.0) throw DimensionError("noise level must be non-negative");
  if (sigma == 0.0) return;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, sigma);
  for (Complex& v : data) {
    const double re = normal(rng);
    const double im = normal(rng);
    v += Complex(re, im);
  }
}

ComplexVector synth_1d(const ExpModel1D& model, std::size_t n, double sigma, std::uint64_t seed) {
  if (n == 0) throw DimensionError("signal length must be positive");
  ComplexVector x = ComplexVector::Zero(idx(n));
  for (std::size_t k = 0; k < model.size(); ++k) {
    const ExpTerm& t = model.terms[k];
    const Complex c = model.amplitude(k);
    const Complex rate(-t.damping, t.pulsation);
    for (std::size_t s = 0; s < n; ++s) {
      x(idx(s)) += c * std::exp(rate * (static_cast<double>(s) * model.dt));
    }
  }
  add_complex_noise({x.data(), n}, sigma, seed);
  return x;
}

ComplexMatrix synth_2d(const ExpModel2D& model, std::size_t n1, std::size_t n2, double sigma,
                       std::uint64_t seed) {
  if (n1 == 0 || n2 == 0) throw DimensionError("signal size must be positive");
  ComplexMatrix x = ComplexMatrix::Zero(idx(n1), idx(n2));
  for (std::size_t k = 0; k < model.size(); ++k) {
    const ExpTerm2D& t = model.terms[k];
    const Complex c = model.amplitude(k);
    const Complex rate1(-t.damping1, t.pulsation1);
    const Complex rate2(-t.damping2, t.pulsation2);
    for (std::size_t b = 0; b < n2; ++b) {
      for (std::size_t a = 0; a < n1; ++a) {
        x(idx(a), idx(b)) += c * std::exp(rate1 * (static_cast<double>(a) * model.dt1) +
                                          rate2 * (static_cast<double>(b) * model.dt2));
      }
    }
  }
  // Row-major sample order (n1 slowest) matches the signal file layout.
  std::vector<Complex> flat(n1 * n2);
  for (std::size_t a = 0; a < n1; ++a) {
    for (std::size_t b = 0; b < n2; ++b) flat[a * n2 + b] = x(idx(a), idx(b));
  }
  add_complex_noise(flat, sigma, seed);
  for (std::size_t a = 0; a < n1; ++a) {
    for (std::size_t b = 0; b < n2; ++b) x(idx(a), idx(b)) = flat[a * n2 + b];
  }
  return x;
}

// ---------------------------------------------------------------------------
// Vandermonde structure

ComplexMatrix vandermonde(std::span<const Complex> z, std::size_t rows) {
  ComplexMatrix v(idx(rows), idx(z.size()));
  for (std::size_t k = 0; k < z.size(); ++k) {
    for (std::size_t i = 0; i < rows; ++i) {
      v(idx(i), idx(k)) = std::pow(z[k], static_cast<double>(i));
    }
  }
  return v;
}

ComplexMatrix columnwise_kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.cols()) throw DimensionError("column-wise Kronecker needs equal column counts");
  ComplexMatrix out(a.rows() * b.rows(), a.cols());
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index ra = 0; ra < a.rows(); ++ra) {
      out.col(j).segment(ra * b.rows(), b.rows()) = a(ra, j) * b.col(j);
    }
  }
  return out;
}

DenseTensor vandermonde_tensor_1d(const ExpModel1D& model, const Shape& shape) {
  if (model.size() == 0) throw DimensionError("model has no terms");
  const auto c = model.amplitudes();
  const auto z = model.poles();
  DenseTensor t = diagonal_core(c, shape.size());
  for (std::size_t p = 0; p < shape.size(); ++p) {
    t = mode_product(t, p, vandermonde(z, shape[p]).transpose());
  }
  return t;
}

DenseTensor vandermonde_tensor_2d(const ExpModel2D& model, const Shape& block_sizes,
                                  const Shape& outer_sizes) {
  if (model.size() == 0) throw DimensionError("model has no terms");
  if (block_sizes.size() != outer_sizes.size()) throw DimensionError("order mismatch");
  const auto c = model.amplitudes();
  const auto z1 = model.poles1();
  const auto z2 = model.poles2();
  DenseTensor t = diagonal_core(c, block_sizes.size());
  for (std::size_t p = 0; p < block_sizes.size(); ++p) {
    const ComplexMatrix factor =
        columnwise_kron(vandermonde(z2, outer_sizes[p]), vandermonde(z1, block_sizes[p]));
    t = mode_product(t, p, factor.transpose());
  }
  return t;
}

VandermondeCheck vandermonde_check_1d(const ExpModel1D& model, const Shape& shape) {
  VandermondeCheck check;
  const auto z = model.poles();
  check.rank_deficient = poles_coincide(z) ||
                         std::any_of(shape.begin(), shape.end(),
                                     [&](std::size_t n) { return n < model.size(); });
  const ComplexVector x = synth_1d(model, hankel_degree_of_freedom(shape));
  check.residual = relative_error(vandermonde_tensor_1d(model, shape),
                                  build_hankel_dense(x, shape));
  return check;
}

VandermondeCheck vandermonde_check_2d(const ExpModel2D& model, const Shape& block_sizes,
                                      const Shape& outer_sizes) {
  VandermondeCheck check;
  const auto z1 = model.poles1();
  const auto z2 = model.poles2();
  bool coincide = false;
  for (std::size_t a = 0; a < model.size(); ++a) {
    for (std::size_t b = a + 1; b < model.size(); ++b) {
      if (std::abs(z1[a] - z1[b]) <= 1e-12 && std::abs(z2[a] - z2[b]) <= 1e-12) coincide = true;
    }
  }
  bool short_mode = false;
  for (std::size_t p = 0; p < block_sizes.size(); ++p) {
    if (block_sizes[p] * outer_sizes[p] < model.size()) short_mode = true;
  }
  check.rank_deficient = coincide || short_mode;
  const ComplexMatrix x = synth_2d(model, hankel_degree_of_freedom(block_sizes),
                                   hankel_degree_of_freedom(outer_sizes));
  check.residual = relative_error(vandermonde_tensor_2d(model, block_sizes, outer_sizes),
                                  build_bhhb_dense(x, block_sizes, outer_sizes));
  return check;
}

ComplexMatrix selection(const ComplexMatrix& a, Selection which, std::size_t i_size,
                        std::size_t j_size) {
  if (static_cast<std::size_t>(a.rows()) != i_size * j_size) {
    throw DimensionError("selection: matrix has " + std::to_string(a.rows()) + " rows, expected " +
                         std::to_string(i_size * j_size));
  }
  const bool first = which == Selection::Up1 || which == Selection::Down1;
  if (first && i_size < 2) throw DimensionError("first-dimension shifts need I >= 2");
  if (!first && j_size < 2) throw DimensionError("second-dimension shifts need J >= 2");
  std::vector<Eigen::Index> rows;
  for (std::size_t j = 0; j < j_size; ++j) {
    for (std::size_t i = 0; i < i_size; ++i) {
      bool keep = true;
      switch (which) {
        case Selection::Up1: keep = i + 1 < i_size; break;
        case Selection::Down1: keep = i > 0; break;
        case Selection::Up2: keep = j + 1 < j_size; break;
        case Selection::Down2: keep = j > 0; break;
      }
      if (keep) rows.push_back(idx(i + i_size * j));
    }
  }
  ComplexMatrix out(idx(rows.size()), a.cols());
  for (std::size_t r = 0; r < rows.size(); ++r) out.row(idx(r)) = a.row(rows[r]);
  return out;
}

// ---------------------------------------------------------------------------
// Pole estimation

Shape default_square_shape(std::size_t n, std::size_t order) {
  if (order == 0) throw DimensionError("order must be positive");
  const std::size_t total = n + order - 1;
  if (total < order) throw DimensionError("signal too short for the requested order");
  Shape shape(order, total / order);
  for (std::size_t p = 0; p < total % order; ++p) ++shape[p];
  return shape;
}

PoleEstimate estimate_poles_1d(const ComplexVector& x, const Shape& shape, std::size_t k,
                               const HooiConfig& cfg) {
  if (shape.empty()) throw DimensionError("tensor order must be at least 1");
  if (k == 0) throw DimensionError("number of poles must be positive");
  if (hankel_degree_of_freedom(shape) != static_cast<std::size_t>(x.size())) {
    throw DimensionError("shape " + shape_string(shape) + " needs " +
                         std::to_string(hankel_degree_of_freedom(shape)) + " samples, signal has " +
                         std::to_string(x.size()));
  }
  for (std::size_t n : shape) {
    if (n < k) throw DimensionError("every tensor dimension must be at least K");
  }
  if (shape[0] < k + 1) throw DimensionError("mode-1 dimension must exceed K for the shift equations");
  check_signal_nonzero(x.norm());

  const HankelTensor h(shape, x);
  PoleEstimate est;
  ComplexMatrix u;
  if (h.is_square() && h.order() >= 2) {
    SymmetricTucker fit = hooi_square_hankel(h, k, cfg);
    u = std::move(fit.factor);
    est.hooi_iterations = fit.iterations;
    est.hooi_converged = fit.converged;
    if (!fit.monotone) est.warnings.push_back("single-factor HOOI fit was not monotone");
  } else {
    HooiConfig general = cfg;
    general.ranks = {k};
    TuckerFactors fit = hooi_hankel(h, general);
    u = std::move(fit.factors[0]);
    est.hooi_iterations = fit.iterations;
    est.hooi_converged = fit.converged;
  }
  if (!est.hooi_converged) est.warnings.push_back("HOOI stopped at max_iter before converging");

  const std::size_t rows = shape[0];
  const ComplexMatrix w =
      tls_solve(selection(u, Selection::Up1, rows, 1), selection(u, Selection::Down1, rows, 1));
  Eigen::ComplexEigenSolver<ComplexMatrix> eig(w, false);
  if (eig.info() != Eigen::Success) throw DegenerateError("eigenvalue solver failed");
  for (Eigen::Index i = 0; i < eig.eigenvalues().size(); ++i) {
    est.poles.push_back(eig.eigenvalues()(i));
  }
  std::sort(est.poles.begin(), est.poles.end(), [](Complex a, Complex b) {
    return std::arg(a) != std::arg(b) ? std::arg(a) < std::arg(b) : std::abs(a) < std::abs(b);
  });

  est.amplitudes = lstsq(vandermonde(est.poles, static_cast<std::size_t>(x.size())), x);
  return est;
}

PoleEstimate estimate_poles_2d(const ComplexMatrix& x, const Shape& block_sizes,
                               const Shape& outer_sizes, std::size_t k, const HooiConfig& cfg) {
  if (block_sizes.empty() || block_sizes.size() != outer_sizes.size()) {
    throw DimensionError("block and outer sizes must be non-empty and of equal order");
  }
  if (k == 0) throw DimensionError("number of poles must be positive");
  for (std::size_t p = 0; p < block_sizes.size(); ++p) {
    if (block_sizes[p] < k || outer_sizes[p] < k) {
      throw DimensionError("every block and outer size must be at least K");
    }
  }
  const std::size_t i1 = block_sizes[0];
  const std::size_t j1 = outer_sizes[0];
  if (i1 < 2 || j1 < 2) throw DimensionError("mode-1 block and outer sizes must be at least 2");
  if ((i1 - 1) * j1 < k || i1 * (j1 - 1) < k) {
    throw DimensionError("mode-1 size too small for the shift equations");
  }
  // Constructor checks the generating matrix dimensions.
  const BhhbTensor h(block_sizes, outer_sizes, x);
  check_signal_nonzero(x.norm());

  PoleEstimate est;
  ComplexMatrix u;
  if (h.is_square() && h.order() >= 2) {
    SymmetricTucker fit = hooi_square_bhhb(h, k, cfg);
    u = std::move(fit.factor);
    est.hooi_iterations = fit.iterations;
    est.hooi_converged = fit.converged;
    if (!fit.monotone) est.warnings.push_back("single-factor HOOI fit was not monotone");
  } else {
    HooiConfig general = cfg;
    general.ranks = {k};
    TuckerFactors fit = hooi_bhhb(h, general);
    u = std::move(fit.factors[0]);
    est.hooi_iterations = fit.iterations;
    est.hooi_converged = fit.converged;
  }
  if (!est.hooi_converged) est.warnings.push_back("HOOI stopped at max_iter before converging");

  const ComplexMatrix w1 = tls_solve(selection(u, Selection::Up1, i1, j1),
                                     selection(u, Selection::Down1, i1, j1));
  const ComplexMatrix w2 = tls_solve(selection(u, Selection::Up2, i1, j1),
                                     selection(u, Selection::Down2, i1, j1));

  // W1 = T D1 T^-1 and W2 = T D2 T^-1 share T: pair through T^-1 W2 T.
  Eigen::ComplexEigenSolver<ComplexMatrix> eig(w1, true);
  if (eig.info() != Eigen::Success) throw DegenerateError("eigenvalue solver failed");
  const ComplexMatrix& t = eig.eigenvectors();
  const Eigen::VectorXd st = singular_values(t);
  if (!(st(st.size() - 1) > 1e-12 * st(0))) {
    throw DegenerateError("pole pairing failed: W1 has a defective eigensystem");
  }
  const ComplexMatrix m2 = t.partialPivLu().solve(w2 * t);
  const ComplexVector d2 = m2.diagonal();
  ComplexMatrix off = m2;
  off.diagonal().setZero();
  est.pairing_residual = d2.norm() > 0.0 ? off.norm() / d2.norm() : off.norm();
  if (est.pairing_residual > 0.1) {
    est.warnings.push_back("pairing quality: off-diagonal mass of T^-1 W2 T above 10%");
  }

  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), 0);
  const ComplexVector& d1 = eig.eigenvalues();
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const Complex za = d1(idx(a)), zb = d1(idx(b));
    return std::arg(za) != std::arg(zb) ? std::arg(za) < std::arg(zb) : std::abs(za) < std::abs(zb);
  });
  for (std::size_t q : order) {
    est.poles.push_back(d1(idx(q)));
    est.poles2.push_back(d2(idx(q)));
  }

  const auto n1 = static_cast<std::size_t>(x.rows());
  const auto n2 = static_cast<std::size_t>(x.cols());
  ComplexMatrix basis(idx(n1 * n2), idx(k));
  for (std::size_t q = 0; q < k; ++q) {
    for (std::size_t b = 0; b < n2; ++b) {
      for (std::size_t a = 0; a < n1; ++a) {
        basis(idx(a + n1 * b), idx(q)) = std::pow(est.poles[q], static_cast<double>(a)) *
                                         std::pow(est.poles2[q], static_cast<double>(b));
      }
    }
  }
  est.amplitudes = lstsq(basis, vec(x));
  return est;
}

void compare_with_truth(PoleEstimate& est, std::span<const Complex> truth) {
  if (truth.size() != est.poles.size()) {
    throw DimensionError("truth lists " + std::to_string(truth.size()) + " poles, estimate has " +
                         std::to_string(est.poles.size()));
  }
  const auto perm = best_matching(truth.size(), [&](std::size_t e, std::size_t t) {
    return relative_pole_error(est.poles[e], truth[t]);
  });
  est.poles = permuted(est.poles, perm);
  est.poles2 = permuted(est.poles2, perm);
  est.amplitudes = permuted(est.amplitudes, perm);
  est.relative_errors.clear();
  for (std::size_t t = 0; t < truth.size(); ++t) {
    est.relative_errors.push_back(relative_pole_error(est.poles[t], truth[t]));
  }
}

void compare_with_truth(PoleEstimate& est, std::span<const Complex> truth1,
                        std::span<const Complex> truth2) {
  if (truth1.size() != est.poles.size() || truth2.size() != est.poles2.size()) {
    throw DimensionError("truth and estimate list different numbers of pole pairs");
  }
  const auto perm = best_matching(truth1.size(), [&](std::size_t e, std::size_t t) {
    return relative_pole_error(est.poles[e], truth1[t]) +
           relative_pole_error(est.poles2[e], truth2[t]);
  });
  est.poles = permuted(est.poles, perm);
  est.poles2 = permuted(est.poles2, perm);
  est.amplitudes = permuted(est.amplitudes, perm);
  est.relative_errors.clear();
  est.relative_errors2.clear();
  for (std::size_t t = 0; t < truth1.size(); ++t) {
    est.relative_errors.push_back(relative_pole_error(est.poles[t], truth1[t]));
    est.relative_errors2.push_back(relative_pole_error(est.poles2[t], truth2[t]));
  }
}

Eigen::VectorXd mode1_singular_values(const ComplexMatrix& x, const Shape& block_sizes,
                                      const Shape& outer_sizes) {
  const BhhbTensor h(block_sizes, outer_sizes, x);
  return singular_values(reduced_unfold(h, 0));
}

std::vector<SingularValueRow> singular_value_study(const ComplexMatrix& x,
                                                   const Shape& block_sizes,
                                                   const Shape& outer_sizes,
                                                   std::span<const double> noise_levels,
                                                   std::size_t trials, std::uint64_t seed) {
  if (trials == 0) throw DimensionError("at least one trial per noise level is required");
  std::vector<SingularValueRow> rows;
  for (double sigma : noise_levels) {
    if (sigma < 0.0) throw DimensionError("noise level must be non-negative");
    const std::size_t count = sigma == 0.0 ? 1 : trials;
    auto batch = run_trials(count, [&](std::size_t t) {
      ComplexMatrix noisy = x;
      std::vector<Complex> flat(static_cast<std::size_t>(x.size()));
      // Row-major sample order, as in synth_2d.
      for (Eigen::Index a = 0; a < x.rows(); ++a) {
        for (Eigen::Index b = 0; b < x.cols(); ++b) flat[a * x.cols() + b] = x(a, b);
      }
      add_complex_noise(flat, sigma, seed + t);
      for (Eigen::Index a = 0; a < x.rows(); ++a) {
        for (Eigen::Index b = 0; b < x.cols(); ++b) noisy(a, b) = flat[a * x.cols() + b];
      }
      return SingularValueRow{sigma, t, seed + t,
                              mode1_singular_values(noisy, block_sizes, outer_sizes)};
    });
    for (auto& row : batch) rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace fasthankel
