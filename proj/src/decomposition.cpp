#include "fasthankel/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fasthankel {

namespace {

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

constexpr double kFitSlack = 1e-12;

bool converged_between(double previous, double current, double tol) {
  const double denom = std::max(current, std::numeric_limits<double>::min());
  return std::abs(current - previous) / denom < tol;
}

bool dropped(double previous, double current) {
  return current < previous - kFitSlack * std::max(1.0, previous);
}

Shape resolve_ranks(const HooiConfig& cfg, const Shape& dims) {
  Shape ranks;
  if (cfg.ranks.size() == 1) {
    ranks.assign(dims.size(), cfg.ranks[0]);
  } else if (cfg.ranks.size() == dims.size()) {
    ranks = cfg.ranks;
  } else {
    throw DimensionError("HOOI needs one rank per mode or a single rank");
  }
  for (std::size_t p = 0; p < dims.size(); ++p) {
    if (ranks[p] < 1 || ranks[p] > dims[p]) {
      throw DimensionError("rank " + std::to_string(ranks[p]) + " for mode " +
                           std::to_string(p) + " must lie in [1, " + std::to_string(dims[p]) +
                           "]");
    }
  }
  if (cfg.max_iter == 0) throw DimensionError("max_iter must be positive");
  return ranks;
}

// Factors of every mode except p, conjugated, in mode order.
std::vector<ComplexMatrix> others_conj(std::span<const ComplexMatrix> us, std::size_t p) {
  std::vector<ComplexMatrix> out;
  for (std::size_t q = 0; q < us.size(); ++q) {
    if (q != p) out.push_back(us[q].conjugate());
  }
  return out;
}

// Structured operators share one HOOI driver. Each provides the mode sizes,
// an initial factor per mode, the unfolding of A x_{q != p} conj(U_q) with
// mode p as rows, and the full core.

struct DenseOperator {
  const DenseTensor& a;

  Shape dims() const { return a.shape(); }
  ComplexMatrix initial(std::size_t p, std::size_t r) const {
    return truncated_left_sv(unfold(a, p), r);
  }
  ComplexMatrix contracted_unfolding(std::size_t p, std::span<const ComplexMatrix> us) const {
    DenseTensor b = a;
    for (std::size_t q = 0; q < us.size(); ++q) {
      if (q != p) b = mode_product(b, q, us[q].conjugate());
    }
    return unfold(b, p);
  }
  DenseTensor core(std::span<const ComplexMatrix> us) const {
    DenseTensor b = a;
    for (std::size_t q = 0; q < us.size(); ++q) b = mode_product(b, q, us[q].conjugate());
    return b;
  }
};

struct HankelOperator {
  const HankelTensor& h;

  Shape dims() const { return h.shape(); }
  ComplexMatrix initial(std::size_t p, std::size_t r) const {
    return truncated_left_sv(reduced_unfold(h, p), r);
  }
  ComplexMatrix contracted_unfolding(std::size_t p, std::span<const ComplexMatrix> us) const {
    const auto others = others_conj(us, p);
    return unfold(hankel_tmp(h.with_leading_mode(p), others), 0);
  }
  DenseTensor core(std::span<const ComplexMatrix> us) const {
    const auto others = others_conj(us, 0);
    return mode_product(hankel_tmp(h, others), 0, us[0].conjugate());
  }
};

struct BhhbOperator {
  const BhhbTensor& h;

  Shape dims() const { return h.shape(); }
  ComplexMatrix initial(std::size_t p, std::size_t r) const {
    return truncated_left_sv(reduced_unfold(h, p), r);
  }
  ComplexMatrix contracted_unfolding(std::size_t p, std::span<const ComplexMatrix> us) const {
    const auto others = others_conj(us, p);
    return unfold(bhhb_tmp(h.with_leading_mode(p), others), 0);
  }
  DenseTensor core(std::span<const ComplexMatrix> us) const {
    const auto others = others_conj(us, 0);
    return mode_product(bhhb_tmp(h, others), 0, us[0].conjugate());
  }
};

template <class Op>
TuckerFactors run_hooi(const Op& op, const HooiConfig& cfg) {
  const Shape dims = op.dims();
  const Shape ranks = resolve_ranks(cfg, dims);
  const std::size_t m = dims.size();

  std::vector<ComplexMatrix> us(m);
  for (std::size_t p = 0; p < m; ++p) us[p] = op.initial(p, ranks[p]);

  TuckerFactors out;
  out.fit_history.push_back(op.core(us).frobenius_norm());
  std::vector<ComplexMatrix> best = us;
  double best_fit = out.fit_history.back();

  for (std::size_t it = 1; it <= cfg.max_iter; ++it) {
    double fit = 0.0;
    for (std::size_t p = 0; p < m; ++p) {
      const ComplexMatrix unfolded = op.contracted_unfolding(p, us);
      us[p] = truncated_left_sv(unfolded, ranks[p]);
      // After the last mode every factor is current, so this is ||S||_F.
      if (p + 1 == m) fit = (us[p].adjoint() * unfolded).norm();
    }
    const double previous = out.fit_history.back();
    out.fit_history.push_back(fit);
    out.iterations = it;
    if (dropped(previous, fit)) out.monotone = false;
    if (fit >= best_fit) {
      best_fit = fit;
      best = us;
    }
    if (converged_between(previous, fit, cfg.tol)) {
      out.converged = true;
      break;
    }
  }
  out.factors = std::move(best);
  out.core = op.core(out.factors);
  return out;
}

template <class TmpFn>
SymmetricTucker run_symmetric_hooi(std::size_t order, ComplexMatrix u, TmpFn tmp,
                                   const HooiConfig& cfg) {
  if (cfg.max_iter == 0) throw DimensionError("max_iter must be positive");
  const auto rank = static_cast<std::size_t>(u.cols());
  auto core_of = [&](const ComplexMatrix& f) {
    const std::vector<ComplexMatrix> conj(order - 1, f.conjugate());
    return mode_product(tmp(conj), 0, f.conjugate());
  };

  SymmetricTucker out;
  DenseTensor core = core_of(u);
  out.fit_history.push_back(core.frobenius_norm());
  double best_fit = out.fit_history.back();
  ComplexMatrix best_u = u;
  DenseTensor best_core = core;

  for (std::size_t it = 1; it <= cfg.max_iter; ++it) {
    const std::vector<ComplexMatrix> conj(order - 1, u.conjugate());
    u = truncated_left_sv(unfold(tmp(conj), 0), rank);
    core = core_of(u);
    const double fit = core.frobenius_norm();
    const double previous = out.fit_history.back();
    out.fit_history.push_back(fit);
    out.iterations = it;
    if (dropped(previous, fit)) out.monotone = false;
    if (fit >= best_fit) {
      best_fit = fit;
      best_u = u;
      best_core = core;
    }
    if (converged_between(previous, fit, cfg.tol)) {
      out.converged = true;
      break;
    }
  }
  out.factor = std::move(best_u);
  out.core = std::move(best_core);
  return out;
}

}  // namespace

ComplexMatrix reduced_unfold(const HankelTensor& h, std::size_t p) {
  if (p >= h.order()) throw DimensionError("mode index out of range");
  const std::size_t rows = h.dim(p);
  const std::size_t cols = h.degree_of_freedom() - rows + 1;
  ComplexMatrix out(idx(rows), idx(cols));
  for (std::size_t j = 0; j < cols; ++j) {
    for (std::size_t i = 0; i < rows; ++i) out(idx(i), idx(j)) = h.generating()(idx(i + j));
  }
  return out;
}

ComplexMatrix reduced_unfold(const BhhbTensor& h, std::size_t p) {
  if (p >= h.order()) throw DimensionError("mode index out of range");
  const std::size_t n = h.block_sizes()[p];
  const std::size_t big_n = h.outer_sizes()[p];
  const auto dn = static_cast<std::size_t>(h.generating().rows());
  const auto dN = static_cast<std::size_t>(h.generating().cols());
  const std::size_t shifts_a = dn - n + 1;
  const std::size_t shifts_b = dN - big_n + 1;
  ComplexMatrix out(idx(n * big_n), idx(shifts_a * shifts_b));
  for (std::size_t b = 0; b < shifts_b; ++b) {
    for (std::size_t a = 0; a < shifts_a; ++a) {
      for (std::size_t j = 0; j < big_n; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
          out(idx(i + n * j), idx(a + shifts_a * b)) = h.generating()(idx(i + a), idx(j + b));
        }
      }
    }
  }
  return out;
}

ComplexMatrix truncated_left_sv(const ComplexMatrix& m, std::size_t r) {
  const auto limit = static_cast<std::size_t>(std::min(m.rows(), m.cols()));
  if (r < 1 || r > limit) {
    throw DimensionError("requested " + std::to_string(r) + " singular vectors of a " +
                         std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + " matrix");
  }
  Eigen::BDCSVD<ComplexMatrix> svd(m, Eigen::ComputeThinU);
  ComplexMatrix u = svd.matrixU().leftCols(idx(r));
  for (Eigen::Index k = 0; k < u.cols(); ++k) {
    Eigen::Index at = 0;
    u.col(k).cwiseAbs().maxCoeff(&at);
    const double mag = std::abs(u(at, k));
    if (mag > 0.0) {
      u.col(k) *= std::conj(u(at, k)) / mag;
      u(at, k) = mag;
    }
  }
  return u;
}

Eigen::VectorXd singular_values(const ComplexMatrix& m) {
  Eigen::BDCSVD<ComplexMatrix> svd(m);
  return svd.singularValues();
}

DenseTensor tucker_reconstruct(const DenseTensor& core, std::span<const ComplexMatrix> factors) {
  if (factors.size() != core.order()) throw DimensionError("one factor per core mode required");
  DenseTensor out = core;
  for (std::size_t p = 0; p < factors.size(); ++p) {
    out = mode_product(out, p, factors[p].transpose());
  }
  return out;
}

TuckerFactors hooi_general(const DenseTensor& a, const HooiConfig& cfg) {
  return run_hooi(DenseOperator{a}, cfg);
}

TuckerFactors hooi_hankel(const HankelTensor& h, const HooiConfig& cfg) {
  return run_hooi(HankelOperator{h}, cfg);
}

TuckerFactors hooi_bhhb(const BhhbTensor& h, const HooiConfig& cfg) {
  return run_hooi(BhhbOperator{h}, cfg);
}

SymmetricTucker hooi_square_hankel(const HankelTensor& h, std::size_t rank,
                                   const HooiConfig& cfg) {
  if (!h.is_square()) throw DimensionError("single-factor HOOI needs a square Hankel tensor");
  if (rank < 1 || rank > h.dim(0)) throw DimensionError("rank must lie in [1, I]");
  ComplexMatrix u = truncated_left_sv(reduced_unfold(h, 0), rank);
  return run_symmetric_hooi(
      h.order(), std::move(u),
      [&](std::span<const ComplexMatrix> fs) { return hankel_tmp(h, fs); }, cfg);
}

SymmetricTucker hooi_square_bhhb(const BhhbTensor& h, std::size_t rank, const HooiConfig& cfg) {
  if (!h.is_square()) throw DimensionError("single-factor HOOI needs a square BHHB tensor");
  if (rank < 1 || rank > h.mode_size(0)) throw DimensionError("rank must lie in [1, I J]");
  ComplexMatrix u = truncated_left_sv(reduced_unfold(h, 0), rank);
  return run_symmetric_hooi(
      h.order(), std::move(u),
      [&](std::span<const ComplexMatrix> fs) { return bhhb_tmp(h, fs); }, cfg);
}

ComplexMatrix tls_solve(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("TLS operands must have the same shape");
  }
  const Eigen::Index k = a.cols();
  if (k == 0 || a.rows() < k) throw DimensionError("TLS needs at least as many rows as columns");
  ComplexMatrix stacked(a.rows(), 2 * k);
  stacked << a, b;
  Eigen::JacobiSVD<ComplexMatrix> svd(stacked, Eigen::ComputeFullV);
  const ComplexMatrix& v = svd.matrixV();
  const ComplexMatrix v12 = v.topRightCorner(k, k);
  const ComplexMatrix v22 = v.bottomRightCorner(k, k);
  const Eigen::VectorXd s22 = singular_values(v22);
  if (s22(0) == 0.0 || s22(k - 1) < 1e-12 * s22(0)) {
    throw DegenerateError("total least squares is degenerate: V22 is singular");
  }
  return -v12 * v22.inverse();
}

}  // namespace fasthankel
