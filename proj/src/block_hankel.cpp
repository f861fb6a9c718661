#include "fasthankel/block_hankel.hpp"

#include <algorithm>

#include "fasthankel/fft.hpp"
#include "fasthankel/hankel.hpp"

namespace fasthankel {

namespace {

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

void check_count(std::span<const ComplexVector> xs, std::size_t expected, const char* what) {
  if (xs.size() != expected) {
    throw DimensionError(std::string(what) + ": expected " + std::to_string(expected) +
                         " vectors, got " + std::to_string(xs.size()));
  }
}

void check_length(const ComplexVector& x, std::size_t expected, std::size_t p, const char* what) {
  if (static_cast<std::size_t>(x.size()) != expected) {
    throw DimensionError(std::string(what) + ": vector " + std::to_string(p) + " has length " +
                         std::to_string(x.size()) + ", expected " + std::to_string(expected));
  }
}

// fft2 of vec^{-1}(x) placed in the top-left corner of a rows x cols zero matrix.
ComplexMatrix padded_fft2(const ComplexVector& x, std::size_t n, std::size_t big_n,
                          std::size_t rows, std::size_t cols) {
  ComplexMatrix padded = ComplexMatrix::Zero(idx(rows), idx(cols));
  padded.topLeftCorner(idx(n), idx(big_n)) = unvec(x, n, big_n);
  return fft2(padded);
}

// Copy a row-major `small` array into the leading corner of a zero `big` array.
std::vector<Complex> pad_nd(std::span<const Complex> src, const Shape& small, const Shape& big) {
  std::vector<Complex> out(shape_product(big), Complex{});
  std::vector<std::size_t> index(small.size(), 0);
  for (const Complex& v : src) {
    std::size_t off = 0;
    for (std::size_t a = 0; a < big.size(); ++a) off = off * big[a] + index[a];
    out[off] = v;
    for (std::size_t a = small.size(); a-- > 0;) {
      if (++index[a] < small[a]) break;
      index[a] = 0;
    }
  }
  return out;
}

}  // namespace

ComplexMatrix unvec(const ComplexVector& v, std::size_t rows, std::size_t cols) {
  if (static_cast<std::size_t>(v.size()) != rows * cols) {
    throw DimensionError("vec^{-1}: length " + std::to_string(v.size()) + " is not " +
                         std::to_string(rows) + "*" + std::to_string(cols));
  }
  return Eigen::Map<const ComplexMatrix>(v.data(), idx(rows), idx(cols));
}

ComplexVector vec(const ComplexMatrix& m) {
  return Eigen::Map<const ComplexVector>(m.data(), m.size());
}

// ---------------------------------------------------------------------------
// BAAB

BaabTensor::BaabTensor(std::size_t order, ComplexMatrix compressed)
    : order_(order), c_(std::move(compressed)) {
  if (order_ < 2) throw DimensionError("BAAB tensors have order >= 2");
  if (c_.size() == 0) throw DimensionError("compressed generating matrix is empty");
  spectrum_ = ifft2(c_);
}

ComplexVector baab_tvp_partial(const BaabTensor& c, std::span<const ComplexVector> xs) {
  check_count(xs, c.order() - 1, "BAAB partial product");
  ComplexMatrix acc = c.spectrum();
  for (std::size_t p = 0; p < xs.size(); ++p) {
    check_length(xs[p], c.mode_size(), p + 1, "BAAB partial product");
    acc.array() *= fft2(unvec(xs[p], c.inner_dim(), c.outer_dim())).array();
  }
  return vec(fft2(acc));
}

Complex baab_tvp_full(const BaabTensor& c, std::span<const ComplexVector> xs) {
  check_count(xs, c.order(), "BAAB full product");
  ComplexMatrix acc = ComplexMatrix::Ones(c.spectrum().rows(), c.spectrum().cols());
  for (std::size_t p = 0; p < xs.size(); ++p) {
    check_length(xs[p], c.mode_size(), p, "BAAB full product");
    acc.array() *= fft2(unvec(xs[p], c.inner_dim(), c.outer_dim())).array();
  }
  return (c.spectrum().array() * acc.array()).sum();
}

// ---------------------------------------------------------------------------
// BHHB

BhhbTensor::BhhbTensor(Shape block_sizes, Shape outer_sizes, ComplexMatrix generating)
    : block_sizes_(std::move(block_sizes)),
      outer_sizes_(std::move(outer_sizes)),
      h_(std::move(generating)) {
  if (block_sizes_.empty() || block_sizes_.size() != outer_sizes_.size()) {
    throw DimensionError("block and outer sizes must be non-empty and of equal order");
  }
  const std::size_t dn = hankel_degree_of_freedom(block_sizes_);
  const std::size_t dN = hankel_degree_of_freedom(outer_sizes_);
  if (static_cast<std::size_t>(h_.rows()) != dn || static_cast<std::size_t>(h_.cols()) != dN) {
    throw DimensionError("generating matrix is " + std::to_string(h_.rows()) + "x" +
                         std::to_string(h_.cols()) + ", expected " + std::to_string(dn) + "x" +
                         std::to_string(dN));
  }
  spectrum_ = ifft2(h_);
}

Shape BhhbTensor::shape() const {
  Shape s(order());
  for (std::size_t p = 0; p < order(); ++p) s[p] = mode_size(p);
  return s;
}

bool BhhbTensor::is_square() const noexcept {
  for (std::size_t p = 1; p < order(); ++p) {
    if (block_sizes_[p] != block_sizes_[0] || outer_sizes_[p] != outer_sizes_[0]) return false;
  }
  return true;
}

Complex BhhbTensor::entry(std::span<const std::size_t> index) const {
  if (index.size() != order()) throw DimensionError("index order mismatch");
  std::size_t si = 0, sj = 0;
  for (std::size_t p = 0; p < order(); ++p) {
    if (index[p] >= mode_size(p)) throw DimensionError("index out of range");
    si += index[p] % block_sizes_[p];
    sj += index[p] / block_sizes_[p];
  }
  return h_(idx(si), idx(sj));
}

BhhbTensor BhhbTensor::with_leading_mode(std::size_t p) const {
  if (p >= order()) throw DimensionError("mode index out of range");
  Shape blocks{block_sizes_[p]}, outers{outer_sizes_[p]};
  for (std::size_t q = 0; q < order(); ++q) {
    if (q == p) continue;
    blocks.push_back(block_sizes_[q]);
    outers.push_back(outer_sizes_[q]);
  }
  BhhbTensor out = *this;
  out.block_sizes_ = std::move(blocks);
  out.outer_sizes_ = std::move(outers);
  return out;
}

ComplexMatrix bhhb_tvp_partial_matrix(const BhhbTensor& h, std::span<const ComplexVector> xs) {
  check_count(xs, h.order() - 1, "BHHB partial product");
  const auto rows = static_cast<std::size_t>(h.generating().rows());
  const auto cols = static_cast<std::size_t>(h.generating().cols());
  ComplexMatrix acc = h.spectrum();
  for (std::size_t p = 1; p < h.order(); ++p) {
    const ComplexVector& x = xs[p - 1];
    check_length(x, h.mode_size(p), p, "BHHB partial product");
    acc.array() *=
        padded_fft2(x, h.block_sizes()[p], h.outer_sizes()[p], rows, cols).array();
  }
  return fft2(acc).topLeftCorner(idx(h.block_sizes()[0]), idx(h.outer_sizes()[0]));
}

ComplexVector bhhb_tvp_partial(const BhhbTensor& h, std::span<const ComplexVector> xs) {
  return vec(bhhb_tvp_partial_matrix(h, xs));
}

Complex bhhb_tvp_full(const BhhbTensor& h, std::span<const ComplexVector> xs) {
  check_count(xs, h.order(), "BHHB full product");
  const auto rows = static_cast<std::size_t>(h.generating().rows());
  const auto cols = static_cast<std::size_t>(h.generating().cols());
  ComplexMatrix acc = ComplexMatrix::Ones(idx(rows), idx(cols));
  for (std::size_t p = 0; p < h.order(); ++p) {
    check_length(xs[p], h.mode_size(p), p, "BHHB full product");
    acc.array() *=
        padded_fft2(xs[p], h.block_sizes()[p], h.outer_sizes()[p], rows, cols).array();
  }
  return (h.spectrum().array() * acc.array()).sum();
}

DenseTensor bhhb_tmp(const BhhbTensor& h, std::span<const ComplexMatrix> factors) {
  const std::size_t m = h.order();
  if (factors.size() + 1 != m) {
    throw DimensionError("BHHB tensor-matrix product needs " + std::to_string(m - 1) +
                         " factors");
  }
  const auto rows = static_cast<std::size_t>(h.generating().rows());
  const auto cols = static_cast<std::size_t>(h.generating().cols());
  const std::size_t n1 = h.block_sizes()[0];
  const std::size_t big_n1 = h.outer_sizes()[0];

  Shape out_shape{h.mode_size(0)};
  std::vector<std::vector<ComplexMatrix>> column_spectra(m - 1);
  for (std::size_t p = 1; p < m; ++p) {
    const ComplexMatrix& u = factors[p - 1];
    if (static_cast<std::size_t>(u.rows()) != h.mode_size(p)) {
      throw DimensionError("factor " + std::to_string(p) + " has " + std::to_string(u.rows()) +
                           " rows, mode size is " + std::to_string(h.mode_size(p)));
    }
    if (u.cols() == 0) throw DimensionError("factor with zero columns");
    for (Eigen::Index r = 0; r < u.cols(); ++r) {
      column_spectra[p - 1].push_back(
          padded_fft2(u.col(r), h.block_sizes()[p], h.outer_sizes()[p], rows, cols));
    }
    out_shape.push_back(static_cast<std::size_t>(u.cols()));
  }

  DenseTensor out(out_shape);
  const std::size_t combos = out.size() / h.mode_size(0);
  const Shape combo_shape(out_shape.begin() + 1, out_shape.end());
  std::vector<std::size_t> combo(combo_shape.size(), 0);
  auto dst = out.data();
  for (std::size_t flat = 0; flat < combos; ++flat) {
    ComplexMatrix acc = h.spectrum();
    for (std::size_t q = 0; q < combo.size(); ++q) acc.array() *= column_spectra[q][combo[q]].array();
    const ComplexMatrix y = fft2(acc);
    for (std::size_t j = 0; j < big_n1; ++j) {
      for (std::size_t i = 0; i < n1; ++i) dst[(i + n1 * j) * combos + flat] = y(idx(i), idx(j));
    }
    for (std::size_t q = combo.size(); q-- > 0;) {
      if (++combo[q] < combo_shape[q]) break;
      combo[q] = 0;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Level k

LevelKHankelTensor::LevelKHankelTensor(std::vector<Shape> level_dims, DenseTensor generating)
    : level_dims_(std::move(level_dims)), g_(std::move(generating)) {
  if (level_dims_.empty()) throw DimensionError("level-k tensor needs at least one level");
  const std::size_t m = level_dims_.front().size();
  if (m == 0) throw DimensionError("level-k tensor order must be at least 1");
  const std::size_t k = level_dims_.size();
  if (g_.order() != k) {
    throw DimensionError("generating tensor must have order " + std::to_string(k));
  }
  for (std::size_t l = 0; l < k; ++l) {
    if (level_dims_[l].size() != m) throw DimensionError("every level must list m sizes");
    const std::size_t d = hankel_degree_of_freedom(level_dims_[l]);
    if (g_.dim(k - 1 - l) != d) {
      throw DimensionError("generating tensor axis for level " + std::to_string(l) +
                           " must have length " + std::to_string(d));
    }
  }
  spectrum_ = ifftn(g_);
}

LevelKHankelTensor LevelKHankelTensor::from_hankel(const HankelTensor& h) {
  const ComplexVector& gen = h.generating();
  DenseTensor g(Shape{static_cast<std::size_t>(gen.size())},
                std::vector<Complex>(gen.data(), gen.data() + gen.size()));
  return LevelKHankelTensor({h.shape()}, std::move(g));
}

LevelKHankelTensor LevelKHankelTensor::from_bhhb(const BhhbTensor& h) {
  const ComplexMatrix& gen = h.generating();
  // Column-major (dn x dN) storage is row-major (dN, dn).
  DenseTensor g(Shape{static_cast<std::size_t>(gen.cols()), static_cast<std::size_t>(gen.rows())},
                std::vector<Complex>(gen.data(), gen.data() + gen.size()));
  return LevelKHankelTensor({h.block_sizes(), h.outer_sizes()}, std::move(g));
}

std::size_t LevelKHankelTensor::mode_size(std::size_t p) const {
  std::size_t s = 1;
  for (const Shape& dims : level_dims_) s *= dims.at(p);
  return s;
}

Shape LevelKHankelTensor::mode_array_shape(std::size_t p) const {
  Shape s;
  for (std::size_t l = levels(); l-- > 0;) s.push_back(level_dims_[l].at(p));
  return s;
}

namespace {

DenseTensor levelk_padded_fftn(const LevelKHankelTensor& t, const ComplexVector& x,
                               std::size_t p) {
  const Shape& big = t.generating().shape();
  DenseTensor padded(big, pad_nd({x.data(), static_cast<std::size_t>(x.size())},
                                 t.mode_array_shape(p), big));
  return fftn(padded);
}

void levelk_check(const LevelKHankelTensor& t, std::span<const ComplexVector> xs,
                  std::size_t first_mode, const char* what) {
  check_count(xs, t.order() - first_mode, what);
  for (std::size_t q = 0; q < xs.size(); ++q) {
    check_length(xs[q], t.mode_size(q + first_mode), q + first_mode, what);
  }
}

}  // namespace

ComplexVector levelk_tvp_partial(const LevelKHankelTensor& t, std::span<const ComplexVector> xs) {
  levelk_check(t, xs, 1, "level-k partial product");
  DenseTensor acc = t.spectrum();
  for (std::size_t q = 0; q < xs.size(); ++q) {
    const DenseTensor f = levelk_padded_fftn(t, xs[q], q + 1);
    for (std::size_t e = 0; e < acc.size(); ++e) acc.data()[e] *= f.data()[e];
  }
  const DenseTensor y = fftn(acc);
  // Truncate to the mode-0 corner; row-major over (level k-1, ..., level 0)
  // is exactly the flat mode index.
  const Shape small = t.mode_array_shape(0);
  ComplexVector out(idx(t.mode_size(0)));
  std::vector<std::size_t> index(small.size(), 0);
  for (std::size_t flat = 0; flat < t.mode_size(0); ++flat) {
    out(idx(flat)) = y(index);
    for (std::size_t a = small.size(); a-- > 0;) {
      if (++index[a] < small[a]) break;
      index[a] = 0;
    }
  }
  return out;
}

Complex levelk_tvp_full(const LevelKHankelTensor& t, std::span<const ComplexVector> xs) {
  levelk_check(t, xs, 0, "level-k full product");
  DenseTensor acc(t.generating().shape(),
                  std::vector<Complex>(t.generating().size(), Complex{1.0, 0.0}));
  for (std::size_t q = 0; q < xs.size(); ++q) {
    const DenseTensor f = levelk_padded_fftn(t, xs[q], q);
    for (std::size_t e = 0; e < acc.size(); ++e) acc.data()[e] *= f.data()[e];
  }
  Complex alpha{};
  for (std::size_t e = 0; e < acc.size(); ++e) alpha += t.spectrum().data()[e] * acc.data()[e];
  return alpha;
}

}  // namespace fasthankel
