#include "fasthankel/hankel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fasthankel/fft.hpp"

namespace fasthankel {

namespace {

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

// acc .*= fft(pad(x)) for every x.
void multiply_spectra(ComplexVector& acc, std::span<const ComplexVector> xs) {
  const std::size_t len = static_cast<std::size_t>(acc.size());
  for (const ComplexVector& x : xs) acc.array() *= fft(zero_pad(x, len)).array();
}

void check_lengths(std::span<const ComplexVector> xs, std::span<const std::size_t> dims,
                   const char* what) {
  if (xs.size() != dims.size()) {
    throw DimensionError(std::string(what) + ": expected " + std::to_string(dims.size()) +
                         " vectors, got " + std::to_string(xs.size()));
  }
  for (std::size_t p = 0; p < dims.size(); ++p) {
    if (static_cast<std::size_t>(xs[p].size()) != dims[p]) {
      throw DimensionError(std::string(what) + ": vector " + std::to_string(p) +
                           " has length " + std::to_string(xs[p].size()) + ", expected " +
                           std::to_string(dims[p]));
    }
  }
}

}  // namespace

ComplexVector zero_pad(const ComplexVector& v, std::size_t length) {
  if (static_cast<std::size_t>(v.size()) > length) {
    throw DimensionError("cannot pad a vector to a shorter length");
  }
  ComplexVector out = ComplexVector::Zero(idx(length));
  out.head(v.size()) = v;
  return out;
}

std::size_t hankel_degree_of_freedom(std::span<const std::size_t> shape) {
  std::size_t d = 1;
  for (std::size_t n : shape) {
    if (n == 0) throw DimensionError("tensor dimensions must be positive");
    d += n - 1;
  }
  return d;
}

AntiCirculantTensor::AntiCirculantTensor(std::size_t order, ComplexVector compressed)
    : order_(order), c_(std::move(compressed)) {
  if (order_ < 2) throw DimensionError("anti-circulant tensors have order >= 2");
  if (c_.size() == 0) throw DimensionError("compressed generating vector is empty");
  spectrum_ = ifft(c_);
}

Complex AntiCirculantTensor::entry(std::span<const std::size_t> index) const {
  if (index.size() != order_) throw DimensionError("index order mismatch");
  std::size_t s = 0;
  for (std::size_t i : index) {
    if (i >= dim()) throw DimensionError("index out of range");
    s += i;
  }
  return c_(idx(s % dim()));
}

HankelTensor::HankelTensor(Shape shape, ComplexVector generating)
    : shape_(std::move(shape)), h_(std::move(generating)) {
  if (shape_.empty()) throw DimensionError("Hankel tensor order must be at least 1");
  const std::size_t d = hankel_degree_of_freedom(shape_);
  if (static_cast<std::size_t>(h_.size()) != d) {
    throw DimensionError("generating vector has length " + std::to_string(h_.size()) +
                         ", shape " + shape_string(shape_) + " needs " + std::to_string(d));
  }
  spectrum_ = ifft(h_);
}

HankelTensor HankelTensor::square(std::size_t order, std::size_t dim, ComplexVector generating) {
  return HankelTensor(Shape(order, dim), std::move(generating));
}

bool HankelTensor::is_square() const noexcept {
  return std::all_of(shape_.begin(), shape_.end(),
                     [&](std::size_t n) { return n == shape_.front(); });
}

Complex HankelTensor::entry(std::span<const std::size_t> index) const {
  if (index.size() != shape_.size()) throw DimensionError("index order mismatch");
  std::size_t s = 0;
  for (std::size_t p = 0; p < index.size(); ++p) {
    if (index[p] >= shape_[p]) throw DimensionError("index out of range");
    s += index[p];
  }
  return h_(idx(s));
}

HankelTensor HankelTensor::with_leading_mode(std::size_t p) const {
  if (p >= shape_.size()) throw DimensionError("mode index out of range");
  Shape permuted;
  permuted.reserve(shape_.size());
  permuted.push_back(shape_[p]);
  for (std::size_t q = 0; q < shape_.size(); ++q) {
    if (q != p) permuted.push_back(shape_[q]);
  }
  HankelTensor out = *this;
  out.shape_ = std::move(permuted);
  return out;
}

ComplexVector acirc_spectrum(const AntiCirculantTensor& c) { return c.spectrum(); }

std::vector<EigenPair> acirc_special_eigenpairs(const AntiCirculantTensor& c) {
  const std::size_t n = c.dim();
  const double scale = std::pow(static_cast<double>(n), static_cast<double>(c.order()) - 2.0);
  std::vector<EigenPair> pairs;
  pairs.push_back({scale * c.compressed().sum(), ComplexVector::Ones(idx(n))});
  if (n % 2 == 0) {
    ComplexVector alt(idx(n));
    for (std::size_t k = 0; k < n; ++k) alt(idx(k)) = (k % 2 == 0) ? 1.0 : -1.0;
    pairs.push_back({scale * (alt.array() * c.compressed().array()).sum(), alt});
  }
  return pairs;
}

ComplexVector acirc_tvp_partial(const AntiCirculantTensor& c, std::span<const ComplexVector> xs) {
  const std::vector<std::size_t> dims(c.order() - 1, c.dim());
  check_lengths(xs, dims, "anti-circulant partial product");
  ComplexVector acc = c.spectrum();
  multiply_spectra(acc, xs);
  return fft(acc);
}

Complex acirc_tvp_full(const AntiCirculantTensor& c, std::span<const ComplexVector> xs) {
  const std::vector<std::size_t> dims(c.order(), c.dim());
  check_lengths(xs, dims, "anti-circulant full product");
  ComplexVector acc = ComplexVector::Ones(c.spectrum().size());
  multiply_spectra(acc, xs);
  return (c.spectrum().array() * acc.array()).sum();
}

AntiCirculantTensor embed(const HankelTensor& h) {
  if (h.order() < 2) throw DimensionError("embedding needs a tensor of order >= 2");
  return AntiCirculantTensor(h.order(), h.generating());
}

ComplexVector hankel_tvp_partial(const HankelTensor& h, std::span<const ComplexVector> xs) {
  check_lengths(xs, std::span(h.shape()).subspan(1), "Hankel partial product");
  ComplexVector acc = h.spectrum();
  multiply_spectra(acc, xs);
  return fft(acc).head(idx(h.dim(0)));
}

Complex hankel_tvp_full(const HankelTensor& h, std::span<const ComplexVector> xs) {
  check_lengths(xs, h.shape(), "Hankel full product");
  ComplexVector acc = ComplexVector::Ones(h.spectrum().size());
  multiply_spectra(acc, xs);
  return (h.spectrum().array() * acc.array()).sum();
}

DenseTensor hankel_tmp(const HankelTensor& h, std::span<const ComplexMatrix> factors) {
  const std::size_t m = h.order();
  if (factors.size() + 1 != m) {
    throw DimensionError("Hankel tensor-matrix product needs " + std::to_string(m - 1) +
                         " factors");
  }
  const std::size_t d = h.degree_of_freedom();
  Shape out_shape{h.dim(0)};
  // Column spectra fft(pad(U_p(:, r))), computed once per factor.
  std::vector<ComplexMatrix> column_spectra;
  column_spectra.reserve(factors.size());
  for (std::size_t p = 1; p < m; ++p) {
    const ComplexMatrix& u = factors[p - 1];
    if (static_cast<std::size_t>(u.rows()) != h.dim(p)) {
      throw DimensionError("factor " + std::to_string(p) + " has " + std::to_string(u.rows()) +
                           " rows, mode size is " + std::to_string(h.dim(p)));
    }
    if (u.cols() == 0) throw DimensionError("factor with zero columns");
    ComplexMatrix spec(idx(d), u.cols());
    for (Eigen::Index r = 0; r < u.cols(); ++r) {
      spec.col(r) = fft(zero_pad(u.col(r), d));
    }
    column_spectra.push_back(std::move(spec));
    out_shape.push_back(static_cast<std::size_t>(u.cols()));
  }

  DenseTensor out(out_shape);
  const std::size_t combos = out.size() / h.dim(0);
  const Shape combo_shape(out_shape.begin() + 1, out_shape.end());
  std::vector<std::size_t> combo(combo_shape.size(), 0);
  auto dst = out.data();
  for (std::size_t flat = 0; flat < combos; ++flat) {
    ComplexVector acc = h.spectrum();
    for (std::size_t q = 0; q < combo.size(); ++q) {
      acc.array() *= column_spectra[q].col(idx(combo[q])).array();
    }
    const ComplexVector y = fft(acc);
    for (std::size_t i = 0; i < h.dim(0); ++i) dst[i * combos + flat] = y(idx(i));
    for (std::size_t q = combo.size(); q-- > 0;) {
      if (++combo[q] < combo_shape[q]) break;
      combo[q] = 0;
    }
  }
  return out;
}

}  // namespace fasthankel
