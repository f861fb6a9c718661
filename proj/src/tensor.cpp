#include "fasthankel/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace fasthankel {

namespace {

std::atomic<std::size_t> g_dense_builds{0};

// Advance a row-major multi-index; returns false after the last one.
bool next_index(std::vector<std::size_t>& idx, std::span<const std::size_t> shape) {
  for (std::size_t p = idx.size(); p-- > 0;) {
    if (++idx[p] < shape[p]) return true;
    idx[p] = 0;
  }
  return false;
}

void check_cap(const Shape& shape, std::size_t max_entries) {
  const std::size_t total = shape_product(shape);
  if (total > max_entries) {
    throw DimensionError("dense oracle of shape " + shape_string(shape) + " has " +
                         std::to_string(total) + " entries, above the cap of " +
                         std::to_string(max_entries));
  }
}

void check_positive(const Shape& shape) {
  if (shape.empty()) throw DimensionError("tensor order must be at least 1");
  for (std::size_t n : shape) {
    if (n == 0) throw DimensionError("tensor dimensions must be positive");
  }
}

}  // namespace

std::size_t shape_product(std::span<const std::size_t> shape) {
  return std::accumulate(shape.begin(), shape.end(), std::size_t{1},
                         std::multiplies<>());
}

std::string shape_string(std::span<const std::size_t> shape) {
  std::ostringstream os;
  for (std::size_t p = 0; p < shape.size(); ++p) os << (p ? "x" : "") << shape[p];
  return os.str();
}

DenseTensor::DenseTensor(Shape shape) : shape_(std::move(shape)) {
  check_positive(shape_);
  data_.assign(shape_product(shape_), Complex{});
}

DenseTensor::DenseTensor(Shape shape, std::vector<Complex> data)
    : shape_(std::move(shape)), data_(std::move(data)) {
  check_positive(shape_);
  if (data_.size() != shape_product(shape_)) {
    throw DimensionError("data length " + std::to_string(data_.size()) +
                         " does not match shape " + shape_string(shape_));
  }
}

std::size_t DenseTensor::offset(std::span<const std::size_t> index) const {
  if (index.size() != shape_.size()) throw DimensionError("index order mismatch");
  std::size_t off = 0;
  for (std::size_t p = 0; p < shape_.size(); ++p) {
    if (index[p] >= shape_[p]) throw DimensionError("index out of range");
    off = off * shape_[p] + index[p];
  }
  return off;
}

double DenseTensor::frobenius_norm() const {
  double s = 0.0;
  for (const Complex& v : data_) s += std::norm(v);
  return std::sqrt(s);
}

DenseTensor& DenseTensor::operator+=(const DenseTensor& other) {
  if (other.shape_ != shape_) throw DimensionError("shape mismatch in tensor sum");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

DenseTensor& DenseTensor::operator-=(const DenseTensor& other) {
  if (other.shape_ != shape_) throw DimensionError("shape mismatch in tensor difference");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
  return *this;
}

DenseTensor operator+(DenseTensor a, const DenseTensor& b) { return a += b; }
DenseTensor operator-(DenseTensor a, const DenseTensor& b) { return a -= b; }

double relative_error(const DenseTensor& a, const DenseTensor& b) {
  const double diff = (a - b).frobenius_norm();
  const double ref = b.frobenius_norm();
  return ref > 0.0 ? diff / ref : diff;
}

DenseTensor mode_product(const DenseTensor& a, std::size_t p, const ComplexMatrix& m) {
  if (p >= a.order()) throw DimensionError("mode index out of range");
  if (static_cast<std::size_t>(m.rows()) != a.dim(p)) {
    throw DimensionError("mode product: matrix has " + std::to_string(m.rows()) +
                         " rows, tensor mode " + std::to_string(p) + " has size " +
                         std::to_string(a.dim(p)));
  }
  const auto& shape = a.shape();
  const std::size_t outer = shape_product(std::span(shape).first(p));
  const std::size_t inner = shape_product(std::span(shape).subspan(p + 1));
  const std::size_t n_in = shape[p];
  const std::size_t n_out = static_cast<std::size_t>(m.cols());

  Shape out_shape = shape;
  out_shape[p] = n_out;
  DenseTensor out(out_shape);
  auto src = a.data();
  auto dst = out.data();
  for (std::size_t o = 0; o < outer; ++o) {
    for (std::size_t j = 0; j < n_out; ++j) {
      Complex* d = dst.data() + (o * n_out + j) * inner;
      for (std::size_t i = 0; i < n_in; ++i) {
        const Complex w = m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        if (w == Complex{}) continue;
        const Complex* s = src.data() + (o * n_in + i) * inner;
        for (std::size_t t = 0; t < inner; ++t) d[t] += s[t] * w;
      }
    }
  }
  return out;
}

ComplexVector contract_partial(const DenseTensor& a, std::span<const ComplexVector> xs) {
  const std::size_t m = a.order();
  if (xs.size() + 1 != m) {
    throw DimensionError("partial contraction needs " + std::to_string(m - 1) + " vectors");
  }
  for (std::size_t p = 1; p < m; ++p) {
    if (static_cast<std::size_t>(xs[p - 1].size()) != a.dim(p)) {
      throw DimensionError("vector length does not match mode " + std::to_string(p));
    }
  }
  const auto& shape = a.shape();
  ComplexVector y = ComplexVector::Zero(static_cast<Eigen::Index>(shape[0]));
  if (m == 1) {
    for (std::size_t i = 0; i < shape[0]; ++i) y(static_cast<Eigen::Index>(i)) = a.data()[i];
    return y;
  }
  // Walk the entries in storage order; the last mode is a dot product.
  const std::size_t last = shape[m - 1];
  const ComplexVector& x_last = xs[m - 2];
  std::vector<std::size_t> prefix(m - 1, 0);
  const Shape prefix_shape(shape.begin(), shape.end() - 1);
  const Complex* entry = a.data().data();
  do {
    Complex weight{1.0, 0.0};
    for (std::size_t p = 1; p + 1 < m; ++p) weight *= xs[p - 1](static_cast<Eigen::Index>(prefix[p]));
    Complex dot{};
    for (std::size_t k = 0; k < last; ++k) dot += entry[k] * x_last(static_cast<Eigen::Index>(k));
    y(static_cast<Eigen::Index>(prefix[0])) += weight * dot;
    entry += last;
  } while (next_index(prefix, prefix_shape));
  return y;
}

Complex contract_full(const DenseTensor& a, std::span<const ComplexVector> xs) {
  if (xs.size() != a.order()) {
    throw DimensionError("full contraction needs " + std::to_string(a.order()) + " vectors");
  }
  if (static_cast<std::size_t>(xs[0].size()) != a.dim(0)) {
    throw DimensionError("vector length does not match mode 0");
  }
  const ComplexVector y = contract_partial(a, xs.subspan(1));
  return (y.array() * xs[0].array()).sum();
}

ComplexMatrix unfold(const DenseTensor& a, std::size_t p) {
  if (p >= a.order()) throw DimensionError("mode index out of range");
  const auto& shape = a.shape();
  const std::size_t rows = shape[p];
  const std::size_t cols = a.size() / rows;
  const std::size_t inner = shape_product(std::span(shape).subspan(p + 1));
  ComplexMatrix out(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  auto src = a.data();
  // Storage index = (outer * n_p + i) * inner + t; column = outer * inner + t.
  for (std::size_t k = 0; k < a.size(); ++k) {
    const std::size_t t = k % inner;
    const std::size_t i = (k / inner) % rows;
    const std::size_t o = k / (inner * rows);
    out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(o * inner + t)) = src[k];
  }
  return out;
}

DenseTensor fold(const ComplexMatrix& m, std::size_t p, const Shape& shape) {
  if (p >= shape.size()) throw DimensionError("mode index out of range");
  const std::size_t rows = shape[p];
  const std::size_t total = shape_product(shape);
  if (static_cast<std::size_t>(m.rows()) != rows ||
      static_cast<std::size_t>(m.size()) != total) {
    throw DimensionError("fold: matrix does not match shape " + shape_string(shape));
  }
  DenseTensor out(shape);
  const std::size_t inner = shape_product(std::span(shape).subspan(p + 1));
  auto dst = out.data();
  for (std::size_t k = 0; k < total; ++k) {
    const std::size_t t = k % inner;
    const std::size_t i = (k / inner) % rows;
    const std::size_t o = k / (inner * rows);
    dst[k] = m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(o * inner + t));
  }
  return out;
}

std::size_t dense_build_count() noexcept { return g_dense_builds.load(); }

DenseTensor build_hankel_dense(const ComplexVector& h, const Shape& shape,
                               std::size_t max_entries) {
  check_positive(shape);
  std::size_t d = 1;
  for (std::size_t n : shape) d += n - 1;
  if (static_cast<std::size_t>(h.size()) != d) {
    throw DimensionError("generating vector has length " + std::to_string(h.size()) +
                         ", shape " + shape_string(shape) + " needs " + std::to_string(d));
  }
  check_cap(shape, max_entries);
  ++g_dense_builds;
  DenseTensor out(shape);
  std::vector<std::size_t> idx(shape.size(), 0);
  auto dst = out.data();
  std::size_t k = 0;
  do {
    const std::size_t s = std::accumulate(idx.begin(), idx.end(), std::size_t{0});
    dst[k++] = h(static_cast<Eigen::Index>(s));
  } while (next_index(idx, shape));
  return out;
}

DenseTensor build_acirc_dense(const ComplexVector& c, std::size_t order,
                              std::size_t max_entries) {
  if (c.size() == 0) throw DimensionError("compressed generating vector is empty");
  const std::size_t n = static_cast<std::size_t>(c.size());
  const Shape shape(order, n);
  check_positive(shape);
  check_cap(shape, max_entries);
  ++g_dense_builds;
  DenseTensor out(shape);
  std::vector<std::size_t> idx(order, 0);
  auto dst = out.data();
  std::size_t k = 0;
  do {
    const std::size_t s = std::accumulate(idx.begin(), idx.end(), std::size_t{0});
    dst[k++] = c(static_cast<Eigen::Index>(s % n));
  } while (next_index(idx, shape));
  return out;
}

DenseTensor build_bhhb_dense(const ComplexMatrix& generating, const Shape& block_sizes,
                             const Shape& outer_sizes, std::size_t max_entries) {
  check_positive(block_sizes);
  check_positive(outer_sizes);
  if (block_sizes.size() != outer_sizes.size()) {
    throw DimensionError("block and outer sizes must have the same order");
  }
  const std::size_t m = block_sizes.size();
  std::size_t dn = 1, dN = 1;
  for (std::size_t p = 0; p < m; ++p) {
    dn += block_sizes[p] - 1;
    dN += outer_sizes[p] - 1;
  }
  if (static_cast<std::size_t>(generating.rows()) != dn ||
      static_cast<std::size_t>(generating.cols()) != dN) {
    throw DimensionError("generating matrix must be " + std::to_string(dn) + "x" +
                         std::to_string(dN));
  }
  Shape shape(m);
  for (std::size_t p = 0; p < m; ++p) shape[p] = block_sizes[p] * outer_sizes[p];
  check_cap(shape, max_entries);
  ++g_dense_builds;
  DenseTensor out(shape);
  std::vector<std::size_t> idx(m, 0);
  auto dst = out.data();
  std::size_t k = 0;
  do {
    std::size_t si = 0, sj = 0;
    for (std::size_t p = 0; p < m; ++p) {
      si += idx[p] % block_sizes[p];
      sj += idx[p] / block_sizes[p];
    }
    dst[k++] = generating(static_cast<Eigen::Index>(si), static_cast<Eigen::Index>(sj));
  } while (next_index(idx, shape));
  return out;
}

DenseTensor build_baab_dense(const ComplexMatrix& compressed, std::size_t order,
                             std::size_t max_entries) {
  if (compressed.size() == 0) throw DimensionError("compressed generating matrix is empty");
  const std::size_t n = static_cast<std::size_t>(compressed.rows());
  const std::size_t big_n = static_cast<std::size_t>(compressed.cols());
  const Shape shape(order, n * big_n);
  check_positive(shape);
  check_cap(shape, max_entries);
  ++g_dense_builds;
  DenseTensor out(shape);
  std::vector<std::size_t> idx(order, 0);
  auto dst = out.data();
  std::size_t k = 0;
  do {
    std::size_t si = 0, sj = 0;
    for (std::size_t v : idx) {
      si += v % n;
      sj += v / n;
    }
    dst[k++] = compressed(static_cast<Eigen::Index>(si % n),
                          static_cast<Eigen::Index>(sj % big_n));
  } while (next_index(idx, shape));
  return out;
}

}  // namespace fasthankel
