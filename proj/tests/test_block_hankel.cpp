#include <gtest/gtest.h>

#include "fasthankel/block_hankel.hpp"
#include "fasthankel/fft.hpp"
#include "support/oracles.hpp"

using namespace fasthankel;

namespace {

ComplexMatrix kron(const ComplexMatrix& b, const ComplexMatrix& a) {
  ComplexMatrix out(b.rows() * a.rows(), b.cols() * a.cols());
  for (Eigen::Index r = 0; r < b.rows(); ++r) {
    for (Eigen::Index c = 0; c < b.cols(); ++c) {
      out.block(r * a.rows(), c * a.cols(), a.rows(), a.cols()) = b(r, c) * a;
    }
  }
  return out;
}

std::vector<ComplexVector> random_vectors(oracle::Rng& rng, const Shape& sizes) {
  std::vector<ComplexVector> xs;
  for (std::size_t n : sizes) xs.push_back(rng.vector(n));
  return xs;
}

Shape mode_sizes(const Shape& block, const Shape& outer) {
  Shape s;
  for (std::size_t p = 0; p < block.size(); ++p) s.push_back(block[p] * outer[p]);
  return s;
}

}  // namespace

TEST(KroneckerVec, IdentityHolds) {
  oracle::Rng rng(41);
  for (int trial = 0; trial < 10; ++trial) {
    const ComplexMatrix a = rng.matrix(3, 2);
    const ComplexMatrix b = rng.matrix(4, 5);
    const ComplexVector v = rng.vector(10);
    const ComplexVector lhs = kron(b, a) * v;
    const ComplexVector rhs = vec(a * unvec(v, 2, 5) * b.transpose());
    EXPECT_LT(oracle::rel(lhs, rhs), 1e-12);
  }
  EXPECT_THROW(unvec(ComplexVector::Ones(5), 2, 3), DimensionError);
}

TEST(Baab, ZeroAndDegenerateInnerLevel) {
  oracle::Rng rng(42);
  const BaabTensor zero(3, ComplexMatrix::Zero(3, 4));
  const auto xs = random_vectors(rng, {12, 12});
  EXPECT_LT(baab_tvp_partial(zero, xs).norm(), 1e-15);

  // n = 1: an anti-circulant tensor of dimension N.
  const ComplexMatrix c = rng.matrix(1, 5);
  const BaabTensor t(3, c);
  const auto ys = random_vectors(rng, {5, 5});
  const AntiCirculantTensor ac(3, c.row(0).transpose());
  EXPECT_LT(oracle::rel(baab_tvp_partial(t, ys), acirc_tvp_partial(ac, ys)), 1e-13);
}

TEST(Baab, ProductsMatchOracle) {
  oracle::Rng rng(43);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = rng.uniform(1, 4), big_n = rng.uniform(1, 4);
    const std::size_t m = rng.uniform(2, 3);
    const ComplexMatrix c = rng.matrix(n, big_n);
    const BaabTensor t(m, c);
    const DenseTensor dense = oracle::baab(c, m);
    const auto xs = random_vectors(rng, Shape(m, n * big_n));
    const std::vector<ComplexVector> tail(xs.begin() + 1, xs.end());
    EXPECT_LT(oracle::rel(baab_tvp_partial(t, tail), oracle::partial(dense, tail)), 1e-11);
    EXPECT_LT(oracle::rel(baab_tvp_full(t, xs), oracle::full(dense, xs)), 1e-11);
  }
}

TEST(Baab, DiagonalizedByKroneckerFourier) {
  oracle::Rng rng(44);
  for (std::size_t n = 1; n <= 4; ++n) {
    for (std::size_t big_n = 1; big_n <= 4; ++big_n) {
      for (std::size_t m = 2; m <= 3; ++m) {
        const ComplexMatrix c = rng.matrix(n, big_n);
        const ComplexMatrix fn = oracle::dft_matrix(n);
        const ComplexMatrix fbig = oracle::dft_matrix(big_n);
        const ComplexVector d =
            vec(fn.conjugate() * c * fbig.conjugate()) / double(n * big_n);
        EXPECT_LT(oracle::rel(vec(BaabTensor(m, c).spectrum()), d), 1e-12);
        DenseTensor t(Shape(m, n * big_n));
        for (std::size_t k = 0; k < n * big_n; ++k) {
          t(std::vector<std::size_t>(m, k)) = d(oracle::ix(k));
        }
        const ComplexMatrix f = kron(fbig, fn);
        for (std::size_t p = 0; p < m; ++p) t = oracle::mode_product(t, p, f);
        EXPECT_LT(relative_error(t, oracle::baab(c, m)), 1e-12);
      }
    }
  }
}

TEST(Bhhb, Construction) {
  EXPECT_THROW(BhhbTensor({2, 2}, {2, 2}, ComplexMatrix::Zero(3, 2)), DimensionError);
  EXPECT_THROW(BhhbTensor({2, 2}, {2}, ComplexMatrix::Zero(3, 3)), DimensionError);
  oracle::Rng rng(45);
  const Shape block{2, 3}, outer{3, 2};
  const ComplexMatrix g = rng.matrix(4, 4);
  const BhhbTensor t(block, outer, g);
  EXPECT_EQ(t.shape(), (Shape{6, 6}));
  EXPECT_FALSE(t.is_square());
  const DenseTensor dense = oracle::bhhb(g, block, outer);
  oracle::for_each_index(dense.shape(), [&](const std::vector<std::size_t>& i) {
    EXPECT_EQ(t.entry(i), dense(i));
  });
}

TEST(Bhhb, ZeroAndDegenerateOuterLevel) {
  oracle::Rng rng(46);
  const BhhbTensor zero({3, 3, 3}, {2, 2, 2}, ComplexMatrix::Zero(7, 4));
  EXPECT_LT(bhhb_tvp_partial(zero, random_vectors(rng, {6, 6})).norm(), 1e-15);

  const ComplexMatrix g = rng.matrix(8, 1);
  const BhhbTensor t({3, 4, 3}, {1, 1, 1}, g);
  const HankelTensor h(Shape{3, 4, 3}, g.col(0));
  const auto xs = random_vectors(rng, {4, 3});
  EXPECT_LT(oracle::rel(bhhb_tvp_partial(t, xs), hankel_tvp_partial(h, xs)), 1e-13);
}

TEST(Bhhb, ProductsMatchOracle) {
  oracle::Rng rng(47);
  const Shape block{3, 3, 3}, outer{2, 2, 2};
  for (int trial = 0; trial < 10; ++trial) {
    const ComplexMatrix g = rng.matrix(7, 4);
    const BhhbTensor t(block, outer, g);
    const DenseTensor dense = oracle::bhhb(g, block, outer);
    const auto xs = random_vectors(rng, {6, 6, 6});
    const std::vector<ComplexVector> tail(xs.begin() + 1, xs.end());
    const ComplexVector ref = oracle::partial(dense, tail);
    EXPECT_LT(oracle::rel(bhhb_tvp_partial(t, tail), ref), 1e-11);
    EXPECT_LT(oracle::rel(bhhb_tvp_full(t, xs), oracle::full(dense, xs)), 1e-11);
    EXPECT_LT(oracle::rel(vec(bhhb_tvp_partial_matrix(t, tail)), ref), 1e-11);
    EXPECT_EQ(bhhb_tvp_partial_matrix(t, tail).rows(), 3);
  }
  const BhhbTensor t(block, outer, rng.matrix(7, 4));
  EXPECT_THROW(bhhb_tvp_partial(t, random_vectors(rng, {6, 5})), DimensionError);
}

TEST(Bhhb, NonSquareProductsMatchOracle) {
  oracle::Rng rng(48);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t m = rng.uniform(2, 3);
    Shape block, outer;
    for (std::size_t p = 0; p < m; ++p) {
      block.push_back(rng.uniform(1, 4));
      outer.push_back(rng.uniform(1, 3));
    }
    const ComplexMatrix g =
        rng.matrix(hankel_degree_of_freedom(block), hankel_degree_of_freedom(outer));
    const BhhbTensor t(block, outer, g);
    const DenseTensor dense = oracle::bhhb(g, block, outer);
    const auto xs = random_vectors(rng, mode_sizes(block, outer));
    const std::vector<ComplexVector> tail(xs.begin() + 1, xs.end());
    EXPECT_LT(oracle::rel(bhhb_tvp_partial(t, tail), oracle::partial(dense, tail)), 1e-11);
    EXPECT_LT(oracle::rel(bhhb_tvp_full(t, xs), oracle::full(dense, xs)), 1e-11);
  }
}

TEST(BhhbTmp, MatchesDenseModeProducts) {
  oracle::Rng rng(49);
  const Shape block{3, 2, 3}, outer{2, 3, 2};
  const ComplexMatrix g = rng.matrix(6, 5);
  const std::vector<ComplexMatrix> us{rng.matrix(6, 2), rng.matrix(6, 3)};
  DenseTensor expected = oracle::bhhb(g, block, outer);
  expected = oracle::mode_product(expected, 1, us[0]);
  expected = oracle::mode_product(expected, 2, us[1]);
  EXPECT_LT(relative_error(bhhb_tmp(BhhbTensor(block, outer, g), us), expected), 1e-11);
}

TEST(Bhhb, LeadingModePermutation) {
  oracle::Rng rng(50);
  const Shape block{2, 3}, outer{3, 2};
  const ComplexMatrix g = rng.matrix(4, 4);
  const BhhbTensor t(block, outer, g);
  const BhhbTensor t1 = t.with_leading_mode(1);
  EXPECT_EQ(t1.block_sizes(), (Shape{3, 2}));
  const ComplexVector x = rng.vector(6);
  const DenseTensor dense = oracle::bhhb(g, block, outer);
  ComplexVector ref = ComplexVector::Zero(6);
  oracle::for_each_index(dense.shape(), [&](const std::vector<std::size_t>& i) {
    ref(oracle::ix(i[1])) += dense(i) * x(oracle::ix(i[0]));
  });
  EXPECT_LT(oracle::rel(bhhb_tvp_partial(t1, std::vector<ComplexVector>{x}), ref), 1e-12);
}

TEST(LevelK, LevelOneIsHankel) {
  oracle::Rng rng(51);
  const Shape shape{3, 4, 2};
  const HankelTensor h(shape, rng.vector(7));
  const LevelKHankelTensor t = LevelKHankelTensor::from_hankel(h);
  EXPECT_EQ(t.levels(), 1u);
  const auto xs = random_vectors(rng, shape);
  const std::vector<ComplexVector> tail(xs.begin() + 1, xs.end());
  EXPECT_LT(oracle::rel(levelk_tvp_partial(t, tail), hankel_tvp_partial(h, tail)), 1e-13);
  EXPECT_LT(oracle::rel(levelk_tvp_full(t, xs), hankel_tvp_full(h, xs)), 1e-13);
}

TEST(LevelK, LevelTwoIsBhhb) {
  oracle::Rng rng(52);
  const Shape block{3, 2, 2}, outer{2, 3, 2};
  const BhhbTensor b(block, outer, rng.matrix(5, 5));
  const LevelKHankelTensor t = LevelKHankelTensor::from_bhhb(b);
  EXPECT_EQ(t.levels(), 2u);
  const auto xs = random_vectors(rng, mode_sizes(block, outer));
  const std::vector<ComplexVector> tail(xs.begin() + 1, xs.end());
  EXPECT_LT(oracle::rel(levelk_tvp_partial(t, tail), bhhb_tvp_partial(b, tail)), 1e-13);
  EXPECT_LT(oracle::rel(levelk_tvp_full(t, xs), bhhb_tvp_full(b, xs)), 1e-13);
}

TEST(LevelK, LevelThreeMatchesRecursiveOracle) {
  oracle::Rng rng(53);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t m = rng.uniform(2, 3);
    std::vector<Shape> dims(3);
    Shape g_shape;
    for (std::size_t l = 0; l < 3; ++l) {
      for (std::size_t p = 0; p < m; ++p) dims[l].push_back(rng.uniform(1, 3));
    }
    for (std::size_t l = 3; l-- > 0;) g_shape.push_back(hankel_degree_of_freedom(dims[l]));
    const DenseTensor g = rng.tensor(g_shape);
    const LevelKHankelTensor t(dims, g);
    const DenseTensor dense = oracle::level_k(dims, g);
    Shape sizes;
    for (std::size_t p = 0; p < m; ++p) sizes.push_back(t.mode_size(p));
    EXPECT_EQ(dense.shape(), sizes);
    const auto xs = random_vectors(rng, sizes);
    const std::vector<ComplexVector> tail(xs.begin() + 1, xs.end());
    EXPECT_LT(oracle::rel(levelk_tvp_partial(t, tail), oracle::partial(dense, tail)), 1e-11);
    EXPECT_LT(oracle::rel(levelk_tvp_full(t, xs), oracle::full(dense, xs)), 1e-11);
  }
}

TEST(LevelK, RejectsInconsistentSizes) {
  EXPECT_THROW(LevelKHankelTensor({{2, 2}, {2, 2}}, DenseTensor(Shape{3, 2})), DimensionError);
  EXPECT_THROW(LevelKHankelTensor({{2, 2}, {2}}, DenseTensor(Shape{3, 3})), DimensionError);
  const LevelKHankelTensor t({{2, 2}, {2, 2}}, DenseTensor(Shape{3, 3}));
  EXPECT_THROW(levelk_tvp_partial(t, std::vector<ComplexVector>{ComplexVector::Ones(3)}),
               DimensionError);
}
