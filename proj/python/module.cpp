#include <functional>
#include <optional>

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fasthankel/block_hankel.hpp"
#include "fasthankel/decomposition.hpp"
#include "fasthankel/expfit.hpp"
#include "fasthankel/hankel.hpp"

namespace py = pybind11;
using namespace fasthankel;

namespace {

using CArray = py::array_t<Complex, py::array::c_style | py::array::forcecast>;

py::array_t<Complex> to_numpy(const DenseTensor& t) {
  std::vector<py::ssize_t> shape(t.shape().begin(), t.shape().end());
  py::array_t<Complex> out(shape);
  std::copy(t.data().begin(), t.data().end(), out.mutable_data());
  return out;
}

DenseTensor from_numpy(const CArray& a) {
  Shape shape(a.shape(), a.shape() + a.ndim());
  return DenseTensor(shape, std::vector<Complex>(a.data(), a.data() + a.size()));
}

py::object tvp_result(std::size_t order, std::size_t count,
                      const std::function<ComplexVector()>& partial,
                      const std::function<Complex()>& full) {
  if (count + 1 == order) return py::cast(partial());
  if (count == order) return py::cast(full());
  throw DimensionError("expected " + std::to_string(order - 1) + " or " + std::to_string(order) +
                       " vectors, got " + std::to_string(count));
}

py::dict estimate_dict(const PoleEstimate& e) {
  py::dict d;
  d["poles"] = e.poles;
  if (!e.poles2.empty()) d["poles2"] = e.poles2;
  d["amplitudes"] = e.amplitudes;
  d["warnings"] = e.warnings;
  d["hooi_iterations"] = e.hooi_iterations;
  d["hooi_converged"] = e.hooi_converged;
  d["pairing_residual"] = e.pairing_residual;
  return d;
}

HooiConfig config(double tol, std::size_t max_iter) {
  HooiConfig cfg;
  cfg.tol = tol;
  cfg.max_iter = max_iter;
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Fast products and decompositions for Hankel and block Hankel tensors";

  py::register_exception<DimensionError>(m, "DimensionError", PyExc_ValueError);
  py::register_exception<DegenerateError>(m, "DegenerateError", PyExc_RuntimeError);

  m.def("degree_of_freedom", [](const Shape& shape) { return hankel_degree_of_freedom(shape); },
        py::arg("shape"));

  m.def(
      "hankel_dense",
      [](const ComplexVector& h, const Shape& shape) {
        return to_numpy(build_hankel_dense(h, shape));
      },
      py::arg("h"), py::arg("shape"));

  m.def(
      "hankel_tvp",
      [](const ComplexVector& h, const Shape& shape, const std::vector<ComplexVector>& xs) {
        const HankelTensor t(shape, h);
        return tvp_result(
            t.order(), xs.size(), [&] { return hankel_tvp_partial(t, xs); },
            [&] { return hankel_tvp_full(t, xs); });
      },
      py::arg("h"), py::arg("shape"), py::arg("vectors"),
      "Contract modes 1.. (m-1 vectors) or all modes (m vectors).");

  m.def(
      "anti_circulant_spectrum",
      [](const ComplexVector& c, std::size_t order) {
        return acirc_spectrum(AntiCirculantTensor(order, c));
      },
      py::arg("c"), py::arg("order"));

  m.def(
      "bhhb_dense",
      [](const ComplexMatrix& g, const Shape& block, const Shape& outer) {
        return to_numpy(build_bhhb_dense(g, block, outer));
      },
      py::arg("g"), py::arg("block"), py::arg("outer"));

  m.def(
      "bhhb_tvp",
      [](const ComplexMatrix& g, const Shape& block, const Shape& outer,
         const std::vector<ComplexVector>& xs) {
        const BhhbTensor t(block, outer, g);
        return tvp_result(
            block.size(), xs.size(), [&] { return bhhb_tvp_partial(t, xs); },
            [&] { return bhhb_tvp_full(t, xs); });
      },
      py::arg("g"), py::arg("block"), py::arg("outer"), py::arg("vectors"));

  m.def(
      "hooi",
      [](const CArray& a, const Shape& ranks, double tol, std::size_t max_iter) {
        HooiConfig cfg = config(tol, max_iter);
        cfg.ranks = ranks;
        const TuckerFactors f = hooi_general(from_numpy(a), cfg);
        return py::make_tuple(to_numpy(f.core), f.factors, f.iterations, f.converged);
      },
      py::arg("tensor"), py::arg("ranks"), py::arg("tol") = 1e-10, py::arg("max_iter") = 100,
      "Tucker decomposition of a dense tensor; returns (core, factors, iterations, converged).");

  m.def(
      "hooi_square_hankel",
      [](const ComplexVector& h, std::size_t order, std::size_t rank, double tol,
         std::size_t max_iter) {
        const auto len = static_cast<std::size_t>(h.size());
        const std::size_t n = order == 0 ? 0 : (len + order - 1) / order;
        if (n == 0 || order * (n - 1) + 1 != len) {
          throw DimensionError("length of h must be order*(n-1)+1");
        }
        const SymmetricTucker s =
            hooi_square_hankel(HankelTensor::square(order, n, h), rank, config(tol, max_iter));
        return py::make_tuple(to_numpy(s.core), s.factor, s.iterations, s.converged);
      },
      py::arg("h"), py::arg("order"), py::arg("rank"), py::arg("tol") = 1e-10,
      py::arg("max_iter") = 100);

  m.def("tls_solve", &tls_solve, py::arg("a"), py::arg("b"));

  m.def(
      "synth_1d",
      [](const std::vector<Complex>& c, const std::vector<Complex>& z, std::size_t n,
         double sigma, std::uint64_t seed) {
        return synth_1d(ExpModel1D::from_poles(c, z), n, sigma, seed);
      },
      py::arg("amplitudes"), py::arg("poles"), py::arg("n"), py::arg("sigma") = 0.0,
      py::arg("seed") = 0);

  m.def(
      "synth_2d",
      [](const std::vector<Complex>& c, const std::vector<Complex>& z1,
         const std::vector<Complex>& z2, std::size_t n1, std::size_t n2, double sigma,
         std::uint64_t seed) {
        return synth_2d(ExpModel2D::from_poles(c, z1, z2), n1, n2, sigma, seed);
      },
      py::arg("amplitudes"), py::arg("poles1"), py::arg("poles2"), py::arg("n1"), py::arg("n2"),
      py::arg("sigma") = 0.0, py::arg("seed") = 0);

  m.def(
      "two_peak_poles",
      [] {
        const ExpModel2D model = two_peak_model();
        return py::make_tuple(model.poles1(), model.poles2());
      });

  m.def(
      "estimate_poles_1d",
      [](const ComplexVector& x, std::size_t k, std::optional<Shape> shape, std::size_t order) {
        const Shape s = shape ? *shape : default_square_shape(static_cast<std::size_t>(x.size()), order);
        return estimate_dict(estimate_poles_1d(x, s, k));
      },
      py::arg("x"), py::arg("k"), py::arg("shape") = py::none(), py::arg("order") = 3);

  m.def(
      "estimate_poles_2d",
      [](const ComplexMatrix& x, const Shape& block, const Shape& outer, std::size_t k) {
        return estimate_dict(estimate_poles_2d(x, block, outer, k));
      },
      py::arg("x"), py::arg("block"), py::arg("outer"), py::arg("k"));

  m.def("mode1_singular_values", &mode1_singular_values, py::arg("x"), py::arg("block"),
        py::arg("outer"));
}
