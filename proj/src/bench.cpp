#include "fasthankel/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <sstream>
#include <thread>

#include <fftw3.h>
#include <nlohmann/json.hpp>

#include "fasthankel/hankel.hpp"

namespace fasthankel {

namespace {

using Clock = std::chrono::steady_clock;

ComplexVector random_vector(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexVector v(static_cast<Eigen::Index>(n));
  for (auto& z : v) {
    const double re = normal(rng);
    z = Complex(re, normal(rng));
  }
  return v;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t mid = v.size() / 2;
  return v.size() % 2 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
}

template <class Body>
std::vector<double> time_reps(std::size_t reps, std::size_t products, Body body) {
  body();  // warm-up, discarded
  std::vector<double> per_product;
  for (std::size_t r = 0; r < reps; ++r) {
    const auto t0 = Clock::now();
    body();
    const double elapsed = std::chrono::duration<double>(Clock::now() - t0).count();
    per_product.push_back(elapsed / static_cast<double>(products));
  }
  return per_product;
}

std::string format_g(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

std::vector<BenchRecord> run_bench(const BenchConfig& cfg) {
  if (cfg.reps == 0) throw DimensionError("reps must be at least 1");
  if (cfg.products == 0) throw DimensionError("products must be at least 1");
  if (cfg.order < 2) throw DimensionError("benchmark order must be at least 2");
  if (cfg.sizes.empty()) throw DimensionError("no sizes to benchmark");
  for (std::size_t n : cfg.sizes) {
    if (n < 1) throw DimensionError("sizes must be positive");
  }

  std::vector<BenchRecord> records;
  std::mt19937_64 rng(cfg.seed);
  for (std::size_t n : cfg.sizes) {
    const std::size_t m = cfg.order;
    const Shape shape(m, n);
    const ComplexVector h = random_vector(m * (n - 1) + 1, rng);
    std::vector<ComplexVector> xs;
    for (std::size_t p = 1; p < m; ++p) xs.push_back(random_vector(n, rng));

    // Dense size with overflow guard.
    bool over_cap = false;
    std::size_t entries = 1;
    for (std::size_t p = 0; p < m; ++p) {
      if (entries > cfg.dense_cap / n + 1) {
        over_cap = true;
        break;
      }
      entries *= n;
    }
    over_cap = over_cap || entries > cfg.dense_cap;

    const ComplexVector y_fast = hankel_tvp_partial(HankelTensor(shape, h), xs);
    double diff = std::numeric_limits<double>::quiet_NaN();
    const bool run_naive = cfg.naive && !over_cap;
    if (run_naive) {
      const ComplexVector y_naive = contract_partial(build_hankel_dense(h, shape, cfg.dense_cap), xs);
      diff = (y_naive - y_fast).norm() / std::max(y_naive.norm(), 1e-300);
    }

    if (cfg.naive) {
      BenchRecord rec{"naive", m, n, 0.0, cfg.reps, cfg.products, !run_naive, diff};
      if (run_naive) {
        volatile double sink = 0.0;
        rec.seconds_per_product = median(time_reps(cfg.reps, cfg.products, [&] {
          const DenseTensor dense = build_hankel_dense(h, shape, cfg.dense_cap);
          for (std::size_t k = 0; k < cfg.products; ++k) {
            sink = sink + contract_partial(dense, xs)(0).real();
          }
        }));
      }
      records.push_back(rec);
    }
    if (cfg.fast) {
      BenchRecord rec{"fast", m, n, 0.0, cfg.reps, cfg.products, false, diff};
      volatile double sink = 0.0;
      rec.seconds_per_product = median(time_reps(cfg.reps, cfg.products, [&] {
        const HankelTensor tensor(shape, h);
        for (std::size_t k = 0; k < cfg.products; ++k) {
          sink = sink + hankel_tvp_partial(tensor, xs)(0).real();
        }
      }));
      records.push_back(rec);
    }
  }
  return records;
}

std::string bench_csv(const std::vector<BenchRecord>& records) {
  std::ostringstream out;
  out << "algorithm,order,n,seconds_per_product,reps,products,skipped,max_rel_diff\n";
  for (const auto& r : records) {
    out << r.algorithm << ',' << r.order << ',' << r.n << ','
        << (r.skipped ? std::string("nan") : format_g(r.seconds_per_product)) << ',' << r.reps
        << ',' << r.products << ',' << (r.skipped ? 1 : 0) << ',' << format_g(r.max_rel_diff)
        << '\n';
  }
  return out.str();
}

std::string bench_json(const std::vector<BenchRecord>& records) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& r : records) {
    nlohmann::json rec = {{"algorithm", r.algorithm}, {"order", r.order},
                          {"n", r.n},                 {"reps", r.reps},
                          {"products", r.products},   {"skipped", r.skipped}};
    rec["seconds_per_product"] = r.skipped ? nlohmann::json(nullptr)
                                           : nlohmann::json(r.seconds_per_product);
    rec["max_rel_diff"] =
        std::isnan(r.max_rel_diff) ? nlohmann::json(nullptr) : nlohmann::json(r.max_rel_diff);
    j.push_back(rec);
  }
  nlohmann::json doc = {{"environment", bench_environment()}, {"records", j}};
  return doc.dump(2) + "\n";
}

std::string bench_environment() {
  std::ostringstream out;
#if defined(__clang__)
  out << "clang " << __clang_major__ << '.' << __clang_minor__;
#elif defined(__GNUC__)
  out << "gcc " << __GNUC__ << '.' << __GNUC_MINOR__;
#else
  out << "unknown compiler";
#endif
  out << ", " << fftw_version << ", hardware threads " << std::thread::hardware_concurrency();
  return out.str();
}

}  // namespace fasthankel
