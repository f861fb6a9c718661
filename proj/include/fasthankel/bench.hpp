#pragma once

// Naive vs fast timing of the partial product H x^{m-1} on square Hankel
// tensors of growing size.

#include <cstdint>
#include <string>
#include <vector>

#include "fasthankel/tensor.hpp"

namespace fasthankel {

struct BenchConfig {
  std::vector<std::size_t> sizes;
  std::size_t order = 3;
  std::size_t reps = 5;
  /// Products per timed repetition.
  std::size_t products = 100;
  std::uint64_t seed = 0;
  bool naive = true;
  bool fast = true;
  /// Naive runs whose dense tensor would exceed this many entries are skipped.
  std::size_t dense_cap = kDefaultDenseCap;
};

struct BenchRecord {
  std::string algorithm;  // "naive" or "fast"
  std::size_t order = 0;
  std::size_t n = 0;
  /// Median over reps of (repetition time / products), seconds.
  double seconds_per_product = 0.0;
  std::size_t reps = 0;
  std::size_t products = 0;
  bool skipped = false;
  /// Largest relative difference between naive and fast results; NaN when
  /// the naive run was skipped or not requested.
  double max_rel_diff = 0.0;
};

/// One warm-up repetition is run and discarded before the timed ones. Naive
/// timings include materializing the dense tensor once per repetition.
std::vector<BenchRecord> run_bench(const BenchConfig& cfg);

std::string bench_csv(const std::vector<BenchRecord>& records);
std::string bench_json(const std::vector<BenchRecord>& records);

/// Compiler, FFTW version and thread count, for the report header.
std::string bench_environment();

}  // namespace fasthankel
