// hankelfit: signal generation, pole fitting, singular-value studies and the
// naive-vs-fast product benchmark.
//
// Exit codes: 0 success, 2 input error, 3 numerical degeneracy, 1 anything else.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fasthankel/bench.hpp"
#include "fasthankel/expfit.hpp"
#include "fasthankel/signal_io.hpp"

using namespace fasthankel;

namespace {

constexpr int kExitInput = 2;
constexpr int kExitDegenerate = 3;

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
  } else {
    write_text_file(out_path, text);
  }
}

std::string format_g17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// A single value with --order m expands to m copies.
Shape expand_dims(const std::vector<std::size_t>& dims, std::size_t order, const char* flag) {
  if (dims.empty()) return {};
  if (dims.size() == 1 && order > 1) return Shape(order, dims[0]);
  if (order != 0 && dims.size() != order) {
    throw DimensionError(std::string(flag) + " lists " + std::to_string(dims.size()) +
                         " sizes but --order is " + std::to_string(order));
  }
  for (std::size_t d : dims) {
    if (d == 0) throw DimensionError(std::string(flag) + " sizes must be positive");
  }
  return dims;
}

// --dims are full mode sizes I_p J_p, --block-dims the block sizes I_p.
void split_block_dims(const Shape& full, const Shape& block, Shape& outer) {
  if (full.size() != block.size()) {
    throw DimensionError("--dims and --block-dims must have the same number of entries");
  }
  outer.clear();
  for (std::size_t p = 0; p < full.size(); ++p) {
    if (block[p] == 0 || full[p] % block[p] != 0) {
      throw DimensionError("mode " + std::to_string(p + 1) + ": size " + std::to_string(full[p]) +
                           " is not a multiple of block size " + std::to_string(block[p]));
    }
    outer.push_back(full[p] / block[p]);
  }
}

struct Options {
  std::size_t order = 0;
  std::vector<std::size_t> dims;
  std::vector<std::size_t> block_dims;
  std::size_t rank = 0;
  std::vector<double> noise;
  std::uint64_t seed = 0;
  std::size_t reps = 0;
  std::string truth;
  std::string format = "csv";
  std::string out;
  std::string input;
  std::string model;
  std::string preset;
  std::size_t products = 100;
  bool fast_only = false;
};

int cmd_bench(const Options& o) {
  BenchConfig cfg;
  cfg.order = o.order == 0 ? 3 : o.order;
  cfg.sizes = o.dims.empty() ? std::vector<std::size_t>{16, 32, 64, 128, 256, 512} : o.dims;
  cfg.reps = o.reps;
  cfg.products = o.products;
  cfg.seed = o.seed;
  cfg.naive = !o.fast_only;
  const auto records = run_bench(cfg);
  if (o.format == "json") {
    emit(o.out, bench_json(records));
  } else {
    emit(o.out, "# " + bench_environment() + "\n" + bench_csv(records));
  }
  return 0;
}

int cmd_gen(const Options& o) {
  ModelDocument doc;
  if (!o.model.empty()) {
    doc = parse_model(read_text_file(o.model), o.model);
  } else if (o.preset == "two-peak-2d") {
    doc.dimension = 2;
    doc.model2 = two_peak_model();
  } else {
    throw DimensionError("gen needs --model <file> or --preset two-peak-2d");
  }
  const double sigma = o.noise.empty() ? 0.0 : o.noise.front();
  if (o.noise.size() > 1) throw DimensionError("gen takes a single --noise level");

  std::ostringstream signal;
  Truth truth;
  if (doc.dimension == 1) {
    if (o.dims.size() != 1) throw DimensionError("1D gen needs --dims N");
    write_signal_1d(signal, synth_1d(doc.model1, o.dims[0], sigma, o.seed));
    truth.poles = doc.model1.poles();
  } else {
    if (o.dims.size() != 2) throw DimensionError("2D gen needs --dims N1,N2");
    write_signal_2d(signal, synth_2d(doc.model2, o.dims[0], o.dims[1], sigma, o.seed));
    truth.poles = doc.model2.poles1();
    truth.poles2 = doc.model2.poles2();
  }
  emit(o.out, signal.str());
  if (!o.truth.empty()) write_text_file(o.truth, truth_to_json(truth));
  return 0;
}

int cmd_fit1d(const Options& o) {
  const ComplexVector x = load_signal_1d(o.input);
  const std::size_t order = o.order == 0 ? 3 : o.order;
  Shape shape = expand_dims(o.dims, order, "--dims");
  if (shape.empty()) shape = default_square_shape(static_cast<std::size_t>(x.size()), order);
  PoleEstimate est = estimate_poles_1d(x, shape, o.rank);
  if (!o.truth.empty()) {
    const Truth truth = parse_truth(read_text_file(o.truth), o.truth);
    compare_with_truth(est, truth.poles);
  }
  emit(o.out, estimate_to_json(est));
  return 0;
}

int cmd_fit2d(const Options& o) {
  const ComplexMatrix x = load_signal_2d(o.input);
  const std::size_t order = o.order == 0 ? 3 : o.order;
  const Shape full = expand_dims(o.dims, order, "--dims");
  const Shape block = expand_dims(o.block_dims, order, "--block-dims");
  if (full.empty() || block.empty()) throw DimensionError("fit2d needs --dims and --block-dims");
  Shape outer;
  split_block_dims(full, block, outer);
  PoleEstimate est = estimate_poles_2d(x, block, outer, o.rank);
  if (!o.truth.empty()) {
    const Truth truth = parse_truth(read_text_file(o.truth), o.truth);
    if (truth.poles2.empty()) throw DimensionError(o.truth + ": 2D truth needs 'poles2'");
    compare_with_truth(est, truth.poles, truth.poles2);
  }
  emit(o.out, estimate_to_json(est));
  return 0;
}

int cmd_svals(const Options& o) {
  ComplexMatrix x;
  if (!o.input.empty()) {
    x = load_signal_2d(o.input);
  } else if (o.preset == "two-peak-2d") {
    x.resize(0, 0);
  } else {
    throw DimensionError("svals needs an input signal or --preset two-peak-2d");
  }
  const std::size_t order = o.order == 0 ? 3 : o.order;
  const Shape full = expand_dims(o.dims, order, "--dims");
  const Shape block = expand_dims(o.block_dims, order, "--block-dims");
  if (full.empty() || block.empty()) throw DimensionError("svals needs --dims and --block-dims");
  Shape outer;
  split_block_dims(full, block, outer);
  if (x.size() == 0) {
    x = synth_2d(two_peak_model(), hankel_degree_of_freedom(block),
                 hankel_degree_of_freedom(outer));
  }
  const std::vector<double> levels = o.noise.empty() ? std::vector<double>{0.0} : o.noise;
  const auto rows = singular_value_study(x, block, outer, levels, o.reps, o.seed);

  std::ostringstream out;
  if (o.format == "json") {
    out << "[\n";
    for (std::size_t r = 0; r < rows.size(); ++r) {
      out << "  {\"noise\": " << format_g17(rows[r].noise) << ", \"trial\": " << rows[r].trial
          << ", \"seed\": " << rows[r].seed << ", \"singular_values\": [";
      for (Eigen::Index k = 0; k < rows[r].values.size(); ++k) {
        out << (k ? ", " : "") << format_g17(rows[r].values(k));
      }
      out << "]}" << (r + 1 < rows.size() ? "," : "") << "\n";
    }
    out << "]\n";
  } else {
    out << "noise_level,trial,seed";
    const Eigen::Index count = rows.empty() ? 0 : rows.front().values.size();
    for (Eigen::Index k = 0; k < count; ++k) out << ",sigma_" << k + 1;
    out << "\n";
    for (const auto& row : rows) {
      out << format_g17(row.noise) << ',' << row.trial << ',' << row.seed;
      for (Eigen::Index k = 0; k < row.values.size(); ++k) out << ',' << format_g17(row.values(k));
      out << "\n";
    }
  }
  emit(o.out, out.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fast Hankel tensor products and exponential data fitting"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", o.out, "Output path (default stdout)");
    sub->add_option("--seed", o.seed, "RNG seed");
  };
  auto add_shape = [&](CLI::App* sub) {
    sub->add_option("--order", o.order, "Tensor order m")->check(CLI::Range(1, 16));
    sub->add_option("--dims", o.dims, "Mode sizes, comma separated")->delimiter(',');
  };

  auto* bench = app.add_subcommand("bench", "Time naive vs fast Hankel tensor-vector products");
  add_common(bench);
  bench->add_option("--order", o.order, "Tensor order m (default 3)")->check(CLI::Range(2, 16));
  bench->add_option("--dims", o.dims, "Dimensions n to sweep")->delimiter(',');
  bench->add_option("--reps", o.reps, "Timed repetitions")->default_val(5);
  bench->add_option("--products", o.products, "Products per repetition")->default_val(100);
  bench->add_flag("--fast-only", o.fast_only, "Skip the naive algorithm");
  bench->add_option("--format", o.format)->check(CLI::IsMember({"csv", "json"}));

  auto* gen = app.add_subcommand("gen", "Synthesize a 1D or 2D exponential signal as CSV");
  add_common(gen);
  gen->add_option("--model", o.model, "Model JSON file");
  gen->add_option("--preset", o.preset, "Built-in model")->check(CLI::IsMember({"two-peak-2d"}));
  gen->add_option("--dims", o.dims, "Sample counts N or N1,N2")->delimiter(',')->required();
  gen->add_option("--noise", o.noise, "Noise standard deviation per component");
  gen->add_option("--truth", o.truth, "Write ground-truth poles here");

  auto* fit1d = app.add_subcommand("fit1d", "Estimate poles of a 1D signal");
  add_common(fit1d);
  add_shape(fit1d);
  fit1d->add_option("input", o.input, "Signal CSV")->required();
  fit1d->add_option("-k,--rank", o.rank, "Number of poles K")->required();
  fit1d->add_option("--truth", o.truth, "Ground-truth JSON for relative errors");

  auto* fit2d = app.add_subcommand("fit2d", "Estimate pole pairs of a 2D signal");
  add_common(fit2d);
  add_shape(fit2d);
  fit2d->add_option("input", o.input, "Signal CSV")->required();
  fit2d->add_option("--block-dims", o.block_dims, "Block sizes I_p")->delimiter(',');
  fit2d->add_option("-k,--rank", o.rank, "Number of poles K")->required();
  fit2d->add_option("--truth", o.truth, "Ground-truth JSON for relative errors");

  auto* svals = app.add_subcommand("svals", "Mode-1 singular values of a BHHB tensor vs noise");
  add_common(svals);
  add_shape(svals);
  svals->add_option("input", o.input, "Signal CSV (omit with --preset)");
  svals->add_option("--preset", o.preset)->check(CLI::IsMember({"two-peak-2d"}));
  svals->add_option("--block-dims", o.block_dims, "Block sizes I_p")->delimiter(',');
  svals->add_option("--noise", o.noise, "Noise levels")->delimiter(',');
  svals->add_option("--reps", o.reps, "Trials per nonzero noise level")->default_val(20);
  svals->add_option("--format", o.format)->check(CLI::IsMember({"csv", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    if (*bench) return cmd_bench(o);
    if (*gen) return cmd_gen(o);
    if (*fit1d) return cmd_fit1d(o);
    if (*fit2d) return cmd_fit2d(o);
    if (*svals) return cmd_svals(o);
  } catch (const DegenerateError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDegenerate;
  } catch (const DimensionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
