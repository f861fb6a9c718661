#pragma once

// Signal files are CSV with a header row: `n,re,im` for 1D signals and
// `n1,n2,re,im` (row-major, n1 slowest) for 2D signals. Values are written
// with %.17g so a write/read cycle is lossless.
//
// Models, ground truth and pole estimates travel as JSON.

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "fasthankel/expfit.hpp"
#include "fasthankel/tensor.hpp"

namespace fasthankel {

/// Malformed input. line() is 1-based, 0 when the problem has no single line.
class ParseError : public DimensionError {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& what);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

ComplexVector read_signal_1d(std::istream& in, const std::string& source = "<stream>");
ComplexMatrix read_signal_2d(std::istream& in, const std::string& source = "<stream>");
void write_signal_1d(std::ostream& out, const ComplexVector& x);
void write_signal_2d(std::ostream& out, const ComplexMatrix& x);

ComplexVector load_signal_1d(const std::string& path);
ComplexMatrix load_signal_2d(const std::string& path);

/// {"dimension": 1, "dt": .., "terms": [{"amplitude", "phase", "damping", "pulsation"}]}
std::string model_to_json(const ExpModel1D& model);
/// {"dimension": 2, "dt1", "dt2", "terms": [{"amplitude", "phase", "damping1",
///  "pulsation1", "damping2", "pulsation2"}]}
std::string model_to_json(const ExpModel2D& model);

/// Parses a model document; the "dimension" field picks the variant.
struct ModelDocument {
  std::size_t dimension = 1;
  ExpModel1D model1;
  ExpModel2D model2;
};
ModelDocument parse_model(const std::string& text, const std::string& source = "<model>");

struct Truth {
  std::vector<Complex> poles;
  /// Second-dimension partners; empty for 1D.
  std::vector<Complex> poles2;
};

/// Ground-truth poles written next to generated signals:
/// {"poles": [[re, im], ...], "poles2": [[re, im], ...]}. A model document
/// is also accepted.
std::string truth_to_json(const Truth& truth);
Truth parse_truth(const std::string& text, const std::string& source = "<truth>");

/// Poles as [re, im] pairs, plus relative errors when they were computed.
std::string estimate_to_json(const PoleEstimate& est);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace fasthankel
