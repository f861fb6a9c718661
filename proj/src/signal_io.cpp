#include "fasthankel/signal_io.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace fasthankel {

using nlohmann::json;

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return {};
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(trim(field));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_double(const std::string& field, const std::string& source, std::size_t line) {
  if (field.empty()) throw ParseError(source, line, "empty numeric field");
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(field.c_str(), &end);
  if (end != field.c_str() + field.size() || errno == ERANGE) {
    throw ParseError(source, line, "not a number: '" + field + "'");
  }
  if (!std::isfinite(v)) throw ParseError(source, line, "non-finite value '" + field + "'");
  return v;
}

std::size_t parse_index(const std::string& field, const std::string& source, std::size_t line) {
  if (field.empty() || field.find_first_not_of("0123456789") != std::string::npos) {
    throw ParseError(source, line, "not a non-negative integer index: '" + field + "'");
  }
  errno = 0;
  const unsigned long long v = std::strtoull(field.c_str(), nullptr, 10);
  if (errno == ERANGE || v > (1ull << 40)) throw ParseError(source, line, "index too large");
  return static_cast<std::size_t>(v);
}

// Data rows after a header that must match `expected` exactly. Blank lines are skipped.
std::vector<std::pair<std::size_t, std::vector<std::string>>> read_rows(
    std::istream& in, const std::string& source, const std::vector<std::string>& expected) {
  std::string line;
  std::size_t lineno = 0;
  bool header = false;
  std::vector<std::pair<std::size_t, std::vector<std::string>>> rows;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    auto fields = split_fields(line);
    if (!header) {
      if (fields != expected) {
        std::string want;
        for (const auto& f : expected) want += (want.empty() ? "" : ",") + f;
        throw ParseError(source, lineno, "expected header '" + want + "'");
      }
      header = true;
      continue;
    }
    if (fields.size() != expected.size()) {
      throw ParseError(source, lineno,
                       "expected " + std::to_string(expected.size()) + " fields, got " +
                           std::to_string(fields.size()));
    }
    rows.emplace_back(lineno, std::move(fields));
  }
  if (!header) throw ParseError(source, 0, "missing header row");
  if (rows.empty()) throw ParseError(source, 0, "no samples");
  return rows;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json complex_list(const std::vector<Complex>& zs) {
  json out = json::array();
  for (Complex z : zs) out.push_back({z.real(), z.imag()});
  return out;
}

std::vector<Complex> parse_complex_list(const json& j, const std::string& source,
                                        const char* key) {
  if (!j.is_array()) throw ParseError(source, 0, std::string("'") + key + "' must be an array");
  std::vector<Complex> out;
  for (const auto& item : j) {
    if (!item.is_array() || item.size() != 2 || !item[0].is_number() || !item[1].is_number()) {
      throw ParseError(source, 0, std::string("'") + key + "' entries must be [re, im] pairs");
    }
    out.emplace_back(item[0].get<double>(), item[1].get<double>());
  }
  return out;
}

json parse_json(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // nlohmann reports a byte offset; translate it to a line number.
    const std::size_t upto = std::min<std::size_t>(e.byte, text.size());
    const auto line = 1 + static_cast<std::size_t>(
                              std::count(text.begin(), text.begin() + static_cast<long>(upto), '\n'));
    throw ParseError(source, line, "invalid JSON");
  }
}

double number_or(const json& obj, const char* key, double fallback, const std::string& source) {
  if (!obj.contains(key)) return fallback;
  if (!obj.at(key).is_number()) {
    throw ParseError(source, 0, std::string("field '") + key + "' must be a number");
  }
  return obj.at(key).get<double>();
}

}  // namespace

ParseError::ParseError(const std::string& source, std::size_t line, const std::string& what)
    : DimensionError(source + (line ? ":" + std::to_string(line) : std::string()) + ": " + what),
      line_(line) {}

ComplexVector read_signal_1d(std::istream& in, const std::string& source) {
  const auto rows = read_rows(in, source, {"n", "re", "im"});
  ComplexVector x(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto& [lineno, f] = rows[r];
    if (parse_index(f[0], source, lineno) != r) {
      throw ParseError(source, lineno, "sample index out of sequence, expected " + std::to_string(r));
    }
    x(static_cast<Eigen::Index>(r)) =
        Complex(parse_double(f[1], source, lineno), parse_double(f[2], source, lineno));
  }
  return x;
}

ComplexMatrix read_signal_2d(std::istream& in, const std::string& source) {
  const auto rows = read_rows(in, source, {"n1", "n2", "re", "im"});
  std::map<std::pair<std::size_t, std::size_t>, Complex> samples;
  std::size_t n1 = 0, n2 = 0;
  for (const auto& [lineno, f] : rows) {
    const std::size_t a = parse_index(f[0], source, lineno);
    const std::size_t b = parse_index(f[1], source, lineno);
    const Complex v(parse_double(f[2], source, lineno), parse_double(f[3], source, lineno));
    if (!samples.emplace(std::make_pair(a, b), v).second) {
      throw ParseError(source, lineno, "duplicate sample (" + f[0] + "," + f[1] + ")");
    }
    n1 = std::max(n1, a + 1);
    n2 = std::max(n2, b + 1);
  }
  if (samples.size() != n1 * n2) {
    throw ParseError(source, 0,
                     "incomplete grid: " + std::to_string(samples.size()) + " samples for " +
                         std::to_string(n1) + "x" + std::to_string(n2));
  }
  ComplexMatrix x(static_cast<Eigen::Index>(n1), static_cast<Eigen::Index>(n2));
  for (const auto& [key, v] : samples) {
    x(static_cast<Eigen::Index>(key.first), static_cast<Eigen::Index>(key.second)) = v;
  }
  return x;
}

void write_signal_1d(std::ostream& out, const ComplexVector& x) {
  out << "n,re,im\n";
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    out << i << ',' << format_double(x(i).real()) << ',' << format_double(x(i).imag()) << '\n';
  }
}

void write_signal_2d(std::ostream& out, const ComplexMatrix& x) {
  out << "n1,n2,re,im\n";
  for (Eigen::Index a = 0; a < x.rows(); ++a) {
    for (Eigen::Index b = 0; b < x.cols(); ++b) {
      out << a << ',' << b << ',' << format_double(x(a, b).real()) << ','
          << format_double(x(a, b).imag()) << '\n';
    }
  }
}

ComplexVector load_signal_1d(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, 0, "cannot open file");
  return read_signal_1d(in, path);
}

ComplexMatrix load_signal_2d(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, 0, "cannot open file");
  return read_signal_2d(in, path);
}

std::string model_to_json(const ExpModel1D& model) {
  json j;
  j["dimension"] = 1;
  j["dt"] = model.dt;
  j["terms"] = json::array();
  for (const ExpTerm& t : model.terms) {
    j["terms"].push_back({{"amplitude", t.amplitude},
                          {"phase", t.phase},
                          {"damping", t.damping},
                          {"pulsation", t.pulsation}});
  }
  return j.dump(2) + "\n";
}

std::string model_to_json(const ExpModel2D& model) {
  json j;
  j["dimension"] = 2;
  j["dt1"] = model.dt1;
  j["dt2"] = model.dt2;
  j["terms"] = json::array();
  for (const ExpTerm2D& t : model.terms) {
    j["terms"].push_back({{"amplitude", t.amplitude},
                          {"phase", t.phase},
                          {"damping1", t.damping1},
                          {"pulsation1", t.pulsation1},
                          {"damping2", t.damping2},
                          {"pulsation2", t.pulsation2}});
  }
  return j.dump(2) + "\n";
}

ModelDocument parse_model(const std::string& text, const std::string& source) {
  const json j = parse_json(text, source);
  if (!j.is_object()) throw ParseError(source, 0, "model must be a JSON object");
  ModelDocument doc;
  doc.dimension = static_cast<std::size_t>(number_or(j, "dimension", 1, source));
  if (doc.dimension != 1 && doc.dimension != 2) {
    throw ParseError(source, 0, "dimension must be 1 or 2");
  }
  if (!j.contains("terms") || !j["terms"].is_array() || j["terms"].empty()) {
    throw ParseError(source, 0, "model needs a non-empty 'terms' array");
  }
  for (const auto& t : j["terms"]) {
    if (!t.is_object()) throw ParseError(source, 0, "each term must be an object");
    const double amplitude = number_or(t, "amplitude", 1.0, source);
    if (amplitude < 0.0) throw ParseError(source, 0, "amplitudes must be non-negative");
    if (doc.dimension == 1) {
      doc.model1.terms.push_back({amplitude, number_or(t, "phase", 0.0, source),
                                  number_or(t, "damping", 0.0, source),
                                  number_or(t, "pulsation", 0.0, source)});
    } else {
      doc.model2.terms.push_back(
          {amplitude, number_or(t, "phase", 0.0, source), number_or(t, "damping1", 0.0, source),
           number_or(t, "pulsation1", 0.0, source), number_or(t, "damping2", 0.0, source),
           number_or(t, "pulsation2", 0.0, source)});
    }
  }
  doc.model1.dt = number_or(j, "dt", 1.0, source);
  doc.model2.dt1 = number_or(j, "dt1", 1.0, source);
  doc.model2.dt2 = number_or(j, "dt2", 1.0, source);
  if (!(doc.model1.dt > 0 && doc.model2.dt1 > 0 && doc.model2.dt2 > 0)) {
    throw ParseError(source, 0, "sampling intervals must be positive");
  }
  return doc;
}

std::string truth_to_json(const Truth& truth) {
  json j;
  j["poles"] = complex_list(truth.poles);
  if (!truth.poles2.empty()) j["poles2"] = complex_list(truth.poles2);
  return j.dump(2) + "\n";
}

Truth parse_truth(const std::string& text, const std::string& source) {
  const json j = parse_json(text, source);
  if (!j.is_object()) throw ParseError(source, 0, "truth must be a JSON object");
  Truth truth;
  if (j.contains("poles")) {
    truth.poles = parse_complex_list(j["poles"], source, "poles");
    if (j.contains("poles2")) truth.poles2 = parse_complex_list(j["poles2"], source, "poles2");
    return truth;
  }
  if (j.contains("terms")) {
    const ModelDocument doc = parse_model(text, source);
    if (doc.dimension == 1) {
      truth.poles = doc.model1.poles();
    } else {
      truth.poles = doc.model2.poles1();
      truth.poles2 = doc.model2.poles2();
    }
    return truth;
  }
  throw ParseError(source, 0, "truth needs a 'poles' array or a model 'terms' array");
}

std::string estimate_to_json(const PoleEstimate& est) {
  json j;
  j["poles"] = complex_list(est.poles);
  if (!est.poles2.empty()) j["poles2"] = complex_list(est.poles2);
  j["amplitudes"] = complex_list(est.amplitudes);
  if (!est.relative_errors.empty()) j["relative_errors"] = est.relative_errors;
  if (!est.relative_errors2.empty()) j["relative_errors2"] = est.relative_errors2;
  j["hooi_iterations"] = est.hooi_iterations;
  j["hooi_converged"] = est.hooi_converged;
  if (!est.poles2.empty()) j["pairing_residual"] = est.pairing_residual;
  j["warnings"] = est.warnings;
  return j.dump(2) + "\n";
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path, 0, "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DimensionError("cannot write " + path);
  out << text;
  if (!out) throw DimensionError("write failed: " + path);
}

}  // namespace fasthankel
