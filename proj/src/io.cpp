#include "coherence/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "coherence/errors.hpp"

namespace coherence {

namespace {

using nlohmann::json;

json parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

double finite_number(const json& value, const std::string& what) {
  if (!value.is_number()) throw ParseError(what + " is not a number");
  const double x = value.get<double>();
  if (!std::isfinite(x)) throw ParseError(what + " is not finite");
  return x;
}

Complex read_complex(const json& value, const std::string& what) {
  if (!value.is_array() || value.size() != 2) {
    throw ParseError(what + " is not a [re, im] pair");
  }
  return {finite_number(value[0], what + "[0]"), finite_number(value[1], what + "[1]")};
}

int read_dim(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer()) {
    throw ParseError(std::string("missing integer field '") + key + "'");
  }
  const int dim = j[key].get<int>();
  if (dim < 1) throw ParseError(std::string("field '") + key + "' must be positive");
  return dim;
}

Matrix read_matrix(const json& value, int rows, int cols, const std::string& what) {
  if (!value.is_array() || static_cast<int>(value.size()) != rows) {
    throw ParseError(what + " must have " + std::to_string(rows) + " rows");
  }
  Matrix m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    const json& row = value[r];
    if (!row.is_array() || static_cast<int>(row.size()) != cols) {
      throw ParseError(what + " row " + std::to_string(r) + " must have " +
                       std::to_string(cols) + " entries");
    }
    for (int c = 0; c < cols; ++c) {
      m(r, c) = read_complex(row[c], what + "[" + std::to_string(r) + "][" +
                                         std::to_string(c) + "]");
    }
  }
  return m;
}

Vector read_vector(const json& value, int dim, const std::string& what) {
  if (!value.is_array() || static_cast<int>(value.size()) != dim) {
    throw ParseError(what + " must have " + std::to_string(dim) + " entries");
  }
  Vector v(dim);
  for (int i = 0; i < dim; ++i) {
    v(i) = read_complex(value[i], what + "[" + std::to_string(i) + "]");
  }
  return v;
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write '" + path + "'");
  out << contents << '\n';
}

void append_complex(std::string& out, const Complex& z) {
  out += '[';
  out += format_double(z.real());
  out += ',';
  out += format_double(z.imag());
  out += ']';
}

void append_matrix(std::string& out, const Matrix& m) {
  out += '[';
  for (int r = 0; r < m.rows(); ++r) {
    if (r > 0) out += ',';
    out += '[';
    for (int c = 0; c < m.cols(); ++c) {
      if (c > 0) out += ',';
      append_complex(out, m(r, c));
    }
    out += ']';
  }
  out += ']';
}

void append_vector(std::string& out, const Vector& v) {
  out += '[';
  for (int i = 0; i < v.size(); ++i) {
    if (i > 0) out += ',';
    append_complex(out, v(i));
  }
  out += ']';
}

}  // namespace

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

Matrix read_density_raw(const std::string& path) {
  const json j = parse_file(path);
  const int dim = read_dim(j, "dim");
  if (!j.contains("matrix")) throw ParseError(path + ": missing 'matrix'");
  return read_matrix(j["matrix"], dim, dim, "matrix");
}

DensityMatrix read_density_file(const std::string& path, double tol) {
  return validate_density(read_density_raw(path), tol);
}

PureState read_pure_file(const std::string& path, double tol) {
  const json j = parse_file(path);
  const int dim = read_dim(j, "dim");
  if (!j.contains("vector")) throw ParseError(path + ": missing 'vector'");
  return validate_pure(read_vector(j["vector"], dim, "vector"), tol);
}

Ensemble read_ensemble_file(const std::string& path, double tol) {
  const json j = parse_file(path);
  const int dim = read_dim(j, "dim");
  if (!j.contains("entries") || !j["entries"].is_array() || j["entries"].empty()) {
    throw ParseError(path + ": missing nonempty 'entries'");
  }
  std::vector<EnsembleEntry> entries;
  for (std::size_t i = 0; i < j["entries"].size(); ++i) {
    const json& entry = j["entries"][i];
    const std::string what = "entries[" + std::to_string(i) + "]";
    if (!entry.contains("weight") || !entry.contains("vector")) {
      throw ParseError(what + " needs 'weight' and 'vector'");
    }
    const double weight = finite_number(entry["weight"], what + ".weight");
    entries.push_back(
        {weight, validate_pure(read_vector(entry["vector"], dim, what + ".vector"))});
  }
  return Ensemble::from_entries(std::move(entries), tol);
}

QuantumChannel read_channel_file(const std::string& path, double tol) {
  const json j = parse_file(path);
  const int dim_in = read_dim(j, "dim_in");
  const int dim_out = read_dim(j, "dim_out");
  if (!j.contains("kraus") || !j["kraus"].is_array() || j["kraus"].empty()) {
    throw ParseError(path + ": missing nonempty 'kraus'");
  }
  std::vector<Matrix> kraus;
  for (std::size_t n = 0; n < j["kraus"].size(); ++n) {
    kraus.push_back(
        read_matrix(j["kraus"][n], dim_out, dim_in, "kraus[" + std::to_string(n) + "]"));
  }
  return classify(kraus, tol);
}

std::string to_json(const DensityMatrix& rho) {
  std::string out = "{\"dim\":" + std::to_string(rho.dim()) + ",\"matrix\":";
  append_matrix(out, rho.matrix());
  out += '}';
  return out;
}

std::string to_json(const PureState& psi) {
  std::string out = "{\"dim\":" + std::to_string(psi.dim()) + ",\"vector\":";
  append_vector(out, psi.amplitudes());
  out += '}';
  return out;
}

std::string to_json(const Ensemble& ensemble) {
  std::string out = "{\"dim\":" + std::to_string(ensemble.dim()) + ",\"entries\":[";
  bool first = true;
  for (const auto& entry : ensemble.entries()) {
    if (!first) out += ',';
    first = false;
    out += "{\"weight\":" + format_double(entry.weight) + ",\"vector\":";
    append_vector(out, entry.state.amplitudes());
    out += '}';
  }
  out += "]}";
  return out;
}

std::string to_json(const QuantumChannel& ch) {
  std::string out = "{\"dim_in\":" + std::to_string(ch.dim_in()) +
                    ",\"dim_out\":" + std::to_string(ch.dim_out()) + ",\"kraus\":[";
  for (std::size_t n = 0; n < ch.kraus().size(); ++n) {
    if (n > 0) out += ',';
    append_matrix(out, ch.kraus()[n]);
  }
  out += "]}";
  return out;
}

std::string to_json(const SolveReport& report) {
  std::string out = "{\"value\":" + format_double(report.value);
  out += ",\"method\":\"" + report.method + "\"";
  out += ",\"restarts_used\":" + std::to_string(report.restarts_used);
  out += std::string(",\"converged\":") + (report.converged ? "true" : "false");
  out += ",\"best_mu\":[";
  for (int i = 0; i < report.best_mu.dim(); ++i) {
    if (i > 0) out += ',';
    out += format_double(report.best_mu[i]);
  }
  out += "],\"best_ensemble\":" + to_json(report.best_ensemble);
  out += '}';
  return out;
}

void write_density_file(const std::string& path, const DensityMatrix& rho) {
  write_file(path, to_json(rho));
}

void write_pure_file(const std::string& path, const PureState& psi) {
  write_file(path, to_json(psi));
}

void write_ensemble_file(const std::string& path, const Ensemble& ensemble) {
  write_file(path, to_json(ensemble));
}

void write_channel_file(const std::string& path, const QuantumChannel& ch) {
  write_file(path, to_json(ch));
}

}  // namespace coherence
