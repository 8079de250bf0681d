#include "gms/json_io.hpp"

#include <fstream>
#include <sstream>

namespace gms {

Json scalar_to_json(const FieldElem& e) {
  switch (e.field().kind) {
    case FieldKind::prime:
      return Json(e.fp_value());
    case FieldKind::rational:
    case FieldKind::gaussian_rational:
      return Json(e.to_string());
    case FieldKind::complex64: {
      auto z = e.complex_value();
      return Json::array({z.real(), z.imag()});
    }
  }
  throw ParseError("corrupt field tag");
}

FieldElem scalar_from_json(const Field& f, const Json& j) {
  switch (f.kind) {
    case FieldKind::prime:
      if (j.is_number_integer()) return FieldElem::from_int(f, j.get<std::int64_t>());
      return parse_field_elem(f, j.get<std::string>());
    case FieldKind::rational:
    case FieldKind::gaussian_rational:
      if (j.is_number_integer()) return FieldElem::from_int(f, j.get<std::int64_t>());
      return parse_field_elem(f, j.get<std::string>());
    case FieldKind::complex64:
      if (j.is_array())
        return FieldElem::complex({j.at(0).get<double>(), j.at(1).get<double>()});
      return FieldElem::complex({j.get<double>(), 0.0});
  }
  throw ParseError("corrupt field tag");
}

Json matrix_to_json(const Matrix& m) {
  Json j;
  j["field"] = m.field().name();
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  Json entries = Json::array();
  for (const FieldElem& e : m.entries()) entries.push_back(scalar_to_json(e));
  j["entries"] = entries;
  return j;
}

Matrix matrix_from_json(const Json& j) {
  Field f = Field::parse(j.at("field").get<std::string>());
  int rows = j.at("rows").get<int>(), cols = j.at("cols").get<int>();
  const Json& entries = j.at("entries");
  if (int(entries.size()) != rows * cols)
    throw ParseError("matrix entries length mismatch");
  Matrix m(f, rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int c = 0; c < cols; ++c)
      m.at(i, c) = scalar_from_json(f, entries.at(size_t(i) * cols + c));
  return m;
}

Json space_to_json(const MatrixSpace& s) {
  Json j;
  j["field"] = s.field().name();
  j["rows"] = s.ambient_rows();
  j["cols"] = s.ambient_cols();
  Json basis = Json::array();
  for (const Matrix& b : s.basis()) {
    Json row = Json::array();
    for (const FieldElem& e : b.entries()) row.push_back(scalar_to_json(e));
    basis.push_back(row);
  }
  j["basis"] = basis;
  return j;
}

MatrixSpace space_from_json(const Json& j) {
  Field f = Field::parse(j.at("field").get<std::string>());
  int rows = j.at("rows").get<int>(), cols = j.at("cols").get<int>();
  std::vector<Matrix> basis;
  for (const Json& row : j.at("basis")) {
    if (int(row.size()) != rows * cols) throw ParseError("basis row length mismatch");
    Matrix m(f, rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int c = 0; c < cols; ++c)
        m.at(i, c) = scalar_from_json(f, row.at(size_t(i) * cols + c));
    basis.push_back(m);
  }
  return MatrixSpace(f, rows, cols, basis);
}

Json pencil_to_json(const SymbolicMatrix& b) {
  Json j;
  j["n"] = b.n();
  j["m"] = b.num_vars();
  j["constant"] = matrix_to_json(b.constant());
  Json coeffs = Json::array();
  for (const Matrix& c : b.coeffs()) coeffs.push_back(matrix_to_json(c));
  j["coeffs"] = coeffs;
  return j;
}

SymbolicMatrix pencil_from_json(const Json& j) {
  Matrix constant = matrix_from_json(j.at("constant"));
  std::vector<Matrix> coeffs;
  for (const Json& c : j.at("coeffs")) coeffs.push_back(matrix_from_json(c));
  return SymbolicMatrix(std::move(constant), std::move(coeffs));
}

Json kraus_to_json(const KrausMap& k) {
  Json j;
  j["n_in"] = k.in_dim();
  j["n_out"] = k.out_dim();
  j["trace_preserving"] = k.trace_preserving;
  j["unital"] = k.unital;
  Json ops = Json::array();
  for (const Matrix& e : k.kraus) {
    Json entries = Json::array();
    for (const FieldElem& v : e.entries()) entries.push_back(scalar_to_json(v));
    ops.push_back(entries);
  }
  j["kraus"] = ops;
  return j;
}

KrausMap kraus_from_json(const Json& j) {
  int n_in = j.at("n_in").get<int>(), n_out = j.at("n_out").get<int>();
  std::vector<Matrix> ops;
  for (const Json& entries : j.at("kraus")) {
    if (int(entries.size()) != n_in * n_out)
      throw ParseError("kraus operator length mismatch");
    Matrix m(Field::c64(), n_out, n_in);
    for (int i = 0; i < n_out; ++i)
      for (int c = 0; c < n_in; ++c)
        m.at(i, c) = scalar_from_json(Field::c64(), entries.at(size_t(i) * n_in + c));
    ops.push_back(m);
  }
  return make_kraus_map(std::move(ops));
}

TransitionMatrix transition_from_csv(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(std::move(row));
  }
  return make_transition_matrix(std::move(rows));
}

std::string transition_to_csv(const TransitionMatrix& p) {
  std::ostringstream os;
  os.precision(17);
  for (const auto& row : p.entries) {
    for (size_t j = 0; j < row.size(); ++j) os << (j ? "," : "") << row[j];
    os << "\n";
  }
  return os.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write file: " + path);
  out << contents;
}

}  // namespace gms
