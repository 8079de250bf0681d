#pragma once

#include <json.hpp>

#include "gms/matrix_space.hpp"
#include "gms/pencil.hpp"
#include "gms/quantum.hpp"

namespace gms {

using Json = nlohmann::ordered_json;

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Scalar codecs: Fp as a number, Q and Qi as canonical strings,
/// C64 as an [re, im] pair.
Json scalar_to_json(const FieldElem& e);
FieldElem scalar_from_json(const Field& f, const Json& j);

Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

/// {"field": ..., "rows": r, "cols": c, "basis": [[row-major entries]...]}
Json space_to_json(const MatrixSpace& s);
MatrixSpace space_from_json(const Json& j);

/// {"n": ..., "m": ..., "constant": matrix, "coeffs": [matrix...]}
Json pencil_to_json(const SymbolicMatrix& b);
SymbolicMatrix pencil_from_json(const Json& j);

/// Kraus channels: {"n_in": ..., "n_out": ..., "kraus": [[[re, im]...]...]}
Json kraus_to_json(const KrausMap& k);
KrausMap kraus_from_json(const Json& j);

/// CSV transition matrix: one row per line, comma-separated columns.
TransitionMatrix transition_from_csv(const std::string& text);
std::string transition_to_csv(const TransitionMatrix& p);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

}  // namespace gms
