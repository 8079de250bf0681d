#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "gms/field.hpp"

namespace gms {

struct ShapeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Raised when an exhaustive-enumeration feasibility cap is exceeded.
struct CapError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SingularError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Dense matrix over a single field; all entries share the matrix tag.
/// Row vectors act on the left (v * M), matching the arc convention
/// where E_{i,j} sends e_i to e_j.
class Matrix {
 public:
  Matrix() : field_(Field::q()), rows_(0), cols_(0) {}
  Matrix(Field f, int rows, int cols);

  static Matrix zero(const Field& f, int rows, int cols);
  static Matrix identity(const Field& f, int n);
  /// E_{i,j}: single 1 at (i, j), 0-based.
  static Matrix elementary(const Field& f, int rows, int cols, int i, int j);
  static Matrix from_ints(const Field& f, int rows, int cols,
                          const std::vector<std::int64_t>& row_major);

  const Field& field() const { return field_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }

  const FieldElem& at(int i, int j) const { return data_[size_t(i) * cols_ + j]; }
  FieldElem& at(int i, int j) { return data_[size_t(i) * cols_ + j]; }
  const std::vector<FieldElem>& entries() const { return data_; }

  bool is_zero() const;
  bool is_square() const { return rows_ == cols_; }

  bool operator==(const Matrix& o) const;
  bool operator!=(const Matrix& o) const { return !(*this == o); }

  std::string to_string() const;

 private:
  Field field_;
  int rows_, cols_;
  std::vector<FieldElem> data_;
};

/// Coefficients low-degree first; leading coefficient nonzero unless zero.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(Field f, std::vector<FieldElem> coeffs);

  static Polynomial zero(const Field& f);
  /// x^k
  static Polynomial monomial(const Field& f, int k);

  const Field& field() const { return field_; }
  const std::vector<FieldElem>& coeffs() const { return coeffs_; }
  int degree() const { return int(coeffs_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return coeffs_.empty(); }

  /// Multiplicity of the root 0: number of leading zero coefficients
  /// (degree + 1 for the zero polynomial's caller to special-case).
  int trailing_zero_count() const;

  FieldElem eval(const FieldElem& x) const;
  Matrix eval(const Matrix& m) const;

  bool operator==(const Polynomial& o) const;

  std::string to_string() const;

 private:
  void normalize();

  Field field_ = Field::q();
  std::vector<FieldElem> coeffs_;
};

struct RrefResult {
  Matrix reduced;
  int rank = 0;
  std::vector<int> pivot_cols;
};

/// Reduced row echelon form; exact fields only.
RrefResult rref(const Matrix& m);

int rank(const Matrix& m);

/// Basis of the left kernel {v : v * m = 0}, returned as the rows of a
/// k x rows(m) matrix in RREF.
Matrix kernel_basis(const Matrix& m);

/// Characteristic polynomial det(xI - m) by the Berkowitz division-free
/// recurrence, valid over any exact field.
Polynomial char_poly(const Matrix& m);

FieldElem det(const Matrix& m);

Matrix mat_mul(const Matrix& a, const Matrix& b);
Matrix mat_add(const Matrix& a, const Matrix& b);
Matrix mat_sub(const Matrix& a, const Matrix& b);
Matrix scalar_mul(const FieldElem& c, const Matrix& m);
Matrix transpose(const Matrix& m);
Matrix conj_transpose(const Matrix& m);
Matrix inverse(const Matrix& m);
Matrix mat_pow(const Matrix& m, int k);
Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);

/// v * m for a row vector v given as a plain coefficient list.
std::vector<FieldElem> row_times_matrix(const std::vector<FieldElem>& v,
                                        const Matrix& m);

bool is_nilpotent(const Matrix& m);
/// Smallest k with m^k = 0, or nullopt if m is not nilpotent.
std::optional<int> nilpotency_index(const Matrix& m);

/// Machine-complex only: rank by singular-value threshold.
int numerical_rank(const Matrix& m, double tolerance);
/// Machine-complex only: all eigenvalues of a square matrix.
std::vector<std::complex<double>> eigenvalues(const Matrix& m);

}  // namespace gms
