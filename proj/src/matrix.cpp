#include "gms/matrix.hpp"

#include <algorithm>
#include <sstream>

namespace gms {

namespace {

void check_exact(const Matrix& m, const char* what) {
  if (!m.field().exact())
    throw FieldError(std::string(what) + " requires an exact field");
}

void check_same_field(const Matrix& a, const Matrix& b) {
  if (!(a.field() == b.field()))
    throw FieldError("mixed field tags: " + a.field().name() + " vs " +
                     b.field().name());
}

}  // namespace

Matrix::Matrix(Field f, int rows, int cols)
    : field_(f), rows_(rows), cols_(cols),
      data_(size_t(rows) * cols, FieldElem::zero(f)) {
  if (rows < 0 || cols < 0) throw ShapeError("negative matrix dimension");
}

Matrix Matrix::zero(const Field& f, int rows, int cols) {
  return Matrix(f, rows, cols);
}

Matrix Matrix::identity(const Field& f, int n) {
  Matrix m(f, n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = FieldElem::one(f);
  return m;
}

Matrix Matrix::elementary(const Field& f, int rows, int cols, int i, int j) {
  Matrix m(f, rows, cols);
  m.at(i, j) = FieldElem::one(f);
  return m;
}

Matrix Matrix::from_ints(const Field& f, int rows, int cols,
                         const std::vector<std::int64_t>& row_major) {
  if (row_major.size() != size_t(rows) * cols)
    throw ShapeError("entry count does not match shape");
  Matrix m(f, rows, cols);
  for (size_t k = 0; k < row_major.size(); ++k)
    m.data_[k] = FieldElem::from_int(f, row_major[k]);
  return m;
}

bool Matrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](const FieldElem& e) { return e.is_zero(); });
}

bool Matrix::operator==(const Matrix& o) const {
  return field_ == o.field_ && rows_ == o.rows_ && cols_ == o.cols_ &&
         data_ == o.data_;
}

std::string Matrix::to_string() const {
  std::ostringstream os;
  for (int i = 0; i < rows_; ++i) {
    os << (i == 0 ? "[" : " ");
    for (int j = 0; j < cols_; ++j) os << (j ? " " : "[") << at(i, j).to_string();
    os << "]" << (i + 1 == rows_ ? "]" : "\n");
  }
  return os.str();
}

Polynomial::Polynomial(Field f, std::vector<FieldElem> coeffs)
    : field_(f), coeffs_(std::move(coeffs)) {
  normalize();
}

Polynomial Polynomial::zero(const Field& f) { return Polynomial(f, {}); }

Polynomial Polynomial::monomial(const Field& f, int k) {
  std::vector<FieldElem> c(size_t(k) + 1, FieldElem::zero(f));
  c.back() = FieldElem::one(f);
  return Polynomial(f, std::move(c));
}

void Polynomial::normalize() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

int Polynomial::trailing_zero_count() const {
  int k = 0;
  while (k < int(coeffs_.size()) && coeffs_[k].is_zero()) ++k;
  return k;
}

FieldElem Polynomial::eval(const FieldElem& x) const {
  FieldElem acc = FieldElem::zero(field_);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
    acc = acc * x + *it;
  return acc;
}

Matrix Polynomial::eval(const Matrix& m) const {
  if (!m.is_square()) throw ShapeError("polynomial evaluation needs square matrix");
  Matrix acc = Matrix::zero(m.field(), m.rows(), m.cols());
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = mat_mul(acc, m);
    for (int i = 0; i < m.rows(); ++i) acc.at(i, i) += *it;
  }
  return acc;
}

bool Polynomial::operator==(const Polynomial& o) const {
  return field_ == o.field_ && coeffs_ == o.coeffs_;
}

std::string Polynomial::to_string() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  for (int k = int(coeffs_.size()) - 1; k >= 0; --k) {
    if (coeffs_[k].is_zero()) continue;
    if (os.tellp() > 0) os << " + ";
    os << coeffs_[k].to_string();
    if (k > 0) os << "*x^" << k;
  }
  return os.str();
}

RrefResult rref(const Matrix& m) {
  check_exact(m, "rref");
  Matrix a = m;
  int rows = a.rows(), cols = a.cols();
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int pivot = -1;
    for (int i = r; i < rows; ++i)
      if (!a.at(i, c).is_zero()) {
        pivot = i;
        break;
      }
    if (pivot < 0) continue;
    if (pivot != r)
      for (int j = 0; j < cols; ++j) std::swap(a.at(pivot, j), a.at(r, j));
    FieldElem inv = a.at(r, c).inverse();
    for (int j = c; j < cols; ++j) a.at(r, j) = a.at(r, j) * inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || a.at(i, c).is_zero()) continue;
      FieldElem factor = a.at(i, c);
      for (int j = c; j < cols; ++j)
        a.at(i, j) -= factor * a.at(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return RrefResult{std::move(a), r, std::move(pivots)};
}

int rank(const Matrix& m) { return rref(m).rank; }

Matrix kernel_basis(const Matrix& m) {
  check_exact(m, "kernel_basis");
  // Left kernel of m = right kernel of m^t, solved from the RREF of m^t.
  RrefResult rr = rref(transpose(m));
  int n = m.rows();
  std::vector<int> pivot_of_col(n, -1);
  for (int k = 0; k < int(rr.pivot_cols.size()); ++k)
    pivot_of_col[rr.pivot_cols[k]] = k;
  std::vector<int> free_cols;
  for (int c = 0; c < n; ++c)
    if (pivot_of_col[c] < 0) free_cols.push_back(c);

  Matrix basis(m.field(), int(free_cols.size()), n);
  for (int k = 0; k < int(free_cols.size()); ++k) {
    int fc = free_cols[k];
    basis.at(k, fc) = FieldElem::one(m.field());
    for (int c = 0; c < n; ++c)
      if (pivot_of_col[c] >= 0)
        basis.at(k, c) = -rr.reduced.at(pivot_of_col[c], fc);
  }
  return rref(basis).reduced;
}

Polynomial char_poly(const Matrix& m) {
  check_exact(m, "char_poly");
  if (!m.is_square()) throw ShapeError("char_poly needs a square matrix");
  const Field& f = m.field();
  int n = m.rows();
  FieldElem one = FieldElem::one(f), zero = FieldElem::zero(f);

  // Berkowitz recurrence over trailing principal submatrices. `c` holds the
  // characteristic polynomial of the current submatrix, leading coefficient
  // first.
  std::vector<FieldElem> c = {one};
  for (int k = 1; k <= n; ++k) {
    int base = n - k;  // submatrix m[base.., base..], corner entry at base
    FieldElem a = m.at(base, base);
    // R = row (base, base+1..), C = column (base+1.., base), M = trailing k-1.
    std::vector<FieldElem> t(size_t(k) + 1, zero);
    t[0] = one;
    t[1] = -a;
    if (k >= 2) {
      std::vector<FieldElem> w(size_t(k) - 1, zero);  // M^j * C, iterated
      for (int i = 0; i < k - 1; ++i) w[i] = m.at(base + 1 + i, base);
      for (int j = 2; j <= k; ++j) {
        FieldElem dot = zero;
        for (int i = 0; i < k - 1; ++i) dot += m.at(base, base + 1 + i) * w[i];
        t[j] = -dot;
        if (j < k) {
          std::vector<FieldElem> w2(size_t(k) - 1, zero);
          for (int i = 0; i < k - 1; ++i) {
            FieldElem acc = zero;
            for (int l = 0; l < k - 1; ++l)
              acc += m.at(base + 1 + i, base + 1 + l) * w[l];
            w2[i] = acc;
          }
          w = std::move(w2);
        }
      }
    }
    std::vector<FieldElem> next(size_t(k) + 1, zero);
    for (int i = 0; i <= k; ++i)
      for (int j = 0; j < int(c.size()); ++j)
        if (i >= j && i - j <= k) next[i] += t[i - j] * c[j];
    c = std::move(next);
  }
  // Leading-first -> low-degree-first.
  std::reverse(c.begin(), c.end());
  return Polynomial(f, std::move(c));
}

FieldElem det(const Matrix& m) {
  check_exact(m, "det");
  if (!m.is_square()) throw ShapeError("det needs a square matrix");
  Matrix a = m;
  int n = a.rows();
  FieldElem result = FieldElem::one(a.field());
  for (int c = 0; c < n; ++c) {
    int pivot = -1;
    for (int i = c; i < n; ++i)
      if (!a.at(i, c).is_zero()) {
        pivot = i;
        break;
      }
    if (pivot < 0) return FieldElem::zero(a.field());
    if (pivot != c) {
      for (int j = 0; j < n; ++j) std::swap(a.at(pivot, j), a.at(c, j));
      result = -result;
    }
    result = result * a.at(c, c);
    FieldElem inv = a.at(c, c).inverse();
    for (int i = c + 1; i < n; ++i) {
      if (a.at(i, c).is_zero()) continue;
      FieldElem factor = a.at(i, c) * inv;
      for (int j = c; j < n; ++j) a.at(i, j) -= factor * a.at(c, j);
    }
  }
  return result;
}

Matrix mat_mul(const Matrix& a, const Matrix& b) {
  check_same_field(a, b);
  if (a.cols() != b.rows()) throw ShapeError("mat_mul shape mismatch");
  Matrix out(a.field(), a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      const FieldElem& aik = a.at(i, k);
      if (aik.is_zero()) continue;
      for (int j = 0; j < b.cols(); ++j) {
        if (b.at(k, j).is_zero()) continue;
        out.at(i, j) += aik * b.at(k, j);
      }
    }
  return out;
}

Matrix mat_add(const Matrix& a, const Matrix& b) {
  check_same_field(a, b);
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw ShapeError("mat_add shape mismatch");
  Matrix out = a;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) out.at(i, j) += b.at(i, j);
  return out;
}

Matrix mat_sub(const Matrix& a, const Matrix& b) {
  return mat_add(a, scalar_mul(-FieldElem::one(b.field()), b));
}

Matrix scalar_mul(const FieldElem& c, const Matrix& m) {
  if (!(c.field() == m.field())) throw FieldError("scalar_mul mixed fields");
  Matrix out = m;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out.at(i, j) = c * out.at(i, j);
  return out;
}

Matrix transpose(const Matrix& m) {
  Matrix out(m.field(), m.cols(), m.rows());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out.at(j, i) = m.at(i, j);
  return out;
}

Matrix conj_transpose(const Matrix& m) {
  Matrix out(m.field(), m.cols(), m.rows());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out.at(j, i) = m.at(i, j).conj();
  return out;
}

Matrix inverse(const Matrix& m) {
  check_exact(m, "inverse");
  if (!m.is_square()) throw ShapeError("inverse needs a square matrix");
  int n = m.rows();
  Matrix aug(m.field(), n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, n + i) = FieldElem::one(m.field());
  }
  RrefResult rr = rref(aug);
  // Invertible iff the pivots of the augmented system sit in the left
  // block, one per column.
  bool invertible = int(rr.pivot_cols.size()) >= n;
  for (int i = 0; i < n && invertible; ++i)
    invertible = rr.pivot_cols[size_t(i)] == i;
  if (!invertible) throw SingularError("matrix is singular");
  Matrix out(m.field(), n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out.at(i, j) = rr.reduced.at(i, n + j);
  return out;
}

Matrix mat_pow(const Matrix& m, int k) {
  if (!m.is_square()) throw ShapeError("mat_pow needs a square matrix");
  Matrix result = Matrix::identity(m.field(), m.rows());
  Matrix base = m;
  while (k > 0) {
    if (k & 1) result = mat_mul(result, base);
    base = mat_mul(base, base);
    k >>= 1;
  }
  return result;
}

Matrix operator*(const Matrix& a, const Matrix& b) { return mat_mul(a, b); }
Matrix operator+(const Matrix& a, const Matrix& b) { return mat_add(a, b); }
Matrix operator-(const Matrix& a, const Matrix& b) { return mat_sub(a, b); }

std::vector<FieldElem> row_times_matrix(const std::vector<FieldElem>& v,
                                        const Matrix& m) {
  if (int(v.size()) != m.rows()) throw ShapeError("row vector length mismatch");
  std::vector<FieldElem> out(size_t(m.cols()), FieldElem::zero(m.field()));
  for (int i = 0; i < m.rows(); ++i) {
    if (v[i].is_zero()) continue;
    for (int j = 0; j < m.cols(); ++j) out[j] += v[i] * m.at(i, j);
  }
  return out;
}

bool is_nilpotent(const Matrix& m) { return nilpotency_index(m).has_value(); }

std::optional<int> nilpotency_index(const Matrix& m) {
  if (!m.is_square()) throw ShapeError("nilpotency needs a square matrix");
  int n = m.rows();
  Matrix power = Matrix::identity(m.field(), n);
  for (int k = 0; k <= n; ++k) {
    if (power.is_zero()) return k;
    if (k == n) break;
    power = mat_mul(power, m);
  }
  return std::nullopt;  // by Cayley-Hamilton, m^n != 0 means never zero
}

}  // namespace gms
