#include <doctest.h>

#include "gms/matrix.hpp"
#include "gms/pencil.hpp"

using namespace gms;

namespace {

// Test-only oracle: characteristic polynomial det(xI - m) by recursive
// cofactor expansion over polynomial entries, independent of the
// Berkowitz path.
Polynomial poly_mul(const Polynomial& a, const Polynomial& b) {
  const Field& f = a.field();
  if (a.is_zero() || b.is_zero()) return Polynomial::zero(f);
  std::vector<FieldElem> c(size_t(a.degree() + b.degree() + 1), FieldElem::zero(f));
  for (int i = 0; i <= a.degree(); ++i)
    for (int j = 0; j <= b.degree(); ++j)
      c[size_t(i + j)] += a.coeffs()[size_t(i)] * b.coeffs()[size_t(j)];
  return Polynomial(f, c);
}

Polynomial poly_add(const Polynomial& a, const Polynomial& b) {
  const Field& f = a.field();
  std::vector<FieldElem> c(size_t(std::max(a.degree(), b.degree()) + 1),
                           FieldElem::zero(f));
  for (int i = 0; i <= a.degree(); ++i) c[size_t(i)] += a.coeffs()[size_t(i)];
  for (int i = 0; i <= b.degree(); ++i) c[size_t(i)] += b.coeffs()[size_t(i)];
  return Polynomial(f, c);
}

Polynomial det_of_poly_matrix(const std::vector<std::vector<Polynomial>>& m) {
  const Field& f = m[0][0].field();
  size_t n = m.size();
  if (n == 1) return m[0][0];
  Polynomial acc = Polynomial::zero(f);
  for (size_t j = 0; j < n; ++j) {
    std::vector<std::vector<Polynomial>> minor;
    for (size_t i = 1; i < n; ++i) {
      std::vector<Polynomial> row;
      for (size_t c = 0; c < n; ++c)
        if (c != j) row.push_back(m[i][c]);
      minor.push_back(row);
    }
    Polynomial term = poly_mul(m[0][j], det_of_poly_matrix(minor));
    if (j % 2 == 1)
      term = poly_mul(term, Polynomial(f, {-FieldElem::one(f)}));
    acc = poly_add(acc, term);
  }
  return acc;
}

Polynomial char_poly_oracle(const Matrix& m) {
  const Field& f = m.field();
  int n = m.rows();
  std::vector<std::vector<Polynomial>> xi(
      static_cast<size_t>(n), std::vector<Polynomial>(static_cast<size_t>(n)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      std::vector<FieldElem> coeffs = {-m.at(i, j)};
      if (i == j) coeffs.push_back(FieldElem::one(f));
      xi[size_t(i)][size_t(j)] = Polynomial(f, coeffs);
    }
  return det_of_poly_matrix(xi);
}

// Hand Gaussian elimination oracle for ranks over F_p.
int rank_oracle(const Matrix& m) {
  Matrix a = m;
  int r = 0;
  for (int c = 0; c < a.cols() && r < a.rows(); ++c) {
    int pivot = -1;
    for (int i = r; i < a.rows(); ++i)
      if (!a.at(i, c).is_zero()) pivot = pivot < 0 ? i : pivot;
    if (pivot < 0) continue;
    for (int j = 0; j < a.cols(); ++j) std::swap(a.at(pivot, j), a.at(r, j));
    for (int i = r + 1; i < a.rows(); ++i) {
      if (a.at(i, c).is_zero()) continue;
      FieldElem factor = a.at(i, c) / a.at(r, c);
      for (int j = 0; j < a.cols(); ++j) a.at(i, j) -= factor * a.at(r, j);
    }
    ++r;
  }
  return r;
}

Matrix random_matrix(Rng& rng, const Field& f, int rows, int cols) {
  Matrix m(f, rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      m.at(i, j) = FieldElem::from_int(f, std::int64_t(rng.below(64)) - 32);
  return m;
}

}  // namespace

TEST_CASE("rref on the stated instances") {
  Field f2 = Field::fp(2);
  RrefResult id3 = rref(Matrix::identity(f2, 3));
  CHECK(id3.rank == 3);
  CHECK(id3.pivot_cols == std::vector<int>{0, 1, 2});

  RrefResult z = rref(Matrix::zero(f2, 2, 3));
  CHECK(z.rank == 0);
  CHECK(z.pivot_cols.empty());

  Matrix ones = Matrix::from_ints(f2, 2, 2, {1, 1, 1, 1});
  CHECK(rank_oracle(ones) == 1);
  CHECK(rref(ones).rank == 1);
}

TEST_CASE("rref rejects machine complex") {
  Matrix m(Field::c64(), 2, 2);
  CHECK_THROWS_AS(rref(m), FieldError);
}

TEST_CASE("kernel basis follows the left-kernel convention") {
  Field q = Field::q();
  CHECK(kernel_basis(Matrix::identity(q, 2)).rows() == 0);
  CHECK(kernel_basis(Matrix::zero(q, 2, 2)).rows() == 2);

  // v * E_12 = 0 solved by hand: v = (a, b) gives (0, a), so a = 0.
  Matrix e12 = Matrix::elementary(q, 2, 2, 0, 1);
  Matrix k = kernel_basis(e12);
  REQUIRE(k.rows() == 1);
  CHECK(k.at(0, 0).is_zero());
  CHECK(k.at(0, 1).is_one());
}

TEST_CASE("characteristic polynomial on the stated instances") {
  Field q = Field::q();
  CHECK(char_poly(Matrix::zero(q, 2, 2)) == Polynomial::monomial(q, 2));
  CHECK(char_poly(Matrix::elementary(q, 2, 2, 0, 1)) == Polynomial::monomial(q, 2));

  Matrix ones = Matrix::from_ints(q, 2, 2, {1, 1, 1, 1});
  Polynomial expected = char_poly_oracle(ones);  // x^2 - 2x
  CHECK(expected ==
        Polynomial(q, {FieldElem::zero(q), FieldElem::from_int(q, -2),
                       FieldElem::one(q)}));
  CHECK(char_poly(ones) == expected);
}

TEST_CASE("characteristic polynomial matches the cofactor oracle") {
  for (std::int64_t p : {2, 3, 101}) {
    Field f = Field::fp(p);
    Rng rng(7 * std::uint64_t(p));
    for (int trial = 0; trial < 30; ++trial) {
      int n = 1 + int(rng.below(4));
      Matrix m = random_matrix(rng, f, n, n);
      CHECK(char_poly(m) == char_poly_oracle(m));
    }
  }
}

TEST_CASE("determinant and inverse on the stated instances") {
  Field q = Field::q();
  CHECK(det(Matrix::identity(q, 3)).is_one());

  Matrix unipotent = Matrix::from_ints(q, 2, 2, {1, 1, 0, 1});
  CHECK(inverse(unipotent) == Matrix::from_ints(q, 2, 2, {1, -1, 0, 1}));

  // The 3x3 example conjugator is invertible with determinant 1.
  Matrix t = Matrix::from_ints(q, 3, 3, {1, 0, 1, 1, 1, 1, 0, 1, 1});
  CHECK(det(t) == FieldElem::one(q));
  CHECK(mat_mul(inverse(t), t) == Matrix::identity(q, 3));
}

TEST_CASE("inverse rejects singular input") {
  Field f3 = Field::fp(3);
  CHECK_THROWS_AS(inverse(Matrix::zero(f3, 2, 2)), SingularError);
}

TEST_CASE("rref is idempotent and rank is transpose-invariant") {
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    Field f = trial % 2 ? Field::fp(5) : Field::q();
    Matrix m = random_matrix(rng, f, 1 + int(rng.below(4)), 1 + int(rng.below(4)));
    RrefResult rr = rref(m);
    CHECK(rref(rr.reduced).reduced == rr.reduced);
    CHECK(rank(m) == rank(transpose(m)));
  }
}

TEST_CASE("characteristic polynomial is conjugation invariant") {
  Field f7 = Field::fp(7);
  Rng rng(13);
  for (int trial = 0; trial < 30; ++trial) {
    int n = 2 + int(rng.below(3));
    Matrix m = random_matrix(rng, f7, n, n);
    Matrix p = random_matrix(rng, f7, n, n);
    if (det(p).is_zero()) continue;
    CHECK(char_poly(mat_mul(mat_mul(p, m), inverse(p))) == char_poly(m));
  }
}

TEST_CASE("constant term of the characteristic polynomial is the signed determinant") {
  Rng rng(17);
  Field f = Field::fp(11);
  for (int trial = 0; trial < 30; ++trial) {
    int n = 1 + int(rng.below(4));
    Matrix m = random_matrix(rng, f, n, n);
    Polynomial cp = char_poly(m);
    FieldElem sign = n % 2 ? -FieldElem::one(f) : FieldElem::one(f);
    CHECK(cp.coeffs()[0] == sign * det(m));
  }
}

TEST_CASE("Cayley-Hamilton up to n = 5") {
  Rng rng(19);
  Field f = Field::fp(5);
  for (int trial = 0; trial < 20; ++trial) {
    int n = 1 + int(rng.below(5));
    Matrix m = random_matrix(rng, f, n, n);
    CHECK(char_poly(m).eval(m).is_zero());
  }
}

TEST_CASE("nilpotency index detection") {
  Field q = Field::q();
  Matrix e12 = Matrix::elementary(q, 3, 3, 0, 1);
  CHECK(nilpotency_index(e12) == 2);
  CHECK(nilpotency_index(Matrix::zero(q, 3, 3)) == 1);
  CHECK(!nilpotency_index(Matrix::identity(q, 3)));
}

TEST_CASE("numerical rank and eigenvalues over machine complex") {
  Field c = Field::c64();
  Matrix m(c, 2, 2);
  m.at(0, 0) = FieldElem::complex({2.0, 0.0});
  m.at(1, 1) = FieldElem::complex({-1.0, 0.0});
  CHECK(numerical_rank(m, 1e-9) == 2);
  auto eigs = eigenvalues(m);
  REQUIRE(eigs.size() == 2);
  double lo = std::min(eigs[0].real(), eigs[1].real());
  double hi = std::max(eigs[0].real(), eigs[1].real());
  CHECK(lo == doctest::Approx(-1.0).epsilon(1e-9));
  CHECK(hi == doctest::Approx(2.0).epsilon(1e-9));
}
