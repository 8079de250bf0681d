// Machine-complex paths: SVD rank and eigenvalues, backed by Eigen.

#include <Eigen/Dense>

#include "gms/matrix.hpp"

namespace gms {

namespace {

Eigen::MatrixXcd to_eigen(const Matrix& m) {
  Eigen::MatrixXcd out(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out(i, j) = m.at(i, j).complex_value();
  return out;
}

}  // namespace

int numerical_rank(const Matrix& m, double tolerance) {
  if (m.field().kind != FieldKind::complex64)
    throw FieldError("numerical_rank is for machine-complex matrices");
  if (m.rows() == 0 || m.cols() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_eigen(m));
  const auto& sv = svd.singularValues();
  double top = sv.size() ? sv(0) : 0.0;
  if (top == 0.0) return 0;
  int r = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > tolerance * top) ++r;
  return r;
}

std::vector<std::complex<double>> eigenvalues(const Matrix& m) {
  if (m.field().kind != FieldKind::complex64)
    throw FieldError("eigenvalues is for machine-complex matrices");
  if (!m.is_square()) throw ShapeError("eigenvalues needs a square matrix");
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(to_eigen(m), false);
  std::vector<std::complex<double>> out(size_t(m.rows()));
  for (int i = 0; i < m.rows(); ++i) out[i] = solver.eigenvalues()(i);
  return out;
}

}  // namespace gms
