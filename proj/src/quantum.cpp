#include "gms/quantum.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace gms {

namespace {

Eigen::MatrixXcd to_eigen(const Matrix& m) {
  Eigen::MatrixXcd out(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out(i, j) = m.at(i, j).complex_value();
  return out;
}

Matrix from_eigen(const Eigen::MatrixXcd& e) {
  Matrix out(Field::c64(), int(e.rows()), int(e.cols()));
  for (int i = 0; i < e.rows(); ++i)
    for (int j = 0; j < e.cols(); ++j)
      out.at(i, j) = FieldElem::complex(e(i, j));
  return out;
}

bool near_identity(const Eigen::MatrixXcd& m, double tol) {
  return (m - Eigen::MatrixXcd::Identity(m.rows(), m.cols())).norm() <= tol * m.rows();
}

}  // namespace

KrausMap make_kraus_map(std::vector<Matrix> operators) {
  if (operators.empty()) throw ShapeError("Kraus map needs operators");
  for (const Matrix& e : operators)
    if (e.field().kind != FieldKind::complex64 ||
        e.rows() != operators[0].rows() || e.cols() != operators[0].cols())
      throw ShapeError("Kraus operators must be machine complex, same shape");
  KrausMap k;
  k.kraus = std::move(operators);
  int n = k.in_dim(), np = k.out_dim();
  Eigen::MatrixXcd tp = Eigen::MatrixXcd::Zero(n, n);
  Eigen::MatrixXcd un = Eigen::MatrixXcd::Zero(np, np);
  for (const Matrix& e : k.kraus) {
    Eigen::MatrixXcd em = to_eigen(e);
    tp += em.adjoint() * em;
    un += em * em.adjoint();
  }
  k.trace_preserving = near_identity(tp, kQuantumTolerance);
  k.unital = near_identity(un, kQuantumTolerance);
  return k;
}

TransitionMatrix make_transition_matrix(std::vector<std::vector<double>> entries) {
  int n = int(entries.size());
  for (const auto& row : entries)
    if (int(row.size()) != n) throw ShapeError("transition matrix must be square");
  for (int j = 0; j < n; ++j) {
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
      if (entries[size_t(i)][size_t(j)] < 0)
        throw std::invalid_argument("transition matrix entries must be nonnegative");
      sum += entries[size_t(i)][size_t(j)];
    }
    if (std::abs(sum - 1.0) > 1e-12)
      throw std::invalid_argument("transition matrix column does not sum to 1");
  }
  return TransitionMatrix{std::move(entries)};
}

Digraph TransitionMatrix::underlying_digraph() const {
  std::vector<Arc> arcs;
  for (int i = 0; i < n(); ++i)
    for (int j = 0; j < n(); ++j)
      if (entries[size_t(j)][size_t(i)] != 0.0) arcs.push_back({i, j});
  return Digraph(n(), std::move(arcs));
}

KrausMap channel_from_transition(const TransitionMatrix& p) {
  int n = p.n();
  std::vector<Matrix> ops;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double pij = p.entries[size_t(i)][size_t(j)];
      if (pij == 0.0) continue;
      Matrix e(Field::c64(), n, n);
      e.at(i, j) = FieldElem::complex({std::sqrt(pij), 0.0});
      ops.push_back(e);
    }
  KrausMap k = make_kraus_map(std::move(ops));
  if (!k.trace_preserving)
    throw std::logic_error("channel_from_transition: trace preservation failed");
  // Support identity: the Kraus span is the adjoint space of the
  // underlying digraph's graphical space.
  Digraph g = p.underlying_digraph();
  for (const Matrix& e : k.kraus)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (std::abs(e.at(i, j).complex_value()) > 0 && !g.has_arc(j, i))
          throw std::logic_error("channel_from_transition: support mismatch");
  return k;
}

namespace {

// Stabilized product span of a complex matrix list; returns its dimension
// by SVD rank, or -1 when the rank decision is within the ambiguous band
// around the tolerance.
int complex_product_span_dim(const std::vector<Eigen::MatrixXcd>& basis,
                             double tolerance) {
  if (basis.empty()) return 0;
  int n = int(basis[0].rows());
  auto rank_of = [&](const std::vector<Eigen::MatrixXcd>& mats, bool* ambiguous) {
    Eigen::MatrixXcd stacked(mats.size(), n * n);
    for (size_t r = 0; r < mats.size(); ++r)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          stacked(Eigen::Index(r), i * n + j) = mats[r](i, j);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(stacked);
    const auto& sv = svd.singularValues();
    double top = sv.size() ? sv(0) : 0.0;
    int rank = 0;
    *ambiguous = false;
    for (int i = 0; i < sv.size(); ++i) {
      if (sv(i) > tolerance * top) ++rank;
      if (top > 0 && sv(i) > 0.01 * tolerance * top && sv(i) <= 10 * tolerance * top)
        *ambiguous = true;
    }
    return rank;
  };
  std::vector<Eigen::MatrixXcd> current = basis;
  bool ambiguous = false;
  int dim = rank_of(current, &ambiguous);
  while (true) {
    std::vector<Eigen::MatrixXcd> next = current;
    for (const auto& a : current)
      for (const auto& b : basis) next.push_back(a * b);
    bool amb2 = false;
    int dim2 = rank_of(next, &amb2);
    ambiguous = ambiguous || amb2;
    if (dim2 == dim) break;
    dim = dim2;
    current = std::move(next);
    if (dim >= n * n) break;
  }
  return ambiguous ? -1 : dim;
}

}  // namespace

Tristate complex_space_irreducible(const std::vector<Matrix>& basis,
                                   double tolerance) {
  if (basis.empty()) return Tristate::no;
  int n = basis[0].rows();
  if (n != basis[0].cols()) throw ShapeError("irreducibility needs square matrices");
  if (n == 1) return Tristate::yes;  // no nontrivial subspaces exist
  std::vector<Eigen::MatrixXcd> eb;
  for (const Matrix& b : basis) eb.push_back(to_eigen(b));
  int dim = complex_product_span_dim(eb, tolerance);
  if (dim < 0) return Tristate::indeterminate;
  return dim == n * n ? Tristate::yes : Tristate::no;
}

Tristate channel_irreducible(const KrausMap& k, double tolerance) {
  if (k.in_dim() != k.out_dim())
    throw ShapeError("channel_irreducible needs square Kraus operators");
  return complex_space_irreducible(k.kraus, tolerance);
}

MatrixSpace operator_system(const UndirectedGraph& g, const Field& f) {
  MatrixSpace s = graphical_space(g.looped_symmetrization(), f);
  // Self-adjointness and I are structural here; assert both.
  Matrix identity = Matrix::identity(f, g.n());
  if (!s.contains(identity))
    throw std::logic_error("operator_system: identity missing");
  for (const Matrix& b : s.basis())
    if (!s.contains(conj_transpose(b)))
      throw std::logic_error("operator_system: not self-adjoint");
  return s;
}

int generated_algebra_dim(const MatrixSpace& s) {
  if (!s.field().exact())
    throw FieldError("generated_algebra_dim requires an exact field");
  int n = s.ambient_rows();
  if (n != s.ambient_cols()) throw ShapeError("generated_algebra_dim: square");
  MatrixSpace w = s;
  while (true) {
    std::vector<Matrix> next = w.basis();
    for (const Matrix& a : w.basis())
      for (const Matrix& b : s.basis()) next.push_back(mat_mul(a, b));
    MatrixSpace grown(s.field(), n, n, next);
    if (grown.dim() == w.dim()) return w.dim();
    w = std::move(grown);
    if (w.dim() == n * n) return w.dim();
  }
}

bool operator_system_connected(const MatrixSpace& f) {
  int n = f.ambient_rows();
  if (n != f.ambient_cols()) throw ShapeError("operator system must be square");
  Matrix identity = Matrix::identity(f.field(), n);
  if (!f.field().exact())
    throw FieldError(
        "operator_system_connected is exact; use complex_space_irreducible "
        "for machine-complex systems");
  if (!f.contains(identity))
    throw std::invalid_argument("operator system must contain the identity");
  for (const Matrix& b : f.basis())
    if (!f.contains(conj_transpose(b)))
      throw std::invalid_argument("operator system must be self-adjoint");
  if (n == 1) return true;
  // Connectivity = irreducibility for self-adjoint systems containing I;
  // decided by the generated-algebra dimension. The dimension of the span
  // is invariant under extending Q(i) to C, where the Burnside criterion
  // applies.
  return generated_algebra_dim(f) == n * n;
}

double second_largest_modulus(std::vector<std::complex<double>> eigs) {
  std::sort(eigs.begin(), eigs.end(),
            [](const std::complex<double>& a, const std::complex<double>& b) {
              return std::abs(a) > std::abs(b);
            });
  return eigs.size() >= 2 ? std::abs(eigs[1]) : 0.0;
}

SpectralPair spectral_expansion_pair(const UndirectedGraph& g) {
  int n = g.n();
  if (n > 16) throw CapError("spectral_expansion_pair: n too large");
  auto deg = g.degrees();
  if (n == 0 || deg[0] == 0)
    throw std::invalid_argument("spectral_expansion_pair needs degree >= 1");
  for (int v = 0; v < n; ++v)
    if (deg[v] != deg[0])
      throw std::invalid_argument("spectral_expansion_pair: graph not regular");
  double d = double(deg[0]);

  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (auto [i, j] : g.edges()) {
    a(i, j) = 1.0;
    a(j, i) = 1.0;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> graph_solver(a / d);
  std::vector<std::complex<double>> graph_eigs;
  for (int i = 0; i < n; ++i) graph_eigs.push_back({graph_solver.eigenvalues()(i), 0});

  // Superoperator of (1/d) sum E_{i,j} X E_{i,j}^* over both arc
  // orientations: sum E_{i,j} (x) conj(E_{i,j}) / d, built explicitly.
  Eigen::MatrixXcd super = Eigen::MatrixXcd::Zero(n * n, n * n);
  auto add_arc = [&](int i, int j) { super(i * n + i, j * n + j) += 1.0 / d; };
  for (auto [i, j] : g.edges()) {
    add_arc(i, j);
    add_arc(j, i);
  }
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> chan_solver(super, false);
  std::vector<std::complex<double>> chan_eigs;
  for (int i = 0; i < n * n; ++i) chan_eigs.push_back(chan_solver.eigenvalues()(i));

  SpectralPair out{second_largest_modulus(std::move(graph_eigs)),
                   second_largest_modulus(std::move(chan_eigs))};
  if (std::abs(out.graph_value - out.channel_value) > kQuantumTolerance)
    throw std::logic_error("spectral_expansion_pair: equality check failed");
  return out;
}

}  // namespace gms
