#include "gms/matrix_space.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <mutex>
#include <numeric>

#include "gms/graph_algorithms.hpp"
#include "gms/pencil.hpp"

namespace gms {

namespace {

std::vector<FieldElem> vectorize(const Matrix& m) {
  return m.entries();
}

Matrix unvectorize(const Field& f, int rows, int cols,
                   const std::vector<FieldElem>& v) {
  Matrix m(f, rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m.at(i, j) = v[size_t(i) * cols + j];
  return m;
}

std::int64_t ipow_capped(std::int64_t base, int exp, std::int64_t cap) {
  std::int64_t v = 1;
  for (int i = 0; i < exp; ++i) {
    v *= base;
    if (v > cap) return cap + 1;
  }
  return v;
}

}  // namespace

MatrixSpace::MatrixSpace(Field f, int rows, int cols,
                         const std::vector<Matrix>& spanning)
    : field_(f), rows_(rows), cols_(cols) {
  if (spanning.empty()) return;
  Matrix stacked(f, int(spanning.size()), rows * cols);
  for (int k = 0; k < int(spanning.size()); ++k) {
    const Matrix& m = spanning[k];
    if (!(m.field() == f) || m.rows() != rows || m.cols() != cols)
      throw ShapeError("spanning matrix has wrong shape or field");
    for (int e = 0; e < rows * cols; ++e) stacked.at(k, e) = m.entries()[e];
  }
  RrefResult rr = rref(stacked);
  for (int k = 0; k < rr.rank; ++k) {
    std::vector<FieldElem> row(rr.reduced.entries().begin() + size_t(k) * rows * cols,
                               rr.reduced.entries().begin() +
                                   size_t(k + 1) * rows * cols);
    basis_.push_back(unvectorize(f, rows, cols, row));
  }
}

MatrixSpace MatrixSpace::zero(const Field& f, int rows, int cols) {
  return MatrixSpace(f, rows, cols, {});
}

MatrixSpace MatrixSpace::full(const Field& f, int n) {
  std::vector<Matrix> es;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) es.push_back(Matrix::elementary(f, n, n, i, j));
  return MatrixSpace(f, n, n, es);
}

std::optional<std::vector<FieldElem>> MatrixSpace::coordinates(
    const Matrix& m) const {
  if (!(m.field() == field_) || m.rows() != rows_ || m.cols() != cols_)
    return std::nullopt;
  // RREF basis: the coordinate along basis k is m's entry at that basis
  // row's pivot position.
  std::vector<FieldElem> coords;
  coords.reserve(basis_.size());
  Matrix residue = m;
  for (const Matrix& b : basis_) {
    int pivot = -1;
    for (int e = 0; e < rows_ * cols_; ++e)
      if (!b.entries()[e].is_zero()) {
        pivot = e;
        break;
      }
    FieldElem c = residue.entries()[size_t(pivot)];
    coords.push_back(c);
    if (!c.is_zero()) residue = mat_sub(residue, scalar_mul(c, b));
  }
  if (!residue.is_zero()) return std::nullopt;
  return coords;
}

Matrix MatrixSpace::from_coordinates(const std::vector<FieldElem>& coords) const {
  if (coords.size() != basis_.size()) throw ShapeError("coordinate arity mismatch");
  Matrix out(field_, rows_, cols_);
  for (size_t k = 0; k < coords.size(); ++k)
    if (!coords[k].is_zero()) out = mat_add(out, scalar_mul(coords[k], basis_[k]));
  return out;
}

bool MatrixSpace::contains(const Matrix& m) const {
  return coordinates(m).has_value();
}

bool MatrixSpace::same_space(const MatrixSpace& o) const {
  // RREF bases are canonical.
  return field_ == o.field_ && rows_ == o.rows_ && cols_ == o.cols_ &&
         basis_ == o.basis_;
}

bool MatrixSpace::is_graphical() const {
  for (const Matrix& b : basis_) {
    int nonzero = 0;
    bool unit = true;
    for (const FieldElem& e : b.entries())
      if (!e.is_zero()) {
        ++nonzero;
        if (!e.is_one()) unit = false;
      }
    if (nonzero != 1 || !unit) return false;
  }
  return true;
}

MatrixSpace graphical_space(const Digraph& g, const Field& f) {
  std::vector<Matrix> es;
  for (auto [i, j] : g.arcs()) es.push_back(Matrix::elementary(f, g.n(), g.n(), i, j));
  return MatrixSpace(f, g.n(), g.n(), es);
}

MatrixSpace graphical_space(const BipartiteGraph& g, const Field& f) {
  std::vector<Matrix> es;
  for (auto [i, j] : g.edges())
    es.push_back(Matrix::elementary(f, g.m(), g.n(), i, j));
  return MatrixSpace(f, g.m(), g.n(), es);
}

namespace {

std::vector<Arc> support_positions(const MatrixSpace& s) {
  std::vector<Arc> pos;
  for (int i = 0; i < s.ambient_rows(); ++i)
    for (int j = 0; j < s.ambient_cols(); ++j) {
      for (const Matrix& b : s.basis())
        if (!b.at(i, j).is_zero()) {
          pos.push_back({i, j});
          break;
        }
    }
  return pos;
}

}  // namespace

Digraph supporting_digraph(const MatrixSpace& s) {
  if (s.ambient_rows() != s.ambient_cols())
    throw ShapeError("supporting digraph needs a square ambient space");
  return Digraph(s.ambient_rows(), support_positions(s));
}

BipartiteGraph supporting_bipartite(const MatrixSpace& s) {
  return BipartiteGraph(s.ambient_rows(), s.ambient_cols(), support_positions(s));
}

std::int64_t element_count(const MatrixSpace& s) {
  if (!s.field().is_prime_field())
    throw CapError("element enumeration requires a prime field");
  return ipow_capped(s.field().p, s.dim(), std::int64_t{10'000'000});
}

void enumerate_elements(const MatrixSpace& s,
                        const std::function<bool(const Matrix&)>& visit) {
  std::int64_t count = element_count(s);
  if (count > 10'000'000) throw CapError("element enumeration over cap 1e7");
  Matrix current(s.field(), s.ambient_rows(), s.ambient_cols());
  if (!visit(current)) return;
  int d = s.dim();
  std::vector<int> digits(size_t(d), 0);
  std::int64_t p = s.field().p;
  for (std::int64_t step = 1; step < count; ++step) {
    int i = 0;
    while (digits[i] == p - 1) {
      digits[i] = 0;
      current = mat_add(current, s.basis()[i]);  // wraps mod p
      ++i;
    }
    ++digits[i];
    current = mat_add(current, s.basis()[i]);
    if (!visit(current)) return;
  }
}

namespace {

// Gaussian binomial [m, d]_p, capped.
std::int64_t gaussian_binomial_capped(std::int64_t p, int m, int d,
                                      std::int64_t cap) {
  if (d < 0 || d > m) return 0;
  // Product form with exact division; overflows guarded by the cap.
  Integer num = 1, den = 1;
  for (int i = 0; i < d; ++i) {
    num *= (Integer(boost::multiprecision::pow(Integer(p), unsigned(m - i))) - 1);
    den *= (Integer(boost::multiprecision::pow(Integer(p), unsigned(d - i))) - 1);
  }
  Integer v = num / den;
  if (v > cap) return cap + 1;
  return v.convert_to<std::int64_t>();
}

// Enumerates the canonical RREF bases of all d-dimensional subspaces of
// F_p^m. The visitor receives d rows of m digits each (row-major buffer,
// reused between calls); returning false stops the walk.
void enumerate_rref_bases(
    std::int64_t p, int m, int d,
    const std::function<bool(const std::uint8_t* rows)>& visit) {
  if (d == 0) {
    visit(nullptr);
    return;
  }
  if (d > m) return;
  std::vector<int> pivots(static_cast<size_t>(d));
  std::iota(pivots.begin(), pivots.end(), 0);
  std::vector<std::uint8_t> rows(size_t(d) * m);
  bool stop = false;
  while (!stop) {
    // Free positions: (row i, col j) with j > pivots[i], j not a pivot.
    std::vector<std::pair<int, int>> free_pos;
    for (int i = 0; i < d; ++i)
      for (int j = pivots[i] + 1; j < m; ++j)
        if (!std::binary_search(pivots.begin(), pivots.end(), j))
          free_pos.push_back({i, j});
    std::fill(rows.begin(), rows.end(), std::uint8_t{0});
    for (int i = 0; i < d; ++i) rows[size_t(i) * m + pivots[i]] = 1;
    std::vector<std::uint8_t> fill(free_pos.size(), 0);
    while (true) {
      if (!visit(rows.data())) {
        stop = true;
        break;
      }
      // Odometer over the free positions, least significant first.
      size_t k = 0;
      while (k < fill.size() && fill[k] == p - 1) {
        fill[k] = 0;
        rows[size_t(free_pos[k].first) * m + free_pos[k].second] = 0;
        ++k;
      }
      if (k == fill.size()) break;
      ++fill[k];
      rows[size_t(free_pos[k].first) * m + free_pos[k].second] = fill[k];
    }
    if (stop) break;
    // Next pivot combination in lexicographic order.
    int i = d - 1;
    while (i >= 0 && pivots[i] == m - d + i) --i;
    if (i < 0) break;
    ++pivots[i];
    for (int k2 = i + 1; k2 < d; ++k2) pivots[k2] = pivots[k2 - 1] + 1;
  }
}

MatrixSpace subspace_from_rows(const MatrixSpace& s, int d,
                               const std::uint8_t* rows) {
  std::vector<Matrix> gens;
  for (int i = 0; i < d; ++i) {
    std::vector<FieldElem> coords;
    coords.reserve(s.dim());
    for (int j = 0; j < s.dim(); ++j)
      coords.push_back(FieldElem::from_int(s.field(), rows[size_t(i) * s.dim() + j]));
    gens.push_back(s.from_coordinates(coords));
  }
  return MatrixSpace(s.field(), s.ambient_rows(), s.ambient_cols(), gens);
}

}  // namespace

std::int64_t subspace_count(const MatrixSpace& s, int d) {
  if (!s.field().is_prime_field())
    throw CapError("subspace enumeration requires a prime field");
  return gaussian_binomial_capped(s.field().p, s.dim(), d, 10'000'000);
}

void enumerate_subspaces(const MatrixSpace& s, int d,
                         const std::function<bool(const MatrixSpace&)>& visit) {
  if (subspace_count(s, d) > 10'000'000)
    throw CapError("subspace enumeration over cap 1e7");
  enumerate_rref_bases(s.field().p, s.dim(), d, [&](const std::uint8_t* rows) {
    return visit(subspace_from_rows(s, d, rows));
  });
}

ExactCount max_rank(const MatrixSpace& s) {
  int bound = std::min(s.ambient_rows(), s.ambient_cols());
  if (s.field().is_prime_field() && element_count(s) <= 10'000'000) {
    int best = 0;
    enumerate_elements(s, [&](const Matrix& m) {
      best = std::max(best, rank(m));
      return best < bound;
    });
    if (s.is_graphical()) {
      // Basic rank correspondence: max rank equals the matching number of
      // the support. A mismatch would be a genuine counterexample.
      int matching = max_matching(supporting_bipartite(s)).size;
      if (matching != best)
        throw std::logic_error("max_rank: matching-number cross-check failed");
    }
    return ExactCount{best, true};
  }
  if (s.is_graphical())
    return ExactCount{max_matching(supporting_bipartite(s)).size, true};
  throw CapError("max_rank: exhaustive enumeration infeasible over this field");
}

IndexResult nil_index(const MatrixSpace& s) {
  if (s.field().is_prime_field() && element_count(s) <= 10'000'000) {
    int best = 0;
    bool infinite = false;
    enumerate_elements(s, [&](const Matrix& m) {
      auto k = nilpotency_index(m);
      if (!k) {
        infinite = true;
        return false;
      }
      best = std::max(best, *k);
      return true;
    });
    if (infinite) return IndexResult{std::nullopt, true};
    return IndexResult{best, true};
  }
  // Randomized fallback through the homogeneous pencil.
  SymbolicMatrix pencil(s.field(), s.basis());
  SntOutcome snt = snt_random(pencil, 8, 1'000'003, 12345);
  if (snt.not_nil) return IndexResult{std::nullopt, true};  // certified witness
  int best = 1;
  for (const auto& point : snt.sampled_points) {
    auto k = nilpotency_index(evaluate(pencil, point));
    if (k) best = std::max(best, *k);
  }
  return IndexResult{best, false};
}

std::optional<int> nilpotent_index(const MatrixSpace& s) {
  if (s.ambient_rows() != s.ambient_cols())
    throw ShapeError("nilpotent_index needs a square ambient space");
  int n = s.ambient_rows();
  if (n == 0) return 1;
  MatrixSpace w = s;
  // W_1 = S; W_{k+1} = span{B*C : B in W_k, C in S}; smallest k with
  // W_k = 0. Once W_n is nonzero the space cannot be nilpotent
  // (simultaneous strict triangularization bound).
  for (int k = 1; k <= n; ++k) {
    if (w.dim() == 0) return k;
    std::vector<Matrix> products;
    for (const Matrix& b : w.basis())
      for (const Matrix& c : s.basis()) products.push_back(mat_mul(b, c));
    w = MatrixSpace(s.field(), n, n, products);
  }
  return std::nullopt;
}

int zero_eigenvalue_min(const MatrixSpace& s) {
  if (s.ambient_rows() != s.ambient_cols())
    throw ShapeError("zero_eigenvalue_min needs a square ambient space");
  if (!s.field().is_prime_field() || element_count(s) > 10'000'000)
    throw CapError("zero_eigenvalue_min: exhaustive enumeration infeasible");
  int n = s.ambient_rows();
  int best = n;
  enumerate_elements(s, [&](const Matrix& m) {
    Polynomial p = char_poly(m);
    best = std::min(best, p.trailing_zero_count());
    return best > 0;
  });
  if (s.is_graphical() && n <= 16) {
    int covered = max_cycle_cover_vertices(supporting_digraph(s));
    if (best != n - covered)
      throw std::logic_error("zero_eigenvalue_min: cycle-cover cross-check failed");
  }
  return best;
}

VectorSpace invariant_closure(const MatrixSpace& s,
                              const std::vector<FieldElem>& v) {
  int n = s.ambient_cols();
  if (s.ambient_rows() != n) throw ShapeError("invariant_closure: square ambient");
  bool all_zero = true;
  for (const auto& e : v) all_zero = all_zero && e.is_zero();
  if (all_zero) throw std::invalid_argument("invariant_closure: zero vector");
  Matrix u(s.field(), 1, n);
  for (int j = 0; j < n; ++j) u.at(0, j) = v[j];
  u = rref(u).reduced;
  int dim = 1;
  while (true) {
    std::vector<Matrix> rows;
    rows.push_back(u);
    for (int i = 0; i < dim; ++i) {
      std::vector<FieldElem> row(u.entries().begin() + size_t(i) * n,
                                 u.entries().begin() + size_t(i + 1) * n);
      for (const Matrix& b : s.basis()) {
        auto image = row_times_matrix(row, b);
        Matrix im(s.field(), 1, n);
        for (int j = 0; j < n; ++j) im.at(0, j) = image[j];
        rows.push_back(im);
      }
    }
    Matrix stacked(s.field(), 0, n);
    {
      int total = 0;
      for (const auto& r : rows) total += r.rows();
      stacked = Matrix(s.field(), total, n);
      int at = 0;
      for (const auto& r : rows)
        for (int i = 0; i < r.rows(); ++i, ++at)
          for (int j = 0; j < n; ++j) stacked.at(at, j) = r.at(i, j);
    }
    RrefResult rr = rref(stacked);
    Matrix next(s.field(), rr.rank, n);
    for (int i = 0; i < rr.rank; ++i)
      for (int j = 0; j < n; ++j) next.at(i, j) = rr.reduced.at(i, j);
    if (rr.rank == dim) return next;
    u = next;
    dim = rr.rank;
  }
}

namespace {

// Canonical projective representatives of F_p^n: first nonzero coord 1.
void enumerate_projective_points(
    const Field& f, int n,
    const std::function<bool(const std::vector<FieldElem>&)>& visit) {
  std::int64_t p = f.p;
  std::vector<int> digits(size_t(n), 0);
  std::vector<FieldElem> v(size_t(n), FieldElem::zero(f));
  std::int64_t total = 1;
  for (int i = 0; i < n; ++i) total *= p;
  for (std::int64_t code = 1; code < total; ++code) {
    std::int64_t c = code;
    bool canonical = true;
    for (int i = 0; i < n; ++i) {
      digits[i] = int(c % p);
      c /= p;
    }
    for (int i = 0; i < n; ++i) {
      if (digits[i] == 0) continue;
      canonical = digits[i] == 1;
      break;
    }
    if (!canonical) continue;
    for (int i = 0; i < n; ++i) v[i] = FieldElem::from_int(f, digits[i]);
    if (!visit(v)) return;
  }
}

std::int64_t projective_point_count(std::int64_t p, int n) {
  std::int64_t num = 1;
  for (int i = 0; i < n; ++i) num *= p;
  return (num - 1) / (p - 1);
}

}  // namespace

IrreducibilityResult is_irreducible(const MatrixSpace& s) {
  int n = s.ambient_rows();
  if (n != s.ambient_cols()) throw ShapeError("is_irreducible: square ambient");
  if (s.field().is_prime_field()) {
    if (projective_point_count(s.field().p, n) > 1'000'000)
      throw CapError("is_irreducible: projective enumeration over cap");
    IrreducibilityResult out{true, std::nullopt};
    // Complete: a proper invariant subspace contains the closure of each
    // of its nonzero vectors, so some projective point witnesses it.
    enumerate_projective_points(s.field(), n, [&](const std::vector<FieldElem>& v) {
      VectorSpace u = invariant_closure(s, v);
      if (u.rows() < n) {
        out = IrreducibilityResult{false, u};
        return false;
      }
      return true;
    });
    return out;
  }
  if (s.field().kind == FieldKind::complex64) {
    // Burnside criterion over the algebraically closed field: irreducible
    // iff the generated algebra has full dimension n^2.
    throw CapError(
        "is_irreducible over machine complex lives in the quantum module "
        "(generated-algebra criterion)");
  }
  throw CapError("is_irreducible: unsupported field");
}

namespace {

// Action of s on the quotient F^n / U, as a matrix space on the
// complementary coordinates.
MatrixSpace quotient_action(const MatrixSpace& s, const VectorSpace& u) {
  int n = s.ambient_cols();
  int d = u.rows();
  // Change of basis P: rows = basis of U, then standard vectors on the
  // non-pivot coordinates.
  RrefResult ur = rref(u);
  std::vector<bool> is_pivot(size_t(n), false);
  for (int c : ur.pivot_cols) is_pivot[c] = true;
  Matrix p_mat(s.field(), n, n);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < n; ++j) p_mat.at(i, j) = ur.reduced.at(i, j);
  int at = d;
  for (int j = 0; j < n; ++j)
    if (!is_pivot[j]) p_mat.at(at++, j) = FieldElem::one(s.field());
  Matrix p_inv = inverse(p_mat);
  std::vector<Matrix> blocks;
  for (const Matrix& b : s.basis()) {
    Matrix conj = mat_mul(mat_mul(p_mat, b), p_inv);
    Matrix block(s.field(), n - d, n - d);
    for (int i = d; i < n; ++i)
      for (int j = d; j < n; ++j) block.at(i - d, j - d) = conj.at(i, j);
    blocks.push_back(block);
  }
  return MatrixSpace(s.field(), n - d, n - d, blocks);
}

}  // namespace

int composition_series_length(const MatrixSpace& s) {
  int n = s.ambient_rows();
  if (n != s.ambient_cols())
    throw ShapeError("composition_series_length: square ambient");
  if (n == 0) return 0;
  if (!s.field().is_prime_field())
    throw CapError("composition_series_length requires a prime field");
  if (projective_point_count(s.field().p, n) > 1'000'000)
    throw CapError("composition_series_length: projective enumeration over cap");
  // The minimum-dimension closure over all projective points is a minimal
  // invariant subspace; split it off and recurse on the quotient action.
  std::optional<VectorSpace> minimal;
  enumerate_projective_points(s.field(), n, [&](const std::vector<FieldElem>& v) {
    VectorSpace u = invariant_closure(s, v);
    if (!minimal || u.rows() < minimal->rows()) minimal = u;
    return minimal->rows() > 1;  // dimension 1 cannot be beaten
  });
  if (minimal->rows() == n) return 1;  // irreducible
  return 1 + composition_series_length(quotient_action(s, *minimal));
}

MatrixSpace induced_subspace_lr(const MatrixSpace& s, const Matrix& t_left,
                                const Matrix& t_right) {
  if (!s.field().exact())
    throw FieldError("induced_subspace_lr requires an exact field");
  if (t_left.cols() != s.ambient_rows() || t_right.cols() != s.ambient_cols())
    throw ShapeError("induced_subspace_lr: spanning matrix shape mismatch");
  if (rank(t_left) != t_left.rows() || rank(t_right) != t_right.rows())
    throw std::invalid_argument("induced_subspace_lr: rank-deficient rows");
  Matrix rt = transpose(t_right);
  std::vector<Matrix> gens;
  for (const Matrix& b : s.basis()) gens.push_back(mat_mul(mat_mul(t_left, b), rt));
  return MatrixSpace(s.field(), t_left.rows(), t_right.rows(), gens);
}

Matrix coordinate_rows(const Field& f, int n, const std::vector<int>& indices) {
  Matrix t(f, int(indices.size()), n);
  for (int k = 0; k < int(indices.size()); ++k)
    t.at(k, indices[k]) = FieldElem::one(f);
  return t;
}

namespace {

bool is_coordinate_rows(const Matrix& t) {
  std::vector<bool> used(size_t(t.cols()), false);
  for (int i = 0; i < t.rows(); ++i) {
    int ones = 0, where = -1;
    for (int j = 0; j < t.cols(); ++j) {
      if (t.at(i, j).is_zero()) continue;
      if (!t.at(i, j).is_one()) return false;
      ++ones;
      where = j;
    }
    if (ones != 1 || used[size_t(where)]) return false;
    used[size_t(where)] = true;
  }
  return true;
}

}  // namespace

MatrixSpace induced_subspace_u(const MatrixSpace& s, const Matrix& t_u) {
  if (t_u.cols() != s.ambient_cols() || s.ambient_rows() != s.ambient_cols())
    throw ShapeError("induced_subspace_u: shape mismatch");
  if (s.field().exact()) {
    // Exact fields lack square roots; only coordinate subspaces have an
    // exactly orthonormal row basis.
    if (!is_coordinate_rows(t_u))
      throw std::invalid_argument(
          "induced_subspace_u: exact fields accept coordinate subspaces only");
    Matrix tstar = conj_transpose(t_u);
    std::vector<Matrix> gens;
    for (const Matrix& b : s.basis())
      gens.push_back(mat_mul(mat_mul(t_u, b), tstar));
    return MatrixSpace(s.field(), t_u.rows(), t_u.rows(), gens);
  }
  throw FieldError(
      "induced_subspace_u over machine complex is provided by the quantum "
      "module's sampling helpers");
}

int find_adapted_vector(const MatrixSpace& s) {
  int rows = s.ambient_rows(), cols = s.ambient_cols();
  int d = s.dim();
  for (int j = 0; j < rows; ++j) {
    // Constraint matrix: coefficients -> entries outside row j.
    Matrix constraints(s.field(), rows * cols - cols, d);
    int at = 0;
    for (int r = 0; r < rows; ++r) {
      if (r == j) continue;
      for (int c = 0; c < cols; ++c, ++at)
        for (int k = 0; k < d; ++k)
          constraints.at(at, k) = s.basis()[k].at(r, c);
    }
    if (rank(constraints) == d) return j;
  }
  throw std::invalid_argument(
      "find_adapted_vector: no adapted standard vector (space is not nil)");
}

namespace {

std::vector<Arc> nil_to_acyclic_arcs(const MatrixSpace& s,
                                     const std::vector<int>& labels) {
  int k = s.ambient_rows();
  if (k == 0) return {};
  int j;
  try {
    j = find_adapted_vector(s);
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument(
        "nil_to_acyclic_subgraph: non-nil input detected mid-recursion");
  }
  Digraph support = supporting_digraph(s);
  // T = elements whose column j vanishes off the diagonal entry (j, j).
  int d = s.dim();
  Matrix constraints(s.field(), k - 1, d);
  int at = 0;
  for (int r = 0; r < k; ++r) {
    if (r == j) continue;
    for (int c = 0; c < d; ++c) constraints.at(at, c) = s.basis()[c].at(r, j);
    ++at;
  }
  Matrix coeff_kernel = kernel_basis(transpose(constraints));
  std::vector<Matrix> t_basis;
  for (int i = 0; i < coeff_kernel.rows(); ++i) {
    std::vector<FieldElem> coords(coeff_kernel.entries().begin() + size_t(i) * d,
                                  coeff_kernel.entries().begin() +
                                      size_t(i + 1) * d);
    t_basis.push_back(s.from_coordinates(coords));
  }
  // A(T): delete row and column j.
  std::vector<int> rest;
  for (int v = 0; v < k; ++v)
    if (v != j) rest.push_back(v);
  std::vector<Matrix> a_basis;
  for (const Matrix& m : t_basis) {
    Matrix a(s.field(), k - 1, k - 1);
    for (int r = 0; r < k - 1; ++r)
      for (int c = 0; c < k - 1; ++c) a.at(r, c) = m.at(rest[r], rest[c]);
    a_basis.push_back(a);
  }
  MatrixSpace a_space(s.field(), k - 1, k - 1, a_basis);
  std::vector<int> sub_labels;
  for (int v : rest) sub_labels.push_back(labels[v]);
  std::vector<Arc> arcs = nil_to_acyclic_arcs(a_space, sub_labels);
  for (int i = 0; i < k; ++i)
    if (i != j && support.has_arc(i, j)) arcs.push_back({labels[i], labels[j]});
  return arcs;
}

}  // namespace

Digraph nil_to_acyclic_subgraph(const MatrixSpace& s) {
  if (!s.field().exact())
    throw FieldError("nil_to_acyclic_subgraph requires an exact field");
  int n = s.ambient_rows();
  std::vector<int> labels(static_cast<size_t>(n));
  std::iota(labels.begin(), labels.end(), 0);
  Digraph out(n, nil_to_acyclic_arcs(s, labels));
  if (!is_acyclic(out) || out.arc_count() < s.dim())
    throw std::logic_error("nil_to_acyclic_subgraph: contract violated");
  Digraph support = supporting_digraph(s);
  for (auto [i, j] : out.arcs())
    if (!support.has_arc(i, j))
      throw std::logic_error("nil_to_acyclic_subgraph: arc outside support");
  return out;
}

MeshulamWitness meshulam_witness(const std::vector<Matrix>& mats,
                                 std::uint64_t seed, int budget) {
  if (mats.empty()) throw std::invalid_argument("meshulam_witness: empty input");
  const Field& f = mats[0].field();
  if (!f.exact()) throw FieldError("meshulam_witness requires an exact field");
  int rows = mats[0].rows(), cols = mats[0].cols();
  MatrixSpace span(f, rows, cols, mats);
  // The RREF basis has pairwise distinct lexicographically-first nonzero
  // positions (its pivots).
  std::vector<Arc> positions;
  for (const Matrix& b : span.basis())
    for (int e = 0; e < rows * cols; ++e)
      if (!b.entries()[e].is_zero()) {
        positions.push_back({e / cols, e % cols});
        break;
      }
  BipartiteGraph pattern(rows, cols, positions);
  int rho = min_line_cover(pattern).rho;

  std::optional<Matrix> witness;
  if (f.is_prime_field() && element_count(span) <= 10'000'000) {
    enumerate_elements(span, [&](const Matrix& m) {
      if (rank(m) >= rho) {
        witness = m;
        return false;
      }
      return true;
    });
  } else {
    // Basis elements first, then random combinations over a fixed integer
    // range; existence is guaranteed, so exhausting the budget is an
    // error, never a downgrade.
    for (const Matrix& b : span.basis())
      if (!witness && rank(b) >= rho) witness = b;
    std::uint64_t state = seed ? seed : 0x9e3779b97f4a7c15ULL;
    auto next = [&state]() {
      state += 0x9e3779b97f4a7c15ULL;
      std::uint64_t z = state;
      z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
      z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
      return z ^ (z >> 31);
    };
    for (int trial = 0; trial < budget && !witness; ++trial) {
      std::vector<FieldElem> coords;
      for (int k = 0; k < span.dim(); ++k)
        coords.push_back(FieldElem::from_int(f, std::int64_t(next() % 2048) - 1024));
      Matrix candidate = span.from_coordinates(coords);
      if (rank(candidate) >= rho) witness = candidate;
    }
  }
  if (!witness)
    throw std::runtime_error("meshulam_witness: witness search budget exhausted");
  return MeshulamWitness{std::move(pattern), rho, *witness};
}

// ---------------------------------------------------------------------------
// Descending subspace searches.

namespace {

enum class Property { rank_bounded, nil, bounded_eigenvalues, reducible };

bool subspace_satisfies(const MatrixSpace& sub, Property prop, int param) {
  switch (prop) {
    case Property::rank_bounded: {
      bool ok = true;
      enumerate_elements(sub, [&](const Matrix& m) {
        ok = rank(m) <= param;
        return ok;
      });
      return ok;
    }
    case Property::nil: {
      bool ok = true;
      enumerate_elements(sub, [&](const Matrix& m) {
        ok = is_nilpotent(m);
        return ok;
      });
      return ok;
    }
    case Property::bounded_eigenvalues: {
      int n = sub.ambient_rows();
      bool ok = true;
      enumerate_elements(sub, [&](const Matrix& m) {
        ok = char_poly(m).trailing_zero_count() >= n - param;
        return ok;
      });
      return ok;
    }
    case Property::reducible:
      return !is_irreducible(sub).irreducible;
  }
  return false;
}

// Property tables over F_2 matrix bitmasks, memoized per shape.
struct F2Tables {
  std::vector<std::uint8_t> rank;            // rank per mask
  std::vector<std::uint8_t> nilpotent;       // square shapes only
  std::vector<std::uint8_t> trailing_zeros;  // square shapes only
};

const F2Tables& f2_tables(int rows, int cols) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, F2Tables> cache;
  std::scoped_lock lock(mu);
  auto it = cache.find({rows, cols});
  if (it != cache.end()) return it->second;
  F2Tables t;
  Field f2 = Field::fp(2);
  std::size_t total = std::size_t{1} << (rows * cols);
  t.rank.resize(total);
  if (rows == cols) {
    t.nilpotent.resize(total);
    t.trailing_zeros.resize(total);
  }
  for (std::size_t mask = 0; mask < total; ++mask) {
    Matrix m(f2, rows, cols);
    for (int e = 0; e < rows * cols; ++e)
      if (mask >> e & 1)
        m.at(e / cols, e % cols) = FieldElem::one(f2);
    t.rank[mask] = std::uint8_t(rank(m));
    if (rows == cols) {
      t.nilpotent[mask] = is_nilpotent(m) ? 1 : 0;
      t.trailing_zeros[mask] = std::uint8_t(char_poly(m).trailing_zero_count());
    }
  }
  return cache.emplace(std::make_pair(rows, cols), std::move(t)).first->second;
}

bool f2_fast_path_applicable(const MatrixSpace& s, Property prop) {
  if (!(s.field() == Field::fp(2))) return false;
  if (s.ambient_rows() * s.ambient_cols() > 16 || s.dim() > 16) return false;
  return prop != Property::reducible;
}

// Descending search over F_2 using bitmask elements and property tables.
std::optional<std::pair<int, MatrixSpace>> f2_search(const MatrixSpace& s,
                                                     Property prop, int param) {
  const F2Tables& tables = f2_tables(s.ambient_rows(), s.ambient_cols());
  int n = s.ambient_rows();
  auto mask_ok = [&](std::uint32_t mask) {
    switch (prop) {
      case Property::rank_bounded:
        return int(tables.rank[mask]) <= param;
      case Property::nil:
        return tables.nilpotent[mask] != 0;
      case Property::bounded_eigenvalues:
        return int(tables.trailing_zeros[mask]) >= n - param;
      default:
        return false;
    }
  };
  int m = s.dim();
  std::vector<std::uint32_t> basis_masks;
  for (const Matrix& b : s.basis()) {
    std::uint32_t bm = 0;
    for (int e = 0; e < s.ambient_rows() * s.ambient_cols(); ++e)
      if (!b.entries()[e].is_zero()) bm |= std::uint32_t{1} << e;
    basis_masks.push_back(bm);
  }
  for (int d = m; d >= 0; --d) {
    std::optional<MatrixSpace> found;
    enumerate_rref_bases(2, m, d, [&](const std::uint8_t* rows) {
      // Row coordinate masks -> element matrix masks (F_2 addition = XOR).
      std::array<std::uint32_t, 16> row_masks{};
      for (int i = 0; i < d; ++i) {
        std::uint32_t rm = 0;
        for (int j = 0; j < m; ++j)
          if (rows[size_t(i) * m + j]) rm ^= basis_masks[j];
        row_masks[size_t(i)] = rm;
      }
      // Gray-code walk over the 2^d - 1 nonzero combinations.
      std::uint32_t element = 0;
      std::uint32_t code = 0;
      for (std::uint32_t step = 1; step < (std::uint32_t{1} << d); ++step) {
        std::uint32_t gray = step ^ (step >> 1);
        std::uint32_t flipped = gray ^ code;
        code = gray;
        element ^= row_masks[size_t(std::countr_zero(flipped))];
        if (!mask_ok(element)) return true;  // keep searching
      }
      found = subspace_from_rows(s, d, rows);
      return false;
    });
    if (found) return std::make_pair(d, *found);
  }
  return std::nullopt;
}

SubspaceWitness search_max_dim(const MatrixSpace& s, Property prop, int param,
                               WitnessKind kind) {
  if (!s.field().is_prime_field())
    throw CapError("subspace search requires a prime field");
  SubspaceWitness w;
  w.kind = kind;
  w.parameter = param;
  if (f2_fast_path_applicable(s, prop)) {
    auto hit = f2_search(s, prop, param);
    if (hit) {
      w.certified_value = hit->first;
      w.subspace = hit->second;
      return w;
    }
  } else {
    for (int d = s.dim(); d >= 0; --d) {
      std::optional<MatrixSpace> found;
      enumerate_subspaces(s, d, [&](const MatrixSpace& sub) {
        if (subspace_satisfies(sub, prop, param)) {
          found = sub;
          return false;
        }
        return true;
      });
      if (found) {
        w.certified_value = d;
        w.subspace = *found;
        return w;
      }
    }
  }
  // No subspace qualifies at any dimension (possible for reducibility on
  // a 1-dimensional ambient space): certified value 0 with empty witness.
  w.certified_value = 0;
  w.subspace = MatrixSpace::zero(s.field(), s.ambient_rows(), s.ambient_cols());
  return w;
}

}  // namespace

bool SubspaceWitness::verify() const {
  if (subspace.dim() != certified_value) return false;
  switch (kind) {
    case WitnessKind::rank_bounded:
      return subspace_satisfies(subspace, Property::rank_bounded, parameter);
    case WitnessKind::nil:
      // Fresh element-wise recomputation; the exact pencil-power route is
      // sufficient but not necessary over small fields, so it is not used
      // as a rejection criterion here.
      return subspace_satisfies(subspace, Property::nil, 0);
    case WitnessKind::reducible:
      return subspace_satisfies(subspace, Property::reducible, 0);
    case WitnessKind::induced:
      return true;  // induced witnesses are re-verified by their suites
  }
  return false;
}

SubspaceWitness max_bd_rank_dim(const MatrixSpace& s, int r) {
  return search_max_dim(s, Property::rank_bounded, r, WitnessKind::rank_bounded);
}

SubspaceWitness max_nil_dim(const MatrixSpace& s) {
  if (s.ambient_rows() != s.ambient_cols())
    throw ShapeError("max_nil_dim needs a square ambient space");
  return search_max_dim(s, Property::nil, 0, WitnessKind::nil);
}

SubspaceWitness max_rdc_dim(const MatrixSpace& s) {
  if (s.ambient_rows() != s.ambient_cols())
    throw ShapeError("max_rdc_dim needs a square ambient space");
  return search_max_dim(s, Property::reducible, 0, WitnessKind::reducible);
}

SubspaceWitness max_bounded_eigenvalue_dim(const MatrixSpace& s, int k) {
  if (s.ambient_rows() != s.ambient_cols())
    throw ShapeError("max_bounded_eigenvalue_dim needs a square ambient space");
  return search_max_dim(s, Property::bounded_eigenvalues, k, WitnessKind::nil);
}

}  // namespace gms
