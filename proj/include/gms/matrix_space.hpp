#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "gms/graph.hpp"
#include "gms/matrix.hpp"

namespace gms {

/// A linear space of ambient_rows x ambient_cols matrices, stored as a
/// reduced (vectorized-RREF) basis; immutable after construction.
class MatrixSpace {
 public:
  MatrixSpace() : field_(Field::q()) {}
  MatrixSpace(Field f, int rows, int cols, const std::vector<Matrix>& spanning);

  static MatrixSpace zero(const Field& f, int rows, int cols);
  static MatrixSpace full(const Field& f, int n);

  const Field& field() const { return field_; }
  int ambient_rows() const { return rows_; }
  int ambient_cols() const { return cols_; }
  int dim() const { return int(basis_.size()); }
  const std::vector<Matrix>& basis() const { return basis_; }

  bool contains(const Matrix& m) const;
  bool same_space(const MatrixSpace& o) const;
  /// Every basis matrix is elementary (so the space is S_G for its
  /// supporting graph).
  bool is_graphical() const;

  /// Coordinates of m in the reduced basis; nullopt if not a member.
  std::optional<std::vector<FieldElem>> coordinates(const Matrix& m) const;
  Matrix from_coordinates(const std::vector<FieldElem>& coords) const;

 private:
  Field field_;
  int rows_ = 0, cols_ = 0;
  std::vector<Matrix> basis_;
};

/// Span of the elementary matrices of a graph's arcs/edges, basis in
/// lexicographic edge order.
MatrixSpace graphical_space(const Digraph& g, const Field& f);
MatrixSpace graphical_space(const BipartiteGraph& g, const Field& f);

/// Arc (i,j) present iff some basis matrix has a nonzero (i,j) entry.
Digraph supporting_digraph(const MatrixSpace& s);
BipartiteGraph supporting_bipartite(const MatrixSpace& s);

/// Visits all p^dim elements exactly once (F_p only, p^dim <= 1e7).
/// Returning false from the visitor stops the enumeration.
void enumerate_elements(const MatrixSpace& s,
                        const std::function<bool(const Matrix&)>& visit);
std::int64_t element_count(const MatrixSpace& s);

/// Visits every d-dimensional subspace exactly once, as canonical RREF
/// coordinate bases over s.basis(); F_p with Gaussian binomial <= 1e7.
void enumerate_subspaces(const MatrixSpace& s, int d,
                         const std::function<bool(const MatrixSpace&)>& visit);
std::int64_t subspace_count(const MatrixSpace& s, int d);

struct ExactCount {
  std::int64_t value = 0;
  bool exact = true;  // false on randomized fallback paths
};

/// Maximum rank over the elements. Exhaustive over F_p when feasible; for
/// graphical spaces otherwise, the matching number of the support (the
/// basic rank correspondence, asserted in exhaustive mode).
ExactCount max_rank(const MatrixSpace& s);

/// Infinity encoded as nullopt.
struct IndexResult {
  std::optional<int> value;  // nullopt = infinity
  bool exact = true;
};

/// Max over elements of individual nilpotency index; infinity if some
/// element is not nilpotent. Exhaustive over F_p, randomized otherwise.
IndexResult nil_index(const MatrixSpace& s);

/// Product-chain nilpotent index: min k with W_k = 0 for
/// W_1 = S, W_{k+1} = span{B*C}; infinity once W_n != 0.
std::optional<int> nilpotent_index(const MatrixSpace& s);

/// Min over elements of the multiplicity of the eigenvalue 0 (trailing
/// zero coefficients of the characteristic polynomial).
int zero_eigenvalue_min(const MatrixSpace& s);

/// Row-space basis of a subspace of F^n, kept in RREF.
using VectorSpace = Matrix;  // rows = basis vectors

/// Smallest invariant subspace containing v under the right action of s.
VectorSpace invariant_closure(const MatrixSpace& s,
                              const std::vector<FieldElem>& v);

struct IrreducibilityResult {
  bool irreducible = false;
  std::optional<VectorSpace> witness;  // proper invariant subspace
};

/// Complete decision over F_p by projective-point closures; over machine
/// complex by the generated-algebra dimension criterion.
IrreducibilityResult is_irreducible(const MatrixSpace& s);

/// Length of a maximal chain of invariant subspaces (Jordan-Holder).
int composition_series_length(const MatrixSpace& s);

/// S[L, R] = {T_L B T_R^t}; T_L, T_R must have full row rank.
MatrixSpace induced_subspace_lr(const MatrixSpace& s, const Matrix& t_left,
                                const Matrix& t_right);

/// S[U] = {T_U B T_U^*}; rows of T_U orthonormal. Exact fields accept
/// only coordinate subspaces (rows are distinct standard basis vectors);
/// machine complex orthonormalizes by modified Gram-Schmidt.
MatrixSpace induced_subspace_u(const MatrixSpace& s, const Matrix& t_u);

/// Coordinate helper: T_U with rows {e_i : i in indices}.
Matrix coordinate_rows(const Field& f, int n, const std::vector<int>& indices);

/// Smallest index j (0-based) such that the only element supported
/// entirely in row j is zero; throws if none exists (non-nil input).
int find_adapted_vector(const MatrixSpace& s);

/// Constructive acyclic spanning subgraph of the supporting graph with at
/// least dim(s) arcs, for nil s (recursive adapted-vertex construction).
Digraph nil_to_acyclic_subgraph(const MatrixSpace& s);

struct MeshulamWitness {
  BipartiteGraph pattern;
  int rho = 0;
  Matrix witness;  // element of the span with rank >= rho
};

/// Lexicographic-pivot pattern of a matrix list plus a certified
/// high-rank element of the span.
MeshulamWitness meshulam_witness(const std::vector<Matrix>& mats,
                                 std::uint64_t seed = 0, int budget = 10000);

enum class WitnessKind { rank_bounded, nil, reducible, induced };

struct SubspaceWitness {
  WitnessKind kind = WitnessKind::nil;
  MatrixSpace subspace;
  int certified_value = 0;  // the dimension found
  int parameter = 0;        // r for rank-bounded witnesses

  bool verify() const;  // re-checks the property from the stored basis
};

/// Largest d with a d-dimensional subspace of all-rank <= r / nil /
/// reducible, by descending exhaustive subspace search over F_p.
SubspaceWitness max_bd_rank_dim(const MatrixSpace& s, int r);
SubspaceWitness max_nil_dim(const MatrixSpace& s);
SubspaceWitness max_rdc_dim(const MatrixSpace& s);

/// Largest dimension of a subspace in which every element has at most k
/// nonzero eigenvalues (same search engine; used by the conjecture
/// explorer).
SubspaceWitness max_bounded_eigenvalue_dim(const MatrixSpace& s, int k);

}  // namespace gms
