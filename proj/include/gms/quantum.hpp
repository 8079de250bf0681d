#pragma once

#include <complex>

#include "gms/graph.hpp"
#include "gms/matrix_space.hpp"

namespace gms {

inline constexpr double kQuantumTolerance = 1e-9;

/// Completely positive map given by its Choi-Kraus operators.
struct KrausMap {
  std::vector<Matrix> kraus;  // machine complex, each n' x n
  bool trace_preserving = false;  // sum E_i^* E_i = I within tolerance
  bool unital = false;            // sum E_i E_i^* = I within tolerance

  int in_dim() const { return kraus.empty() ? 0 : kraus[0].cols(); }
  int out_dim() const { return kraus.empty() ? 0 : kraus[0].rows(); }
};

KrausMap make_kraus_map(std::vector<Matrix> operators);

/// Column-stochastic nonnegative matrix; columns sum to 1 within 1e-12.
struct TransitionMatrix {
  std::vector<std::vector<double>> entries;  // entries[i][j]

  int n() const { return int(entries.size()); }
  /// Underlying digraph: arc (i, j) iff entries[j][i] != 0.
  Digraph underlying_digraph() const;
};

TransitionMatrix make_transition_matrix(std::vector<std::vector<double>> entries);

/// Channel X -> sum p_{i,j} E_{i,j} X E_{i,j}^*; Kraus operators
/// sqrt(p_{i,j}) E_{i,j} over the nonzero entries. Trace preservation and
/// the support identity S_Phi = S_{G}^* are asserted.
KrausMap channel_from_transition(const TransitionMatrix& p);

enum class Tristate { no, yes, indeterminate };

/// Irreducibility of the Kraus span over C by the generated-algebra
/// dimension criterion (full dimension n^2 iff irreducible), with
/// numerical-rank tolerance; near-threshold rank gaps are reported as
/// indeterminate rather than guessed.
Tristate channel_irreducible(const KrausMap& k, double tolerance = kQuantumTolerance);

/// Same criterion on a bare machine-complex matrix space.
Tristate complex_space_irreducible(const std::vector<Matrix>& basis,
                                   double tolerance = kQuantumTolerance);

/// Operator system of an undirected graph: span of E_{i,j} over edges
/// (both orientations) and all diagonal E_{i,i}; equals the graphical
/// space of the looped symmetrization. Exact over Q(i) by default.
MatrixSpace operator_system(const UndirectedGraph& g,
                            const Field& f = Field::qi());

/// Connectivity of a self-adjoint system containing I: no nontrivial
/// orthogonal projection P with P F (I - P) = 0; decided through
/// irreducibility (generated-algebra dimension), exactly for exact
/// fields.
bool operator_system_connected(const MatrixSpace& f);

/// Exact dimension of the multiplicative span of all products of basis
/// elements (length >= 1), stabilized; exact fields only.
int generated_algebra_dim(const MatrixSpace& s);

struct SpectralPair {
  double graph_value = 0.0;
  double channel_value = 0.0;
};

/// Second-largest eigenvalue modulus of A/d versus the same for the
/// n^2 x n^2 superoperator of the graph channel; equality within 1e-9 is
/// asserted. Requires a d-regular graph, d >= 1, n <= 16.
SpectralPair spectral_expansion_pair(const UndirectedGraph& g);

/// Second largest |eigenvalue| of a list sorted by modulus.
double second_largest_modulus(std::vector<std::complex<double>> eigs);

}  // namespace gms
