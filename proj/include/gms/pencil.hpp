#pragma once

#include <cstdint>
#include <optional>

#include "gms/matrix.hpp"

namespace gms {

/// Deterministic splittable PRNG (splitmix64); all randomized tests are
/// seeded and reproducible across platforms.
struct Rng {
  std::uint64_t state;

  explicit Rng(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  std::uint64_t below(std::uint64_t n) { return next() % n; }
  double unit() { return double(next() >> 11) * 0x1.0p-53; }
  Rng split() { return Rng(next() ^ 0xd1b54a32d192ed03ULL); }
};

/// Affine matrix pencil B(x) = constant + sum x_i * coeffs[i] over an
/// exact field.
class SymbolicMatrix {
 public:
  SymbolicMatrix(Field f, int n, int m);
  /// Homogeneous pencil with the given coefficient matrices.
  SymbolicMatrix(Field f, const std::vector<Matrix>& coeffs);
  SymbolicMatrix(Matrix constant, std::vector<Matrix> coeffs);

  const Field& field() const { return field_; }
  int n() const { return constant_.rows(); }
  int cols() const { return constant_.cols(); }
  int num_vars() const { return int(coeffs_.size()); }
  const Matrix& constant() const { return constant_; }
  const std::vector<Matrix>& coeffs() const { return coeffs_; }
  bool homogeneous() const { return constant_.is_zero(); }

 private:
  Field field_;
  Matrix constant_;
  std::vector<Matrix> coeffs_;
};

Matrix evaluate(const SymbolicMatrix& b, const std::vector<FieldElem>& point);

/// Draws one evaluation point from the default sample set (all of F_p, or
/// integers [-range, range] over Q), recording the sample-set size.
struct SamplePlan {
  std::int64_t sample_set_size = 0;
  std::vector<FieldElem> draw(Rng& rng, const Field& f, int m) const;
};
SamplePlan make_sample_plan(const Field& f, int degree,
                            std::int64_t field_size_hint);

/// Lifts an F_p pencil to F_q (q >= hint) by lifting entries through
/// their canonical representatives; identity for Q and large-enough F_p.
/// Used when the pencil's own field is too small for the requested
/// Schwartz-Zippel bound (meaningful for 0/1 graphical pencils).
SymbolicMatrix with_field_for_testing(const SymbolicMatrix& b,
                                      std::int64_t field_size_hint);

struct SditOutcome {
  bool nonzero = false;
  std::vector<FieldElem> witness_point;  // when nonzero
  double error_bound = 0.0;              // when probably zero
  std::uint64_t seed = 0;
  int trials = 0;
};

/// Randomized symbolic-determinant identity test: Nonzero is certified by
/// one evaluation; ProbablyZero carries the Schwartz-Zippel bound
/// (deg/|S|)^trials.
SditOutcome sdit_random(const SymbolicMatrix& b, int trials,
                        std::int64_t field_size_hint, std::uint64_t seed);

struct SntOutcome {
  bool not_nil = false;
  std::vector<FieldElem> witness_point;
  double error_bound = 0.0;
  std::uint64_t seed = 0;
  int trials = 0;
  std::vector<std::vector<FieldElem>> sampled_points;
};

/// Randomized nil test of the homogeneous pencil's span: evaluates
/// B(point)^n. Throws on affine (non-homogeneous) pencils.
SntOutcome snt_random(const SymbolicMatrix& b, int trials,
                      std::int64_t field_size_hint, std::uint64_t seed);

struct NilIndexOutcome {
  bool exceeded = false;  // certified: B(point)^k != 0
  std::vector<FieldElem> witness_point;
  double error_bound = 0.0;
  std::uint64_t seed = 0;
  int trials = 0;
};

/// Tests whether the pencil's nilpotency index is at most k: No(witness)
/// certified by a nonzero entry of B(point)^k; ProbablyYes with the
/// degree-k Schwartz-Zippel bound.
NilIndexOutcome nilindex_at_most(const SymbolicMatrix& b, int k, int trials,
                                 std::int64_t field_size_hint,
                                 std::uint64_t seed);

/// Layered algebraic branching program for the determinant via the
/// division-free clow-sequence dynamic program: returns matrices
/// C_1..C_n of common size t = n(n+1)/2 + 1 with affine entries such that
/// the (1,1) entry of C_1 * ... * C_n equals det(b) identically.
std::vector<SymbolicMatrix> det_abp(const SymbolicMatrix& b);

struct SditToNilIndex {
  SymbolicMatrix gadget;  // block-superdiagonal, always nilpotent
  int threshold = 0;      // nilindex(gadget) <= threshold iff det(b) == 0
};

/// Reduction from determinant identity testing to nilpotency-index
/// bounding via the ABP block matrix.
SditToNilIndex sdit_to_nilindex(const SymbolicMatrix& b);

/// Exact oracle: expands B^k over sparse multivariate monomials and tests
/// for the zero matrix. Budgeted by total monomial count.
bool pencil_power_is_zero(const SymbolicMatrix& b, int k,
                          std::int64_t monomial_budget = 1'000'000);

}  // namespace gms
