#pragma once

#include "gms/matrix_space.hpp"

namespace gms {

/// l x n x m cuboid of field elements. Horizontal slices cut along the
/// first axis, vertical along the second, frontal along the third.
class ThreeWayArray {
 public:
  ThreeWayArray(Field f, int l, int n, int m);

  const Field& field() const { return field_; }
  int dim1() const { return l_; }
  int dim2() const { return n_; }
  int dim3() const { return m_; }

  const FieldElem& at(int i, int j, int k) const {
    return data_[(size_t(i) * n_ + j) * m_ + k];
  }
  FieldElem& at(int i, int j, int k) {
    return data_[(size_t(i) * n_ + j) * m_ + k];
  }

  Matrix horizontal_slice(int i) const;  // n x m
  Matrix vertical_slice(int j) const;    // l x m
  Matrix frontal_slice(int k) const;     // l x n

  bool operator==(const ThreeWayArray& o) const;

 private:
  Field field_;
  int l_, n_, m_;
  std::vector<FieldElem> data_;
};

/// Frontal slices become the basis matrices, in order.
ThreeWayArray threeway_from_space(const MatrixSpace& s);

enum class Axis { horizontal = 1, vertical = 2, frontal = 3 };
Matrix slice(const ThreeWayArray& a, Axis axis, int index);

/// Applies P * A_k * Q to every frontal slice.
ThreeWayArray transform(const ThreeWayArray& a, const Matrix& p, const Matrix& q);

/// A^R: frontal slices recombined, k-th slice = sum_k' R(k', k) A_{k'}.
ThreeWayArray recombine(const ThreeWayArray& a, const Matrix& r);

struct ConjugacyCheck {
  bool equal = false;      // T^t S_G T^{-t} = S_H certified via R
  bool contained = false;  // T S_G T^{-1} <= S_H (plain normalization)
  std::optional<Matrix> recombination;  // R, when equal
};

/// Column-span criterion for conjugacy of graphical spaces (equal dims):
/// checks colspan(C_i') <= colspan(T D_i) for every i, reconstructs the
/// basis recombination R blockwise, and re-verifies the certified
/// equality. Also reports plain-normalization containment.
ConjugacyCheck conjugacy_criterion(const MatrixSpace& sg, const MatrixSpace& sh,
                                   const Matrix& t);

/// Given invertible T with T S_G T^{-1} = S_H, runs the column-replacement
/// loop (Laplace-guided standard-vector substitutions, re-validating the
/// span criterion at every step) down to a permutation matrix, returning
/// the vertex permutation; verified arc-exact as a graph isomorphism.
std::vector<int> conjugacy_to_permutation(const MatrixSpace& sg,
                                          const MatrixSpace& sh,
                                          const Matrix& t);

/// Given invertible T with T S_G T^t <= S_H, extracts a permutation with
/// t_{sigma(i), i} != 0 via perfect matching on T's nonzero pattern;
/// verified as an isomorphism under equality, as an embedding otherwise.
std::vector<int> congruence_to_isomorphism(const MatrixSpace& sg,
                                           const MatrixSpace& sh,
                                           const Matrix& t);

/// Containment helpers in the plain normalizations.
bool conjugate_subspace_contained(const MatrixSpace& sg, const MatrixSpace& sh,
                                  const Matrix& t);  // T S_G T^{-1} <= S_H
bool congruent_subspace_contained(const MatrixSpace& sg, const MatrixSpace& sh,
                                  const Matrix& t);  // T S_G T^t <= S_H

}  // namespace gms
