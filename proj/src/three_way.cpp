#include "gms/three_way.hpp"

#include <algorithm>

#include "gms/graph_algorithms.hpp"

namespace gms {

ThreeWayArray::ThreeWayArray(Field f, int l, int n, int m)
    : field_(f), l_(l), n_(n), m_(m),
      data_(size_t(l) * n * m, FieldElem::zero(f)) {
  if (l < 0 || n < 0 || m < 0) throw ShapeError("negative cuboid dimension");
}

Matrix ThreeWayArray::horizontal_slice(int i) const {
  Matrix out(field_, n_, m_);
  for (int j = 0; j < n_; ++j)
    for (int k = 0; k < m_; ++k) out.at(j, k) = at(i, j, k);
  return out;
}

Matrix ThreeWayArray::vertical_slice(int j) const {
  Matrix out(field_, l_, m_);
  for (int i = 0; i < l_; ++i)
    for (int k = 0; k < m_; ++k) out.at(i, k) = at(i, j, k);
  return out;
}

Matrix ThreeWayArray::frontal_slice(int k) const {
  Matrix out(field_, l_, n_);
  for (int i = 0; i < l_; ++i)
    for (int j = 0; j < n_; ++j) out.at(i, j) = at(i, j, k);
  return out;
}

bool ThreeWayArray::operator==(const ThreeWayArray& o) const {
  return field_ == o.field_ && l_ == o.l_ && n_ == o.n_ && m_ == o.m_ &&
         data_ == o.data_;
}

ThreeWayArray threeway_from_space(const MatrixSpace& s) {
  ThreeWayArray a(s.field(), s.ambient_rows(), s.ambient_cols(), s.dim());
  for (int k = 0; k < s.dim(); ++k)
    for (int i = 0; i < s.ambient_rows(); ++i)
      for (int j = 0; j < s.ambient_cols(); ++j)
        a.at(i, j, k) = s.basis()[size_t(k)].at(i, j);
  return a;
}

Matrix slice(const ThreeWayArray& a, Axis axis, int index) {
  switch (axis) {
    case Axis::horizontal:
      return a.horizontal_slice(index);
    case Axis::vertical:
      return a.vertical_slice(index);
    case Axis::frontal:
      return a.frontal_slice(index);
  }
  throw ShapeError("bad axis");
}

ThreeWayArray transform(const ThreeWayArray& a, const Matrix& p, const Matrix& q) {
  if (p.cols() != a.dim1() || q.rows() != a.dim2())
    throw ShapeError("transform shape mismatch");
  ThreeWayArray out(a.field(), p.rows(), q.cols(), a.dim3());
  for (int k = 0; k < a.dim3(); ++k) {
    Matrix s = mat_mul(mat_mul(p, a.frontal_slice(k)), q);
    for (int i = 0; i < s.rows(); ++i)
      for (int j = 0; j < s.cols(); ++j) out.at(i, j, k) = s.at(i, j);
  }
  return out;
}

ThreeWayArray recombine(const ThreeWayArray& a, const Matrix& r) {
  if (r.rows() != a.dim3() || r.cols() != a.dim3())
    throw ShapeError("recombine needs an m x m matrix");
  ThreeWayArray out(a.field(), a.dim1(), a.dim2(), a.dim3());
  for (int k = 0; k < a.dim3(); ++k)
    for (int kp = 0; kp < a.dim3(); ++kp) {
      const FieldElem& c = r.at(kp, k);
      if (c.is_zero()) continue;
      for (int i = 0; i < a.dim1(); ++i)
        for (int j = 0; j < a.dim2(); ++j)
          out.at(i, j, k) += c * a.at(i, j, kp);
    }
  return out;
}

namespace {

// C (n x m x n): C(i, j, k) = S_G(k, i, j); frontal slice C_i collects the
// i-th rows of the basis matrices as columns.
ThreeWayArray rowslice_array(const MatrixSpace& s) {
  ThreeWayArray sg = threeway_from_space(s);  // n x n x m
  int n = sg.dim1(), m = sg.dim3();
  ThreeWayArray c(s.field(), n, m, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < n; ++k) c.at(i, j, k) = sg.at(k, i, j);
  return c;
}

Matrix hstack(const Matrix& a, const Matrix& b) {
  Matrix out(a.field(), a.rows(), a.cols() + b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) out.at(i, j) = a.at(i, j);
    for (int j = 0; j < b.cols(); ++j) out.at(i, a.cols() + j) = b.at(i, j);
  }
  return out;
}

bool colspan_contained(const Matrix& inner, const Matrix& outer) {
  return rank(hstack(outer, inner)) == rank(outer);
}

MatrixSpace conjugated_space(const MatrixSpace& s, const Matrix& t) {
  Matrix tinv = inverse(t);
  std::vector<Matrix> gens;
  for (const Matrix& b : s.basis()) gens.push_back(mat_mul(mat_mul(t, b), tinv));
  return MatrixSpace(s.field(), s.ambient_rows(), s.ambient_cols(), gens);
}

MatrixSpace congruented_space(const MatrixSpace& s, const Matrix& t) {
  Matrix tt = transpose(t);
  std::vector<Matrix> gens;
  for (const Matrix& b : s.basis()) gens.push_back(mat_mul(mat_mul(t, b), tt));
  return MatrixSpace(s.field(), s.ambient_rows(), s.ambient_cols(), gens);
}

bool space_contained(const MatrixSpace& inner, const MatrixSpace& outer) {
  for (const Matrix& b : inner.basis())
    if (!outer.contains(b)) return false;
  return true;
}

// Inclusion test of the key lemma for T in the T^t S_G T^{-t}
// normalization; fills slices for reuse.
bool key_inclusions(const MatrixSpace& sg, const MatrixSpace& sh,
                    const Matrix& t, std::vector<Matrix>* c_primes,
                    std::vector<Matrix>* tds) {
  int n = sg.ambient_rows();
  ThreeWayArray c = rowslice_array(sg);
  ThreeWayArray d = rowslice_array(sh);
  ThreeWayArray c_t = recombine(c, t);
  for (int i = 0; i < n; ++i) {
    Matrix c_prime = c_t.frontal_slice(i);
    Matrix td = mat_mul(t, d.frontal_slice(i));
    if (!colspan_contained(c_prime, td)) return false;
    if (c_primes) c_primes->push_back(c_prime);
    if (tds) tds->push_back(td);
  }
  return true;
}

}  // namespace

ConjugacyCheck conjugacy_criterion(const MatrixSpace& sg, const MatrixSpace& sh,
                                   const Matrix& t) {
  if (!sg.is_graphical() || !sh.is_graphical())
    throw std::invalid_argument("conjugacy_criterion expects graphical spaces");
  if (det(t).is_zero()) throw SingularError("conjugacy_criterion: T singular");
  ConjugacyCheck out;
  out.contained = space_contained(conjugated_space(sg, t), sh);
  if (sg.dim() != sh.dim()) return out;

  int n = sg.ambient_rows();
  int m = sg.dim();
  std::vector<Matrix> c_primes, tds;
  if (!key_inclusions(sg, sh, t, &c_primes, &tds)) return out;

  // Build R blockwise: rows with indices in S_i (the nonzero columns of
  // T D_i, pairwise disjoint across i) solve [u_j]_{j in S_i} R = C_i'.
  const Field& f = sg.field();
  Matrix r(f, m, m);
  for (int i = 0; i < n; ++i) {
    std::vector<int> s_i;
    for (int k = 0; k < m; ++k) {
      bool nonzero = false;
      for (int row = 0; row < n; ++row)
        nonzero = nonzero || !tds[size_t(i)].at(row, k).is_zero();
      if (nonzero) s_i.push_back(k);
    }
    if (s_i.empty()) continue;
    Matrix u(f, n, int(s_i.size()));
    for (int col = 0; col < int(s_i.size()); ++col)
      for (int row = 0; row < n; ++row)
        u.at(row, col) = tds[size_t(i)].at(row, s_i[size_t(col)]);
    // Solve U x = c for every column c of C_i'; U has full column rank.
    RrefResult rr = rref(hstack(u, c_primes[size_t(i)]));
    for (int k = 0; k < m; ++k)
      for (int col = 0; col < int(s_i.size()); ++col)
        r.at(s_i[size_t(col)], k) = rr.reduced.at(col, int(s_i.size()) + k);
  }
  if (det(r).is_zero()) return out;

  // Certify: T^t S_G T^{-t} = S_H.
  MatrixSpace image = conjugated_space(sg, transpose(t));
  if (image.same_space(sh)) {
    out.equal = true;
    out.recombination = r;
  }
  return out;
}

bool conjugate_subspace_contained(const MatrixSpace& sg, const MatrixSpace& sh,
                                  const Matrix& t) {
  return space_contained(conjugated_space(sg, t), sh);
}

bool congruent_subspace_contained(const MatrixSpace& sg, const MatrixSpace& sh,
                                  const Matrix& t) {
  return space_contained(congruented_space(sg, t), sh);
}

std::vector<int> conjugacy_to_permutation(const MatrixSpace& sg,
                                          const MatrixSpace& sh,
                                          const Matrix& t_api) {
  if (!sg.is_graphical() || !sh.is_graphical())
    throw std::invalid_argument("conjugacy_to_permutation expects graphical spaces");
  int n = sg.ambient_rows();
  // Convert from the T S_G T^{-1} = S_H interface normalization to the
  // column-replacement normalization T^t S_G T^{-t} = S_H.
  Matrix work = transpose(t_api);
  if (!conjugated_space(sg, transpose(work)).same_space(sh))
    throw std::invalid_argument(
        "conjugacy_to_permutation: T does not conjugate S_G onto S_H");

  std::vector<bool> row_used(size_t(n), false);
  for (int col = 0; col < n; ++col) {
    bool replaced = false;
    for (int i = 0; i < n && !replaced; ++i) {
      if (row_used[size_t(i)] || work.at(i, col).is_zero()) continue;
      Matrix candidate = work;
      for (int row = 0; row < n; ++row)
        candidate.at(row, col) = FieldElem::from_int(sg.field(), row == i ? 1 : 0);
      if (det(candidate).is_zero()) continue;
      if (!key_inclusions(sg, sh, candidate, nullptr, nullptr)) continue;
      if (!conjugated_space(sg, transpose(candidate)).same_space(sh)) continue;
      work = candidate;
      row_used[size_t(i)] = true;
      replaced = true;
    }
    if (!replaced)
      throw std::logic_error(
          "conjugacy_to_permutation: no admissible column replacement "
          "(violated precondition)");
  }
  // work is now a permutation matrix P with P^{-1} S_G P = S_H; the
  // encoded vertex map sigma satisfies sigma(row) = col for P(row,col)=1.
  std::vector<int> sigma(size_t(n), -1);
  for (int col = 0; col < n; ++col)
    for (int row = 0; row < n; ++row)
      if (!work.at(row, col).is_zero()) sigma[size_t(row)] = col;
  Digraph g = supporting_digraph(sg), h = supporting_digraph(sh);
  if (!permutation_is_isomorphism(g, h, sigma))
    throw std::logic_error(
        "conjugacy_to_permutation: extracted permutation failed the "
        "arc-exact isomorphism check");
  return sigma;
}

std::vector<int> congruence_to_isomorphism(const MatrixSpace& sg,
                                           const MatrixSpace& sh,
                                           const Matrix& t) {
  if (!sg.is_graphical() || !sh.is_graphical())
    throw std::invalid_argument("congruence_to_isomorphism expects graphical spaces");
  if (det(t).is_zero()) throw SingularError("congruence_to_isomorphism: T singular");
  int n = sg.ambient_rows();
  MatrixSpace image = congruented_space(sg, t);
  if (!space_contained(image, sh))
    throw std::invalid_argument(
        "congruence_to_isomorphism: T S_G T^t is not contained in S_H");
  bool equality = image.same_space(sh);

  // sigma with t_{sigma(i), i} != 0 exists because det(T) != 0: perfect
  // matching on the nonzero pattern, columns to rows.
  std::vector<Arc> edges;
  for (int i = 0; i < n; ++i)
    for (int row = 0; row < n; ++row)
      if (!t.at(row, i).is_zero()) edges.push_back({i, row});
  MatchingResult match = max_matching(BipartiteGraph(n, n, edges));
  if (match.size != n)
    throw std::logic_error("congruence_to_isomorphism: pattern matching failed");
  std::vector<int> sigma(size_t(n), -1);
  for (auto [col, row] : match.matching) sigma[size_t(col)] = row;

  Digraph g = supporting_digraph(sg), h = supporting_digraph(sh);
  if (equality) {
    if (!permutation_is_isomorphism(g, h, sigma))
      throw std::logic_error(
          "congruence_to_isomorphism: extracted permutation failed the "
          "arc-exact isomorphism check");
  } else if (!permutation_is_embedding(g, h, sigma)) {
    throw std::logic_error(
        "congruence_to_isomorphism: extracted permutation failed the "
        "subgraph-embedding check");
  }
  return sigma;
}

}  // namespace gms
