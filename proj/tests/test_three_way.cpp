#include <doctest.h>

#include <numeric>

#include "gms/graph_algorithms.hpp"
#include "gms/pencil.hpp"
#include "gms/three_way.hpp"
#include "gms/verify.hpp"

using namespace gms;

namespace {

Field f2 = Field::fp(2);

Matrix permutation_matrix(const Field& f, const std::vector<int>& sigma) {
  Matrix p(f, int(sigma.size()), int(sigma.size()));
  for (int i = 0; i < int(sigma.size()); ++i)
    p.at(i, sigma[size_t(i)]) = FieldElem::one(f);
  return p;
}

Digraph relabel(const Digraph& g, const std::vector<int>& sigma) {
  std::vector<Arc> arcs;
  for (auto [i, j] : g.arcs()) arcs.push_back({sigma[size_t(i)], sigma[size_t(j)]});
  return Digraph(g.n(), arcs);
}

}  // namespace

TEST_CASE("slice conventions of the cuboid") {
  Digraph g(2, {{0, 1}, {1, 0}});
  MatrixSpace s = graphical_space(g, f2);
  ThreeWayArray a = threeway_from_space(s);
  CHECK(a.dim1() == 2);
  CHECK(a.dim2() == 2);
  CHECK(a.dim3() == 2);
  CHECK(a.frontal_slice(0) == s.basis()[0]);
  CHECK(a.frontal_slice(1) == s.basis()[1]);
  // Horizontal slice i records the i-th rows of the basis matrices.
  Matrix h0 = a.horizontal_slice(0);
  CHECK(h0.at(0, 0) == s.basis()[0].at(0, 0));
  CHECK(h0.at(1, 1) == s.basis()[1].at(0, 1));
}

TEST_CASE("identity transform and recombination act trivially") {
  Digraph g(3, {{0, 1}, {1, 2}, {2, 0}});
  ThreeWayArray a = threeway_from_space(graphical_space(g, f2));
  CHECK(transform(a, Matrix::identity(f2, 3), Matrix::identity(f2, 3)) == a);
  CHECK(recombine(a, Matrix::identity(f2, 3)) == a);
}

TEST_CASE("conjugacy criterion accepts the identity and permutations") {
  Digraph g(3, {{0, 1}, {1, 2}, {2, 0}});
  MatrixSpace s = graphical_space(g, f2);
  ConjugacyCheck self = conjugacy_criterion(s, s, Matrix::identity(f2, 3));
  CHECK(self.equal);
  CHECK(self.contained);
  REQUIRE(self.recombination.has_value());
  CHECK(!det(*self.recombination).is_zero());

  // A permutation conjugates elementary matrices onto elementary matrices.
  std::vector<int> sigma = {1, 2, 0};
  Digraph h = relabel(g, sigma);
  MatrixSpace sh = graphical_space(h, f2);
  Matrix p = permutation_matrix(f2, sigma);
  // In the criterion normalization T^t S_G T^{-t} = S_H, pass T = P^{-1}^t.
  Matrix t = inverse(transpose(p));
  ConjugacyCheck perm = conjugacy_criterion(s, sh, t);
  CHECK(perm.equal);
}

TEST_CASE("the stated 3x3 conjugator lands the two-loop space inside the big space") {
  Field q = Field::q();
  Digraph g(3, {{0, 0}, {1, 1}});
  std::vector<Arc> h_arcs;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (!(i == j && (i == 0 || i == 2))) h_arcs.push_back({i, j});
  Digraph h(3, h_arcs);
  MatrixSpace sg = graphical_space(g, q);
  MatrixSpace sh = graphical_space(h, q);
  Matrix t = Matrix::from_ints(q, 3, 3, {1, 0, 1, 1, 1, 1, 0, 1, 1});
  CHECK(conjugate_subspace_contained(sg, sh, t));
  // Proper containment, not equality: dimensions differ.
  CHECK(sg.dim() < sh.dim());
  ConjugacyCheck check = conjugacy_criterion(sg, sh, t);
  CHECK(check.contained);
  CHECK(!check.equal);
}

TEST_CASE("conjugacy extraction on identity and permutation inputs") {
  Digraph g(3, {{0, 1}, {1, 2}});
  MatrixSpace s = graphical_space(g, f2);
  CHECK(conjugacy_to_permutation(s, s, Matrix::identity(f2, 3)) ==
        std::vector<int>{0, 1, 2});

  std::vector<int> sigma = {2, 0, 1};
  Digraph h = relabel(g, sigma);
  MatrixSpace sh = graphical_space(h, f2);
  // P^{-1} S_G P = S_H for P(i, sigma(i)) = 1, so the interface T is P^t.
  Matrix t = transpose(permutation_matrix(f2, sigma));
  std::vector<int> extracted = conjugacy_to_permutation(s, sh, t);
  CHECK(permutation_is_isomorphism(g, h, extracted));
}

TEST_CASE("conjugacy extraction across every GL(2, F_2) conjugator") {
  // For every pair of 2-vertex digraphs and every invertible T that
  // conjugates one space onto the other, the column-replacement loop must
  // produce an arc-exact isomorphism.
  std::vector<Matrix> gl;
  enumerate_gl(f2, 2, [&](const Matrix& t) {
    gl.push_back(t);
    return true;
  });
  CHECK(gl.size() == 6);
  int conjugator_count = 0;
  for (std::uint64_t gm = 0; gm < 16; ++gm)
    for (std::uint64_t hm = 0; hm < 16; ++hm) {
      Digraph g = Digraph::from_arc_mask(2, gm);
      Digraph h = Digraph::from_arc_mask(2, hm);
      MatrixSpace sg = graphical_space(g, f2);
      MatrixSpace sh = graphical_space(h, f2);
      for (const Matrix& t : gl) {
        std::vector<Matrix> gens;
        for (const Matrix& b : sg.basis())
          gens.push_back(mat_mul(mat_mul(t, b), inverse(t)));
        if (!MatrixSpace(f2, 2, 2, gens).same_space(sh)) continue;
        ++conjugator_count;
        std::vector<int> perm = conjugacy_to_permutation(sg, sh, t);
        CHECK(permutation_is_isomorphism(g, h, perm));
      }
    }
  CHECK(conjugator_count > 16);  // plenty of non-permutation conjugators
}

TEST_CASE("congruence extraction on diagonal and permutation inputs") {
  Digraph g(3, {{0, 1}, {1, 2}, {2, 2}});
  MatrixSpace s = graphical_space(g, f2);
  CHECK(congruence_to_isomorphism(s, s, Matrix::identity(f2, 3)) ==
        std::vector<int>{0, 1, 2});

  Field f3 = Field::fp(3);
  MatrixSpace s3 = graphical_space(g, f3);
  Matrix d(f3, 3, 3);
  d.at(0, 0) = FieldElem::from_int(f3, 2);
  d.at(1, 1) = FieldElem::from_int(f3, 1);
  d.at(2, 2) = FieldElem::from_int(f3, 2);
  CHECK(congruence_to_isomorphism(s3, s3, d) == std::vector<int>{0, 1, 2});

  std::vector<int> sigma = {1, 0, 2};
  Digraph h = relabel(g, sigma);
  MatrixSpace sh = graphical_space(h, f2);
  Matrix p = transpose(permutation_matrix(f2, sigma));
  std::vector<int> perm = congruence_to_isomorphism(s, sh, p);
  CHECK(permutation_is_isomorphism(g, h, perm));
}

TEST_CASE("congruence extraction rejects non-containment") {
  Digraph g(2, {{0, 0}});
  Digraph h(2, {{0, 1}});
  MatrixSpace sg = graphical_space(g, f2);
  MatrixSpace sh = graphical_space(h, f2);
  CHECK_THROWS_AS(congruence_to_isomorphism(sg, sh, Matrix::identity(f2, 2)),
                  std::invalid_argument);
}

TEST_CASE("containment-only congruators yield subgraph embeddings") {
  // S_G congruent into a strictly larger S_H: extraction verifies an
  // embedding rather than an isomorphism.
  Digraph g(3, {{0, 1}});
  Digraph h(3, {{0, 1}, {1, 2}, {2, 0}});
  MatrixSpace sg = graphical_space(g, f2);
  MatrixSpace sh = graphical_space(h, f2);
  std::vector<int> perm = congruence_to_isomorphism(sg, sh, Matrix::identity(f2, 3));
  CHECK(permutation_is_embedding(g, h, perm));
}

TEST_CASE("random monomial conjugators and congruators extract isomorphisms") {
  Field f5 = Field::fp(5);
  Rng rng(73);
  for (int trial = 0; trial < 30; ++trial) {
    int n = 2 + int(rng.below(4));
    std::vector<Arc> arcs;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (rng.below(100) < 40) arcs.push_back({i, j});
    Digraph g(n, arcs);
    std::vector<int> sigma(static_cast<size_t>(n));
    std::iota(sigma.begin(), sigma.end(), 0);
    for (int i = n - 1; i > 0; --i)
      std::swap(sigma[size_t(i)], sigma[rng.below(std::uint64_t(i + 1))]);
    Digraph h = relabel(g, sigma);
    MatrixSpace sg = graphical_space(g, f5);
    MatrixSpace sh = graphical_space(h, f5);
    Matrix p = permutation_matrix(f5, sigma);
    Matrix d1(f5, n, n), d2(f5, n, n);
    for (int i = 0; i < n; ++i) {
      d1.at(i, i) = FieldElem::from_int(f5, 1 + std::int64_t(rng.below(4)));
      d2.at(i, i) = FieldElem::from_int(f5, 1 + std::int64_t(rng.below(4)));
    }
    Matrix t = mat_mul(mat_mul(d2, transpose(p)), d1);
    std::vector<int> conj = conjugacy_to_permutation(sg, sh, t);
    CHECK(permutation_is_isomorphism(g, h, conj));
    std::vector<int> cong = congruence_to_isomorphism(sg, sh, t);
    CHECK(permutation_is_isomorphism(g, h, cong));
  }
}
