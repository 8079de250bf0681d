#include <doctest.h>

#include <set>

#include "gms/graph_algorithms.hpp"
#include "gms/matrix_space.hpp"
#include "gms/pencil.hpp"

using namespace gms;

namespace {

Field f2 = Field::fp(2);
Field f3 = Field::fp(3);

Digraph complete_looped(int n) {
  std::vector<Arc> arcs;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) arcs.push_back({i, j});
  return Digraph(n, arcs);
}

BipartiteGraph complete_bipartite(int m, int n) {
  std::vector<Arc> edges;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) edges.push_back({i, j});
  return BipartiteGraph(m, n, edges);
}

std::vector<FieldElem> unit_vector(const Field& f, int n, int i) {
  std::vector<FieldElem> v(static_cast<size_t>(n), FieldElem::zero(f));
  v[size_t(i)] = FieldElem::one(f);
  return v;
}

}  // namespace

TEST_CASE("graphical space basis sits in lexicographic edge order") {
  Digraph g(2, {{0, 1}});
  MatrixSpace s = graphical_space(g, f2);
  CHECK(s.dim() == 1);
  CHECK(s.basis()[0] == Matrix::elementary(f2, 2, 2, 0, 1));

  MatrixSpace full = graphical_space(complete_looped(2), f2);
  CHECK(full.dim() == 4);
  CHECK(full.same_space(MatrixSpace::full(f2, 2)));
  CHECK(full.basis()[0] == Matrix::elementary(f2, 2, 2, 0, 0));
  CHECK(full.basis()[3] == Matrix::elementary(f2, 2, 2, 1, 1));

  CHECK(graphical_space(Digraph(3, {}), f2).dim() == 0);
}

TEST_CASE("supporting graph recovers the pattern") {
  CHECK(supporting_digraph(graphical_space(Digraph(2, {{0, 1}}), f2)) ==
        Digraph(2, {{0, 1}}));
  Matrix m = Matrix::from_ints(Field::q(), 2, 2, {1, 1, -1, -1});
  MatrixSpace s(Field::q(), 2, 2, {m});
  CHECK(supporting_digraph(s) == complete_looped(2));
  CHECK(supporting_digraph(MatrixSpace::zero(f2, 2, 2)) == Digraph(2, {}));
}

TEST_CASE("element enumeration counts") {
  int count = 0;
  enumerate_elements(MatrixSpace::zero(f2, 2, 2), [&](const Matrix& m) {
    CHECK(m.is_zero());
    ++count;
    return true;
  });
  CHECK(count == 1);

  count = 0;
  enumerate_elements(graphical_space(Digraph(2, {{0, 1}, {1, 0}}), f2),
                     [&](const Matrix&) {
                       ++count;
                       return true;
                     });
  CHECK(count == 4);

  std::set<std::string> seen;
  enumerate_elements(graphical_space(Digraph(2, {{0, 0}, {0, 1}, {1, 0}}), f3),
                     [&](const Matrix& m) {
                       seen.insert(m.to_string());
                       return true;
                     });
  CHECK(seen.size() == 27);
}

TEST_CASE("subspace enumeration counts match Gaussian binomials") {
  MatrixSpace s = graphical_space(complete_bipartite(2, 2), f2);
  CHECK(subspace_count(s, 4) == 1);
  int count = 0;
  enumerate_subspaces(s, 4, [&](const MatrixSpace& sub) {
    CHECK(sub.same_space(s));
    ++count;
    return true;
  });
  CHECK(count == 1);

  CHECK(subspace_count(s, 1) == 15);
  CHECK(subspace_count(s, 2) == 35);
  count = 0;
  std::set<std::string> distinct;
  enumerate_subspaces(s, 2, [&](const MatrixSpace& sub) {
    CHECK(sub.dim() == 2);
    std::string key;
    for (const auto& b : sub.basis()) key += b.to_string() + ";";
    distinct.insert(key);
    ++count;
    return true;
  });
  CHECK(count == 35);
  CHECK(distinct.size() == 35);

  MatrixSpace line(f2, 1, 2,
                   {Matrix::elementary(f2, 1, 2, 0, 0), Matrix::elementary(f2, 1, 2, 0, 1)});
  CHECK(subspace_count(line, 1) == 3);  // projective line over F_2
}

TEST_CASE("max rank on the stated instances") {
  CHECK(max_rank(graphical_space(complete_bipartite(2, 2), f2)).value == 2);
  CHECK(max_rank(MatrixSpace::zero(f2, 2, 2)).value == 0);
  MatrixSpace column(f2, 2, 2,
                     {Matrix::elementary(f2, 2, 2, 0, 0), Matrix::elementary(f2, 2, 2, 1, 0)});
  CHECK(max_rank(column).value == 1);
}

TEST_CASE("nil and nilpotent indices on the stated instances") {
  MatrixSpace path = graphical_space(Digraph(3, {{0, 1}, {1, 2}}), f2);
  CHECK(nil_index(path).value == 3);
  CHECK(nilpotent_index(path) == 3);

  MatrixSpace zero = MatrixSpace::zero(f2, 2, 2);
  CHECK(nil_index(zero).value == 1);
  CHECK(nilpotent_index(zero) == 1);

  // {[0 x 0; y 0 x; 0 -y 0]} over F_3: nil of index 3, not nilpotent.
  Matrix bx = Matrix::from_ints(f3, 3, 3, {0, 1, 0, 0, 0, 1, 0, 0, 0});
  Matrix by = Matrix::from_ints(f3, 3, 3, {0, 0, 0, 1, 0, 0, 0, -1, 0});
  MatrixSpace nil_not_nilpotent(f3, 3, 3, {bx, by});
  IndexResult ni = nil_index(nil_not_nilpotent);
  CHECK(ni.exact);
  CHECK(ni.value == 3);
  CHECK(!nilpotent_index(nil_not_nilpotent).has_value());
}

TEST_CASE("nil index is bounded by the nilpotent index") {
  Rng rng(47);
  for (int t = 0; t < 60; ++t) {
    Digraph g = Digraph::from_arc_mask(3, rng.below(512));
    MatrixSpace s = graphical_space(g, f2);
    IndexResult ni = nil_index(s);
    std::optional<int> npi = nilpotent_index(s);
    if (!npi.has_value()) continue;
    REQUIRE(ni.value.has_value());
    CHECK(*ni.value <= *npi);
  }
}

TEST_CASE("zero eigenvalue minimum on the stated instances") {
  MatrixSpace dag = graphical_space(Digraph(3, {{0, 1}, {1, 2}, {0, 2}}), f2);
  CHECK(zero_eigenvalue_min(dag) == 3);
  MatrixSpace c3 = graphical_space(Digraph(3, {{0, 1}, {1, 2}, {2, 0}}), f2);
  CHECK(zero_eigenvalue_min(c3) == 0);  // cycle matrix has char poly x^3 - 1
  MatrixSpace c3_iso = graphical_space(Digraph(4, {{0, 1}, {1, 2}, {2, 0}}), f2);
  CHECK(zero_eigenvalue_min(c3_iso) == 1);
}

TEST_CASE("invariant closure on the stated instances") {
  MatrixSpace full = MatrixSpace::full(f2, 2);
  CHECK(invariant_closure(full, unit_vector(f2, 2, 0)).rows() == 2);

  MatrixSpace e12 = graphical_space(Digraph(2, {{0, 1}}), f2);
  VectorSpace c_e2 = invariant_closure(e12, unit_vector(f2, 2, 1));
  CHECK(c_e2.rows() == 1);
  CHECK(c_e2.at(0, 1).is_one());

  VectorSpace c_e1 = invariant_closure(e12, unit_vector(f2, 2, 0));
  CHECK(c_e1.rows() == 2);

  CHECK_THROWS_AS(
      invariant_closure(e12, std::vector<FieldElem>(2, FieldElem::zero(f2))),
      std::invalid_argument);
}

TEST_CASE("closure is a minimal fixpoint") {
  Rng rng(53);
  for (int t = 0; t < 40; ++t) {
    Digraph g = Digraph::from_arc_mask(3, rng.below(512));
    MatrixSpace s = graphical_space(g, f2);
    std::vector<FieldElem> v = unit_vector(f2, 3, int(rng.below(3)));
    VectorSpace u = invariant_closure(s, v);
    for (int i = 0; i < u.rows(); ++i) {
      std::vector<FieldElem> row(u.entries().begin() + size_t(i) * 3,
                                 u.entries().begin() + size_t(i + 1) * 3);
      for (const Matrix& b : s.basis()) {
        auto image = row_times_matrix(row, b);
        Matrix stacked(f2, u.rows() + 1, 3);
        for (int r = 0; r < u.rows(); ++r)
          for (int c = 0; c < 3; ++c) stacked.at(r, c) = u.at(r, c);
        for (int c = 0; c < 3; ++c) stacked.at(u.rows(), c) = image[size_t(c)];
        CHECK(rank(stacked) == u.rows());
      }
    }
  }
}

TEST_CASE("irreducibility on the stated instances") {
  CHECK(is_irreducible(graphical_space(Digraph(3, {{0, 1}, {1, 2}, {2, 0}}), f2))
            .irreducible);
  IrreducibilityResult r = is_irreducible(graphical_space(Digraph(2, {{0, 1}}), f2));
  CHECK(!r.irreducible);
  REQUIRE(r.witness.has_value());
  CHECK(r.witness->rows() == 1);
  CHECK(r.witness->at(0, 1).is_one());  // the line through e_2
  CHECK(is_irreducible(MatrixSpace::full(f2, 3)).irreducible);
}

TEST_CASE("composition series length on the stated instances") {
  CHECK(composition_series_length(MatrixSpace::full(f2, 3)) == 1);
  CHECK(composition_series_length(MatrixSpace::full(f3, 2)) == 1);
  CHECK(composition_series_length(graphical_space(Digraph(3, {{0, 1}, {1, 2}}), f2)) ==
        3);
  Digraph two_cycles(4, {{0, 1}, {1, 0}, {2, 3}, {3, 2}});
  CHECK(composition_series_length(graphical_space(two_cycles, f2)) == 2);
}

TEST_CASE("induced subspace via spanning rows on the stated instances") {
  Digraph g(3, {{0, 1}, {1, 2}, {2, 0}, {0, 0}});
  MatrixSpace s = graphical_space(g, f2);
  Matrix t_l = coordinate_rows(f2, 3, {0, 1});
  Matrix t_r = coordinate_rows(f2, 3, {0, 1});
  MatrixSpace induced = induced_subspace_lr(s, t_l, t_r);
  BipartiteGraph expected_graph(2, 2, {{0, 1}, {0, 0}});
  CHECK(induced.same_space(graphical_space(expected_graph, f2)));

  MatrixSpace same =
      induced_subspace_lr(s, Matrix::identity(f2, 3), Matrix::identity(f2, 3));
  CHECK(same.same_space(s));

  MatrixSpace squashed = induced_subspace_lr(s, coordinate_rows(f2, 3, {}), t_r);
  CHECK(squashed.ambient_rows() == 0);
  CHECK(squashed.dim() == 0);

  Matrix deficient(f2, 2, 3);  // rank 0 < 2 rows
  CHECK_THROWS_AS(induced_subspace_lr(s, deficient, t_r), std::invalid_argument);
}

TEST_CASE("unitary-style induced subspace over exact fields needs coordinates") {
  Digraph g(3, {{0, 1}, {1, 2}});
  MatrixSpace s = graphical_space(g, f2);
  MatrixSpace induced = induced_subspace_u(s, coordinate_rows(f2, 3, {0, 1}));
  CHECK(induced.same_space(graphical_space(g.induced({0, 1}), f2)));

  MatrixSpace whole = induced_subspace_u(s, Matrix::identity(f2, 3));
  CHECK(whole.same_space(s));

  Matrix skew = Matrix::from_ints(f2, 1, 3, {1, 1, 0});
  CHECK_THROWS_AS(induced_subspace_u(s, skew), std::invalid_argument);
}

TEST_CASE("induced coordinate subspaces commute with induced subgraphs") {
  Rng rng(59);
  for (int t = 0; t < 40; ++t) {
    Digraph g = Digraph::from_arc_mask(3, rng.below(512));
    MatrixSpace s = graphical_space(g, f2);
    std::vector<int> keep;
    for (int v = 0; v < 3; ++v)
      if (rng.below(2)) keep.push_back(v);
    MatrixSpace lhs = induced_subspace_u(s, coordinate_rows(f2, 3, keep));
    MatrixSpace rhs = graphical_space(g.induced(keep), f2);
    CHECK(lhs.same_space(rhs));
  }
}

TEST_CASE("adapted vector search on the stated instances") {
  CHECK(find_adapted_vector(MatrixSpace::zero(f2, 2, 2)) == 0);
  CHECK(find_adapted_vector(graphical_space(Digraph(2, {{0, 1}}), f2)) == 1);
  CHECK(find_adapted_vector(graphical_space(Digraph(2, {{1, 0}}), f2)) == 0);
  CHECK_THROWS_AS(find_adapted_vector(MatrixSpace::full(f2, 2)),
                  std::invalid_argument);
}

TEST_CASE("nil-to-acyclic construction on the stated instances") {
  Digraph dag(3, {{0, 1}, {0, 2}, {1, 2}});
  MatrixSpace s = graphical_space(dag, f2);
  Digraph out = nil_to_acyclic_subgraph(s);
  CHECK(is_acyclic(out));
  CHECK(out.arc_count() >= s.dim());

  Matrix m = Matrix::from_ints(Field::q(), 2, 2, {1, 1, -1, -1});
  CHECK(mat_mul(m, m).is_zero());
  MatrixSpace nil_space(Field::q(), 2, 2, {m});
  Digraph out2 = nil_to_acyclic_subgraph(nil_space);
  CHECK(is_acyclic(out2));
  CHECK(out2.arc_count() >= 1);
  Digraph support = supporting_digraph(nil_space);
  for (auto [i, j] : out2.arcs()) CHECK(support.has_arc(i, j));

  CHECK(nil_to_acyclic_subgraph(MatrixSpace::zero(f2, 2, 2)).arc_count() == 0);

  CHECK_THROWS_AS(nil_to_acyclic_subgraph(MatrixSpace::full(f2, 2)),
                  std::invalid_argument);
}

TEST_CASE("nil-to-acyclic contract holds across random nil spaces") {
  Rng rng(61);
  int done = 0;
  while (done < 40) {
    Digraph g = Digraph::from_arc_mask(3, rng.below(512));
    if (!is_acyclic(g)) continue;
    MatrixSpace s = graphical_space(g, f2);
    std::vector<Matrix> gens;
    for (const Matrix& b : s.basis())
      if (rng.below(2)) gens.push_back(b);
    if (gens.size() >= 2) {
      gens[0] = mat_add(gens[0], gens[1]);  // non-elementary basis element
    }
    MatrixSpace sub(f2, 3, 3, gens);
    Digraph out = nil_to_acyclic_subgraph(sub);
    CHECK(is_acyclic(out));
    CHECK(out.arc_count() >= sub.dim());
    Digraph support = supporting_digraph(sub);
    for (auto [i, j] : out.arcs()) CHECK(support.has_arc(i, j));
    ++done;
  }
}

TEST_CASE("lexicographic pattern witness on the stated instances") {
  Field q = Field::q();
  {
    MeshulamWitness w = meshulam_witness(
        {Matrix::elementary(q, 2, 2, 0, 0), Matrix::elementary(q, 2, 2, 1, 1)});
    CHECK(w.rho == 2);
    CHECK(rank(w.witness) >= 2);
    CHECK(w.pattern == BipartiteGraph(2, 2, {{0, 0}, {1, 1}}));
  }
  {
    MeshulamWitness w = meshulam_witness({Matrix::elementary(q, 2, 2, 0, 0)});
    CHECK(w.rho == 1);
    CHECK(w.witness == Matrix::elementary(q, 2, 2, 0, 0));
  }
  {
    MatrixSpace s = graphical_space(complete_bipartite(2, 2), f2);
    MeshulamWitness w = meshulam_witness(s.basis());
    CHECK(w.rho == 2);
    CHECK(rank(w.witness) == 2);
  }
}

TEST_CASE("pattern witness rank bound holds on random exact inputs") {
  Rng rng(67);
  for (int t = 0; t < 40; ++t) {
    std::vector<Matrix> mats;
    int count = 1 + int(rng.below(4));
    for (int k = 0; k < count; ++k) {
      Matrix m(f3, 2, 3);
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 3; ++j)
          m.at(i, j) = FieldElem::from_int(f3, std::int64_t(rng.below(3)));
      if (!m.is_zero()) mats.push_back(m);
    }
    if (mats.empty()) continue;
    MeshulamWitness w = meshulam_witness(mats);
    CHECK(rank(w.witness) >= w.rho);
  }
}

TEST_CASE("bounded-rank dimension witness: the flat-family instance") {
  // All-rank-<=1 subspaces of the full 2x3 space reach dimension rn = 3.
  MatrixSpace s = graphical_space(complete_bipartite(2, 3), f2);
  SubspaceWitness w = max_bd_rank_dim(s, 1);
  CHECK(w.certified_value == 3);
  CHECK(w.verify());
}

TEST_CASE("nil dimension witness: the full 3x3 instance") {
  SubspaceWitness w = max_nil_dim(MatrixSpace::full(f2, 3));
  CHECK(w.certified_value == 3);  // n(n-1)/2
  CHECK(w.verify());
}

TEST_CASE("reducible dimension witness: non-strongly-connected graphs") {
  Digraph g(3, {{0, 1}, {1, 2}, {0, 2}});
  MatrixSpace s = graphical_space(g, f2);
  SubspaceWitness w = max_rdc_dim(s);
  CHECK(w.certified_value == s.dim());
  CHECK(w.verify());
}

TEST_CASE("fast and generic subspace searches agree") {
  Rng rng(71);
  for (int t = 0; t < 8; ++t) {
    Digraph g = Digraph::from_arc_mask(2, rng.below(16));
    // F_3 drives the generic path, F_2 the bitmask path; acyclic-structure
    // values are field-independent at these sizes.
    SubspaceWitness fast = max_nil_dim(graphical_space(g, f2));
    SubspaceWitness slow = max_nil_dim(graphical_space(g, f3));
    CHECK(fast.certified_value == slow.certified_value);
    for (int r = 0; r <= 2; ++r) {
      SubspaceWitness fr = max_bd_rank_dim(graphical_space(g, f2), r);
      SubspaceWitness sr = max_bd_rank_dim(graphical_space(g, f3), r);
      CHECK(fr.certified_value == sr.certified_value);
    }
  }
}

TEST_CASE("caps are reported, not silently ignored") {
  Field f1009 = Field::fp(1009);
  MatrixSpace big = MatrixSpace::full(f1009, 3);
  CHECK_THROWS_AS(zero_eigenvalue_min(big), CapError);
  CHECK_THROWS_AS(
      enumerate_elements(big, [](const Matrix&) { return true; }), CapError);
}
