#include <doctest.h>

#include <algorithm>
#include <bit>
#include <numeric>

#include "gms/graph_algorithms.hpp"
#include "gms/pencil.hpp"  // Rng

using namespace gms;

namespace {

// Oracle: maximum matching by brute force over edge subsets.
int matching_oracle(const BipartiteGraph& g) {
  int best = 0;
  std::uint64_t total = std::uint64_t{1} << g.edge_count();
  for (std::uint64_t sub = 0; sub < total; ++sub) {
    std::vector<Arc> chosen;
    for (int e = 0; e < g.edge_count(); ++e)
      if (sub >> e & 1) chosen.push_back(g.edges()[size_t(e)]);
    bool ok = true;
    for (size_t a = 0; a < chosen.size() && ok; ++a)
      for (size_t b = a + 1; b < chosen.size() && ok; ++b)
        ok = chosen[a].first != chosen[b].first && chosen[a].second != chosen[b].second;
    if (ok) best = std::max(best, int(chosen.size()));
  }
  return best;
}

Digraph random_digraph(Rng& rng, int n, int percent) {
  std::vector<Arc> arcs;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (rng.below(100) < std::uint64_t(percent)) arcs.push_back({i, j});
  return Digraph(n, arcs);
}

// Oracle: largest non-strongly-connected spanning subgraph by brute force.
int max_nsc_oracle(const Digraph& g) {
  if (g.n() <= 1) return 0;
  int best = -1;
  std::uint64_t total = std::uint64_t{1} << g.arc_count();
  for (std::uint64_t sub = 0; sub < total; ++sub) {
    int size = std::popcount(sub);
    if (size <= best) continue;
    if (!strongly_connected(arc_subset(g, sub))) best = size;
  }
  return std::max(best, 0);
}

}  // namespace

TEST_CASE("maximum matching on the stated instances") {
  std::vector<Arc> k33;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) k33.push_back({i, j});
  CHECK(max_matching(BipartiteGraph(3, 3, k33)).size == 3);
  CHECK(max_matching(BipartiteGraph(3, 3, {})).size == 0);

  // {(1,1),(1,2),(2,2)}: enumeration oracle gives 2.
  BipartiteGraph g(2, 2, {{0, 0}, {0, 1}, {1, 1}});
  CHECK(matching_oracle(g) == 2);
  CHECK(max_matching(g).size == 2);
}

TEST_CASE("matching result is a valid matching") {
  Rng rng(5);
  for (int t = 0; t < 100; ++t) {
    int m = 1 + int(rng.below(5)), n = 1 + int(rng.below(5));
    std::vector<Arc> edges;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j)
        if (rng.below(2)) edges.push_back({i, j});
    BipartiteGraph g(m, n, edges);
    MatchingResult r = max_matching(g);
    CHECK(int(r.matching.size()) == r.size);
    for (size_t a = 0; a < r.matching.size(); ++a) {
      CHECK(g.has_edge(r.matching[a].first, r.matching[a].second));
      for (size_t b = a + 1; b < r.matching.size(); ++b) {
        CHECK(r.matching[a].first != r.matching[b].first);
        CHECK(r.matching[a].second != r.matching[b].second);
      }
    }
  }
}

TEST_CASE("line cover on the stated instances") {
  CHECK(min_line_cover(BipartiteGraph(3, 3, {{0, 0}, {1, 1}, {2, 2}})).rho == 3);
  std::vector<Arc> all;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) all.push_back({i, j});
  CHECK(min_line_cover(BipartiteGraph(3, 3, all)).rho == 3);
  CHECK(min_line_cover(BipartiteGraph(3, 3, {{0, 0}, {0, 1}, {0, 2}})).rho == 1);
}

TEST_CASE("Konig duality, exhaustively for m = n <= 3 and random m, n <= 4") {
  for (int n = 1; n <= 3; ++n) {
    std::uint64_t total = std::uint64_t{1} << (n * n);
    for (std::uint64_t mask = 0; mask < total; ++mask) {
      std::vector<Arc> edges;
      for (int e = 0; e < n * n; ++e)
        if (mask >> e & 1) edges.push_back({e / n, e % n});
      BipartiteGraph g(n, n, edges);
      LineCover cover = min_line_cover(g);
      CHECK(cover.rho == max_matching(g).size);
      for (auto [i, j] : g.edges()) {
        bool covered = std::count(cover.rows.begin(), cover.rows.end(), i) ||
                       std::count(cover.cols.begin(), cover.cols.end(), j);
        CHECK(covered);
      }
    }
  }
  Rng rng(23);
  for (int t = 0; t < 200; ++t) {
    int m = 1 + int(rng.below(4)), n = 1 + int(rng.below(4));
    std::vector<Arc> edges;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j)
        if (rng.below(3) == 0) edges.push_back({i, j});
    BipartiteGraph g(m, n, edges);
    CHECK(min_line_cover(g).rho == max_matching(g).size);
  }
}

TEST_CASE("strongly connected components on the stated instances") {
  SccResult cycle = scc(Digraph(3, {{0, 1}, {1, 2}, {2, 0}}));
  CHECK(cycle.c_of_g == 1);

  SccResult path = scc(Digraph(3, {{0, 1}, {1, 2}}));
  CHECK(path.c_of_g == 3);
  CHECK(path.components == std::vector<std::vector<int>>{{0}, {1}, {2}});

  SccResult two = scc(Digraph(4, {{0, 1}, {1, 0}, {2, 3}, {3, 2}}));
  CHECK(two.c_of_g == 2);
}

TEST_CASE("scc components come in topological order") {
  Rng rng(29);
  for (int t = 0; t < 100; ++t) {
    Digraph g = random_digraph(rng, 1 + int(rng.below(6)), 25);
    SccResult r = scc(g);
    std::vector<int> comp_of(static_cast<size_t>(g.n()), -1);
    for (int c = 0; c < r.c_of_g; ++c)
      for (int v : r.components[size_t(c)]) comp_of[size_t(v)] = c;
    for (auto [i, j] : g.arcs()) CHECK(comp_of[size_t(i)] <= comp_of[size_t(j)]);
  }
}

TEST_CASE("maximum walk length on the stated instances") {
  CHECK(max_walk_len(Digraph(3, {{0, 1}, {1, 2}})) == 2);
  CHECK(!max_walk_len(Digraph(1, {{0, 0}})).has_value());
  CHECK(max_walk_len(Digraph(3, {{0, 1}, {0, 2}, {2, 1}})) == 2);
}

TEST_CASE("walk length finiteness matches acyclicity and singleton sccs") {
  Rng rng(31);
  for (int t = 0; t < 200; ++t) {
    Digraph g = random_digraph(rng, 1 + int(rng.below(5)), 25);
    bool acyclic = is_acyclic(g);
    CHECK(max_walk_len(g).has_value() == acyclic);
    bool singletons = true;
    for (const auto& c : scc(g).components) singletons = singletons && c.size() == 1;
    bool loops = false;
    for (auto [i, j] : g.arcs()) loops = loops || i == j;
    CHECK(acyclic == (singletons && !loops));
    if (acyclic) CHECK(*max_walk_len(g) <= g.n() - 1);
  }
}

TEST_CASE("cycle cover vertices on the stated instances") {
  CHECK(max_cycle_cover_vertices(Digraph(3, {{0, 1}, {1, 2}, {2, 0}})) == 3);
  CHECK(max_cycle_cover_vertices(Digraph(3, {{0, 1}, {1, 2}})) == 0);
  CHECK(max_cycle_cover_vertices(Digraph(4, {{0, 1}, {1, 2}, {2, 0}})) == 3);
}

TEST_CASE("acyclic subgraph size on the stated instances") {
  std::vector<Arc> complete;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) complete.push_back({i, j});
  CHECK(max_acyclic_subgraph_size(Digraph(3, complete)) == 3);  // n(n-1)/2

  Digraph dag(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}});
  CHECK(max_acyclic_subgraph_size(dag) == dag.arc_count());
  CHECK(max_acyclic_subgraph_size(Digraph(2, {{0, 1}, {1, 0}})) == 1);
}

TEST_CASE("induced acyclic order on the stated instances") {
  Digraph dag(4, {{0, 1}, {1, 2}, {2, 3}});
  CHECK(max_induced_acyclic_order(dag).order == 4);
  CHECK(max_induced_acyclic_order(Digraph(3, {{0, 0}, {1, 1}, {2, 2}})).order == 0);
  InducedOrderResult r = max_induced_acyclic_order(Digraph(3, {{0, 1}, {1, 2}, {2, 0}}));
  CHECK(r.order == 2);
  CHECK(is_acyclic(Digraph(3, {{0, 1}, {1, 2}, {2, 0}}).induced(r.witness)));
}

TEST_CASE("non-strongly-connected subgraph size on the stated instances") {
  Digraph c4(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  CHECK(max_nsc_size(c4) == 3);  // removing any single arc suffices
  Digraph not_sc(3, {{0, 1}, {1, 2}});
  CHECK(max_nsc_size(not_sc) == 2);
  std::vector<Arc> complete_loopless;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != j) complete_loopless.push_back({i, j});
  Digraph k3(3, complete_loopless);
  CHECK(max_nsc_oracle(k3) == 4);
  CHECK(max_nsc_size(k3) == 4);  // lambda = 2
}

TEST_CASE("flow-based nsc size agrees with arc-subset brute force") {
  Rng rng(37);
  int checked = 0;
  while (checked < 500) {
    Digraph g = random_digraph(rng, 2 + int(rng.below(4)), 40);
    if (g.arc_count() > 10) continue;
    ++checked;
    CHECK(max_nsc_size(g) == max_nsc_oracle(g));
  }
}

TEST_CASE("induced non-strongly-connected order on the stated instances") {
  Digraph not_sc(3, {{0, 1}, {1, 2}});
  CHECK(max_ind_nsc_order(not_sc).order == 3);
  CHECK(max_ind_nsc_order(Digraph(3, {{0, 1}, {1, 2}, {2, 0}})).order == 2);
  std::vector<Arc> complete_loopless;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != j) complete_loopless.push_back({i, j});
  CHECK(max_ind_nsc_order(Digraph(3, complete_loopless)).order == 0);
}

TEST_CASE("automorphisms on the stated instances") {
  Digraph c4(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  AutomorphismResult r = automorphisms(c4);
  CHECK(r.transitive);
  CHECK(r.generators.size() == 4);  // cyclic group

  AutomorphismResult path = automorphisms(Digraph(3, {{0, 1}, {1, 2}}));
  CHECK(!path.transitive);
  CHECK(path.orbits == std::vector<std::vector<int>>{{0}, {1}, {2}});

  std::vector<Arc> complete;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) complete.push_back({i, j});
  CHECK(automorphisms(Digraph(3, complete)).transitive);
}

TEST_CASE("every automorphism maps arcs onto arcs bijectively") {
  Rng rng(41);
  for (int t = 0; t < 50; ++t) {
    Digraph g = random_digraph(rng, 2 + int(rng.below(4)), 30);
    for (const auto& perm : automorphisms(g).generators)
      CHECK(permutation_is_isomorphism(g, g, perm));
  }
}

TEST_CASE("isomorphism search on the stated instances") {
  Digraph g(3, {{0, 1}, {1, 2}});
  CHECK(isomorphic(g, g).has_value());
  CHECK(!isomorphic(Digraph(2, {{0, 1}, {1, 0}}), Digraph(2, {{0, 1}})).has_value());

  Rng rng(43);
  for (int t = 0; t < 50; ++t) {
    int n = 2 + int(rng.below(5));
    Digraph a = random_digraph(rng, n, 35);
    std::vector<int> sigma(static_cast<size_t>(n));
    std::iota(sigma.begin(), sigma.end(), 0);
    for (int i = n - 1; i > 0; --i)
      std::swap(sigma[size_t(i)], sigma[rng.below(std::uint64_t(i + 1))]);
    std::vector<Arc> relabeled;
    for (auto [i, j] : a.arcs()) relabeled.push_back({sigma[size_t(i)], sigma[size_t(j)]});
    Digraph b(n, relabeled);
    auto found = isomorphic(a, b);
    REQUIRE(found.has_value());
    CHECK(permutation_is_isomorphism(a, b, *found));
  }
}

TEST_CASE("cycle finding by repeated squaring on the stated instances") {
  auto c3 = find_cycle_by_squaring(Digraph(3, {{0, 1}, {1, 2}, {2, 0}}));
  REQUIRE(c3.has_value());
  CHECK(c3->size() == 3);
  CHECK(!find_cycle_by_squaring(Digraph(3, {{0, 1}, {1, 2}})).has_value());
  auto loop = find_cycle_by_squaring(Digraph(2, {{0, 0}}));
  REQUIRE(loop.has_value());
  CHECK(*loop == std::vector<int>{0});
}

TEST_CASE("matching reduction on the stated instances") {
  // 3-cycle: some forcing variant has a perfect matching, decoding a cycle
  // that agrees with the squaring route.
  Digraph c3(3, {{0, 1}, {1, 2}, {2, 0}});
  auto via = cycle_via_matching(c3);
  REQUIRE(via.has_value());
  CHECK(via->size() == 3);
  CHECK(find_cycle_by_squaring(c3).has_value());

  // Single loop decodes to the loop itself.
  auto loop = cycle_via_matching(Digraph(1, {{0, 0}}));
  REQUIRE(loop.has_value());
  CHECK(*loop == std::vector<int>{0});
}

TEST_CASE("only the base gadget variant of a DAG has a perfect matching") {
  for (std::uint64_t mask = 0; mask < 512; ++mask) {
    Digraph g = Digraph::from_arc_mask(3, mask);
    if (!is_acyclic(g)) continue;
    CycleToMatching red = cycle_to_matching_reduction(g);
    MatchingResult base = max_matching(red.variants[0]);
    CHECK(base.size == red.variants[0].m());  // the all-T assignment
    CHECK(!red.decode(0, base.matching).has_value());
    for (int v = 1; v < int(red.variants.size()); ++v)
      CHECK(max_matching(red.variants[size_t(v)]).size < red.variants[size_t(v)].m());
  }
}

TEST_CASE("reduction and squaring agree on cyclicity for all digraphs n <= 3") {
  for (int n = 1; n <= 3; ++n) {
    std::uint64_t total = std::uint64_t{1} << (n * n);
    for (std::uint64_t mask = 0; mask < total; ++mask) {
      Digraph g = Digraph::from_arc_mask(n, mask);
      bool cyclic = !is_acyclic(g);
      auto via_matching = cycle_via_matching(g);
      auto via_squaring = find_cycle_by_squaring(g);
      CHECK(via_matching.has_value() == cyclic);
      CHECK(via_squaring.has_value() == cyclic);
      if (via_matching) {
        std::vector<bool> seen(static_cast<size_t>(n), false);
        for (int v : *via_matching) {
          CHECK(!seen[size_t(v)]);
          seen[size_t(v)] = true;
        }
        for (size_t i = 0; i < via_matching->size(); ++i)
          CHECK(g.has_arc((*via_matching)[i],
                          (*via_matching)[(i + 1) % via_matching->size()]));
      }
    }
  }
}

TEST_CASE("edge list text round trip with 1-based vertices") {
  Digraph g(3, {{0, 1}, {2, 2}});
  std::string text = to_graph_text(g);
  CHECK(text == "digraph 3\n1 2\n3 3\n");
  ParsedGraph parsed = parse_graph_text(text);
  REQUIRE(parsed.digraph.has_value());
  CHECK(*parsed.digraph == g);

  BipartiteGraph b(2, 3, {{0, 2}, {1, 0}});
  ParsedGraph pb = parse_graph_text(to_graph_text(b));
  REQUIRE(pb.bipartite.has_value());
  CHECK(*pb.bipartite == b);

  CHECK_THROWS_AS(parse_graph_text("digraph 2\n1 3\n"), GraphError);
  CHECK_THROWS_AS(parse_graph_text("tournament 2\n"), GraphError);
}
