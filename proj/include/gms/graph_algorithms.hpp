#pragma once

#include <functional>
#include <optional>

#include "gms/graph.hpp"

namespace gms {

struct MatchingResult {
  int size = 0;
  std::vector<Arc> matching;  // lexicographically canonical
};

/// Maximum matching by Hopcroft-Karp.
MatchingResult max_matching(const BipartiteGraph& g);

struct LineCover {
  int rho = 0;
  std::vector<int> rows, cols;
};

/// Minimum set of rows and columns covering every edge. rho equals the
/// matching number (Konig).
LineCover min_line_cover(const BipartiteGraph& pattern);

struct SccResult {
  std::vector<std::vector<int>> components;  // topological order
  int c_of_g = 0;
};

/// Tarjan decomposition; components listed in topological order with
/// sorted vertices.
SccResult scc(const Digraph& g);

bool strongly_connected(const Digraph& g);
bool is_acyclic(const Digraph& g);

/// Longest walk length; nullopt encodes infinity (cyclic graph).
std::optional<int> max_walk_len(const Digraph& g);

/// Maximum number of vertices covered by a family of vertex-disjoint
/// cycles; brute force over vertex subsets, n <= 16.
int max_cycle_cover_vertices(const Digraph& g);

/// Maximum number of arcs in an acyclic spanning subgraph, exact via a
/// subset dynamic program over vertex orderings; n <= 16.
int max_acyclic_subgraph_size(const Digraph& g);

struct InducedOrderResult {
  int order = 0;
  std::vector<int> witness;  // lexicographically first maximizing subset
};

/// Maximum order of an acyclic induced subgraph; n <= 20.
InducedOrderResult max_induced_acyclic_order(const Digraph& g);

/// Maximum number of arcs in a non-strongly-connected spanning subgraph.
/// Equals |E| - lambda(G) for strongly connected G where lambda is the
/// arc-strong connectivity (min over ordered pairs of unit max-flow).
/// 0- and 1-vertex graphs count as strongly connected; then there is no
/// qualifying subgraph and the result is 0 by convention.
int max_nsc_size(const Digraph& g);

/// Arc-strong connectivity of a strongly connected graph with n >= 2.
int arc_strong_connectivity(const Digraph& g);

/// Maximum order of a non-strongly-connected induced subgraph; 0 when no
/// induced subgraph qualifies (vacuous strong-connectivity convention on
/// <= 1 vertex). n <= 20.
InducedOrderResult max_ind_nsc_order(const Digraph& g);

struct AutomorphismResult {
  std::vector<std::vector<int>> generators;  // all automorphisms, id first
  std::vector<std::vector<int>> orbits;
  bool transitive = false;
};

/// Automorphism group by pruned backtracking; n <= 10.
AutomorphismResult automorphisms(const Digraph& g);

/// A vertex bijection carrying arcs exactly onto arcs, or nullopt.
std::optional<std::vector<int>> isomorphic(const Digraph& g, const Digraph& h);

bool permutation_is_isomorphism(const Digraph& g, const Digraph& h,
                                const std::vector<int>& perm);
bool permutation_is_embedding(const Digraph& g, const Digraph& h,
                              const std::vector<int>& perm);

/// Finds a simple cycle via repeated squaring of the adjacency relation
/// with witness walks (sequential form of the parallel scheme); nullopt
/// iff the graph is acyclic. A loop yields a length-1 cycle [v].
std::optional<std::vector<int>> find_cycle_by_squaring(const Digraph& g);

/// Gadget reduction from cycle finding to bipartite perfect matching.
/// Variant i forces vertex i onto a cycle by deleting the interior of its
/// length-3 path; variant graphs exclude the two interior gadget vertices.
struct CycleToMatching {
  Digraph source;
  std::vector<BipartiteGraph> variants;  // index 0 = full gadget graph

  /// Left/right sizes of every variant equal 2n (full) or 2n-1 (others).
  /// Decodes a perfect matching of variants[v] into a simple cycle of the
  /// source graph; nullopt when the matching encodes the all-T assignment
  /// (possible only for v = 0).
  std::optional<std::vector<int>> decode(int variant,
                                         const std::vector<Arc>& matching) const;
};

CycleToMatching cycle_to_matching_reduction(const Digraph& g);

/// Convenience: runs max_matching on every forcing variant and decodes the
/// first perfect one; nullopt iff acyclic.
std::optional<std::vector<int>> cycle_via_matching(const Digraph& g);

/// All arc subsets (by mask over g.arcs()) are enumerated by the caller;
/// helper to materialize one.
Digraph arc_subset(const Digraph& g, std::uint64_t mask);

/// Whether `perm` on [n] maps g's arc set into h's (embedding) resp. onto.
GraphReport analyze_digraph(const Digraph& g);
GraphReport analyze_bipartite(const BipartiteGraph& g);

}  // namespace gms
