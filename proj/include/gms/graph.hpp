#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gms {

struct GraphError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using Arc = std::pair<int, int>;

/// Directed graph on vertices 0..n-1; loops allowed; set semantics.
class Digraph {
 public:
  Digraph() = default;
  Digraph(int n, std::vector<Arc> arcs);

  int n() const { return n_; }
  const std::vector<Arc>& arcs() const { return arcs_; }  // sorted, unique
  int arc_count() const { return int(arcs_.size()); }
  bool has_arc(int i, int j) const;

  /// Out-neighbour adjacency lists.
  std::vector<std::vector<int>> adjacency() const;
  Digraph transpose() const;
  Digraph induced(const std::vector<int>& vertices) const;  // relabels 0..k-1
  /// Subgraph on the same vertex set keeping the given arcs.
  Digraph spanning_subgraph(const std::vector<Arc>& kept) const;

  /// Encode/decode the arc set as a bitmask in lexicographic arc order
  /// (i*n + j). Requires n*n <= 63.
  std::uint64_t arc_mask() const;
  static Digraph from_arc_mask(int n, std::uint64_t mask);

  bool operator==(const Digraph& o) const { return n_ == o.n_ && arcs_ == o.arcs_; }

 private:
  int n_ = 0;
  std::vector<Arc> arcs_;
};

/// Bipartite graph with left part 0..m-1 and right part 0..n-1.
class BipartiteGraph {
 public:
  BipartiteGraph() = default;
  BipartiteGraph(int m, int n, std::vector<Arc> edges);

  int m() const { return m_; }
  int n() const { return n_; }
  const std::vector<Arc>& edges() const { return edges_; }  // sorted, unique
  int edge_count() const { return int(edges_.size()); }
  bool has_edge(int i, int j) const;

  std::vector<std::vector<int>> left_adjacency() const;
  BipartiteGraph induced(const std::vector<int>& left,
                         const std::vector<int>& right) const;

  bool operator==(const BipartiteGraph& o) const {
    return m_ == o.m_ && n_ == o.n_ && edges_ == o.edges_;
  }

 private:
  int m_ = 0, n_ = 0;
  std::vector<Arc> edges_;
};

/// Undirected simple graph (used by the quantum bridge).
class UndirectedGraph {
 public:
  UndirectedGraph() = default;
  UndirectedGraph(int n, std::vector<Arc> edges);  // stores i < j

  int n() const { return n_; }
  const std::vector<Arc>& edges() const { return edges_; }
  bool has_edge(int i, int j) const;
  std::vector<int> degrees() const;

  /// The looped symmetrization: both arc orientations plus all loops.
  Digraph looped_symmetrization() const;

 private:
  int n_ = 0;
  std::vector<Arc> edges_;
};

/// Named integer-or-infinity quantities for a graph, as emitted by the
/// analyze command. Values are re-verifiable by recomputation.
struct GraphReport {
  static constexpr std::int64_t infinity = -1;
  std::map<std::string, std::int64_t> values;      // infinity encoded as -1
  std::map<std::string, std::string> skipped;      // quantity -> reason
};

/// Edge-list text format. First line "digraph n" or "bipartite m n";
/// following lines "i j", 1-based. Output is canonically ordered.
struct ParsedGraph {
  std::optional<Digraph> digraph;
  std::optional<BipartiteGraph> bipartite;
};
ParsedGraph parse_graph_text(const std::string& text);
std::string to_graph_text(const Digraph& g);
std::string to_graph_text(const BipartiteGraph& g);

}  // namespace gms
