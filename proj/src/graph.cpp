#include "gms/graph.hpp"

#include <algorithm>
#include <sstream>

namespace gms {

namespace {

void sort_unique(std::vector<Arc>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

Digraph::Digraph(int n, std::vector<Arc> arcs) : n_(n), arcs_(std::move(arcs)) {
  if (n < 0) throw GraphError("negative vertex count");
  for (auto [i, j] : arcs_)
    if (i < 0 || i >= n || j < 0 || j >= n)
      throw GraphError("arc endpoint out of range");
  sort_unique(arcs_);
}

bool Digraph::has_arc(int i, int j) const {
  return std::binary_search(arcs_.begin(), arcs_.end(), Arc{i, j});
}

std::vector<std::vector<int>> Digraph::adjacency() const {
  std::vector<std::vector<int>> adj(n_);
  for (auto [i, j] : arcs_) adj[i].push_back(j);
  return adj;
}

Digraph Digraph::transpose() const {
  std::vector<Arc> rev;
  rev.reserve(arcs_.size());
  for (auto [i, j] : arcs_) rev.push_back({j, i});
  return Digraph(n_, std::move(rev));
}

Digraph Digraph::induced(const std::vector<int>& vertices) const {
  std::vector<int> index(n_, -1);
  for (int k = 0; k < int(vertices.size()); ++k) index[vertices[k]] = k;
  std::vector<Arc> kept;
  for (auto [i, j] : arcs_)
    if (index[i] >= 0 && index[j] >= 0) kept.push_back({index[i], index[j]});
  return Digraph(int(vertices.size()), std::move(kept));
}

Digraph Digraph::spanning_subgraph(const std::vector<Arc>& kept) const {
  for (const auto& a : kept)
    if (!has_arc(a.first, a.second)) throw GraphError("arc not in graph");
  return Digraph(n_, kept);
}

std::uint64_t Digraph::arc_mask() const {
  if (n_ * n_ > 63) throw GraphError("graph too large for arc mask");
  std::uint64_t mask = 0;
  for (auto [i, j] : arcs_) mask |= std::uint64_t{1} << (i * n_ + j);
  return mask;
}

Digraph Digraph::from_arc_mask(int n, std::uint64_t mask) {
  std::vector<Arc> arcs;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (mask >> (i * n + j) & 1) arcs.push_back({i, j});
  return Digraph(n, std::move(arcs));
}

BipartiteGraph::BipartiteGraph(int m, int n, std::vector<Arc> edges)
    : m_(m), n_(n), edges_(std::move(edges)) {
  if (m < 0 || n < 0) throw GraphError("negative vertex count");
  for (auto [i, j] : edges_)
    if (i < 0 || i >= m || j < 0 || j >= n)
      throw GraphError("edge endpoint out of range");
  sort_unique(edges_);
}

bool BipartiteGraph::has_edge(int i, int j) const {
  return std::binary_search(edges_.begin(), edges_.end(), Arc{i, j});
}

std::vector<std::vector<int>> BipartiteGraph::left_adjacency() const {
  std::vector<std::vector<int>> adj(m_);
  for (auto [i, j] : edges_) adj[i].push_back(j);
  return adj;
}

BipartiteGraph BipartiteGraph::induced(const std::vector<int>& left,
                                       const std::vector<int>& right) const {
  std::vector<int> li(m_, -1), ri(n_, -1);
  for (int k = 0; k < int(left.size()); ++k) li[left[k]] = k;
  for (int k = 0; k < int(right.size()); ++k) ri[right[k]] = k;
  std::vector<Arc> kept;
  for (auto [i, j] : edges_)
    if (li[i] >= 0 && ri[j] >= 0) kept.push_back({li[i], ri[j]});
  return BipartiteGraph(int(left.size()), int(right.size()), std::move(kept));
}

UndirectedGraph::UndirectedGraph(int n, std::vector<Arc> edges) : n_(n) {
  for (auto [i, j] : edges) {
    if (i < 0 || i >= n || j < 0 || j >= n || i == j)
      throw GraphError("bad undirected edge");
    edges_.push_back({std::min(i, j), std::max(i, j)});
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
}

bool UndirectedGraph::has_edge(int i, int j) const {
  Arc e{std::min(i, j), std::max(i, j)};
  return std::binary_search(edges_.begin(), edges_.end(), e);
}

std::vector<int> UndirectedGraph::degrees() const {
  std::vector<int> deg(n_, 0);
  for (auto [i, j] : edges_) {
    ++deg[i];
    ++deg[j];
  }
  return deg;
}

Digraph UndirectedGraph::looped_symmetrization() const {
  std::vector<Arc> arcs;
  for (int i = 0; i < n_; ++i) arcs.push_back({i, i});
  for (auto [i, j] : edges_) {
    arcs.push_back({i, j});
    arcs.push_back({j, i});
  }
  return Digraph(n_, std::move(arcs));
}

ParsedGraph parse_graph_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  std::string kind;
  int m = 0, n = 0;
  std::vector<Arc> edges;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    if (kind.empty()) {
      if (!(ls >> kind)) continue;  // skip leading blank lines
      if (kind == "digraph") {
        if (!(ls >> n) || n < 0)
          throw GraphError("line " + std::to_string(lineno) +
                           ": expected 'digraph n'");
        m = n;
      } else if (kind == "bipartite") {
        if (!(ls >> m >> n) || m < 0 || n < 0)
          throw GraphError("line " + std::to_string(lineno) +
                           ": expected 'bipartite m n'");
      } else {
        throw GraphError("line " + std::to_string(lineno) +
                         ": unknown graph kind '" + kind + "'");
      }
      continue;
    }
    int i, j;
    if (!(ls >> i)) continue;  // blank line
    if (!(ls >> j))
      throw GraphError("line " + std::to_string(lineno) + ": expected 'i j'");
    if (i < 1 || i > m || j < 1 || j > n)
      throw GraphError("line " + std::to_string(lineno) +
                       ": endpoint out of range (vertices are 1-based)");
    edges.push_back({i - 1, j - 1});
  }
  if (kind.empty()) throw GraphError("empty graph file");
  ParsedGraph out;
  if (kind == "digraph")
    out.digraph = Digraph(n, std::move(edges));
  else
    out.bipartite = BipartiteGraph(m, n, std::move(edges));
  return out;
}

std::string to_graph_text(const Digraph& g) {
  std::ostringstream os;
  os << "digraph " << g.n() << "\n";
  for (auto [i, j] : g.arcs()) os << i + 1 << " " << j + 1 << "\n";
  return os.str();
}

std::string to_graph_text(const BipartiteGraph& g) {
  std::ostringstream os;
  os << "bipartite " << g.m() << " " << g.n() << "\n";
  for (auto [i, j] : g.edges()) os << i + 1 << " " << j + 1 << "\n";
  return os.str();
}

}  // namespace gms
