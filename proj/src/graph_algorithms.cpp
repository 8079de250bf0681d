#include "gms/graph_algorithms.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <limits>
#include <numeric>
#include <queue>

namespace gms {

namespace {

constexpr int kUnmatched = -1;

struct HopcroftKarp {
  std::vector<std::vector<int>> adj;
  int m, n;
  std::vector<int> match_left, match_right, dist;

  HopcroftKarp(std::vector<std::vector<int>> adj, int m, int n)
      : adj(std::move(adj)), m(m), n(n), match_left(m, kUnmatched),
        match_right(n, kUnmatched), dist(m) {}

  bool bfs() {
    std::queue<int> q;
    bool found = false;
    for (int u = 0; u < m; ++u) {
      dist[u] = match_left[u] == kUnmatched ? 0 : std::numeric_limits<int>::max();
      if (dist[u] == 0) q.push(u);
    }
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int v : adj[u]) {
        int w = match_right[v];
        if (w == kUnmatched) {
          found = true;
        } else if (dist[w] == std::numeric_limits<int>::max()) {
          dist[w] = dist[u] + 1;
          q.push(w);
        }
      }
    }
    return found;
  }

  bool dfs(int u) {
    for (int v : adj[u]) {
      int w = match_right[v];
      if (w == kUnmatched ||
          (dist[w] == dist[u] + 1 && dfs(w))) {
        match_left[u] = v;
        match_right[v] = u;
        return true;
      }
    }
    dist[u] = std::numeric_limits<int>::max();
    return false;
  }

  int run() {
    int size = 0;
    while (bfs())
      for (int u = 0; u < m; ++u)
        if (match_left[u] == kUnmatched && dfs(u)) ++size;
    return size;
  }
};

}  // namespace

MatchingResult max_matching(const BipartiteGraph& g) {
  HopcroftKarp hk(g.left_adjacency(), g.m(), g.n());
  MatchingResult out;
  out.size = hk.run();
  for (int u = 0; u < g.m(); ++u)
    if (hk.match_left[u] != kUnmatched) out.matching.push_back({u, hk.match_left[u]});
  return out;
}

LineCover min_line_cover(const BipartiteGraph& pattern) {
  auto adj = pattern.left_adjacency();
  HopcroftKarp hk(adj, pattern.m(), pattern.n());
  hk.run();
  // Konig: alternating reachability from unmatched left vertices.
  std::vector<bool> left_seen(pattern.m(), false), right_seen(pattern.n(), false);
  std::queue<int> q;
  for (int u = 0; u < pattern.m(); ++u)
    if (hk.match_left[u] == kUnmatched) {
      left_seen[u] = true;
      q.push(u);
    }
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    for (int v : adj[u]) {
      if (right_seen[v]) continue;
      right_seen[v] = true;
      int w = hk.match_right[v];
      if (w != kUnmatched && !left_seen[w]) {
        left_seen[w] = true;
        q.push(w);
      }
    }
  }
  LineCover cover;
  for (int u = 0; u < pattern.m(); ++u)
    if (!left_seen[u]) cover.rows.push_back(u);
  for (int v = 0; v < pattern.n(); ++v)
    if (right_seen[v]) cover.cols.push_back(v);
  cover.rho = int(cover.rows.size() + cover.cols.size());
  return cover;
}

namespace {

struct TarjanState {
  const std::vector<std::vector<int>>& adj;
  std::vector<int> index, low, stack_pos;
  std::vector<int> stack;
  int counter = 0;
  std::vector<std::vector<int>> sccs;

  explicit TarjanState(const std::vector<std::vector<int>>& adj, int n)
      : adj(adj), index(n, -1), low(n, -1), stack_pos(n, -1) {}

  void visit(int v) {
    index[v] = low[v] = counter++;
    stack_pos[v] = int(stack.size());
    stack.push_back(v);
    for (int w : adj[v]) {
      if (index[w] == -1) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (stack_pos[w] != -1) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      std::vector<int> comp(stack.begin() + stack_pos[v], stack.end());
      for (int w : comp) stack_pos[w] = -1;
      stack.resize(stack.size() - comp.size());
      std::sort(comp.begin(), comp.end());
      sccs.push_back(std::move(comp));
    }
  }
};

}  // namespace

SccResult scc(const Digraph& g) {
  auto adj = g.adjacency();
  TarjanState st(adj, g.n());
  for (int v = 0; v < g.n(); ++v)
    if (st.index[v] == -1) st.visit(v);
  // Tarjan emits components in reverse topological order.
  std::reverse(st.sccs.begin(), st.sccs.end());
  int count = int(st.sccs.size());
  return SccResult{std::move(st.sccs), count};
}

bool strongly_connected(const Digraph& g) { return scc(g).c_of_g <= 1; }

bool is_acyclic(const Digraph& g) {
  for (auto [i, j] : g.arcs())
    if (i == j) return false;
  for (const auto& comp : scc(g).components)
    if (comp.size() > 1) return false;
  return true;
}

std::optional<int> max_walk_len(const Digraph& g) {
  if (!is_acyclic(g)) return std::nullopt;
  // Longest path over a DAG in reverse topological vertex order.
  auto comps = scc(g).components;  // singletons, topological
  auto adj = g.adjacency();
  std::vector<int> longest(g.n(), 0);
  int best = 0;
  for (auto it = comps.rbegin(); it != comps.rend(); ++it) {
    int v = (*it)[0];
    for (int w : adj[v]) longest[v] = std::max(longest[v], 1 + longest[w]);
    best = std::max(best, longest[v]);
  }
  return best;
}

int max_cycle_cover_vertices(const Digraph& g) {
  int n = g.n();
  if (n > 16) throw GraphError("max_cycle_cover_vertices: n too large");
  int best = 0;
  for (std::uint32_t subset = 0; subset < (1u << n); ++subset) {
    int size = std::popcount(subset);
    if (size <= best) continue;
    std::vector<int> verts;
    for (int v = 0; v < n; ++v)
      if (subset >> v & 1) verts.push_back(v);
    Digraph induced = g.induced(verts);
    // Covered by disjoint cycles exactly iff the arcs-within form a
    // perfect matching of the doubled vertex set.
    std::vector<Arc> edges(induced.arcs().begin(), induced.arcs().end());
    BipartiteGraph b(size, size, std::move(edges));
    if (max_matching(b).size == size) best = size;
  }
  return best;
}

int max_acyclic_subgraph_size(const Digraph& g) {
  int n = g.n();
  if (n > 16) throw GraphError("max_acyclic_subgraph_size: n too large");
  // f(S) = best forward-arc count over orderings of S, built by choosing
  // the last vertex of S. Loops are never forward arcs.
  std::vector<std::vector<int>> into(n);  // into[v] = in-neighbours, no loop
  for (auto [i, j] : g.arcs())
    if (i != j) into[j].push_back(i);
  std::vector<int> f(size_t(1) << n, 0);
  for (std::uint32_t s = 1; s < (1u << n); ++s) {
    int best = 0;
    for (int v = 0; v < n; ++v) {
      if (!(s >> v & 1)) continue;
      std::uint32_t rest = s & ~(1u << v);
      int arcs_in = 0;
      for (int u : into[v])
        if (rest >> u & 1) ++arcs_in;
      best = std::max(best, f[rest] + arcs_in);
    }
    f[s] = best;
  }
  return f[(1u << n) - 1];
}

InducedOrderResult max_induced_acyclic_order(const Digraph& g) {
  int n = g.n();
  if (n > 20) throw GraphError("max_induced_acyclic_order: n too large");
  InducedOrderResult best;
  for (std::uint32_t subset = 0; subset < (1u << n); ++subset) {
    int size = std::popcount(subset);
    if (size <= best.order && subset != 0) continue;
    std::vector<int> verts;
    for (int v = 0; v < n; ++v)
      if (subset >> v & 1) verts.push_back(v);
    if (is_acyclic(g.induced(verts)) && (size > best.order || best.witness.empty()))
      best = InducedOrderResult{size, verts};
  }
  return best;
}

namespace {

// Unit-capacity max flow (arc-disjoint paths) from s to t.
int unit_max_flow(const Digraph& g, int s, int t) {
  int n = g.n();
  // capacity[i][j] = 1 if arc present; residual updated in place.
  std::vector<std::vector<int>> cap(n, std::vector<int>(n, 0));
  for (auto [i, j] : g.arcs())
    if (i != j) cap[i][j] = 1;
  int flow = 0;
  while (true) {
    std::vector<int> prev(n, -1);
    std::queue<int> q;
    q.push(s);
    prev[s] = s;
    while (!q.empty() && prev[t] == -1) {
      int u = q.front();
      q.pop();
      for (int v = 0; v < n; ++v)
        if (cap[u][v] > 0 && prev[v] == -1) {
          prev[v] = u;
          q.push(v);
        }
    }
    if (prev[t] == -1) return flow;
    for (int v = t; v != s; v = prev[v]) {
      cap[prev[v]][v] -= 1;
      cap[v][prev[v]] += 1;
    }
    ++flow;
  }
}

}  // namespace

int arc_strong_connectivity(const Digraph& g) {
  if (g.n() < 2) throw GraphError("arc_strong_connectivity needs n >= 2");
  if (!strongly_connected(g)) return 0;
  int best = std::numeric_limits<int>::max();
  for (int u = 0; u < g.n(); ++u)
    for (int v = 0; v < g.n(); ++v)
      if (u != v) best = std::min(best, unit_max_flow(g, u, v));
  return best;
}

int max_nsc_size(const Digraph& g) {
  if (g.n() <= 1) return 0;  // vacuously strongly connected; no witness
  if (!strongly_connected(g)) return g.arc_count();
  return g.arc_count() - arc_strong_connectivity(g);
}

InducedOrderResult max_ind_nsc_order(const Digraph& g) {
  int n = g.n();
  if (n > 20) throw GraphError("max_ind_nsc_order: n too large");
  InducedOrderResult best;  // order 0, empty witness = no subgraph qualifies
  for (std::uint32_t subset = 0; subset < (1u << n); ++subset) {
    int size = std::popcount(subset);
    if (size <= best.order || size < 2) continue;  // <=1 vertex: vacuously sc
    std::vector<int> verts;
    for (int v = 0; v < n; ++v)
      if (subset >> v & 1) verts.push_back(v);
    if (!strongly_connected(g.induced(verts)))
      best = InducedOrderResult{size, verts};
  }
  return best;
}

bool permutation_is_isomorphism(const Digraph& g, const Digraph& h,
                                const std::vector<int>& perm) {
  if (g.n() != h.n() || int(perm.size()) != g.n()) return false;
  if (g.arc_count() != h.arc_count()) return false;
  for (auto [i, j] : g.arcs())
    if (!h.has_arc(perm[i], perm[j])) return false;
  return true;
}

bool permutation_is_embedding(const Digraph& g, const Digraph& h,
                              const std::vector<int>& perm) {
  if (g.n() != h.n() || int(perm.size()) != g.n()) return false;
  for (auto [i, j] : g.arcs())
    if (!h.has_arc(perm[i], perm[j])) return false;
  return true;
}

namespace {

// Backtracking isomorphism search; assigns vertices in order with degree
// pruning. Callback returns true to stop early.
struct IsoSearch {
  const Digraph& g;
  const Digraph& h;
  int n;
  std::vector<int> perm;
  std::vector<bool> used;
  std::vector<int> g_out, g_in, h_out, h_in;

  IsoSearch(const Digraph& g, const Digraph& h)
      : g(g), h(h), n(g.n()), perm(n, -1), used(n, false),
        g_out(n, 0), g_in(n, 0), h_out(n, 0), h_in(n, 0) {
    for (auto [i, j] : g.arcs()) {
      ++g_out[i];
      ++g_in[j];
    }
    for (auto [i, j] : h.arcs()) {
      ++h_out[i];
      ++h_in[j];
    }
  }

  bool consistent(int v, int image) {
    if (g_out[v] != h_out[image] || g_in[v] != h_in[image]) return false;
    if (g.has_arc(v, v) != h.has_arc(image, image)) return false;
    for (int u = 0; u < v; ++u) {
      if (g.has_arc(u, v) != h.has_arc(perm[u], image)) return false;
      if (g.has_arc(v, u) != h.has_arc(image, perm[u])) return false;
    }
    return true;
  }

  bool search(int v, const std::function<bool(const std::vector<int>&)>& emit) {
    if (v == n) return emit(perm);
    for (int image = 0; image < n; ++image) {
      if (used[image] || !consistent(v, image)) continue;
      perm[v] = image;
      used[image] = true;
      if (search(v + 1, emit)) return true;
      used[image] = false;
      perm[v] = -1;
    }
    return false;
  }
};

}  // namespace

AutomorphismResult automorphisms(const Digraph& g) {
  if (g.n() > 10) throw GraphError("automorphisms: n too large");
  AutomorphismResult out;
  IsoSearch search(g, g);
  search.search(0, [&](const std::vector<int>& perm) {
    out.generators.push_back(perm);
    return false;
  });
  // Orbits of the full group.
  int n = g.n();
  std::vector<int> orbit_of(n, -1);
  for (int v = 0; v < n; ++v) {
    if (orbit_of[v] != -1) continue;
    std::vector<int> orbit;
    std::vector<int> todo = {v};
    orbit_of[v] = v;
    while (!todo.empty()) {
      int u = todo.back();
      todo.pop_back();
      orbit.push_back(u);
      for (const auto& perm : out.generators)
        if (orbit_of[perm[u]] == -1) {
          orbit_of[perm[u]] = v;
          todo.push_back(perm[u]);
        }
    }
    std::sort(orbit.begin(), orbit.end());
    out.orbits.push_back(std::move(orbit));
  }
  std::sort(out.orbits.begin(), out.orbits.end());
  out.transitive = n == 0 || out.orbits.size() == 1;
  return out;
}

std::optional<std::vector<int>> isomorphic(const Digraph& g, const Digraph& h) {
  if (g.n() != h.n()) throw GraphError("isomorphic: size mismatch");
  if (g.n() > 10) throw GraphError("isomorphic: n too large");
  if (g.arc_count() != h.arc_count()) return std::nullopt;
  std::optional<std::vector<int>> found;
  IsoSearch search(g, h);
  search.search(0, [&](const std::vector<int>& perm) {
    found = perm;
    return true;
  });
  return found;
}

std::optional<std::vector<int>> find_cycle_by_squaring(const Digraph& g) {
  int n = g.n();
  if (n == 0) return std::nullopt;
  // walk[i][j]: a witness walk (vertex list, length 2^k) from i to j, or
  // empty when no such walk exists.
  std::vector<std::vector<std::vector<int>>> walk(
      n, std::vector<std::vector<int>>(n));
  for (auto [i, j] : g.arcs()) walk[i][j] = {i, j};
  int rounds = 0;
  while ((1 << rounds) < n) ++rounds;
  for (int k = 0; k < rounds; ++k) {
    std::vector<std::vector<std::vector<int>>> next(
        n, std::vector<std::vector<int>>(n));
    for (int i = 0; i < n; ++i)
      for (int mid = 0; mid < n; ++mid) {
        if (walk[i][mid].empty()) continue;
        for (int j = 0; j < n; ++j) {
          if (walk[mid][j].empty() || !next[i][j].empty()) continue;
          std::vector<int> w = walk[i][mid];
          w.insert(w.end(), walk[mid][j].begin() + 1, walk[mid][j].end());
          next[i][j] = std::move(w);
        }
      }
    walk = std::move(next);
  }
  // A walk of length 2^rounds >= n exists iff the graph is cyclic; its
  // vertex sequence has a repeat, and a minimal-gap repeat is simple.
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (walk[i][j].empty()) continue;
      const auto& w = walk[i][j];
      std::vector<int> last_seen(n, -1);
      int best_a = -1, best_b = -1;
      for (int pos = 0; pos < int(w.size()); ++pos) {
        int v = w[pos];
        if (last_seen[v] >= 0 &&
            (best_a < 0 || pos - last_seen[v] < best_b - best_a)) {
          best_a = last_seen[v];
          best_b = pos;
        }
        last_seen[v] = pos;
      }
      std::vector<int> cycle(w.begin() + best_a, w.begin() + best_b);
      return cycle;
    }
  return std::nullopt;
}

namespace {

// Gadget vertex layout for the matching reduction, full variant:
// left  side: i_L1 -> index i,     i_L2 -> index n + i
// right side: j_R1 -> index j,     j_R2 -> index n + j
// Forcing variant v drops i_L2 and i_R2 for i = v, compacting indices.
struct GadgetLayout {
  int n;
  int skip;  // vertex whose L2/R2 are removed, or -1
  int left_of_l1(int i) const { return i; }
  int left_of_l2(int i) const { return n + i - (skip >= 0 && i > skip ? 1 : 0); }
  int size() const { return skip >= 0 ? 2 * n - 1 : 2 * n; }
};

BipartiteGraph build_gadget(const Digraph& g, int skip) {
  int n = g.n();
  GadgetLayout lay{n, skip};
  std::vector<Arc> edges;
  for (auto [i, j] : g.arcs()) edges.push_back({lay.left_of_l1(i), lay.left_of_l1(j)});
  for (int i = 0; i < n; ++i) {
    if (i == skip) continue;
    edges.push_back({lay.left_of_l1(i), lay.left_of_l2(i)});  // (i_L1, i_R2)
    edges.push_back({lay.left_of_l2(i), lay.left_of_l2(i)});  // (i_L2, i_R2)
    edges.push_back({lay.left_of_l2(i), lay.left_of_l1(i)});  // (i_L2, i_R1)
  }
  return BipartiteGraph(lay.size(), lay.size(), std::move(edges));
}

}  // namespace

CycleToMatching cycle_to_matching_reduction(const Digraph& g) {
  CycleToMatching out;
  out.source = g;
  out.variants.push_back(build_gadget(g, -1));
  for (int i = 0; i < g.n(); ++i) out.variants.push_back(build_gadget(g, i));
  return out;
}

std::optional<std::vector<int>> CycleToMatching::decode(
    int variant, const std::vector<Arc>& matching) const {
  int n = source.n();
  int skip = variant == 0 ? -1 : variant - 1;
  GadgetLayout lay{n, skip};
  if (int(matching.size()) != lay.size())
    throw GraphError("decode: not a perfect matching");
  // S = vertices whose (i_L2, i_R2) edge is used; their L1 edges are graph
  // arcs forming disjoint cycles covering S.
  std::vector<bool> in_s(n, false);
  std::vector<int> succ(n, -1);
  for (auto [l, r] : matching) {
    for (int i = 0; i < n; ++i)
      if (i != skip && l == lay.left_of_l2(i) && r == lay.left_of_l2(i))
        in_s[i] = true;
  }
  if (skip >= 0) in_s[skip] = true;
  for (auto [l, r] : matching)
    if (l < n && r < n) {
      if (!source.has_arc(l, r)) throw GraphError("decode: matching edge is not an arc");
      succ[l] = r;
    }
  int start = -1;
  for (int i = 0; i < n; ++i)
    if (in_s[i]) {
      start = i;
      break;
    }
  if (start < 0) return std::nullopt;  // all-T assignment
  // Walk successors from start until a vertex repeats, then cut the cycle.
  std::vector<int> pos(n, -1);
  std::vector<int> path;
  int v = start;
  while (pos[v] == -1) {
    pos[v] = int(path.size());
    path.push_back(v);
    if (succ[v] < 0) throw GraphError("decode: S-vertex without successor");
    v = succ[v];
  }
  return std::vector<int>(path.begin() + pos[v], path.end());
}

std::optional<std::vector<int>> cycle_via_matching(const Digraph& g) {
  CycleToMatching red = cycle_to_matching_reduction(g);
  for (int v = 1; v < int(red.variants.size()); ++v) {
    const auto& variant = red.variants[v];
    MatchingResult m = max_matching(variant);
    if (m.size == variant.m()) {
      auto cycle = red.decode(v, m.matching);
      if (cycle) return cycle;
    }
  }
  return std::nullopt;
}

Digraph arc_subset(const Digraph& g, std::uint64_t mask) {
  std::vector<Arc> kept;
  for (size_t k = 0; k < g.arcs().size(); ++k)
    if (mask >> k & 1) kept.push_back(g.arcs()[k]);
  return Digraph(g.n(), std::move(kept));
}

GraphReport analyze_digraph(const Digraph& g) {
  GraphReport r;
  r.values["n"] = g.n();
  r.values["arcs"] = g.arc_count();
  r.values["c_of_G"] = scc(g).c_of_g;
  auto walk = max_walk_len(g);
  r.values["max_walk_len"] = walk ? *walk : GraphReport::infinity;
  if (g.n() <= 16) {
    r.values["max_cycle_cover_vertices"] = max_cycle_cover_vertices(g);
    r.values["max_acyclic_subgraph_size"] = max_acyclic_subgraph_size(g);
  } else {
    r.skipped["max_cycle_cover_vertices"] = "n exceeds brute-force cap 16";
    r.skipped["max_acyclic_subgraph_size"] = "n exceeds brute-force cap 16";
  }
  if (g.n() <= 20) {
    r.values["max_induced_acyclic_order"] = max_induced_acyclic_order(g).order;
    r.values["max_ind_nsc_order"] = max_ind_nsc_order(g).order;
    r.values["kappa"] = g.n() - r.values["max_ind_nsc_order"];
  } else {
    r.skipped["max_induced_acyclic_order"] = "n exceeds brute-force cap 20";
    r.skipped["max_ind_nsc_order"] = "n exceeds brute-force cap 20";
  }
  r.values["max_nsc_size"] = max_nsc_size(g);
  if (g.n() >= 2 && strongly_connected(g))
    r.values["lambda"] = arc_strong_connectivity(g);
  if (g.n() <= 10) {
    r.values["transitive"] = automorphisms(g).transitive ? 1 : 0;
  } else {
    r.skipped["transitive"] = "n exceeds automorphism cap 10";
  }
  return r;
}

GraphReport analyze_bipartite(const BipartiteGraph& g) {
  GraphReport r;
  r.values["m"] = g.m();
  r.values["n"] = g.n();
  r.values["edges"] = g.edge_count();
  r.values["matching_number"] = max_matching(g).size;
  r.values["rho"] = min_line_cover(g).rho;
  return r;
}

}  // namespace gms
