#ifndef GEOTHRESH_GRAPH_HPP
#define GEOTHRESH_GRAPH_HPP

// Undirected simple graphs in CSR form and the connectivity tests used by the
// threshold computations: plain connectivity (BFS), biconnectivity (Tarjan
// low-link, iterative) and "vertex connectivity >= k" via unit-capacity
// vertex-split max-flow.

#include <algorithm>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace geothresh {

class Graph {
 public:
  using Vertex = std::uint32_t;

  Graph() = default;

  /// Builds from an edge list; self loops and duplicate edges are dropped.
  Graph(std::size_t n, std::span<const std::pair<Vertex, Vertex>> edges) : offsets_(n + 1, 0) {
    for (const auto& [u, v] : edges) {
      if (u == v) continue;
      ++offsets_[u + 1];
      ++offsets_[v + 1];
    }
    for (std::size_t i = 0; i < n; ++i) offsets_[i + 1] += offsets_[i];
    adj_.resize(offsets_[n]);
    std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
    for (const auto& [u, v] : edges) {
      if (u == v) continue;
      adj_[fill[u]++] = v;
      adj_[fill[v]++] = u;
    }
    std::size_t write = 0;
    std::vector<std::size_t> new_offsets(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) {
      auto first = adj_.begin() + static_cast<std::ptrdiff_t>(offsets_[i]);
      auto last = adj_.begin() + static_cast<std::ptrdiff_t>(offsets_[i + 1]);
      std::sort(first, last);
      last = std::unique(first, last);
      for (auto it = first; it != last; ++it) adj_[write++] = *it;
      new_offsets[i + 1] = write;
    }
    adj_.resize(write);
    offsets_ = std::move(new_offsets);
  }

  std::size_t size() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }

  std::span<const Vertex> neighbours(Vertex v) const noexcept {
    return {adj_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
  }

  std::size_t degree(Vertex v) const noexcept { return offsets_[v + 1] - offsets_[v]; }

  bool adjacent(Vertex u, Vertex v) const noexcept {
    const auto nb = neighbours(u);
    return std::binary_search(nb.begin(), nb.end(), v);
  }

  std::size_t min_degree() const noexcept {
    std::size_t best = size() == 0 ? 0 : degree(0);
    for (Vertex v = 0; v < size(); ++v) best = std::min(best, degree(v));
    return best;
  }

 private:
  std::vector<std::size_t> offsets_;
  std::vector<Vertex> adj_;
};

/// True iff the graph is connected, ignoring the vertices flagged in `removed`
/// (when non-empty). A graph with at most one remaining vertex is connected.
inline bool is_connected(const Graph& g, std::span<const char> removed = {}) {
  const std::size_t n = g.size();
  auto gone = [&](Graph::Vertex v) { return !removed.empty() && removed[v]; };
  std::size_t alive = 0;
  Graph::Vertex start = 0;
  for (Graph::Vertex v = 0; v < n; ++v)
    if (!gone(v)) {
      if (alive == 0) start = v;
      ++alive;
    }
  if (alive <= 1) return true;
  std::vector<char> seen(n, 0);
  std::vector<Graph::Vertex> stack{start};
  seen[start] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const auto v = stack.back();
    stack.pop_back();
    for (auto w : g.neighbours(v))
      if (!seen[w] && !gone(w)) {
        seen[w] = 1;
        ++reached;
        stack.push_back(w);
      }
  }
  return reached == alive;
}

/// True iff the graph is connected and has no articulation point.
/// Requires at least 3 vertices to be meaningful (K_2 is reported as true).
inline bool is_biconnected(const Graph& g) {
  const std::size_t n = g.size();
  if (n <= 2) return is_connected(g);
  constexpr std::uint32_t unseen = ~std::uint32_t{0};
  std::vector<std::uint32_t> disc(n, unseen), low(n, 0);
  std::vector<std::size_t> next_edge(n, 0);
  std::vector<Graph::Vertex> parent(n, 0);
  std::uint32_t time = 0;
  std::size_t root_children = 0;
  std::vector<Graph::Vertex> stack{0};
  disc[0] = low[0] = time++;
  while (!stack.empty()) {
    const auto v = stack.back();
    const auto nb = g.neighbours(v);
    if (next_edge[v] < nb.size()) {
      const auto w = nb[next_edge[v]++];
      if (disc[w] == unseen) {
        parent[w] = v;
        disc[w] = low[w] = time++;
        if (v == 0) ++root_children;
        stack.push_back(w);
      } else if (v == 0 || w != parent[v]) {
        low[v] = std::min(low[v], disc[w]);
      }
    } else {
      stack.pop_back();
      if (v != 0) {
        const auto p = parent[v];
        low[p] = std::min(low[p], low[v]);
        if (p != 0 && low[v] >= disc[p]) return false;
      }
    }
  }
  if (time != n) return false;
  return root_children <= 1;
}

namespace detail {

// Residual network for vertex-disjoint s-t paths: vertex v is split into
// in-node 2v and out-node 2v+1 joined by a unit arc; each undirected edge
// {u, v} becomes unit arcs out(u)->in(v) and out(v)->in(u).
class SplitNetwork {
 public:
  explicit SplitNetwork(const Graph& g) : nodes_(2 * g.size()), head_(nodes_, -1) {
    for (Graph::Vertex v = 0; v < g.size(); ++v) add_arc(2 * v, 2 * v + 1);
    for (Graph::Vertex v = 0; v < g.size(); ++v)
      for (auto w : g.neighbours(v)) add_arc(2 * v + 1, 2 * w);
    initial_ = cap_;
  }

  /// Number of internally vertex-disjoint s-t paths, counted up to `cap`.
  int disjoint_paths(Graph::Vertex s, Graph::Vertex t, int cap) {
    cap_ = initial_;
    const int source = static_cast<int>(2 * s + 1), sink = static_cast<int>(2 * t);
    int flow = 0;
    std::vector<int> via(nodes_);
    std::vector<int> queue;
    queue.reserve(nodes_);
    while (flow < cap) {
      std::fill(via.begin(), via.end(), -1);
      queue.clear();
      queue.push_back(source);
      via[source] = -2;
      bool found = false;
      for (std::size_t qi = 0; qi < queue.size() && !found; ++qi) {
        const int u = queue[qi];
        for (int a = head_[u]; a != -1; a = next_[a]) {
          const int w = to_[a];
          if (cap_[a] > 0 && via[w] == -1) {
            via[w] = a;
            if (w == sink) {
              found = true;
              break;
            }
            queue.push_back(w);
          }
        }
      }
      if (!found) break;
      for (int w = sink; w != source;) {
        const int a = via[w];
        --cap_[a];
        ++cap_[a ^ 1];
        w = to_[a ^ 1];
      }
      ++flow;
    }
    return flow;
  }

 private:
  void add_arc(std::size_t u, std::size_t v) {
    to_.push_back(static_cast<int>(v));
    cap_.push_back(1);
    next_.push_back(head_[u]);
    head_[u] = static_cast<int>(to_.size() - 1);
    to_.push_back(static_cast<int>(u));
    cap_.push_back(0);
    next_.push_back(head_[v]);
    head_[v] = static_cast<int>(to_.size() - 1);
  }

  std::size_t nodes_;
  std::vector<int> head_, to_, next_, cap_, initial_;
};

}  // namespace detail

/// True iff the vertex connectivity of g is at least k (complete graphs
/// K_n count as (n-1)-connected).
///
/// Fixes a vertex v of minimum degree; the connectivity is the minimum of the
/// local connectivities between v and each non-neighbour, and between each
/// non-adjacent pair of neighbours of v (Esfahanian-Hakimi). Every local
/// max-flow stops after k augmenting paths.
inline bool vertex_connectivity_at_least(const Graph& g, int k) {
  const std::size_t n = g.size();
  if (k <= 0) return true;
  if (n < static_cast<std::size_t>(k) + 1) return false;
  if (g.min_degree() < static_cast<std::size_t>(k)) return false;
  Graph::Vertex v = 0;
  for (Graph::Vertex u = 0; u < n; ++u)
    if (g.degree(u) < g.degree(v)) v = u;

  detail::SplitNetwork net(g);
  for (Graph::Vertex w = 0; w < n; ++w) {
    if (w == v || g.adjacent(v, w)) continue;
    if (net.disjoint_paths(v, w, k) < k) return false;
  }
  const auto nb = g.neighbours(v);
  for (std::size_t i = 0; i < nb.size(); ++i)
    for (std::size_t j = i + 1; j < nb.size(); ++j) {
      if (g.adjacent(nb[i], nb[j])) continue;
      if (net.disjoint_paths(nb[i], nb[j], k) < k) return false;
    }
  return true;
}

}  // namespace geothresh

#endif  // GEOTHRESH_GRAPH_HPP
