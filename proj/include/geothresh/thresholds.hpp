#ifndef GEOTHRESH_THRESHOLDS_HPP
#define GEOTHRESH_THRESHOLDS_HPP

// Threshold statistics of a realised point set X:
//   L_k  largest k-nearest-neighbour link (0 when |X| <= k)
//   M_k  smallest r at which the geometric graph G(X, r) is k-connected
//   xi   number of k-isolated vertices (closed r-ball holds <= k points of X)
// Every returned length is a realised pairwise distance, so L_k == M_k is an
// exact comparison.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>
#include <vector>

#include "geothresh/errors.hpp"
#include "geothresh/graph.hpp"
#include "geothresh/spatial.hpp"

namespace geothresh {

struct ThresholdResult {
  double L = 0.0;
  double M = 0.0;
  bool coincide = false;
  int k = 1;
  std::size_t n_points = 0;
};

/// Geometric graph G(X, r) with closed-ball adjacency.
inline Graph geometric_graph(const PointSet& ps, double r) {
  std::vector<std::pair<Graph::Vertex, Graph::Vertex>> edges;
  ps.for_each_pair_within(r, [&](PointId i, PointId j, double) { edges.emplace_back(i, j); });
  return Graph(ps.size(), edges);
}

inline double largest_knn_link(const PointSet& ps, int k) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  if (ps.size() <= static_cast<std::size_t>(k)) return 0.0;
  const auto d = ps.all_knn_distances(k);
  return *std::max_element(d.begin(), d.end());
}

inline bool is_k_connected(const PointSet& ps, double r, int k) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  if (ps.size() < static_cast<std::size_t>(k) + 1)
    throw InfeasibleError("is_k_connected: need at least k+1 points");
  const Graph g = geometric_graph(ps, r);
  if (g.min_degree() < static_cast<std::size_t>(k)) return false;
  if (k == 1) return is_connected(g);
  if (k == 2) return is_biconnected(g);
  return vertex_connectivity_at_least(g, k);
}

inline double longest_mst_edge(const PointSet& ps);

/// M_k(X). M_1 is the longest MST edge. Otherwise starts from L_k (a lower
/// bound); if G(X, L_k) is not k-connected, grows an upper bracket
/// geometrically and binary-searches the sorted pairwise distances inside it.
inline double k_connectivity_threshold(const PointSet& ps, int k) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  if (ps.size() < static_cast<std::size_t>(k) + 2)
    throw InfeasibleError("k_connectivity_threshold: need at least k+2 points");
  if (k == 1) return longest_mst_edge(ps);
  const double lower = largest_knn_link(ps, k);
  if (is_k_connected(ps, lower, k)) return lower;

  const double diag = ps.bounding_diagonal();
  double upper = std::max(lower, 1e-300);
  for (;;) {
    upper = std::min(upper * 1.25, diag);
    if (upper >= diag || is_k_connected(ps, upper, k)) break;
  }
  std::vector<double> candidates;
  ps.for_each_pair_within(upper, [&](PointId, PointId, double q) {
    const double d = std::sqrt(q);
    if (d > lower) candidates.push_back(d);
  });
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  // Invariant: G(X, candidates[hi]) is k-connected; below lo it is not.
  std::size_t lo = 0, hi = candidates.size() - 1;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (is_k_connected(ps, candidates[mid], k))
      hi = mid;
    else
      lo = mid + 1;
  }
  return candidates[hi];
}

namespace detail {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n), rank_(n, 0) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent_[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<unsigned char> rank_;
};

}  // namespace detail

/// Longest edge of a Euclidean minimum spanning tree.
///
/// Kruskal over grid-enumerated candidate edges, processed in radius bands
/// (0, L_1], (L_1, 1.25 L_1], ...; within each band edges are sorted, so the
/// union-find state after a band equals Kruskal's state at that length.
inline double longest_mst_edge(const PointSet& ps) {
  const std::size_t n = ps.size();
  if (n < 2) throw InfeasibleError("longest_mst_edge: need at least 2 points");
  detail::DisjointSets sets(n);
  std::size_t components = n;
  const double diag = ps.bounding_diagonal();
  double band_lo = -1.0;
  double band_hi = largest_knn_link(ps, 1);
  struct Edge {
    double d;
    PointId i, j;
  };
  std::vector<Edge> edges;
  for (;;) {
    edges.clear();
    ps.for_each_pair_within(band_hi, [&](PointId i, PointId j, double q) {
      const double d = std::sqrt(q);
      if (d > band_lo) edges.push_back({d, i, j});
    });
    std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) { return a.d < b.d; });
    for (const auto& e : edges)
      if (sets.unite(e.i, e.j) && --components == 1) return e.d;
    if (band_hi >= diag) throw std::logic_error("longest_mst_edge: graph never connected");
    band_lo = band_hi;
    band_hi = std::min(std::max(band_hi, 1e-300) * 1.25, diag);
  }
}

/// Number of points whose closed r-ball holds at most k points of X
/// (itself included), i.e. vertices of degree <= k-1 in G(X, r).
inline std::size_t isolated_count(const PointSet& ps, double r, int k) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  std::size_t count = 0;
  const auto cap = static_cast<std::size_t>(k);
  for (const auto& p : ps.points())
    if (ps.count_within_capped(p, r, cap) <= cap) ++count;
  return count;
}

/// L_k, M_k and whether they coincide.
inline ThresholdResult compute_thresholds(const PointSet& ps, int k) {
  ThresholdResult res;
  res.k = k;
  res.n_points = ps.size();
  res.L = largest_knn_link(ps, k);
  res.M = k_connectivity_threshold(ps, k);
  res.coincide = res.L == res.M;
  return res;
}

}  // namespace geothresh

#endif  // GEOTHRESH_THRESHOLDS_HPP
