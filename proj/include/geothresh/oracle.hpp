#ifndef GEOTHRESH_ORACLE_HPP
#define GEOTHRESH_ORACLE_HPP

// Brute-force reference implementations, straight from the definitions.
// Quadratic or exponential in the number of points; meant for tiny inputs.

#include <algorithm>
#include <bit>
#include <cmath>
#include <vector>

#include "geothresh/errors.hpp"
#include "geothresh/geometry.hpp"
#include "geothresh/graph.hpp"

namespace geothresh::oracle {

inline constexpr std::size_t kMaxOraclePoints = 14;

inline double distance(const Point& a, const Point& b) { return std::sqrt(dist2(a, b)); }

inline double knn_distance(const std::vector<Point>& pts, std::size_t i, int k) {
  if (pts.size() < static_cast<std::size_t>(k) + 1) throw InfeasibleError("need at least k+1 points");
  std::vector<double> d;
  for (std::size_t j = 0; j < pts.size(); ++j)
    if (j != i) d.push_back(distance(pts[i], pts[j]));
  std::sort(d.begin(), d.end());
  return d[k - 1];
}

inline double largest_knn_link(const std::vector<Point>& pts, int k) {
  if (pts.size() <= static_cast<std::size_t>(k)) return 0.0;
  double best = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) best = std::max(best, knn_distance(pts, i, k));
  return best;
}

inline std::size_t count_within(const std::vector<Point>& pts, const Point& x, double r) {
  std::size_t c = 0;
  for (const auto& p : pts)
    if (distance(p, x) <= r) ++c;
  return c;
}

inline std::size_t isolated_count(const std::vector<Point>& pts, double r, int k) {
  std::size_t c = 0;
  for (const auto& p : pts)
    if (count_within(pts, p, r) <= static_cast<std::size_t>(k)) ++c;
  return c;
}

inline Graph geometric_graph(const std::vector<Point>& pts, double r) {
  std::vector<std::pair<Graph::Vertex, Graph::Vertex>> edges;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      if (distance(pts[i], pts[j]) <= r)
        edges.emplace_back(static_cast<Graph::Vertex>(i), static_cast<Graph::Vertex>(j));
  return Graph(pts.size(), edges);
}

/// Removes every vertex subset of size <= k-1 and tests connectivity of the
/// remainder.
inline bool is_k_connected(const std::vector<Point>& pts, double r, int k) {
  const std::size_t n = pts.size();
  if (n < static_cast<std::size_t>(k) + 1) throw InfeasibleError("need at least k+1 points");
  const Graph g = geometric_graph(pts, r);
  std::vector<char> removed(n, 0);
  for (unsigned long mask = 0; mask < (1ul << n); ++mask) {
    if (std::popcount(mask) > k - 1) continue;
    for (std::size_t v = 0; v < n; ++v) removed[v] = (mask >> v) & 1u;
    if (!is_connected(g, removed)) return false;
  }
  return true;
}

/// Linear scan over the sorted pairwise distances.
inline double k_connectivity_threshold(const std::vector<Point>& pts, int k) {
  if (pts.size() < static_cast<std::size_t>(k) + 2) throw InfeasibleError("need at least k+2 points");
  if (pts.size() > kMaxOraclePoints) throw InfeasibleError("oracle accepts at most 14 points");
  std::vector<double> d;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) d.push_back(distance(pts[i], pts[j]));
  std::sort(d.begin(), d.end());
  for (double r : d)
    if (is_k_connected(pts, r, k)) return r;
  throw std::logic_error("complete graph not k-connected");
}

/// Longest edge of the MST by dense Prim.
inline double longest_mst_edge(const std::vector<Point>& pts) {
  const std::size_t n = pts.size();
  if (n < 2) throw InfeasibleError("need at least 2 points");
  std::vector<double> key(n, INFINITY);
  std::vector<char> in(n, 0);
  key[0] = 0.0;
  double longest = 0.0;
  for (std::size_t it = 0; it < n; ++it) {
    std::size_t u = n;
    for (std::size_t v = 0; v < n; ++v)
      if (!in[v] && (u == n || key[v] < key[u])) u = v;
    in[u] = 1;
    longest = std::max(longest, key[u]);
    for (std::size_t v = 0; v < n; ++v)
      if (!in[v]) key[v] = std::min(key[v], distance(pts[u], pts[v]));
  }
  return longest;
}

}  // namespace geothresh::oracle

#endif  // GEOTHRESH_ORACLE_HPP
