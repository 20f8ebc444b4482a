#ifndef GEOTHRESH_TESTS_SUPPORT_HPP
#define GEOTHRESH_TESTS_SUPPORT_HPP

// Generators shared by the property tests.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "geothresh/geometry.hpp"
#include "geothresh/rng.hpp"
#include "geothresh/spatial.hpp"

namespace gt_test {

using geothresh::Domain;
using geothresh::Point;
using geothresh::Rng;

inline Domain unit_square() { return Domain::polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}}); }

inline double uniform(Rng& rng, double lo, double hi) { return lo + (hi - lo) * rng.uniform(); }

inline int uniform_int(Rng& rng, int lo, int hi) {
  return lo + static_cast<int>(rng.uniform() * (hi - lo + 1));
}

/// Random convex polygon: sorted random angles on a jittered ellipse.
inline Domain random_polygon(Rng& rng) {
  for (;;) {
    const int m = uniform_int(rng, 3, 8);
    std::vector<double> ang;
    for (int i = 0; i < m; ++i) ang.push_back(uniform(rng, 0.0, 2.0 * std::numbers::pi));
    std::sort(ang.begin(), ang.end());
    const double ax = uniform(rng, 0.5, 2.0), ay = uniform(rng, 0.5, 2.0);
    const double cx = uniform(rng, -1.0, 1.0), cy = uniform(rng, -1.0, 1.0);
    std::vector<geothresh::Vec2> v;
    for (double t : ang) v.push_back({cx + ax * std::cos(t), cy + ay * std::sin(t)});
    try {
      return Domain::polygon(v);
    } catch (const std::invalid_argument&) {
    }
  }
}

inline Domain random_domain(Rng& rng) {
  const double u = rng.uniform();
  if (u < 0.25) return Domain::disk(uniform(rng, 0.3, 2.0));
  if (u < 0.5) return Domain::ball3(uniform(rng, 0.3, 2.0));
  return random_polygon(rng);
}

inline std::vector<Point> random_points(Rng& rng, std::size_t n, int dim = 2, double scale = 1.0) {
  std::vector<Point> pts;
  for (std::size_t i = 0; i < n; ++i)
    pts.push_back({scale * rng.uniform(), scale * rng.uniform(), dim == 3 ? scale * rng.uniform() : 0.0});
  return pts;
}

/// Points on a coarse lattice, so that many pairwise distances tie.
inline std::vector<Point> lattice_points(Rng& rng, std::size_t n, int steps) {
  std::vector<Point> pts;
  for (std::size_t i = 0; i < n; ++i)
    pts.push_back({static_cast<double>(uniform_int(rng, 0, steps)) / steps,
                   static_cast<double>(uniform_int(rng, 0, steps)) / steps, 0.0});
  return pts;
}

inline geothresh::PointSet index(std::vector<Point> pts, int dim = 2, double cell = 0.0) {
  const auto n = pts.size();
  if (cell <= 0.0) cell = geothresh::default_cell_size(n, 1.0, dim);
  return geothresh::PointSet::build(std::move(pts), cell, dim);
}

}  // namespace gt_test

#endif  // GEOTHRESH_TESTS_SUPPORT_HPP
