#ifndef GEOTHRESH_SPATIAL_HPP
#define GEOTHRESH_SPATIAL_HPP

// Uniform-grid index over a finite point configuration. Answers are exact:
// k-NN search expands Chebyshev rings of cells and stops only once the k-th
// best squared distance is no larger than the squared distance to any cell
// not yet visited.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <vector>

#include "geothresh/errors.hpp"
#include "geothresh/geometry.hpp"

namespace geothresh {

using PointId = std::uint32_t;

/// Closed-ball membership test. The distance of a pair is sqrt(dist2)
/// rounded once; squared distances settle every pair except those within a
/// few ulps of r^2, where the rounded root decides. A radius returned by any
/// query therefore admits exactly the pairs that realise it.
class RadiusTest {
 public:
  explicit RadiusTest(double r) noexcept
      : r_(r), r2_(r * r), r2_hi_(r * r * (1.0 + 8.0 * std::numeric_limits<double>::epsilon())) {}

  bool operator()(double q) const noexcept {
    if (q <= r2_) return true;
    return q <= r2_hi_ && std::sqrt(q) <= r_;
  }

  double radius() const noexcept { return r_; }

 private:
  double r_, r2_, r2_hi_;
};

/// ((log n) / n * |A|)^(1/d): the connectivity-threshold length scale.
inline double default_cell_size(std::size_t n, double volume, int d) {
  const double nn = std::max<double>(static_cast<double>(n), 3.0);
  return std::pow(std::log(nn) / nn * volume, 1.0 / d);
}

class PointSet {
 public:
  PointSet() = default;

  /// Indexes `points` (dimension 2 or 3) on a grid with the given cell size.
  /// The cell size is enlarged if it would create more than ~8 cells per point.
  static PointSet build(std::vector<Point> points, double cell_size, int dim) {
    if (!(cell_size > 0.0)) throw std::invalid_argument("cell_size must be positive");
    if (dim != 2 && dim != 3) throw std::invalid_argument("dimension must be 2 or 3");
    PointSet s;
    s.dim_ = dim;
    s.points_ = std::move(points);
    const std::size_t n = s.points_.size();
    if (n > std::numeric_limits<PointId>::max()) throw std::invalid_argument("too many points");
    if (dim == 2)
      for (auto& p : s.points_) p[2] = 0.0;

    Point lo{0, 0, 0}, hi{0, 0, 0};
    if (n > 0) {
      lo = hi = s.points_[0];
      for (const auto& p : s.points_)
        for (int c = 0; c < 3; ++c) {
          lo[c] = std::min(lo[c], p[c]);
          hi[c] = std::max(hi[c], p[c]);
        }
    }
    s.lo_ = lo;
    s.hi_ = hi;
    const double budget = 8.0 * static_cast<double>(n) + 64.0;
    double cell = cell_size;
    for (;;) {
      double cells = 1.0;
      for (int c = 0; c < dim; ++c) cells *= std::floor((hi[c] - lo[c]) / cell) + 1.0;
      if (cells <= budget) break;
      cell *= 1.5;
    }
    s.cell_ = cell;
    s.inv_cell_ = 1.0 / cell;
    for (int c = 0; c < 3; ++c)
      s.dims_[c] = c < dim ? static_cast<int>(std::floor((hi[c] - lo[c]) / cell)) + 1 : 1;
    const std::size_t ncells =
        static_cast<std::size_t>(s.dims_[0]) * s.dims_[1] * static_cast<std::size_t>(s.dims_[2]);

    std::vector<std::uint32_t> cell_of(n);
    s.cell_start_.assign(ncells + 1, 0);
    for (std::size_t i = 0; i < n; ++i) {
      cell_of[i] = static_cast<std::uint32_t>(s.linear(s.cell_coords(s.points_[i])));
      ++s.cell_start_[cell_of[i] + 1];
    }
    std::partial_sum(s.cell_start_.begin(), s.cell_start_.end(), s.cell_start_.begin());
    std::vector<std::uint32_t> fill(s.cell_start_.begin(), s.cell_start_.end() - 1);
    s.sorted_.resize(n);
    s.sorted_ids_.resize(n);
    s.slot_of_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      const std::uint32_t slot = fill[cell_of[i]]++;
      s.sorted_[slot] = s.points_[i];
      s.sorted_ids_[slot] = static_cast<PointId>(i);
      s.slot_of_[i] = slot;
    }
    return s;
  }

  std::size_t size() const noexcept { return points_.size(); }
  bool empty() const noexcept { return points_.empty(); }
  int dimension() const noexcept { return dim_; }
  double cell_size() const noexcept { return cell_; }
  std::size_t cell_count() const noexcept { return cell_start_.empty() ? 0 : cell_start_.size() - 1; }
  const std::vector<Point>& points() const noexcept { return points_; }
  const Point& operator[](PointId i) const { return points_[i]; }

  /// Diagonal of the points' bounding box; no pairwise distance exceeds it.
  double bounding_diagonal() const noexcept {
    return std::sqrt(dist2(lo_, hi_)) * (1.0 + 1e-12);
  }

  /// Linear index of the cell containing location x (clamped to the grid).
  std::size_t cell_of(const Point& x) const noexcept { return linear(cell_coords(x)); }

  /// Ids stored in a cell.
  std::span<const PointId> ids_in_cell(std::size_t cell) const noexcept {
    return {sorted_ids_.data() + cell_start_[cell], cell_start_[cell + 1] - cell_start_[cell]};
  }

  /// Distance from point i to its k-th nearest other point.
  double knn_distance(PointId i, int k) const {
    if (k < 1) throw std::invalid_argument("k must be at least 1");
    if (size() < static_cast<std::size_t>(k) + 1)
      throw InfeasibleError("knn_distance: need at least k+1 points");
    std::vector<double> best;
    best.reserve(static_cast<std::size_t>(k) + 1);
    return std::sqrt(knn_dist2_slot(slot_of_[i], k, best));
  }

  /// k-NN distance of every point, in id order.
  std::vector<double> all_knn_distances(int k) const {
    if (k < 1) throw std::invalid_argument("k must be at least 1");
    if (size() < static_cast<std::size_t>(k) + 1)
      throw InfeasibleError("knn_distance: need at least k+1 points");
    std::vector<double> out(size());
    std::vector<double> best;
    best.reserve(static_cast<std::size_t>(k) + 1);
    for (std::uint32_t slot = 0; slot < sorted_.size(); ++slot)
      out[sorted_ids_[slot]] = std::sqrt(knn_dist2_slot(slot, k, best));
    return out;
  }

  /// Number of points in the closed ball B_r(x).
  std::size_t count_within(const Point& x, double r) const {
    std::size_t count = 0;
    for_each_within(x, r, [&](PointId, double) { ++count; });
    return count;
  }

  /// Like count_within but stops once the count exceeds `cap`.
  std::size_t count_within_capped(const Point& x, double r, std::size_t cap) const {
    if (empty() || r < 0.0) return 0;
    const RadiusTest inside(r);
    std::array<int, 3> a{}, b{};
    cell_range(x, r, a, b);
    std::size_t count = 0;
    for (int z = a[2]; z <= b[2]; ++z)
      for (int y = a[1]; y <= b[1]; ++y) {
        const std::size_t row = linear({0, y, z});
        const std::uint32_t from = cell_start_[row + a[0]], to = cell_start_[row + b[0] + 1];
        for (std::uint32_t s = from; s < to; ++s)
          if (inside(dist2(sorted_[s], x)) && ++count > cap) return count;
      }
    return count;
  }

  /// Calls fn(id, squared distance) for every point in the closed ball B_r(x).
  template <class Fn>
  void for_each_within(const Point& x, double r, Fn&& fn) const {
    if (empty() || r < 0.0) return;
    const RadiusTest inside(r);
    std::array<int, 3> a{}, b{};
    cell_range(x, r, a, b);
    for (int z = a[2]; z <= b[2]; ++z)
      for (int y = a[1]; y <= b[1]; ++y) {
        const std::size_t row = linear({0, y, z});
        const std::uint32_t from = cell_start_[row + a[0]], to = cell_start_[row + b[0] + 1];
        for (std::uint32_t s = from; s < to; ++s) {
          const double q = dist2(sorted_[s], x);
          if (inside(q)) fn(sorted_ids_[s], q);
        }
      }
  }

  /// Calls fn(i, j, squared distance) once for every unordered pair at
  /// distance <= r, with i < j, in no particular order.
  template <class Fn>
  void for_each_pair_within(double r, Fn&& fn) const {
    if (size() < 2 || r < 0.0) return;
    const RadiusTest inside(r);
    std::array<int, 3> a{}, b{};
    for (std::uint32_t s = 0; s < sorted_.size(); ++s) {
      const Point& x = sorted_[s];
      const PointId i = sorted_ids_[s];
      cell_range(x, r, a, b);
      for (int z = a[2]; z <= b[2]; ++z)
        for (int y = a[1]; y <= b[1]; ++y) {
          const std::size_t row = linear({0, y, z});
          const std::uint32_t from = cell_start_[row + a[0]], to = cell_start_[row + b[0] + 1];
          for (std::uint32_t t = from; t < to; ++t) {
            const PointId j = sorted_ids_[t];
            if (j <= i) continue;
            const double q = dist2(sorted_[t], x);
            if (inside(q)) fn(i, j, q);
          }
        }
    }
  }

 private:
  std::array<int, 3> cell_coords(const Point& x) const noexcept {
    std::array<int, 3> c{};
    for (int a = 0; a < 3; ++a) {
      const double v = std::floor((x[a] - lo_[a]) * inv_cell_);
      c[a] = static_cast<int>(std::clamp(v, 0.0, static_cast<double>(dims_[a] - 1)));
    }
    return c;
  }

  std::size_t linear(const std::array<int, 3>& c) const noexcept {
    return (static_cast<std::size_t>(c[2]) * dims_[1] + c[1]) * dims_[0] + c[0];
  }

  void cell_range(const Point& x, double r, std::array<int, 3>& a, std::array<int, 3>& b) const noexcept {
    for (int c = 0; c < 3; ++c) {
      const double lo = std::floor((x[c] - r - lo_[c]) * inv_cell_) - 1.0;
      const double hi = std::floor((x[c] + r - lo_[c]) * inv_cell_) + 1.0;
      a[c] = static_cast<int>(std::clamp(lo, 0.0, static_cast<double>(dims_[c] - 1)));
      b[c] = static_cast<int>(std::clamp(hi, 0.0, static_cast<double>(dims_[c] - 1)));
    }
  }

  // k-th smallest squared distance from the point in `slot` to the others.
  // `best` is scratch, kept sorted ascending with at most k entries.
  double knn_dist2_slot(std::uint32_t slot, int k, std::vector<double>& best) const {
    best.clear();
    const std::size_t kk = static_cast<std::size_t>(k);
    const Point& x = sorted_[slot];
    const auto c = cell_coords(x);
    auto consider = [&](std::size_t cell) {
      for (std::uint32_t t = cell_start_[cell]; t < cell_start_[cell + 1]; ++t) {
        if (t == slot) continue;
        const double q = dist2(sorted_[t], x);
        if (best.size() == kk) {
          if (q >= best.back()) continue;
          best.pop_back();
        }
        best.insert(std::upper_bound(best.begin(), best.end(), q), q);
      }
    };
    const int max_ring = std::max({dims_[0], dims_[1], dims_[2]});
    for (int ring = 0; ring <= max_ring; ++ring) {
      const int z0 = std::max(0, c[2] - ring), z1 = std::min(dims_[2] - 1, c[2] + ring);
      const int y0 = std::max(0, c[1] - ring), y1 = std::min(dims_[1] - 1, c[1] + ring);
      const int x0 = std::max(0, c[0] - ring), x1 = std::min(dims_[0] - 1, c[0] + ring);
      for (int z = z0; z <= z1; ++z)
        for (int y = y0; y <= y1; ++y) {
          const bool shell = std::abs(z - c[2]) == ring || std::abs(y - c[1]) == ring;
          const std::size_t row = linear({0, y, z});
          if (shell) {
            for (int xx = x0; xx <= x1; ++xx) consider(row + xx);
          } else {
            if (c[0] - ring >= 0) consider(row + c[0] - ring);
            if (ring > 0 && c[0] + ring < dims_[0]) consider(row + c[0] + ring);
          }
        }
      if (best.size() == kk) {
        // Distance from x to the nearest cell outside the visited box.
        double gap = INFINITY;
        for (int a = 0; a < dim_; ++a) {
          if (c[a] - ring > 0) gap = std::min(gap, x[a] - (lo_[a] + (c[a] - ring) * cell_));
          if (c[a] + ring < dims_[a] - 1) gap = std::min(gap, lo_[a] + (c[a] + ring + 1) * cell_ - x[a]);
        }
        if (gap == INFINITY) break;
        gap = std::max(0.0, gap - 1e-9 * cell_);
        if (best.back() <= gap * gap) break;
      }
    }
    return best.back();
  }

  int dim_ = 2;
  std::vector<Point> points_;
  std::vector<Point> sorted_;
  std::vector<PointId> sorted_ids_;
  std::vector<std::uint32_t> slot_of_;
  std::vector<std::uint32_t> cell_start_;
  Point lo_{}, hi_{};
  double cell_ = 1.0, inv_cell_ = 1.0;
  std::array<int, 3> dims_{1, 1, 1};
};

}  // namespace geothresh

#endif  // GEOTHRESH_SPATIAL_HPP
