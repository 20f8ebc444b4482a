#ifndef GEOTHRESH_GEOMETRY_HPP
#define GEOTHRESH_GEOMETRY_HPP

// Bounded domains A: the disk and the 3-ball (both centred at the origin) and
// strictly convex polygons given counter-clockwise. Balls are closed and all
// distance comparisons are made on squared distances.

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <variant>
#include <vector>

#include "geothresh/errors.hpp"
#include "geothresh/rng.hpp"

namespace geothresh {

using Point = std::array<double, 3>;  // 2-D points keep z = 0
using Vec2 = std::array<double, 2>;

inline double dist2(const Point& a, const Point& b) noexcept {
  const double dx = a[0] - b[0], dy = a[1] - b[1], dz = a[2] - b[2];
  return dx * dx + dy * dy + dz * dz;
}

inline double cross(const Vec2& a, const Vec2& b) noexcept { return a[0] * b[1] - a[1] * b[0]; }
inline double dot(const Vec2& a, const Vec2& b) noexcept { return a[0] * b[0] + a[1] * b[1]; }

struct Disk {
  double radius;
};

struct Ball3 {
  double radius;
};

struct ConvexPolygon {
  std::vector<Vec2> vertices;  // counter-clockwise, strictly convex
};

enum class DomainKind { disk, ball3, polygon };

/// Relative slack applied by contains() so that points produced by rounding
/// on the boundary are still accepted.
inline constexpr double kContainsSlack = 1e-12;

class Domain {
 public:
  using Shape = std::variant<Disk, Ball3, ConvexPolygon>;

  static Domain disk(double radius) {
    if (!(radius > 0.0) || !std::isfinite(radius))
      throw std::invalid_argument("disk radius must be positive");
    return Domain(Disk{radius});
  }

  static Domain ball3(double radius) {
    if (!(radius > 0.0) || !std::isfinite(radius))
      throw std::invalid_argument("ball radius must be positive");
    return Domain(Ball3{radius});
  }

  static Domain polygon(std::vector<Vec2> vertices) {
    const std::size_t m = vertices.size();
    if (m < 3) throw std::invalid_argument("polygon needs at least 3 vertices");
    for (std::size_t i = 0; i < m; ++i) {
      const Vec2& a = vertices[i];
      const Vec2& b = vertices[(i + 1) % m];
      const Vec2& c = vertices[(i + 2) % m];
      for (double v : a)
        if (!std::isfinite(v)) throw std::invalid_argument("polygon vertex not finite");
      const Vec2 e1{b[0] - a[0], b[1] - a[1]};
      const Vec2 e2{c[0] - b[0], c[1] - b[1]};
      if (!(cross(e1, e2) > 0.0))
        throw std::invalid_argument("polygon must be strictly convex and counter-clockwise");
    }
    // Consecutive left turns can still wind more than once.
    double turning = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const Vec2& a = vertices[i];
      const Vec2& b = vertices[(i + 1) % m];
      const Vec2& c = vertices[(i + 2) % m];
      const Vec2 e1{b[0] - a[0], b[1] - a[1]};
      const Vec2 e2{c[0] - b[0], c[1] - b[1]};
      turning += std::atan2(cross(e1, e2), dot(e1, e2));
    }
    if (std::fabs(turning - 2.0 * std::numbers::pi) > 1e-6)
      throw std::invalid_argument("polygon is not simple");
    return Domain(ConvexPolygon{std::move(vertices)});
  }

  const Shape& shape() const noexcept { return shape_; }

  DomainKind kind() const noexcept { return static_cast<DomainKind>(shape_.index()); }

  int dimension() const noexcept { return kind() == DomainKind::ball3 ? 3 : 2; }

  /// Vertices of a polygon domain; empty for disk/ball.
  const std::vector<Vec2>& vertices() const noexcept {
    static const std::vector<Vec2> none;
    if (const auto* p = std::get_if<ConvexPolygon>(&shape_)) return p->vertices;
    return none;
  }

  /// Radius of a disk/ball domain; 0 for polygons.
  double radius() const noexcept {
    if (const auto* d = std::get_if<Disk>(&shape_)) return d->radius;
    if (const auto* b = std::get_if<Ball3>(&shape_)) return b->radius;
    return 0.0;
  }

  double volume() const noexcept { return volume_; }
  double perimeter() const noexcept { return perimeter_; }
  double diameter() const noexcept { return diameter_; }
  const Point& box_lo() const noexcept { return lo_; }
  const Point& box_hi() const noexcept { return hi_; }

  /// Cumulative fan-triangle areas (polygon sampling), last entry = volume.
  const std::vector<double>& fan_areas() const noexcept { return fan_; }

 private:
  explicit Domain(Shape s) : shape_(std::move(s)) {
    constexpr double pi = std::numbers::pi;
    if (const auto* d = std::get_if<Disk>(&shape_)) {
      const double r = d->radius;
      volume_ = pi * r * r;
      perimeter_ = 2.0 * pi * r;
      diameter_ = 2.0 * r;
      lo_ = {-r, -r, 0.0};
      hi_ = {r, r, 0.0};
    } else if (const auto* b = std::get_if<Ball3>(&shape_)) {
      const double r = b->radius;
      volume_ = 4.0 / 3.0 * pi * r * r * r;
      perimeter_ = 4.0 * pi * r * r;
      diameter_ = 2.0 * r;
      lo_ = {-r, -r, -r};
      hi_ = {r, r, r};
    } else {
      const auto& v = std::get<ConvexPolygon>(shape_).vertices;
      const std::size_t m = v.size();
      double twice_area = 0.0;
      perimeter_ = 0.0;
      lo_ = {v[0][0], v[0][1], 0.0};
      hi_ = lo_;
      for (std::size_t i = 0; i < m; ++i) {
        const Vec2& a = v[i];
        const Vec2& b = v[(i + 1) % m];
        twice_area += cross(a, b);
        perimeter_ += std::hypot(b[0] - a[0], b[1] - a[1]);
        for (int c = 0; c < 2; ++c) {
          lo_[c] = std::min(lo_[c], a[c]);
          hi_[c] = std::max(hi_[c], a[c]);
        }
        for (std::size_t j = i + 1; j < m; ++j)
          diameter_ = std::max(diameter_, std::hypot(v[j][0] - a[0], v[j][1] - a[1]));
      }
      volume_ = 0.5 * twice_area;
      fan_.reserve(m - 2);
      double acc = 0.0;
      for (std::size_t i = 1; i + 1 < m; ++i) {
        const Vec2 e1{v[i][0] - v[0][0], v[i][1] - v[0][1]};
        const Vec2 e2{v[i + 1][0] - v[0][0], v[i + 1][1] - v[0][1]};
        acc += 0.5 * cross(e1, e2);
        fan_.push_back(acc);
      }
    }
  }

  Shape shape_;
  double volume_ = 0.0;
  double perimeter_ = 0.0;
  double diameter_ = 0.0;
  Point lo_{}, hi_{};
  std::vector<double> fan_;
};

inline double volume(const Domain& a) noexcept { return a.volume(); }
inline double perimeter(const Domain& a) noexcept { return a.perimeter(); }

/// |dA| / |A|^(1 - 1/d).
inline double isoperimetric_sigma(const Domain& a) noexcept {
  const double d = a.dimension();
  return a.perimeter() / std::pow(a.volume(), 1.0 - 1.0 / d);
}

inline bool contains(const Domain& a, const Point& x) noexcept {
  switch (a.kind()) {
    case DomainKind::disk: {
      const double r = a.radius();
      return x[0] * x[0] + x[1] * x[1] <= r * r * (1.0 + kContainsSlack);
    }
    case DomainKind::ball3: {
      const double r = a.radius();
      return x[0] * x[0] + x[1] * x[1] + x[2] * x[2] <= r * r * (1.0 + kContainsSlack);
    }
    case DomainKind::polygon: {
      const auto& v = a.vertices();
      const double scale = a.diameter();
      for (std::size_t i = 0; i < v.size(); ++i) {
        const Vec2& p = v[i];
        const Vec2& q = v[(i + 1) % v.size()];
        const Vec2 e{q[0] - p[0], q[1] - p[1]};
        const Vec2 w{x[0] - p[0], x[1] - p[1]};
        if (cross(e, w) < -kContainsSlack * scale * scale) return false;
      }
      return true;
    }
  }
  return false;
}

namespace detail {

inline double segment_distance(const Vec2& p, const Vec2& a, const Vec2& b) noexcept {
  const Vec2 e{b[0] - a[0], b[1] - a[1]};
  const Vec2 w{p[0] - a[0], p[1] - a[1]};
  const double t = std::clamp(dot(w, e) / dot(e, e), 0.0, 1.0);
  return std::hypot(w[0] - t * e[0], w[1] - t * e[1]);
}

}  // namespace detail

/// Euclidean distance from x in A to the boundary of A.
inline double dist_to_boundary(const Domain& a, const Point& x) {
  if (!contains(a, x)) throw InfeasibleError("dist_to_boundary: point outside the domain");
  switch (a.kind()) {
    case DomainKind::disk:
      return std::max(0.0, a.radius() - std::hypot(x[0], x[1]));
    case DomainKind::ball3:
      return std::max(0.0, a.radius() - std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]));
    case DomainKind::polygon: {
      const auto& v = a.vertices();
      double best = INFINITY;
      const Vec2 p{x[0], x[1]};
      for (std::size_t i = 0; i < v.size(); ++i)
        best = std::min(best, detail::segment_distance(p, v[i], v[(i + 1) % v.size()]));
      return best;
    }
  }
  return 0.0;
}

/// Area of the intersection of two disks with radii r1, r2 and centre distance dist.
inline double disk_lens_area(double r1, double r2, double dist) noexcept {
  constexpr double pi = std::numbers::pi;
  if (r1 <= 0.0 || r2 <= 0.0) return 0.0;
  if (dist >= r1 + r2) return 0.0;
  if (dist + r1 <= r2) return pi * r1 * r1;
  if (dist + r2 <= r1) return pi * r2 * r2;
  const double c1 = std::clamp((dist * dist + r1 * r1 - r2 * r2) / (2.0 * dist * r1), -1.0, 1.0);
  const double c2 = std::clamp((dist * dist + r2 * r2 - r1 * r1) / (2.0 * dist * r2), -1.0, 1.0);
  const double k = (-dist + r1 + r2) * (dist + r1 - r2) * (dist - r1 + r2) * (dist + r1 + r2);
  return r1 * r1 * std::acos(c1) + r2 * r2 * std::acos(c2) - 0.5 * std::sqrt(std::max(0.0, k));
}

/// Volume of the intersection of two 3-balls with radii r1, r2 and centre distance dist.
inline double ball_lens_volume(double r1, double r2, double dist) noexcept {
  constexpr double pi = std::numbers::pi;
  if (r1 <= 0.0 || r2 <= 0.0) return 0.0;
  if (dist >= r1 + r2) return 0.0;
  if (dist + r1 <= r2) return 4.0 / 3.0 * pi * r1 * r1 * r1;
  if (dist + r2 <= r1) return 4.0 / 3.0 * pi * r2 * r2 * r2;
  const double s = r1 + r2 - dist;
  return pi * s * s *
         (dist * dist + 2.0 * dist * (r1 + r2) - 3.0 * (r1 - r2) * (r1 - r2)) / (12.0 * dist);
}

/// Area of B_r(c) intersected with a counter-clockwise convex polygon.
///
/// Sums, over polygon edges, the signed area of the disk restricted to the
/// triangle (c, a, b): sub-segments inside the circle contribute their
/// shoelace term, sub-segments outside contribute a circular sector.
inline double disk_polygon_area(const Vec2& c, double r, const std::vector<Vec2>& verts) noexcept {
  if (!(r > 0.0)) return 0.0;
  const double r2 = r * r;
  double area = 0.0;
  const std::size_t m = verts.size();
  for (std::size_t i = 0; i < m; ++i) {
    const Vec2 a{verts[i][0] - c[0], verts[i][1] - c[1]};
    const Vec2 b{verts[(i + 1) % m][0] - c[0], verts[(i + 1) % m][1] - c[1]};
    const Vec2 e{b[0] - a[0], b[1] - a[1]};
    const double qa = dot(e, e);
    const double qb = 2.0 * dot(a, e);
    const double qc = dot(a, a) - r2;
    double ts[4] = {0.0, 0.0, 0.0, 1.0};
    int nt = 1;
    const double disc = qb * qb - 4.0 * qa * qc;
    if (disc > 0.0) {
      const double sq = std::sqrt(disc);
      // Numerically stable roots.
      const double q = -0.5 * (qb + std::copysign(sq, qb));
      double t1 = q / qa;
      double t2 = q != 0.0 ? qc / q : t1;
      if (t1 > t2) std::swap(t1, t2);
      if (t1 > 0.0 && t1 < 1.0) ts[nt++] = t1;
      if (t2 > 0.0 && t2 < 1.0) ts[nt++] = t2;
    }
    ts[nt++] = 1.0;
    for (int j = 0; j + 1 < nt; ++j) {
      const Vec2 p{a[0] + ts[j] * e[0], a[1] + ts[j] * e[1]};
      const Vec2 q{a[0] + ts[j + 1] * e[0], a[1] + ts[j + 1] * e[1]};
      const Vec2 mid{0.5 * (p[0] + q[0]), 0.5 * (p[1] + q[1])};
      if (dot(mid, mid) <= r2) {
        area += 0.5 * cross(p, q);
      } else {
        area += 0.5 * r2 * std::atan2(cross(p, q), dot(p, q));
      }
    }
  }
  return std::max(0.0, area);
}

/// Lebesgue measure of B_r(x) intersected with A.
inline double ball_intersection_measure(const Domain& a, const Point& x, double r) {
  if (!(r > 0.0)) return 0.0;
  switch (a.kind()) {
    case DomainKind::disk:
      return disk_lens_area(r, a.radius(), std::hypot(x[0], x[1]));
    case DomainKind::ball3:
      return ball_lens_volume(r, a.radius(),
                              std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]));
    case DomainKind::polygon:
      return disk_polygon_area(Vec2{x[0], x[1]}, r, a.vertices());
  }
  return 0.0;
}

/// Uniform point in A. Disk/ball by radial inversion, polygon by picking a
/// fan triangle proportionally to area and folding a unit-square sample.
inline Point sample_uniform(const Domain& a, Rng& rng) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  switch (a.kind()) {
    case DomainKind::disk: {
      const double rho = a.radius() * std::sqrt(rng.uniform());
      const double phi = two_pi * rng.uniform();
      return {rho * std::cos(phi), rho * std::sin(phi), 0.0};
    }
    case DomainKind::ball3: {
      const double rho = a.radius() * std::cbrt(rng.uniform());
      const double z = 1.0 - 2.0 * rng.uniform();
      const double phi = two_pi * rng.uniform();
      const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
      return {rho * s * std::cos(phi), rho * s * std::sin(phi), rho * z};
    }
    case DomainKind::polygon: {
      const auto& v = a.vertices();
      const auto& fan = a.fan_areas();
      const double pick = rng.uniform() * fan.back();
      std::size_t t = static_cast<std::size_t>(
          std::upper_bound(fan.begin(), fan.end(), pick) - fan.begin());
      t = std::min(t, fan.size() - 1);
      double u = rng.uniform();
      double w = rng.uniform();
      if (u + w > 1.0) {
        u = 1.0 - u;
        w = 1.0 - w;
      }
      const Vec2& p0 = v[0];
      const Vec2& p1 = v[t + 1];
      const Vec2& p2 = v[t + 2];
      return {p0[0] + u * (p1[0] - p0[0]) + w * (p2[0] - p0[0]),
              p0[1] + u * (p1[1] - p0[1]) + w * (p2[1] - p0[1]), 0.0};
    }
  }
  return {};
}

/// Smallest interior angle of a polygon (pi for disk/ball boundaries).
inline double min_corner_angle(const Domain& a) noexcept {
  if (a.kind() != DomainKind::polygon) return std::numbers::pi;
  const auto& v = a.vertices();
  const std::size_t m = v.size();
  double best = std::numbers::pi;
  for (std::size_t i = 0; i < m; ++i) {
    const Vec2& prev = v[(i + m - 1) % m];
    const Vec2& cur = v[i];
    const Vec2& next = v[(i + 1) % m];
    const Vec2 e1{prev[0] - cur[0], prev[1] - cur[1]};
    const Vec2 e2{next[0] - cur[0], next[1] - cur[1]};
    best = std::min(best, std::atan2(std::fabs(cross(e1, e2)), dot(e1, e2)));
  }
  return best;
}

inline std::string to_string(DomainKind k) {
  switch (k) {
    case DomainKind::disk: return "disk";
    case DomainKind::ball3: return "ball3";
    case DomainKind::polygon: return "polygon";
  }
  return "?";
}

}  // namespace geothresh

#endif  // GEOTHRESH_GEOMETRY_HPP
