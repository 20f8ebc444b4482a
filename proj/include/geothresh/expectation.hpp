#ifndef GEOTHRESH_EXPECTATION_HPP
#define GEOTHRESH_EXPECTATION_HPP

// E[xi_{n,r}] = n * integral over A of p_{n,r}(x) nu(dx), where
// p_{n,r}(x) = P[Poisson(n nu(B_r(x))) <= k-1], and the radius r_n(beta)
// solving E[xi_{n,r}] = exp(-beta).
//
// The integrand is flat in the interior (for the uniform density) and varies
// fast in the boundary layer dist(x, dA) < r, so integration is stratified by
// boundary distance with panels at depths r 2^{-j}, j = 0..20. The panel
// layout moves continuously with r, which keeps r -> E[xi] continuous for the
// root solver.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "geothresh/density.hpp"
#include "geothresh/errors.hpp"
#include "geothresh/geometry.hpp"
#include "geothresh/quadrature.hpp"
#include "geothresh/theory.hpp"

namespace geothresh {

struct QuadratureResult {
  double value = 0.0;
  double abs_error = 0.0;
};

/// P[Poisson(lambda) <= k-1].
inline double poisson_cdf_below(double lambda, int k) noexcept {
  if (lambda <= 0.0) return 1.0;
  double term = std::exp(-lambda), sum = term;
  for (int j = 1; j < k; ++j) {
    term *= lambda / j;
    sum += term;
  }
  return std::min(sum, 1.0);
}

namespace detail {

inline constexpr int kBoundaryLevels = 20;

inline void add_depth_breaks(std::vector<double>& breaks, double r, double offset, double sign) {
  double depth = r;
  for (int j = 0; j <= kBoundaryLevels; ++j, depth *= 0.5) breaks.push_back(offset + sign * depth);
}

// Disk or ball: the integrand depends on |x| only.
template <int N>
double expected_isolated_radial(const Density& f, double n, double r, int k) {
  const Domain& a = f.domain();
  const int d = a.dimension();
  const double R = a.radius();
  const double shell = d == 2 ? 2.0 * std::numbers::pi : 4.0 * std::numbers::pi;
  std::vector<double> cuts;
  add_depth_breaks(cuts, r, R, -1.0);
  cuts.push_back(r - R);
  if (f.kind() != DensityKind::uniform) {
    const double inner = std::max(0.0, R - r);
    for (int i = 1; i < 16; ++i) cuts.push_back(inner * i / 16.0);
  }
  const auto breaks = make_breaks(std::move(cuts), 0.0, R);
  auto g = [&](double rho) {
    const Point x{rho, 0.0, 0.0};
    const double fx = f.kind() == DensityKind::uniform ? f.c0() : f.c0() + f.c2() * rho * rho;
    return poisson_cdf_below(n * ball_mass(f, x, r), k) * fx * shell * std::pow(rho, d - 1);
  };
  return n * integrate_panels<N>(g, breaks);
}

inline std::vector<Vec2> clip_halfplane(const std::vector<Vec2>& poly, const Vec2& normal, double offset) {
  // Keeps {x : dot(normal, x) + offset >= 0}.
  std::vector<Vec2> out;
  const std::size_t m = poly.size();
  for (std::size_t i = 0; i < m; ++i) {
    const Vec2& p = poly[i];
    const Vec2& q = poly[(i + 1) % m];
    const double fp = dot(normal, p) + offset, fq = dot(normal, q) + offset;
    if (fp >= 0.0) out.push_back(p);
    if ((fp >= 0.0) != (fq >= 0.0)) {
      const double t = fp / (fp - fq);
      out.push_back({p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])});
    }
  }
  return out;
}

inline double polygon_area(const std::vector<Vec2>& v) noexcept {
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) s += cross(v[i], v[(i + 1) % v.size()]);
  return 0.5 * s;
}

struct EdgeFrame {
  Vec2 origin, tangent, normal;  // normal points into the polygon
  double offset;                 // signed distance to the edge line = dot(normal, x) + offset
};

inline std::vector<EdgeFrame> edge_frames(const std::vector<Vec2>& v) {
  std::vector<EdgeFrame> frames;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Vec2& p = v[i];
    const Vec2& q = v[(i + 1) % v.size()];
    const double len = std::hypot(q[0] - p[0], q[1] - p[1]);
    const Vec2 t{(q[0] - p[0]) / len, (q[1] - p[1]) / len};
    const Vec2 nrm{-t[1], t[0]};
    frames.push_back({p, t, nrm, -dot(nrm, p)});
  }
  return frames;
}

// Uniform density on a convex polygon. The region {dist >= r} contributes its
// exact area times the constant interior integrand. The layer is split into
// the edge cells {x : edge i is the nearest edge line, dist < r}; each cell
// is integrated in (t, s) = (position along edge i, distance to edge i), with
// t-panels split wherever the disk starts touching another edge line or a
// vertex (the kinks of the intersection area).
template <int N>
double expected_isolated_polygon(const Density& f, double n, double r, int k) {
  const Domain& a = f.domain();
  const auto& verts = a.vertices();
  const double f0 = f.c0();
  const auto frames = edge_frames(verts);
  const std::size_t m = verts.size();

  auto integrand = [&](const Vec2& x) {
    return poisson_cdf_below(n * f0 * disk_polygon_area(x, r, verts), k);
  };

  std::vector<Vec2> inner = verts;
  for (const auto& e : frames) {
    if (inner.size() < 3) break;
    inner = clip_halfplane(inner, e.normal, e.offset - r);
  }
  const double inner_area = inner.size() >= 3 ? polygon_area(inner) : 0.0;
  double total = inner_area * poisson_cdf_below(n * f0 * std::numbers::pi * r * r, k);

  const auto& rule = GaussLegendre<N>::get();
  for (std::size_t i = 0; i < m; ++i) {
    const EdgeFrame& ei = frames[i];
    std::vector<Vec2> cell = verts;
    for (std::size_t j = 0; j < m && cell.size() >= 3; ++j) {
      if (j == i) continue;
      const EdgeFrame& ej = frames[j];
      cell = clip_halfplane(cell, {ej.normal[0] - ei.normal[0], ej.normal[1] - ei.normal[1]},
                            ej.offset - ei.offset);
    }
    if (cell.size() >= 3) cell = clip_halfplane(cell, {-ei.normal[0], -ei.normal[1]}, r - ei.offset);
    if (cell.size() < 3 || polygon_area(cell) <= 0.0) continue;

    auto local = [&](const Vec2& x) {
      const Vec2 w{x[0] - ei.origin[0], x[1] - ei.origin[1]};
      return Vec2{dot(w, ei.tangent), dot(w, ei.normal)};
    };
    std::vector<Vec2> lc;
    for (const auto& x : cell) lc.push_back(local(x));
    double s_max = 0.0;
    for (const auto& p : lc) s_max = std::max(s_max, p[1]);

    std::vector<Vec2> lv;
    for (const auto& v : verts) lv.push_back(local(v));
    // Other edge lines in local coordinates: dist_j(t, s) = c0 + ct t + cs s.
    struct Line {
      double c0, ct, cs;
    };
    std::vector<Line> lines;
    for (std::size_t j = 0; j < m; ++j) {
      if (j == i) continue;
      const EdgeFrame& ej = frames[j];
      lines.push_back({dot(ej.normal, ei.origin) + ej.offset, dot(ej.normal, ei.tangent),
                       dot(ej.normal, ei.normal)});
    }

    std::vector<double> s_cuts;
    add_depth_breaks(s_cuts, r, 0.0, 1.0);
    for (const auto& p : lc) s_cuts.push_back(p[1]);
    for (const auto& p : lv) {
      s_cuts.push_back(p[1] - r);
      s_cuts.push_back(p[1] + r);
    }
    for (const auto& ln : lines)
      if (ln.cs != 0.0) {
        // Where the line dist_j = r crosses the cell boundary the t-panel
        // structure changes; approximate by the s-range of that line within
        // the cell's t-extent.
        double tmin = INFINITY, tmax = -INFINITY;
        for (const auto& p : lc) {
          tmin = std::min(tmin, p[0]);
          tmax = std::max(tmax, p[0]);
        }
        s_cuts.push_back((r - ln.c0 - ln.ct * tmin) / ln.cs);
        s_cuts.push_back((r - ln.c0 - ln.ct * tmax) / ln.cs);
      }
    auto s_breaks = make_breaks(std::move(s_cuts), 0.0, s_max);
    {
      std::vector<double> refined;
      for (std::size_t b = 0; b + 1 < s_breaks.size(); ++b) {
        refined.push_back(s_breaks[b]);
        refined.push_back(0.5 * (s_breaks[b] + s_breaks[b + 1]));
      }
      refined.push_back(s_breaks.back());
      s_breaks = std::move(refined);
    }

    // Cross-section of the (convex) cell at height s.
    auto t_range = [&](double s, double& lo, double& hi) {
      lo = INFINITY;
      hi = -INFINITY;
      const std::size_t q = lc.size();
      for (std::size_t e = 0; e < q; ++e) {
        const Vec2& p0 = lc[e];
        const Vec2& p1 = lc[(e + 1) % q];
        const double smin = std::min(p0[1], p1[1]), smax = std::max(p0[1], p1[1]);
        if (s < smin || s > smax) continue;
        if (p1[1] == p0[1]) {
          lo = std::min({lo, p0[0], p1[0]});
          hi = std::max({hi, p0[0], p1[0]});
        } else {
          const double t = p0[0] + (s - p0[1]) / (p1[1] - p0[1]) * (p1[0] - p0[0]);
          lo = std::min(lo, t);
          hi = std::max(hi, t);
        }
      }
    };

    auto cross_section = [&](double s) {
      double lo, hi;
      t_range(s, lo, hi);
      if (!(hi > lo)) return 0.0;
      std::vector<double> t_cuts;
      for (const auto& ln : lines)
        if (ln.ct != 0.0) t_cuts.push_back((r - ln.c0 - ln.cs * s) / ln.ct);
      for (const auto& p : lv) {
        const double h = r * r - (s - p[1]) * (s - p[1]);
        if (h > 0.0) {
          const double w = std::sqrt(h);
          t_cuts.push_back(p[0] - w);
          t_cuts.push_back(p[0] + w);
        }
      }
      const auto t_breaks = make_breaks(std::move(t_cuts), lo, hi);
      double acc = 0.0;
      for (std::size_t b = 0; b + 1 < t_breaks.size(); ++b)
        acc += rule.integrate(
            [&](double t) {
              const Vec2 x{ei.origin[0] + t * ei.tangent[0] + s * ei.normal[0],
                           ei.origin[1] + t * ei.tangent[1] + s * ei.normal[1]};
              return integrand(x);
            },
            t_breaks[b], t_breaks[b + 1]);
      return acc;
    };
    for (std::size_t b = 0; b + 1 < s_breaks.size(); ++b)
      total += rule.integrate(cross_section, s_breaks[b], s_breaks[b + 1]);
  }
  return n * f0 * total;
}

template <int N>
double expected_isolated_value(const Density& f, double n, double r, int k) {
  if (f.domain().kind() == DomainKind::polygon) {
    if (f.kind() != DensityKind::uniform)
      throw std::invalid_argument("polygon domains carry the uniform density only");
    return expected_isolated_polygon<N>(f, n, r, k);
  }
  return expected_isolated_radial<N>(f, n, r, k);
}

}  // namespace detail

/// E[xi_{n,r}] with an error estimate (difference to a rule of half the order
/// on the same panels).
inline QuadratureResult expected_isolated(const Density& f, double n, double r, int k) {
  if (!(r >= 0.0)) throw std::invalid_argument("radius must be nonnegative");
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  if (r == 0.0) return {n, 0.0};  // every ball is a null set
  const double fine = detail::expected_isolated_value<20>(f, n, r, k);
  const double coarse = detail::expected_isolated_value<10>(f, n, r, k);
  return {fine, std::fabs(fine - coarse)};
}

/// Smallest fraction of a small ball centred in A that A can cover
/// (corner angle / 2 pi for polygons, the r = R boundary lens for disk/ball).
inline double min_ball_fraction(const Domain& a) {
  switch (a.kind()) {
    case DomainKind::polygon: return min_corner_angle(a) / (2.0 * std::numbers::pi);
    case DomainKind::disk: {
      const double R = a.radius();
      return disk_lens_area(R, R, R) / (std::numbers::pi * R * R);
    }
    case DomainKind::ball3: {
      const double R = a.radius();
      return ball_lens_volume(R, R, R) / (4.0 / 3.0 * std::numbers::pi * R * R * R);
    }
  }
  return 0.0;
}

inline constexpr double kSolveTolerance = 1e-9;

/// r_n(beta): the unique r with E[xi_{n,r}] = exp(-beta), by bisection on the
/// nonincreasing map r -> E[xi_{n,r}] until |E - exp(-beta)| <= 1e-9.
/// Throws SolverError when no bracket exists (n too small for beta).
inline double solve_rn(const Density& f, double n, int k, double beta) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  const double target = std::exp(-beta);
  auto value = [&](double r) {
    return r == 0.0 ? n : detail::expected_isolated_value<20>(f, n, r, k);
  };
  if (!(n > target)) throw SolverError("solve_rn: no bracket, E[xi] at r = 0 is n <= exp(-beta)");
  const Domain& a = f.domain();
  const int d = a.dimension();
  const double delta0 = 0.5 * f.f0() * unit_ball_volume(d) * min_ball_fraction(a);
  double hi = std::pow(2.0 / delta0 * std::log(std::max(n, 3.0)) / n, 1.0 / d);
  hi = std::min(hi, a.diameter());
  double lo = 0.0;
  while (value(hi) > target) {
    if (hi >= a.diameter())
      throw SolverError("solve_rn: no bracket, E[xi] stays above exp(-beta) for all r");
    lo = hi;
    hi = std::min(2.0 * hi, a.diameter());
  }
  for (int it = 0; it < 400; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double e = value(mid);
    if (std::fabs(e - target) <= kSolveTolerance) return mid;
    if (mid <= lo || mid >= hi) break;
    (e > target ? lo : hi) = mid;
  }
  throw SolverError("solve_rn: bisection did not reach the tolerance");
}

}  // namespace geothresh

#endif  // GEOTHRESH_EXPECTATION_HPP
