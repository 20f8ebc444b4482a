#ifndef GEOTHRESH_QUADRATURE_HPP
#define GEOTHRESH_QUADRATURE_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <vector>

namespace geothresh {

/// Nodes and weights of the N-point Gauss-Legendre rule on [-1, 1].
template <int N>
struct GaussLegendre {
  std::array<double, N> x{};
  std::array<double, N> w{};

  GaussLegendre() {
    for (int i = 0; i < N; ++i) {
      double z = std::cos(std::numbers::pi * (i + 0.75) / (N + 0.5));
      double dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = 0.0;
        for (int j = 1; j <= N; ++j) {
          const double p2 = p1;
          p1 = p0;
          p0 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p2) / j;
        }
        dp = N * (z * p0 - p1) / (z * z - 1.0);
        const double dz = p0 / dp;
        z -= dz;
        if (std::fabs(dz) < 1e-16) break;
      }
      x[i] = z;
      w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
    }
  }

  static const GaussLegendre& get() {
    static const GaussLegendre rule;
    return rule;
  }

  /// Integral of f over [a, b].
  template <class F>
  double integrate(F&& f, double a, double b) const {
    if (!(b > a)) return 0.0;
    const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
    double s = 0.0;
    for (int i = 0; i < N; ++i) s += w[i] * f(mid + half * x[i]);
    return s * half;
  }
};

/// Sorts, clamps to [a, b] and deduplicates breakpoints, always keeping a and b.
inline std::vector<double> make_breaks(std::vector<double> pts, double a, double b) {
  for (double& p : pts) p = std::clamp(p, a, b);
  pts.push_back(a);
  pts.push_back(b);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

/// Composite Gauss-Legendre over consecutive breakpoints.
template <int N, class F>
double integrate_panels(F&& f, const std::vector<double>& breaks) {
  const auto& rule = GaussLegendre<N>::get();
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) s += rule.integrate(f, breaks[i], breaks[i + 1]);
  return s;
}

}  // namespace geothresh

#endif  // GEOTHRESH_QUADRATURE_HPP
