#ifndef GEOTHRESH_THEORY_HPP
#define GEOTHRESH_THEORY_HPP

// Closed-form side of the problem: unit-ball volumes, the boundary constant
// c_{d,k}, centring sequences, finite-n corrected limit laws for the uniform
// case, the median-centred Gumbel laws for non-uniform densities, and the
// first-order (strong law) constants.

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "geothresh/density.hpp"
#include "geothresh/errors.hpp"
#include "geothresh/geometry.hpp"

namespace geothresh {

/// Sentinel for "n = infinity" in limit_cdf: returns the pure limit law.
inline constexpr double kInfiniteN = std::numeric_limits<double>::infinity();

/// Volume of the unit ball in R^d, pi^(d/2) / Gamma(1 + d/2).
inline double unit_ball_volume(int d) {
  if (d < 1) throw std::invalid_argument("dimension must be positive");
  constexpr double pi = std::numbers::pi;
  switch (d) {
    case 1: return 2.0;
    case 2: return pi;
    case 3: return 4.0 * pi / 3.0;
    default: return std::pow(pi, d / 2.0) / std::tgamma(1.0 + d / 2.0);
  }
}

/// c_{d,k} = theta_{d-1}^{-1} theta_d^{1-1/d} (2-2/d)^{k-2+1/d} 2^{1-k} / (k-1)!
inline double cdk(int d, int k) {
  if (d < 2 || k < 1) throw std::invalid_argument("cdk needs d >= 2 and k >= 1");
  const double dd = d;
  return std::pow(unit_ball_volume(d), 1.0 - 1.0 / dd) / unit_ball_volume(d - 1) *
         std::pow(2.0 - 2.0 / dd, k - 2.0 + 1.0 / dd) * std::pow(2.0, 1.0 - k) /
         std::tgamma(static_cast<double>(k));
}

/// Whether the log log n term enters the centring (everything but d=2, k=1).
inline bool has_loglog_term(int d, int k) noexcept { return d >= 3 || k >= 2; }

/// a_n = (2-2/d) log n + (2k-4+2/d) 1{d>=3 or k>=2} log log n.
inline double centring_offset(int d, int k, double n) {
  const double dd = d;
  double a = (2.0 - 2.0 / dd) * std::log(n);
  if (has_loglog_term(d, k)) a += (2.0 * k - 4.0 + 2.0 / dd) * std::log(std::log(n));
  return a;
}

/// Radius r with f0 n theta_d r^d = max(a_n + beta, 0) (uniform case).
inline double centring_radius(int d, int k, double n, double f0, double beta) {
  if (!(n > 1.0)) throw std::invalid_argument("centring_radius needs n > 1");
  const double rhs = std::max(centring_offset(d, k, n) + beta, 0.0);
  return std::pow(rhs / (f0 * n * unit_ball_volume(d)), 1.0 / d);
}

/// n theta_d f0 v^d - a_n: the explicitly centred statistic.
inline double explicit_transform(int d, int k, double n, double f0, double v) {
  return n * unit_ball_volume(d) * f0 * std::pow(v, d) - centring_offset(d, k, n);
}

enum class LimitFamily { gumbel_scale1, tcev, gumbel_scale2, nonuniform_gumbel };

inline std::string to_string(LimitFamily f) {
  switch (f) {
    case LimitFamily::gumbel_scale1: return "gumbel-scale-1";
    case LimitFamily::tcev: return "tcev";
    case LimitFamily::gumbel_scale2: return "gumbel-scale-2";
    case LimitFamily::nonuniform_gumbel: return "nonuniform-gumbel";
  }
  return "?";
}

enum class Centring { explicit_uniform, empirical_median };

/// Finite-n correction applied by limit_cdf. `refined` adds, for d >= 3, the
/// next-order 1/log n term of the expected isolated-vertex count (as an
/// exponential factor, so the law stays a distribution function).
enum class Correction { standard, refined };

struct LimitSpec {
  int d = 2;
  int k = 1;
  double sigma_A = 0.0;
  double f0 = 0.0;
  double f1 = 0.0;
  LimitFamily family = LimitFamily::gumbel_scale1;
  Regime regime = Regime::critical;
  double alpha = 0.0;            // scale of the median-centred law
  double centring_log = 0.0;     // coefficient of log n in a_n
  double centring_loglog = 0.0;  // coefficient of log log n in a_n
  bool law_available = true;     // false in the critical non-uniform regime
};

/// Family for the explicitly centred uniform case, by (d, k).
inline LimitFamily uniform_family(int d, int k) noexcept {
  if (d == 2 && k == 1) return LimitFamily::gumbel_scale1;
  if (d == 2 && k == 2) return LimitFamily::tcev;
  return LimitFamily::gumbel_scale2;
}

inline LimitSpec make_limit_spec(const Density& f, int k, Centring centring) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  const Domain& a = f.domain();
  LimitSpec s;
  s.d = a.dimension();
  s.k = k;
  s.sigma_A = isoperimetric_sigma(a);
  s.f0 = f.f0();
  s.f1 = f.f1();
  s.regime = regime(f, s.d);
  s.centring_log = 2.0 - 2.0 / s.d;
  s.centring_loglog = has_loglog_term(s.d, k) ? 2.0 * k - 4.0 + 2.0 / s.d : 0.0;
  const double theta = unit_ball_volume(s.d);
  if (centring == Centring::explicit_uniform) {
    if (f.kind() != DensityKind::uniform)
      throw InfeasibleError("explicit centring requires the uniform density");
    s.family = uniform_family(s.d, k);
    return s;
  }
  s.family = LimitFamily::nonuniform_gumbel;
  switch (s.regime) {
    case Regime::interior_dominated: s.alpha = 1.0 / (theta * s.f0); break;
    case Regime::boundary_dominated: s.alpha = 2.0 / (theta * s.f1); break;
    case Regime::critical: s.law_available = false; break;
  }
  return s;
}

/// Asymptotic expansion of E[xi_{n, r_n(beta)}] at the explicit centring
/// radius (uniform case), to the order used by the corrected limit laws.
/// n = kInfiniteN gives the limiting value.
inline double isolated_expansion(const LimitSpec& s, double beta, double n,
                                 Correction corr = Correction::standard) {
  const double sqrt_pi = std::sqrt(std::numbers::pi);
  const double eb = std::exp(-beta), eb2 = std::exp(-beta / 2.0);
  const bool finite = std::isfinite(n);
  const double ln = finite ? std::log(n) : 0.0;
  const double lln = finite ? std::log(ln) : 0.0;
  switch (s.family) {
    case LimitFamily::gumbel_scale1:
      return eb + (finite ? s.sigma_A * eb2 * sqrt_pi / 2.0 / std::sqrt(ln) : 0.0);
    case LimitFamily::tcev:
      return eb + s.sigma_A * eb2 * sqrt_pi / 4.0 * (1.0 + (finite ? lln / (2.0 * ln) : 0.0)) +
             (finite ? eb * lln / ln : 0.0);
    case LimitFamily::gumbel_scale2: {
      // Assembled in log space so extreme beta cannot produce inf * 0.
      const double dd = s.d;
      double log_mean = std::log(cdk(s.d, s.k) * s.sigma_A) - beta / 2.0;
      if (!finite) return std::exp(log_mean);
      const double b = s.k - 2.0 + 1.0 / dd;
      log_mean += std::log1p(b * b * lln / ((1.0 - 1.0 / dd) * ln));
      if (corr == Correction::refined && s.d >= 3) {
        // Next-order term applied as exp(t) rather than 1 + t: equal to first
        // order, positive, and decreasing in beta whenever the slope
        // b / ((2-2/d) log n) is below 1/2.
        const double slope = b / ((2.0 - 2.0 / dd) * ln);
        if (!(slope < 0.5))
          throw std::invalid_argument("refined correction needs log n > (k-2+1/d)/(1-1/d)");
        log_mean += slope * beta + (4.0 * s.k - 4.0) / ((2.0 - 2.0 / dd) * ln);
      }
      return std::exp(log_mean);
    }
    case LimitFamily::nonuniform_gumbel: break;
  }
  throw std::invalid_argument("isolated_expansion applies to the uniform families only");
}

/// P[alpha (Gu + log log 2) <= z]: Gumbel with scale alpha and median 0.
inline double nonuniform_limit_cdf(double alpha, double z) {
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
  return std::exp(-std::exp(-(z / alpha - std::log(std::log(2.0)))));
}

inline double nonuniform_limit_cdf(const LimitSpec& s, double z) {
  if (!s.law_available)
    throw InfeasibleError("critical regime f1 = f0(2-2/d): only tightness holds, no limit law");
  if (s.family != LimitFamily::nonuniform_gumbel)
    throw std::invalid_argument("spec is not median-centred");
  return nonuniform_limit_cdf(s.alpha, z);
}

/// Limit law of the centred statistic at level beta, with the finite-n
/// multiplicative correction (n > e), or the pure limit for n = kInfiniteN.
/// Median-centred specs are forwarded to nonuniform_limit_cdf.
inline double limit_cdf(const LimitSpec& s, double beta, double n = kInfiniteN,
                        Correction corr = Correction::standard) {
  if (s.family == LimitFamily::nonuniform_gumbel) return nonuniform_limit_cdf(s, beta);
  if (std::isfinite(n) && !(n > std::numbers::e))
    throw std::invalid_argument("limit_cdf needs n > e");
  if (beta == -std::numeric_limits<double>::infinity()) return 0.0;
  if (beta == std::numeric_limits<double>::infinity()) return 1.0;
  const double mean = std::max(0.0, isolated_expansion(s, beta, n, corr));
  return std::clamp(std::exp(-mean), 0.0, 1.0);
}

/// First-order constant: lim theta_d n M^d / log n.
///
/// Disk/ball: max(1/f0, (2-2/d)/f1). Convex polygon (d = 2, uniform):
/// theta_2 * max over faces of D/(f_face rho_face d), with the interior
/// (D = 2, rho = pi), edges (D = 1, rho = pi/2) and corners (D = 0).
inline double slln_constant(const Density& f) {
  const Domain& a = f.domain();
  const int d = a.dimension();
  if (a.kind() != DomainKind::polygon) return std::max(1.0 / f.f0(), (2.0 - 2.0 / d) / f.f1());
  constexpr double pi = std::numbers::pi;
  const double interior = 2.0 / (f.f0() * pi * 2.0);
  const double edge = 1.0 / (f.f1() * (pi / 2.0) * 2.0);
  return pi * std::max(interior, edge);
}

}  // namespace geothresh

#endif  // GEOTHRESH_THEORY_HPP
