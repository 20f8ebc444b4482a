#ifndef GEOTHRESH_DENSITY_HPP
#define GEOTHRESH_DENSITY_HPP

// Probability densities on a Domain: the uniform density, and the radial
// polynomial f(x) = c0 + c2 |x|^2 on disk/ball domains (centred at the origin).

#include <cmath>
#include <numbers>
#include <string>

#include "geothresh/errors.hpp"
#include "geothresh/geometry.hpp"
#include "geothresh/quadrature.hpp"
#include "geothresh/rng.hpp"

namespace geothresh {

enum class DensityKind { uniform, radial };

enum class Regime { interior_dominated, boundary_dominated, critical };

inline std::string to_string(Regime r) {
  switch (r) {
    case Regime::interior_dominated: return "interior-dominated";
    case Regime::boundary_dominated: return "boundary-dominated";
    case Regime::critical: return "critical";
  }
  return "?";
}

inline constexpr double kNormalisationTolerance = 1e-9;
inline constexpr long kMaxConsecutiveRejections = 1'000'000;

class Density {
 public:
  static Density uniform(const Domain& a) {
    Density f(a);
    f.kind_ = DensityKind::uniform;
    f.c0_ = 1.0 / a.volume();
    f.c2_ = 0.0;
    f.f0_ = f.f1_ = f.fmax_ = f.c0_;
    f.mass_ = 1.0;
    return f;
  }

  /// f(x) = c0 + c2 |x|^2; must integrate to 1 within kNormalisationTolerance.
  static Density radial(const Domain& a, double c0, double c2) {
    if (a.kind() == DomainKind::polygon)
      throw std::invalid_argument("radial density requires a disk or ball domain");
    if (!std::isfinite(c0) || !std::isfinite(c2))
      throw std::invalid_argument("radial density coefficients must be finite");
    Density f(a);
    f.kind_ = DensityKind::radial;
    f.c0_ = c0;
    f.c2_ = c2;
    const double r2 = a.radius() * a.radius();
    const double centre = c0, rim = c0 + c2 * r2;
    f.f0_ = std::min(centre, rim);
    f.fmax_ = std::max(centre, rim);
    f.f1_ = rim;
    if (!(f.f0_ > 0.0)) throw std::invalid_argument("radial density must be positive on the domain");
    f.mass_ = radial_mass(a, c0, c2);
    if (std::fabs(f.mass_ - 1.0) > kNormalisationTolerance)
      throw std::invalid_argument("radial density does not integrate to 1 (mass " +
                                  std::to_string(f.mass_) + ")");
    return f;
  }

  /// Radial density with c2 = shape * c0 and c0 chosen to normalise.
  static Density radial_normalised(const Domain& a, double shape) {
    if (a.kind() == DomainKind::polygon)
      throw std::invalid_argument("radial density requires a disk or ball domain");
    const double unit = radial_mass(a, 1.0, shape);
    return radial(a, 1.0 / unit, shape / unit);
  }

  DensityKind kind() const noexcept { return kind_; }
  const Domain& domain() const noexcept { return domain_; }
  double c0() const noexcept { return c0_; }
  double c2() const noexcept { return c2_; }
  double f0() const noexcept { return f0_; }
  double f1() const noexcept { return f1_; }
  double fmax() const noexcept { return fmax_; }
  /// Integral of f over A (the normalisation check value).
  double mass() const noexcept { return mass_; }

  /// Integral of c0 + c2 |x|^2 over a disk/ball of radius R centred at 0.
  static double radial_mass(const Domain& a, double c0, double c2) noexcept {
    const int d = a.dimension();
    const double R = a.radius();
    const double theta = d == 2 ? std::numbers::pi : 4.0 / 3.0 * std::numbers::pi;
    const double rd = std::pow(R, d);
    return c0 * theta * rd + c2 * d * theta * rd * R * R / (d + 2.0);
  }

 private:
  explicit Density(const Domain& a) : domain_(a) {}

  Domain domain_;
  DensityKind kind_ = DensityKind::uniform;
  double c0_ = 0.0, c2_ = 0.0;
  double f0_ = 0.0, f1_ = 0.0, fmax_ = 0.0, mass_ = 0.0;
};

inline double evaluate(const Density& f, const Point& x) {
  if (!contains(f.domain(), x)) throw InfeasibleError("density evaluated outside its domain");
  if (f.kind() == DensityKind::uniform) return f.c0();
  const double v = f.c0() + f.c2() * (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
  return std::clamp(v, f.f0(), f.fmax());
}

/// Which of interior and boundary dominates the extreme nearest-neighbour
/// link: compares f1 with f0 (2 - 2/d), equality within relative 1e-12.
inline Regime regime(const Density& f, int d) {
  const double threshold = f.f0() * (2.0 - 2.0 / d);
  if (std::fabs(f.f1() - threshold) <= 1e-12 * std::max(f.f1(), threshold)) return Regime::critical;
  return f.f1() > threshold ? Regime::interior_dominated : Regime::boundary_dominated;
}

/// Point with density f. Uniform delegates to sample_uniform; otherwise
/// rejection from the uniform proposal with acceptance f(x)/fmax.
inline Point sample(const Density& f, Rng& rng) {
  const Domain& a = f.domain();
  if (f.kind() == DensityKind::uniform) return sample_uniform(a, rng);
  for (long attempt = 0; attempt < kMaxConsecutiveRejections; ++attempt) {
    const Point x = sample_uniform(a, rng);
    const double fx = f.c0() + f.c2() * (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
    if (rng.uniform() * f.fmax() <= fx) return x;
  }
  throw std::runtime_error("rejection sampler exceeded its rejection budget");
}

namespace detail {

// nu(B_r(x) cap A) for the radial density, |x| = rho, via rays from x:
// integrate f along each ray up to min(r, exit distance) in closed form, then
// integrate over the direction angle with Gauss-Legendre, splitting at the
// angle where the exit distance equals r and at the tangential direction.
inline double radial_ball_mass(const Density& f, double rho, double r) {
  const Domain& a = f.domain();
  const int d = a.dimension();
  const double R = a.radius();
  const double c0 = f.c0(), c2 = f.c2();
  const double theta = d == 2 ? std::numbers::pi : 4.0 / 3.0 * std::numbers::pi;
  if (!(r > 0.0)) return 0.0;
  if (r + rho <= R) {
    const double rd = std::pow(r, d);
    return c0 * theta * rd + c2 * (rho * rho * theta * rd + d * theta * rd * r * r / (d + 2.0));
  }
  if (r >= R + rho) return f.mass();

  const double base = c0 + c2 * rho * rho;
  const double gap = R * R - rho * rho;
  auto reach = [&](double c) {
    const double t_exit = -rho * c + std::sqrt(std::max(0.0, rho * rho * c * c + gap));
    return std::min(r, t_exit);
  };
  std::vector<double> cuts{0.5 * std::numbers::pi};
  if (rho > 0.0) {
    const double cs = (gap - r * r) / (2.0 * rho * r);
    if (cs > -1.0 && cs < 1.0) cuts.push_back(std::acos(cs));
  }
  const auto breaks = make_breaks(cuts, 0.0, std::numbers::pi);
  if (d == 2) {
    auto g = [&](double phi) {
      const double c = std::cos(phi);
      const double t = reach(c);
      const double t2 = t * t;
      return base * t2 / 2.0 + 2.0 * c2 * rho * c * t2 * t / 3.0 + c2 * t2 * t2 / 4.0;
    };
    return 2.0 * integrate_panels<32>(g, breaks);
  }
  auto g = [&](double psi) {
    const double c = std::cos(psi);
    const double t = reach(c);
    const double t3 = t * t * t;
    return std::sin(psi) *
           (base * t3 / 3.0 + c2 * rho * c * t3 * t / 2.0 + c2 * t3 * t * t / 5.0);
  };
  return 2.0 * std::numbers::pi * integrate_panels<32>(g, breaks);
}

}  // namespace detail

/// Probability mass nu(B_r(x)) = integral of f over B_r(x) cap A.
inline double ball_mass(const Density& f, const Point& x, double r) {
  if (f.kind() == DensityKind::uniform) return f.c0() * ball_intersection_measure(f.domain(), x, r);
  return detail::radial_ball_mass(f, std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]), r);
}

}  // namespace geothresh

#endif  // GEOTHRESH_DENSITY_HPP
