#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "geothresh/expectation.hpp"
#include "support.hpp"

using namespace geothresh;

constexpr double pi = std::numbers::pi;

namespace {

// Independent tensor-product oracle on an axis-aligned rectangle: graded
// Gauss-Legendre panels in x and y toward both sides, integrand from the
// circle-polygon intersection area.
double rectangle_oracle(double w, double h, double n, double r, int k) {
  const auto a = Domain::polygon({{0, 0}, {w, 0}, {w, h}, {0, h}});
  const double f0 = 1.0 / (w * h);
  auto axis = [&](double len) {
    std::vector<double> cuts;
    for (int j = 0; j <= 30; ++j) {
      const double s = r * std::pow(0.5, j);
      cuts.push_back(s);
      cuts.push_back(len - s);
    }
    for (int j = 1; j < 8; ++j) cuts.push_back(len * j / 8.0);
    for (int j = 1; j < 16; ++j) {
      cuts.push_back(r * j / 16.0);
      cuts.push_back(len - r * j / 16.0);
    }
    return make_breaks(cuts, 0.0, len);
  };
  const auto xb = axis(w), yb = axis(h);
  const auto& gl = GaussLegendre<24>::get();
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < xb.size(); ++i)
    for (std::size_t j = 0; j + 1 < yb.size(); ++j)
      total += gl.integrate(
          [&](double x) {
            return gl.integrate(
                [&](double y) {
                  return poisson_cdf_below(n * f0 * ball_intersection_measure(a, {x, y, 0}, r), k);
                },
                yb[j], yb[j + 1]);
          },
          xb[i], xb[i + 1]);
  return n * f0 * total;
}

// Polar midpoint-grid oracle on a disk or ball for any density.
double polar_oracle(const Density& f, double n, double r, int k) {
  const Domain& a = f.domain();
  const double R = a.radius();
  const int d = a.dimension();
  const int m = 200000;
  double s = 0.0;
  for (int i = 0; i < m; ++i) {
    const double rho = (i + 0.5) * R / m;
    const Point x{rho, 0, 0};
    const double shell = d == 2 ? 2 * pi * rho : 4 * pi * rho * rho;
    s += poisson_cdf_below(n * ball_mass(f, x, r), k) * evaluate(f, x) * shell * R / m;
  }
  return n * s;
}

}  // namespace

TEST(PoissonCdfBelow, Values) {
  EXPECT_DOUBLE_EQ(poisson_cdf_below(0.0, 1), 1.0);
  EXPECT_NEAR(poisson_cdf_below(2.0, 1), std::exp(-2.0), 1e-16);
  EXPECT_NEAR(poisson_cdf_below(2.0, 3), std::exp(-2.0) * (1 + 2 + 2), 1e-15);
}

TEST(ExpectedIsolated, TrivialRadii) {
  for (const auto& f : {Density::uniform(gt_test::unit_square()), Density::uniform(Domain::disk(1.0)),
                        Density::radial_normalised(Domain::ball3(1.0), 1.0)}) {
    EXPECT_EQ(expected_isolated(f, 100.0, 0.0, 1).value, 100.0);
    const double n = 5.0;
    EXPECT_NEAR(expected_isolated(f, n, f.domain().diameter(), 1).value, n * std::exp(-n), 1e-10);
    EXPECT_NEAR(expected_isolated(f, n, 2 * f.domain().diameter(), 2).value, n * std::exp(-n) * (1 + n), 1e-10);
  }
}

TEST(ExpectedIsolated, SquareAgreesWithTensorOracle) {
  const auto f = Density::uniform(gt_test::unit_square());
  for (double n : {1e3, 1e5})
    for (int k : {1, 2, 3}) {
      const double r = centring_radius(2, k, n, 1.0, 0.5);
      const auto q = expected_isolated(f, n, r, k);
      const double o = rectangle_oracle(1.0, 1.0, n, r, k);
      EXPECT_NEAR(q.value, o, 1e-6 * std::max(1.0, o)) << "n " << n << " k " << k;
      EXPECT_LE(q.abs_error, 1e-6 * std::max(1.0, q.value));
    }
}

TEST(ExpectedIsolated, RectangleWithLargeRadius) {
  // r exceeds the short side: edge cells overlap in the layer.
  const auto f = Density::uniform(Domain::polygon({{0, 0}, {2, 0}, {2, 0.5}, {0, 0.5}}));
  for (double r : {0.3, 0.7, 1.5}) {
    const double n = 20.0;
    const double o = rectangle_oracle(2.0, 0.5, n, r, 2);
    EXPECT_NEAR(expected_isolated(f, n, r, 2).value, o, 1e-7 * std::max(1.0, o)) << r;
  }
}

TEST(ExpectedIsolated, PolygonsAgreeWithMonteCarloIntegration) {
  Rng rng(60);
  for (int t = 0; t < 6; ++t) {
    const auto a = gt_test::random_polygon(rng);
    const auto f = Density::uniform(a);
    const double n = 500.0;
    const double r = 0.25 * std::sqrt(a.volume());
    const int k = 1 + t % 3;
    const int samples = 400000;
    double s = 0.0, s2 = 0.0;
    for (int i = 0; i < samples; ++i) {
      const Point x = sample_uniform(a, rng);
      const double v = n * poisson_cdf_below(n * ball_mass(f, x, r), k);
      s += v;
      s2 += v * v;
    }
    const double m = s / samples, se = std::sqrt((s2 / samples - m * m) / samples);
    const auto q = expected_isolated(f, n, r, k);
    EXPECT_NEAR(q.value, m, 4 * se + 1e-12) << "trial " << t;
    EXPECT_LE(q.abs_error, 1e-6 * std::max(1.0, q.value));
  }
}

TEST(ExpectedIsolated, DiskAndBallAgreeWithPolarOracle) {
  for (const auto& f : {Density::uniform(Domain::disk(1.0)), Density::radial_normalised(Domain::disk(1.0), 1.0),
                        Density::uniform(Domain::ball3(1.0)), Density::radial_normalised(Domain::ball3(1.0), 2.0)})
    for (int k : {1, 2}) {
      const double n = 1e4;
      const int d = f.domain().dimension();
      const double r = std::pow(1.5 * std::log(n) / (n * f.f0() * unit_ball_volume(d)), 1.0 / d);
      const auto q = expected_isolated(f, n, r, k);
      const double o = polar_oracle(f, n, r, k);
      EXPECT_NEAR(q.value, o, 1e-6 * std::max(1.0, o)) << "d " << d << " k " << k;
      EXPECT_LE(q.abs_error, 1e-6 * std::max(1.0, q.value));
    }
}

TEST(ExpectedIsolated, MonotoneInRadiusAndOrder) {
  for (const auto& f : {Density::uniform(gt_test::unit_square()), Density::uniform(Domain::ball3(1.0))}) {
    const double n = 2000.0;
    double prev = INFINITY;
    for (int i = 0; i <= 40; ++i) {
      const double r = 0.005 * i;
      const double e1 = expected_isolated(f, n, r, 1).value;
      const double e2 = expected_isolated(f, n, r, 2).value;
      EXPECT_LE(e1, prev * (1 + 1e-12));
      EXPECT_LE(e1, e2 * (1 + 1e-12));
      prev = e1;
    }
  }
}

TEST(ExpectedIsolated, InteriorIntegrandIsClosedForm) {
  const auto f = Density::uniform(gt_test::unit_square());
  const double n = 1e4, r = 0.02;
  Rng rng(61);
  for (int i = 0; i < 200; ++i) {
    const Point x{gt_test::uniform(rng, r, 1 - r), gt_test::uniform(rng, r, 1 - r), 0};
    const double lam = n * pi * r * r;
    for (int k = 1; k <= 3; ++k) {
      double closed = 0.0;
      for (int j = 0; j < k; ++j) closed += std::pow(lam, j) / std::tgamma(j + 1.0) * std::exp(-lam);
      EXPECT_NEAR(poisson_cdf_below(n * ball_mass(f, x, r), k), closed, 1e-9 * closed);
    }
  }
}

TEST(SolveRn, PlugBackAndMonotone) {
  for (const auto& f : {Density::uniform(gt_test::unit_square()), Density::uniform(Domain::disk(1.0)),
                        Density::radial_normalised(Domain::disk(1.0), 1.0)}) {
    double prev = 0.0;
    for (double beta : {-1.0, 0.0, 2.0}) {
      const double r = solve_rn(f, 1e4, 1, beta);
      EXPECT_NEAR(expected_isolated(f, 1e4, r, 1).value, std::exp(-beta), 1e-9);
      EXPECT_GT(r, prev);
      prev = r;
    }
  }
}

TEST(SolveRn, ApproachesExplicitCentring) {
  const auto f = Density::uniform(gt_test::unit_square());
  double prev = INFINITY;
  for (double n : {1e4, 1e5, 1e6}) {
    const double r = solve_rn(f, n, 1, 0.0);
    const double gap = std::fabs(n * pi * r * r - std::log(n) - 0.0);
    EXPECT_LT(gap, prev);
    prev = gap;
  }
}

TEST(SolveRn, FirstOrderBounds) {
  for (const auto& f : {Density::uniform(Domain::disk(1.0)), Density::uniform(Domain::ball3(1.0))}) {
    const int d = f.domain().dimension();
    const double n = 1e6;
    const double r = solve_rn(f, n, 1, 0.0);
    const double ratio = n * std::pow(r, d) / std::log(n);
    EXPECT_GE(ratio, 1 / (f.fmax() * unit_ball_volume(d)) - 0.05);
    EXPECT_LE(ratio, 2 * slln_constant(f) / unit_ball_volume(d));
  }
}

TEST(SolveRn, NoBracket) {
  const auto f = Density::uniform(gt_test::unit_square());
  EXPECT_THROW(solve_rn(f, 0.5, 1, 0.0), SolverError);
  EXPECT_THROW(solve_rn(f, 3.0, 1, -3.0), SolverError);
}
