#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "geothresh/density.hpp"
#include "support.hpp"

using namespace geothresh;
using gt_test::unit_square;

constexpr double pi = std::numbers::pi;

TEST(Density, UniformConstants) {
  const auto f = Density::uniform(unit_square());
  EXPECT_DOUBLE_EQ(evaluate(f, {0.3, 0.7, 0}), 1.0);
  EXPECT_DOUBLE_EQ(f.f0(), 1.0);
  EXPECT_DOUBLE_EQ(f.f1(), 1.0);
  EXPECT_DOUBLE_EQ(f.fmax(), 1.0);
  const auto g = Density::uniform(Domain::disk(1.0));
  EXPECT_DOUBLE_EQ(evaluate(g, {0.1, 0.2, 0}), 1 / pi);
  EXPECT_THROW(evaluate(g, {2, 0, 0}), InfeasibleError);
}

TEST(Density, RadialOnUnitDisk) {
  const auto f = Density::radial(Domain::disk(1.0), 2 / (3 * pi), 2 / (3 * pi));
  EXPECT_NEAR(evaluate(f, {0, 0, 0}), 2 / (3 * pi), 1e-15);
  EXPECT_NEAR(evaluate(f, {1, 0, 0}), 4 / (3 * pi), 1e-15);
  EXPECT_NEAR(f.mass(), 1.0, 1e-12);
  EXPECT_DOUBLE_EQ(f.f1(), 2 * f.f0());
  const auto g = Density::radial_normalised(Domain::disk(1.0), 1.0);
  EXPECT_NEAR(g.c0(), 2 / (3 * pi), 1e-15);
}

TEST(Density, RadialValidation) {
  EXPECT_THROW(Density::radial(unit_square(), 1, 0), std::invalid_argument);
  EXPECT_THROW(Density::radial(Domain::disk(1.0), 1.0, 1.0), std::invalid_argument);  // mass != 1
  // Negative on the rim.
  EXPECT_THROW(Density::radial_normalised(Domain::disk(1.0), -1.5), std::invalid_argument);
  // Decreasing profile: f0 at the rim, f1 = f0.
  const auto f = Density::radial_normalised(Domain::ball3(1.0), -0.5);
  EXPECT_DOUBLE_EQ(f.f0(), f.f1());
  EXPECT_DOUBLE_EQ(f.fmax(), f.c0());
}

TEST(Density, MassClosedFormAgreesWithQuadrature) {
  // Independent check of the normalisation: midpoint rule over radius.
  for (int d : {2, 3}) {
    const auto a = d == 2 ? Domain::disk(1.3) : Domain::ball3(0.8);
    const double c0 = 0.7, c2 = 0.4, R = a.radius();
    const int m = 200000;
    double s = 0.0;
    for (int i = 0; i < m; ++i) {
      const double rho = (i + 0.5) * R / m;
      const double shell = d == 2 ? 2 * pi * rho : 4 * pi * rho * rho;
      s += (c0 + c2 * rho * rho) * shell * R / m;
    }
    EXPECT_NEAR(Density::radial_mass(a, c0, c2), s, 1e-8);
  }
}

TEST(Regime, Examples) {
  EXPECT_EQ(regime(Density::uniform(unit_square()), 2), Regime::critical);
  EXPECT_EQ(regime(Density::uniform(Domain::ball3(1.0)), 3), Regime::boundary_dominated);
  EXPECT_EQ(regime(Density::radial_normalised(Domain::disk(1.0), 1.0), 2), Regime::interior_dominated);
  Rng rng(4);
  for (int i = 0; i < 50; ++i) {
    const auto a = gt_test::random_domain(rng);
    const auto f = Density::uniform(a);
    EXPECT_EQ(regime(f, 2), Regime::critical);
    EXPECT_EQ(regime(f, 3), Regime::boundary_dominated);
  }
}

TEST(Sample, RadialMassOfInnerBall) {
  const auto f = Density::radial(Domain::disk(1.0), 2 / (3 * pi), 2 / (3 * pi));
  Rng rng(21);
  const int n = 1'000'000;
  int in = 0;
  for (int i = 0; i < n; ++i) {
    const Point p = sample(f, rng);
    ASSERT_TRUE(contains(f.domain(), p));
    if (p[0] * p[0] + p[1] * p[1] <= 0.25) ++in;
  }
  const double c0 = 2 / (3 * pi);
  EXPECT_NEAR(static_cast<double>(in) / n, c0 * (pi / 4 + pi / 32), 0.002);
}

TEST(Sample, AcceptanceRateMatchesEnvelope) {
  const auto f = Density::radial_normalised(Domain::ball3(1.0), 2.0);
  Rng rng(22);
  const int trials = 1'000'000;
  int accepted = 0;
  for (int i = 0; i < trials; ++i) {
    const Point x = sample_uniform(f.domain(), rng);
    if (rng.uniform() * f.fmax() <= evaluate(f, x)) ++accepted;
  }
  const double expected = 1 / (f.fmax() * volume(f.domain()));
  EXPECT_NEAR(static_cast<double>(accepted) / trials / expected, 1.0, 0.05);
}

TEST(Sample, AllDensitiesStayInside) {
  Rng rng(23);
  for (const auto& f : {Density::uniform(unit_square()), Density::radial_normalised(Domain::disk(2.0), 3.0),
                        Density::radial_normalised(Domain::ball3(1.0), -0.4)})
    for (int i = 0; i < 100000; ++i) ASSERT_TRUE(contains(f.domain(), sample(f, rng)));
}

// nu(B_r(x)) for the radial density, against a polar midpoint-rule oracle.
TEST(BallMass, RadialAgreesWithPolarGrid) {
  const auto f = Density::radial_normalised(Domain::disk(1.0), 1.5);
  Rng rng(24);
  for (int t = 0; t < 30; ++t) {
    const Point x = sample_uniform(f.domain(), rng);
    const double r = gt_test::uniform(rng, 0.01, 1.2);
    const int nr = 800, na = 1600;
    double s = 0.0;
    for (int i = 0; i < nr; ++i) {
      const double rho = (i + 0.5) * r / nr;
      for (int j = 0; j < na; ++j) {
        const double phi = (j + 0.5) * 2 * pi / na;
        const Point y{x[0] + rho * std::cos(phi), x[1] + rho * std::sin(phi), 0};
        if (y[0] * y[0] + y[1] * y[1] <= 1.0) s += evaluate(f, y) * rho * (r / nr) * (2 * pi / na);
      }
    }
    EXPECT_NEAR(ball_mass(f, x, r), s, 2e-4) << "trial " << t;
  }
}

TEST(BallMass, RadialBallMonteCarlo) {
  const auto f = Density::radial_normalised(Domain::ball3(1.0), 1.0);
  Rng rng(25);
  for (int t = 0; t < 20; ++t) {
    const Point x = sample_uniform(f.domain(), rng);
    const double r = gt_test::uniform(rng, 0.05, 1.0);
    const int n = 400000;
    double s = 0.0, s2 = 0.0;
    const double box = 8 * r * r * r;
    for (int i = 0; i < n; ++i) {
      const Point y{x[0] + r * (2 * rng.uniform() - 1), x[1] + r * (2 * rng.uniform() - 1),
                    x[2] + r * (2 * rng.uniform() - 1)};
      double v = 0.0;
      if (dist2(x, y) <= r * r && contains(f.domain(), y)) v = evaluate(f, y) * box;
      s += v;
      s2 += v * v;
    }
    const double m = s / n, se = std::sqrt((s2 / n - m * m) / n);
    EXPECT_NEAR(ball_mass(f, x, r), m, 4 * se + 1e-12) << "trial " << t;
  }
}

TEST(BallMass, UniformIsScaledMeasure) {
  Rng rng(26);
  for (int t = 0; t < 100; ++t) {
    const auto a = gt_test::random_domain(rng);
    const auto f = Density::uniform(a);
    const Point x = sample_uniform(a, rng);
    const double r = rng.uniform() * a.diameter();
    EXPECT_NEAR(ball_mass(f, x, r), ball_intersection_measure(a, x, r) / volume(a), 1e-12);
  }
}
