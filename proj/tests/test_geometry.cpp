#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "geothresh/geometry.hpp"
#include "support.hpp"

using namespace geothresh;
using gt_test::unit_square;

constexpr double pi = std::numbers::pi;

TEST(Domain, RejectsInvalidShapes) {
  EXPECT_THROW(Domain::disk(0.0), std::invalid_argument);
  EXPECT_THROW(Domain::ball3(-1.0), std::invalid_argument);
  EXPECT_THROW(Domain::polygon({{0, 0}, {1, 0}}), std::invalid_argument);
  // Clockwise.
  EXPECT_THROW(Domain::polygon({{0, 0}, {0, 1}, {1, 1}, {1, 0}}), std::invalid_argument);
  // Collinear vertex (not strictly convex).
  EXPECT_THROW(Domain::polygon({{0, 0}, {0.5, 0}, {1, 0}, {1, 1}, {0, 1}}), std::invalid_argument);
  // Non-convex.
  EXPECT_THROW(Domain::polygon({{0, 0}, {2, 0}, {1, 0.5}, {2, 2}, {0, 2}}), std::invalid_argument);
  // Self-intersecting star (turns twice around).
  std::vector<Vec2> star;
  for (int i = 0; i < 5; ++i) star.push_back({std::cos(4 * pi * i / 5), std::sin(4 * pi * i / 5)});
  EXPECT_THROW(Domain::polygon(star), std::invalid_argument);
}

TEST(Volume, ClosedForms) {
  EXPECT_DOUBLE_EQ(volume(Domain::disk(1.0)), pi);
  EXPECT_DOUBLE_EQ(volume(unit_square()), 1.0);
  EXPECT_DOUBLE_EQ(volume(Domain::polygon({{0, 0}, {1, 0}, {0, 1}})), 0.5);
  EXPECT_DOUBLE_EQ(volume(Domain::ball3(2.0)), 4.0 / 3.0 * pi * 8.0);
}

TEST(Perimeter, ClosedForms) {
  EXPECT_DOUBLE_EQ(perimeter(Domain::disk(1.0)), 2 * pi);
  EXPECT_DOUBLE_EQ(perimeter(unit_square()), 4.0);
  EXPECT_DOUBLE_EQ(perimeter(Domain::ball3(1.0)), 4 * pi);
}

TEST(IsoperimetricSigma, Examples) {
  EXPECT_NEAR(isoperimetric_sigma(Domain::disk(1.0)), 2 * std::sqrt(pi), 1e-12);
  EXPECT_NEAR(isoperimetric_sigma(Domain::disk(1.0)), 3.54491, 1e-5);
  EXPECT_DOUBLE_EQ(isoperimetric_sigma(unit_square()), 4.0);
  EXPECT_NEAR(isoperimetric_sigma(Domain::ball3(1.0)), 4 * pi / std::pow(4 * pi / 3, 2.0 / 3.0), 1e-12);
  EXPECT_NEAR(isoperimetric_sigma(Domain::ball3(1.0)), 4.83598, 1e-5);
  EXPECT_GT(isoperimetric_sigma(unit_square()), isoperimetric_sigma(Domain::disk(1.0)));
}

TEST(IsoperimetricSigma, ScaleInvariantAndAboveBallBound) {
  Rng rng(5);
  for (int i = 0; i < 200; ++i) {
    const auto a = gt_test::random_domain(rng);
    const int d = a.dimension();
    const double theta = d == 2 ? pi : 4 * pi / 3;
    EXPECT_GE(isoperimetric_sigma(a), d * std::pow(theta, 1.0 / d) * (1 - 1e-12));
  }
  EXPECT_NEAR(isoperimetric_sigma(Domain::disk(7.0)), isoperimetric_sigma(Domain::disk(1.0)), 1e-12);
}

TEST(Contains, Examples) {
  EXPECT_TRUE(contains(Domain::disk(1.0), {0, 0, 0}));
  EXPECT_TRUE(contains(unit_square(), {1, 1, 0}));
  EXPECT_FALSE(contains(Domain::disk(1.0), {2, 0, 0}));
  EXPECT_TRUE(contains(Domain::disk(1.0), {1, 0, 0}));
  EXPECT_FALSE(contains(unit_square(), {1.001, 0.5, 0}));
  EXPECT_TRUE(contains(Domain::ball3(1.0), {0, 0, 1}));
  EXPECT_FALSE(contains(Domain::ball3(1.0), {0, 0.8, 0.8}));
}

TEST(DistToBoundary, Examples) {
  EXPECT_DOUBLE_EQ(dist_to_boundary(Domain::disk(1.0), {0, 0, 0}), 1.0);
  EXPECT_DOUBLE_EQ(dist_to_boundary(unit_square(), {0.25, 0.5, 0}), 0.25);
  EXPECT_NEAR(dist_to_boundary(Domain::ball3(1.0), {0, 0, 0.6}), 0.4, 1e-15);
  EXPECT_THROW(dist_to_boundary(Domain::disk(1.0), {2, 0, 0}), InfeasibleError);
  // Triangle: distance to the hypotenuse.
  const auto tri = Domain::polygon({{0, 0}, {1, 0}, {0, 1}});
  EXPECT_NEAR(dist_to_boundary(tri, {0.4, 0.4, 0}), std::min(0.4, 0.2 / std::sqrt(2.0)), 1e-15);
}

TEST(BallIntersection, Examples) {
  EXPECT_NEAR(ball_intersection_measure(Domain::disk(1.0), {0, 0, 0}, 0.5), pi / 4, 1e-12);
  EXPECT_NEAR(ball_intersection_measure(Domain::disk(1.0), {1, 0, 0}, 1.0), 2 * pi / 3 - std::sqrt(3.0) / 2,
              1e-12);
  EXPECT_NEAR(ball_intersection_measure(Domain::disk(1.0), {1, 0, 0}, 1.0), 1.22837, 1e-5);
  EXPECT_NEAR(ball_intersection_measure(unit_square(), {0, 0, 0}, 0.3), pi * 0.09 / 4, 1e-12);
  EXPECT_NEAR(ball_intersection_measure(unit_square(), {0, 0, 0}, 0.3), 0.070686, 1e-6);
  // Half disk at an edge midpoint, half ball on the sphere for small r.
  EXPECT_NEAR(ball_intersection_measure(unit_square(), {0.5, 0, 0}, 0.2), pi * 0.04 / 2, 1e-12);
  // Ball lens on the unit sphere at r = 1: pi * (2 - d)^2 (d^2 + 4d) / (12 d) with d = 1.
  EXPECT_NEAR(ball_intersection_measure(Domain::ball3(1.0), {0, 0, 1}, 1.0), 5 * pi / 12, 1e-12);
}

TEST(BallIntersection, MonotoneZeroAtZeroFullAtDiameter) {
  Rng rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = gt_test::random_domain(rng);
    const Point x = sample_uniform(a, rng);
    const double diam = a.diameter();
    const int d = a.dimension();
    const double theta = d == 2 ? pi : 4 * pi / 3;
    EXPECT_EQ(ball_intersection_measure(a, x, 0.0), 0.0);
    EXPECT_NEAR(ball_intersection_measure(a, x, diam), volume(a), 1e-12 * std::max(1.0, volume(a)));
    double prev = 0.0;
    for (int i = 1; i <= 60; ++i) {
      const double r = diam * i / 50.0;
      const double m = ball_intersection_measure(a, x, r);
      EXPECT_GE(m, prev - 1e-12);
      EXPECT_LE(m, std::min(theta * std::pow(r, d), volume(a)) + 1e-12);
      prev = m;
    }
    const double inner = dist_to_boundary(a, x);
    if (inner > 0.0)
      EXPECT_NEAR(ball_intersection_measure(a, x, inner), theta * std::pow(inner, d), 1e-12);
  }
}

// Hit counting in the bounding box of B_r(x), N = 1e6 per triple.
TEST(BallIntersection, MonteCarloCrossCheck) {
  Rng rng(2024);
  const int samples = 1'000'000;
  for (int trial = 0; trial < 100; ++trial) {
    const auto a = gt_test::random_domain(rng);
    const Point x = sample_uniform(a, rng);
    const double r = gt_test::uniform(rng, 0.01, 0.7) * a.diameter();
    const int d = a.dimension();
    const double box = std::pow(2 * r, d);
    long hits = 0;
    for (int s = 0; s < samples; ++s) {
      Point y{x[0] + r * (2 * rng.uniform() - 1), x[1] + r * (2 * rng.uniform() - 1),
              d == 3 ? x[2] + r * (2 * rng.uniform() - 1) : 0.0};
      if (dist2(x, y) <= r * r && contains(a, y)) ++hits;
    }
    const double exact = ball_intersection_measure(a, x, r);
    const double p = exact / box;
    const double tol = 4.0 * std::sqrt(p * (1 - p) / samples) * box;
    EXPECT_NEAR(hits * box / samples, exact, tol + 1e-12) << to_string(a.kind()) << " trial " << trial;
  }
}

TEST(SampleUniform, InsideAndMoments) {
  Rng rng(3);
  const auto sq = unit_square();
  const int n = 1'000'000;
  double sx = 0, sy = 0;
  for (int i = 0; i < n; ++i) {
    const Point p = sample_uniform(sq, rng);
    ASSERT_TRUE(contains(sq, p));
    sx += p[0];
    sy += p[1];
  }
  EXPECT_NEAR(sx / n, 0.5, 0.002);
  EXPECT_NEAR(sy / n, 0.5, 0.002);

  const auto disk = Domain::disk(1.0);
  int inside = 0;
  for (int i = 0; i < n; ++i) {
    const Point p = sample_uniform(disk, rng);
    ASSERT_TRUE(contains(disk, p));
    if (p[0] * p[0] + p[1] * p[1] <= 0.5) ++inside;
  }
  EXPECT_NEAR(static_cast<double>(inside) / n, 0.5, 0.002);
}

TEST(SampleUniform, RandomDomainsAlwaysContained) {
  Rng rng(8);
  for (int t = 0; t < 50; ++t) {
    const auto a = gt_test::random_domain(rng);
    for (int i = 0; i < 2000; ++i) ASSERT_TRUE(contains(a, sample_uniform(a, rng)));
  }
}

TEST(SampleUniform, PolygonFanProportions) {
  // Pentagon-like polygon: the fraction in the first fan triangle matches its area share.
  const auto a = Domain::polygon({{0, 0}, {2, 0}, {3, 1}, {1, 3}, {-1, 1}});
  const Vec2 p0{0, 0}, p1{2, 0}, p2{3, 1};
  const double share = 0.5 * cross({p1[0] - p0[0], p1[1] - p0[1]}, {p2[0] - p0[0], p2[1] - p0[1]}) / volume(a);
  Rng rng(12);
  const int n = 400000;
  int hit = 0;
  for (int i = 0; i < n; ++i) {
    const Point x = sample_uniform(a, rng);
    // Inside triangle (p0, p1, p2)?
    const Vec2 q{x[0], x[1]};
    auto side = [&](const Vec2& u, const Vec2& v) { return cross({v[0] - u[0], v[1] - u[1]}, {q[0] - u[0], q[1] - u[1]}); };
    if (side(p0, p1) >= 0 && side(p1, p2) >= 0 && side(p2, p0) >= 0) ++hit;
  }
  EXPECT_NEAR(static_cast<double>(hit) / n, share, 4 * std::sqrt(share * (1 - share) / n));
}
