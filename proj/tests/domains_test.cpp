#include "greenring/domains.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "test_support.hpp"

using namespace greenring;
using greenring::testing::random_interior_point;
using greenring::testing::rotate_about_axis;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST(Contains, Examples) {
  const Dimension d3(3);
  const auto ball = Domain::ball(d3, 1.0);
  EXPECT_TRUE(contains(ball, CartPoint{{0.5, 0.0, 0.0}}));
  EXPECT_FALSE(contains(ball, CartPoint{{1.0, 0.0, 0.0}}));
  EXPECT_FALSE(contains(Domain::half_space(d3), CartPoint{{0.0, 0.0, -1.0}}));
  EXPECT_FALSE(contains(Domain::half_space(d3), CartPoint{{0.0, 0.0, 0.0}}));
  EXPECT_TRUE(contains(Domain::free_space(d3), CartPoint{{1e6, 0.0, 0.0}}));
  EXPECT_THROW(contains(ball, CartPoint{{0.5, 0.0}}), std::invalid_argument);
}

TEST(Green, BallPairExample) {
  // lambda_3 (1/|x-y| - 1/1.25) with |x-y| = 1 and image distance 1.25.
  const auto ball = Domain::ball(Dimension(3), 1.0);
  const double g = green(ball, CartPoint{{0.5, 0, 0}}, CartPoint{{-0.5, 0, 0}});
  const double expected = (1.0 / (4.0 * kPi)) * (1.0 - 1.0 / 1.25);
  EXPECT_NEAR(g, expected, 1e-16);
  EXPECT_NEAR(g, 1.0 / (20.0 * kPi), 1e-16);
  EXPECT_NEAR(g, 0.01591549, 1e-8);
}

TEST(Green, FreeSpaceD4Example) {
  const auto free = Domain::free_space(Dimension(4));
  const double g = green(free, CartPoint{{0, 0, 0, 0}}, CartPoint{{0, 0, 2, 0}});
  EXPECT_NEAR(g, 1.0 / (16.0 * kPi * kPi), 1e-17);
  EXPECT_NEAR(g, 0.00633257, 1e-8);
}

TEST(Green, PoleAtOriginUsesLimit) {
  // g(x, 0) = lambda (|x|^{2-d} - t^{2-d}) for the ball B(0, t).
  for (int d = 3; d <= 5; ++d) {
    const Dimension dim(d);
    const auto ball = Domain::ball(dim, 2.0);
    CartPoint origin{std::vector<double>(static_cast<std::size_t>(d), 0.0)};
    CartPoint x = origin;
    x[0] = 0.7;
    const double expected =
        dim.lambda() * (std::pow(0.7, 2 - d) - std::pow(2.0, 2 - d));
    EXPECT_NEAR(green(ball, x, origin), expected, 1e-13 * std::abs(expected));
    EXPECT_EQ(green(ball, x, origin), green(ball, origin, x));
  }
}

TEST(Green, Errors) {
  const auto ball = Domain::ball(Dimension(3), 1.0);
  const CartPoint a{{0.1, 0, 0}};
  EXPECT_THROW(green(ball, a, a), std::domain_error);
  EXPECT_THROW(green(ball, a, CartPoint{{1.5, 0, 0}}), std::domain_error);
  EXPECT_THROW(green(Domain::half_space(Dimension(3)), CartPoint{{0, 0, 1}},
                     CartPoint{{0, 0, -1}}),
               std::domain_error);
}

TEST(HarmonicRadius, Examples) {
  const Dimension d3(3);
  EXPECT_DOUBLE_EQ(harmonic_radius(Domain::ball(d3, 1.0), CartPoint{{0, 0, 0}}), 1.0);
  EXPECT_DOUBLE_EQ(harmonic_radius(Domain::ball(d3, 1.0), CartPoint{{0.5, 0, 0}}), 0.75);
  EXPECT_DOUBLE_EQ(harmonic_radius(Domain::ball(d3, 2.0), CartPoint{{1, 0, 0}}), 1.5);
  EXPECT_DOUBLE_EQ(harmonic_radius(Domain::half_space(d3), CartPoint{{3, 1, 0.25}}), 0.5);
  EXPECT_TRUE(std::isinf(harmonic_radius(Domain::free_space(d3), CartPoint{{0, 0, 0}})));
  EXPECT_EQ(harmonic_radius_power(Domain::free_space(d3), CartPoint{{0, 0, 0}}), 0.0);
  EXPECT_THROW(harmonic_radius(Domain::ball(d3, 1.0), CartPoint{{1, 0, 0}}),
               std::domain_error);
}

TEST(HarmonicRadius, MatchesRegularPartOfKernel) {
  // g(x, y) - lambda |x - y|^{2-d} -> -lambda r(B, y)^{2-d} as x -> y.
  for (int d : {3, 4}) {
    const Dimension dim(d);
    for (const auto& dom : {Domain::ball(dim, 1.3), Domain::half_space(dim)}) {
      CartPoint y{std::vector<double>(static_cast<std::size_t>(d), 0.3)};
      CartPoint x = y;
      x[0] += 1e-5;
      const double regular = green(dom, x, y) - newtonian_kernel(dim, distance(x, y));
      const double expected = -dim.lambda() * harmonic_radius_power(dom, y);
      EXPECT_NEAR(regular, expected, 1e-3 * std::abs(expected)) << dom.name();
    }
  }
}

TEST(HarmonicRadius, ConstantAlongCircles) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> angle(0.0, kTwoPi);
  const Dimension d3(3);
  for (const auto& dom : {Domain::ball(d3, 1.0), Domain::half_space(d3)}) {
    const Circle circle(0.4, {0.3});
    const double r0 = harmonic_radius(
        dom, cyl_to_cart(CylPoint(0.4, 0.0, circle.xprime0()), d3));
    for (int i = 0; i < 50; ++i) {
      const auto x = cyl_to_cart(CylPoint(0.4, angle(rng), circle.xprime0()), d3);
      EXPECT_NEAR(harmonic_radius(dom, x), r0, 1e-14);
    }
  }
}

class KernelProperties : public ::testing::TestWithParam<int> {};

TEST_P(KernelProperties, SymmetryRotationDilation) {
  const Dimension dim(GetParam());
  std::mt19937_64 rng(1000 + GetParam());
  std::uniform_real_distribution<double> angle(0.0, kTwoPi);
  std::uniform_real_distribution<double> scale(0.2, 5.0);
  for (const auto& dom : {Domain::ball(dim, 1.0), Domain::half_space(dim),
                          Domain::free_space(dim)}) {
    for (int i = 0; i < 100; ++i) {
      const auto x = random_interior_point(dom, rng);
      const auto y = random_interior_point(dom, rng);
      const double g = green(dom, x, y);
      EXPECT_LE(std::abs(g - green(dom, y, x)), 1e-13 * std::max(1.0, std::abs(g)));
      if (!dom.is_free_space()) EXPECT_GT(g, 0.0);

      if (!std::holds_alternative<HalfSpace>(dom.shape())) {
        const double phi = angle(rng);
        const double rotated =
            green(dom, rotate_about_axis(x, phi), rotate_about_axis(y, phi));
        EXPECT_LE(std::abs(rotated - g), 1e-12 * std::max(1.0, std::abs(g)));
      }
    }
    if (!dom.is_ball()) continue;
    for (int i = 0; i < 100; ++i) {
      const auto x = random_interior_point(dom, rng);
      const auto y = random_interior_point(dom, rng);
      const double c = scale(rng);
      CartPoint cx = x, cy = y;
      for (auto& v : cx.coords) v *= c;
      for (auto& v : cy.coords) v *= c;
      const double big = green(Domain::ball(dim, c), cx, cy);
      const double expected = std::pow(c, 2 - dim.d()) * green(dom, x, y);
      EXPECT_LE(std::abs(big - expected), 1e-12 * std::abs(expected));
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Dimensions, KernelProperties, ::testing::Values(3, 4, 5));

TEST(Green, VanishesLinearlyAtBoundary) {
  const auto ball = Domain::ball(Dimension(3), 1.0);
  const CartPoint y{{0.2, -0.1, 0.3}};
  const CartPoint dir{{0.6, 0.0, 0.8}};
  auto at = [&](double eps) {
    CartPoint x = dir;
    for (auto& v : x.coords) v *= 1.0 - eps;
    return green(ball, x, y);
  };
  double previous_ratio = 0.0;
  for (double eps : {1e-2, 1e-3, 1e-4, 1e-5}) {
    const double ratio = at(eps) / eps;
    EXPECT_GT(ratio, 0.0);
    if (previous_ratio > 0.0) {
      EXPECT_NEAR(ratio / previous_ratio, 1.0, 0.05) << eps;
    }
    previous_ratio = ratio;
  }
  EXPECT_LT(at(1e-8), 1e-7);
}

TEST(Green, LargeBallApproachesFreeSpace) {
  const Dimension d3(3);
  const CartPoint x{{0.3, 0.1, 0.0}};
  const CartPoint y{{-0.2, 0.4, 0.5}};
  const double free = green(Domain::free_space(d3), x, y);
  double previous = std::numeric_limits<double>::infinity();
  for (double t : {10.0, 100.0, 1000.0, 10000.0}) {
    const double dev = std::abs(green(Domain::ball(d3, t), x, y) - free);
    EXPECT_LT(dev, previous);
    previous = dev;
  }
  // The image term is about lambda / T.
  EXPECT_LT(previous, 1.1 / (4.0 * kPi * 1e4));
}

TEST(HarmonicCheck, BallAndFreeSpaceExamples) {
  const Dimension d3(3);
  const CartPoint y{{0.3, 0.0, 0.0}};
  const CartPoint x{{-0.2, 0.1, 0.0}};
  for (const auto& dom : {Domain::ball(d3, 1.0), Domain::free_space(d3)}) {
    const double r1 = green_is_harmonic_check(dom, y, x, 1e-3);
    const double r2 = green_is_harmonic_check(dom, y, x, 5e-4);
    EXPECT_LT(std::abs(r1), 1e-4) << dom.name();
    const double shrink = std::abs(r1) / std::abs(r2);
    EXPECT_GT(shrink, 3.5) << dom.name();
    EXPECT_LT(shrink, 4.5) << dom.name();
  }
}

TEST(HarmonicCheck, StencilErrors) {
  const auto ball = Domain::ball(Dimension(3), 1.0);
  EXPECT_THROW(green_is_harmonic_check(ball, CartPoint{{0, 0, 0}},
                                       CartPoint{{0.999, 0, 0}}, 1e-3),
               std::domain_error);
  EXPECT_THROW(green_is_harmonic_check(ball, CartPoint{{0, 0, 0}},
                                       CartPoint{{0.002, 0, 0}}, 1e-3),
               std::domain_error);
}
