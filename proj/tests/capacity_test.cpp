#include "greenring/capacity.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "test_support.hpp"

using namespace greenring;

namespace {

constexpr double kPi = std::numbers::pi;
const Dimension kD3(3);
const Domain kUnitBall = Domain::ball(kD3, 1.0);

GeneralizedCondenser single(CartPoint x, double t, double sigma = 1.0) {
  return GeneralizedCondenser(kUnitBall, {std::move(x)}, {sigma}, {1.0}, t);
}

GeneralizedCondenser pair(double t) {
  return GeneralizedCondenser(kUnitBall, {CartPoint{{0.5, 0, 0}}, CartPoint{{-0.5, 0, 0}}},
                              {1.0, 1.0}, {1.0, 1.0}, t);
}

GeneralizedCondenser collinear_triple(double t) {
  return GeneralizedCondenser(
      kUnitBall, {CartPoint{{0.5, 0, 0}}, CartPoint{{0, 0, 0}}, CartPoint{{-0.5, 0, 0}}},
      {1.0, 1.0, 1.0}, {1.0, 1.0, 1.0}, t);
}

}  // namespace

TEST(GeneralizedCondenser, Validation) {
  const CartPoint a{{0.5, 0, 0}}, b{{-0.5, 0, 0}};
  EXPECT_THROW(GeneralizedCondenser(kUnitBall, {a, b}, {1.0}, {1.0, 1.0}, 0.1),
               std::invalid_argument);
  EXPECT_THROW(GeneralizedCondenser(kUnitBall, {a}, {0.0}, {1.0}, 0.1),
               std::invalid_argument);
  EXPECT_THROW(GeneralizedCondenser(kUnitBall, {a}, {1.0}, {-1.0}, 0.1),
               std::invalid_argument);
  EXPECT_THROW(GeneralizedCondenser(kUnitBall, {a}, {1.0}, {1.0}, 0.0),
               std::invalid_argument);
  // Plate touches the sphere.
  EXPECT_THROW(GeneralizedCondenser(kUnitBall, {a}, {1.0}, {1.0}, 0.5), std::domain_error);
  // Plates overlap.
  EXPECT_THROW(GeneralizedCondenser(kUnitBall, {a, b}, {1.0, 1.0}, {1.0, 1.0}, 0.5),
               std::domain_error);
  EXPECT_THROW(GeneralizedCondenser(kUnitBall, {a, CartPoint{{0.55, 0, 0}}}, {1.0, 1.0},
                                    {1.0, 1.0}, 0.03),
               std::domain_error);
}

TEST(AsymptoticModulus, Examples) {
  const double lambda = 1.0 / (4 * kPi);
  EXPECT_NEAR(asymptotic_modulus(single(CartPoint{{0, 0, 0}}, 0.1)), 9.0 / (4 * kPi), 1e-14);
  EXPECT_NEAR(asymptotic_modulus(single(CartPoint{{0, 0, 0}}, 0.1)), 0.7161972, 1e-7);
  EXPECT_NEAR(asymptotic_modulus(single(CartPoint{{0.5, 0, 0}}, 0.01)),
              (100.0 - 4.0 / 3.0) * lambda, 1e-13);
  EXPECT_NEAR(asymptotic_modulus(single(CartPoint{{0.5, 0, 0}}, 0.01)), 7.8516439, 1e-7);
  // nu = 1/2, nu_k = 1: lambda/(2t) - lambda/4 * 2 * (4/3) + 1/4 * 2 * g,
  // g = 0.2 lambda.
  EXPECT_NEAR(asymptotic_modulus(pair(0.01)), (50.0 - 2.0 / 3.0 + 0.1) * lambda, 1e-13);
}

TEST(AsymptoticModulus, FreeSpaceDropsHarmonicTerm) {
  const auto c = GeneralizedCondenser(Domain::free_space(kD3), {CartPoint{{0, 0, 0}}},
                                      {1.0}, {1.0}, 0.1);
  EXPECT_NEAR(asymptotic_modulus(c), 10.0 / (4 * kPi), 1e-14);
  EXPECT_THROW(point_charge_modulus(c), std::invalid_argument);
}

TEST(AsymptoticModulus, WeightsAndDimensions) {
  // Two plates with different levels and radius factors in d = 4, checked
  // against a term-by-term evaluation.
  const Dimension d4(4);
  const auto ball = Domain::ball(d4, 2.0);
  const CartPoint a{{0.4, 0.1, 0.0, 0.3}}, b{{-0.6, 0.2, 0.5, 0.0}};
  const double t = 0.02;
  const GeneralizedCondenser c(ball, {a, b}, {2.0, -1.0}, {1.5, 0.5}, t);
  const double nu1 = 2.0 * 1.5 * 1.5, nu2 = -1.0 * 0.5 * 0.5;
  const double nu = 1.0 / (4.0 * 2.25 + 1.0 * 0.25);
  const double lambda = d4.lambda();
  const double r1 = (4.0 - dot(a, a)) / 2.0, r2 = (4.0 - dot(b, b)) / 2.0;
  const double expected = nu * lambda / (t * t) -
                          lambda * nu * nu * (nu1 * nu1 / (r1 * r1) + nu2 * nu2 / (r2 * r2)) +
                          nu * nu * 2.0 * nu1 * nu2 * green(ball, a, b);
  EXPECT_NEAR(asymptotic_modulus(c), expected, 1e-12 * std::abs(expected));
}

TEST(PointChargeModulus, ConcentricIsExact) {
  for (double t : {0.5, 0.1, 0.01, 0.001}) {
    const auto c = single(CartPoint{{0, 0, 0}}, t);
    const double closed = (1.0 / t - 1.0) / (4 * kPi);
    EXPECT_NEAR(point_charge_modulus(c), closed, 1e-12 * closed);
    EXPECT_NEAR(asymptotic_modulus(c), closed, 1e-12 * closed);
    EXPECT_NEAR(concentric_modulus(kD3, t, 1.0), closed, 1e-12 * closed);
  }
}

TEST(PointChargeModulus, SymmetricPairCoincidesWithExpansion) {
  // Equal levels on a mirror pair: both routes reduce to (K_11 + K_12) / 2.
  for (double t : {0.1, 0.05, 0.01}) {
    const auto c = pair(t);
    const double oracle = point_charge_modulus(c);
    EXPECT_NEAR(asymptotic_modulus(c), oracle, 1e-12 * oracle);
    EXPECT_LT(std::abs(asymptotic_modulus(c) - oracle) / oracle, 1e-2);
  }
}

TEST(PointChargeModulus, TripleErrorDecays) {
  double previous = std::numeric_limits<double>::infinity();
  for (double t : {0.1, 0.05, 0.01}) {
    const auto c = collinear_triple(t);
    const double err = std::abs(asymptotic_modulus(c) - point_charge_modulus(c));
    EXPECT_LT(err, previous) << t;
    previous = err;
  }
  const auto c = collinear_triple(0.01);
  EXPECT_LT(previous / point_charge_modulus(c), 1e-2);
}

TEST(PointChargeModulus, UnequalLevelsErrorDecays) {
  const auto base = GeneralizedCondenser(
      kUnitBall, {CartPoint{{0.3, 0.2, 0.1}}, CartPoint{{-0.4, 0, -0.2}}}, {1.0, -2.0},
      {1.0, 0.7}, 0.1);
  const auto sweep = modulus_sweep(base, {0.1, 0.05, 0.02, 0.01, 0.005});
  for (std::size_t i = 1; i < sweep.size(); ++i) {
    EXPECT_LT(sweep[i].abs_error, sweep[i - 1].abs_error);
  }
  EXPECT_TRUE(sweep_errors_shrink(sweep));
}

TEST(PointChargeModulus, HalfSpace) {
  const auto hs = Domain::half_space(kD3);
  const GeneralizedCondenser c(hs, {CartPoint{{0, 0, 1.0}}}, {1.0}, {1.0}, 0.01);
  // One plate: lambda (1/t - 1/(2 x_d)).
  EXPECT_NEAR(point_charge_modulus(c), (100.0 - 0.5) / (4 * kPi), 1e-12);
  EXPECT_NEAR(asymptotic_modulus(c), (100.0 - 0.5) / (4 * kPi), 1e-12);
}

TEST(PointChargeModulus, ReciprocityAndSignFlip) {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 20; ++i) {
    std::vector<CartPoint> pts;
    while (pts.size() < 3) {
      auto p = greenring::testing::random_interior_point(kUnitBall, rng);
      if (norm(p) > 0.8) continue;
      bool far = true;
      for (const auto& q : pts) far = far && distance(p, q) > 0.2;
      if (far) pts.push_back(p);
    }
    const GeneralizedCondenser c(kUnitBall, pts, {1.0, -0.5, 2.0}, {1.0, 2.0, 0.5}, 0.02);
    const double cap = point_charge_capacity(c);
    const double mod = point_charge_modulus(c);
    EXPECT_NEAR(mod * cap, 1.0, 1e-14);

    const auto flipped = c.with_levels({-1.0, 0.5, -2.0});
    EXPECT_NEAR(asymptotic_modulus(flipped), asymptotic_modulus(c),
                1e-13 * asymptotic_modulus(c));
    EXPECT_NEAR(point_charge_modulus(flipped), mod, 1e-13 * mod);

    const double phi = 0.1 + 0.3 * i;
    std::vector<CartPoint> rotated;
    for (const auto& p : pts) rotated.push_back(greenring::testing::rotate_about_axis(p, phi));
    EXPECT_NEAR(asymptotic_modulus(c.with_points(rotated)), asymptotic_modulus(c),
                1e-12 * asymptotic_modulus(c));
  }
  EXPECT_NEAR(concentric_modulus(kD3, 0.2, 1.0) * concentric_capacity(kD3, 0.2, 1.0), 1.0,
              1e-14);
}

TEST(PointChargeModulus, AddingPlatesLowersModulus) {
  const double t = 0.02;
  const std::vector<CartPoint> pts{CartPoint{{0.5, 0, 0}}, CartPoint{{-0.3, 0.3, 0}},
                                   CartPoint{{0, -0.2, 0.4}}};
  for (std::size_t n = 2; n <= 3; ++n) {
    const std::vector<CartPoint> sub(pts.begin(), pts.begin() + static_cast<long>(n));
    const GeneralizedCondenser c(kUnitBall, sub, std::vector<double>(n, 1.0),
                                 std::vector<double>(n, 1.0), t);
    const double together = point_charge_modulus(c);
    for (const auto& p : sub) {
      EXPECT_LE(together, point_charge_modulus(single(p, t)));
    }
  }
}

TEST(ModulusSweep, ConcentricHasNoError) {
  const auto sweep = modulus_sweep(single(CartPoint{{0, 0, 0}}, 0.1), {0.1, 0.05, 0.01}, 2);
  ASSERT_EQ(sweep.size(), 3u);
  for (const auto& r : sweep) {
    EXPECT_LT(r.abs_error, 1e-13 * r.oracle);
    EXPECT_EQ(r.abs_error, std::abs(r.asymptotic - r.oracle));
  }
  EXPECT_TRUE(sweep_errors_shrink(sweep));
}

TEST(ModulusSweep, Errors) {
  const auto base = pair(0.1);
  EXPECT_THROW(modulus_sweep(base, {0.01, 0.05}), std::invalid_argument);
  EXPECT_THROW(modulus_sweep(base, {0.6, 0.1}), std::domain_error);
}

TEST(FdmCapacity, CoarseConcentricAndSignInvariance) {
  // Coarse grid keeps the unit test quick; the acceptance suite runs the
  // fine grids.
  const auto c = single(CartPoint{{0, 0, 0}}, 0.25);
  const double exact = concentric_capacity(kD3, 0.25, 1.0);
  const auto r = fdm_solve(c, 1.0 / 32);
  EXPECT_LT(r.residual, 1e-8);
  EXPECT_LT(std::abs(r.capacity - exact) / exact, 0.1);
  const auto neg = fdm_solve(single(CartPoint{{0, 0, 0}}, 0.25, -1.0), 1.0 / 32);
  EXPECT_NEAR(neg.capacity, r.capacity, 1e-9 * r.capacity);
}

TEST(FdmCapacity, Errors) {
  const auto c = single(CartPoint{{0, 0, 0}}, 0.2);
  EXPECT_THROW(fdm_capacity(c, 0.1), std::invalid_argument);  // h > t/4
  const GeneralizedCondenser d4(Domain::ball(Dimension(4), 1.0), {CartPoint{{0, 0, 0, 0}}},
                                {1.0}, {1.0}, 0.2);
  EXPECT_THROW(fdm_capacity(d4, 0.05), std::invalid_argument);
  const GeneralizedCondenser hs(Domain::half_space(kD3), {CartPoint{{0, 0, 1}}}, {1.0},
                                {1.0}, 0.2);
  EXPECT_THROW(fdm_capacity(hs, 0.05), std::invalid_argument);
  // Plate of radius 0.05 * 0.2 = 0.01 centred between grid nodes at h = 0.05.
  const GeneralizedCondenser tiny(kUnitBall, {CartPoint{{0.025, 0.025, 0.025}}}, {1.0},
                                  {0.05}, 0.2);
  EXPECT_THROW(fdm_capacity(tiny, 0.05), std::invalid_argument);
}
