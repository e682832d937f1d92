#pragma once

#include <cmath>
#include <random>

#include "greenring/domains.hpp"

namespace greenring::testing {

inline CartPoint random_interior_point(const Domain& dom, std::mt19937_64& rng) {
  const auto d = static_cast<std::size_t>(dom.dimension().d());
  std::uniform_real_distribution<double> box(-2.0, 2.0);
  CartPoint x{std::vector<double>(d)};
  if (dom.is_ball()) {
    std::normal_distribution<double> gauss;
    for (auto& v : x.coords) v = gauss(rng);
    const double scale = 0.9 * dom.ball_radius() *
                         std::pow(std::uniform_real_distribution<double>()(rng),
                                  1.0 / static_cast<double>(d)) /
                         norm(x);
    for (auto& v : x.coords) v *= scale;
    return x;
  }
  for (auto& v : x.coords) v = box(rng);
  if (std::holds_alternative<HalfSpace>(dom.shape())) {
    x.coords.back() = std::uniform_real_distribution<double>(0.05, 2.0)(rng);
  }
  return x;
}

/// Rotation by phi in the (x_1, x_2) plane, fixing the axis J.
inline CartPoint rotate_about_axis(const CartPoint& x, double phi) {
  CartPoint y = x;
  y[0] = std::cos(phi) * x[0] - std::sin(phi) * x[1];
  y[1] = std::sin(phi) * x[0] + std::cos(phi) * x[1];
  return y;
}

}  // namespace greenring::testing
