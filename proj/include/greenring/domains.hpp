#pragma once

#include <string>
#include <variant>

#include "greenring/geometry.hpp"

namespace greenring {

/// Open ball of the given radius centred at the origin.
struct Ball {
  double radius = 1.0;
};

/// {x : x_d > 0}. The boundary plane contains the x_1, x_2 directions, so
/// this is a rotation domain about J.
struct HalfSpace {};

/// Whole space. Not an admissible domain; it carries the bare Newtonian
/// kernel so that the large-ball limit fits the same interface.
struct FreeSpace {};

class Domain {
 public:
  using Shape = std::variant<Ball, HalfSpace, FreeSpace>;

  static Domain ball(Dimension dim, double radius);
  static Domain half_space(Dimension dim);
  static Domain free_space(Dimension dim);

  const Dimension& dimension() const { return dim_; }
  const Shape& shape() const { return shape_; }

  bool is_ball() const { return std::holds_alternative<Ball>(shape_); }
  bool is_free_space() const { return std::holds_alternative<FreeSpace>(shape_); }
  double ball_radius() const;

  std::string name() const;

 private:
  Domain(Dimension dim, Shape shape) : dim_(dim), shape_(shape) {}

  Dimension dim_;
  Shape shape_;
};

/// r^{2-d}
double kernel_power(double r, int d);

/// lambda_d * r^{2-d}
double newtonian_kernel(const Dimension& dim, double r);

bool contains(const Domain& dom, const CartPoint& x);

/// Distance from x to the boundary (infinite for free space).
double boundary_distance(const Domain& dom, const CartPoint& x);

/// Dirichlet Green function g_B(x, y). Throws std::domain_error for
/// coincident or non-interior points.
double green(const Domain& dom, const CartPoint& x, const CartPoint& y);

/// r(B, x); +inf for free space.
double harmonic_radius(const Domain& dom, const CartPoint& x);

/// r(B, x)^{2-d}, with the free-space value taken as 0.
double harmonic_radius_power(const Domain& dom, const CartPoint& x);

/// (2d+1)-point discrete Laplacian of g_B(., y) at x with step h. The stencil
/// must stay at least 4h away from both the pole and the boundary.
double green_is_harmonic_check(const Domain& dom, const CartPoint& y,
                               const CartPoint& x, double h);

}  // namespace greenring
