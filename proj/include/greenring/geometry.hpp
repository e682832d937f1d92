#pragma once

#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

namespace greenring {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Angles within this distance of 2*pi are wrapped to 0.
inline constexpr double kAngleTolerance = 1e-12;

/// Minimum Euclidean separation between points that enter a kernel.
inline constexpr double kDistinctTolerance = 1e-10;

/// Ambient dimension d >= 3 together with the constants of the Newtonian
/// kernel: omega = |S^{d-1}| and lambda = 1 / ((d - 2) * omega).
class Dimension {
 public:
  explicit Dimension(int d);

  int d() const { return d_; }
  double omega() const { return omega_; }
  double lambda() const { return lambda_; }

  bool operator==(const Dimension& other) const { return d_ == other.d_; }

 private:
  int d_;
  double omega_;
  double lambda_;
};

struct CartPoint {
  std::vector<double> coords;

  std::size_t size() const { return coords.size(); }
  double operator[](std::size_t i) const { return coords[i]; }
  double& operator[](std::size_t i) { return coords[i]; }
};

double norm(const CartPoint& x);
double distance(const CartPoint& x, const CartPoint& y);
double dot(const CartPoint& x, const CartPoint& y);

/// Reduces an angle into [0, 2*pi).
double normalize_angle(double theta);

/// Cylindrical coordinates (rho, theta, x') about the axis plane
/// J = {x_1 = x_2 = 0}. x' holds the d - 2 coordinates along J.
struct CylPoint {
  double rho = 0.0;
  double theta = 0.0;
  std::vector<double> xprime;

  CylPoint() = default;
  CylPoint(double rho, double theta, std::vector<double> xprime);
};

/// A circle {(rho0, theta, x'0) : theta in [0, 2*pi)} around the axis.
class Circle {
 public:
  Circle(double rho0, std::vector<double> xprime0);

  double rho0() const { return rho0_; }
  const std::vector<double>& xprime0() const { return xprime0_; }

  bool same_as(const Circle& other, double tol = kAngleTolerance) const;

 private:
  double rho0_;
  std::vector<double> xprime0_;
};

/// Strictly increasing angles in [0, 2*pi). Order is significant: the
/// j-th angle selects the half-plane L_j.
class AngleSet {
 public:
  explicit AngleSet(std::vector<double> angles);

  std::size_t size() const { return angles_.size(); }
  double operator[](std::size_t j) const { return angles_[j]; }
  const std::vector<double>& values() const { return angles_; }

 private:
  std::vector<double> angles_;
};

/// Points where the circles meet the half-planes. Point k = c * m + j lies
/// on circle c and half-plane j.
class Configuration {
 public:
  Configuration(Dimension dim, std::vector<Circle> circles, AngleSet angles);

  const Dimension& dimension() const { return dim_; }
  const std::vector<Circle>& circles() const { return circles_; }
  const AngleSet& angles() const { return angles_; }
  const std::vector<CylPoint>& points() const { return points_; }
  const std::vector<CartPoint>& cartesian() const { return cartesian_; }

  std::size_t size() const { return points_.size(); }
  std::size_t m() const { return angles_.size(); }
  std::size_t index(std::size_t circle, std::size_t angle) const {
    return circle * m() + angle;
  }
  std::size_t circle_of(std::size_t k) const { return k / m(); }
  std::size_t half_plane_of(std::size_t k) const { return k % m(); }

  /// Same circles, different angles.
  Configuration with_angles(AngleSet angles) const;

 private:
  Dimension dim_;
  std::vector<Circle> circles_;
  AngleSet angles_;
  std::vector<CylPoint> points_;
  std::vector<CartPoint> cartesian_;
};

CartPoint cyl_to_cart(const CylPoint& p, const Dimension& dim);

/// Points on the axis map to rho = 0, theta = 0.
CylPoint cart_to_cyl(const CartPoint& x);

Configuration build_configuration(const Dimension& dim,
                                  std::vector<Circle> circles,
                                  AngleSet angles);

/// {2*pi*j/m : j = 0..m-1}
AngleSet symmetric_angles(int m);

}  // namespace greenring
