#include "greenring/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace greenring {

Dimension::Dimension(int d) : d_(d) {
  if (d < 3) {
    throw std::invalid_argument("dimension must be >= 3, got " +
                                std::to_string(d));
  }
  const double half = 0.5 * d;
  omega_ = 2.0 * std::pow(std::numbers::pi, half) / std::tgamma(half);
  lambda_ = 1.0 / ((d - 2) * omega_);
}

double dot(const CartPoint& x, const CartPoint& y) {
  if (x.size() != y.size()) {
    throw std::invalid_argument("point dimension mismatch");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

double norm(const CartPoint& x) { return std::sqrt(dot(x, x)); }

double distance(const CartPoint& x, const CartPoint& y) {
  if (x.size() != y.size()) {
    throw std::invalid_argument("point dimension mismatch");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double diff = x[i] - y[i];
    s += diff * diff;
  }
  return std::sqrt(s);
}

double normalize_angle(double theta) {
  if (!std::isfinite(theta)) {
    throw std::invalid_argument("angle must be finite");
  }
  double r = std::fmod(theta, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi - kAngleTolerance) r = 0.0;
  return r;
}

CylPoint::CylPoint(double rho_in, double theta_in, std::vector<double> xp)
    : rho(rho_in), theta(normalize_angle(theta_in)), xprime(std::move(xp)) {
  if (!(rho >= 0.0)) {
    throw std::invalid_argument("cylindrical radius must be >= 0");
  }
}

Circle::Circle(double rho0, std::vector<double> xprime0)
    : rho0_(rho0), xprime0_(std::move(xprime0)) {
  if (!(rho0_ > 0.0) || !std::isfinite(rho0_)) {
    throw std::invalid_argument("circle radius rho0 must be > 0");
  }
}

bool Circle::same_as(const Circle& other, double tol) const {
  if (xprime0_.size() != other.xprime0_.size()) return false;
  if (std::abs(rho0_ - other.rho0_) > tol) return false;
  for (std::size_t i = 0; i < xprime0_.size(); ++i) {
    if (std::abs(xprime0_[i] - other.xprime0_[i]) > tol) return false;
  }
  return true;
}

AngleSet::AngleSet(std::vector<double> angles) : angles_(std::move(angles)) {
  if (angles_.empty()) {
    throw std::invalid_argument("angle set must not be empty");
  }
  for (double& a : angles_) a = normalize_angle(a);
  for (std::size_t j = 1; j < angles_.size(); ++j) {
    if (!(angles_[j] > angles_[j - 1])) {
      throw std::invalid_argument(
          "angles must be strictly increasing in [0, 2pi); violated at "
          "index " + std::to_string(j));
    }
  }
}

CartPoint cyl_to_cart(const CylPoint& p, const Dimension& dim) {
  const auto d = static_cast<std::size_t>(dim.d());
  if (p.xprime.size() != d - 2) {
    throw std::invalid_argument("x' has " + std::to_string(p.xprime.size()) +
                                " coordinates, expected " +
                                std::to_string(d - 2));
  }
  CartPoint x{std::vector<double>(d)};
  x[0] = p.rho * std::cos(p.theta);
  x[1] = p.rho * std::sin(p.theta);
  std::copy(p.xprime.begin(), p.xprime.end(), x.coords.begin() + 2);
  return x;
}

CylPoint cart_to_cyl(const CartPoint& x) {
  if (x.size() < 3) {
    throw std::invalid_argument("cartesian point needs at least 3 coordinates");
  }
  std::vector<double> xp(x.coords.begin() + 2, x.coords.end());
  const double rho = std::hypot(x[0], x[1]);
  const double theta = rho == 0.0 ? 0.0 : std::atan2(x[1], x[0]);
  return CylPoint(rho, theta, std::move(xp));
}

Configuration::Configuration(Dimension dim, std::vector<Circle> circles,
                             AngleSet angles)
    : dim_(dim), circles_(std::move(circles)), angles_(std::move(angles)) {
  if (circles_.empty()) {
    throw std::invalid_argument("configuration needs at least one circle");
  }
  const auto dprime = static_cast<std::size_t>(dim_.d() - 2);
  for (std::size_t c = 0; c < circles_.size(); ++c) {
    if (circles_[c].xprime0().size() != dprime) {
      throw std::invalid_argument("circle " + std::to_string(c) +
                                  ": x'0 must have d-2 coordinates");
    }
    for (std::size_t o = 0; o < c; ++o) {
      if (circles_[c].same_as(circles_[o])) {
        throw std::invalid_argument("duplicate circle: " + std::to_string(o) +
                                    " and " + std::to_string(c));
      }
    }
  }

  const std::size_t m = angles_.size();
  points_.reserve(circles_.size() * m);
  cartesian_.reserve(circles_.size() * m);
  for (const Circle& circle : circles_) {
    for (std::size_t j = 0; j < m; ++j) {
      points_.emplace_back(circle.rho0(), angles_[j], circle.xprime0());
      cartesian_.push_back(cyl_to_cart(points_.back(), dim_));
    }
  }

  for (std::size_t k = 0; k < cartesian_.size(); ++k) {
    for (std::size_t l = 0; l < k; ++l) {
      if (!(distance(cartesian_[k], cartesian_[l]) > kDistinctTolerance)) {
        throw std::invalid_argument("points " + std::to_string(l) + " and " +
                                    std::to_string(k) + " coincide");
      }
    }
  }
}

Configuration Configuration::with_angles(AngleSet angles) const {
  return Configuration(dim_, circles_, std::move(angles));
}

Configuration build_configuration(const Dimension& dim,
                                  std::vector<Circle> circles,
                                  AngleSet angles) {
  return Configuration(dim, std::move(circles), std::move(angles));
}

AngleSet symmetric_angles(int m) {
  if (m < 1) {
    throw std::invalid_argument("symmetric_angles: m must be >= 1");
  }
  std::vector<double> a(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) a[static_cast<std::size_t>(j)] = kTwoPi * j / m;
  return AngleSet(std::move(a));
}

}  // namespace greenring
