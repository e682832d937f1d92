#include "greenring/domains.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace greenring {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void check_dimension(const Domain& dom, const CartPoint& x) {
  if (x.size() != static_cast<std::size_t>(dom.dimension().d())) {
    throw std::invalid_argument("point has " + std::to_string(x.size()) +
                                " coordinates, domain dimension is " +
                                std::to_string(dom.dimension().d()));
  }
}

void require_interior(const Domain& dom, const CartPoint& x) {
  if (!contains(dom, x)) {
    throw std::domain_error("point is not interior to " + dom.name());
  }
}

}  // namespace

Domain Domain::ball(Dimension dim, double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw std::invalid_argument("ball radius must be positive and finite");
  }
  return Domain(dim, Ball{radius});
}

Domain Domain::half_space(Dimension dim) { return Domain(dim, HalfSpace{}); }

Domain Domain::free_space(Dimension dim) { return Domain(dim, FreeSpace{}); }

double Domain::ball_radius() const {
  if (const auto* b = std::get_if<Ball>(&shape_)) return b->radius;
  throw std::logic_error("domain is not a ball");
}

std::string Domain::name() const {
  return std::visit(
      overloaded{
          [](const Ball& b) { return "ball(" + std::to_string(b.radius) + ")"; },
          [](const HalfSpace&) { return std::string("half_space"); },
          [](const FreeSpace&) { return std::string("free_space"); }},
      shape_);
}

double kernel_power(double r, int d) {
  if (d == 3) return 1.0 / r;
  return std::exp((2.0 - d) * std::log(r));
}

double newtonian_kernel(const Dimension& dim, double r) {
  return dim.lambda() * kernel_power(r, dim.d());
}

bool contains(const Domain& dom, const CartPoint& x) {
  check_dimension(dom, x);
  return std::visit(
      overloaded{[&](const Ball& b) { return norm(x) < b.radius; },
                 [&](const HalfSpace&) { return x.coords.back() > 0.0; },
                 [](const FreeSpace&) { return true; }},
      dom.shape());
}

double boundary_distance(const Domain& dom, const CartPoint& x) {
  check_dimension(dom, x);
  return std::visit(
      overloaded{[&](const Ball& b) { return b.radius - norm(x); },
                 [&](const HalfSpace&) { return x.coords.back(); },
                 [](const FreeSpace&) {
                   return std::numeric_limits<double>::infinity();
                 }},
      dom.shape());
}

double green(const Domain& dom, const CartPoint& x, const CartPoint& y) {
  require_interior(dom, x);
  require_interior(dom, y);
  const double r = distance(x, y);
  if (!(r > kDistinctTolerance)) {
    throw std::domain_error("green: coincident points");
  }
  const int d = dom.dimension().d();
  const double lambda = dom.dimension().lambda();
  return std::visit(
      overloaded{
          [&](const Ball& b) {
            // |(|y|/t) x - (t/|y|) y|^2 expanded; symmetric in x, y and
            // equal to t^2 at y = 0.
            const double t = b.radius;
            const double img2 =
                dot(x, x) * dot(y, y) / (t * t) - 2.0 * dot(x, y) + t * t;
            return lambda * (kernel_power(r, d) -
                             kernel_power(std::sqrt(img2), d));
          },
          [&](const HalfSpace&) {
            CartPoint mirrored = y;
            mirrored.coords.back() = -mirrored.coords.back();
            return lambda *
                   (kernel_power(r, d) - kernel_power(distance(x, mirrored), d));
          },
          [&](const FreeSpace&) { return lambda * kernel_power(r, d); }},
      dom.shape());
}

double harmonic_radius(const Domain& dom, const CartPoint& x) {
  require_interior(dom, x);
  return std::visit(
      overloaded{[&](const Ball& b) {
                   return (b.radius * b.radius - dot(x, x)) / b.radius;
                 },
                 [&](const HalfSpace&) { return 2.0 * x.coords.back(); },
                 [](const FreeSpace&) {
                   return std::numeric_limits<double>::infinity();
                 }},
      dom.shape());
}

double harmonic_radius_power(const Domain& dom, const CartPoint& x) {
  if (dom.is_free_space()) {
    require_interior(dom, x);
    return 0.0;
  }
  return kernel_power(harmonic_radius(dom, x), dom.dimension().d());
}

double green_is_harmonic_check(const Domain& dom, const CartPoint& y,
                               const CartPoint& x, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("stencil step must be > 0");
  require_interior(dom, y);
  if (boundary_distance(dom, x) < 4.0 * h) {
    throw std::domain_error("stencil leaves the domain");
  }
  if (distance(x, y) < 4.0 * h) {
    throw std::domain_error("stencil too close to the pole");
  }
  const double center = green(dom, x, y);
  double sum = 0.0;
  CartPoint probe = x;
  for (std::size_t i = 0; i < x.size(); ++i) {
    probe[i] = x[i] + h;
    sum += green(dom, probe, y);
    probe[i] = x[i] - h;
    sum += green(dom, probe, y);
    probe[i] = x[i];
  }
  const double n = 2.0 * static_cast<double>(x.size());
  return (sum - n * center) / (h * h);
}

}  // namespace greenring
