#include "greenring/energy.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace greenring {

namespace {

void check_charge(const Configuration& cfg, const Charge& charge) {
  if (charge.circles() != cfg.circles().size() || charge.m() != cfg.m()) {
    throw std::invalid_argument(
        "charge layout (" + std::to_string(charge.circles()) + " circles x " +
        std::to_string(charge.m()) + ") does not match configuration (" +
        std::to_string(cfg.circles().size()) + " x " +
        std::to_string(cfg.m()) + ")");
  }
}

std::vector<CartPoint> place(const Configuration& cfg,
                             std::span<const double> angles) {
  if (angles.size() != cfg.m()) {
    throw std::invalid_argument("expected " + std::to_string(cfg.m()) +
                                " angles, got " + std::to_string(angles.size()));
  }
  std::vector<CartPoint> pts;
  pts.reserve(cfg.size());
  for (const Circle& circle : cfg.circles()) {
    for (double theta : angles) {
      pts.push_back(cyl_to_cart(CylPoint(circle.rho0(), theta, circle.xprime0()),
                                cfg.dimension()));
    }
  }
  return pts;
}

double energy_of(std::span<const CartPoint> pts, std::span<const double> delta,
                 const Domain& dom) {
  for (const CartPoint& p : pts) {
    if (!contains(dom, p)) {
      throw std::domain_error("configuration point is not interior to " +
                              dom.name());
    }
  }
  double sum = 0.0;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    for (std::size_t l = k + 1; l < pts.size(); ++l) {
      sum += delta[k] * delta[l] * green(dom, pts[k], pts[l]);
    }
  }
  return 2.0 * sum;
}

double pair_distance_checked(const CartPoint& a, const CartPoint& b) {
  const double r = distance(a, b);
  if (!(r > kDistinctTolerance)) {
    throw std::domain_error("riesz energy: coincident points");
  }
  return r;
}

}  // namespace

Charge::Charge(ChargePattern pattern, std::vector<double> per_circle,
               std::size_t m)
    : pattern_(pattern), per_circle_(std::move(per_circle)), m_(m) {
  if (per_circle_.empty()) {
    throw std::invalid_argument("charge needs one value per circle");
  }
  if (m_ < 1) throw std::invalid_argument("charge needs m >= 1");
  for (std::size_t c = 0; c < per_circle_.size(); ++c) {
    const double v = per_circle_[c];
    if (v == 0.0 || !std::isfinite(v)) {
      throw std::invalid_argument("charge on circle " + std::to_string(c) +
                                  " must be finite and non-zero");
    }
  }
  values_.reserve(per_circle_.size() * m_);
  for (double v : per_circle_) {
    for (std::size_t j = 0; j < m_; ++j) {
      if (pattern_ == ChargePattern::kAlternatingByHalfPlane && j % 2 == 1) {
        values_.push_back(-v);
      } else {
        values_.push_back(v);
      }
    }
  }
}

Charge Charge::per_circle_equal(std::vector<double> per_circle, std::size_t m) {
  return Charge(ChargePattern::kPerCircleEqual, std::move(per_circle), m);
}

Charge Charge::alternating(std::vector<double> magnitudes, std::size_t m) {
  if (m % 2 != 0) {
    throw std::invalid_argument("alternating charge requires even m, got " +
                                std::to_string(m));
  }
  for (double v : magnitudes) {
    if (!(v > 0.0)) {
      throw std::invalid_argument("alternating charge magnitudes must be > 0");
    }
  }
  return Charge(ChargePattern::kAlternatingByHalfPlane, std::move(magnitudes), m);
}

Charge Charge::scaled(double alpha) const {
  std::vector<double> pc = per_circle_;
  for (double& v : pc) v *= alpha;
  return Charge(pattern_, std::move(pc), m_);
}

double green_energy(const Configuration& cfg, const Charge& charge,
                    const Domain& dom) {
  check_charge(cfg, charge);
  if (!(cfg.dimension() == dom.dimension())) {
    throw std::invalid_argument("configuration and domain dimensions differ");
  }
  return energy_of(cfg.cartesian(), charge.values(), dom);
}

double green_energy_at(const Configuration& cfg, std::span<const double> angles,
                       const Charge& charge, const Domain& dom) {
  check_charge(cfg, charge);
  const auto pts = place(cfg, angles);
  return energy_of(pts, charge.values(), dom);
}

std::vector<PairTerm> pair_terms(const Configuration& cfg, const Charge& charge,
                                 const Domain& dom) {
  check_charge(cfg, charge);
  const auto& pts = cfg.cartesian();
  const auto& delta = charge.values();
  std::vector<PairTerm> out;
  out.reserve(pts.size() * (pts.size() - 1) / 2);
  for (std::size_t k = 0; k < pts.size(); ++k) {
    for (std::size_t l = k + 1; l < pts.size(); ++l) {
      const double g = green(dom, pts[k], pts[l]);
      out.push_back({k, l, g, delta[k] * delta[l] * g});
    }
  }
  return out;
}

double riesz_energy(std::span<const CartPoint> points, double s) {
  if (s == 0.0) throw std::invalid_argument("riesz energy requires s != 0");
  double sum = 0.0;
  for (std::size_t k = 0; k < points.size(); ++k) {
    for (std::size_t l = k + 1; l < points.size(); ++l) {
      sum += std::pow(pair_distance_checked(points[k], points[l]), -s);
    }
  }
  return 2.0 * sum;
}

double signed_riesz_energy(std::span<const CartPoint> points,
                           std::span<const int> signs, double s) {
  if (s == 0.0) throw std::invalid_argument("riesz energy requires s != 0");
  if (signs.size() != points.size()) {
    throw std::invalid_argument("one sign per point required");
  }
  for (int sg : signs) {
    if (sg != 1 && sg != -1) throw std::invalid_argument("signs must be +-1");
  }
  double sum = 0.0;
  for (std::size_t k = 0; k < points.size(); ++k) {
    for (std::size_t l = k + 1; l < points.size(); ++l) {
      sum += signs[k] * signs[l] *
             std::pow(pair_distance_checked(points[k], points[l]), -s);
    }
  }
  return 2.0 * sum;
}

std::vector<double> energy_gradient_at(const Configuration& cfg,
                                       std::span<const double> angles,
                                       const Charge& charge, const Domain& dom) {
  const double h = kAngleGradientStep;
  std::vector<double> work(angles.begin(), angles.end());
  std::vector<double> grad(work.size());
  for (std::size_t j = 0; j < work.size(); ++j) {
    const double theta = work[j];
    work[j] = theta + h;
    const double up = green_energy_at(cfg, work, charge, dom);
    work[j] = theta - h;
    const double down = green_energy_at(cfg, work, charge, dom);
    work[j] = theta;
    grad[j] = (up - down) / (2.0 * h);
  }
  return grad;
}

std::vector<double> energy_gradient_angles(const Configuration& cfg,
                                           const Charge& charge,
                                           const Domain& dom) {
  return energy_gradient_at(cfg, cfg.angles().values(), charge, dom);
}

}  // namespace greenring
