#include "greenring/capacity.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "greenring/parallel.hpp"

namespace greenring {

namespace {

constexpr double kPlateSlack = 1e-12;

std::string plate(std::size_t k) { return "plate " + std::to_string(k); }

}  // namespace

GeneralizedCondenser::GeneralizedCondenser(Domain domain,
                                           std::vector<CartPoint> points,
                                           std::vector<double> levels,
                                           std::vector<double> radius_factors,
                                           double t)
    : domain_(std::move(domain)),
      points_(std::move(points)),
      levels_(std::move(levels)),
      radius_factors_(std::move(radius_factors)),
      t_(t) {
  const std::size_t n = points_.size();
  if (n == 0) throw std::invalid_argument("condenser needs at least one plate");
  if (levels_.size() != n || radius_factors_.size() != n) {
    throw std::invalid_argument(
        "condenser needs one level and one radius factor per point");
  }
  if (!(t_ > 0.0) || !std::isfinite(t_)) {
    throw std::invalid_argument("condenser scale t must be > 0");
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (levels_[k] == 0.0 || !std::isfinite(levels_[k])) {
      throw std::invalid_argument(plate(k) + ": level must be non-zero");
    }
    if (!(radius_factors_[k] > 0.0)) {
      throw std::invalid_argument(plate(k) + ": radius factor must be > 0");
    }
    if (!contains(domain_, points_[k]) ||
        !(boundary_distance(domain_, points_[k]) >
          plate_radius(k) + kPlateSlack)) {
      throw std::domain_error(plate(k) + " touches or crosses the boundary of " +
                              domain_.name());
    }
    for (std::size_t l = 0; l < k; ++l) {
      if (!(distance(points_[k], points_[l]) >
            plate_radius(k) + plate_radius(l) + kPlateSlack)) {
        throw std::domain_error(plate(l) + " and " + plate(k) + " overlap");
      }
    }
  }
}

GeneralizedCondenser GeneralizedCondenser::with_scale(double t) const {
  return GeneralizedCondenser(domain_, points_, levels_, radius_factors_, t);
}

GeneralizedCondenser GeneralizedCondenser::with_levels(
    std::vector<double> levels) const {
  return GeneralizedCondenser(domain_, points_, std::move(levels),
                              radius_factors_, t_);
}

GeneralizedCondenser GeneralizedCondenser::with_points(
    std::vector<CartPoint> points) const {
  return GeneralizedCondenser(domain_, std::move(points), levels_,
                              radius_factors_, t_);
}

double asymptotic_modulus(const GeneralizedCondenser& c) {
  const Domain& dom = c.domain();
  const int d = c.dimension().d();
  const double lambda = c.dimension().lambda();
  const std::size_t n = c.size();

  std::vector<double> nu_k(n);
  double weight = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double mu_pow = std::pow(c.radius_factors()[k], d - 2);
    nu_k[k] = c.levels()[k] * mu_pow;
    weight += c.levels()[k] * c.levels()[k] * mu_pow;
  }
  const double nu = 1.0 / weight;

  double self = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    self += nu_k[k] * nu_k[k] * harmonic_radius_power(dom, c.points()[k]);
  }
  double mutual = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t l = 0; l < n; ++l) {
      if (l == k) continue;
      mutual += nu_k[l] * nu_k[k] * green(dom, c.points()[l], c.points()[k]);
    }
  }
  return nu * lambda * kernel_power(c.t(), d) - lambda * nu * nu * self +
         nu * nu * mutual;
}

namespace {

struct PointChargeSystem {
  Eigen::MatrixXd kernel;
  Eigen::VectorXd sigma;
};

PointChargeSystem point_charge_system(const GeneralizedCondenser& c) {
  const Domain& dom = c.domain();
  if (dom.is_free_space()) {
    throw std::invalid_argument(
        "point-charge oracle needs a domain with a Dirichlet kernel");
  }
  const std::size_t n = c.size();
  if (n > kMaxPointChargePlates) {
    throw std::invalid_argument("point-charge oracle limited to " +
                                std::to_string(kMaxPointChargePlates) +
                                " plates");
  }
  const int d = c.dimension().d();
  const double lambda = c.dimension().lambda();
  const auto nn = static_cast<Eigen::Index>(n);

  PointChargeSystem sys{Eigen::MatrixXd(nn, nn), Eigen::VectorXd(nn)};
  for (std::size_t k = 0; k < n; ++k) {
    const auto kk = static_cast<Eigen::Index>(k);
    sys.sigma(kk) = c.levels()[k];
    sys.kernel(kk, kk) = lambda * kernel_power(c.plate_radius(k), d) -
                         lambda * harmonic_radius_power(dom, c.points()[k]);
    for (std::size_t l = 0; l < n; ++l) {
      if (l == k) continue;
      sys.kernel(kk, static_cast<Eigen::Index>(l)) =
          green(dom, c.points()[k], c.points()[l]);
    }
  }
  if (n == 1 && !(sys.kernel(0, 0) > 0.0)) {
    throw std::runtime_error("point-charge system gave non-positive capacity");
  }
  return sys;
}

}  // namespace

double point_charge_capacity(const GeneralizedCondenser& c) {
  const auto sys = point_charge_system(c);
  if (c.size() == 1) return sys.sigma(0) * sys.sigma(0) / sys.kernel(0, 0);
  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(sys.kernel);
  if (!(lu.rcond() > 1e-14)) {
    throw std::runtime_error("point-charge system is singular");
  }
  const Eigen::VectorXd q = lu.solve(sys.sigma);
  const double cap = sys.sigma.dot(q);
  if (!(cap > 0.0) || !std::isfinite(cap)) {
    throw std::runtime_error("point-charge system gave non-positive capacity");
  }
  return cap;
}

double point_charge_modulus(const GeneralizedCondenser& c) {
  // One plate: the scalar system inverts exactly.
  if (c.size() == 1) {
    const auto sys = point_charge_system(c);
    return sys.kernel(0, 0) / (sys.sigma(0) * sys.sigma(0));
  }
  return 1.0 / point_charge_capacity(c);
}

double concentric_modulus(const Dimension& dim, double inner, double outer) {
  if (!(inner > 0.0) || !(outer > inner)) {
    throw std::invalid_argument("concentric condenser needs 0 < inner < outer");
  }
  return dim.lambda() *
         (kernel_power(inner, dim.d()) - kernel_power(outer, dim.d()));
}

double concentric_capacity(const Dimension& dim, double inner, double outer) {
  return 1.0 / concentric_modulus(dim, inner, outer);
}

FdmResult fdm_solve(const GeneralizedCondenser& c, double h,
                    const FdmOptions& options) {
  if (c.dimension().d() != 3) {
    throw std::invalid_argument("finite-difference capacity supports d = 3 only");
  }
  if (!c.domain().is_ball()) {
    throw std::invalid_argument("finite-difference capacity supports ball domains only");
  }
  if (!(h > 0.0) || h > c.t() / 4.0) {
    throw std::invalid_argument("grid spacing must satisfy 0 < h <= t/4");
  }
  const double radius = c.domain().ball_radius();
  const auto cells = static_cast<std::size_t>(std::ceil(2.0 * radius / h - 1e-9));
  const std::size_t side = cells + 1;
  const std::size_t plane = side * side;
  const std::size_t total = plane * side;
  auto coord = [&](std::size_t i) { return -radius + static_cast<double>(i) * h; };

  std::vector<double> v(total, 0.0);
  std::vector<std::uint8_t> free(total, 0);
  std::vector<std::size_t> plate_nodes(c.size(), 0);
  FdmResult result;

  for (std::size_t i = 0; i < side; ++i) {
    for (std::size_t j = 0; j < side; ++j) {
      for (std::size_t k = 0; k < side; ++k) {
        const double x = coord(i), y = coord(j), z = coord(k);
        const std::size_t idx = i * plane + j * side + k;
        if (x * x + y * y + z * z >= radius * radius) continue;
        bool in_plate = false;
        for (std::size_t p = 0; p < c.size(); ++p) {
          const auto& ctr = c.points()[p];
          const double dx = x - ctr[0], dy = y - ctr[1], dz = z - ctr[2];
          const double r = c.plate_radius(p);
          if (dx * dx + dy * dy + dz * dz <= r * r) {
            v[idx] = c.levels()[p];
            ++plate_nodes[p];
            in_plate = true;
            break;
          }
        }
        if (!in_plate) {
          free[idx] = 1;
          ++result.free_nodes;
        }
      }
    }
  }
  for (std::size_t p = 0; p < c.size(); ++p) {
    if (plate_nodes[p] == 0) {
      throw std::invalid_argument("grid too coarse: " + plate(p) +
                                  " contains no grid node");
    }
  }

  // Free nodes of each (i, j) row lie in a contiguous span inside the ball.
  std::vector<std::size_t> row_lo(plane, 1), row_hi(plane, 0);
  for (std::size_t i = 1; i + 1 < side; ++i) {
    for (std::size_t j = 1; j + 1 < side; ++j) {
      const std::size_t row = i * plane + j * side;
      for (std::size_t k = 1; k + 1 < side; ++k) {
        if (!free[row + k]) continue;
        if (row_lo[i * side + j] > row_hi[i * side + j]) row_lo[i * side + j] = k;
        row_hi[i * side + j] = k;
      }
    }
  }

  const double omega =
      2.0 / (1.0 + std::sin(std::numbers::pi / static_cast<double>(cells)));
  for (result.sweeps = 1; result.sweeps <= options.max_sweeps; ++result.sweeps) {
    double max_correction = 0.0;
    for (std::size_t i = 1; i + 1 < side; ++i) {
      for (std::size_t j = 1; j + 1 < side; ++j) {
        const std::size_t row = i * plane + j * side;
        const std::size_t hi = row_hi[i * side + j];
        for (std::size_t k = row_lo[i * side + j]; k <= hi; ++k) {
          const std::size_t idx = row + k;
          if (!free[idx]) continue;
          const double avg = (v[idx - plane] + v[idx + plane] + v[idx - side] +
                              v[idx + side] + v[idx - 1] + v[idx + 1]) /
                             6.0;
          const double corr = avg - v[idx];
          max_correction = std::max(max_correction, std::abs(corr));
          v[idx] += omega * corr;
        }
      }
    }
    result.residual = max_correction;
    if (max_correction < options.tolerance) break;
  }
  if (result.sweeps > options.max_sweeps) {
    throw std::runtime_error("SOR did not reach the residual tolerance");
  }

  double energy = 0.0;
  for (std::size_t i = 0; i < side; ++i) {
    for (std::size_t j = 0; j < side; ++j) {
      for (std::size_t k = 0; k < side; ++k) {
        const std::size_t idx = i * plane + j * side + k;
        if (i + 1 < side) energy += std::pow(v[idx + plane] - v[idx], 2);
        if (j + 1 < side) energy += std::pow(v[idx + side] - v[idx], 2);
        if (k + 1 < side) energy += std::pow(v[idx + 1] - v[idx], 2);
      }
    }
  }
  result.capacity = h * energy;
  return result;
}

double fdm_capacity(const GeneralizedCondenser& c, double h) {
  return fdm_solve(c, h).capacity;
}

std::vector<ModulusReport> modulus_sweep(const GeneralizedCondenser& base,
                                         const std::vector<double>& t_values,
                                         unsigned workers) {
  for (std::size_t i = 1; i < t_values.size(); ++i) {
    if (!(t_values[i] < t_values[i - 1])) {
      throw std::invalid_argument("sweep t values must be strictly decreasing");
    }
  }
  std::vector<GeneralizedCondenser> condensers;
  condensers.reserve(t_values.size());
  for (double t : t_values) condensers.push_back(base.with_scale(t));

  std::vector<ModulusReport> out(t_values.size());
  parallel_for(t_values.size(), workers, [&](std::size_t i) {
    ModulusReport& r = out[i];
    r.t = t_values[i];
    r.asymptotic = asymptotic_modulus(condensers[i]);
    r.oracle = point_charge_modulus(condensers[i]);
    r.abs_error = std::abs(r.asymptotic - r.oracle);
  });
  return out;
}

bool sweep_errors_shrink(const std::vector<ModulusReport>& reports,
                         double slack) {
  for (std::size_t i = 1; i < reports.size(); ++i) {
    const double floor = 1e-13 * std::max(1.0, std::abs(reports[i].oracle));
    if (reports[i].abs_error > (1.0 + slack) * reports[i - 1].abs_error + floor) {
      return false;
    }
  }
  return true;
}

}  // namespace greenring
