#pragma once

#include <cstddef>
#include <vector>

#include "greenring/domains.hpp"
#include "greenring/geometry.hpp"

namespace greenring {

/// Condenser with outer plate at level 0 (the complement of the domain) and
/// closed balls E(x_k, mu_k t) at levels sigma_k.
class GeneralizedCondenser {
 public:
  GeneralizedCondenser(Domain domain, std::vector<CartPoint> points,
                       std::vector<double> levels,
                       std::vector<double> radius_factors, double t);

  const Domain& domain() const { return domain_; }
  const Dimension& dimension() const { return domain_.dimension(); }
  const std::vector<CartPoint>& points() const { return points_; }
  const std::vector<double>& levels() const { return levels_; }
  const std::vector<double>& radius_factors() const { return radius_factors_; }
  double t() const { return t_; }
  std::size_t size() const { return points_.size(); }

  double plate_radius(std::size_t k) const { return radius_factors_[k] * t_; }

  GeneralizedCondenser with_scale(double t) const;
  GeneralizedCondenser with_levels(std::vector<double> levels) const;
  GeneralizedCondenser with_points(std::vector<CartPoint> points) const;

 private:
  Domain domain_;
  std::vector<CartPoint> points_;
  std::vector<double> levels_;
  std::vector<double> radius_factors_;
  double t_;
};

/// Three-term small-t expansion of the condenser modulus:
///   nu lambda t^{2-d} - lambda nu^2 sum nu_k^2 r(B,x_k)^{2-d}
///     + nu^2 sum_{k != l} nu_l nu_k g_B(x_l, x_k)
/// with nu_k = sigma_k mu_k^{d-2}, nu = 1 / sum sigma_k^2 mu_k^{d-2}.
double asymptotic_modulus(const GeneralizedCondenser& c);

/// Capacity of the point-charge model: solve K q = sigma with
/// K_kk = lambda ((mu_k t)^{2-d} - r(B,x_k)^{2-d}), K_kl = g_B(x_k, x_l),
/// and return sum sigma_k q_k. Ball and half-space only; n <= 64.
double point_charge_capacity(const GeneralizedCondenser& c);

/// 1 / point_charge_capacity(c)
double point_charge_modulus(const GeneralizedCondenser& c);

inline constexpr std::size_t kMaxPointChargePlates = 64;

/// Exact modulus of the spherical shell inner < |x| < outer:
/// lambda_d (inner^{2-d} - outer^{2-d}).
double concentric_modulus(const Dimension& dim, double inner, double outer);

double concentric_capacity(const Dimension& dim, double inner, double outer);

struct FdmOptions {
  double tolerance = 1e-8;  // max Gauss-Seidel correction per sweep
  std::size_t max_sweeps = 200000;
};

struct FdmResult {
  double capacity = 0.0;
  std::size_t sweeps = 0;
  double residual = 0.0;
  std::size_t free_nodes = 0;
};

/// Finite-difference capacity for d = 3 ball condensers: 7-point Laplace
/// stencil on a uniform grid of spacing h over the bounding box, nodes in a
/// plate clamped to its level, nodes outside the ball clamped to 0, solved by
/// lexicographic SOR. Capacity = sum over grid edges of h (v_i - v_j)^2.
FdmResult fdm_solve(const GeneralizedCondenser& c, double h,
                    const FdmOptions& options = {});

double fdm_capacity(const GeneralizedCondenser& c, double h);

struct ModulusReport {
  double t = 0.0;
  double asymptotic = 0.0;
  double oracle = 0.0;
  double abs_error = 0.0;
};

/// One report per t (strictly decreasing), pairing the expansion with the
/// point-charge oracle.
std::vector<ModulusReport> modulus_sweep(const GeneralizedCondenser& base,
                                         const std::vector<double>& t_values,
                                         unsigned workers = 1);

/// True when each abs_error is at most (1 + slack) times the previous one,
/// up to a rounding floor of 1e-13 * max(1, |oracle|).
bool sweep_errors_shrink(const std::vector<ModulusReport>& reports,
                         double slack = 0.1);

}  // namespace greenring
