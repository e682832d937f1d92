#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "greenring/domains.hpp"
#include "greenring/geometry.hpp"

namespace greenring {

enum class ChargePattern {
  kPerCircleEqual,        // delta_k constant on each circle
  kAlternatingByHalfPlane  // |delta_k| constant on each circle, negative on odd half-planes
};

/// Discrete charge aligned with Configuration::points(); value k sits at
/// circle k / m, half-plane k % m.
class Charge {
 public:
  static Charge per_circle_equal(std::vector<double> per_circle, std::size_t m);
  static Charge alternating(std::vector<double> magnitudes, std::size_t m);

  ChargePattern pattern() const { return pattern_; }
  const std::vector<double>& values() const { return values_; }
  const std::vector<double>& per_circle() const { return per_circle_; }
  std::size_t circles() const { return per_circle_.size(); }
  std::size_t m() const { return m_; }
  std::size_t size() const { return values_.size(); }

  /// Multiplies every value by alpha. For an alternating charge a negative
  /// alpha yields the globally flipped sign pattern.
  Charge scaled(double alpha) const;
  Charge negated() const { return scaled(-1.0); }

 private:
  Charge(ChargePattern pattern, std::vector<double> per_circle, std::size_t m);

  ChargePattern pattern_;
  std::vector<double> per_circle_;
  std::size_t m_;
  std::vector<double> values_;
};

/// sum_k sum_{l != k} delta_k delta_l g_B(x_k, x_l)
double green_energy(const Configuration& cfg, const Charge& charge,
                    const Domain& dom);

/// Green energy of the configuration's circles placed on arbitrary
/// half-plane angles. The angles need not be sorted or reduced; they must
/// keep the points distinct.
double green_energy_at(const Configuration& cfg, std::span<const double> angles,
                       const Charge& charge, const Domain& dom);

struct PairTerm {
  std::size_t k;
  std::size_t l;
  double green;
  double term;  // delta_k delta_l g, counted once per unordered pair
};

/// Unordered pairs k < l; green_energy = 2 * sum of term.
std::vector<PairTerm> pair_terms(const Configuration& cfg, const Charge& charge,
                                 const Domain& dom);

/// sum_k sum_{l != k} |z_k - z_l|^{-s}
double riesz_energy(std::span<const CartPoint> points, double s);

/// sum_k sum_{l != k} sign_k sign_l |z_k - z_l|^{-s}, signs in {-1, +1}.
double signed_riesz_energy(std::span<const CartPoint> points,
                           std::span<const int> signs, double s);

inline constexpr double kAngleGradientStep = 1e-6;

/// dE/dtheta_j by central differences, rotating the whole half-plane L_j
/// (every circle at once).
std::vector<double> energy_gradient_angles(const Configuration& cfg,
                                           const Charge& charge,
                                           const Domain& dom);

std::vector<double> energy_gradient_at(const Configuration& cfg,
                                       std::span<const double> angles,
                                       const Charge& charge, const Domain& dom);

}  // namespace greenring
