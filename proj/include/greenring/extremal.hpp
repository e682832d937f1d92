#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "greenring/domains.hpp"
#include "greenring/energy.hpp"
#include "greenring/geometry.hpp"
#include "greenring/parallel.hpp"

namespace greenring {

enum class Direction { kMinimize, kMaximize };

/// Circles, charge and domain for one extremality question. Minimize pairs
/// with a per-circle-equal charge, Maximize with an alternating charge on an
/// even number of half-planes.
class ExtremalProblem {
 public:
  ExtremalProblem(Direction direction, Domain domain, std::vector<Circle> circles,
                  Charge charge);

  Direction direction() const { return direction_; }
  const Domain& domain() const { return domain_; }
  const Dimension& dimension() const { return domain_.dimension(); }
  const Charge& charge() const { return charge_; }
  std::size_t m() const { return charge_.m(); }

  /// X*: the circles cut by the equally spaced half-planes.
  const Configuration& symmetric() const { return symmetric_; }
  double symmetric_energy() const { return e_star_; }

  Configuration at(AngleSet angles) const {
    return symmetric_.with_angles(std::move(angles));
  }

 private:
  Direction direction_;
  Domain domain_;
  Charge charge_;
  Configuration symmetric_;
  double e_star_;
};

struct VerificationReport {
  double e_trial = 0.0;
  double e_star = 0.0;
  double gap = 0.0;  // e_trial - e_star
  double tolerance = 0.0;
  bool inequality_holds = false;
  std::vector<double> trial_angles;
  std::vector<double> symmetric_angles;
};

/// 1e-10 * max(1, |e_star|)
double report_tolerance(double e_star);

/// E(X) >= E(X*) for a per-circle-equal charge.
VerificationReport verify_minimum(const ExtremalProblem& problem,
                                  const AngleSet& trial);

/// E(X) <= E(X*) for an alternating charge, m even.
VerificationReport verify_maximum(const ExtremalProblem& problem,
                                  const AngleSet& trial);

/// Dispatches on the problem direction.
VerificationReport verify(const ExtremalProblem& problem, const AngleSet& trial);

inline constexpr double kMinTrialGap = 1e-3;

/// m sorted uniform angles whose cyclic gaps are all >= min_gap.
AngleSet random_trial_angles(std::size_t m, Rng& rng,
                             double min_gap = kMinTrialGap);

/// Trial i is drawn from substream(seed, i).
std::vector<VerificationReport> verify_random_trials(const ExtremalProblem& problem,
                                                     std::size_t trials,
                                                     std::uint64_t seed,
                                                     unsigned workers = 1);

/// Canonical representative modulo global rotation and cyclic relabeling:
/// rotate each angle in turn to 0, sort, keep the lexicographically smallest.
AngleSet gauge_fix(const std::vector<double>& angles);

struct OptimizationResult {
  AngleSet best_angles{{0.0}};
  double best_energy = 0.0;
  std::size_t starts_used = 0;
  bool converged = false;
  AngleSet gauge_fixed_angles{{0.0}};
};

struct OptimizerOptions {
  double simplex_tolerance = 1e-9;
  std::size_t simplex_max_iterations = 20000;
  std::size_t stall_iterations = 100;  // per dimension, without improvement
  std::size_t gradient_steps = 50;
};

/// Multistart local search: Nelder-Mead over the open simplex of increasing
/// angles (theta_0 pinned at 0), then gradient steps with backtracking. Start
/// s is seeded from substream(seed, s).
OptimizationResult optimize_angles(const ExtremalProblem& problem,
                                   std::size_t starts, std::uint64_t seed,
                                   unsigned workers = 1,
                                   const OptimizerOptions& options = {});

/// 8 * m
std::size_t default_starts(std::size_t m);

struct RieszCheckSummary {
  std::size_t n = 0;
  int d = 3;
  double s = 1.0;
  bool alternating = false;
  std::size_t trials = 0;
  double reference = 0.0;  // value at the n-th roots of unity
  double min_energy = 0.0;
  double max_energy = 0.0;
  double min_gap = 0.0;  // energy - reference
  double max_gap = 0.0;
  std::size_t violations = 0;
};

/// Samples random n-point sets on the unit circle and compares their Riesz
/// (d-2)-energy with the roots of unity. With `alternating`, n must be even
/// and the signed energy (signs alternating in angular order) is checked
/// from above instead of below. Violation threshold: 1e-12 * |reference|.
RieszCheckSummary riesz_extremal_check(std::size_t n, int d, std::size_t trials,
                                       std::uint64_t seed, bool alternating,
                                       unsigned workers = 1);

/// The n-th roots of unity as points in the plane.
std::vector<CartPoint> roots_of_unity(std::size_t n);

/// Points on the unit circle at the given angles.
std::vector<CartPoint> unit_circle_points(const std::vector<double>& angles);

}  // namespace greenring
