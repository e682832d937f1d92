#include "greenring/extremal.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>
#include <string>

namespace greenring {

namespace {

constexpr double kInfeasible = 1e300;

// Logits u_1..u_{m-1} (u_0 = 0) -> gaps 2*pi*softmax(u) -> angles with
// theta_0 = 0. Every u maps into the open simplex of increasing angles.
std::vector<double> angles_from_logits(const double* u, std::size_t m) {
  std::vector<double> logits(m, 0.0);
  for (std::size_t i = 1; i < m; ++i) logits[i] = u[i - 1];
  const double top = *std::max_element(logits.begin(), logits.end());
  double total = 0.0;
  for (double& l : logits) {
    l = std::exp(l - top);
    total += l;
  }
  std::vector<double> angles(m, 0.0);
  double acc = 0.0;
  for (std::size_t j = 1; j < m; ++j) {
    acc += kTwoPi * logits[j - 1] / total;
    angles[j] = acc;
  }
  return angles;
}

std::vector<double> logits_from_angles(const std::vector<double>& angles) {
  const std::size_t m = angles.size();
  std::vector<double> gaps(m);
  for (std::size_t j = 0; j + 1 < m; ++j) gaps[j] = angles[j + 1] - angles[j];
  gaps[m - 1] = kTwoPi - (angles[m - 1] - angles[0]);
  std::vector<double> u(m - 1);
  for (std::size_t i = 1; i < m; ++i) u[i - 1] = std::log(gaps[i] / gaps[0]);
  return u;
}

bool increasing_in_range(const std::vector<double>& theta) {
  if (theta.front() != 0.0) return false;
  for (std::size_t j = 1; j < theta.size(); ++j) {
    if (!(theta[j] > theta[j - 1])) return false;
  }
  return theta.back() < kTwoPi - kAngleTolerance;
}

// Objective seen by the local search: E for Minimize, -E for Maximize.
class Objective {
 public:
  explicit Objective(const ExtremalProblem& problem)
      : problem_(problem),
        sign_(problem.direction() == Direction::kMinimize ? 1.0 : -1.0) {}

  double sign() const { return sign_; }

  double operator()(const std::vector<double>& theta) const {
    try {
      return sign_ * green_energy_at(problem_.symmetric(), theta,
                                     problem_.charge(), problem_.domain());
    } catch (const std::domain_error&) {
      return kInfeasible;
    }
  }

  std::vector<double> gradient(const std::vector<double>& theta) const {
    auto g = energy_gradient_at(problem_.symmetric(), theta, problem_.charge(),
                                problem_.domain());
    for (double& v : g) v *= sign_;
    return g;
  }

 private:
  const ExtremalProblem& problem_;
  double sign_;
};

struct LocalResult {
  std::vector<double> theta;
  double value = kInfeasible;
  bool converged = false;
};

struct SimplexContext {
  const Objective* objective;
  std::size_t m;
};

double simplex_value(const gsl_vector* u, void* params) {
  const auto* ctx = static_cast<const SimplexContext*>(params);
  return (*ctx->objective)(angles_from_logits(u->data, ctx->m));
}

struct MinimizerDeleter {
  void operator()(gsl_multimin_fminimizer* s) const {
    gsl_multimin_fminimizer_free(s);
  }
};
struct VectorDeleter {
  void operator()(gsl_vector* v) const { gsl_vector_free(v); }
};

LocalResult simplex_search(const Objective& objective,
                           const std::vector<double>& start,
                           const OptimizerOptions& options) {
  const std::size_t m = start.size();
  const std::size_t n = m - 1;
  const auto u0 = logits_from_angles(start);

  std::unique_ptr<gsl_vector, VectorDeleter> x(gsl_vector_alloc(n));
  std::unique_ptr<gsl_vector, VectorDeleter> step(gsl_vector_alloc(n));
  for (std::size_t i = 0; i < n; ++i) {
    gsl_vector_set(x.get(), i, u0[i]);
    gsl_vector_set(step.get(), i, 0.5);
  }

  SimplexContext ctx{&objective, m};
  gsl_multimin_function fn{&simplex_value, n, &ctx};
  std::unique_ptr<gsl_multimin_fminimizer, MinimizerDeleter> s(
      gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, n));
  LocalResult out;
  if (gsl_multimin_fminimizer_set(s.get(), &fn, x.get(), step.get()) !=
      GSL_SUCCESS) {
    return out;
  }

  // Near the optimum, value differences drop into rounding noise and the
  // simplex can keep reflecting without shrinking; a stalled best value ends
  // the search as well.
  const std::size_t stall_window = options.stall_iterations * (n + 1);
  double best_value = gsl_multimin_fminimizer_minimum(s.get());
  std::size_t since_improvement = 0;
  for (std::size_t it = 0; it < options.simplex_max_iterations; ++it) {
    if (gsl_multimin_fminimizer_iterate(s.get()) != GSL_SUCCESS) break;
    const double size = gsl_multimin_fminimizer_size(s.get());
    if (gsl_multimin_test_size(size, options.simplex_tolerance) == GSL_SUCCESS) {
      out.converged = true;
      break;
    }
    const double value = gsl_multimin_fminimizer_minimum(s.get());
    if (value < best_value) {
      best_value = value;
      since_improvement = 0;
    } else if (++since_improvement >= stall_window) {
      out.converged = true;
      break;
    }
  }
  out.theta = angles_from_logits(s->x->data, m);
  out.value = objective(out.theta);
  return out;
}

// Steepest descent on theta_1..theta_{m-1} with halving backtracking.
// Returns the final sup-norm of the free gradient components.
double gradient_refine(const Objective& objective, LocalResult& local,
                       std::size_t steps) {
  std::vector<double>& theta = local.theta;
  double grad_norm = std::numeric_limits<double>::infinity();
  double alpha = 0.0;
  for (std::size_t step = 0; step <= steps; ++step) {
    std::vector<double> g;
    try {
      g = objective.gradient(theta);
    } catch (const std::domain_error&) {
      break;
    }
    g[0] = 0.0;
    grad_norm = 0.0;
    for (double v : g) grad_norm = std::max(grad_norm, std::abs(v));
    if (step == steps || grad_norm == 0.0) break;

    alpha = alpha > 0.0 ? 2.0 * alpha : 1e-2 / grad_norm;
    bool moved = false;
    for (int halving = 0; halving < 60; ++halving, alpha *= 0.5) {
      std::vector<double> trial = theta;
      for (std::size_t j = 1; j < trial.size(); ++j) trial[j] -= alpha * g[j];
      if (!increasing_in_range(trial)) continue;
      const double value = objective(trial);
      if (value < local.value) {
        theta = std::move(trial);
        local.value = value;
        moved = true;
        break;
      }
    }
    if (!moved) break;
  }
  return grad_norm;
}

}  // namespace

ExtremalProblem::ExtremalProblem(Direction direction, Domain domain,
                                 std::vector<Circle> circles, Charge charge)
    : direction_(direction),
      domain_(std::move(domain)),
      charge_(std::move(charge)),
      symmetric_(domain_.dimension(), std::move(circles),
                 symmetric_angles(static_cast<int>(charge_.m()))),
      e_star_(0.0) {
  const bool alternating =
      charge_.pattern() == ChargePattern::kAlternatingByHalfPlane;
  if (direction_ == Direction::kMinimize && alternating) {
    throw std::invalid_argument(
        "minimization problems take a per-circle-equal charge");
  }
  if (direction_ == Direction::kMaximize && !alternating) {
    throw std::invalid_argument(
        "maximization problems take an alternating charge");
  }
  if (direction_ == Direction::kMaximize && charge_.m() % 2 != 0) {
    throw std::invalid_argument("maximization problems need even m");
  }
  e_star_ = green_energy(symmetric_, charge_, domain_);
}

double report_tolerance(double e_star) {
  return 1e-10 * std::max(1.0, std::abs(e_star));
}

namespace {

VerificationReport make_report(const ExtremalProblem& problem,
                               const AngleSet& trial) {
  if (trial.size() != problem.m()) {
    throw std::invalid_argument("trial has " + std::to_string(trial.size()) +
                                " angles, problem has m = " +
                                std::to_string(problem.m()));
  }
  VerificationReport r;
  r.e_star = problem.symmetric_energy();
  r.e_trial = green_energy(problem.at(trial), problem.charge(), problem.domain());
  r.gap = r.e_trial - r.e_star;
  r.tolerance = report_tolerance(r.e_star);
  r.inequality_holds = problem.direction() == Direction::kMinimize
                           ? r.gap >= -r.tolerance
                           : r.gap <= r.tolerance;
  r.trial_angles = trial.values();
  r.symmetric_angles = problem.symmetric().angles().values();
  return r;
}

}  // namespace

VerificationReport verify_minimum(const ExtremalProblem& problem,
                                  const AngleSet& trial) {
  if (problem.direction() != Direction::kMinimize) {
    throw std::invalid_argument(
        "verify_minimum needs a per-circle-equal (minimize) problem");
  }
  return make_report(problem, trial);
}

VerificationReport verify_maximum(const ExtremalProblem& problem,
                                  const AngleSet& trial) {
  if (problem.direction() != Direction::kMaximize) {
    throw std::invalid_argument(
        "verify_maximum needs an alternating (maximize) problem");
  }
  return make_report(problem, trial);
}

VerificationReport verify(const ExtremalProblem& problem, const AngleSet& trial) {
  return problem.direction() == Direction::kMinimize
             ? verify_minimum(problem, trial)
             : verify_maximum(problem, trial);
}

AngleSet random_trial_angles(std::size_t m, Rng& rng, double min_gap) {
  if (m < 1) throw std::invalid_argument("random angles: m must be >= 1");
  if (static_cast<double>(m) * min_gap >= kTwoPi) {
    throw std::invalid_argument("random angles: minimum gap too large for m");
  }
  std::vector<double> a(m);
  for (;;) {
    for (double& v : a) v = kTwoPi * uniform01(rng);
    std::sort(a.begin(), a.end());
    bool ok = a.back() < kTwoPi - 1e-9;
    for (std::size_t j = 0; ok && j < m; ++j) {
      const double gap = j + 1 < m ? a[j + 1] - a[j] : a[0] + kTwoPi - a[j];
      ok = m == 1 || gap >= min_gap;
    }
    if (ok) return AngleSet(a);
  }
}

std::vector<VerificationReport> verify_random_trials(const ExtremalProblem& problem,
                                                     std::size_t trials,
                                                     std::uint64_t seed,
                                                     unsigned workers) {
  std::vector<VerificationReport> out(trials);
  parallel_for(trials, workers, [&](std::size_t i) {
    Rng rng = substream(seed, i);
    out[i] = verify(problem, random_trial_angles(problem.m(), rng));
  });
  return out;
}

AngleSet gauge_fix(const std::vector<double>& angles) {
  if (angles.empty()) throw std::invalid_argument("gauge_fix: no angles");
  std::vector<double> best;
  std::vector<double> shifted(angles.size());
  for (double pivot : angles) {
    for (std::size_t i = 0; i < angles.size(); ++i) {
      shifted[i] = normalize_angle(angles[i] - pivot);
    }
    std::sort(shifted.begin(), shifted.end());
    if (best.empty() || shifted < best) best = shifted;
  }
  return AngleSet(std::move(best));
}

std::size_t default_starts(std::size_t m) { return 8 * m; }

OptimizationResult optimize_angles(const ExtremalProblem& problem,
                                   std::size_t starts, std::uint64_t seed,
                                   unsigned workers,
                                   const OptimizerOptions& options) {
  if (starts < 1) throw std::invalid_argument("optimize_angles: starts >= 1");
  const std::size_t m = problem.m();
  OptimizationResult result;
  result.starts_used = starts;

  if (m == 1) {
    result.best_angles = AngleSet({0.0});
    result.gauge_fixed_angles = result.best_angles;
    result.best_energy = problem.symmetric_energy();
    result.converged = true;
    return result;
  }

  gsl_set_error_handler_off();
  const Objective objective(problem);
  std::vector<LocalResult> locals(starts);
  std::vector<double> grad_norms(starts, 0.0);
  parallel_for(starts, workers, [&](std::size_t s) {
    Rng rng = substream(seed, s);
    std::vector<double> start = random_trial_angles(m, rng).values();
    const double origin = start[0];
    for (double& a : start) a -= origin;
    LocalResult local = simplex_search(objective, start, options);
    if (local.value < kInfeasible) {
      grad_norms[s] = gradient_refine(objective, local, options.gradient_steps);
    }
    locals[s] = std::move(local);
  });

  std::size_t best = starts;
  for (std::size_t s = 0; s < starts; ++s) {
    if (locals[s].value >= kInfeasible) continue;
    if (best == starts || locals[s].value < locals[best].value) best = s;
  }
  if (best == starts) {
    throw std::runtime_error("optimize_angles: no start reached a valid configuration");
  }

  const LocalResult& winner = locals[best];
  result.best_angles = AngleSet(winner.theta);
  result.best_energy = green_energy(problem.at(result.best_angles),
                                    problem.charge(), problem.domain());
  result.gauge_fixed_angles = gauge_fix(winner.theta);
  result.converged =
      winner.converged &&
      grad_norms[best] <= 1e-6 * std::max(1.0, std::abs(result.best_energy));
  return result;
}

std::vector<CartPoint> unit_circle_points(const std::vector<double>& angles) {
  std::vector<CartPoint> pts;
  pts.reserve(angles.size());
  for (double a : angles) pts.push_back(CartPoint{{std::cos(a), std::sin(a)}});
  return pts;
}

std::vector<CartPoint> roots_of_unity(std::size_t n) {
  return unit_circle_points(symmetric_angles(static_cast<int>(n)).values());
}

RieszCheckSummary riesz_extremal_check(std::size_t n, int d, std::size_t trials,
                                       std::uint64_t seed, bool alternating,
                                       unsigned workers) {
  if (n < 2) throw std::invalid_argument("riesz check needs n >= 2");
  if (alternating && n % 2 != 0) {
    throw std::invalid_argument("alternating riesz check needs an even point count");
  }
  const Dimension dim(d);
  RieszCheckSummary out;
  out.n = n;
  out.d = d;
  out.s = dim.d() - 2.0;
  out.alternating = alternating;
  out.trials = trials;

  std::vector<int> signs(n);
  for (std::size_t k = 0; k < n; ++k) signs[k] = k % 2 == 0 ? 1 : -1;
  auto energy = [&](const std::vector<CartPoint>& pts) {
    return alternating ? signed_riesz_energy(pts, signs, out.s)
                       : riesz_energy(pts, out.s);
  };
  out.reference = energy(roots_of_unity(n));

  std::vector<double> values(trials);
  parallel_for(trials, workers, [&](std::size_t i) {
    Rng rng = substream(seed, i);
    values[i] = energy(unit_circle_points(random_trial_angles(n, rng).values()));
  });

  const double slack = 1e-12 * std::abs(out.reference);
  out.min_energy = std::numeric_limits<double>::infinity();
  out.max_energy = -std::numeric_limits<double>::infinity();
  for (double v : values) {
    out.min_energy = std::min(out.min_energy, v);
    out.max_energy = std::max(out.max_energy, v);
    const bool bad = alternating ? v > out.reference + slack
                                 : v < out.reference - slack;
    if (bad) ++out.violations;
  }
  out.min_gap = out.min_energy - out.reference;
  out.max_gap = out.max_energy - out.reference;
  return out;
}

}  // namespace greenring
