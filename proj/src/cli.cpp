#include "greenring/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "greenring/capacity.hpp"
#include "greenring/extremal.hpp"

namespace greenring::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitViolation = 2;

struct RunOptions {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out_dir = "out";
  std::string format = "both";
  unsigned jobs = 1;
};

struct Output {
  json report;
  std::string csv_name;  // empty when the command has no table
  std::string csv;
  int exit_code = kExitOk;
};

// 17 significant digits round-trips every double.
std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string join_csv(std::initializer_list<std::string> cells) {
  std::string row;
  for (const auto& c : cells) {
    if (!row.empty()) row += ',';
    row += c;
  }
  return row + '\n';
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("$", "cannot open config file '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("$", e.what());
  }
}

std::uint64_t resolve_seed(const RunOptions& opts, const ExperimentConfig& cfg,
                           std::optional<std::uint64_t> local = std::nullopt) {
  if (opts.seed) return *opts.seed;
  if (local) return *local;
  return cfg.seed;
}

std::vector<AngleSet> angle_sets(const ExperimentConfig& cfg, std::uint64_t seed) {
  std::vector<AngleSet> sets;
  if (std::holds_alternative<SymmetricAngles>(cfg.angles)) {
    sets.push_back(symmetric_angles(static_cast<int>(cfg.m)));
  } else if (const auto* r = std::get_if<RandomAngles>(&cfg.angles)) {
    for (std::size_t i = 0; i < r->count; ++i) {
      Rng rng = substream(seed, i);
      sets.push_back(random_trial_angles(cfg.m, rng));
    }
  } else {
    const auto& raw = std::get<std::vector<std::vector<double>>>(cfg.angles);
    for (std::size_t i = 0; i < raw.size(); ++i) {
      const std::string path = raw.size() == 1 ? "angles" : "angles[" + std::to_string(i) + "]";
      try {
        sets.emplace_back(raw[i]);
      } catch (const std::invalid_argument& e) {
        throw ConfigError(path, e.what());
      }
    }
  }
  return sets;
}

ExtremalProblem make_problem(const ExperimentConfig& cfg) {
  const auto direction = cfg.charge->pattern() == ChargePattern::kPerCircleEqual
                             ? Direction::kMinimize
                             : Direction::kMaximize;
  try {
    return ExtremalProblem(direction, *cfg.domain, cfg.circles, *cfg.charge);
  } catch (const std::invalid_argument& e) {
    throw ConfigError("charge", e.what());
  } catch (const std::domain_error& e) {
    throw ConfigError("circles", e.what());
  }
}

const char* direction_name(Direction d) {
  return d == Direction::kMinimize ? "minimize" : "maximize";
}

json base_report(const char* command, const ExperimentConfig& cfg) {
  json r;
  r["command"] = command;
  r["dimension"] = cfg.dimension;
  if (cfg.domain) r["domain"] = cfg.domain->name();
  return r;
}

Output run_energy(const ExperimentConfig& cfg, const RunOptions& opts, std::ostream& out) {
  Output o;
  o.report = base_report("energy", cfg);
  o.csv_name = "terms.csv";
  o.csv = join_csv({"config_id", "k", "l", "green", "term"});
  const auto sets = angle_sets(cfg, resolve_seed(opts, cfg, [&]() -> std::optional<std::uint64_t> {
    if (const auto* r = std::get_if<RandomAngles>(&cfg.angles)) return r->seed;
    return std::nullopt;
  }()));
  json configs = json::array();
  for (std::size_t i = 0; i < sets.size(); ++i) {
    Configuration c = [&] {
      try {
        return build_configuration(Dimension(cfg.dimension), cfg.circles, sets[i]);
      } catch (const std::invalid_argument& e) {
        throw ConfigError("circles", e.what());
      }
    }();
    const double e = green_energy(c, *cfg.charge, *cfg.domain);
    const auto terms = pair_terms(c, *cfg.charge, *cfg.domain);
    out << "configuration " << i << ": E = " << num(e) << "\n";
    out << "  k  l  green  term\n";
    json pairs = json::array();
    for (const auto& t : terms) {
      out << "  " << t.k << "  " << t.l << "  " << num(t.green) << "  " << num(t.term) << "\n";
      pairs.push_back({{"k", t.k}, {"l", t.l}, {"green", t.green}, {"term", t.term}});
      o.csv += join_csv({std::to_string(i), std::to_string(t.k), std::to_string(t.l),
                         num(t.green), num(t.term)});
    }
    configs.push_back({{"angles", sets[i].values()}, {"energy", e}, {"pairs", pairs}});
  }
  o.report["configurations"] = configs;
  return o;
}

Output run_verify(const ExperimentConfig& cfg, const RunOptions& opts, std::ostream& out) {
  const auto problem = make_problem(cfg);
  std::vector<VerificationReport> reports;
  std::uint64_t seed = resolve_seed(opts, cfg);
  if (const auto* r = std::get_if<RandomAngles>(&cfg.angles)) {
    seed = resolve_seed(opts, cfg, r->seed);
    reports = verify_random_trials(problem, r->count, seed, opts.jobs);
  } else {
    for (const auto& a : angle_sets(cfg, seed)) reports.push_back(verify(problem, a));
  }

  Output o;
  o.report = base_report("verify", cfg);
  o.csv_name = "trials.csv";
  o.csv = join_csv({"trial_id", "e_trial", "e_star", "gap", "holds"});
  std::size_t violations = 0;
  double min_gap = 0.0, max_gap = 0.0;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto& r = reports[i];
    if (!r.inequality_holds) ++violations;
    min_gap = i == 0 ? r.gap : std::min(min_gap, r.gap);
    max_gap = i == 0 ? r.gap : std::max(max_gap, r.gap);
    o.csv += join_csv({std::to_string(i), num(r.e_trial), num(r.e_star), num(r.gap),
                       r.inequality_holds ? "true" : "false"});
  }
  o.report["direction"] = direction_name(problem.direction());
  o.report["seed"] = seed;
  o.report["m"] = cfg.m;
  o.report["e_star"] = problem.symmetric_energy();
  o.report["tolerance"] = report_tolerance(problem.symmetric_energy());
  o.report["symmetric_angles"] = symmetric_angles(static_cast<int>(cfg.m)).values();
  o.report["trials"] = reports.size();
  o.report["violations"] = violations;
  o.report["min_gap"] = min_gap;
  o.report["max_gap"] = max_gap;
  out << "verify (" << direction_name(problem.direction()) << "): " << reports.size()
      << " trials, " << violations << " violations, E* = " << num(problem.symmetric_energy())
      << "\n";
  if (violations > 0) o.exit_code = kExitViolation;
  return o;
}

Output run_optimize(const ExperimentConfig& cfg, const RunOptions& opts, std::ostream& out) {
  const auto problem = make_problem(cfg);
  const std::uint64_t seed = resolve_seed(opts, cfg);
  const std::size_t starts = cfg.starts.value_or(default_starts(cfg.m));
  const auto res = optimize_angles(problem, starts, seed, opts.jobs);

  const auto sym = symmetric_angles(static_cast<int>(cfg.m));
  double deviation = 0.0;
  for (std::size_t i = 0; i < cfg.m; ++i) {
    deviation = std::max(deviation, std::abs(res.gauge_fixed_angles[i] - sym[i]));
  }
  const double e_star = problem.symmetric_energy();
  const double tol = report_tolerance(e_star);
  const bool holds = problem.direction() == Direction::kMinimize
                         ? res.best_energy >= e_star - tol
                         : res.best_energy <= e_star + tol;

  Output o;
  o.report = base_report("optimize", cfg);
  o.report["direction"] = direction_name(problem.direction());
  o.report["seed"] = seed;
  o.report["best_angles"] = res.best_angles.values();
  o.report["best_energy"] = res.best_energy;
  o.report["starts_used"] = res.starts_used;
  o.report["converged"] = res.converged;
  o.report["gauge_fixed_angles"] = res.gauge_fixed_angles.values();
  o.report["e_star"] = e_star;
  o.report["symmetric_angles"] = sym.values();
  o.report["max_angle_deviation"] = deviation;
  o.report["inequality_holds"] = holds;
  out << "optimize (" << direction_name(problem.direction()) << "): best E = "
      << num(res.best_energy) << ", E* = " << num(e_star) << ", max angle deviation "
      << num(deviation) << (res.converged ? "" : " (not converged)") << "\n";
  if (!holds) o.exit_code = kExitViolation;
  return o;
}

Output run_capacity(const ExperimentConfig& cfg, const RunOptions& opts, std::ostream& out) {
  const auto& spec = *cfg.capacity;
  auto base = [&] {
    try {
      return GeneralizedCondenser(*cfg.domain, spec.points, spec.levels, spec.radius_factors,
                                  spec.t_values.front());
    } catch (const std::invalid_argument& e) {
      throw ConfigError("capacity", e.what());
    } catch (const std::domain_error& e) {
      throw ConfigError("capacity", e.what());
    }
  }();
  std::vector<ModulusReport> sweep;
  try {
    sweep = modulus_sweep(base, spec.t_values, opts.jobs);
  } catch (const std::domain_error& e) {
    throw ConfigError("capacity.t_values", e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError("capacity", e.what());
  }
  const bool shrinks = sweep_errors_shrink(sweep);

  Output o;
  o.report = base_report("capacity", cfg);
  o.csv_name = "sweep.csv";
  o.csv = join_csv({"t", "asymptotic", "oracle", "abs_error"});
  json rows = json::array();
  for (const auto& r : sweep) {
    rows.push_back({{"t", r.t}, {"asymptotic", r.asymptotic}, {"oracle", r.oracle},
                    {"abs_error", r.abs_error}});
    o.csv += join_csv({num(r.t), num(r.asymptotic), num(r.oracle), num(r.abs_error)});
    out << "t = " << num(r.t) << ": asymptotic " << num(r.asymptotic) << ", oracle "
        << num(r.oracle) << ", |diff| " << num(r.abs_error) << "\n";
  }
  o.report["sweep"] = rows;
  o.report["errors_shrink"] = shrinks;

  if (!spec.fdm_h.empty()) {
    json fdm = json::array();
    for (double h : spec.fdm_h) {
      FdmResult f;
      try {
        f = fdm_solve(base, h);
      } catch (const std::invalid_argument& e) {
        throw ConfigError("capacity.fdm_h", e.what());
      } catch (const std::domain_error& e) {
        throw ConfigError("capacity.fdm_h", e.what());
      }
      const double oracle = point_charge_capacity(base);
      fdm.push_back({{"t", base.t()},
                     {"h", h},
                     {"capacity", f.capacity},
                     {"point_charge_capacity", oracle},
                     {"relative_difference", (f.capacity - oracle) / oracle},
                     {"sweeps", f.sweeps},
                     {"free_nodes", f.free_nodes}});
      out << "fdm h = " << num(h) << ": capacity " << num(f.capacity) << " (point-charge "
          << num(oracle) << ", " << f.sweeps << " sweeps)\n";
    }
    o.report["fdm"] = fdm;
  }
  if (!shrinks) {
    out << "expansion error did not shrink along the t sweep\n";
    o.exit_code = kExitViolation;
  }
  return o;
}

Output run_riesz(const ExperimentConfig& cfg, const RunOptions& opts, std::ostream& out) {
  const auto& spec = *cfg.riesz;
  const std::uint64_t seed = resolve_seed(opts, cfg);
  Output o;
  o.report = base_report("riesz", cfg);
  o.report["seed"] = seed;
  json checks = json::array();
  std::size_t violations = 0;
  for (std::size_t n : spec.n) {
    const auto s = riesz_extremal_check(n, cfg.dimension, spec.trials, seed, spec.alternating,
                                        opts.jobs);
    violations += s.violations;
    checks.push_back({{"n", s.n},
                      {"s", s.s},
                      {"alternating", s.alternating},
                      {"trials", s.trials},
                      {"reference", s.reference},
                      {"min_energy", s.min_energy},
                      {"max_energy", s.max_energy},
                      {"min_gap", s.min_gap},
                      {"max_gap", s.max_gap},
                      {"violations", s.violations}});
    out << "n = " << n << ": reference " << num(s.reference) << ", gap range [" << num(s.min_gap)
        << ", " << num(s.max_gap) << "], " << s.violations << " violations\n";
  }
  o.report["checks"] = checks;
  o.report["violations"] = violations;
  if (violations > 0) o.exit_code = kExitViolation;
  return o;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << text;
}

int execute(Command command, const RunOptions& opts, std::ostream& out) {
  const auto cfg = parse_config(load_json(opts.config_path), command);
  Output o;
  switch (command) {
    case Command::kEnergy: o = run_energy(cfg, opts, out); break;
    case Command::kVerify: o = run_verify(cfg, opts, out); break;
    case Command::kOptimize: o = run_optimize(cfg, opts, out); break;
    case Command::kCapacity: o = run_capacity(cfg, opts, out); break;
    case Command::kRiesz: o = run_riesz(cfg, opts, out); break;
  }
  const fs::path dir(opts.out_dir);
  fs::create_directories(dir);
  // Commands without a table always get their JSON report.
  if (opts.format != "csv" || o.csv_name.empty()) {
    write_file(dir / "report.json", o.report.dump(2) + "\n");
  }
  if (opts.format != "json" && !o.csv_name.empty()) write_file(dir / o.csv_name, o.csv);
  return o.exit_code;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Discrete Green energy on circles and condenser modulus checks", "greenring"};
  app.require_subcommand(1);
  RunOptions opts;
  std::uint64_t seed = 0;

  const std::vector<std::pair<Command, std::pair<const char*, const char*>>> commands{
      {Command::kEnergy, {"energy", "Green energy and pair terms of configurations"}},
      {Command::kVerify, {"verify", "Check the symmetric configuration is extremal"}},
      {Command::kOptimize, {"optimize", "Multistart search over angles"}},
      {Command::kCapacity, {"capacity", "Asymptotic modulus against point-charge and grid oracles"}},
      {Command::kRiesz, {"riesz", "Roots of unity against random circle configurations"}},
  };
  std::vector<std::pair<Command, CLI::App*>> subs;
  std::vector<CLI::Option*> seed_opts;
  for (const auto& [cmd, text] : commands) {
    auto* sub = app.add_subcommand(text.first, text.second);
    sub->add_option("config", opts.config_path, "JSON config file")->required();
    seed_opts.push_back(sub->add_option("--seed", seed, "Override the config seed"));
    sub->add_option("--out", opts.out_dir, "Output directory")->capture_default_str();
    sub->add_option("--format", opts.format, "Report format")
        ->check(CLI::IsMember({"json", "csv", "both"}))
        ->capture_default_str();
    sub->add_option("--jobs", opts.jobs, "Worker threads")
        ->check(CLI::Range(1u, 256u))
        ->capture_default_str();
    subs.emplace_back(cmd, sub);
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }
  for (auto* o : seed_opts) {
    if (o->count() > 0) opts.seed = seed;
  }

  for (const auto& [cmd, sub] : subs) {
    if (!sub->parsed()) continue;
    try {
      return execute(cmd, opts, out);
    } catch (const ConfigError& e) {
      err << "config error at " << e.what() << "\n";
      return kExitUsage;
    } catch (const std::exception& e) {
      err << "error: " << e.what() << "\n";
      return kExitUsage;
    }
  }
  return kExitUsage;
}

}  // namespace greenring::cli
