#include <cmath>
#include <numbers>
#include <string>

#include "greenring/cli.hpp"

namespace greenring::cli {

using nlohmann::json;

namespace {

std::string child(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

std::string item(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

const json& require(const json& obj, const std::string& path, const std::string& key) {
  if (!obj.contains(key)) throw ConfigError(child(path, key), "required field missing");
  return obj.at(key);
}

double as_number(const json& v, const std::string& path) {
  if (!v.is_number()) throw ConfigError(path, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ConfigError(path, "must be finite");
  return x;
}

std::size_t as_count(const json& v, const std::string& path) {
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw ConfigError(path, "expected a non-negative integer");
  }
  return v.get<std::size_t>();
}

std::uint64_t as_seed(const json& v, const std::string& path) {
  if (!v.is_number_unsigned()) throw ConfigError(path, "expected a non-negative integer");
  return v.get<std::uint64_t>();
}

std::vector<double> as_numbers(const json& v, const std::string& path) {
  if (!v.is_array()) throw ConfigError(path, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(as_number(v[i], item(path, i)));
  return out;
}

bool as_bool(const json& v, const std::string& path) {
  if (!v.is_boolean()) throw ConfigError(path, "expected true or false");
  return v.get<bool>();
}

// Runs a module constructor, re-tagging its exception with a field path.
template <typename F>
auto tagged(const std::string& path, F&& f) {
  try {
    return f();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(path, e.what());
  } catch (const std::domain_error& e) {
    throw ConfigError(path, e.what());
  }
}

Domain parse_domain(const json& j, const Dimension& dim) {
  const std::string path = "domain";
  if (!j.is_object()) throw ConfigError(path, "expected an object");
  const json& kind = require(j, path, "kind");
  if (!kind.is_string()) throw ConfigError("domain.kind", "expected a string");
  const auto k = kind.get<std::string>();
  if (k == "ball") {
    const double r = j.contains("radius") ? as_number(j["radius"], "domain.radius") : 1.0;
    return tagged("domain.radius", [&] { return Domain::ball(dim, r); });
  }
  if (k == "half_space") return Domain::half_space(dim);
  if (k == "free_space") return Domain::free_space(dim);
  throw ConfigError("domain.kind", "unknown kind '" + k + "' (ball, half_space, free_space)");
}

std::vector<Circle> parse_circles(const json& j, const Dimension& dim) {
  const std::string path = "circles";
  if (!j.is_array() || j.empty()) throw ConfigError(path, "expected a non-empty array");
  std::vector<Circle> circles;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string p = item(path, i);
    if (!j[i].is_object()) throw ConfigError(p, "expected an object");
    const double rho = as_number(require(j[i], p, "rho0"), child(p, "rho0"));
    std::vector<double> xp(static_cast<std::size_t>(dim.d() - 2), 0.0);
    if (j[i].contains("xprime0")) {
      xp = as_numbers(j[i]["xprime0"], child(p, "xprime0"));
      if (xp.size() != static_cast<std::size_t>(dim.d() - 2)) {
        throw ConfigError(child(p, "xprime0"),
                          "expected " + std::to_string(dim.d() - 2) + " coordinates");
      }
    }
    circles.push_back(tagged(p, [&] { return Circle(rho, xp); }));
  }
  return circles;
}

AngleSpec parse_angles(const json& j, bool degrees) {
  const std::string path = "angles";
  if (j.is_string()) {
    if (j.get<std::string>() == "symmetric") return SymmetricAngles{};
    throw ConfigError(path, "expected \"symmetric\", a list, or {\"random\": ...}");
  }
  if (j.is_object()) {
    const json& r = require(j, path, "random");
    const std::string p = "angles.random";
    if (!r.is_object()) throw ConfigError(p, "expected an object");
    RandomAngles spec;
    if (r.contains("count")) spec.count = as_count(r["count"], child(p, "count"));
    if (spec.count == 0) throw ConfigError(child(p, "count"), "must be positive");
    if (r.contains("seed")) spec.seed = as_seed(r["seed"], child(p, "seed"));
    return spec;
  }
  if (!j.is_array() || j.empty()) throw ConfigError(path, "expected a non-empty array");
  const double unit = degrees ? std::numbers::pi / 180.0 : 1.0;
  std::vector<std::vector<double>> sets;
  if (j[0].is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) sets.push_back(as_numbers(j[i], item(path, i)));
  } else {
    sets.push_back(as_numbers(j, path));
  }
  for (std::size_t i = 0; i < sets.size(); ++i) {
    if (sets[i].size() != sets[0].size()) {
      throw ConfigError(item(path, i), "all angle lists must have the same length");
    }
    for (auto& a : sets[i]) a *= unit;
  }
  return sets;
}

Charge parse_charge(const json& j, std::size_t circles, std::size_t m) {
  const std::string path = "charge";
  if (!j.is_object()) throw ConfigError(path, "expected an object");
  const json& pattern = require(j, path, "pattern");
  if (!pattern.is_string()) throw ConfigError("charge.pattern", "expected a string");
  std::vector<double> mags(circles, 1.0);
  if (j.contains("magnitudes")) {
    mags = as_numbers(j["magnitudes"], "charge.magnitudes");
    if (mags.size() != circles) {
      throw ConfigError("charge.magnitudes",
                        "expected one value per circle (" + std::to_string(circles) + ")");
    }
  }
  const auto p = pattern.get<std::string>();
  if (p == "per_circle_equal") {
    return tagged("charge", [&] { return Charge::per_circle_equal(mags, m); });
  }
  if (p == "alternating") {
    return tagged("charge", [&] { return Charge::alternating(mags, m); });
  }
  throw ConfigError("charge.pattern",
                    "unknown pattern '" + p + "' (per_circle_equal, alternating)");
}

CapacitySpec parse_capacity(const json& j, const Dimension& dim) {
  const std::string path = "capacity";
  if (!j.is_object()) throw ConfigError(path, "expected an object");
  CapacitySpec spec;
  const json& pts = require(j, path, "points");
  if (!pts.is_array() || pts.empty()) {
    throw ConfigError("capacity.points", "expected a non-empty array");
  }
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const std::string p = item("capacity.points", i);
    auto coords = as_numbers(pts[i], p);
    if (coords.size() != static_cast<std::size_t>(dim.d())) {
      throw ConfigError(p, "expected " + std::to_string(dim.d()) + " coordinates");
    }
    spec.points.push_back(CartPoint{std::move(coords)});
  }
  const std::size_t n = spec.points.size();
  spec.levels = j.contains("levels") ? as_numbers(j["levels"], "capacity.levels")
                                     : std::vector<double>(n, 1.0);
  if (spec.levels.size() != n) throw ConfigError("capacity.levels", "expected one per point");
  spec.radius_factors = j.contains("radius_factors")
                            ? as_numbers(j["radius_factors"], "capacity.radius_factors")
                            : std::vector<double>(n, 1.0);
  if (spec.radius_factors.size() != n) {
    throw ConfigError("capacity.radius_factors", "expected one per point");
  }
  spec.t_values = as_numbers(require(j, path, "t_values"), "capacity.t_values");
  if (spec.t_values.empty()) throw ConfigError("capacity.t_values", "must not be empty");
  for (std::size_t i = 0; i < spec.t_values.size(); ++i) {
    if (spec.t_values[i] <= 0.0) {
      throw ConfigError(item("capacity.t_values", i), "must be positive");
    }
    if (i > 0 && spec.t_values[i] >= spec.t_values[i - 1]) {
      throw ConfigError(item("capacity.t_values", i), "must be strictly decreasing");
    }
  }
  if (j.contains("fdm_h")) {
    const json& h = j["fdm_h"];
    spec.fdm_h = h.is_array() ? as_numbers(h, "capacity.fdm_h")
                              : std::vector<double>{as_number(h, "capacity.fdm_h")};
    for (std::size_t i = 0; i < spec.fdm_h.size(); ++i) {
      if (spec.fdm_h[i] <= 0.0) throw ConfigError(item("capacity.fdm_h", i), "must be positive");
    }
  }
  return spec;
}

RieszSpec parse_riesz(const json& j) {
  const std::string path = "riesz";
  if (!j.is_object()) throw ConfigError(path, "expected an object");
  RieszSpec spec;
  const json& n = require(j, path, "n");
  if (n.is_array()) {
    for (std::size_t i = 0; i < n.size(); ++i) spec.n.push_back(as_count(n[i], item("riesz.n", i)));
  } else {
    spec.n.push_back(as_count(n, "riesz.n"));
  }
  if (spec.n.empty()) throw ConfigError("riesz.n", "must not be empty");
  for (std::size_t i = 0; i < spec.n.size(); ++i) {
    if (spec.n[i] < 2) throw ConfigError("riesz.n", "each n must be at least 2");
  }
  if (j.contains("trials")) spec.trials = as_count(j["trials"], "riesz.trials");
  if (j.contains("alternating")) spec.alternating = as_bool(j["alternating"], "riesz.alternating");
  if (spec.alternating) {
    for (auto v : spec.n) {
      if (v % 2 != 0) throw ConfigError("riesz.n", "alternating signs need even n");
    }
  }
  return spec;
}

}  // namespace

ExperimentConfig parse_config(const json& j, Command command) {
  if (!j.is_object()) throw ConfigError("$", "top level must be an object");
  ExperimentConfig cfg;
  if (j.contains("dimension")) {
    const json& d = j["dimension"];
    if (!d.is_number_integer() || d.get<long long>() < 3 || d.get<long long>() > 64) {
      throw ConfigError("dimension", "expected an integer in [3, 64]");
    }
    cfg.dimension = d.get<int>();
  }
  const Dimension dim(cfg.dimension);
  if (j.contains("seed")) cfg.seed = as_seed(j["seed"], "seed");

  if (command == Command::kRiesz) {
    cfg.riesz = parse_riesz(require(j, "", "riesz"));
    return cfg;
  }

  cfg.domain = parse_domain(require(j, "", "domain"), dim);

  if (command == Command::kCapacity) {
    cfg.capacity = parse_capacity(require(j, "", "capacity"), dim);
    return cfg;
  }

  cfg.circles = parse_circles(require(j, "", "circles"), dim);
  const bool degrees = j.contains("degrees") && as_bool(j["degrees"], "degrees");
  if (j.contains("angles")) {
    cfg.angles = parse_angles(j["angles"], degrees);
  } else if (command == Command::kVerify) {
    cfg.angles = RandomAngles{};
  }
  if (j.contains("m")) {
    cfg.m = as_count(j["m"], "m");
    if (cfg.m == 0) throw ConfigError("m", "must be positive");
  }
  if (const auto* sets = std::get_if<std::vector<std::vector<double>>>(&cfg.angles)) {
    const std::size_t len = sets->front().size();
    if (cfg.m == 0) cfg.m = len;
    if (cfg.m != len) {
      throw ConfigError("angles", "has " + std::to_string(len) + " entries but m is " +
                                      std::to_string(cfg.m));
    }
  }
  if (cfg.m == 0) throw ConfigError("m", "required field missing");
  cfg.charge = parse_charge(require(j, "", "charge"), cfg.circles.size(), cfg.m);

  if (j.contains("optimizer")) {
    const json& o = j["optimizer"];
    if (!o.is_object()) throw ConfigError("optimizer", "expected an object");
    if (o.contains("starts")) {
      cfg.starts = as_count(o["starts"], "optimizer.starts");
      if (*cfg.starts == 0) throw ConfigError("optimizer.starts", "must be positive");
    }
  }
  return cfg;
}

}  // namespace greenring::cli
