#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "greenring/domains.hpp"
#include "greenring/energy.hpp"
#include "greenring/geometry.hpp"

namespace greenring::cli {

/// Bad config, tagged with the JSON path of the offending field.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string path, const std::string& message)
      : std::runtime_error(path + ": " + message), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

struct SymmetricAngles {};
struct RandomAngles {
  std::size_t count = 500;
  std::optional<std::uint64_t> seed;
};
using AngleSpec = std::variant<SymmetricAngles, RandomAngles, std::vector<std::vector<double>>>;

struct CapacitySpec {
  std::vector<CartPoint> points;
  std::vector<double> levels;
  std::vector<double> radius_factors;
  std::vector<double> t_values;
  std::vector<double> fdm_h;
};

struct RieszSpec {
  std::vector<std::size_t> n;
  std::size_t trials = 1000;
  bool alternating = false;
};

struct ExperimentConfig {
  int dimension = 3;
  std::optional<Domain> domain;
  std::vector<Circle> circles;
  std::size_t m = 0;
  AngleSpec angles = SymmetricAngles{};
  std::optional<Charge> charge;
  std::optional<std::size_t> starts;
  std::optional<CapacitySpec> capacity;
  std::optional<RieszSpec> riesz;
  std::uint64_t seed = 0;
};

/// Which blocks a command needs; parse_config only demands those.
enum class Command { kEnergy, kVerify, kOptimize, kCapacity, kRiesz };

ExperimentConfig parse_config(const nlohmann::json& j, Command command);

/// args excludes the program name. Returns 0 on success, 1 for usage or
/// config errors, 2 when an asserted inequality fails.
int run_command(const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err);

}  // namespace greenring::cli
