#pragma once

// JSON configuration files. Parsing is strict: unknown keys and wrong types
// are rejected with the JSON path of the offending field.

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "headnav/engine.hpp"
#include "headnav/harness.hpp"
#include "headnav/user_model.hpp"

namespace headnav {

class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& path, const std::string& message)
      : std::runtime_error(path.empty() ? message : path + ": " + message), path_(path) {}
  [[nodiscard]] const std::string& path() const { return path_; }

 private:
  std::string path_;
};

inline constexpr int kSchemaVersion = 1;

/// Everything `simulate` needs for one trial.
struct SimulationConfig {
  TrialConfig trial{};
  TechniqueParams technique_params{};
  OperatorParams op{};

  friend bool operator==(const SimulationConfig&, const SimulationConfig&) = default;
};

[[nodiscard]] SimulationConfig parse_simulation_config(std::string_view json_text);
[[nodiscard]] SimulationConfig load_simulation_config(const std::filesystem::path& path);
[[nodiscard]] std::string dump_simulation_config(const SimulationConfig& cfg);

[[nodiscard]] SweepSpec parse_sweep_spec(std::string_view json_text);
[[nodiscard]] SweepSpec load_sweep_spec(const std::filesystem::path& path);
[[nodiscard]] std::string dump_sweep_spec(const SweepSpec& spec);

/// Parses a technique parameter object such as the one under
/// "technique_params" in a config file.
[[nodiscard]] TechniqueParams parse_technique_params(std::string_view json_text);

}  // namespace headnav
