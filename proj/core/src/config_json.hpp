#pragma once

// JSON codecs shared by config_io.cpp and harness.cpp. Not installed.

#include <string>

#include <json.hpp>

#include "headnav/config_io.hpp"

namespace headnav::detail {

using json = nlohmann::json;

[[nodiscard]] json encode(const TrialConfig& cfg);
[[nodiscard]] json encode(const TechniqueParams& p);
[[nodiscard]] json encode(const OperatorParams& p);
[[nodiscard]] json encode(const SweepSpec& spec);

/// Parses `text`, mapping syntax errors to ConfigError at the root.
[[nodiscard]] json parse_json(std::string_view text);
[[nodiscard]] SweepSpec decode_sweep_spec(const json& j, const std::string& path);

}  // namespace headnav::detail
