#pragma once

// CSV persistence for tick logs and recorded input traces, plus an input
// source that replays a trace through the engine.
//
// Numbers are written in shortest round-trip form so a file read back yields
// bit-identical doubles.

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "headnav/engine.hpp"

namespace headnav {

/// Malformed trace or log content; line() is 1-based, 0 when unknown.
class TraceError : public std::runtime_error {
 public:
  TraceError(const std::string& what, std::size_t line)
      : std::runtime_error(what), line_(line) {}
  [[nodiscard]] std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

[[nodiscard]] std::string format_double(double v);
/// Parses the whole of `text` as a double; throws std::invalid_argument.
[[nodiscard]] double parse_double(std::string_view text);
/// Splits one CSV line on commas (no quoting; fields never contain commas).
[[nodiscard]] std::vector<std::string_view> split_csv(std::string_view line);

inline constexpr std::string_view kTickLogHeader =
    "tick,time_s,yaw_deg,x_norm,zone_or_phase,y_norm,workspace_deg,containment,button,event";
inline constexpr std::string_view kInputTraceHeader =
    "time_s,yaw_deg,controller_velocity,joystick,button";

void write_tick_log(std::ostream& out, const std::vector<TickRow>& rows);
void write_tick_log(const std::filesystem::path& path, const std::vector<TickRow>& rows);
[[nodiscard]] std::vector<TickRow> read_tick_log(std::istream& in);

struct TraceRow {
  double time_s = 0.0;
  double yaw_deg = 0.0;
  /// Normalized controller velocity in [-1, 1].
  double controller_velocity = 0.0;
  double joystick = 0.0;
  bool button = false;

  friend bool operator==(const TraceRow&, const TraceRow&) = default;
};

void write_input_trace(std::ostream& out, const std::vector<TraceRow>& rows);

/// Reads an input trace. A tick log is accepted too: its x_norm column feeds
/// both controller_velocity and joystick.
[[nodiscard]] std::vector<TraceRow> read_input_trace(std::istream& in);
[[nodiscard]] std::vector<TraceRow> read_input_trace(const std::filesystem::path& path);

/// Sample-and-hold playback keyed on time_s. Before the first row the input
/// is neutral with the button up; after the last row the last row holds.
class TraceSource final : public InputSource {
 public:
  explicit TraceSource(std::vector<TraceRow> rows);
  InputSample next(const Observation& obs) override;

 private:
  std::vector<TraceRow> rows_;
  std::size_t cursor_ = 0;
};

}  // namespace headnav
