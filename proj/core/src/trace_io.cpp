#include "headnav/trace_io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <system_error>

namespace headnav {

namespace {

constexpr double kTimeEpsilon = 1e-9;

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) {
    s.remove_suffix(1);
  }
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  return s;
}

bool parse_bool(std::string_view s) {
  if (s == "1" || s == "true") return true;
  if (s == "0" || s == "false") return false;
  throw std::invalid_argument("expected 0/1 or true/false, got '" + std::string(s) + "'");
}

Containment parse_containment(std::string_view s) {
  if (s == "outside") return Containment::Outside;
  if (s == "partial") return Containment::Partial;
  if (s == "contained") return Containment::Contained;
  throw std::invalid_argument("unknown containment '" + std::string(s) + "'");
}

std::int64_t parse_int(std::string_view s) {
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw std::invalid_argument("expected an integer, got '" + std::string(s) + "'");
  }
  return v;
}

/// Line reader that skips blanks and '#' comments and tracks line numbers.
class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  bool next(std::string_view& out) {
    while (std::getline(in_, buffer_)) {
      ++line_;
      const std::string_view t = trim(buffer_);
      if (t.empty() || t.front() == '#') continue;
      out = t;
      return true;
    }
    return false;
  }
  [[nodiscard]] std::size_t line() const { return line_; }

 private:
  std::istream& in_;
  std::string buffer_;
  std::size_t line_ = 0;
};

template <typename Fn>
auto at_line(std::size_t line, Fn&& fn) {
  try {
    return fn();
  } catch (const std::invalid_argument& e) {
    throw TraceError("line " + std::to_string(line) + ": " + e.what(), line);
  }
}

}  // namespace

std::string format_double(double v) {
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc{}) throw std::runtime_error("number formatting failed");
  return {buf.data(), ptr};
}

double parse_double(std::string_view text) {
  text = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    throw std::invalid_argument("expected a number, got '" + std::string(text) + "'");
  }
  if (!std::isfinite(v)) {
    throw std::invalid_argument("non-finite number '" + std::string(text) + "'");
  }
  return v;
}

std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(trim(line.substr(start)));
      return fields;
    }
    fields.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
}

void write_tick_log(std::ostream& out, const std::vector<TickRow>& rows) {
  out << kTickLogHeader << '\n';
  for (const TickRow& r : rows) {
    out << r.tick << ',' << format_double(r.time_s) << ',' << format_double(r.yaw_deg)
        << ',' << format_double(r.x_norm) << ',' << r.zone_or_phase << ','
        << format_double(r.y_norm) << ',' << format_double(r.workspace_deg) << ','
        << to_string(r.containment) << ',' << (r.button ? 1 : 0) << ',' << r.event << '\n';
  }
}

void write_tick_log(const std::filesystem::path& path, const std::vector<TickRow>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  write_tick_log(out, rows);
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

std::vector<TickRow> read_tick_log(std::istream& in) {
  LineReader reader(in);
  std::string_view line;
  if (!reader.next(line) || line != kTickLogHeader) {
    throw TraceError("missing tick log header", reader.line());
  }
  std::vector<TickRow> rows;
  while (reader.next(line)) {
    rows.push_back(at_line(reader.line(), [&] {
      const auto f = split_csv(line);
      if (f.size() != 10) {
        throw std::invalid_argument("expected 10 fields, got " + std::to_string(f.size()));
      }
      TickRow r;
      r.tick = parse_int(f[0]);
      r.time_s = parse_double(f[1]);
      r.yaw_deg = parse_double(f[2]);
      r.x_norm = parse_double(f[3]);
      r.zone_or_phase = std::string(f[4]);
      r.y_norm = parse_double(f[5]);
      r.workspace_deg = parse_double(f[6]);
      r.containment = parse_containment(f[7]);
      r.button = parse_bool(f[8]);
      r.event = std::string(f[9]);
      return r;
    }));
  }
  return rows;
}

void write_input_trace(std::ostream& out, const std::vector<TraceRow>& rows) {
  out << kInputTraceHeader << '\n';
  for (const TraceRow& r : rows) {
    out << format_double(r.time_s) << ',' << format_double(r.yaw_deg) << ','
        << format_double(r.controller_velocity) << ',' << format_double(r.joystick) << ','
        << (r.button ? 1 : 0) << '\n';
  }
}

std::vector<TraceRow> read_input_trace(std::istream& in) {
  LineReader reader(in);
  std::string_view line;
  if (!reader.next(line)) throw TraceError("empty trace", reader.line());

  const bool tick_log = line == kTickLogHeader;
  if (!tick_log && line != kInputTraceHeader) {
    throw TraceError("line " + std::to_string(reader.line()) + ": unrecognized header, expected '" +
                         std::string(kInputTraceHeader) + "'",
                     reader.line());
  }

  std::vector<TraceRow> rows;
  while (reader.next(line)) {
    TraceRow r = at_line(reader.line(), [&] {
      const auto f = split_csv(line);
      TraceRow row;
      if (tick_log) {
        if (f.size() != 10) {
          throw std::invalid_argument("expected 10 fields, got " + std::to_string(f.size()));
        }
        row.time_s = parse_double(f[1]);
        row.yaw_deg = parse_double(f[2]);
        row.controller_velocity = parse_double(f[3]);
        row.joystick = row.controller_velocity;
        row.button = parse_bool(f[8]);
      } else {
        if (f.size() != 5) {
          throw std::invalid_argument("expected 5 fields, got " + std::to_string(f.size()));
        }
        row.time_s = parse_double(f[0]);
        row.yaw_deg = parse_double(f[1]);
        row.controller_velocity = parse_double(f[2]);
        row.joystick = parse_double(f[3]);
        row.button = parse_bool(f[4]);
      }
      if (row.time_s < 0.0) throw std::invalid_argument("time_s must be >= 0");
      if (std::abs(row.controller_velocity) > 1.0 || std::abs(row.joystick) > 1.0) {
        throw std::invalid_argument("controller_velocity and joystick must be in [-1, 1]");
      }
      if (!rows.empty() && row.time_s < rows.back().time_s) {
        throw std::invalid_argument("time_s must be non-decreasing");
      }
      return row;
    });
    rows.push_back(r);
  }
  return rows;
}

std::vector<TraceRow> read_input_trace(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  try {
    return read_input_trace(in);
  } catch (const TraceError& e) {
    throw TraceError(path.string() + ": " + e.what(), e.line());
  }
}

TraceSource::TraceSource(std::vector<TraceRow> rows) : rows_(std::move(rows)) {}

InputSample TraceSource::next(const Observation& obs) {
  const double now = static_cast<double>(obs.tick) * obs.dt;
  while (cursor_ < rows_.size() && rows_[cursor_].time_s <= now + kTimeEpsilon) ++cursor_;
  InputSample s;
  if (cursor_ == 0) return s;
  const TraceRow& r = rows_[cursor_ - 1];
  s.yaw_deg = r.yaw_deg;
  s.controller_velocity = r.controller_velocity;
  s.joystick = r.joystick;
  s.button = r.button;
  return s;
}

}  // namespace headnav
