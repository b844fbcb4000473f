#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "shepwm/angles.hpp"
#include "shepwm/waveform.hpp"

namespace shepwm {

/// On/off flags for the four H-bridge switches: S1 top-left, S2 bottom-left,
/// S3 top-right, S4 bottom-right, load across the two midpoints.
struct bridge_state {
  bool s1 = false;
  bool s2 = false;
  bool s3 = false;
  bool s4 = false;

  unsigned mask() const {
    return unsigned(s1) | unsigned(s2) << 1 | unsigned(s3) << 2 | unsigned(s4) << 3;
  }
  friend bool operator==(const bridge_state&, const bridge_state&) = default;
};

/// True when one leg would short the DC bus.
inline bool shoot_through(const bridge_state& s) { return (s.s1 && s.s2) || (s.s3 && s.s4); }

/// Level-to-switch-state assignment. The zero level is realized as top-pair
/// freewheel during the positive half-period and bottom-pair during the
/// negative half, balancing conduction across devices.
struct bridge_mapping {
  bridge_state positive{true, false, false, true};     // S1 + S4 -> +V
  bridge_state negative{false, true, true, false};     // S2 + S3 -> -V
  bridge_state zero_positive_half{true, false, true, false};   // S1 + S3
  bridge_state zero_negative_half{false, true, false, true};   // S2 + S4

  void validate() const {
    for (const bridge_state* s :
         {&positive, &negative, &zero_positive_half, &zero_negative_half})
      if (shoot_through(*s))
        throw std::invalid_argument("bridge_mapping: state shorts one inverter leg");
  }
};

/// Output voltage an ideal bridge produces in a given state.
inline double ideal_bridge_level(const bridge_state& s, double v) {
  if (s.s1 && s.s4) return v;
  if (s.s2 && s.s3) return -v;
  return 0.0;
}

struct gate_event {
  double time_s = 0.0;
  bridge_state state;
};

struct gate_schedule {
  std::vector<gate_event> events;  // strictly increasing times within [0, period)
  double period_s = 0.0;
  double dead_time_s = 0.0;
  std::vector<double> angles_rad;  // source angles, kept for exports
  std::optional<double> modulation_index;

  /// State at time t, periodic: the latest event at or before t mod period;
  /// before the first event the schedule wraps around to the last one.
  const bridge_state& state_at(double t) const {
    double local = std::fmod(t, period_s);
    if (local < 0.0) local += period_s;
    auto it = std::upper_bound(events.begin(), events.end(), local,
                               [](double v, const gate_event& e) { return v < e.time_s; });
    if (it == events.begin()) return events.back().state;
    return std::prev(it)->state;
  }
};

inline double replay_level(const gate_schedule& schedule, double t, double v) {
  return ideal_bridge_level(schedule.state_at(t), v);
}

namespace detail {

struct commanded_transition {
  double time_s;
  bridge_state from;
  bridge_state to;
};

// Dead-time insertion turns a commanded transition into an interval with
// every switch that changes held off: the AND of the outgoing and incoming
// states keeps exactly the switches common to both.
inline bridge_state dead_state(const bridge_state& from, const bridge_state& to) {
  return {from.s1 && to.s1, from.s2 && to.s2, from.s3 && to.s3, from.s4 && to.s4};
}

}  // namespace detail

/// Builds the per-switch gate timings over one period. Commanded levels
/// follow level_at; each transition gets dead_time inserted symmetrically
/// (half before, half after the nominal instant), so the fundamental phase
/// stays unbiased. dead_time must be shorter than the narrowest commanded
/// interval.
inline gate_schedule build_schedule(const switching_angle_set& angles,
                                    const bridge_mapping& mapping, double frequency_hz,
                                    double dead_time_s) {
  if (!(frequency_hz > 0.0))
    throw std::invalid_argument("build_schedule: frequency must be > 0");
  if (!(dead_time_s >= 0.0))
    throw std::invalid_argument("build_schedule: dead time must be >= 0");
  mapping.validate();

  const double period = 1.0 / frequency_hz;
  const std::size_t p = angles.count();

  // Transition phases and the level right of each, built structurally from
  // the quarter-wave pattern (interval i of the first quarter carries +V for
  // odd i). Evaluating level_at at the computed phases instead would risk a
  // rounded phase landing on the wrong side of its own transition. The zero
  // level changes legs at phase 0 and pi, which are state transitions too.
  std::vector<std::pair<double, int>> phase_levels;  // (phase, level in {-1,0,1})
  phase_levels.reserve(4 * p + 2);
  auto quarter_level = [](std::size_t interval) { return interval % 2 == 1 ? 1 : 0; };
  phase_levels.emplace_back(0.0, 0);
  for (std::size_t i = 1; i <= p; ++i) phase_levels.emplace_back(angles[i - 1], quarter_level(i));
  for (std::size_t i = p; i >= 1; --i)
    phase_levels.emplace_back(pi - angles[i - 1], quarter_level(i - 1));
  const std::size_t half = phase_levels.size();
  phase_levels.emplace_back(pi, 0);
  for (std::size_t i = 1; i < half; ++i)
    phase_levels.emplace_back(pi + phase_levels[i].first, -phase_levels[i].second);
  // theta_p < pi/2 strictly, so all 4p + 2 phases are distinct and increasing;
  // for odd p the +V pulse simply runs through pi/2 without an event there.

  std::vector<detail::commanded_transition> transitions;
  transitions.reserve(phase_levels.size());
  for (const auto& [phase, level] : phase_levels) {
    bridge_state to;
    if (level > 0)
      to = mapping.positive;
    else if (level < 0)
      to = mapping.negative;
    else
      to = phase < pi ? mapping.zero_positive_half : mapping.zero_negative_half;
    transitions.push_back({phase / (2.0 * pi) * period, bridge_state{}, to});
  }
  for (std::size_t i = 0; i < transitions.size(); ++i)
    transitions[i].from = transitions[(i + transitions.size() - 1) % transitions.size()].to;

  // Narrowest commanded interval bounds the dead time.
  if (dead_time_s > 0.0) {
    for (std::size_t i = 0; i < transitions.size(); ++i) {
      const double start = transitions[i].time_s;
      const double end =
          i + 1 < transitions.size() ? transitions[i + 1].time_s : period + transitions[0].time_s;
      if (end - start <= dead_time_s) {
        std::ostringstream msg;
        msg << "build_schedule: dead time " << dead_time_s << " s does not fit the "
            << "commanded interval [" << start << " s, " << end << " s)";
        throw std::invalid_argument(msg.str());
      }
    }
  }

  gate_schedule schedule;
  schedule.period_s = period;
  schedule.dead_time_s = dead_time_s;
  schedule.angles_rad = angles.radians();
  if (dead_time_s == 0.0) {
    for (const auto& tr : transitions) schedule.events.push_back({tr.time_s, tr.to});
  } else {
    const double half_dt = dead_time_s / 2.0;
    for (const auto& tr : transitions) {
      double off_at = tr.time_s - half_dt;
      if (off_at < 0.0) off_at += period;
      schedule.events.push_back({off_at, detail::dead_state(tr.from, tr.to)});
      schedule.events.push_back({tr.time_s + half_dt, tr.to});
    }
    std::sort(schedule.events.begin(), schedule.events.end(),
              [](const gate_event& a, const gate_event& b) { return a.time_s < b.time_s; });
  }
  return schedule;
}

inline gate_schedule build_schedule(const switching_angle_set& angles, double frequency_hz,
                                    double dead_time_s) {
  return build_schedule(angles, bridge_mapping{}, frequency_hz, dead_time_s);
}

/// CSV export: header `time_s,s1,s2,s3,s4`, one row per event, times with
/// nine decimal digits, flags 0/1, LF endings. Byte-exact for equal inputs.
inline std::string export_csv(const gate_schedule& schedule) {
  std::string out = "time_s,s1,s2,s3,s4\n";
  char line[80];
  for (const gate_event& e : schedule.events) {
    std::snprintf(line, sizeof line, "%.9f,%d,%d,%d,%d\n", e.time_s, int(e.state.s1),
                  int(e.state.s2), int(e.state.s3), int(e.state.s4));
    out += line;
  }
  return out;
}

/// Emits a portable C header with per-state durations in timer ticks and the
/// matching switch masks (bit0..bit3 = S1..S4). Event times are rounded to
/// the nearest tick cumulatively, so per-event error stays below one tick and
/// the durations sum to round(period * tick) exactly.
inline std::string export_timer_table(const gate_schedule& schedule, double tick_hz) {
  if (!(tick_hz > 0.0)) throw std::invalid_argument("export_timer_table: tick rate must be > 0");
  if (schedule.dead_time_s > 0.0 && tick_hz < 2.0 / schedule.dead_time_s)
    throw std::invalid_argument(
        "export_timer_table: tick rate too coarse to represent the dead time");

  const std::size_t count = schedule.events.size();
  const long long period_ticks = std::llround(schedule.period_s * tick_hz);
  std::vector<long long> event_ticks(count);
  for (std::size_t i = 0; i < count; ++i)
    event_ticks[i] = std::llround(schedule.events[i].time_s * tick_hz);

  std::vector<long long> durations(count);
  for (std::size_t i = 0; i < count; ++i) {
    const long long next = i + 1 < count ? event_ticks[i + 1] : period_ticks + event_ticks[0];
    durations[i] = next - event_ticks[i];
    if (durations[i] < 1) {
      std::ostringstream msg;
      msg << "export_timer_table: tick rate too coarse, state " << i
          << " collapses to zero ticks";
      throw std::invalid_argument(msg.str());
    }
  }

  std::ostringstream out;
  out << "#ifndef SHEPWM_GATE_TABLE_H\n#define SHEPWM_GATE_TABLE_H\n\n";
  out << "/* H-bridge gate table";
  out << "; angles_deg =";
  char buf[32];
  for (double a : schedule.angles_rad) {
    std::snprintf(buf, sizeof buf, " %.2f", rad_to_deg(a));
    out << buf;
  }
  if (schedule.modulation_index) {
    std::snprintf(buf, sizeof buf, "%.6g", *schedule.modulation_index);
    out << "; M = " << buf;
  }
  out << " */\n\n";
  out << "#include <stdint.h>\n\n";
  out << "static const uint32_t tick_hz = " << std::llround(tick_hz) << "u;\n";
  out << "static const uint32_t ticks_per_period = " << period_ticks << "u;\n";
  out << "static const uint32_t state_count = " << count << "u;\n\n";
  out << "/* duration of each state, ticks */\n";
  out << "static const uint32_t ticks[" << count << "] = {";
  for (std::size_t i = 0; i < count; ++i) out << (i ? ", " : "") << durations[i];
  out << "};\n\n";
  out << "/* switch masks, bit0..bit3 = S1..S4 */\n";
  out << "static const uint8_t mask[" << count << "] = {";
  for (std::size_t i = 0; i < count; ++i)
    out << (i ? ", " : "") << schedule.events[i].state.mask();
  out << "};\n\n";
  out << "#endif /* SHEPWM_GATE_TABLE_H */\n";
  return out.str();
}

}  // namespace shepwm
