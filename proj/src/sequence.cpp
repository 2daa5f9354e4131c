#include "ddsim/sequence.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace dd {

std::vector<double> udd_times(int level, double t) {
  if (level < 1) throw std::invalid_argument("sequence level must be at least 1");
  if (t < 0.0) throw std::invalid_argument("total time must be nonnegative");
  const int jmax = (level % 2 == 0) ? level : level + 1;
  std::vector<double> times(jmax);
  for (int j = 1; j <= jmax; j++) {
    const double s = std::sin(j * M_PI / (2.0 * level + 2.0));
    times[j - 1] = t * s * s;
  }
  return times;
}

namespace {

void append_udd_block(std::vector<sequence_event>& events, int level, double t,
                      pulse_axis axis, bool keep_trailing_delay) {
  const std::vector<double> times = udd_times(level, t);
  double prev = 0.0;
  for (const double tj : times) {
    events.push_back({event_kind::delay, tj - prev, pulse_axis::x});
    events.push_back({event_kind::pulse, 0.0, axis});
    prev = tj;
  }
  if (level % 2 == 0) {
    events.push_back({event_kind::delay, t - prev, pulse_axis::x});
  } else if (keep_trailing_delay) {
    events.push_back({event_kind::delay, 0.0, pulse_axis::x});
  }
}

}  // namespace

pulse_sequence build_udd(int level, double t, pulse_axis axis) {
  pulse_sequence seq{"udd", level, t, {}};
  append_udd_block(seq.events, level, t, axis, false);
  return seq;
}

pulse_sequence build_qdd(int level, double t, pulse_axis outer) {
  pulse_sequence seq{outer == pulse_axis::z_composite ? "qdd-zy" : "qdd",
                     level, t, {}};
  const std::vector<double> times = udd_times(level, t);
  std::vector<double> taus;
  double prev = 0.0;
  for (const double tj : times) {
    taus.push_back(tj - prev);
    prev = tj;
  }
  if (level % 2 == 0) taus.push_back(t - prev);
  const size_t n_outer = times.size();
  for (size_t j = 0; j < taus.size(); j++) {
    append_udd_block(seq.events, level, taus[j], pulse_axis::y, true);
    if (j < n_outer) seq.events.push_back({event_kind::pulse, 0.0, outer});
  }
  return seq;
}

pulse_sequence build_protocol(const std::string& protocol, int level, double t) {
  if (protocol == "udd") return build_udd(level, t);
  if (protocol == "qdd") return build_qdd(level, t, pulse_axis::x);
  if (protocol == "qdd-zy") return build_qdd(level, t, pulse_axis::z_composite);
  throw std::invalid_argument("unknown protocol: " + protocol);
}

int count_pulses(const pulse_sequence& seq) {
  int n = 0;
  for (const auto& ev : seq.events) {
    if (ev.kind == event_kind::pulse) n++;
  }
  return n;
}

double delay_sum(const pulse_sequence& seq) {
  double s = 0.0;
  for (const auto& ev : seq.events) {
    if (ev.kind == event_kind::delay) s += ev.duration;
  }
  return s;
}

zy_structure zy_structure_report(const pulse_sequence& seq) {
  zy_structure rep;
  for (size_t i = 0; i < seq.events.size(); i++) {
    if (seq.events[i].kind != event_kind::pulse ||
        seq.events[i].axis != pulse_axis::z_composite) {
      continue;
    }
    rep.outer_z_pulses++;
    // walk back over zero-length delays to the preceding pulse
    bool zero_gap = true;
    for (size_t k = i; k-- > 0;) {
      const auto& ev = seq.events[k];
      if (ev.kind == event_kind::delay) {
        if (ev.duration != 0.0) zero_gap = false;
        continue;
      }
      if (zero_gap && ev.axis == pulse_axis::y) rep.merged_yz_pairs++;
      break;
    }
  }
  rep.all_outer_merged =
      rep.outer_z_pulses > 0 && rep.merged_yz_pairs == rep.outer_z_pulses;
  return rep;
}

std::string export_sequence(const pulse_sequence& seq) {
  std::ostringstream out;
  out.precision(17);
  for (const auto& ev : seq.events) {
    if (ev.kind == event_kind::delay) {
      out << "D " << ev.duration << "\n";
    } else {
      switch (ev.axis) {
        case pulse_axis::x: out << "P X\n"; break;
        case pulse_axis::y: out << "P Y\n"; break;
        case pulse_axis::z_composite: out << "P Z\n"; break;
      }
    }
  }
  return out.str();
}

}  // namespace dd
