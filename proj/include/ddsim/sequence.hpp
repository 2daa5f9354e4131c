#pragma once

#include <string>
#include <vector>

#include "ddsim/pulse.hpp"

namespace dd {

enum class event_kind { delay, pulse };

struct sequence_event {
  event_kind kind;
  double duration;  // delays only
  pulse_axis axis;  // pulses only
};

struct pulse_sequence {
  std::string protocol;  // "udd", "qdd", "qdd-zy"
  int level = 0;
  double total_time = 0.0;
  std::vector<sequence_event> events;
};

// pulse application times t_j = t sin^2(j pi / (2 level + 2)),
// j = 1..level (even level) or 1..level+1 (odd level)
std::vector<double> udd_times(int level, double t);

// delays between the udd_times; odd level ends with a pulse,
// even level with a trailing delay
pulse_sequence build_udd(int level, double t, pulse_axis axis = pulse_axis::x);

// nested sequence: inner udd blocks of y pulses spanning each outer delay,
// outer pulses (x or composite z) between blocks; inner blocks keep their
// trailing delay even when it has zero length
pulse_sequence build_qdd(int level, double t, pulse_axis outer = pulse_axis::x);

pulse_sequence build_protocol(const std::string& protocol, int level, double t);

// logical pulses: a composite z counts once
int count_pulses(const pulse_sequence& seq);
double delay_sum(const pulse_sequence& seq);

// zero-gap back-to-back pulse pairs; a y pulse followed with no delay by a
// composite z acts as an effective x pulse
struct zy_structure {
  int merged_yz_pairs = 0;
  int outer_z_pulses = 0;
  bool all_outer_merged = false;
  char effective_axis = 'x';
};

zy_structure zy_structure_report(const pulse_sequence& seq);

// one event per line: "D <duration>" or "P <axis>"
std::string export_sequence(const pulse_sequence& seq);

}  // namespace dd
