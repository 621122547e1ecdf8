#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "ehsched/schedule.hpp"
#include "ehsched/trace.hpp"

namespace ehsched {

// Scenario text format, one directive per line, '#' starts a comment:
//
//   label   example1            (optional)
//   channel siso | gmac
//   bits    100
//   arrival t=0 e=2             (one per harvest, times strictly increasing)
//
// Errors are reported as ParseError carrying the offending line number.
EnergyTrace parse_scenario(std::string_view text);
EnergyTrace load_scenario(const std::string& path);
std::string format_scenario(const EnergyTrace& trace);

// Embedded traces: "example1" (inter-arrival gaps 2, 4, ..., 32 s),
// "example1-literal" (arrival instants t_n = 2^n) and "example2".
// Throws ConfigError for unknown names.
EnergyTrace scenario_preset(std::string_view name);
std::vector<std::string_view> scenario_preset_names();

// Fixed 9-decimal rendering used by every machine-readable output.
std::string fixed9(double value);

// Report text format with stable keys:
//
//   algorithm glo
//   channel siso
//   feasible true
//   completion_time 125.200000000
//   segment start=... duration=... power=... bits=... energy=...
//   checkpoint time=... energy=... bits=... estimate=... power=...
//
// bits/energy on a segment line are cumulative at the segment end.
std::string format_report(const RunReport& report, ChannelModel channel);
RunReport parse_report(std::string_view text);

}  // namespace ehsched
