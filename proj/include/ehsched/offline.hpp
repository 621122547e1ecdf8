#pragma once

#include "ehsched/schedule.hpp"
#include "ehsched/trace.hpp"

namespace ehsched {

/// Minimum-completion-time schedule with full knowledge of the trace.
///
/// Works forward from the current start instant: find the first arrival that
/// the energy harvested before it could beat at constant power, try that
/// constant power, and if it would overdraw an earlier harvest fall back to
/// the tightest cumulative-energy slope, exhaust that energy exactly at its
/// arrival and restart from there. The resulting powers are non-decreasing
/// and change only at arrival instants.
///
/// The report is marked infeasible (completion +inf) when the whole trace can
/// never carry the payload.
RunReport offline_schedule(const EnergyTrace& trace);

/// Fraction of the first harvest that the offline schedule spends by
/// `window_end`. Throws PreconditionError if the trace is infeasible.
double offline_energy_fraction(const EnergyTrace& trace, double window_end);

}  // namespace ehsched
