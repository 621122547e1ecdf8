#pragma once

#include <cstddef>
#include <optional>

#include "ehsched/schedule.hpp"
#include "ehsched/trace.hpp"

namespace ehsched {

struct OracleResult {
    double time = 0.0;       // best gridded completion time found
    double time_step = 0.0;  // time-grid spacing of the window holding that completion
};

inline constexpr std::size_t kOracleMaxArrivals = 4;
inline constexpr std::size_t kOracleMinGrid = 16;

/// Exhaustive search over discretised schedules.
///
/// In every inter-arrival interval a fraction i / power_grid of the held
/// energy is spent at constant power. Two ungridded moves are added: one power
/// over several intervals that runs dry exactly at a later arrival, and a last
/// segment that starts at any arrival and spends everything harvested before
/// its end. That end time is picked from time_grid equal steps over the
/// interval holding it (over [t_last, t_last + 2 * single-pool time] after the
/// last arrival). Candidates that would overdraw at an arrival are skipped.
/// Grids nest when doubled, so refining never increases the result.
///
/// Throws std::invalid_argument for more than four arrivals or grids below 16.
/// Returns std::nullopt when no candidate delivers the payload.
std::optional<OracleResult> oracle_min_time(const EnergyTrace& trace, std::size_t power_grid,
                                            std::size_t time_grid);

/// True iff `claimed` is energy neutral, delivers the payload and completes
/// within oracle_min_time + tolerance.
bool oracle_certify(const EnergyTrace& trace, const RunReport& claimed, double tolerance,
                    std::size_t power_grid = 32, std::size_t time_grid = 512);

}  // namespace ehsched
