#include "ehsched/offline.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "ehsched/errors.hpp"

namespace ehsched {

namespace {

constexpr double kSlopeTieTolerance = 1e-12;

RunReport infeasible_report(Schedule schedule) {
    RunReport report;
    report.algorithm = "offline";
    report.feasible = false;
    report.schedule = std::move(schedule);
    return report;
}

}  // namespace

RunReport offline_schedule(const EnergyTrace& trace) {
    const ChannelModel channel = trace.channel();
    const auto arrivals = trace.arrivals();
    const std::size_t count = arrivals.size();

    Schedule schedule;
    schedule.append(arrivals.front().time, 0.0);

    RunReport report;
    report.algorithm = "offline";

    if (trace.bits() == 0.0) {
        report.feasible = true;
        report.completion_time = schedule.origin();
        report.schedule = std::move(schedule);
        return report;
    }

    std::size_t first = 0;  // index of the arrival at the current start
    double start = arrivals.front().time;
    double carried = 0.0;   // energy left over from before `start`
    double residual = trace.bits();

    for (;;) {
        report.diagnostics.push_back({start, carried + arrivals[first].energy, residual});

        // Smallest n such that the energy harvested in [start, t_n) finishes the
        // residual strictly before t_n (n == count means "no further arrival").
        std::size_t target = count;
        double pooled = carried;
        double duration = std::numeric_limits<double>::infinity();
        for (std::size_t n = first + 1; n <= count; ++n) {
            pooled += arrivals[n - 1].energy;
            const auto t = completion_time(channel, residual, pooled);
            if (!t) {
                continue;
            }
            if (n == count || *t < arrivals[n].time - start) {
                target = n;
                duration = *t;
                break;
            }
        }
        if (!std::isfinite(duration)) {
            return infeasible_report(std::move(schedule));
        }
        const double power = pooled / duration;

        // Earliest arrival whose left-limit harvest the constant power would overdraw.
        std::size_t tight = count;
        double tight_slope = power;
        double before = carried;
        for (std::size_t n = first + 1; n < target; ++n) {
            before += arrivals[n - 1].energy;
            const double slope = before / (arrivals[n].time - start);
            if (slope < tight_slope * (1.0 - kSlopeTieTolerance)) {
                tight = n;
                tight_slope = slope;
            }
        }

        if (tight == count) {
            schedule.append(duration, power);
            break;
        }

        const double span = arrivals[tight].time - start;
        schedule.append(span, tight_slope);
        residual -= rate(channel, span, tight_slope);
        start = arrivals[tight].time;
        first = tight;
        carried = 0.0;
        if (residual <= 0.0) {
            break;
        }
    }

    report.feasible = true;
    report.completion_time = schedule.active_end_time();
    report.schedule = std::move(schedule);
    return report;
}

double offline_energy_fraction(const EnergyTrace& trace, double window_end) {
    if (!(window_end >= 0.0)) {
        throw std::domain_error("offline_energy_fraction: window_end must be >= 0");
    }
    const RunReport report = offline_schedule(trace);
    if (!report.feasible) {
        throw PreconditionError("offline_energy_fraction: trace cannot deliver its payload");
    }
    const double fraction = energy_used(report.schedule, window_end) / trace[0].energy;
    // Exhausting E0 exactly at t1 can come out an ulp above one.
    return fraction > 1.0 && fraction < 1.0 + 1e-9 ? 1.0 : fraction;
}

}  // namespace ehsched
