#include "ehsched/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ehsched {

Schedule::Schedule(double origin) : origin_(origin) {
    if (!(origin >= 0.0)) {
        throw std::invalid_argument("schedule origin must be >= 0");
    }
}

Schedule Schedule::from_segments(std::vector<Segment> segments) {
    Schedule s(segments.empty() ? 0.0 : segments.front().start);
    for (std::size_t i = 0; i < segments.size(); ++i) {
        const Segment& seg = segments[i];
        if (!(seg.duration > 0.0) || !(seg.power >= 0.0) || !std::isfinite(seg.duration) ||
            !std::isfinite(seg.power)) {
            throw std::invalid_argument("segment " + std::to_string(i) +
                                        ": duration must be > 0 and power >= 0");
        }
        if (i > 0) {
            const double expected = segments[i - 1].end();
            if (std::abs(seg.start - expected) > 1e-8 * std::max(1.0, std::abs(expected))) {
                throw std::invalid_argument("segment " + std::to_string(i) +
                                            ": not contiguous with its predecessor");
            }
        }
    }
    s.segments_ = std::move(segments);
    return s;
}

void Schedule::append(double duration, double power) {
    if (!(duration >= 0.0) || !(power >= 0.0)) {
        throw std::invalid_argument("append: duration and power must be non-negative");
    }
    if (duration == 0.0) {
        return;
    }
    segments_.push_back({end_time(), duration, power});
}

double Schedule::end_time() const noexcept {
    return segments_.empty() ? origin_ : segments_.back().end();
}

double Schedule::active_end_time() const noexcept {
    for (auto it = segments_.rbegin(); it != segments_.rend(); ++it) {
        if (it->power > 0.0) {
            return it->end();
        }
    }
    return origin_;
}

double bits_delivered(const Schedule& schedule, ChannelModel channel, double t) {
    double bits = 0.0;
    for (const Segment& seg : schedule.segments()) {
        if (seg.start >= t) {
            break;
        }
        bits += rate(channel, std::min(seg.end(), t) - seg.start, seg.power);
    }
    return bits;
}

double energy_used(const Schedule& schedule, double t) {
    double energy = 0.0;
    for (const Segment& seg : schedule.segments()) {
        if (seg.start >= t) {
            break;
        }
        energy += seg.power * (std::min(seg.end(), t) - seg.start);
    }
    return energy;
}

NeutralityCheck verify_energy_neutrality(const Schedule& schedule, const EnergyTrace& trace,
                                         double slack) {
    std::vector<double> checkpoints;
    for (const Segment& seg : schedule.segments()) {
        checkpoints.push_back(seg.end());
    }
    const double end = schedule.end_time();
    for (const Arrival& a : trace.arrivals()) {
        if (a.time > schedule.origin() && a.time < end) {
            checkpoints.push_back(a.time);
        }
    }
    std::sort(checkpoints.begin(), checkpoints.end());

    NeutralityCheck result;
    for (double t : checkpoints) {
        const double deficit = energy_used(schedule, t) - trace.harvested_before(t);
        if (deficit > slack) {
            result.ok = false;
            result.first_violation = NeutralityViolation{t, deficit};
            break;
        }
    }
    return result;
}

}  // namespace ehsched
