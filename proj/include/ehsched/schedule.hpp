#pragma once

#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ehsched/channel.hpp"
#include "ehsched/trace.hpp"

namespace ehsched {

struct Segment {
    double start = 0.0;
    double duration = 0.0;
    double power = 0.0;

    double end() const noexcept { return start + duration; }
    double energy() const noexcept { return power * duration; }

    friend bool operator==(const Segment&, const Segment&) = default;
};

/// Contiguous piecewise-constant power profile. Idle periods are explicit
/// zero-power segments; the first segment starts at `origin` (default 0).
class Schedule {
public:
    Schedule() = default;
    explicit Schedule(double origin);

    // Validates ordering, contiguity (within 1e-8 relative), durations > 0
    // and powers >= 0. Throws std::invalid_argument.
    static Schedule from_segments(std::vector<Segment> segments);

    // Appends a segment starting at end_time(). Zero-length segments are dropped.
    void append(double duration, double power);

    std::span<const Segment> segments() const noexcept { return segments_; }
    bool empty() const noexcept { return segments_.empty(); }
    double origin() const noexcept { return origin_; }
    double end_time() const noexcept;
    // End of the last segment with positive power, or origin() if none.
    double active_end_time() const noexcept;

private:
    double origin_ = 0.0;
    std::vector<Segment> segments_;
};

// B(t): bits delivered by time t, including the partial segment straddling t.
double bits_delivered(const Schedule& schedule, ChannelModel channel, double t);

// E(t): energy spent by time t.
double energy_used(const Schedule& schedule, double t);

struct NeutralityViolation {
    double time = 0.0;
    double deficit = 0.0;  // energy spent minus energy harvested, joules
};

struct NeutralityCheck {
    bool ok = true;
    std::optional<NeutralityViolation> first_violation;

    explicit operator bool() const noexcept { return ok; }
};

inline constexpr double kEnergySlack = 1e-6;

/// Checks that the energy spent never exceeds the energy harvested.
///
/// E(t) is continuous and non-decreasing while harvested energy is a right
/// continuous step function, so the constraint can only bind just before an
/// arrival or at a segment boundary. At each such checkpoint the spent energy
/// is compared against the harvest strictly before it.
NeutralityCheck verify_energy_neutrality(const Schedule& schedule, const EnergyTrace& trace,
                                         double slack = kEnergySlack);

/// Per-event record kept by the algorithms for reporting.
struct Checkpoint {
    double time = 0.0;
    double energy_remaining = 0.0;
    double bits_remaining = 0.0;
    // Absolute-from-now estimate of the remaining transmission time, +inf if
    // the held energy cannot carry the bits, NaN when the algorithm has none.
    double estimate = std::numeric_limits<double>::quiet_NaN();
    double power = 0.0;
};

/// Outcome of one algorithm on one trace.
struct RunReport {
    std::string algorithm;
    bool feasible = false;
    double completion_time = std::numeric_limits<double>::infinity();
    Schedule schedule;
    std::vector<Checkpoint> diagnostics;
};

}  // namespace ehsched
