#pragma once

#include <cstddef>
#include <limits>
#include <memory>
#include <optional>
#include <vector>

#include "ehsched/channel.hpp"
#include "ehsched/schedule.hpp"
#include "ehsched/trace.hpp"

namespace ehsched {

/// What a causal scheduler knows at a decision instant.
struct OnlineState {
    double now = 0.0;
    double energy_available = 0.0;  // harvested minus spent
    double bits_remaining = 0.0;
    double bits_total = 0.0;
    double harvested = 0.0;         // cumulative harvest revealed so far
    std::size_t arrivals_seen = 0;
    bool transmitting = false;
};

/// Reveals arrivals one at a time. Online runners only ever hold a source,
/// never the trace, so a policy cannot look past the current instant.
class ArrivalSource {
public:
    virtual ~ArrivalSource() = default;
    virtual std::optional<Arrival> next() = 0;
};

class TraceCursor final : public ArrivalSource {
public:
    explicit TraceCursor(const EnergyTrace& trace) : trace_(&trace) {}
    std::optional<Arrival> next() override;

private:
    const EnergyTrace* trace_;
    std::size_t index_ = 0;
};

struct Decision {
    double power = 0.0;
    // Remaining time the policy expects to need; +inf if the held energy can
    // not carry the residual bits, NaN if the policy does not estimate.
    double estimate = std::numeric_limits<double>::quiet_NaN();
    // Ask to be consulted again at this absolute time even if nothing arrives.
    std::optional<double> wake_at;
};

/// A causal scheduling rule. `decide` is invoked at every arrival, at every
/// requested wake-up and whenever the held energy runs dry.
class OnlinePolicy {
public:
    virtual ~OnlinePolicy() = default;
    virtual const char* name() const = 0;
    virtual Decision decide(const OnlineState& state, ChannelModel channel) = 0;
};

/// Drives `policy` over the arrivals revealed by `source`, holding each chosen
/// power until the next event. Completion inside a hold is solved for exactly
/// (bits accrue linearly at fixed power). The report is infeasible when the
/// source is exhausted while bits remain and the policy transmits nothing.
RunReport run_online(OnlinePolicy& policy, ArrivalSource& source, double bits,
                     ChannelModel channel);

struct LazyStep {
    double power = 0.0;
    std::optional<double> estimated_completion;  // nullopt: infeasible
};

/// Minimal-time constant power for the held energy and residual bits, as if
/// nothing else will ever arrive.
LazyStep lazy_step(const OnlineState& state, ChannelModel channel);

class LazyPolicy final : public OnlinePolicy {
public:
    const char* name() const override { return "lazy"; }
    Decision decide(const OnlineState& state, ChannelModel channel) override;
};

/// Waits (zero power) until the capacity limit of the cumulative harvest
/// strictly exceeds the payload, then behaves as Lazy.
class GloPolicy final : public OnlinePolicy {
public:
    const char* name() const override { return "glo"; }
    Decision decide(const OnlineState& state, ChannelModel channel) override;
    bool started() const noexcept { return started_; }

private:
    bool started_ = false;
};

/// Spends `alpha` of the first harvest evenly over [t0, t0 + horizon), then
/// pools everything it holds and finishes at the minimal-time constant power.
class AlphaPolicy final : public OnlinePolicy {
public:
    AlphaPolicy(double alpha, double horizon);
    const char* name() const override { return "alpha"; }
    Decision decide(const OnlineState& state, ChannelModel channel) override;

private:
    double alpha_;
    double horizon_;
    std::optional<double> horizon_end_;
    double window_power_ = 0.0;
};

/// Lazy on the whole trace. Throws PreconditionError unless the first harvest
/// alone can carry the payload eventually; use run_glo for such traces.
RunReport run_lazy(const EnergyTrace& trace);

RunReport run_glo(const EnergyTrace& trace);

RunReport run_alpha_policy(const EnergyTrace& trace, double alpha, double horizon);

bool lazy_applicable(const EnergyTrace& trace);

/// Bits-left and energy-left ratios of an online run against the offline run
/// at an online decision instant: phi = B_online / B_offline and
/// theta = E_online / E_offline.
struct RatioDiagnostic {
    double time = 0.0;
    double phi = 0.0;
    double theta = 0.0;
};

/// Evaluated at every decision instant of `online` strictly before the
/// offline completion time at which the offline run still has bits to send.
std::vector<RatioDiagnostic> ratio_diagnostics(const EnergyTrace& trace, const RunReport& online,
                                               const RunReport& offline);

}  // namespace ehsched
