#include "ehsched/online.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ehsched/errors.hpp"

namespace ehsched {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kBitsTolerance = 1e-9;

RunReport run_on_trace(OnlinePolicy& policy, const EnergyTrace& trace) {
    TraceCursor cursor(trace);
    RunReport report = run_online(policy, cursor, trace.bits(), trace.channel());
    return report;
}

Decision lazy_decision(const OnlineState& state, ChannelModel channel) {
    const LazyStep step = lazy_step(state, channel);
    Decision d;
    d.power = step.power;
    d.estimate = step.estimated_completion.value_or(kInf);
    return d;
}

}  // namespace

std::optional<Arrival> TraceCursor::next() {
    if (index_ >= trace_->size()) {
        return std::nullopt;
    }
    return (*trace_)[index_++];
}

RunReport run_online(OnlinePolicy& policy, ArrivalSource& source, double bits,
                     ChannelModel channel) {
    RunReport report;
    report.algorithm = policy.name();

    OnlineState state;
    state.bits_total = bits;
    state.bits_remaining = bits;

    // The next arrival is fetched only after the decision at the previous one,
    // and only its occurrence (never its content) shapes the current hold.
    std::optional<Arrival> upcoming = source.next();
    if (!upcoming) {
        throw std::invalid_argument("run_online: source revealed no arrivals");
    }
    bool exhausted = false;
    report.schedule.append(upcoming->time, 0.0);
    state.now = upcoming->time;

    const double done_tolerance = kBitsTolerance * std::max(bits, 1.0);

    while (state.bits_remaining > done_tolerance) {
        if (upcoming && upcoming->time <= state.now) {
            state.energy_available += upcoming->energy;
            state.harvested += upcoming->energy;
            ++state.arrivals_seen;
            upcoming.reset();
        }

        const Decision decision = policy.decide(state, channel);
        if (!(decision.power >= 0.0) || !std::isfinite(decision.power)) {
            throw std::logic_error("online policy produced an invalid power");
        }
        // An empty battery cannot transmit, whatever the policy asks for. Without
        // this a drain that lands an ulp short of a wake-up would stall the loop.
        const double power = state.energy_available > 0.0 ? decision.power : 0.0;
        report.diagnostics.push_back({state.now, state.energy_available, state.bits_remaining,
                                      decision.estimate, power});
        state.transmitting = power > 0.0;

        if (!upcoming && !exhausted) {
            upcoming = source.next();
            exhausted = !upcoming;
        }

        double hold_end = kInf;
        if (upcoming) {
            hold_end = upcoming->time;
        }
        if (decision.wake_at && *decision.wake_at > state.now) {
            hold_end = std::min(hold_end, *decision.wake_at);
        }

        bool finishes = false;
        bool drains = false;
        if (power > 0.0) {
            const double bit_rate = rate(channel, 1.0, power);
            const double finish = state.now + state.bits_remaining / bit_rate;
            const double dry = state.now + state.energy_available / power;
            if (finish <= hold_end && finish <= dry + 1e-9 * (dry - state.now)) {
                hold_end = finish;
                finishes = true;
            } else if (dry < hold_end) {
                hold_end = dry;
                drains = true;
            }
        }

        if (!std::isfinite(hold_end)) {
            // Nothing left to reveal and the policy will not transmit.
            report.feasible = false;
            report.completion_time = kInf;
            return report;
        }

        const double span = hold_end - state.now;
        report.schedule.append(span, power);
        if (finishes) {
            state.energy_available =
                std::max(0.0, state.energy_available - power * span);
            state.bits_remaining = 0.0;
            state.now = hold_end;
            break;
        }
        state.bits_remaining -= rate(channel, span, power);
        state.energy_available =
            drains ? 0.0 : std::max(0.0, state.energy_available - power * span);
        state.now = hold_end;
    }

    report.feasible = true;
    report.completion_time = report.schedule.active_end_time();
    return report;
}

LazyStep lazy_step(const OnlineState& state, ChannelModel channel) {
    if (state.bits_remaining <= 0.0) {
        return {0.0, 0.0};
    }
    const auto t = completion_time(channel, state.bits_remaining, state.energy_available);
    if (!t) {
        return {0.0, std::nullopt};
    }
    return {state.energy_available / *t, *t};
}

Decision LazyPolicy::decide(const OnlineState& state, ChannelModel channel) {
    return lazy_decision(state, channel);
}

Decision GloPolicy::decide(const OnlineState& state, ChannelModel channel) {
    if (!started_) {
        if (bits_capacity_limit(channel, state.harvested) > state.bits_total) {
            started_ = true;
        } else {
            Decision wait;
            wait.estimate = kInf;
            return wait;
        }
    }
    return lazy_decision(state, channel);
}

AlphaPolicy::AlphaPolicy(double alpha, double horizon) : alpha_(alpha), horizon_(horizon) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) {
        throw std::invalid_argument("alpha must lie in [0, 1]");
    }
    if (!(horizon > 0.0) || !std::isfinite(horizon)) {
        throw std::invalid_argument("horizon must be positive and finite");
    }
}

Decision AlphaPolicy::decide(const OnlineState& state, ChannelModel channel) {
    if (!horizon_end_) {
        horizon_end_ = state.now + horizon_;
        window_power_ = alpha_ * state.harvested / horizon_;
    }
    if (state.now < *horizon_end_) {
        Decision d;
        d.power = window_power_;
        d.wake_at = *horizon_end_;
        return d;
    }
    return lazy_decision(state, channel);
}

RunReport run_lazy(const EnergyTrace& trace) {
    if (!lazy_applicable(trace)) {
        throw PreconditionError(
            "lazy requires the first harvest to carry the payload eventually; use run_glo");
    }
    LazyPolicy policy;
    return run_on_trace(policy, trace);
}

RunReport run_glo(const EnergyTrace& trace) {
    GloPolicy policy;
    return run_on_trace(policy, trace);
}

RunReport run_alpha_policy(const EnergyTrace& trace, double alpha, double horizon) {
    AlphaPolicy policy(alpha, horizon);
    return run_on_trace(policy, trace);
}

bool lazy_applicable(const EnergyTrace& trace) {
    return completion_time(trace.channel(), trace.bits(), trace[0].energy).has_value();
}

std::vector<RatioDiagnostic> ratio_diagnostics(const EnergyTrace& trace, const RunReport& online,
                                               const RunReport& offline) {
    std::vector<RatioDiagnostic> out;
    if (!online.feasible || !offline.feasible) {
        return out;
    }
    for (const Checkpoint& cp : online.diagnostics) {
        if (cp.time >= offline.completion_time) {
            break;
        }
        const double offline_bits =
            trace.bits() - bits_delivered(offline.schedule, trace.channel(), cp.time);
        const double offline_energy =
            trace.harvested_by(cp.time) - energy_used(offline.schedule, cp.time);
        if (offline_bits <= 0.0 || offline_energy <= 0.0) {
            continue;
        }
        out.push_back({cp.time, cp.bits_remaining / offline_bits,
                       cp.energy_remaining / offline_energy});
    }
    return out;
}

}  // namespace ehsched
