#pragma once

// Test-only reference computations. Written against the textbook formulas with
// std::log2 and a plain fixed-iteration bisection so they share no code path
// with the library under test.

#include <cmath>
#include <optional>
#include <random>

#include "ehsched/trace.hpp"

namespace ehsched::testing {

inline double reference_rate(ChannelKind kind, double duration, double power) {
    if (duration == 0.0) {
        return 0.0;
    }
    if (kind == ChannelKind::gmac) {
        return duration / 2.0 * std::log2(1.0 + 2.0 * power);
    }
    return duration * std::log2(1.0 + power);
}

// Fastest single-power time to deliver `bits` with `energy`.
inline std::optional<double> reference_completion(ChannelKind kind, double bits, double energy) {
    if (bits == 0.0) {
        return 0.0;
    }
    if (bits >= energy / std::log(2.0)) {
        return std::nullopt;
    }
    double lo = 0.0;
    double hi = 1e9;
    if (reference_rate(kind, hi, energy / hi) < bits) {
        return std::nullopt;
    }
    for (int i = 0; i < 300; ++i) {
        const double mid = 0.5 * (lo + hi);
        (reference_rate(kind, mid, energy / mid) < bits ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

inline EnergyTrace small_random_trace(std::mt19937_64& rng, std::size_t max_arrivals,
                                      ChannelModel channel = ChannelModel::siso()) {
    std::uniform_int_distribution<std::size_t> count(1, max_arrivals);
    std::uniform_real_distribution<double> logv(std::log(0.1), std::log(10.0));
    std::uniform_real_distribution<double> load(0.5, 0.95);
    const std::size_t n = count(rng);
    std::vector<Arrival> arrivals;
    double t = 0.0;
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (i > 0) {
            t += std::exp(logv(rng));
        }
        const double e = std::exp(logv(rng));
        arrivals.push_back({t, e});
        total += e;
    }
    return EnergyTrace(std::move(arrivals), load(rng) * total / std::log(2.0), channel);
}

}  // namespace ehsched::testing
