#include "ehsched/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ehsched {

namespace {

constexpr double kInfeasibleMargin = 1e-12;
constexpr double kBracketCeiling = 1e12;
constexpr double kRelativeTolerance = 1e-13;

double siso_rate(double duration, double power) {
    if (duration == 0.0) {
        return 0.0;
    }
    return duration * std::log1p(power) / std::numbers::ln2;
}

}  // namespace

std::string_view to_string(ChannelKind kind) {
    return kind == ChannelKind::gmac ? "gmac" : "siso";
}

std::optional<ChannelKind> parse_channel_kind(std::string_view text) {
    if (text == "siso" || text == "SISO") {
        return ChannelKind::siso;
    }
    if (text == "gmac" || text == "GMAC") {
        return ChannelKind::gmac;
    }
    return std::nullopt;
}

double rate(ChannelModel model, double duration, double power) {
    if (!(duration >= 0.0) || !(power >= 0.0)) {
        throw std::domain_error("rate: duration and power must be non-negative");
    }
    switch (model.kind) {
        case ChannelKind::siso:
            return siso_rate(duration, power);
        case ChannelKind::gmac:
            return siso_rate(duration / 2.0, 2.0 * power);
    }
    return 0.0;
}

double bits_capacity_limit(ChannelModel /*model*/, double energy) {
    if (!(energy >= 0.0)) {
        throw std::domain_error("bits_capacity_limit: energy must be non-negative");
    }
    return energy * std::numbers::log2e;
}

std::optional<double> completion_time(ChannelModel model, double bits, double energy) {
    if (!(bits >= 0.0) || !(energy >= 0.0)) {
        throw std::domain_error("completion_time: bits and energy must be non-negative");
    }
    if (bits == 0.0) {
        return 0.0;
    }
    const double limit = bits_capacity_limit(model, energy);
    if (!(bits < limit - kInfeasibleMargin * limit)) {
        return std::nullopt;
    }

    // T -> rate(T, E/T) is strictly increasing; grow the bracket then bisect.
    const auto delivered = [&](double t) { return rate(model, t, energy / t); };
    double lo = 0.0;
    double hi = 1.0;
    while (delivered(hi) < bits) {
        lo = hi;
        hi *= 2.0;
        if (hi > kBracketCeiling) {
            return std::nullopt;
        }
    }
    for (int iter = 0; iter < 400 && hi - lo > kRelativeTolerance * hi; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (delivered(mid) < bits) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return hi;
}

}  // namespace ehsched
