#include "ehsched/adversary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ehsched/errors.hpp"
#include "ehsched/offline.hpp"
#include "ehsched/online.hpp"

namespace ehsched {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kGoldenTolerance = 1e-6;

struct OfflineTimes {
    double sigma1;
    double sigma2;
};

OfflineTimes offline_times(const LowerBoundConfig& config) {
    const RunReport r1 = offline_schedule(config.sigma1);
    const RunReport r2 = offline_schedule(config.sigma2);
    if (!r1.feasible || !r2.feasible) {
        throw ConfigError("lower bound: both traces must be feasible for the offline scheduler");
    }
    if (!(r1.completion_time > 0.0) || !(r2.completion_time > 0.0)) {
        throw ConfigError("lower bound: offline completion time must be positive");
    }
    return {r1.completion_time, r2.completion_time};
}

double ratio_for(const LowerBoundConfig& config, const OfflineTimes& offline, double alpha) {
    const RunReport a1 = run_alpha_policy(config.sigma1, alpha, config.horizon);
    const RunReport a2 = run_alpha_policy(config.sigma2, alpha, config.horizon);
    if (!a1.feasible || !a2.feasible) {
        return kInf;
    }
    return std::max(a1.completion_time / offline.sigma1, a2.completion_time / offline.sigma2);
}

// Golden-section minimisation of a unimodal function on [lo, hi].
CurvePoint golden_section(const LowerBoundConfig& config, const OfflineTimes& offline, double lo,
                          double hi) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = ratio_for(config, offline, x1);
    double f2 = ratio_for(config, offline, x2);
    while (hi - lo > kGoldenTolerance) {
        if (f1 <= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = ratio_for(config, offline, x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = ratio_for(config, offline, x2);
        }
    }
    return f1 <= f2 ? CurvePoint{x1, f1} : CurvePoint{x2, f2};
}

EnergyTrace two_step(double e0, double e1, double bits, ChannelModel channel, std::string label) {
    return EnergyTrace({{0.0, e0}, {1.0, e1}}, bits, channel, std::move(label));
}

EnergyTrace one_step(double e0, double bits, ChannelModel channel, std::string label) {
    return EnergyTrace({{0.0, e0}}, bits, channel, std::move(label));
}

}  // namespace

void validate(const LowerBoundConfig& config) {
    if (config.sigma1.bits() != config.sigma2.bits()) {
        throw ConfigError("lower bound: traces must share the payload size");
    }
    if (config.sigma1.channel() != config.sigma2.channel()) {
        throw ConfigError("lower bound: traces must share the channel model");
    }
    if (!(config.horizon > 0.0) || !std::isfinite(config.horizon)) {
        throw ConfigError("lower bound: horizon must be positive");
    }
    if (config.sigma1.size() >= 2 &&
        std::abs(config.sigma1[1].time - config.horizon) > 1e-12 * config.horizon) {
        throw ConfigError("lower bound: horizon must equal the second arrival time of sigma1");
    }
    if (!(config.grid_step > 0.0 && config.grid_step <= 0.5)) {
        throw ConfigError("lower bound: grid step must lie in (0, 0.5]");
    }
    offline_times(config);
}

double worst_ratio(const LowerBoundConfig& config, double alpha) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) {
        throw std::domain_error("worst_ratio: alpha must lie in [0, 1]");
    }
    validate(config);
    return ratio_for(config, offline_times(config), alpha);
}

LowerBound lower_bound_search(const LowerBoundConfig& config) {
    validate(config);
    const OfflineTimes offline = offline_times(config);

    LowerBound result;
    result.offline_sigma1 = offline.sigma1;
    result.offline_sigma2 = offline.sigma2;

    const auto steps = static_cast<std::size_t>(std::ceil(1.0 / config.grid_step - 1e-9));
    result.curve.reserve(steps + 1);
    for (std::size_t i = 0; i <= steps; ++i) {
        const double alpha = std::min(1.0, static_cast<double>(i) * config.grid_step);
        result.curve.push_back({alpha, ratio_for(config, offline, alpha)});
    }

    const auto best = std::min_element(
        result.curve.begin(), result.curve.end(),
        [](const CurvePoint& a, const CurvePoint& b) { return a.ratio < b.ratio; });
    result.alpha_star = best->alpha;
    result.ratio = best->ratio;
    if (!std::isfinite(best->ratio) || !config.refine) {
        return result;
    }

    // Bracket by the finite neighbours of the grid minimum.
    const auto idx = static_cast<std::size_t>(best - result.curve.begin());
    double lo = best->alpha;
    double hi = best->alpha;
    if (idx > 0 && std::isfinite(result.curve[idx - 1].ratio)) {
        lo = result.curve[idx - 1].alpha;
    }
    if (idx + 1 < result.curve.size() && std::isfinite(result.curve[idx + 1].ratio)) {
        hi = result.curve[idx + 1].alpha;
    }
    if (hi > lo) {
        const CurvePoint refined = golden_section(config, offline, lo, hi);
        if (refined.ratio < result.ratio) {
            result.alpha_star = refined.alpha;
            result.ratio = refined.ratio;
        }
    }
    return result;
}

LowerBoundConfig lower_bound_preset(std::string_view name) {
    if (name == "lb-siso-proof" || name == "lb-gmac-proof") {
        const ChannelModel ch =
            name == "lb-siso-proof" ? ChannelModel::siso() : ChannelModel::gmac();
        return {two_step(2.0, 4.0, 2.8, ch, "sigma1"), one_step(2.0, 2.8, ch, "sigma2"), 1.0};
    }
    if (name == "lb-figure") {
        const ChannelModel ch = ChannelModel::siso();
        return {two_step(3.0, 3.0, 4.2, ch, "sigma1"), one_step(3.0, 4.2, ch, "sigma2"), 1.0};
    }
    throw ConfigError("unknown lower-bound preset '" + std::string(name) + "'");
}

std::vector<std::string_view> lower_bound_preset_names() {
    return {"lb-siso-proof", "lb-gmac-proof", "lb-figure"};
}

}  // namespace ehsched
