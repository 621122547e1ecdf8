#pragma once

#include <string_view>
#include <vector>

#include "ehsched/channel.hpp"
#include "ehsched/trace.hpp"

namespace ehsched {

/// Two candidate inputs the online scheduler cannot tell apart before the
/// horizon. Every alpha-policy is charged the worse of its two ratios against
/// the offline optimum; the best alpha gives a lower bound on the competitive
/// ratio of any online algorithm.
struct LowerBoundConfig {
    EnergyTrace sigma1;
    EnergyTrace sigma2;
    double horizon = 1.0;
    double grid_step = 1e-3;
    bool refine = true;

    ChannelModel channel() const noexcept { return sigma1.channel(); }
};

/// Throws ConfigError when the traces disagree on payload or channel, when the
/// horizon is not sigma1's second arrival, or when either trace is infeasible
/// for the offline scheduler.
void validate(const LowerBoundConfig& config);

struct CurvePoint {
    double alpha = 0.0;
    double ratio = 0.0;  // +inf where the alpha-policy cannot finish
};

struct LowerBound {
    double alpha_star = 0.0;
    double ratio = 0.0;
    double offline_sigma1 = 0.0;
    double offline_sigma2 = 0.0;
    std::vector<CurvePoint> curve;
};

double worst_ratio(const LowerBoundConfig& config, double alpha);

/// Grid scan over alpha in [0, 1] followed by golden-section refinement of the
/// bracketing cell down to 1e-6.
LowerBound lower_bound_search(const LowerBoundConfig& config);

/// Named configurations: "lb-siso-proof", "lb-gmac-proof" (e0 = 2, e1 = 4,
/// B = 2.8) and "lb-figure" (e0 = e1 = 3, B = 4.2, SISO). Throws ConfigError
/// for unknown names.
LowerBoundConfig lower_bound_preset(std::string_view name);

std::vector<std::string_view> lower_bound_preset_names();

}  // namespace ehsched
