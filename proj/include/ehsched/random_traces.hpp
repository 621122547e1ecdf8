#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "ehsched/trace.hpp"

namespace ehsched {

struct RandomTraceParams {
    std::size_t min_arrivals = 1;
    std::size_t max_arrivals = 10;
    double min_value = 0.1;  // energies and inter-arrival gaps are log-uniform
    double max_value = 10.0;
    double min_load = 0.5;   // payload as a fraction of the total capacity limit
    double max_load = 0.95;
    ChannelModel channel = ChannelModel::siso();
};

/// One feasible trace: first arrival at t = 0, log-uniform energies and gaps,
/// payload drawn uniformly between min_load and max_load of the capacity
/// limit of the total harvest.
EnergyTrace random_trace(std::mt19937_64& rng, const RandomTraceParams& params = {});

std::vector<EnergyTrace> random_corpus(std::uint64_t seed, std::size_t count,
                                       const RandomTraceParams& params = {});

}  // namespace ehsched
