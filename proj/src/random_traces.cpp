#include "ehsched/random_traces.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ehsched {

namespace {

double log_uniform(std::mt19937_64& rng, double lo, double hi) {
    std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
    return std::exp(u(rng));
}

}  // namespace

EnergyTrace random_trace(std::mt19937_64& rng, const RandomTraceParams& params) {
    if (params.min_arrivals == 0 || params.min_arrivals > params.max_arrivals) {
        throw std::invalid_argument("random_trace: bad arrival count range");
    }
    if (!(params.min_load > 0.0 && params.min_load <= params.max_load && params.max_load < 1.0)) {
        throw std::invalid_argument("random_trace: load fractions must satisfy 0 < min <= max < 1");
    }
    std::uniform_int_distribution<std::size_t> count_dist(params.min_arrivals,
                                                          params.max_arrivals);
    const std::size_t count = count_dist(rng);
    std::vector<Arrival> arrivals;
    arrivals.reserve(count);
    double t = 0.0;
    double total = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
        if (i > 0) {
            t += log_uniform(rng, params.min_value, params.max_value);
        }
        const double e = log_uniform(rng, params.min_value, params.max_value);
        arrivals.push_back({t, e});
        total += e;
    }
    std::uniform_real_distribution<double> load(params.min_load, params.max_load);
    const double bits = load(rng) * bits_capacity_limit(params.channel, total);
    return EnergyTrace(std::move(arrivals), bits, params.channel);
}

std::vector<EnergyTrace> random_corpus(std::uint64_t seed, std::size_t count,
                                       const RandomTraceParams& params) {
    std::mt19937_64 rng(seed);
    std::vector<EnergyTrace> corpus;
    corpus.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        EnergyTrace trace = random_trace(rng, params);
        corpus.push_back(EnergyTrace({trace.arrivals().begin(), trace.arrivals().end()},
                                     trace.bits(), trace.channel(),
                                     "random-" + std::to_string(seed) + "-" + std::to_string(i)));
    }
    return corpus;
}

}  // namespace ehsched
