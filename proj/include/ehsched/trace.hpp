#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "ehsched/channel.hpp"

namespace ehsched {

struct Arrival {
    double time = 0.0;    // seconds
    double energy = 0.0;  // joules

    friend bool operator==(const Arrival&, const Arrival&) = default;
};

/// An energy harvesting input sequence together with the payload to deliver.
///
/// Arrival times are strictly increasing and non-negative, every harvest is
/// strictly positive. The constructor throws std::invalid_argument otherwise.
class EnergyTrace {
public:
    EnergyTrace(std::vector<Arrival> arrivals, double bits, ChannelModel channel,
                std::string label = {});

    std::span<const Arrival> arrivals() const noexcept { return arrivals_; }
    std::size_t size() const noexcept { return arrivals_.size(); }
    const Arrival& operator[](std::size_t i) const { return arrivals_[i]; }

    double bits() const noexcept { return bits_; }
    ChannelModel channel() const noexcept { return channel_; }
    const std::string& label() const noexcept { return label_; }

    double total_energy() const noexcept;
    // Energy harvested at instants <= t.
    double harvested_by(double t) const noexcept;
    // Energy harvested at instants < t (left limit of the step function).
    double harvested_before(double t) const noexcept;

    EnergyTrace with_bits(double bits) const;
    EnergyTrace with_channel(ChannelModel channel) const;

private:
    std::vector<Arrival> arrivals_;
    double bits_;
    ChannelModel channel_;
    std::string label_;
};

}  // namespace ehsched
