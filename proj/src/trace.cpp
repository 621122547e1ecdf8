#include "ehsched/trace.hpp"

#include <cmath>
#include <stdexcept>

namespace ehsched {

EnergyTrace::EnergyTrace(std::vector<Arrival> arrivals, double bits, ChannelModel channel,
                         std::string label)
    : arrivals_(std::move(arrivals)), bits_(bits), channel_(channel), label_(std::move(label)) {
    if (arrivals_.empty()) {
        throw std::invalid_argument("energy trace needs at least one arrival");
    }
    if (!(bits_ >= 0.0) || !std::isfinite(bits_)) {
        throw std::invalid_argument("payload bits must be finite and non-negative");
    }
    for (std::size_t i = 0; i < arrivals_.size(); ++i) {
        const Arrival& a = arrivals_[i];
        if (!std::isfinite(a.time) || a.time < 0.0) {
            throw std::invalid_argument("arrival " + std::to_string(i) + ": time must be >= 0");
        }
        if (!std::isfinite(a.energy) || !(a.energy > 0.0)) {
            throw std::invalid_argument("arrival " + std::to_string(i) + ": energy must be > 0");
        }
        if (i > 0 && !(a.time > arrivals_[i - 1].time)) {
            throw std::invalid_argument("arrival " + std::to_string(i) +
                                        ": times must be strictly increasing");
        }
    }
}

double EnergyTrace::total_energy() const noexcept {
    double sum = 0.0;
    for (const Arrival& a : arrivals_) {
        sum += a.energy;
    }
    return sum;
}

double EnergyTrace::harvested_by(double t) const noexcept {
    double sum = 0.0;
    for (const Arrival& a : arrivals_) {
        if (a.time > t) {
            break;
        }
        sum += a.energy;
    }
    return sum;
}

double EnergyTrace::harvested_before(double t) const noexcept {
    double sum = 0.0;
    for (const Arrival& a : arrivals_) {
        if (a.time >= t) {
            break;
        }
        sum += a.energy;
    }
    return sum;
}

EnergyTrace EnergyTrace::with_bits(double bits) const {
    return EnergyTrace(arrivals_, bits, channel_, label_);
}

EnergyTrace EnergyTrace::with_channel(ChannelModel channel) const {
    return EnergyTrace(arrivals_, bits_, channel, label_);
}

}  // namespace ehsched
