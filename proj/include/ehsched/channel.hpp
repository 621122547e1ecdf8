#pragma once

#include <optional>
#include <string_view>

namespace ehsched {

enum class ChannelKind { siso, gmac };

/// Rate-function family mapping (duration, power) to delivered bits.
///
/// SISO is the unit-noise Gaussian link, d * log2(1 + p). GMAC is one user of
/// an uncoordinated two-user Gaussian multiple access channel, where each user
/// assumes its peer transmits at the same power: (d / 2) * log2(1 + 2p).
struct ChannelModel {
    ChannelKind kind = ChannelKind::siso;

    static constexpr ChannelModel siso() { return {ChannelKind::siso}; }
    static constexpr ChannelModel gmac() { return {ChannelKind::gmac}; }

    friend constexpr bool operator==(ChannelModel, ChannelModel) = default;
};

std::string_view to_string(ChannelKind kind);
std::optional<ChannelKind> parse_channel_kind(std::string_view text);

/// Bits delivered by holding `power` for `duration`. Throws std::domain_error
/// on negative arguments. A zero duration delivers zero bits for any power.
double rate(ChannelModel model, double duration, double power);

/// Asymptotic number of bits `energy` joules can carry as the transmission is
/// stretched to infinity: energy * log2(e) for both models.
double bits_capacity_limit(ChannelModel model, double energy);

/// Minimal T with rate(T, energy / T) == bits, i.e. the fastest single-power
/// transmission of `bits` using exactly `energy`. Returns std::nullopt when
/// the payload is at or beyond the capacity limit of the energy.
std::optional<double> completion_time(ChannelModel model, double bits, double energy);

}  // namespace ehsched
