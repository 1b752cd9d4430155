#include "irsbf/objective.hpp"

#include <cmath>
#include <string>

#include "irsbf/errors.hpp"

namespace irsbf {

Complex composite(const ChannelSet& channels, const PhaseConfig& config) {
    if (config.size() != channels.size()) {
        throw InstanceError("configuration has " + std::to_string(config.size()) +
                            " shifts for " + std::to_string(channels.size()) + " elements");
    }
    const auto rotations = rotation_table(config.levels());
    const auto reflected = channels.reflected();
    Complex g = channels.direct();
    for (std::size_t n = 0; n < reflected.size(); ++n) {
        g += reflected[n] * rotations[static_cast<std::size_t>(config[n])];
    }
    return g;
}

double boost_of(const ChannelSet& channels, Complex g) noexcept {
    return std::norm(g) / std::norm(channels.direct());
}

double snr_boost(const ChannelSet& channels, const PhaseConfig& config) {
    return boost_of(channels, composite(channels, config));
}

double to_db(double power_ratio) noexcept {
    return 10.0 * std::log10(power_ratio);
}

} // namespace irsbf
