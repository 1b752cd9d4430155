#pragma once

#include "irsbf/types.hpp"

namespace irsbf {

/// g = h0 + sum_n h_n e^{j theta_n}. Throws InstanceError on a length mismatch.
Complex composite(const ChannelSet& channels, const PhaseConfig& config);

/// |g|^2 / |h0|^2: SNR with the surface over SNR of the direct link alone.
double snr_boost(const ChannelSet& channels, const PhaseConfig& config);

/// |g|^2 / |h0|^2 for an already computed composite channel.
double boost_of(const ChannelSet& channels, Complex g) noexcept;

/// 10 log10(boost).
double to_db(double power_ratio) noexcept;

} // namespace irsbf
