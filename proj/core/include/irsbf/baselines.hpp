#pragma once

#include <cstdint>
#include <functional>

#include "irsbf/solver.hpp"
#include "irsbf/types.hpp"

namespace irsbf {

/// Closest point projection: round the continuous optimum alpha_0 - alpha_n of
/// each element to the nearest discrete shift.
PhaseConfig closest_point_projection(const ChannelSet& channels, int levels);

struct BcdReport {
    PhaseConfig config;
    double boost = 0.0;
    int passes = 0;
    bool converged = false;
};

/// One coordinate update: element, boost before and after.
struct BcdUpdate {
    std::size_t element;
    double before;
    double after;
};

/// Block coordinate descent over elements in index order. Each coordinate is
/// set to its exact maximizer over {1..K} with the others fixed (ties to the
/// smallest k). Stops after a pass without changes or after `max_passes`.
BcdReport block_coordinate_descent(const ChannelSet& channels, const PhaseConfig& init,
                                   int max_passes = 100,
                                   const std::function<void(const BcdUpdate&)>& observer = {});

inline constexpr std::uint64_t kDefaultBruteForceCap = 10'000'000;

/// K^N, saturating at UINT64_MAX.
std::uint64_t configuration_count(std::size_t elements, int levels) noexcept;

/// Exhaustive search over all K^N configurations (odometer, k_1 fastest).
/// Ties go to the lexicographically smallest (k_1, ..., k_N).
/// Throws ParameterError when K^N exceeds `cap`.
SolveResult brute_force(const ChannelSet& channels, int levels,
                        std::uint64_t cap = kDefaultBruteForceCap);

} // namespace irsbf
