#include "irsbf/baselines.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "irsbf/angles.hpp"
#include "irsbf/errors.hpp"
#include "irsbf/objective.hpp"

namespace irsbf {

PhaseConfig closest_point_projection(const ChannelSet& channels, int levels) {
    // Rotating h_n by alpha_0 - alpha_n aligns it with h_0; that is exactly the
    // closest-rotation rule with h_0's phase as the reference direction.
    return initial_assignment(channels, levels, channels.direct_phase());
}

BcdReport block_coordinate_descent(const ChannelSet& channels, const PhaseConfig& init, int max_passes,
                                   const std::function<void(const BcdUpdate&)>& observer) {
    if (max_passes < 1) {
        throw ParameterError("max_passes must be at least 1, got " + std::to_string(max_passes));
    }
    if (init.size() != channels.size()) {
        throw InstanceError("initial configuration has " + std::to_string(init.size()) +
                            " shifts for " + std::to_string(channels.size()) + " elements");
    }
    const int levels = init.levels();
    const auto rotations = rotation_table(levels);
    const auto reflected = channels.reflected();
    const double direct_norm = std::norm(channels.direct());

    std::vector<int> shifts(init.shifts().begin(), init.shifts().end());
    BcdReport report{init, 0.0, 0, false};
    for (int pass = 1; pass <= max_passes; ++pass) {
        report.passes = pass;
        // Fresh summation each pass keeps the running composite from drifting.
        Complex g = channels.direct();
        for (std::size_t n = 0; n < reflected.size(); ++n) {
            g += reflected[n] * rotations[static_cast<std::size_t>(shifts[n])];
        }
        bool changed = false;
        for (std::size_t n = 0; n < reflected.size(); ++n) {
            const Complex current = reflected[n] * rotations[static_cast<std::size_t>(shifts[n])];
            const Complex rest = g - current;
            const double before = std::norm(rest + current);
            int best_k = 0;
            double best = -1.0;
            for (int k = 1; k <= levels; ++k) {
                const double value = std::norm(rest + reflected[n] * rotations[static_cast<std::size_t>(k)]);
                if (value > best) {
                    best = value;
                    best_k = k;
                }
            }
            // Only move on a strict improvement; otherwise a tie could make the
            // descent oscillate between equally good shifts.
            if (best_k != shifts[n] && best > before) {
                shifts[n] = best_k;
                changed = true;
            } else {
                best = before;
            }
            g = rest + reflected[n] * rotations[static_cast<std::size_t>(shifts[n])];
            if (observer) {
                observer(BcdUpdate{n, before / direct_norm, best / direct_norm});
            }
        }
        if (!changed) {
            report.converged = true;
            break;
        }
    }
    report.config = PhaseConfig(levels, std::move(shifts));
    report.boost = snr_boost(channels, report.config);
    return report;
}

std::uint64_t configuration_count(std::size_t elements, int levels) noexcept {
    constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
    if (levels < 1) {
        return 0;
    }
    const auto base = static_cast<std::uint64_t>(levels);
    std::uint64_t count = 1;
    for (std::size_t n = 0; n < elements; ++n) {
        if (count > kMax / base) {
            return kMax;
        }
        count *= base;
    }
    return count;
}

SolveResult brute_force(const ChannelSet& channels, int levels, std::uint64_t cap) {
    check_levels(levels);
    const std::size_t elements = channels.size();
    const std::uint64_t total = configuration_count(elements, levels);
    if (total > cap) {
        throw ParameterError("brute force over K^N = " + std::to_string(levels) + "^" +
                             std::to_string(elements) + " configurations exceeds the cap of " +
                             std::to_string(cap));
    }
    const auto rotations = rotation_table(levels);
    const auto reflected = channels.reflected();

    // partial[i] = h0 + sum_{m >= i} h_m e^{j k_m omega}; advancing digit i only
    // refreshes partial[i..0], so each configuration costs O(1) amortized and
    // every composite is a fresh sum of N + 1 terms.
    std::vector<int> digits(elements, 1);
    std::vector<Complex> partial(elements + 1);
    partial[elements] = channels.direct();
    auto refresh = [&](std::size_t top) {
        for (std::size_t i = top + 1; i-- > 0;) {
            partial[i] = partial[i + 1] + reflected[i] * rotations[static_cast<std::size_t>(digits[i])];
        }
    };
    refresh(elements - 1);

    std::vector<int> best = digits;
    double best_norm = std::norm(partial[0]);
    for (;;) {
        std::size_t i = 0;
        while (i < elements && digits[i] == levels) {
            digits[i] = 1;
            ++i;
        }
        if (i == elements) {
            break;
        }
        ++digits[i];
        refresh(i);
        const double norm = std::norm(partial[0]);
        if (norm > best_norm || (norm == best_norm && digits < best)) {
            best_norm = norm;
            best = digits;
        }
    }

    PhaseConfig config(levels, std::move(best));
    const Complex g = composite(channels, config);
    SolveStats stats;
    stats.arcs_evaluated = static_cast<std::size_t>(total);
    return SolveResult{std::move(config), boost_of(channels, g), g, normalize_angle(std::arg(g)), 0, 0.0, 0.0,
                       stats};
}

} // namespace irsbf
