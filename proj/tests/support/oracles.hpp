#pragma once

// Test-only reference computations. Nothing here calls into the solver,
// breakpoint or brute-force code paths that these functions are used to check.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "irsbf/types.hpp"

namespace irsbf::testing {

/// h0 + sum h_n e^{j theta_n}, each rotation from std::polar on k*2pi/K.
inline Complex naive_composite(const ChannelSet& channels, int levels, const std::vector<int>& shifts) {
    Complex g = channels.direct();
    const auto reflected = channels.reflected();
    for (std::size_t n = 0; n < shifts.size(); ++n) {
        const double theta = 2.0 * std::numbers::pi * shifts[n] / levels;
        g += reflected[n] * std::polar(1.0, theta);
    }
    return g;
}

inline double naive_boost(const ChannelSet& channels, int levels, const std::vector<int>& shifts) {
    return std::norm(naive_composite(channels, levels, shifts)) / std::norm(channels.direct());
}

struct Enumerated {
    double best_boost = -1.0;
    std::vector<int> best_shifts;
    std::size_t visited = 0;
};

/// Recursive enumeration of all K^N configurations, each scored from scratch.
inline Enumerated enumerate_all(const ChannelSet& channels, int levels) {
    Enumerated out;
    std::vector<int> shifts(channels.size(), 1);
    auto recurse = [&](auto&& self, std::size_t n) -> void {
        if (n == shifts.size()) {
            ++out.visited;
            const double b = naive_boost(channels, levels, shifts);
            if (b > out.best_boost) {
                out.best_boost = b;
                out.best_shifts = shifts;
            }
            return;
        }
        for (int k = 1; k <= levels; ++k) {
            shifts[n] = k;
            self(self, n + 1);
        }
    };
    recurse(recurse, 0);
    return out;
}

inline double relative_error(double value, double reference) {
    return std::abs(value - reference) / std::abs(reference);
}

/// Random channels with uniform phases and magnitudes in [lo, hi).
inline ChannelSet random_channels(std::mt19937_64& rng, std::size_t n, double lo = 0.05, double hi = 1.0) {
    std::uniform_real_distribution<double> mag(lo, hi);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
    const Complex h0 = std::polar(mag(rng), phase(rng));
    std::vector<Complex> reflected;
    for (std::size_t i = 0; i < n; ++i) {
        reflected.push_back(std::polar(mag(rng), phase(rng)));
    }
    return ChannelSet(h0, std::move(reflected));
}

/// Number of configurations for N elements with K levels.
inline std::uint64_t power(int k, std::size_t n) {
    std::uint64_t r = 1;
    for (std::size_t i = 0; i < n; ++i) {
        r *= static_cast<std::uint64_t>(k);
    }
    return r;
}

/// The two-element instance where aligning with h0 goes badly wrong:
/// h0 = 0.1, h1 = e^{j(pi/2 - 0.1)}, h2 = e^{j(pi/2 + 0.1)}.
inline ChannelSet misaligned_pair() {
    const double half_pi = std::numbers::pi / 2.0;
    return ChannelSet(Complex(0.1, 0.0), {std::polar(1.0, half_pi - 0.1), std::polar(1.0, half_pi + 0.1)});
}

} // namespace irsbf::testing
