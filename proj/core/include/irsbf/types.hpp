#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace irsbf {

/// Complex baseband channel coefficient (linear amplitude).
using Complex = std::complex<double>;

/// Direct channel h0 plus the N cascaded reflected channels h1..hN.
///
/// Every magnitude must be strictly positive: the phase of a zero channel is
/// undefined and the objective normalizes by |h0|^2. Immutable once built.
class ChannelSet {
public:
    /// Throws InstanceError if `reflected` is empty or any channel is zero or
    /// non-finite.
    ChannelSet(Complex direct, std::vector<Complex> reflected);

    const Complex& direct() const noexcept { return direct_; }
    std::span<const Complex> reflected() const noexcept { return reflected_; }
    std::size_t size() const noexcept { return reflected_.size(); }

    /// Phase of h0 in [0, 2pi).
    double direct_phase() const noexcept { return direct_phase_; }
    /// Phases of h1..hN in [0, 2pi).
    std::span<const double> phases() const noexcept { return phases_; }

    /// Sum of reflected magnitudes, the natural scale for absolute error bounds on g.
    double reflected_magnitude_sum() const noexcept { return magnitude_sum_; }

    bool operator==(const ChannelSet& other) const noexcept {
        return direct_ == other.direct_ && reflected_ == other.reflected_;
    }

private:
    Complex direct_;
    std::vector<Complex> reflected_;
    double direct_phase_ = 0.0;
    std::vector<double> phases_;
    double magnitude_sum_ = 0.0;
};

/// Discrete phase shifts theta_n = k_n * (2pi / K) with k_n in {1, ..., K}.
///
/// Shifts are kept as integers so that repeated +omega updates never drift.
class PhaseConfig {
public:
    /// Throws ParameterError if K < 2 and InstanceError if any shift is outside [1, K].
    PhaseConfig(int levels, std::vector<int> shifts);

    /// All elements at k = K, i.e. zero rotation.
    static PhaseConfig identity(int levels, std::size_t size);

    int levels() const noexcept { return levels_; }
    std::span<const int> shifts() const noexcept { return shifts_; }
    std::size_t size() const noexcept { return shifts_.size(); }
    int operator[](std::size_t n) const { return shifts_[n]; }

    /// theta_n in (0, 2pi].
    double phase(std::size_t n) const;

    auto operator<=>(const PhaseConfig&) const = default;

private:
    int levels_;
    std::vector<int> shifts_;
};

/// e^{j 2pi k / K}; exact for multiples of pi/2.
Complex unit_rotation(int k, int levels);

/// Table of e^{j 2pi k / K} for k = 0..K (entry K equals entry 0).
std::vector<Complex> rotation_table(int levels);

/// Throws ParameterError unless K >= 2.
void check_levels(int levels);

} // namespace irsbf
