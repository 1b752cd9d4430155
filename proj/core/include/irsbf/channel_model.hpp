#pragma once

#include <array>
#include <cstdint>
#include <random>

#include "irsbf/types.hpp"

namespace irsbf {

using Point3 = std::array<double, 3>;

double distance(const Point3& a, const Point3& b) noexcept;

/// Transmitter, surface and receiver positions in meters.
struct Geometry {
    Point3 tx{50.0, -200.0, 20.0};
    Point3 irs{-2.0, -1.0, 0.0};
    Point3 rx{0.0, 0.0, 0.0};

    /// Throws ParameterError if any two points coincide or a coordinate is not finite.
    void validate() const;

    double direct_distance() const noexcept { return distance(tx, rx); }
    double tx_irs_distance() const noexcept { return distance(tx, irs); }
    double irs_rx_distance() const noexcept { return distance(irs, rx); }
};

struct LinkBudget {
    double tx_power_dbm = 30.0;
    double noise_power_dbm = -90.0;

    /// P / sigma^2 as a linear ratio.
    double snr_scale() const noexcept;
};

/// Direct-link pathloss 32.6 + 36.7 log10(d0) dB.
double pathloss_direct_db(double d0);

/// Per-hop reflected pathloss 30 + 22 log10(d) dB.
double pathloss_reflect_db(double d);

double dbm_to_watts(double dbm) noexcept;

/// Deterministic random stream keyed by (seed, stream_id).
///
/// Backed by std::mt19937_64 seeded through std::seed_seq with the four 32-bit
/// halves of seed and stream_id; both algorithms are fully specified by the
/// standard, so draws are reproducible across platforms. Normals use Box-Muller.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id);

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t stream_id() const noexcept { return stream_id_; }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform();
    /// Circularly symmetric complex Gaussian with E|z|^2 = 1.
    Complex complex_gaussian();

private:
    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::mt19937_64 engine_;
};

/// Draws h0 and h1..hN: pathloss-scaled Rayleigh fading on the direct link and
/// products of two independent Rayleigh hops on each reflected link.
ChannelSet sample_channels(RngStream& rng, const Geometry& geometry, std::size_t elements);

} // namespace irsbf
