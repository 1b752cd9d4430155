#include "irsbf/channel_model.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "irsbf/angles.hpp"
#include "irsbf/errors.hpp"

namespace irsbf {

double distance(const Point3& a, const Point3& b) noexcept {
    return std::hypot(a[0] - b[0], a[1] - b[1], a[2] - b[2]);
}

void Geometry::validate() const {
    for (const Point3* p : {&tx, &irs, &rx}) {
        for (double c : *p) {
            if (!std::isfinite(c)) {
                throw ParameterError("geometry coordinates must be finite");
            }
        }
    }
    if (!(direct_distance() > 0.0) || !(tx_irs_distance() > 0.0) || !(irs_rx_distance() > 0.0)) {
        throw ParameterError("transmitter, surface and receiver must be at distinct positions");
    }
}

double LinkBudget::snr_scale() const noexcept {
    return dbm_to_watts(tx_power_dbm) / dbm_to_watts(noise_power_dbm);
}

double pathloss_direct_db(double d0) {
    if (!(d0 > 0.0)) {
        throw ParameterError("direct distance must be positive, got " + std::to_string(d0));
    }
    return 32.6 + 36.7 * std::log10(d0);
}

double pathloss_reflect_db(double d) {
    if (!(d > 0.0)) {
        throw ParameterError("hop distance must be positive, got " + std::to_string(d));
    }
    return 30.0 + 22.0 * std::log10(d);
}

double dbm_to_watts(double dbm) noexcept {
    return std::pow(10.0, (dbm - 30.0) / 10.0);
}

namespace {

std::mt19937_64 seeded_engine(std::uint64_t seed, std::uint64_t stream_id) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream_id), static_cast<std::uint32_t>(stream_id >> 32)};
    return std::mt19937_64(seq);
}

} // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id), engine_(seeded_engine(seed, stream_id)) {}

double RngStream::uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

Complex RngStream::complex_gaussian() {
    // Box-Muller with radius sqrt(-ln u): each component has variance 1/2.
    const double u1 = 1.0 - uniform(); // (0, 1]
    const double u2 = uniform();
    const double radius = std::sqrt(-std::log(u1));
    const double angle = kTwoPi * u2;
    return {radius * std::cos(angle), radius * std::sin(angle)};
}

ChannelSet sample_channels(RngStream& rng, const Geometry& geometry, std::size_t elements) {
    if (elements == 0) {
        throw ParameterError("number of elements must be at least 1");
    }
    geometry.validate();
    const double direct_gain = std::pow(10.0, -pathloss_direct_db(geometry.direct_distance()) / 20.0);
    const double reflect_gain =
        std::pow(10.0, -(pathloss_reflect_db(geometry.tx_irs_distance()) +
                         pathloss_reflect_db(geometry.irs_rx_distance())) / 20.0);

    const Complex direct = direct_gain * rng.complex_gaussian();
    std::vector<Complex> reflected;
    reflected.reserve(elements);
    for (std::size_t n = 0; n < elements; ++n) {
        const Complex hop1 = rng.complex_gaussian();
        const Complex hop2 = rng.complex_gaussian();
        reflected.push_back(reflect_gain * hop1 * hop2);
    }
    return ChannelSet(direct, std::move(reflected));
}

} // namespace irsbf
