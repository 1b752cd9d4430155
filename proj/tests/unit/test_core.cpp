#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "irsbf/angles.hpp"
#include "irsbf/errors.hpp"
#include "irsbf/objective.hpp"
#include "oracles.hpp"

using namespace irsbf;
using irsbf::testing::naive_composite;
using irsbf::testing::random_channels;
using irsbf::testing::relative_error;

constexpr double pi = std::numbers::pi;

TEST_CASE("angles normalize into [0, 2pi) and (-pi, pi]") {
    CHECK(normalize_angle(0.0) == 0.0);
    CHECK(normalize_angle(kTwoPi) == 0.0);
    CHECK(normalize_angle(-1e-300) == 0.0);
    CHECK(normalize_angle(-pi / 2) == doctest::Approx(3 * pi / 2));
    CHECK(normalize_angle(5 * pi) == doctest::Approx(pi));
    CHECK(wrap_to_pi(pi) == doctest::Approx(pi));
    CHECK(wrap_to_pi(-pi) == doctest::Approx(pi));
    CHECK(wrap_to_pi(3 * pi / 2) == doctest::Approx(-pi / 2));
    CHECK(circular_distance(0.1, kTwoPi - 0.1) == doctest::Approx(0.2));
}

TEST_CASE("unit rotations are exact on quarter turns") {
    CHECK(unit_rotation(4, 4) == Complex(1, 0));
    CHECK(unit_rotation(1, 4) == Complex(0, 1));
    CHECK(unit_rotation(3, 4) == Complex(0, -1));
    CHECK(unit_rotation(1, 2) == Complex(-1, 0));
    CHECK(unit_rotation(2, 8) == Complex(0, 1));
    const auto table = rotation_table(3);
    REQUIRE(table.size() == 4);
    CHECK(table[0] == table[3]);
    CHECK(table[1].real() == doctest::Approx(-0.5));
}

TEST_CASE("channel set validation") {
    CHECK_THROWS_AS(ChannelSet(Complex(1, 0), {}), InstanceError);
    CHECK_THROWS_AS(ChannelSet(Complex(0, 0), {Complex(1, 0)}), InstanceError);
    CHECK_THROWS_AS(ChannelSet(Complex(1, 0), {Complex(1, 0), Complex(0, 0)}), InstanceError);
    CHECK_THROWS_AS(ChannelSet(Complex(1, 0), {Complex(std::nan(""), 0)}), InstanceError);

    // magnitudes above 1 are fine
    const ChannelSet big(Complex(3, 0), {Complex(0, -2)});
    CHECK(big.direct_phase() == 0.0);
    CHECK(big.phases()[0] == doctest::Approx(3 * pi / 2));
    CHECK(big.reflected_magnitude_sum() == doctest::Approx(2.0));
}

TEST_CASE("phase config validation") {
    CHECK_THROWS_AS(PhaseConfig(1, {1}), ParameterError);
    CHECK_THROWS_AS(PhaseConfig(4, {0}), InstanceError);
    CHECK_THROWS_AS(PhaseConfig(4, {5}), InstanceError);
    const PhaseConfig id = PhaseConfig::identity(3, 4);
    CHECK(id.size() == 4);
    CHECK(id[2] == 3);
    CHECK(id.phase(0) == doctest::Approx(kTwoPi));
}

TEST_CASE("composite examples") {
    const ChannelSet same(Complex(1, 0), {Complex(1, 0)});
    for (int k : {2, 3, 4, 8}) {
        CHECK(composite(same, PhaseConfig(k, {k})) == Complex(2, 0));
    }

    const ChannelSet quarter(Complex(1, 0), {Complex(0, 1)});
    const Complex g = composite(quarter, PhaseConfig(4, {3}));
    CHECK(g.real() == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(std::abs(g.imag()) < 1e-15);

    CHECK_THROWS_AS(composite(same, PhaseConfig(2, {1, 1})), InstanceError);
}

TEST_CASE("composite matches term-by-term summation") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const int k = 2 + trial % 7;
        const ChannelSet ch = random_channels(rng, 4);
        std::uniform_int_distribution<int> pick(1, k);
        std::vector<int> shifts{pick(rng), pick(rng), pick(rng), pick(rng)};
        const Complex got = composite(ch, PhaseConfig(k, shifts));
        const Complex want = naive_composite(ch, k, shifts);
        CHECK(std::abs(got - want) <= 1e-12 * std::abs(want));
    }
}

TEST_CASE("snr boost examples") {
    CHECK(snr_boost(ChannelSet(Complex(1, 0), {Complex(1, 0)}), PhaseConfig(5, {5})) == 4.0);
    CHECK(snr_boost(ChannelSet(Complex(0.5, 0), {std::polar(0.5, pi)}), PhaseConfig(2, {1})) ==
          doctest::Approx(4.0).epsilon(1e-15));
    CHECK(snr_boost(ChannelSet(Complex(1, 0), {std::polar(1.0, pi / 2)}), PhaseConfig(2, {2})) ==
          doctest::Approx(2.0).epsilon(1e-15));
    CHECK(to_db(100.0) == doctest::Approx(20.0));
}

TEST_CASE("snr boost is invariant to common scaling and rotation") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> scale(0.01, 100.0);
    std::uniform_real_distribution<double> angle(0.0, kTwoPi);
    for (int trial = 0; trial < 200; ++trial) {
        const int k = 2 + trial % 7;
        const std::size_t n = 1 + static_cast<std::size_t>(trial % 9);
        const ChannelSet ch = random_channels(rng, n);
        std::uniform_int_distribution<int> pick(1, k);
        std::vector<int> shifts(n);
        for (int& s : shifts) {
            s = pick(rng);
        }
        const PhaseConfig config(k, shifts);
        const double base = snr_boost(ch, config);
        CHECK(base >= 0.0);

        const double c = scale(rng);
        const Complex rot = std::polar(1.0, angle(rng));
        std::vector<Complex> scaled, rotated;
        for (const Complex& h : ch.reflected()) {
            scaled.push_back(c * h);
            rotated.push_back(rot * h);
        }
        CHECK(relative_error(snr_boost(ChannelSet(c * ch.direct(), scaled), config), base) <= 1e-12);
        CHECK(relative_error(snr_boost(ChannelSet(rot * ch.direct(), rotated), config), base) <= 1e-12);
    }
}
