#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "irsbf/angles.hpp"
#include "irsbf/channel_model.hpp"
#include "irsbf/errors.hpp"

using namespace irsbf;

TEST_CASE("pathloss formulas") {
    CHECK(pathloss_direct_db(100.0) == doctest::Approx(106.0).epsilon(1e-12));
    CHECK(pathloss_direct_db(10.0) == doctest::Approx(69.3).epsilon(1e-12));
    CHECK(pathloss_direct_db(1.0) == 32.6);
    CHECK(pathloss_reflect_db(100.0) == doctest::Approx(74.0).epsilon(1e-12));
    CHECK(pathloss_reflect_db(1.0) == 30.0);
    CHECK(pathloss_reflect_db(10.0) == doctest::Approx(52.0).epsilon(1e-12));
    CHECK_THROWS_AS(pathloss_direct_db(0.0), ParameterError);
    CHECK_THROWS_AS(pathloss_reflect_db(-3.0), ParameterError);
}

TEST_CASE("dBm conversion") {
    CHECK(dbm_to_watts(30.0) == 1.0);
    CHECK(dbm_to_watts(0.0) == doctest::Approx(1e-3).epsilon(1e-14));
    CHECK(dbm_to_watts(-90.0) == doctest::Approx(1e-12).epsilon(1e-14));
    CHECK(LinkBudget{}.snr_scale() == doctest::Approx(1e12).epsilon(1e-12));
}

TEST_CASE("default geometry distances") {
    const Geometry g;
    CHECK(g.direct_distance() == doctest::Approx(207.1231517720798).epsilon(1e-12));
    CHECK(g.tx_irs_distance() == doctest::Approx(206.6518811915343).epsilon(1e-12));
    CHECK(g.irs_rx_distance() == doctest::Approx(std::sqrt(5.0)).epsilon(1e-15));
    Geometry bad;
    bad.irs = bad.rx;
    CHECK_THROWS_AS(bad.validate(), ParameterError);
    RngStream rng(1, 0);
    CHECK_THROWS_AS(sample_channels(rng, bad, 4), ParameterError);
    CHECK_THROWS_AS(sample_channels(rng, Geometry{}, 0), ParameterError);
}

TEST_CASE("reproducible streams") {
    RngStream a(123, 7), b(123, 7), c(123, 8), d(124, 7);
    const ChannelSet ca = sample_channels(a, Geometry{}, 50);
    const ChannelSet cb = sample_channels(b, Geometry{}, 50);
    const ChannelSet cc = sample_channels(c, Geometry{}, 50);
    const ChannelSet cd = sample_channels(d, Geometry{}, 50);
    CHECK(ca == cb);
    CHECK_FALSE(ca == cc);
    CHECK_FALSE(ca == cd);
}

TEST_CASE("fading moments") {
    const Geometry geometry;
    constexpr int draws = 100'000;

    RngStream rng(2023, 0);
    double power = 0.0;
    for (int i = 0; i < draws; ++i) {
        power += std::norm(rng.complex_gaussian());
    }
    CHECK(std::abs(power / draws - 1.0) < 0.01);

    RngStream stream(2023, 1);
    const ChannelSet ch = sample_channels(stream, geometry, draws);
    double reflected = 0.0;
    for (const Complex& h : ch.reflected()) {
        reflected += std::norm(h);
    }
    const double expected = std::pow(10.0, -(pathloss_reflect_db(geometry.tx_irs_distance()) +
                                             pathloss_reflect_db(geometry.irs_rx_distance())) / 10.0);
    CHECK(std::abs(reflected / draws / expected - 1.0) < 0.02);
}

TEST_CASE("distinct streams are uncorrelated") {
    constexpr int pairs = 10'000;
    std::vector<double> x, y;
    for (int i = 0; i < pairs; ++i) {
        RngStream a(77, static_cast<std::uint64_t>(i));
        RngStream b(77, static_cast<std::uint64_t>(i + pairs));
        x.push_back(std::norm(sample_channels(a, Geometry{}, 1).direct()));
        y.push_back(std::norm(sample_channels(b, Geometry{}, 1).direct()));
    }
    double mx = 0, my = 0;
    for (int i = 0; i < pairs; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= pairs;
    my /= pairs;
    double sxy = 0, sxx = 0, syy = 0;
    for (int i = 0; i < pairs; ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    CHECK(std::abs(sxy / std::sqrt(sxx * syy)) < 0.05);
}

TEST_CASE("reflected phases are uniform (Kolmogorov-Smirnov)") {
    constexpr std::size_t n = 100'000;
    RngStream rng(9, 3);
    const ChannelSet ch = sample_channels(rng, Geometry{}, n);
    std::vector<double> u(ch.phases().begin(), ch.phases().end());
    std::sort(u.begin(), u.end());
    double d = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double f = u[i] / kTwoPi;
        d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
    }
    // 1% critical value of the one-sample KS statistic
    CHECK(d < 1.628 / std::sqrt(static_cast<double>(n)));
}
