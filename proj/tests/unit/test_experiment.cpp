#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "irsbf/errors.hpp"
#include "irsbf/experiment.hpp"
#include "irsbf/instance_io.hpp"

using namespace irsbf;

namespace {

std::string trials_csv(const ExperimentConfig& config) {
    std::ostringstream out;
    const SimulationResult r = run_simulation(config);
    write_trials_csv(out, r);
    write_cdf_csv(out, empirical_cdf(r));
    return out.str();
}

} // namespace

TEST_CASE("method names") {
    CHECK(parse_methods("optimal,cpp,,bcd,cpp") == std::vector<Method>{Method::optimal, Method::cpp, Method::bcd});
    CHECK(parse_method("optimal-reduced") == Method::optimal_reduced);
    CHECK_THROWS_AS(parse_method("sdr"), ParameterError);
    CHECK_THROWS_AS(parse_methods(""), ParameterError);
    CHECK_THROWS_AS(parse_bcd_init("random"), ParameterError);
    CHECK(parse_output_format("json") == OutputFormat::json);
}

TEST_CASE("run_method scores every method on the same instance") {
    const ChannelSet ch(Complex(1, 0), {Complex(1, 0)});
    for (Method m : {Method::optimal, Method::optimal_reduced, Method::cpp, Method::bcd, Method::brute}) {
        const MethodRun run = run_method(m, ch, 2);
        CHECK(run.boost == doctest::Approx(4.0));
        CHECK(run.config[0] == 2);
        CHECK(run.elapsed_ns >= 0);
    }
}

TEST_CASE("simulation records") {
    ExperimentConfig config;
    config.trials = 200;
    config.n_elements = 30;
    config.k_levels = 3;
    config.seed = 5;
    config.methods = {Method::optimal, Method::optimal_reduced, Method::cpp, Method::bcd};
    const SimulationResult r = run_simulation(config);
    REQUIRE(r.trials.size() == 200);

    const double bound = std::pow(std::cos(std::numbers::pi / 3), 2);
    for (std::size_t t = 0; t < r.trials.size(); ++t) {
        const TrialRecord& rec = r.trials[t];
        CHECK(rec.trial_id == t);
        const double optimal = rec.outcomes[0].boost;
        CHECK(std::abs(rec.outcomes[1].boost - optimal) <= 1e-12 * optimal);
        CHECK(optimal >= rec.outcomes[2].boost);
        CHECK(optimal >= rec.outcomes[3].boost);
        CHECK(rec.outcomes[2].boost / optimal >= bound);
        CHECK(rec.outcomes[3].bcd_passes >= 1);
        for (const MethodOutcome& o : rec.outcomes) {
            CHECK(std::abs(o.boost_db - 10 * std::log10(o.boost)) <= 1e-9);
        }
    }

    const auto cdf = empirical_cdf(r);
    CHECK(cdf.size() == 800);
    for (std::size_t i = 1; i < cdf.size(); ++i) {
        if (cdf[i].method == cdf[i - 1].method) {
            CHECK(cdf[i].probability > cdf[i - 1].probability);
            CHECK(cdf[i].boost_db >= cdf[i - 1].boost_db);
        }
    }
    CHECK(cdf.back().probability == 1.0);
}

TEST_CASE("simulation output does not depend on the worker count") {
    ExperimentConfig config;
    config.trials = 64;
    config.n_elements = 20;
    config.k_levels = 4;
    config.seed = 99;
    config.methods = {Method::optimal, Method::cpp, Method::bcd};
    config.workers = 1;
    const std::string serial = trials_csv(config);
    for (unsigned w : {2u, 3u, 8u}) {
        config.workers = w;
        CHECK(trials_csv(config) == serial);
    }
    config.seed = 100;
    CHECK(trials_csv(config) != serial);
}

TEST_CASE("simulation JSON document") {
    ExperimentConfig config;
    config.trials = 5;
    config.n_elements = 4;
    config.methods = {Method::optimal, Method::brute};
    config.record_timing = true;
    std::ostringstream out;
    write_simulation_json(out, run_simulation(config));
    const auto doc = nlohmann::json::parse(out.str());
    CHECK(doc["config"]["n_elements"] == 4);
    CHECK(doc["trials"].size() == 5);
    CHECK(doc["trials"][0]["methods"]["brute"].contains("solve_time_ns"));
    CHECK(doc["cdf"]["optimal"].size() == 5);
    CHECK(doc["trials"][2]["methods"]["optimal"]["boost"].get<double>() ==
          doctest::Approx(doc["trials"][2]["methods"]["brute"]["boost"].get<double>()).epsilon(1e-9));
}

TEST_CASE("simulation refuses invalid configurations") {
    ExperimentConfig config;
    config.methods = {Method::optimal, Method::brute};
    config.n_elements = 100;
    CHECK_THROWS_AS(run_simulation(config), ParameterError);
    config.methods = {Method::optimal};
    config.trials = 0;
    CHECK_THROWS_AS(config.validate(), ParameterError);
    config.trials = 1;
    config.geometry.tx = config.geometry.rx;
    CHECK_THROWS_AS(config.validate(), ParameterError);
}

TEST_CASE("bench emits one row per repeat") {
    BenchConfig config;
    config.sizes = {100};
    config.repeats = 3;
    config.methods = {Method::optimal, Method::cpp, Method::bcd};
    config.sort_kinds = {SortKind::bin, SortKind::comparison};
    const auto rows = run_bench(config);
    std::map<std::string, int> per_method;
    for (const BenchRow& row : rows) {
        ++per_method[row.method];
        CHECK(row.n == 100);
        CHECK(row.min_ns <= row.median_ns);
        CHECK(row.min_ns <= row.time_ns);
    }
    CHECK(per_method.size() == 4);
    for (const auto& [method, count] : per_method) {
        CHECK(count == 3);
    }
    CHECK(per_method.count("optimal[comparison]") == 1);

    std::ostringstream out;
    write_bench_csv(out, rows);
    CHECK(out.str().rfind("N,method,repeat,time_ns,median_ns,min_ns\n", 0) == 0);

    config.repeats = 0;
    CHECK_THROWS_AS(run_bench(config), ParameterError);
}

TEST_CASE("verification battery") {
    VerifyConfig config;
    config.trials = 10;
    config.n_max = 5;
    config.k_set = {2, 3, 8};
    const VerifyReport report = run_verification(config);
    CHECK(report.instances == 150);
    CHECK(report.passed());
    std::ostringstream out;
    write_verify_report(out, report);
    CHECK(out.str().find("verify: PASS") != std::string::npos);
}

TEST_CASE("verification catches a sweep that skips the wraparound arc") {
    VerifyConfig config;
    config.trials = 40;
    config.n_max = 3;
    config.k_set = {2, 3, 4};
    const Solver faulty = [](const ChannelSet& ch, int k) {
        const BreakpointList bps = breakpoints(ch, k);
        SweepOptions options;
        options.max_arcs = bps.distinct() - 1;
        return sweep(ch, bps, options);
    };
    const VerifyReport report = run_verification(config, faulty);
    REQUIRE_FALSE(report.passed());
    const VerifyFailure& f = report.failures.front();
    // the serialized instance replays the failure
    std::istringstream replay(f.instance);
    const ChannelSet ch = read_instance(replay);
    CHECK(ch.size() == f.n);
    CHECK(faulty(ch, f.k).boost < brute_force(ch, f.k).boost);
}

TEST_CASE("verification refuses oversized brute force") {
    VerifyConfig config;
    config.n_max = 8;
    config.k_set = {2, 8};
    CHECK_THROWS_AS(run_verification(config), ParameterError);
    config.brute_cap = 16'777'216;
    CHECK_NOTHROW(config.validate());
}

TEST_CASE("verification instances are reproducible") {
    VerifyConfig config;
    CHECK(verification_instance(config, 5, 3, 7) == verification_instance(config, 5, 3, 7));
    CHECK_FALSE(verification_instance(config, 5, 3, 7) == verification_instance(config, 5, 3, 8));
    RngStream rng(1, 1);
    const ChannelSet unit = sample_unit_instance(rng, 50);
    for (const Complex& h : unit.reflected()) {
        CHECK(std::abs(h) == doctest::Approx(1.0));
    }
}
