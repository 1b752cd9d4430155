#include "irsbf/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>

#include <json.hpp>

#include "irsbf/angles.hpp"
#include "irsbf/errors.hpp"
#include "irsbf/instance_io.hpp"
#include "irsbf/objective.hpp"

namespace irsbf {

namespace {

// Runs body(i) for i in [0, count) on up to `workers` threads. Results must be
// written to per-index slots; the first exception is rethrown on the caller.
template <typename Body>
void parallel_for(std::size_t count, unsigned workers, Body&& body) {
    if (workers == 0) {
        workers = std::max(1u, std::thread::hardware_concurrency());
    }
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(count, 1)));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) {
            body(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count) {
                    return;
                }
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error) {
                        error = std::current_exception();
                    }
                    next.store(count);
                }
            }
        });
    }
    pool.clear();
    if (error) {
        std::rethrow_exception(error);
    }
}

std::int64_t median_of(std::vector<std::int64_t> values) {
    std::sort(values.begin(), values.end());
    const std::size_t mid = values.size() / 2;
    if (values.size() % 2 == 1) {
        return values[mid];
    }
    return (values[mid - 1] + values[mid]) / 2;
}

std::string method_label(Method method, SortKind kind) {
    if (method == Method::optimal) {
        return "optimal[" + std::string(to_string(kind)) + "]";
    }
    return std::string(to_string(method));
}

nlohmann::json point_json(const Point3& p) {
    return nlohmann::json::array({p[0], p[1], p[2]});
}

} // namespace

std::string_view to_string(Method method) noexcept {
    switch (method) {
    case Method::optimal: return "optimal";
    case Method::optimal_reduced: return "optimal-reduced";
    case Method::cpp: return "cpp";
    case Method::bcd: return "bcd";
    case Method::brute: return "brute";
    }
    return "unknown";
}

Method parse_method(std::string_view text) {
    for (Method m : {Method::optimal, Method::optimal_reduced, Method::cpp, Method::bcd, Method::brute}) {
        if (text == to_string(m)) {
            return m;
        }
    }
    throw ParameterError("unknown method '" + std::string(text) +
                         "' (expected optimal, optimal-reduced, cpp, bcd or brute)");
}

std::vector<Method> parse_methods(std::string_view text) {
    std::vector<Method> methods;
    while (!text.empty()) {
        const auto comma = text.find(',');
        const std::string_view item = text.substr(0, comma);
        if (!item.empty()) {
            const Method m = parse_method(item);
            if (std::find(methods.begin(), methods.end(), m) == methods.end()) {
                methods.push_back(m);
            }
        }
        text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
    }
    if (methods.empty()) {
        throw ParameterError("method list is empty");
    }
    return methods;
}

BcdInit parse_bcd_init(std::string_view text) {
    if (text == "zero") {
        return BcdInit::zero;
    }
    if (text == "cpp") {
        return BcdInit::cpp;
    }
    throw ParameterError("unknown BCD initialization '" + std::string(text) + "' (expected zero or cpp)");
}

OutputFormat parse_output_format(std::string_view text) {
    if (text == "csv") {
        return OutputFormat::csv;
    }
    if (text == "json") {
        return OutputFormat::json;
    }
    throw ParameterError("unknown output format '" + std::string(text) + "' (expected csv or json)");
}

MethodRun run_method(Method method, const ChannelSet& channels, int levels, const MethodOptions& options) {
    using Clock = std::chrono::steady_clock;
    const auto started = Clock::now();
    MethodRun run{PhaseConfig::identity(levels, channels.size()), 0.0, 0, 0, std::nullopt};
    switch (method) {
    case Method::optimal:
        run.detail = solve(channels, levels, options.sort_kind);
        break;
    case Method::optimal_reduced:
        run.detail = solve_reduced(channels, levels);
        break;
    case Method::cpp:
        run.config = closest_point_projection(channels, levels);
        break;
    case Method::bcd: {
        const PhaseConfig init = options.bcd_init == BcdInit::cpp ? closest_point_projection(channels, levels)
                                                                  : PhaseConfig::identity(levels, channels.size());
        BcdReport report = block_coordinate_descent(channels, init, options.bcd_max_passes);
        run.config = std::move(report.config);
        run.bcd_passes = report.passes;
        break;
    }
    case Method::brute:
        run.detail = brute_force(channels, levels, options.brute_cap);
        break;
    }
    run.elapsed_ns = std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - started).count();
    if (run.detail) {
        run.config = run.detail->config;
        run.boost = run.detail->boost;
    } else {
        run.boost = snr_boost(channels, run.config);
    }
    return run;
}

void ExperimentConfig::validate() const {
    if (trials == 0) {
        throw ParameterError("trials must be at least 1");
    }
    if (n_elements == 0) {
        throw ParameterError("number of elements must be at least 1");
    }
    check_levels(k_levels);
    if (methods.empty()) {
        throw ParameterError("no methods requested");
    }
    geometry.validate();
    if (!std::isfinite(link.tx_power_dbm) || !std::isfinite(link.noise_power_dbm)) {
        throw ParameterError("link budget powers must be finite");
    }
    if (method_options.bcd_max_passes < 1) {
        throw ParameterError("BCD needs at least one pass");
    }
    if (std::find(methods.begin(), methods.end(), Method::brute) != methods.end() &&
        configuration_count(n_elements, k_levels) > method_options.brute_cap) {
        throw ParameterError("brute force requested but K^N = " + std::to_string(k_levels) + "^" +
                             std::to_string(n_elements) + " exceeds the cap of " +
                             std::to_string(method_options.brute_cap));
    }
}

SimulationResult run_simulation(const ExperimentConfig& config) {
    config.validate();
    SimulationResult result{config, std::vector<TrialRecord>(config.trials)};
    const double snr_scale = config.link.snr_scale();
    parallel_for(config.trials, config.workers, [&](std::size_t t) {
        RngStream rng(config.seed, t);
        const ChannelSet channels = sample_channels(rng, config.geometry, config.n_elements);
        const double direct_norm = std::norm(channels.direct());
        TrialRecord record{t, {}};
        record.outcomes.reserve(config.methods.size());
        for (Method method : config.methods) {
            const MethodRun run = run_method(method, channels, config.k_levels, config.method_options);
            MethodOutcome outcome;
            outcome.boost = run.boost;
            outcome.boost_db = to_db(run.boost);
            outcome.snr_db = to_db(snr_scale * direct_norm * run.boost);
            outcome.solve_time_ns = run.elapsed_ns;
            outcome.bcd_passes = run.bcd_passes;
            record.outcomes.push_back(outcome);
        }
        result.trials[t] = std::move(record);
    });
    return result;
}

std::vector<CdfPoint> empirical_cdf(const SimulationResult& result) {
    std::vector<CdfPoint> cdf;
    const std::size_t trials = result.trials.size();
    cdf.reserve(trials * result.config.methods.size());
    for (std::size_t m = 0; m < result.config.methods.size(); ++m) {
        std::vector<double> values;
        values.reserve(trials);
        for (const TrialRecord& record : result.trials) {
            values.push_back(record.outcomes[m].boost_db);
        }
        std::sort(values.begin(), values.end());
        for (std::size_t i = 0; i < values.size(); ++i) {
            cdf.push_back({result.config.methods[m], values[i],
                           static_cast<double>(i + 1) / static_cast<double>(trials)});
        }
    }
    return cdf;
}

void write_trials_csv(std::ostream& out, const SimulationResult& result) {
    const bool timing = result.config.record_timing;
    out << "trial_id,method,boost,boost_db,snr_db,passes";
    if (timing) {
        out << ",solve_time_ns";
    }
    out << '\n';
    for (const TrialRecord& record : result.trials) {
        for (std::size_t m = 0; m < result.config.methods.size(); ++m) {
            const MethodOutcome& o = record.outcomes[m];
            out << record.trial_id << ',' << to_string(result.config.methods[m]) << ','
                << format_double(o.boost) << ',' << format_double(o.boost_db) << ','
                << format_double(o.snr_db) << ',' << o.bcd_passes;
            if (timing) {
                out << ',' << o.solve_time_ns;
            }
            out << '\n';
        }
    }
}

void write_cdf_csv(std::ostream& out, const std::vector<CdfPoint>& cdf) {
    out << "method,boost_db,probability\n";
    for (const CdfPoint& p : cdf) {
        out << to_string(p.method) << ',' << format_double(p.boost_db) << ',' << format_double(p.probability)
            << '\n';
    }
}

void write_simulation_json(std::ostream& out, const SimulationResult& result) {
    const ExperimentConfig& c = result.config;
    nlohmann::json doc;
    nlohmann::json methods = nlohmann::json::array();
    for (Method m : c.methods) {
        methods.push_back(std::string(to_string(m)));
    }
    doc["config"] = {
        {"n_elements", c.n_elements},
        {"k_levels", c.k_levels},
        {"trials", c.trials},
        {"seed", c.seed},
        {"methods", methods},
        {"sort", std::string(to_string(c.method_options.sort_kind))},
        {"bcd_init", c.method_options.bcd_init == BcdInit::cpp ? "cpp" : "zero"},
        {"geometry", {{"tx", point_json(c.geometry.tx)}, {"irs", point_json(c.geometry.irs)},
                      {"rx", point_json(c.geometry.rx)}}},
        {"tx_dbm", c.link.tx_power_dbm},
        {"noise_dbm", c.link.noise_power_dbm},
    };
    nlohmann::json trials = nlohmann::json::array();
    for (const TrialRecord& record : result.trials) {
        nlohmann::json per_method;
        for (std::size_t m = 0; m < c.methods.size(); ++m) {
            const MethodOutcome& o = record.outcomes[m];
            nlohmann::json entry{{"boost", o.boost}, {"boost_db", o.boost_db}, {"snr_db", o.snr_db},
                                 {"passes", o.bcd_passes}};
            if (c.record_timing) {
                entry["solve_time_ns"] = o.solve_time_ns;
            }
            per_method[std::string(to_string(c.methods[m]))] = std::move(entry);
        }
        trials.push_back({{"trial_id", record.trial_id}, {"methods", std::move(per_method)}});
    }
    doc["trials"] = std::move(trials);
    nlohmann::json cdf = nlohmann::json::object();
    for (const CdfPoint& p : empirical_cdf(result)) {
        cdf[std::string(to_string(p.method))].push_back({p.boost_db, p.probability});
    }
    doc["cdf"] = std::move(cdf);
    out << doc.dump(2) << '\n';
}

std::vector<BenchRow> run_bench(const BenchConfig& config) {
    if (config.sizes.empty()) {
        throw ParameterError("bench needs at least one size");
    }
    if (config.repeats < 1) {
        throw ParameterError("repeats must be at least 1");
    }
    check_levels(config.k_levels);
    config.geometry.validate();
    for (std::size_t n : config.sizes) {
        if (n == 0) {
            throw ParameterError("bench sizes must be at least 1");
        }
    }

    struct Variant {
        Method method;
        SortKind sort;
    };
    std::vector<Variant> variants;
    for (Method m : config.methods) {
        if (m == Method::optimal) {
            for (SortKind kind : config.sort_kinds) {
                variants.push_back({m, kind});
            }
        } else {
            variants.push_back({m, config.method_options.sort_kind});
        }
    }

    std::vector<BenchRow> rows;
    for (std::size_t n : config.sizes) {
        RngStream rng(config.seed, n);
        const ChannelSet channels = sample_channels(rng, config.geometry, n);
        for (const Variant& v : variants) {
            MethodOptions options = config.method_options;
            options.sort_kind = v.sort;
            run_method(v.method, channels, config.k_levels, options); // warm-up
            std::vector<std::int64_t> times;
            times.reserve(static_cast<std::size_t>(config.repeats));
            for (int r = 0; r < config.repeats; ++r) {
                times.push_back(run_method(v.method, channels, config.k_levels, options).elapsed_ns);
            }
            const std::int64_t median = median_of(times);
            const std::int64_t minimum = *std::min_element(times.begin(), times.end());
            for (int r = 0; r < config.repeats; ++r) {
                rows.push_back({n, method_label(v.method, v.sort), r, times[static_cast<std::size_t>(r)], median,
                                minimum});
            }
        }
    }
    return rows;
}

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
    out << "N,method,repeat,time_ns,median_ns,min_ns\n";
    for (const BenchRow& row : rows) {
        out << row.n << ',' << row.method << ',' << row.repeat << ',' << row.time_ns << ',' << row.median_ns
            << ',' << row.min_ns << '\n';
    }
}

void VerifyConfig::validate() const {
    if (trials == 0) {
        throw ParameterError("trials must be at least 1");
    }
    if (n_max == 0) {
        throw ParameterError("n_max must be at least 1");
    }
    if (k_set.empty()) {
        throw ParameterError("K set is empty");
    }
    geometry.validate();
    for (int k : k_set) {
        check_levels(k);
        if (configuration_count(n_max, k) > brute_cap) {
            throw ParameterError("K^N = " + std::to_string(k) + "^" + std::to_string(n_max) +
                                 " exceeds the brute-force cap of " + std::to_string(brute_cap));
        }
    }
}

ChannelSet sample_unit_instance(RngStream& rng, std::size_t elements) {
    const double direct_mag = 0.05 + 0.95 * rng.uniform();
    const Complex direct = std::polar(direct_mag, kTwoPi * rng.uniform());
    std::vector<Complex> reflected;
    reflected.reserve(elements);
    for (std::size_t n = 0; n < elements; ++n) {
        if (n > 0 && rng.uniform() < 0.2) {
            const auto source = static_cast<std::size_t>(rng.uniform() * static_cast<double>(n));
            reflected.push_back(reflected[std::min(source, n - 1)]);
        } else {
            reflected.push_back(std::polar(1.0, kTwoPi * rng.uniform()));
        }
    }
    return ChannelSet(direct, std::move(reflected));
}

ChannelSet verification_instance(const VerifyConfig& config, std::size_t n, int k, std::size_t trial) {
    const std::uint64_t stream = (static_cast<std::uint64_t>(n) << 40) |
                                 (static_cast<std::uint64_t>(k) << 32) | static_cast<std::uint32_t>(trial);
    RngStream rng(config.seed, stream);
    if (trial % 2 == 0) {
        return sample_channels(rng, config.geometry, n);
    }
    return sample_unit_instance(rng, n);
}

VerifyReport run_verification(const VerifyConfig& config, const Solver& solver) {
    config.validate();
    const Solver solve_under_test =
        solver ? solver : Solver([](const ChannelSet& ch, int k) { return solve(ch, k, SortKind::bin); });

    struct Job {
        std::size_t n;
        int k;
        std::size_t trial;
    };
    std::vector<Job> jobs;
    for (std::size_t n = 1; n <= config.n_max; ++n) {
        for (int k : config.k_set) {
            for (std::size_t t = 0; t < config.trials; ++t) {
                jobs.push_back({n, k, t});
            }
        }
    }

    constexpr double kOracleTol = 1e-9;
    constexpr double kReducedTol = 1e-12;
    constexpr double kInteriorMargin = 1e-9;

    std::vector<std::vector<VerifyFailure>> failures(jobs.size());
    parallel_for(jobs.size(), config.workers, [&](std::size_t j) {
        const Job& job = jobs[j];
        const ChannelSet channels = verification_instance(config, job.n, job.k, job.trial);
        auto fail = [&](const char* check, const std::string& detail) {
            std::ostringstream text;
            write_instance(text, channels,
                           "n=" + std::to_string(job.n) + " k=" + std::to_string(job.k) +
                               " trial=" + std::to_string(job.trial) + " check=" + check);
            failures[j].push_back({job.n, job.k, job.trial, check, detail, text.str()});
        };
        auto relative_gap = [](double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); };

        const SolveResult result = solve_under_test(channels, job.k);
        const SolveResult oracle = brute_force(channels, job.k, config.brute_cap);
        if (relative_gap(result.boost, oracle.boost) > kOracleTol) {
            fail("oracle", "solver boost " + format_double(result.boost) + " vs brute force " +
                               format_double(oracle.boost));
        }

        const SolveResult reduced = solve_reduced(channels, job.k);
        if (relative_gap(reduced.boost, result.boost) > kReducedTol) {
            fail("reduced", "reduced boost " + format_double(reduced.boost) + " vs solver " +
                                format_double(result.boost));
        }

        const double width = normalize_angle(result.arc_end - result.arc_begin);
        const double offset = normalize_angle(result.mu_angle - result.arc_begin);
        if (!(offset > kInteriorMargin && width - offset > kInteriorMargin)) {
            fail("arc-interior", "phase of g " + format_double(result.mu_angle) + " not inside arc (" +
                                     format_double(result.arc_begin) + ", " + format_double(result.arc_end) + ")");
        }

        if (initial_assignment(channels, job.k, result.mu_angle) != result.config) {
            fail("fixed-point", "closest rotations towards the phase of g differ from the returned shifts");
        }

        const double step = kTwoPi / static_cast<double>(job.k);
        if (!(std::abs(wrap_to_pi(result.mu_angle - channels.direct_phase())) < step) ||
            !(std::abs(wrap_to_pi(reduced.mu_angle - channels.direct_phase())) < step)) {
            fail("near-direct", "optimal direction is not within 2pi/K of the direct channel");
        }

        bool monotone = true;
        block_coordinate_descent(channels, PhaseConfig::identity(job.k, job.n), 100,
                                 [&](const BcdUpdate& u) { monotone = monotone && u.after >= u.before; });
        if (!monotone) {
            fail("bcd-monotone", "a coordinate update decreased the boost");
        }
    });

    VerifyReport report;
    report.instances = jobs.size();
    report.oracle_checks = report.reduced_checks = report.interior_checks = report.fixed_point_checks =
        report.near_direct_checks = report.bcd_monotone_checks = jobs.size();
    for (auto& batch : failures) {
        for (auto& f : batch) {
            report.failures.push_back(std::move(f));
        }
    }
    return report;
}

void write_verify_report(std::ostream& out, const VerifyReport& report) {
    auto failed = [&](std::string_view check) {
        return std::count_if(report.failures.begin(), report.failures.end(),
                             [&](const VerifyFailure& f) { return f.check == check; });
    };
    auto line = [&](std::string_view name, std::size_t checks) {
        out << name << ": " << checks - static_cast<std::size_t>(failed(name)) << '/' << checks << " passed\n";
    };
    out << "instances: " << report.instances << '\n';
    line("oracle", report.oracle_checks);
    line("reduced", report.reduced_checks);
    line("arc-interior", report.interior_checks);
    line("fixed-point", report.fixed_point_checks);
    line("near-direct", report.near_direct_checks);
    line("bcd-monotone", report.bcd_monotone_checks);
    for (const VerifyFailure& f : report.failures) {
        out << "FAIL " << f.check << " n=" << f.n << " k=" << f.k << " trial=" << f.trial << ": " << f.detail
            << '\n'
            << f.instance;
    }
    out << (report.passed() ? "verify: PASS\n" : "verify: FAIL\n");
}

} // namespace irsbf
