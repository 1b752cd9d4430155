#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "irsbf/baselines.hpp"
#include "irsbf/breakpoints.hpp"
#include "irsbf/channel_model.hpp"
#include "irsbf/solver.hpp"

namespace irsbf {

enum class Method { optimal, optimal_reduced, cpp, bcd, brute };
enum class BcdInit { zero, cpp };
enum class OutputFormat { csv, json };

std::string_view to_string(Method method) noexcept;
/// Accepts optimal, optimal-reduced, cpp, bcd, brute.
Method parse_method(std::string_view text);
/// Comma separated list of method names.
std::vector<Method> parse_methods(std::string_view text);
BcdInit parse_bcd_init(std::string_view text);
OutputFormat parse_output_format(std::string_view text);

struct MethodOptions {
    SortKind sort_kind = SortKind::bin;
    BcdInit bcd_init = BcdInit::zero;
    int bcd_max_passes = 100;
    std::uint64_t brute_cap = kDefaultBruteForceCap;
};

/// Configuration and score of one method on one instance.
struct MethodRun {
    PhaseConfig config;
    double boost = 0.0;
    std::int64_t elapsed_ns = 0;
    int bcd_passes = 0;
    std::optional<SolveResult> detail; // optimal, optimal-reduced and brute only
};

/// Runs `method`, timing only the solver call.
MethodRun run_method(Method method, const ChannelSet& channels, int levels,
                     const MethodOptions& options = {});

struct ExperimentConfig {
    std::size_t n_elements = 100;
    int k_levels = 2;
    std::size_t trials = 1000;
    std::uint64_t seed = 1;
    std::vector<Method> methods{Method::optimal, Method::cpp, Method::bcd};
    Geometry geometry;
    LinkBudget link;
    MethodOptions method_options;
    OutputFormat output_format = OutputFormat::csv;
    bool record_timing = false;
    unsigned workers = 0; // 0 = hardware concurrency

    /// Throws ParameterError on trials == 0, N == 0, K < 2, an empty method
    /// list, invalid geometry, or brute requested with K^N over the cap.
    void validate() const;
};

struct MethodOutcome {
    double boost = 0.0;    // linear power ratio
    double boost_db = 0.0; // 10 log10(boost)
    double snr_db = 0.0;   // absolute SNR with the surface, from the link budget
    std::int64_t solve_time_ns = 0;
    int bcd_passes = 0;
};

struct TrialRecord {
    std::size_t trial_id = 0;
    std::vector<MethodOutcome> outcomes; // parallel to ExperimentConfig::methods
};

struct SimulationResult {
    ExperimentConfig config;
    std::vector<TrialRecord> trials; // sorted by trial_id
};

/// Trial t draws its channels from RngStream(seed, t), so the records do not
/// depend on the worker count or scheduling.
SimulationResult run_simulation(const ExperimentConfig& config);

struct CdfPoint {
    Method method;
    double boost_db;
    double probability;
};

/// Empirical CDF of boost_db per method, ascending, probability i/trials.
std::vector<CdfPoint> empirical_cdf(const SimulationResult& result);

void write_trials_csv(std::ostream& out, const SimulationResult& result);
void write_cdf_csv(std::ostream& out, const std::vector<CdfPoint>& cdf);
/// One document holding the configuration, per-trial records and the CDF.
void write_simulation_json(std::ostream& out, const SimulationResult& result);

struct BenchConfig {
    std::vector<std::size_t> sizes{1000, 10000, 100000, 1000000};
    int k_levels = 2;
    int repeats = 5;
    std::uint64_t seed = 1;
    std::vector<Method> methods{Method::optimal};
    std::vector<SortKind> sort_kinds{SortKind::bin}; // applied to optimal
    Geometry geometry;
    MethodOptions method_options;
};

struct BenchRow {
    std::size_t n = 0;
    std::string method; // "optimal[bin]", "cpp", ...
    int repeat = 0;
    std::int64_t time_ns = 0;
    std::int64_t median_ns = 0;
    std::int64_t min_ns = 0;
};

/// Times each method on one generated instance per size; one row per repeat,
/// each carrying the median and minimum of its (size, method) series.
std::vector<BenchRow> run_bench(const BenchConfig& config);
void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows);

using Solver = std::function<SolveResult(const ChannelSet&, int)>;

struct VerifyConfig {
    std::size_t trials = 100; // per (N, K) pair
    std::size_t n_max = 8;
    std::vector<int> k_set{2, 3, 4, 8};
    std::uint64_t seed = 1;
    std::uint64_t brute_cap = kDefaultBruteForceCap;
    Geometry geometry;
    unsigned workers = 0;

    /// Throws ParameterError on empty ranges or K^n_max above the cap for some K.
    void validate() const;
};

struct VerifyFailure {
    std::size_t n = 0;
    int k = 0;
    std::size_t trial = 0;
    std::string check;
    std::string detail;
    std::string instance; // CSV instance text, replayable through `irsbf solve`
};

struct VerifyReport {
    std::size_t instances = 0;
    std::size_t oracle_checks = 0;
    std::size_t reduced_checks = 0;
    std::size_t interior_checks = 0;
    std::size_t fixed_point_checks = 0;
    std::size_t near_direct_checks = 0;
    std::size_t bcd_monotone_checks = 0;
    std::vector<VerifyFailure> failures; // in (N, K, trial) order

    bool passed() const noexcept { return failures.empty(); }
};

/// Unit-magnitude reflected channels with uniform phases and a weaker direct
/// channel; some elements are exact copies of earlier ones so breakpoints collide.
ChannelSet sample_unit_instance(RngStream& rng, std::size_t elements);

/// The instance verification uses for (n, k, trial): even trials come from the
/// pathloss model, odd trials from sample_unit_instance.
ChannelSet verification_instance(const VerifyConfig& config, std::size_t n, int k, std::size_t trial);

/// Checks `solver` against brute force and the structural properties of the
/// optimum on trials random instances for every N <= n_max and K in k_set.
VerifyReport run_verification(const VerifyConfig& config, const Solver& solver = {});

void write_verify_report(std::ostream& out, const VerifyReport& report);

} // namespace irsbf
