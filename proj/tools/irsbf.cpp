// irsbf: optimal discrete phase configuration for reflecting surfaces.
//
//   irsbf solve INSTANCE.csv --k 4 [--method optimal] [--format csv|json]
//   irsbf simulate --n 100 --k 2 --trials 1000 --output trials.csv
//   irsbf bench --n 1000,10000,100000 --k 2 --repeats 5
//   irsbf verify --trials 100 --n 8 --k 2,3,4,8
//
// Exit codes: 0 success, 1 verification failure, 2 parse error, 3 invalid parameters.

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "irsbf/errors.hpp"
#include "irsbf/experiment.hpp"
#include "irsbf/instance_io.hpp"
#include "irsbf/objective.hpp"

namespace {

enum ExitCode : int { kOk = 0, kVerifyFailed = 1, kParseError = 2, kInvalidParameters = 3 };

struct CommonOptions {
    std::uint64_t seed = 1;
    std::string sort = "bin";
    std::string format = "csv";
    std::string bcd_init = "zero";
    std::uint64_t brute_cap = irsbf::kDefaultBruteForceCap;
    unsigned workers = 0;
};

irsbf::Point3 parse_point(const std::string& text) {
    irsbf::Point3 p{};
    std::istringstream in(text);
    std::string field;
    std::size_t i = 0;
    while (std::getline(in, field, ',')) {
        if (i == 3) {
            throw irsbf::ParameterError("geometry point '" + text + "' has more than 3 coordinates");
        }
        try {
            p[i++] = std::stod(field);
        } catch (const std::exception&) {
            throw irsbf::ParameterError("invalid coordinate '" + field + "' in geometry");
        }
    }
    if (i != 3) {
        throw irsbf::ParameterError("geometry point '" + text + "' needs 3 coordinates");
    }
    return p;
}

// "x,y,z;x,y,z;x,y,z" for transmitter, surface, receiver.
irsbf::Geometry parse_geometry(const std::string& text) {
    std::vector<std::string> parts;
    std::istringstream in(text);
    std::string part;
    while (std::getline(in, part, ';')) {
        parts.push_back(part);
    }
    if (parts.size() != 3) {
        throw irsbf::ParameterError("geometry needs three points 'tx;irs;rx', got '" + text + "'");
    }
    irsbf::Geometry g{parse_point(parts[0]), parse_point(parts[1]), parse_point(parts[2])};
    g.validate();
    return g;
}

irsbf::MethodOptions method_options(const CommonOptions& common) {
    irsbf::MethodOptions options;
    options.sort_kind = irsbf::parse_sort_kind(common.sort);
    options.bcd_init = irsbf::parse_bcd_init(common.bcd_init);
    options.brute_cap = common.brute_cap;
    return options;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw irsbf::ParameterError("cannot write '" + path + "'");
    }
    return out;
}

std::string derived_cdf_path(const std::string& trials_path) {
    std::filesystem::path p(trials_path);
    const std::string ext = p.has_extension() ? p.extension().string() : ".csv";
    p.replace_extension();
    return p.string() + ".cdf" + ext;
}

std::string join_shifts(const irsbf::PhaseConfig& config, char separator) {
    std::string text;
    for (std::size_t n = 0; n < config.size(); ++n) {
        if (n > 0) {
            text += separator;
        }
        text += std::to_string(config[n]);
    }
    return text;
}

int cmd_solve(const std::string& input, int levels, const std::string& method_name, const CommonOptions& common) {
    const irsbf::OutputFormat format = irsbf::parse_output_format(common.format);
    const irsbf::Method method = irsbf::parse_method(method_name);
    const irsbf::MethodOptions options = method_options(common);
    irsbf::check_levels(levels);
    const irsbf::ChannelSet channels = irsbf::read_instance_file(input);
    const irsbf::MethodRun run = irsbf::run_method(method, channels, levels, options);

    if (format == irsbf::OutputFormat::json) {
        nlohmann::json doc{{"method", std::string(irsbf::to_string(method))},
                           {"K", levels},
                           {"N", channels.size()},
                           {"shifts", std::vector<int>(run.config.shifts().begin(), run.config.shifts().end())},
                           {"boost", run.boost},
                           {"boost_db", irsbf::to_db(run.boost)}};
        if (method == irsbf::Method::bcd) {
            doc["passes"] = run.bcd_passes;
        }
        if (run.detail && method != irsbf::Method::brute) {
            const auto& d = *run.detail;
            doc["arc_index"] = d.arc_index;
            doc["arc_begin"] = d.arc_begin;
            doc["arc_end"] = d.arc_end;
            doc["mu_angle"] = d.mu_angle;
            doc["distinct_breakpoints"] = d.stats.distinct_breakpoints;
            doc["arcs_evaluated"] = d.stats.arcs_evaluated;
        }
        std::cout << doc.dump(2) << '\n';
        return kOk;
    }

    std::cout << "method," << irsbf::to_string(method) << '\n'
              << "K," << levels << '\n'
              << "N," << channels.size() << '\n'
              << "shifts," << join_shifts(run.config, ' ') << '\n'
              << "boost," << irsbf::format_double(run.boost) << '\n'
              << "boost_db," << irsbf::format_double(irsbf::to_db(run.boost)) << '\n';
    if (method == irsbf::Method::bcd) {
        std::cout << "passes," << run.bcd_passes << '\n';
    }
    if (run.detail && method != irsbf::Method::brute) {
        const auto& d = *run.detail;
        std::cout << "arc_index," << d.arc_index << '\n'
                  << "arc_begin," << irsbf::format_double(d.arc_begin) << '\n'
                  << "arc_end," << irsbf::format_double(d.arc_end) << '\n'
                  << "mu_angle," << irsbf::format_double(d.mu_angle) << '\n'
                  << "distinct_breakpoints," << d.stats.distinct_breakpoints << '\n'
                  << "arcs_evaluated," << d.stats.arcs_evaluated << '\n';
    }
    return kOk;
}

int cmd_simulate(irsbf::ExperimentConfig config, const std::string& methods, const std::string& geometry,
                 const std::string& output, const std::string& cdf_output, const CommonOptions& common) {
    config.seed = common.seed;
    config.workers = common.workers;
    config.methods = irsbf::parse_methods(methods);
    config.method_options = method_options(common);
    config.output_format = irsbf::parse_output_format(common.format);
    if (!geometry.empty()) {
        config.geometry = parse_geometry(geometry);
    }
    config.validate();

    const irsbf::SimulationResult result = irsbf::run_simulation(config);
    if (config.output_format == irsbf::OutputFormat::json) {
        if (output.empty()) {
            irsbf::write_simulation_json(std::cout, result);
        } else {
            auto out = open_output(output);
            irsbf::write_simulation_json(out, result);
        }
        return kOk;
    }
    const auto cdf = irsbf::empirical_cdf(result);
    if (output.empty()) {
        irsbf::write_cdf_csv(std::cout, cdf);
        return kOk;
    }
    {
        auto out = open_output(output);
        irsbf::write_trials_csv(out, result);
    }
    auto out = open_output(cdf_output.empty() ? derived_cdf_path(output) : cdf_output);
    irsbf::write_cdf_csv(out, cdf);
    return kOk;
}

int cmd_bench(irsbf::BenchConfig config, const std::string& methods, const std::vector<std::string>& sorts,
              const std::string& output, const CommonOptions& common) {
    config.seed = common.seed;
    config.methods = irsbf::parse_methods(methods);
    config.method_options = method_options(common);
    config.sort_kinds.clear();
    for (const auto& s : sorts) {
        config.sort_kinds.push_back(irsbf::parse_sort_kind(s));
    }
    const auto rows = irsbf::run_bench(config);
    if (output.empty()) {
        irsbf::write_bench_csv(std::cout, rows);
    } else {
        auto out = open_output(output);
        irsbf::write_bench_csv(out, rows);
    }
    return kOk;
}

int cmd_verify(irsbf::VerifyConfig config, const std::string& output, const CommonOptions& common) {
    config.seed = common.seed;
    config.brute_cap = common.brute_cap;
    config.workers = common.workers;
    config.validate();
    const irsbf::VerifyReport report = irsbf::run_verification(config);
    irsbf::write_verify_report(std::cout, report);
    if (!output.empty() && !report.passed()) {
        auto out = open_output(output);
        out << report.failures.front().instance;
    }
    return report.passed() ? kOk : kVerifyFailed;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Optimal discrete phase configuration for intelligent reflecting surfaces"};
    app.set_config("--config", "", "Read options from a TOML/INI file");
    app.require_subcommand(1);

    CommonOptions common;
    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--seed", common.seed, "Master random seed")->envname("IRSBF_SEED");
        cmd->add_option("--sort", common.sort, "Breakpoint sort: bin or comparison");
        cmd->add_option("--format", common.format, "Output format: csv or json");
        cmd->add_option("--bcd-init", common.bcd_init, "BCD starting point: zero or cpp");
        cmd->add_option("--brute-cap", common.brute_cap, "Refuse brute force above this many configurations");
        cmd->add_option("--workers", common.workers, "Worker threads (0 = all cores)");
    };

    std::string input;
    int solve_levels = 2;
    std::string solve_method = "optimal";
    auto* solve_cmd = app.add_subcommand("solve", "Solve one instance read from a CSV file");
    solve_cmd->add_option("input", input, "Instance file: 're,im' rows, h0 first")->required();
    solve_cmd->add_option("--k", solve_levels, "Number of discrete phase levels K");
    solve_cmd->add_option("--method", solve_method, "optimal, optimal-reduced, cpp, bcd or brute");
    add_common(solve_cmd);

    irsbf::ExperimentConfig sim;
    std::string sim_methods = "optimal,cpp,bcd";
    std::string geometry;
    std::string sim_output;
    std::string cdf_output;
    auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo SNR-boost experiment");
    sim_cmd->add_option("--n", sim.n_elements, "Reflective elements N");
    sim_cmd->add_option("--k", sim.k_levels, "Phase levels K");
    sim_cmd->add_option("--trials", sim.trials, "Independent channel draws");
    sim_cmd->add_option("--methods", sim_methods, "Comma separated methods");
    sim_cmd->add_option("--geometry", geometry, "Positions 'x,y,z;x,y,z;x,y,z' of tx, surface, rx (m)");
    sim_cmd->add_option("--tx-dbm", sim.link.tx_power_dbm, "Transmit power (dBm)");
    sim_cmd->add_option("--noise-dbm", sim.link.noise_power_dbm, "Noise power (dBm)");
    sim_cmd->add_option("--output", sim_output, "Per-trial records (CDF goes to stdout when omitted)");
    sim_cmd->add_option("--cdf-output", cdf_output, "CDF table path (default: <output>.cdf.csv)");
    sim_cmd->add_flag("--timing", sim.record_timing, "Add solver wall time to records (not reproducible)");
    add_common(sim_cmd);

    irsbf::BenchConfig bench;
    std::string bench_methods = "optimal";
    std::vector<std::string> bench_sorts{"bin"};
    std::string bench_output;
    auto* bench_cmd = app.add_subcommand("bench", "Solver wall time versus N");
    bench_cmd->add_option("--n", bench.sizes, "Comma separated sizes")->delimiter(',');
    bench_cmd->add_option("--k", bench.k_levels, "Phase levels K");
    bench_cmd->add_option("--repeats", bench.repeats, "Timed runs per size and method");
    bench_cmd->add_option("--methods", bench_methods, "Comma separated methods");
    bench_cmd->add_option("--sorts", bench_sorts, "Sort kinds timed for optimal (bin,comparison)")->delimiter(',');
    bench_cmd->add_option("--output", bench_output, "CSV path (stdout when omitted)");
    add_common(bench_cmd);

    irsbf::VerifyConfig verify;
    std::string verify_output;
    auto* verify_cmd = app.add_subcommand("verify", "Check the solver against brute force on random instances");
    verify_cmd->add_option("--trials", verify.trials, "Instances per (N, K)");
    verify_cmd->add_option("--n", verify.n_max, "Largest N (all N from 1 are tested)");
    verify_cmd->add_option("--k", verify.k_set, "Comma separated K values")->delimiter(',');
    verify_cmd->add_option("--output", verify_output, "Write the first failing instance here");
    add_common(verify_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kParseError;
    }

    try {
        if (solve_cmd->parsed()) {
            return cmd_solve(input, solve_levels, solve_method, common);
        }
        if (sim_cmd->parsed()) {
            return cmd_simulate(sim, sim_methods, geometry, sim_output, cdf_output, common);
        }
        if (bench_cmd->parsed()) {
            return cmd_bench(bench, bench_methods, bench_sorts, bench_output, common);
        }
        if (verify_cmd->parsed()) {
            return cmd_verify(verify, verify_output, common);
        }
    } catch (const irsbf::ParseError& e) {
        std::cerr << "irsbf: parse error: " << e.what() << '\n';
        return kParseError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "irsbf: " << e.what() << '\n';
        return kInvalidParameters;
    } catch (const std::exception& e) {
        std::cerr << "irsbf: " << e.what() << '\n';
        return kInvalidParameters;
    }
    return kOk;
}
