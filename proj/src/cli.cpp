#include "ehsched/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "ehsched/adversary.hpp"
#include "ehsched/errors.hpp"
#include "ehsched/offline.hpp"
#include "ehsched/online.hpp"
#include "ehsched/oracle.hpp"
#include "ehsched/random_traces.hpp"
#include "ehsched/scenario.hpp"

namespace ehsched::cli {

namespace {

namespace fs = std::filesystem;

struct RunOptions {
    std::string scenario;
    std::string preset;
    std::string algorithm;
    std::optional<double> alpha;
    std::optional<double> horizon;
    std::string out;
};

struct CompareOptions {
    std::vector<std::string> paths;
    std::vector<std::string> presets;
    std::size_t random = 0;
    std::uint64_t seed = 1;
    std::string channel = "siso";
    std::size_t jobs = 0;
};

struct LowerBoundOptions {
    std::string channel = "siso";
    std::string preset;
    std::string sigma1;
    std::string sigma2;
    std::optional<double> horizon;
    double grid_step = 1e-3;
    bool no_refine = false;
    std::string out;
};

struct OracleOptions {
    std::string scenario;
    std::string preset;
    std::string algorithm = "offline";
    double tolerance = 1e-3;
    std::size_t power_grid = 32;
    std::size_t time_grid = 512;
};

EnergyTrace load_input(const std::string& path, const std::string& preset) {
    if (!path.empty() && !preset.empty()) {
        throw std::invalid_argument("give either a scenario file or --preset, not both");
    }
    if (!preset.empty()) {
        return scenario_preset(preset);
    }
    if (path.empty()) {
        throw std::invalid_argument("a scenario file or --preset is required");
    }
    return load_scenario(path);
}

double default_horizon(const EnergyTrace& trace) {
    return trace.size() >= 2 ? trace[1].time - trace[0].time : 1.0;
}

RunReport run_algorithm(const EnergyTrace& trace, const std::string& algorithm,
                        std::optional<double> alpha, std::optional<double> horizon) {
    if (algorithm == "offline") {
        return offline_schedule(trace);
    }
    if (algorithm == "lazy") {
        return run_lazy(trace);
    }
    if (algorithm == "glo") {
        return run_glo(trace);
    }
    if (algorithm == "alpha") {
        if (!alpha) {
            throw PreconditionError("--alpha is required for the alpha policy");
        }
        return run_alpha_policy(trace, *alpha, horizon.value_or(default_horizon(trace)));
    }
    throw std::invalid_argument("unknown algorithm '" + algorithm + "'");
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path);
    if (!f) {
        throw std::runtime_error("cannot write '" + path + "'");
    }
    f << content;
}

void print_segments(std::ostream& out, const RunReport& report, ChannelModel channel) {
    out << std::setw(14) << "start" << std::setw(14) << "duration" << std::setw(14) << "power"
        << std::setw(14) << "bits" << std::setw(14) << "energy" << '\n';
    out << std::fixed << std::setprecision(6);
    for (const Segment& seg : report.schedule.segments()) {
        out << std::setw(14) << seg.start << std::setw(14) << seg.duration << std::setw(14)
            << seg.power << std::setw(14) << bits_delivered(report.schedule, channel, seg.end())
            << std::setw(14) << energy_used(report.schedule, seg.end()) << '\n';
    }
    out.unsetf(std::ios::floatfield);
}

int cmd_run(const RunOptions& opt, std::ostream& out) {
    if (opt.algorithm == "alpha" && !opt.alpha) {
        throw PreconditionError("--alpha is required for the alpha policy");
    }
    if (opt.algorithm != "alpha" && opt.alpha) {
        throw PreconditionError("--alpha only applies to the alpha policy");
    }
    const EnergyTrace trace = load_input(opt.scenario, opt.preset);
    const RunReport report = run_algorithm(trace, opt.algorithm, opt.alpha, opt.horizon);

    out << "scenario " << (trace.label().empty() ? "-" : trace.label()) << '\n';
    out << "algorithm " << report.algorithm << '\n';
    if (!opt.out.empty()) {
        write_file(opt.out, format_report(report, trace.channel()));
    }
    if (!report.feasible) {
        out << "feasible false\n";
        return kInfeasible;
    }
    const NeutralityCheck neutral = verify_energy_neutrality(report.schedule, trace);
    out << "completion_time " << fixed9(report.completion_time) << '\n';
    print_segments(out, report, trace.channel());
    out << "energy_neutral " << (neutral.ok ? "true" : "false") << '\n';
    out << "feasible true\n";
    return kOk;
}

struct CompareRow {
    std::string label;
    std::optional<std::string> error;
    int error_code = kOk;
    double offline = 0.0;
    double glo = 0.0;
    std::optional<double> lazy;
};

CompareRow compare_one(const EnergyTrace& trace) {
    CompareRow row;
    row.label = trace.label().empty() ? "-" : trace.label();
    const RunReport offline = offline_schedule(trace);
    if (!offline.feasible) {
        row.error = "infeasible";
        row.error_code = kInfeasible;
        return row;
    }
    row.offline = offline.completion_time;
    row.glo = run_glo(trace).completion_time;
    if (lazy_applicable(trace)) {
        row.lazy = run_lazy(trace).completion_time;
    }
    return row;
}

std::vector<CompareRow> compare_all(const std::vector<EnergyTrace>& traces, std::size_t jobs) {
    std::vector<CompareRow> rows(traces.size());
    if (jobs == 0) {
        jobs = std::max(1u, std::thread::hardware_concurrency());
    }
    jobs = std::min(jobs, std::max<std::size_t>(traces.size(), 1));
    std::vector<std::thread> workers;
    for (std::size_t w = 0; w < jobs; ++w) {
        workers.emplace_back([&, w] {
            for (std::size_t i = w; i < traces.size(); i += jobs) {
                rows[i] = compare_one(traces[i]);
            }
        });
    }
    for (auto& t : workers) {
        t.join();
    }
    return rows;
}

std::vector<std::string> expand_paths(const std::vector<std::string>& paths) {
    std::vector<std::string> files;
    for (const auto& p : paths) {
        if (fs::is_directory(p)) {
            std::vector<std::string> entries;
            for (const auto& entry : fs::directory_iterator(p)) {
                if (entry.is_regular_file()) {
                    entries.push_back(entry.path().string());
                }
            }
            std::sort(entries.begin(), entries.end());
            files.insert(files.end(), entries.begin(), entries.end());
        } else {
            files.push_back(p);
        }
    }
    return files;
}

int cmd_compare(const CompareOptions& opt, std::ostream& out, std::ostream& err) {
    std::vector<EnergyTrace> traces;
    std::vector<CompareRow> load_errors;  // kept in input order alongside traces
    std::vector<std::optional<std::size_t>> order;

    const auto channel = parse_channel_kind(opt.channel);
    if (!channel) {
        throw ConfigError("--channel must be siso or gmac");
    }
    for (const auto& file : expand_paths(opt.paths)) {
        try {
            traces.push_back(load_scenario(file));
            order.push_back(traces.size() - 1);
        } catch (const ParseError& e) {
            CompareRow row;
            row.label = file;
            row.error = e.what();
            row.error_code = kParseError;
            load_errors.push_back(std::move(row));
            order.push_back(std::nullopt);
        }
    }
    for (const auto& name : opt.presets) {
        traces.push_back(scenario_preset(name));
        order.push_back(traces.size() - 1);
    }
    if (opt.random > 0) {
        RandomTraceParams params;
        params.channel = ChannelModel{*channel};
        for (auto& t : random_corpus(opt.seed, opt.random, params)) {
            traces.push_back(std::move(t));
            order.push_back(traces.size() - 1);
        }
    }
    if (order.empty()) {
        throw std::invalid_argument("compare needs scenario paths, --preset or --random");
    }

    const std::vector<CompareRow> rows = compare_all(traces, opt.jobs);

    out << std::left << std::setw(28) << "scenario" << std::right << std::setw(16) << "offline"
        << std::setw(16) << "glo" << std::setw(12) << "glo/opt" << std::setw(16) << "lazy"
        << std::setw(12) << "lazy/opt" << '\n';
    double max_ratio = 0.0;
    int first_error = kOk;
    std::size_t load_index = 0;
    std::size_t evaluated = 0;
    for (const auto& slot : order) {
        const CompareRow& row = slot ? rows[*slot] : load_errors[load_index++];
        if (row.error) {
            err << row.label << ": " << *row.error << '\n';
            out << std::left << std::setw(28) << row.label << std::right << "  error\n";
            if (first_error == kOk) {
                first_error = row.error_code;
            }
            continue;
        }
        ++evaluated;
        const double glo_ratio = row.glo / row.offline;
        max_ratio = std::max(max_ratio, glo_ratio);
        out << std::left << std::setw(28) << row.label << std::right << std::setw(16)
            << fixed9(row.offline) << std::setw(16) << fixed9(row.glo) << std::setw(12)
            << std::fixed << std::setprecision(6) << glo_ratio;
        out.unsetf(std::ios::floatfield);
        if (row.lazy) {
            const double lazy_ratio = *row.lazy / row.offline;
            max_ratio = std::max(max_ratio, lazy_ratio);
            out << std::setw(16) << fixed9(*row.lazy) << std::setw(12) << std::fixed
                << std::setprecision(6) << lazy_ratio;
            out.unsetf(std::ios::floatfield);
        } else {
            out << std::setw(16) << "-" << std::setw(12) << "-";
        }
        out << '\n';
    }
    out << "traces " << evaluated << '\n';
    out << "max_ratio " << fixed9(max_ratio) << '\n';
    if (evaluated > 0 && !(max_ratio < 2.0)) {
        out << "verdict DEFECT (ratio >= 2)\n";
        return kDefect;
    }
    out << "verdict ok\n";
    return first_error;
}

LowerBoundConfig lower_bound_config(const LowerBoundOptions& opt) {
    const auto kind = parse_channel_kind(opt.channel);
    if (!kind) {
        throw ConfigError("--channel must be siso or gmac");
    }
    const ChannelModel channel{*kind};

    const bool files = !opt.sigma1.empty() || !opt.sigma2.empty();
    if (files && !opt.preset.empty()) {
        throw ConfigError("give either --preset or --sigma1/--sigma2");
    }
    LowerBoundConfig config = [&] {
        if (files) {
            if (opt.sigma1.empty() || opt.sigma2.empty()) {
                throw ConfigError("both --sigma1 and --sigma2 are required");
            }
            EnergyTrace s1 = load_scenario(opt.sigma1);
            EnergyTrace s2 = load_scenario(opt.sigma2);
            const double horizon = opt.horizon.value_or(default_horizon(s1));
            return LowerBoundConfig{s1, s2, horizon};
        }
        const std::string preset = opt.preset.empty() ? "proof" : opt.preset;
        if (preset == "proof") {
            return lower_bound_preset(*kind == ChannelKind::gmac ? "lb-gmac-proof"
                                                                 : "lb-siso-proof");
        }
        if (preset == "figure") {
            LowerBoundConfig c = lower_bound_preset("lb-figure");
            return LowerBoundConfig{c.sigma1.with_channel(channel), c.sigma2.with_channel(channel),
                                    c.horizon};
        }
        return lower_bound_preset(preset);
    }();
    if (opt.horizon) {
        config.horizon = *opt.horizon;
    }
    config.grid_step = opt.grid_step;
    config.refine = !opt.no_refine;
    return config;
}

int cmd_lowerbound(const LowerBoundOptions& opt, std::ostream& out) {
    const LowerBoundConfig config = lower_bound_config(opt);
    const LowerBound lb = lower_bound_search(config);
    out << "channel " << to_string(config.channel().kind) << '\n';
    out << "offline_sigma1 " << fixed9(lb.offline_sigma1) << '\n';
    out << "offline_sigma2 " << fixed9(lb.offline_sigma2) << '\n';
    out << "alpha_star " << fixed9(lb.alpha_star) << '\n';
    out << "ratio " << fixed9(lb.ratio) << '\n';
    if (!opt.out.empty()) {
        std::ostringstream curve;
        curve << "alpha,max_ratio\n";
        for (const CurvePoint& p : lb.curve) {
            curve << fixed9(p.alpha) << ',' << fixed9(p.ratio) << '\n';
        }
        write_file(opt.out, curve.str());
        out << "curve " << opt.out << '\n';
    }
    return kOk;
}

int cmd_oracle(const OracleOptions& opt, std::ostream& out) {
    const EnergyTrace trace = load_input(opt.scenario, opt.preset);
    if (trace.size() > kOracleMaxArrivals) {
        throw PreconditionError("oracle-check supports at most four arrivals");
    }
    if (opt.power_grid < kOracleMinGrid || opt.time_grid < kOracleMinGrid) {
        throw PreconditionError("oracle grids must be at least 16");
    }
    const RunReport report = run_algorithm(trace, opt.algorithm, std::nullopt, std::nullopt);
    const auto oracle = oracle_min_time(trace, opt.power_grid, opt.time_grid);
    if (!oracle) {
        out << "oracle infeasible\n";
        return kInfeasible;
    }
    const bool ok =
        oracle_certify(trace, report, opt.tolerance, opt.power_grid, opt.time_grid);
    out << "oracle_min_time " << fixed9(oracle->time) << '\n';
    out << "oracle_time_step " << fixed9(oracle->time_step) << '\n';
    out << "claimed " << fixed9(report.completion_time) << '\n';
    out << "certified " << (ok ? "true" : "false") << '\n';
    return ok ? kOk : kDefect;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Energy-harvesting transmission schedulers and competitive-ratio tools",
                 "ehsched"};
    app.require_subcommand(1);

    RunOptions run_opt;
    auto* run_cmd = app.add_subcommand("run", "Run one algorithm on a scenario");
    run_cmd->add_option("scenario", run_opt.scenario, "Scenario file");
    run_cmd->add_option("--preset", run_opt.preset, "Embedded scenario (example1, example2, ...)");
    run_cmd->add_option("-a,--algorithm", run_opt.algorithm, "offline | lazy | glo | alpha")
        ->required()
        ->check(CLI::IsMember({"offline", "lazy", "glo", "alpha"}));
    run_cmd->add_option("--alpha", run_opt.alpha, "Fraction of the first harvest spent before the horizon");
    run_cmd->add_option("--horizon", run_opt.horizon, "Alpha-policy horizon (default: first gap)");
    run_cmd->add_option("--out", run_opt.out, "Write the machine-readable report here");

    CompareOptions cmp_opt;
    auto* cmp_cmd = app.add_subcommand("compare", "Competitive ratios of GLO and Lazy");
    cmp_cmd->add_option("paths", cmp_opt.paths, "Scenario files or directories");
    cmp_cmd->add_option("--preset", cmp_opt.presets, "Embedded scenarios");
    cmp_cmd->add_option("--random", cmp_opt.random, "Append this many random feasible traces");
    cmp_cmd->add_option("--seed", cmp_opt.seed, "Seed for --random");
    cmp_cmd->add_option("--channel", cmp_opt.channel, "Channel of random traces");
    cmp_cmd->add_option("--jobs", cmp_opt.jobs, "Worker threads (default: all cores)");

    LowerBoundOptions lb_opt;
    auto* lb_cmd = app.add_subcommand("lowerbound", "Min-max lower bound over alpha-policies");
    lb_cmd->add_option("--channel", lb_opt.channel, "siso | gmac");
    lb_cmd->add_option("--preset", lb_opt.preset, "proof | figure | lb-siso-proof | lb-gmac-proof | lb-figure");
    lb_cmd->add_option("--sigma1", lb_opt.sigma1, "Scenario file for the first sequence");
    lb_cmd->add_option("--sigma2", lb_opt.sigma2, "Scenario file for the second sequence");
    lb_cmd->add_option("--horizon", lb_opt.horizon, "Decision horizon (default: sigma1's first gap)");
    lb_cmd->add_option("--grid-step", lb_opt.grid_step, "Alpha grid spacing");
    lb_cmd->add_flag("--no-refine", lb_opt.no_refine, "Skip golden-section refinement");
    lb_cmd->add_option("--out", lb_opt.out, "Write the alpha,max_ratio curve here");

    OracleOptions or_opt;
    auto* or_cmd = app.add_subcommand("oracle-check", "Certify a schedule against brute force");
    or_cmd->add_option("scenario", or_opt.scenario, "Scenario file (at most four arrivals)");
    or_cmd->add_option("--preset", or_opt.preset, "Embedded scenario");
    or_cmd->add_option("-a,--algorithm", or_opt.algorithm, "offline | lazy | glo")
        ->check(CLI::IsMember({"offline", "lazy", "glo"}));
    or_cmd->add_option("--tolerance", or_opt.tolerance, "Allowed excess over the oracle, seconds");
    or_cmd->add_option("--power-grid", or_opt.power_grid, "Energy-fraction grid steps");
    or_cmd->add_option("--time-grid", or_opt.time_grid, "End-time grid steps");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        if (run_cmd->parsed()) {
            return cmd_run(run_opt, out);
        }
        if (cmp_cmd->parsed()) {
            return cmd_compare(cmp_opt, out, err);
        }
        if (lb_cmd->parsed()) {
            return cmd_lowerbound(lb_opt, out);
        }
        if (or_cmd->parsed()) {
            return cmd_oracle(or_opt, out);
        }
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return kParseError;
    } catch (const PreconditionError& e) {
        err << "precondition violated: " << e.what() << '\n';
        return kPrecondition;
    } catch (const ConfigError& e) {
        err << "configuration error: " << e.what() << '\n';
        return kInfeasible;
    } catch (const std::invalid_argument& e) {
        err << "invalid input: " << e.what() << '\n';
        return kPrecondition;
    }
    return kOk;
}

}  // namespace ehsched::cli
