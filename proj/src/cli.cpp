#include "hpasim/cli.hpp"

#include "hpasim/config_io.hpp"
#include "hpasim/engine.hpp"
#include "hpasim/errors.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <future>
#include <thread>

namespace hpasim {

namespace {

const char* const kSeverityHelp = "none, low, medium, high or a percentage in [0, 100)";

std::string lower(std::string_view text) {
    std::string s(text);
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

/// Loads a scenario; an unreadable file counts as a configuration error.
ScenarioConfig load_scenario(const std::string& path) {
    try {
        return load_config(path);
    } catch (const IoError& e) {
        throw ConfigError("config", e.what());
    }
}

void apply_severity(ScenarioConfig& config, const std::optional<Percent>& severity) {
    if (!severity) {
        config.disruption.reset();
        return;
    }
    DisruptionPlan plan = config.disruption.value_or(DisruptionPlan{});
    plan.target_wastage_percent = *severity;
    config.disruption = plan;
}

std::string cell(double v) {
    return fmt::format("{:.3f}", v);
}

std::string improvement(double baseline, double secure, bool higher_is_better) {
    if (baseline == 0.0) {
        return "";
    }
    const double pct = higher_is_better ? 100.0 * (secure - baseline) / baseline : 100.0 * (baseline - secure) / baseline;
    return cell(pct);
}

struct RunOptions {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::string mode;
    std::string severity;
    std::string out = "out";
};

struct CompareOptions {
    std::string config;
    std::vector<std::string> severities;
    std::int64_t repeats = 10;
    std::string out = "compare_out";
    unsigned jobs = 0;
};

int do_run(const RunOptions& o, std::ostream& out) {
    ScenarioConfig config = load_scenario(o.config);
    if (o.seed) {
        config.seed = *o.seed;
    }
    if (!o.mode.empty()) {
        const auto mode = parse_mode(lower(o.mode));
        if (!mode) {
            throw ConfigError("mode", "must be secure or baseline");
        }
        config.mode = *mode;
    }
    if (!o.severity.empty()) {
        apply_severity(config, parse_severity(o.severity));
    }
    config = validate_config(std::move(config));

    const RunResult r = run(config, std::filesystem::path(o.out));
    out << summary_to_json(r.summary).dump() << '\n';
    return kExitOk;
}

int do_compare(const CompareOptions& o, std::ostream& out) {
    const ScenarioConfig base = load_scenario(o.config);
    if (o.repeats < 1) {
        throw ConfigError("repeats", "must be >= 1");
    }

    struct Cell {
        Mode mode;
        std::string label;
        ScenarioConfig config;
    };
    std::vector<Cell> cells;
    for (const auto& raw : o.severities) {
        const std::string label = lower(raw);
        const auto severity = parse_severity(label);
        for (Mode mode : {Mode::Secure, Mode::Baseline}) {
            ScenarioConfig c = base;
            c.mode = mode;
            apply_severity(c, severity);
            cells.push_back({mode, label, validate_config(std::move(c))});
        }
    }

    const std::filesystem::path root(o.out);
    struct Job {
        std::size_t cell;
        ScenarioConfig config;
        std::filesystem::path dir;
    };
    std::vector<Job> jobs;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        for (std::int64_t k = 0; k < o.repeats; ++k) {
            ScenarioConfig c = cells[i].config;
            c.seed = base.seed + static_cast<std::uint64_t>(k);
            const auto dir = root / fmt::format("{}_{}_seed{}", to_string(c.mode), cells[i].label, c.seed);
            jobs.push_back({i, std::move(c), dir});
        }
    }

    // Each run owns its directory, so runs can proceed in parallel.
    const unsigned workers = o.jobs > 0 ? o.jobs : std::max(1u, std::thread::hardware_concurrency());
    std::vector<MetricMeans> means(jobs.size());
    for (std::size_t start = 0; start < jobs.size(); start += workers) {
        std::vector<std::future<MetricMeans>> batch;
        const std::size_t end = std::min(jobs.size(), start + workers);
        for (std::size_t j = start; j < end; ++j) {
            batch.push_back(std::async(std::launch::async, [&job = jobs[j]] {
                return run(job.config, job.dir).summary.means.value_or(MetricMeans{});
            }));
        }
        for (std::size_t j = start; j < end; ++j) {
            means[j] = batch[j - start].get();
        }
    }

    std::vector<MetricMeans> cell_means(cells.size());
    for (std::size_t j = 0; j < jobs.size(); ++j) {
        auto& m = cell_means[jobs[j].cell];
        m.supply_cpu += means[j].supply_cpu;
        m.overutil_pct += means[j].overutil_pct;
        m.overutil_mcpu += means[j].overutil_mcpu;
        m.underprov_mcpu += means[j].underprov_mcpu;
        m.overprov_mcpu += means[j].overprov_mcpu;
    }
    const auto k = static_cast<double>(o.repeats);
    for (auto& m : cell_means) {
        m.supply_cpu /= k;
        m.overutil_pct /= k;
        m.overutil_mcpu /= k;
        m.underprov_mcpu /= k;
        m.overprov_mcpu /= k;
    }

    std::string table = "mode,severity,seed_count,supply_cpu,overutil_pct,overutil_mcpu,underprov_mcpu,overprov_mcpu\n";
    for (std::size_t i = 0; i < cells.size(); ++i) {
        const auto& m = cell_means[i];
        table += fmt::format("{},{},{},{},{},{},{},{}\n", to_string(cells[i].mode), cells[i].label, o.repeats,
                             cell(m.supply_cpu), cell(m.overutil_pct), cell(m.overutil_mcpu),
                             cell(m.underprov_mcpu), cell(m.overprov_mcpu));
    }
    std::string gains = "severity,supply_cpu,overutil_pct,overutil_mcpu,underprov_mcpu,overprov_mcpu\n";
    for (std::size_t i = 0; i + 1 < cells.size(); i += 2) {
        const auto& s = cell_means[i];
        const auto& b = cell_means[i + 1];
        gains += fmt::format("{},{},{},{},{},{}\n", cells[i].label, improvement(b.supply_cpu, s.supply_cpu, true),
                             improvement(b.overutil_pct, s.overutil_pct, false),
                             improvement(b.overutil_mcpu, s.overutil_mcpu, false),
                             improvement(b.underprov_mcpu, s.underprov_mcpu, false),
                             improvement(b.overprov_mcpu, s.overprov_mcpu, false));
    }

    std::error_code ec;
    std::filesystem::create_directories(root, ec);
    for (const auto& [name, text] : {std::pair{"comparison.csv", &table}, std::pair{"improvements.csv", &gains}}) {
        const auto path = root / name;
        std::ofstream f(path, std::ios::binary | std::ios::trunc);
        f << *text;
        if (!f.flush()) {
            throw IoError(path.string(), "write failed");
        }
    }
    out << table;
    return kExitOk;
}

}  // namespace

std::optional<Percent> parse_severity(std::string_view text) {
    const std::string s = lower(text);
    if (s == "none") {
        return std::nullopt;
    }
    if (s == "low") {
        return Percent{25};
    }
    if (s == "medium") {
        return Percent{50};
    }
    if (s == "high") {
        return Percent{75};
    }
    double value = 0.0;
    std::size_t used = 0;
    try {
        value = std::stod(s, &used);
    } catch (const std::exception&) {
        throw ConfigError("severity", fmt::format("'{}' is not {}", text, kSeverityHelp));
    }
    if (used != s.size()) {
        throw ConfigError("severity", fmt::format("'{}' is not {}", text, kSeverityHelp));
    }
    if (!(value >= 0.0 && value < 100.0)) {
        throw ConfigError("severity", fmt::format("{} is out of range; must be in [0, 100)", text));
    }
    const auto exact = exact_percent(value);
    if (!exact) {
        throw ConfigError("severity", fmt::format("{} has more than four decimal places", text));
    }
    return *exact;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Hierarchical autoscaler simulator with capacity-aware redistribution", "hpasim"};
    app.require_subcommand(1);

    RunOptions run_opts;
    auto* run_cmd = app.add_subcommand("run", "Run one scenario");
    run_cmd->add_option("--config", run_opts.config, "Scenario JSON file")->required();
    run_cmd->add_option("--seed", run_opts.seed, "Override the scenario seed");
    run_cmd->add_option("--mode", run_opts.mode, "secure or baseline");
    run_cmd->add_option("--severity", run_opts.severity, kSeverityHelp);
    run_cmd->add_option("--out", run_opts.out, "Output directory")->capture_default_str();

    CompareOptions cmp_opts;
    auto* cmp_cmd = app.add_subcommand("compare", "Secure vs baseline over severities and seeds");
    cmp_cmd->add_option("--config", cmp_opts.config, "Scenario JSON file")->required();
    cmp_cmd->add_option("--severities", cmp_opts.severities, "Comma-separated severities")
        ->delimiter(',')
        ->required();
    cmp_cmd->add_option("--repeats", cmp_opts.repeats, "Seeds per cell (base seed + k)")->capture_default_str();
    cmp_cmd->add_option("--out", cmp_opts.out, "Output directory")->capture_default_str();
    cmp_cmd->add_option("--jobs", cmp_opts.jobs, "Concurrent runs (0 = hardware threads)");

    std::string init_out;
    auto* scenario_cmd = app.add_subcommand("scenario", "Scenario file helpers");
    scenario_cmd->require_subcommand(1);
    auto* init_cmd = scenario_cmd->add_subcommand("init", "Write the bundled benchmark scenario");
    init_cmd->add_option("--out", init_out, "Destination path")->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return kExitConfig;
    }

    try {
        if (run_cmd->parsed()) {
            return do_run(run_opts, out);
        }
        if (cmp_cmd->parsed()) {
            return do_compare(cmp_opts, out);
        }
        if (init_cmd->parsed()) {
            save_config(benchmark_scenario(), init_out);
            out << "wrote " << init_out << '\n';
            return kExitOk;
        }
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
    err << app.help();
    return kExitConfig;
}

}  // namespace hpasim
