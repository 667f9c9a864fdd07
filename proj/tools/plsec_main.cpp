#include <cstdlib>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "plsec/sweep.hpp"

namespace {

constexpr int kExitConfigError = 2;
constexpr int kExitInsufficientResolution = 3;

unsigned resolve_threads(std::optional<unsigned> flag) {
    if (flag) {
        return *flag;
    }
    if (const char* env = std::getenv("PLSEC_THREADS")) {
        char* end = nullptr;
        const unsigned long value = std::strtoul(env, &end, 10);
        if (end != env && *end == '\0') {
            return static_cast<unsigned>(value);
        }
        std::cerr << "warning: ignoring malformed PLSEC_THREADS=\"" << env << "\"\n";
    }
    return 0; // auto: one worker per hardware thread
}

int run_command(const std::string& config_path, const std::string& out_path,
                std::optional<std::uint64_t> seed, std::optional<std::uint64_t> trials,
                std::optional<unsigned> threads_flag) {
    plsec::ScenarioConfig config;
    try {
        config = plsec::load_scenario_config(config_path);
        if (seed) {
            config.master_seed = *seed;
        }
        if (trials) {
            config.n_trials = *trials;
        }
        config.validate();
    } catch (const plsec::config_error& err) {
        std::cerr << "error: " << err.what() << '\n';
        return kExitConfigError;
    } catch (const plsec::io_error& err) {
        std::cerr << "error: " << err.what() << '\n';
        return kExitConfigError;
    }

    const unsigned threads = resolve_threads(threads_flag);
    const plsec::SweepResult result = plsec::run_sweep(config, threads);
    plsec::emit_csv(result, out_path);
    std::cout << "wrote " << result.rows.size() << " rows to " << out_path << " ("
              << config.n_trials << " trials per point)\n";
    return 0;
}

int slope_command(const std::string& in_path, std::size_t window) {
    const plsec::SweepResult result = plsec::parse_csv_file(in_path);

    std::map<std::pair<std::string, std::size_t>, std::vector<std::pair<double, double>>> curves;
    for (const plsec::SweepRow& row : result.rows) {
        if (row.metric == plsec::Metric::intercept_probability) {
            curves[{plsec::to_string(row.scheme), row.m}].emplace_back(row.mer_db,
                                                                       row.estimate.mean);
        }
    }
    if (curves.empty()) {
        std::cerr << "error: no intercept_probability rows in " << in_path << '\n';
        return kExitConfigError;
    }

    std::cout << "scheme,m,slope,window\n";
    for (auto& [key, points] : curves) {
        const double slope = plsec::estimate_diversity_slope(std::move(points), window);
        std::cout << key.first << ',' << key.second << ',' << slope << ',' << window << '\n';
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Physical-layer security link simulator: secrecy capacity and intercept "
                 "probability under Rayleigh fading"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> trials;
    std::optional<unsigned> threads;

    CLI::App* run = app.add_subcommand("run", "Run the configured MER sweep and emit CSV");
    run->add_option("--config", config_path, "Scenario JSON file")->required();
    run->add_option("--out", out_path, "Output CSV path")->required();
    run->add_option("--seed", seed, "Override master_seed");
    run->add_option("--trials", trials, "Override n_trials");
    run->add_option("--threads", threads,
                    "Worker threads (default: PLSEC_THREADS env var, else all cores)");

    std::string in_path;
    std::size_t window = 3;
    CLI::App* slope = app.add_subcommand(
        "slope", "Estimate log-log diversity slopes from an emitted sweep CSV");
    slope->add_option("--in", in_path, "Sweep CSV produced by `run`")->required();
    slope->add_option("--window", window, "Number of highest-MER points in the fit");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            return run_command(config_path, out_path, seed, trials, threads);
        }
        return slope_command(in_path, window);
    } catch (const plsec::insufficient_resolution_error& err) {
        std::cerr << "error: " << err.what() << '\n';
        return kExitInsufficientResolution;
    } catch (const plsec::config_error& err) {
        std::cerr << "error: " << err.what() << '\n';
        return kExitConfigError;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << '\n';
        return 1;
    }
}
