#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "plsec/estimator.hpp"

namespace plsec {

enum class Metric {
    ergodic_secrecy_capacity,
    intercept_probability,
};

inline const char* to_string(Metric metric) {
    return metric == Metric::ergodic_secrecy_capacity ? "ergodic_secrecy_capacity"
                                                      : "intercept_probability";
}

inline Metric metric_from_string(const std::string& name) {
    if (name == "ergodic_secrecy_capacity") {
        return Metric::ergodic_secrecy_capacity;
    }
    if (name == "intercept_probability") {
        return Metric::intercept_probability;
    }
    throw invalid_parameter("unknown metric: " + name);
}

/// Full experiment description. Defaults reproduce the paper's case-study
/// setup: gamma_s = 12 dB, sigma2_sd = 0.5, sigma2_sr = sigma2_rd = 2,
/// M in {2, 4, 8}, MER swept 0..30 dB.
struct ScenarioConfig {
    double gamma_s_db = 12.0;
    double sigma2_sd = 0.5;
    double sigma2_sr = 2.0;
    double sigma2_rd = 2.0;
    std::vector<double> mer_grid_db = {0, 3, 6, 9, 12, 15, 18, 21, 24, 27, 30};
    std::vector<std::size_t> relay_counts = {2, 4, 8};
    std::vector<SchemeId> schemes = {SchemeId::direct, SchemeId::relay_selection};
    std::uint64_t n_trials = 100000;
    std::uint64_t master_seed = 1;
    bool prelog_half = true;
    EveMode eve_mode = EveMode::phase2_only;
    /// Relay->eavesdropper mean gain; empty means "equal to sigma2_se".
    std::optional<double> sigma2_re;

    void validate() const;
};

/// One sweep point: estimate of one metric for (scheme, m, mer_db).
struct SweepRow {
    SchemeId scheme = SchemeId::direct;
    std::size_t m = 0;
    double mer_db = 0.0;
    Metric metric = Metric::ergodic_secrecy_capacity;
    Estimate estimate;

    friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

struct SweepResult {
    std::vector<SweepRow> rows;

    friend bool operator==(const SweepResult&, const SweepResult&) = default;
};

inline void ScenarioConfig::validate() const {
    if (!(gamma_s_db == gamma_s_db)) {
        throw config_error("config: gamma_s_db must be a finite number");
    }
    for (auto [name, value] : {std::pair{"sigma2_sd", sigma2_sd},
                               std::pair{"sigma2_sr", sigma2_sr},
                               std::pair{"sigma2_rd", sigma2_rd}}) {
        if (!(value > 0.0)) {
            throw config_error(std::string("config: ") + name + " must be > 0");
        }
    }
    if (sigma2_re && !(*sigma2_re > 0.0)) {
        throw config_error("config: explicit sigma2_re must be > 0");
    }
    if (mer_grid_db.empty()) {
        throw config_error("config: mer_grid_db must be non-empty");
    }
    for (std::size_t i = 1; i < mer_grid_db.size(); ++i) {
        if (!(mer_grid_db[i] > mer_grid_db[i - 1])) {
            throw config_error("config: mer_grid_db must be strictly increasing");
        }
    }
    if (schemes.empty()) {
        throw config_error("config: schemes must be non-empty");
    }
    for (std::size_t i = 0; i < schemes.size(); ++i) {
        for (std::size_t j = i + 1; j < schemes.size(); ++j) {
            if (schemes[i] == schemes[j]) {
                throw config_error(std::string("config: duplicate scheme ") +
                                   to_string(schemes[i]));
            }
        }
    }
    const bool needs_nodes = std::any_of(schemes.begin(), schemes.end(),
                                         [](SchemeId s) { return s != SchemeId::direct; });
    if (needs_nodes) {
        if (relay_counts.empty()) {
            throw config_error("config: relay_counts must be non-empty for selection schemes");
        }
        for (std::size_t m : relay_counts) {
            if (m < 1) {
                throw config_error("config: relay_counts entries must be >= 1");
            }
        }
        for (std::size_t i = 0; i < relay_counts.size(); ++i) {
            for (std::size_t j = i + 1; j < relay_counts.size(); ++j) {
                if (relay_counts[i] == relay_counts[j]) {
                    throw config_error("config: duplicate relay_counts entry");
                }
            }
        }
    }
    if (n_trials < 1000) {
        throw config_error("config: n_trials must be >= 1000 for statistical outputs");
    }
}

/// Parses a scenario JSON document. Unknown keys are rejected so typos
/// surface instead of silently falling back to defaults.
inline ScenarioConfig parse_scenario_config(const nlohmann::json& doc) {
    if (!doc.is_object()) {
        throw config_error("config: top-level JSON value must be an object");
    }
    static const char* known[] = {"gamma_s_db", "sigma2_sd",  "sigma2_sr",   "sigma2_rd",
                                  "mer_grid_db", "relay_counts", "schemes",  "n_trials",
                                  "master_seed", "prelog_half", "eve_mode", "sigma2_re_rule"};
    for (const auto& [key, value] : doc.items()) {
        if (std::none_of(std::begin(known), std::end(known),
                         [&](const char* k) { return key == k; })) {
            throw config_error("config: unknown key \"" + key + "\"");
        }
    }

    ScenarioConfig config;
    try {
        if (doc.contains("gamma_s_db")) config.gamma_s_db = doc["gamma_s_db"].get<double>();
        if (doc.contains("sigma2_sd")) config.sigma2_sd = doc["sigma2_sd"].get<double>();
        if (doc.contains("sigma2_sr")) config.sigma2_sr = doc["sigma2_sr"].get<double>();
        if (doc.contains("sigma2_rd")) config.sigma2_rd = doc["sigma2_rd"].get<double>();
        if (doc.contains("mer_grid_db")) {
            config.mer_grid_db = doc["mer_grid_db"].get<std::vector<double>>();
        }
        if (doc.contains("relay_counts")) {
            config.relay_counts = doc["relay_counts"].get<std::vector<std::size_t>>();
        }
        if (doc.contains("schemes")) {
            config.schemes.clear();
            for (const auto& name : doc["schemes"]) {
                config.schemes.push_back(scheme_from_string(name.get<std::string>()));
            }
        }
        if (doc.contains("n_trials")) config.n_trials = doc["n_trials"].get<std::uint64_t>();
        if (doc.contains("master_seed")) config.master_seed = doc["master_seed"].get<std::uint64_t>();
        if (doc.contains("prelog_half")) config.prelog_half = doc["prelog_half"].get<bool>();
        if (doc.contains("eve_mode")) {
            const std::string mode = doc["eve_mode"].get<std::string>();
            if (mode == "phase2_only") {
                config.eve_mode = EveMode::phase2_only;
            } else if (mode == "combine_phases") {
                config.eve_mode = EveMode::combine_phases;
            } else {
                throw config_error("config: eve_mode must be \"phase2_only\" or \"combine_phases\"");
            }
        }
        if (doc.contains("sigma2_re_rule")) {
            const auto& rule = doc["sigma2_re_rule"];
            if (rule.is_string()) {
                if (rule.get<std::string>() != "equal_to_se") {
                    throw config_error(
                        "config: sigma2_re_rule must be \"equal_to_se\" or a positive number");
                }
                config.sigma2_re.reset();
            } else if (rule.is_number()) {
                config.sigma2_re = rule.get<double>();
            } else {
                throw config_error(
                    "config: sigma2_re_rule must be \"equal_to_se\" or a positive number");
            }
        }
    } catch (const nlohmann::json::exception& err) {
        throw config_error(std::string("config: ") + err.what());
    } catch (const invalid_parameter& err) {
        throw config_error(std::string("config: ") + err.what());
    }

    config.validate();
    return config;
}

/// Loads a config file; JSON syntax errors are reported with the parser's
/// line/column diagnostics and the offending path.
inline ScenarioConfig load_scenario_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw io_error("cannot open config file: " + path.string());
    }
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& err) {
        throw config_error("config " + path.string() + ": " + err.what());
    }
    return parse_scenario_config(doc);
}

namespace detail {

/// Hashes a sweep-point identity into that point's master seed, so each
/// (scheme, m, mer, metric) cell owns an independent, order-free family of
/// trial substreams.
inline std::uint64_t derive_point_seed(std::uint64_t master_seed, SchemeId scheme,
                                       std::size_t m, double mer_db, Metric metric) {
    const Philox4x64::block_type counter{static_cast<std::uint64_t>(scheme),
                                         static_cast<std::uint64_t>(m),
                                         std::bit_cast<std::uint64_t>(mer_db),
                                         static_cast<std::uint64_t>(metric)};
    return Philox4x64::block(counter, {master_seed, 0x706c7365632d7377ull})[0];
}

inline bool row_order(const SweepRow& a, const SweepRow& b) {
    const int metric_cmp = std::string_view(to_string(a.metric)).compare(to_string(b.metric));
    if (metric_cmp != 0) return metric_cmp < 0;
    const int scheme_cmp = std::string_view(to_string(a.scheme)).compare(to_string(b.scheme));
    if (scheme_cmp != 0) return scheme_cmp < 0;
    if (a.m != b.m) return a.m < b.m;
    return a.mer_db < b.mer_db;
}

inline std::string format_double(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

} // namespace detail

/// Evaluates both metrics at every scheme x m x MER point of the scenario.
/// Deterministic in master_seed for any thread count; rows come back in
/// canonical (metric, scheme, m, mer_db) order.
inline SweepResult run_sweep(const ScenarioConfig& config, unsigned threads = 0) {
    config.validate();

    const Snr gamma_s{db_to_linear(config.gamma_s_db)};
    SweepResult result;

    for (SchemeId scheme : config.schemes) {
        const std::vector<std::size_t> node_counts =
            scheme == SchemeId::direct ? std::vector<std::size_t>{0} : config.relay_counts;
        for (std::size_t m : node_counts) {
            for (double mer_db : config.mer_grid_db) {
                FadingParams params;
                params.sigma2_sd = config.sigma2_sd;
                params.sigma2_sr = config.sigma2_sr;
                params.sigma2_rd = config.sigma2_rd;
                params.sigma2_se = mer_to_sigma_se2(config.sigma2_sd, mer_db);
                params.sigma2_re = config.sigma2_re.value_or(params.sigma2_se);

                SchemeSpec spec;
                spec.id = scheme;
                spec.m = m;
                spec.prelog_half = config.prelog_half;
                spec.eve_mode = config.eve_mode;

                for (Metric metric : {Metric::ergodic_secrecy_capacity,
                                      Metric::intercept_probability}) {
                    const std::uint64_t seed = detail::derive_point_seed(
                        config.master_seed, scheme, m, mer_db, metric);
                    const Estimate estimate =
                        metric == Metric::ergodic_secrecy_capacity
                            ? ergodic_secrecy_capacity(spec, params, gamma_s, config.n_trials,
                                                       seed, threads)
                            : intercept_probability(spec, params, gamma_s, config.n_trials,
                                                    seed, threads);
                    result.rows.push_back(SweepRow{scheme, m, mer_db, metric, estimate});
                }
            }
        }
    }

    std::sort(result.rows.begin(), result.rows.end(), detail::row_order);
    return result;
}

/// Least-squares slope of log10(intercept probability) against
/// log10(linear MER) over the highest-MER `window` points. A diversity
/// order d shows up as slope ~ -d.
inline double estimate_diversity_slope(std::vector<std::pair<double, double>> points,
                                       std::size_t window = 3) {
    if (window < 2) {
        throw invalid_parameter("estimate_diversity_slope: window must be >= 2");
    }
    if (points.size() < 2) {
        throw insufficient_resolution_error(
            "estimate_diversity_slope: need at least 2 points; raise n_trials or widen the grid");
    }
    std::sort(points.begin(), points.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 1; i < points.size(); ++i) {
        if (points[i].first == points[i - 1].first) {
            throw invalid_parameter("estimate_diversity_slope: duplicate MER point");
        }
    }
    const std::size_t count = std::min(window, points.size());
    const std::size_t first = points.size() - count;

    double mean_x = 0.0, mean_y = 0.0;
    for (std::size_t i = first; i < points.size(); ++i) {
        const auto [mer_db, probability] = points[i];
        if (!(probability > 0.0)) {
            std::ostringstream msg;
            msg << "estimate_diversity_slope: intercept probability is 0 at MER " << mer_db
                << " dB; raise n_trials";
            throw insufficient_resolution_error(msg.str());
        }
        mean_x += mer_db / 10.0; // log10 of the linear MER
        mean_y += std::log10(probability);
    }
    mean_x /= static_cast<double>(count);
    mean_y /= static_cast<double>(count);

    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = first; i < points.size(); ++i) {
        const double dx = points[i].first / 10.0 - mean_x;
        const double dy = std::log10(points[i].second) - mean_y;
        sxy += dx * dy;
        sxx += dx * dx;
    }
    return sxy / sxx;
}

inline constexpr const char* kCsvHeader =
    "scheme,m,mer_db,metric,mean,std_err,ci95_low,ci95_high,n_trials";

/// Renders the canonical CSV document: header plus one row per estimate,
/// full-precision decimals, rows sorted by (metric, scheme, m, mer_db).
inline std::string to_csv(const SweepResult& result) {
    std::vector<SweepRow> rows = result.rows;
    std::sort(rows.begin(), rows.end(), detail::row_order);

    std::string out = kCsvHeader;
    out += '\n';
    for (const SweepRow& row : rows) {
        out += to_string(row.scheme);
        out += ',';
        out += std::to_string(row.m);
        out += ',';
        out += detail::format_double(row.mer_db);
        out += ',';
        out += to_string(row.metric);
        out += ',';
        out += detail::format_double(row.estimate.mean);
        out += ',';
        out += detail::format_double(row.estimate.std_err);
        out += ',';
        out += detail::format_double(row.estimate.ci95_low);
        out += ',';
        out += detail::format_double(row.estimate.ci95_high);
        out += ',';
        out += std::to_string(row.estimate.n_trials);
        out += '\n';
    }
    return out;
}

/// Writes the CSV atomically (temp file + rename) so a failed run never
/// leaves a partial table behind.
inline void emit_csv(const SweepResult& result, const std::filesystem::path& path) {
    const std::string body = to_csv(result);
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw io_error("cannot open output file: " + tmp.string());
        }
        out << body;
        out.flush();
        if (!out) {
            throw io_error("write failed: " + tmp.string());
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        throw io_error("cannot move " + tmp.string() + " to " + path.string() + ": " +
                       ec.message());
    }
}

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string::size_type start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        if (comma == std::string::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return fields;
}

inline double parse_double_field(const std::string& field, const char* what) {
    char* end = nullptr;
    const double value = std::strtod(field.c_str(), &end);
    if (end == field.c_str() || *end != '\0') {
        throw io_error(std::string("CSV: bad ") + what + " value \"" + field + "\"");
    }
    return value;
}

inline std::uint64_t parse_u64_field(const std::string& field, const char* what) {
    char* end = nullptr;
    const std::uint64_t value = std::strtoull(field.c_str(), &end, 10);
    if (end == field.c_str() || *end != '\0') {
        throw io_error(std::string("CSV: bad ") + what + " value \"" + field + "\"");
    }
    return value;
}

} // namespace detail

/// Reads a CSV emitted by to_csv/emit_csv back into a SweepResult,
/// bit-exact for every floating-point field.
inline SweepResult parse_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader) {
        throw io_error("CSV: missing or unexpected header line");
    }
    SweepResult result;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        const auto fields = detail::split_csv_line(line);
        if (fields.size() != 9) {
            throw io_error("CSV: expected 9 fields, got " + std::to_string(fields.size()));
        }
        SweepRow row;
        row.scheme = scheme_from_string(fields[0]);
        row.m = static_cast<std::size_t>(detail::parse_u64_field(fields[1], "m"));
        row.mer_db = detail::parse_double_field(fields[2], "mer_db");
        row.metric = metric_from_string(fields[3]);
        row.estimate.mean = detail::parse_double_field(fields[4], "mean");
        row.estimate.std_err = detail::parse_double_field(fields[5], "std_err");
        row.estimate.ci95_low = detail::parse_double_field(fields[6], "ci95_low");
        row.estimate.ci95_high = detail::parse_double_field(fields[7], "ci95_high");
        row.estimate.n_trials = detail::parse_u64_field(fields[8], "n_trials");
        result.rows.push_back(row);
    }
    return result;
}

inline SweepResult parse_csv_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw io_error("cannot open CSV file: " + path.string());
    }
    return parse_csv(in);
}

} // namespace plsec
