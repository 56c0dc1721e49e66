#include "bai/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <unordered_set>
#include <utility>

#include "bai/report.hpp"

namespace bai {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double to_real(std::string_view text, const std::string& what) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw std::invalid_argument("cannot parse " + what + " '" +
                                    std::string(text) + "'");
    }
    return v;
}

std::int64_t to_int(std::string_view text, const std::string& what) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw std::invalid_argument("cannot parse " + what + " '" +
                                    std::string(text) + "'");
    }
    return v;
}

std::uint64_t to_uint(std::string_view text, const std::string& what) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw std::invalid_argument("cannot parse " + what + " '" +
                                    std::string(text) + "'");
    }
    return v;
}

std::vector<std::pair<std::string, std::string>> parse_kv_list(
    std::string_view text, const std::string& context) {
    std::vector<std::pair<std::string, std::string>> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t comma = text.find(',', start);
        if (comma == std::string_view::npos) comma = text.size();
        const std::string_view item = text.substr(start, comma - start);
        const std::size_t eq = item.find('=');
        if (eq == std::string_view::npos || eq == 0) {
            throw std::invalid_argument("expected key=value in " + context +
                                        ": '" + std::string(item) + "'");
        }
        out.emplace_back(std::string(item.substr(0, eq)),
                         std::string(item.substr(eq + 1)));
        start = comma + 1;
    }
    return out;
}

void validate_config(const ExperimentConfig& config) {
    if (config.budget < 1) {
        throw std::invalid_argument("budget must be >= 1");
    }
    if (config.repeats < 1) {
        throw std::invalid_argument("repeats must be >= 1");
    }
    if (config.checkpoint_every < 1) {
        throw std::invalid_argument("checkpoint-every must be >= 1");
    }
    if (config.policies.empty()) {
        throw std::invalid_argument("no policies configured");
    }
    std::unordered_set<std::string> labels;
    for (const PolicySpec& spec : config.policies) {
        if (!labels.insert(spec.label).second) {
            throw std::invalid_argument("duplicate policy label '" + spec.label +
                                        "'");
        }
    }
}

// Fixed-budget policies fall back to the experiment's budget when the
// spec carried none of its own.
PolicyConfig effective_policy_config(const PolicySpec& spec,
                                     const ExperimentConfig& config) {
    PolicyConfig pc = spec.config;
    if ((pc.kind == PolicyKind::SuccessiveRejects ||
         pc.kind == PolicyKind::SequentialHalving) &&
        !pc.total_budget) {
        pc.total_budget = config.budget;
    }
    return pc;
}

std::string describe_source(const ExperimentConfig& config,
                            const RewardSource& source) {
    std::string base;
    if (!config.source.dataset_path.empty()) {
        base = "dataset " + config.source.dataset_path;
    } else if (config.source.use_synthetic) {
        base = config.source.synthetic.family == SyntheticFamily::Skewed
                   ? "synthetic skewed"
                   : "synthetic bernoulli";
        base += " seed " + std::to_string(config.source.synthetic.seed);
    } else {
        base = "external source";
    }
    const EnvironmentShape& shape = source.shape();
    int k_min = shape.arms_per_bandit[0];
    int k_max = shape.arms_per_bandit[0];
    for (int k : shape.arms_per_bandit) {
        k_min = std::min(k_min, k);
        k_max = std::max(k_max, k);
    }
    base += " (" + std::to_string(shape.num_bandits) + " bandits, arms " +
            std::to_string(k_min) + ".." + std::to_string(k_max) + ", " +
            std::to_string(shape.total_pairs()) + " pairs)";
    return base;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::string percent(std::int64_t part, std::int64_t whole) {
    char buf[32];
    const double pct =
        whole > 0 ? 100.0 * static_cast<double>(part) / static_cast<double>(whole)
                  : 0.0;
    std::snprintf(buf, sizeof buf, "%.2f", pct);
    return buf;
}

} // namespace

PolicySpec parse_policy_spec(std::string_view text) {
    PolicySpec spec;
    spec.label = std::string(text);
    const std::size_t colon = text.find(':');
    const std::string_view name =
        colon == std::string_view::npos ? text : text.substr(0, colon);
    spec.config.kind = parse_policy_kind(name);
    if (colon != std::string_view::npos) {
        const auto params =
            parse_kv_list(text.substr(colon + 1), "policy spec '" + spec.label + "'");
        for (const auto& [key, value] : params) {
            if (key == "a") {
                spec.config.exploration_a = to_real(value, "exploration a");
            } else if (key == "c") {
                spec.config.exploration_c = to_real(value, "exploration c");
            } else if (key == "budget") {
                spec.config.total_budget = to_int(value, "policy budget");
            } else {
                throw std::invalid_argument("unknown policy parameter '" + key +
                                            "' in '" + spec.label + "'");
            }
        }
    }
    return spec;
}

std::string display_policy_label(const PolicySpec& spec) {
    const auto with_a = [&](const char* name) {
        return spec.config.exploration_a
                   ? std::string(name) + " (a=" +
                         format_number(*spec.config.exploration_a) + ")"
                   : std::string(name);
    };
    switch (spec.config.kind) {
        case PolicyKind::Random: return "Random";
        case PolicyKind::Uniform: return "Uniform";
        case PolicyKind::GapE: return with_a("GapE");
        case PolicyKind::GapEV: return with_a("GapE-V");
        case PolicyKind::UCBE:
            return spec.config.exploration_a
                       ? "UCB-E (a=" + format_number(*spec.config.exploration_a) +
                             " log n)"
                       : "UCB-E";
        case PolicyKind::SuccessiveRejects: return "Successive Rejects";
        case PolicyKind::SequentialHalving: return "Sequential Halving";
        case PolicyKind::AnytimeSH: return "Anytime SH";
        case PolicyKind::OptimisticWS:
            return spec.config.exploration_c
                       ? "Optimistic-WS (c=" +
                             format_number(*spec.config.exploration_c) + ")"
                       : "Optimistic-WS";
    }
    return spec.label;
}

SyntheticSpec parse_synthetic_spec(std::string_view text) {
    SyntheticSpec spec;
    const std::size_t colon = text.find(':');
    const std::string_view family =
        colon == std::string_view::npos ? text : text.substr(0, colon);
    if (family == "bernoulli") {
        spec.family = SyntheticFamily::Bernoulli;
    } else if (family == "skewed") {
        spec.family = SyntheticFamily::Skewed;
    } else {
        throw std::invalid_argument("unknown synthetic family: " +
                                    std::string(family));
    }
    int bandits = 0;
    int arms = 0;
    if (colon != std::string_view::npos) {
        const auto params = parse_kv_list(text.substr(colon + 1), "synthetic spec");
        for (const auto& [key, value] : params) {
            if (key == "bandits") {
                bandits = static_cast<int>(to_int(value, "bandits"));
            } else if (key == "arms") {
                arms = static_cast<int>(to_int(value, "arms"));
            } else if (key == "seed") {
                spec.seed = to_uint(value, "seed");
            } else if (key == "means") {
                std::size_t start = 0;
                const std::string list(value);
                while (start <= list.size()) {
                    std::size_t bar = list.find('|', start);
                    if (bar == std::string::npos) bar = list.size();
                    spec.means.push_back(
                        to_real(std::string_view(list).substr(start, bar - start),
                                "mean"));
                    start = bar + 1;
                }
            } else {
                throw std::invalid_argument("unknown synthetic parameter '" +
                                            key + "'");
            }
        }
    }
    if (bandits < 1 || arms < 1) {
        throw std::invalid_argument(
            "synthetic spec needs bandits >= 1 and arms >= 1");
    }
    spec.num_bandits = bandits;
    spec.arms_per_bandit.assign(static_cast<std::size_t>(bandits), arms);
    return spec;
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config: " + path);
    ExperimentConfig config;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string stripped = trim(line);
        if (stripped.empty()) continue;
        const std::size_t eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                     ": expected 'key = value'");
        }
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        try {
            if (key == "dataset") {
                config.source.dataset_path = value;
            } else if (key == "dataset-format") {
                config.source.dataset_format = parse_dataset_format(value);
            } else if (key == "synthetic") {
                config.source.synthetic = parse_synthetic_spec(value);
                config.source.use_synthetic = true;
            } else if (key == "budget") {
                config.budget = to_int(value, "budget");
            } else if (key == "repeats") {
                config.repeats = static_cast<int>(to_int(value, "repeats"));
            } else if (key == "checkpoint-every") {
                config.checkpoint_every = to_int(value, "checkpoint-every");
            } else if (key == "seed") {
                config.master_seed = to_uint(value, "seed");
            } else if (key == "out") {
                config.out_dir = value;
            } else if (key == "policy") {
                config.policies.push_back(parse_policy_spec(value));
            } else {
                throw std::invalid_argument("unknown config key '" + key + "'");
            }
        } catch (const std::exception& e) {
            throw std::runtime_error(path + ":" + std::to_string(line_no) + ": " +
                                     e.what());
        }
    }
    return config;
}

std::unique_ptr<RewardSource> build_source(const SourceSpec& spec) {
    if (!spec.dataset_path.empty() && spec.use_synthetic) {
        throw std::invalid_argument(
            "configure either a dataset or a synthetic source, not both");
    }
    if (!spec.dataset_path.empty()) {
        return make_dataset_source(
            load_dataset(spec.dataset_path, spec.dataset_format));
    }
    if (spec.use_synthetic) {
        return make_synthetic(spec.synthetic);
    }
    throw std::invalid_argument("no reward source configured");
}

ExperimentResult run_experiment(const ExperimentConfig& config,
                                const RewardSource& source) {
    validate_config(config);
    // Surface bad policy parameters before any run starts.
    for (const PolicySpec& spec : config.policies) {
        make_policy(effective_policy_config(spec, config));
    }
    const EnvironmentShape& shape = source.shape();
    const GroundTruth& truth = source.truth();

    ExperimentResult result;
    result.source_description = describe_source(config, source);
    for (const PolicySpec& spec : config.policies) {
        const PolicyConfig pc = effective_policy_config(spec, config);
        PolicyResult pr;
        pr.spec = spec;
        for (int repeat = 0; repeat < config.repeats; ++repeat) {
            const std::uint64_t run_seed = derive_seed(
                config.master_seed, spec.label,
                static_cast<std::uint64_t>(repeat));
            RunState state(shape, run_seed);
            // The consistent first result for every pair; shared across
            // policies and repeats, round stays 0.
            for (int m = 0; m < shape.num_bandits; ++m) {
                const int k_count =
                    shape.arms_per_bandit[static_cast<std::size_t>(m)];
                for (int k = 0; k < k_count; ++k) {
                    record_reward(
                        state, m, k,
                        source.initial_pull_value(m, k, config.master_seed));
                }
            }
            auto policy = make_policy(pc);
            Rng predict_rng(derive_seed(run_seed, "predict", 0));
            RegretCurve curve;
            curve.run_id = repeat;
            curve.policy_label = spec.label;

            bool exhausted = false;
            std::int64_t pulls_since_checkpoint = 0;
            Prediction cached;
            bool have_cached = false;
            for (std::int64_t t = 1; t <= config.budget; ++t) {
                if (!exhausted) {
                    const std::optional<PairIndex> pair =
                        policy->select_next(state);
                    if (!pair) {
                        exhausted = true;
                    } else {
                        const double x =
                            source.sample(pair->bandit, pair->arm, state.rng);
                        policy->observe(state, *pair, x);
                        state.round += 1;
                        pr.pulls_issued += 1;
                        pulls_since_checkpoint += 1;
                    }
                }
                if (t % config.checkpoint_every == 0) {
                    if (pulls_since_checkpoint > 0 || !have_cached) {
                        cached = predict(state, predict_rng);
                        have_cached = true;
                        pulls_since_checkpoint = 0;
                    }
                    curve.checkpoints.push_back({t, simple_regret(cached, truth),
                                                 error_rate(cached, truth)});
                }
            }
            pr.pulls_possible += config.budget;
            pr.curves.push_back(std::move(curve));
        }
        pr.mean_curve = aggregate(pr.curves);
        result.policies.push_back(std::move(pr));
    }
    return result;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
    const std::unique_ptr<RewardSource> source = build_source(config.source);
    return run_experiment(config, *source);
}

void emit_outputs(const ExperimentResult& result, const ExperimentConfig& config) {
    if (result.policies.empty()) {
        throw std::invalid_argument("emit_outputs: empty result set");
    }
    if (config.out_dir.empty()) {
        throw std::invalid_argument("emit_outputs: no output directory configured");
    }
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(config.out_dir, ec);
    if (ec) {
        throw std::runtime_error("cannot create output directory " +
                                 config.out_dir + ": " + ec.message());
    }
    const fs::path dir(config.out_dir);

    std::vector<std::string> curve_files;
    std::unordered_set<std::string> used;
    for (const PolicyResult& pr : result.policies) {
        const std::string base = slugify(pr.spec.label);
        std::string name = base;
        int suffix = 2;
        while (!used.insert(name).second) {
            name = base + "_" + std::to_string(suffix++);
        }
        curve_files.push_back(name + ".csv");
    }

    for (std::size_t i = 0; i < result.policies.size(); ++i) {
        write_file(dir / curve_files[i],
                   curve_csv(result.policies[i].mean_curve));
    }

    std::vector<AggregateCurve> all_curves;
    std::vector<ChartSeries> series;
    for (const PolicyResult& pr : result.policies) {
        all_curves.push_back(pr.mean_curve);
        series.push_back({display_policy_label(pr.spec), pr.mean_curve});
    }
    write_file(dir / "aggregate.csv", aggregate_csv(all_curves));
    write_file(dir / "regret.svg",
               render_regret_svg(series, config.budget,
                                 result.source_description));

    std::string manifest = "experiment manifest\n";
    manifest += "source: " + result.source_description + "\n";
    manifest += "budget: " + std::to_string(config.budget) + "\n";
    manifest += "repeats: " + std::to_string(config.repeats) + "\n";
    manifest += "checkpoint_every: " + std::to_string(config.checkpoint_every) + "\n";
    manifest +=
        "checkpoints_per_curve: " +
        std::to_string(config.budget / config.checkpoint_every) + "\n";
    manifest += "master_seed: " + std::to_string(config.master_seed) + "\n";
    manifest += "\n";
    for (std::size_t i = 0; i < result.policies.size(); ++i) {
        const PolicyResult& pr = result.policies[i];
        manifest += "policy: " + pr.spec.label + "\n";
        manifest += "  display: " + display_policy_label(pr.spec) + "\n";
        manifest += "  curve_file: " + curve_files[i] + "\n";
        manifest += "  pulls_issued: " + std::to_string(pr.pulls_issued) + "\n";
        manifest += "  pulls_possible: " + std::to_string(pr.pulls_possible) + "\n";
        manifest += "  pulls_unused: " +
                    std::to_string(pr.pulls_possible - pr.pulls_issued) + "\n";
        manifest += "  utilization_pct: " +
                    percent(pr.pulls_issued, pr.pulls_possible) + "\n";
    }
    manifest += "\nfiles: aggregate.csv, regret.svg, manifest.txt";
    for (const std::string& f : curve_files) manifest += ", " + f;
    manifest += "\n";
    write_file(dir / "manifest.txt", manifest);
}

} // namespace bai
