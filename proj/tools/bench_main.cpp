#include <cinttypes>
#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "bai/experiment.hpp"
#include "bai/report.hpp"

int main(int argc, char** argv) {
    CLI::App app{"multi-bandit best-arm identification benchmark"};

    std::string config_path;
    std::string dataset;
    std::string dataset_format;
    std::string synthetic;
    std::string out_dir;
    std::int64_t budget = 0;
    int repeats = 0;
    std::int64_t checkpoint_every = 0;
    std::uint64_t seed = 0;
    std::vector<std::string> policy_texts;

    app.add_option("--config", config_path, "experiment config file");
    app.add_option("--dataset", dataset, "trial dataset CSV path");
    app.add_option("--dataset-format", dataset_format,
                   "trials-csv or histogram-csv");
    app.add_option("--synthetic", synthetic,
                   "synthetic source, e.g. skewed:bandits=50,arms=10,seed=7");
    app.add_option("--budget", budget, "total pull budget (default 50000)");
    app.add_option("--repeats", repeats, "independent repeats (default 10)");
    app.add_option("--checkpoint-every", checkpoint_every,
                   "pulls between metric checkpoints (default 1000)");
    app.add_option("--seed", seed, "master seed");
    app.add_option("--out", out_dir, "output directory for CSV/SVG/manifest");
    app.add_option("--policy", policy_texts,
                   "policy spec name:param=value, repeatable; replaces any "
                   "config-file policies");

    CLI11_PARSE(app, argc, argv);

    try {
        bai::ExperimentConfig config;
        if (!config_path.empty()) {
            config = bai::parse_config_file(config_path);
        }
        if (app.count("--dataset") && app.count("--synthetic")) {
            std::fprintf(stderr,
                         "error: --dataset and --synthetic are exclusive\n");
            return 1;
        }
        if (app.count("--dataset")) {
            config.source.dataset_path = dataset;
            config.source.use_synthetic = false;
        }
        if (app.count("--dataset-format")) {
            config.source.dataset_format = bai::parse_dataset_format(dataset_format);
        }
        if (app.count("--synthetic")) {
            config.source.synthetic = bai::parse_synthetic_spec(synthetic);
            config.source.use_synthetic = true;
            config.source.dataset_path.clear();
        }
        if (app.count("--budget")) config.budget = budget;
        if (app.count("--repeats")) config.repeats = repeats;
        if (app.count("--checkpoint-every")) {
            config.checkpoint_every = checkpoint_every;
        }
        if (app.count("--seed")) config.master_seed = seed;
        if (app.count("--out")) config.out_dir = out_dir;
        if (!policy_texts.empty()) {
            config.policies.clear();
            for (const std::string& text : policy_texts) {
                config.policies.push_back(bai::parse_policy_spec(text));
            }
        }

        const bai::ExperimentResult result = bai::run_experiment(config);

        std::printf("source: %s\n", result.source_description.c_str());
        std::printf("budget %" PRId64 ", repeats %d, checkpoints every %" PRId64
                    ", seed %" PRIu64 "\n",
                    config.budget, config.repeats, config.checkpoint_every,
                    config.master_seed);
        for (const bai::PolicyResult& pr : result.policies) {
            const double util =
                100.0 * static_cast<double>(pr.pulls_issued) /
                static_cast<double>(pr.pulls_possible);
            if (pr.mean_curve.points.empty()) {
                std::printf("%-28s no checkpoints (budget below interval), "
                            "utilization %.2f%%\n",
                            bai::display_policy_label(pr.spec).c_str(), util);
                continue;
            }
            const bai::AggregatePoint& last = pr.mean_curve.points.back();
            std::printf(
                "%-28s final regret %.4g (std %.4g), error %.4g, "
                "utilization %.2f%%\n",
                bai::display_policy_label(pr.spec).c_str(), last.mean_regret,
                last.std_regret, last.mean_error, util);
        }
        if (!config.out_dir.empty()) {
            bai::emit_outputs(result, config);
            std::printf("wrote %zu files to %s\n", result.policies.size() + 3,
                        config.out_dir.c_str());
        }
        return 0;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
