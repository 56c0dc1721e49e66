#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "bai/metrics.hpp"
#include "bai/policies.hpp"
#include "bai/reward_source.hpp"

namespace bai {

struct PolicySpec {
    // The exact text the policy was configured with; doubles as the
    // stream-derivation tag and the CSV label, so it must be unique
    // within one experiment.
    std::string label;
    PolicyConfig config;
};

// "name" or "name:key=value[,key=value]" with keys a, c, budget.
// Fixed-budget policies given no budget here inherit the experiment's.
PolicySpec parse_policy_spec(std::string_view text);

// Human-facing legend text, e.g. "Optimistic-WS (c=16)".
std::string display_policy_label(const PolicySpec& spec);

// "family:key=value,..." with family bernoulli|skewed and keys bandits,
// arms, means (values separated by '|', bernoulli only), seed.
SyntheticSpec parse_synthetic_spec(std::string_view text);

struct SourceSpec {
    std::string dataset_path; // non-empty selects dataset replay
    DatasetFormat dataset_format = DatasetFormat::TrialsCsv;
    bool use_synthetic = false;
    SyntheticSpec synthetic;
};

struct ExperimentConfig {
    SourceSpec source;
    std::vector<PolicySpec> policies;
    std::int64_t budget = 50000;
    int repeats = 10;
    std::int64_t checkpoint_every = 1000;
    std::uint64_t master_seed = 0;
    std::string out_dir;
};

// Flat `key = value` lines, '#' starts a comment. Keys: dataset,
// dataset-format, synthetic, budget, repeats, checkpoint-every, seed,
// out, policy (repeatable).
ExperimentConfig parse_config_file(const std::string& path);

std::unique_ptr<RewardSource> build_source(const SourceSpec& spec);

struct PolicyResult {
    PolicySpec spec;
    std::vector<RegretCurve> curves; // one per repeat
    AggregateCurve mean_curve;
    std::int64_t pulls_issued = 0;   // summed over repeats
    std::int64_t pulls_possible = 0; // budget * repeats
};

struct ExperimentResult {
    std::vector<PolicyResult> policies;
    std::string source_description;
};

// The full protocol: per (policy, repeat) a fresh run seeded from
// master_seed and the policy label; every pair gets one consistent
// initial pull (shared across policies and repeats, round stays 0);
// then `budget` rounds with metrics checkpointed every checkpoint_every
// pulls. A policy whose schedule runs out keeps its last prediction, so
// its curve continues flat to the end of the x-axis.
ExperimentResult run_experiment(const ExperimentConfig& config,
                                const RewardSource& source);
ExperimentResult run_experiment(const ExperimentConfig& config);

// Writes one curve CSV per policy, aggregate.csv, regret.svg and
// manifest.txt under config.out_dir.
void emit_outputs(const ExperimentResult& result, const ExperimentConfig& config);

} // namespace bai
