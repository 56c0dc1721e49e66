#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "bai/core.hpp"
#include "bai/rng.hpp"

namespace bai {

// Replayable trial data: per (bandit, arm) a non-empty list of observed
// rewards in [0,1]. Arm lists may differ in length across bandits.
struct TrialDataset {
    std::vector<std::string> bandit_names;
    std::vector<std::vector<std::string>> arm_names;
    std::vector<std::vector<std::vector<double>>> trials;

    EnvironmentShape shape() const;
};

struct GroundTruth {
    std::vector<std::vector<double>> true_means;
    std::vector<double> best_mean;
};

// Per-pair trial mean; the dataset stands in for the true distribution.
GroundTruth dataset_truth(const TrialDataset& dataset);

enum class DatasetFormat { TrialsCsv, HistogramCsv };

// "trials-csv" or "histogram-csv".
DatasetFormat parse_dataset_format(std::string_view name);

// trials-csv: header `bandit,arm,reward`, one trial per row.
// histogram-csv: header `bandit,arm,outcome_value,count`, each row expands
// to count trials of the given outcome value.
// Indices are dense, assigned in first-appearance order. Pairs that end up
// with zero trials are dropped with a warning; a bandit left without arms
// is rejected.
TrialDataset load_dataset(const std::string& path, DatasetFormat format);

void save_trials_csv(const TrialDataset& dataset, const std::string& path);

class RewardSource {
public:
    virtual ~RewardSource() = default;
    virtual const EnvironmentShape& shape() const = 0;
    virtual const GroundTruth& truth() const = 0;
    // One independent draw from the pair's reward distribution.
    virtual double sample(int bandit, int arm, Rng& rng) const = 0;
    // The experiment-consistent first result for a pair: a deterministic
    // function of (source, pair, experiment_seed), shared by every policy
    // and repeat within one experiment.
    virtual double initial_pull_value(int bandit, int arm,
                                      std::uint64_t experiment_seed) const = 0;
};

std::unique_ptr<RewardSource> make_dataset_source(TrialDataset dataset);

enum class SyntheticFamily { Bernoulli, Skewed };

struct SyntheticSpec {
    int num_bandits = 1;
    std::vector<int> arms_per_bandit;
    SyntheticFamily family = SyntheticFamily::Bernoulli;
    // Bernoulli only: per-arm means, recycled across each bandit's arms.
    // Left empty, means are drawn uniformly from (0,1) per pair. The
    // Skewed family always draws its own means.
    std::vector<double> means;
    std::uint64_t seed = 0;
};

// Bernoulli arms with exactly known means. The Skewed family draws each
// arm's mean from a bimodal law concentrating near 0 and 1.
std::unique_ptr<RewardSource> make_synthetic(const SyntheticSpec& spec);

} // namespace bai
