#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "bai/rng.hpp"

namespace bai {

struct PairIndex {
    int bandit = 0;
    int arm = 0;
    friend bool operator==(const PairIndex&, const PairIndex&) = default;
};

// The bandit universe: M bandits, a per-bandit arm count, rewards in
// [0, reward_bound]. Arm counts may differ across bandits.
struct EnvironmentShape {
    int num_bandits = 0;
    std::vector<int> arms_per_bandit;
    double reward_bound = 1.0;

    int total_pairs() const;
    bool valid_pair(int bandit, int arm) const;
    // Throws std::invalid_argument if the invariants do not hold.
    void validate() const;
};

// Running statistics for one bandit-arm pair. The mean is maintained
// with the incremental recurrence mu += (x - mu) / (T + 1); the sum of
// squares supports variance for variance-aware policies.
struct ArmState {
    std::int64_t pulls = 0;
    double mean_estimate = 0.0;
    double sum_sq = 0.0;

    // Biased sample variance, floored at 0 to absorb round-off.
    double variance() const {
        if (pulls == 0) return 0.0;
        const double v = sum_sq / static_cast<double>(pulls) -
                         mean_estimate * mean_estimate;
        return v > 0.0 ? v : 0.0;
    }
};

// Mutable state of one run: shape, per-pair statistics, the round clock
// and the run's random stream. Confined to a single thread; independent
// runs (distinct seeds) may execute concurrently.
struct RunState {
    EnvironmentShape shape;
    std::vector<std::vector<ArmState>> arms;
    std::int64_t round = 0;
    // Number of pairs that have never been pulled. Policies consult this
    // to give unpulled arms first claim without scanning every pair.
    std::int64_t zero_pull_pairs = 0;
    Rng rng;

    RunState(EnvironmentShape s, std::uint64_t seed);

    const ArmState& arm(int bandit, int k) const { return arms[bandit][k]; }
    ArmState& arm(int bandit, int k) { return arms[bandit][k]; }
};

// Records one observed reward for (bandit, arm). Updates statistics only;
// the round clock is advanced by the caller, so initialization pulls can
// be recorded at round 0.
void record_reward(RunState& state, int bandit, int arm, double reward);

// Index of a maximal element; ties are broken uniformly at random.
std::size_t random_argmax(std::span<const double> values, Rng& rng);

// Extend the environment at a round boundary. New entries start with all
// statistics at zero; existing statistics are untouched.
void add_bandit(RunState& state, int num_arms);
void add_arm(RunState& state, int bandit);

} // namespace bai
