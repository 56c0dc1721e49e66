#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bai/core.hpp"

namespace bai {

enum class PolicyKind {
    Random,
    Uniform,
    GapE,
    GapEV,
    UCBE,
    SuccessiveRejects,
    SequentialHalving,
    AnytimeSH,
    OptimisticWS,
};

// Accepts the canonical short names ("ows", "sr", ...) plus a few
// spelled-out aliases. Throws std::invalid_argument on anything else.
PolicyKind parse_policy_kind(std::string_view name);
std::string_view policy_kind_name(PolicyKind kind);

struct PolicyConfig {
    PolicyKind kind = PolicyKind::Uniform;
    // Exploration strength a for GapE / GapE-V / UCB-E. For UCB-E the
    // effective value each round is a * log(t).
    std::optional<double> exploration_a;
    // Exploration value c for Optimistic-WS.
    std::optional<double> exploration_c;
    // Total pull budget, required only by the fixed-budget policies
    // (SuccessiveRejects, SequentialHalving).
    std::optional<std::int64_t> total_budget;
};

struct DeltaScore {
    int bandit = 0;
    int arm = 0;
    double delta = 0.0;
};

struct Prediction {
    std::vector<int> best_arm_per_bandit;
};

// Uniform interface over all selection strategies. select_next returns
// the next pair to pull, or nullopt once a fixed-budget schedule is
// exhausted (the harness then stops pulling and holds the curve flat).
// Every returned pair must be followed by exactly one observe call
// before the next select_next. Stochastic choices draw from state.rng.
class Policy {
public:
    virtual ~Policy() = default;
    virtual std::optional<PairIndex> select_next(RunState& state) = 0;
    virtual void observe(RunState& state, PairIndex pair, double reward);
};

// Validates that exploration_a / exploration_c / total_budget are present
// exactly when the kind requires them and are in range.
std::unique_ptr<Policy> make_policy(const PolicyConfig& config);

// Empirical best arm per bandit, ties broken uniformly at random.
// Callable at any round boundary for any policy.
Prediction predict(const RunState& state, Rng& rng);

// alpha = K / (t * c), clamped into [1e-12, 0.9999] so the interval
// math stays defined at small t where the raw value exceeds 1.
double ows_alpha(int num_arms, std::int64_t t, double c);

// Delta scores for every pair at the current round (t = state.round + 1).
// Arms whose mean ties the bandit's best get mu_star - lower bound;
// all others get upper bound - mu_star.
std::vector<DeltaScore> ows_deltas(const RunState& state, double c);

// a is the effective exploration value for this round. pulls = 0 maps
// to +infinity so unpulled arms are taken first within a bandit.
double ucbe_index(const ArmState& arm, double a);

// Gap of one arm to the best mean in its bandit: best minus own mean,
// or best minus second-best for the arm holding the maximum. Single-arm
// bandits have gap 0.
double gape_gap(const RunState& state, int bandit, int arm);
double gape_index(const ArmState& arm, double gap, double a);
double gapev_index(const ArmState& arm, double gap, double a, double reward_bound);

// Cumulative per-arm pull targets n_1..n_{K-1}. Phase j pulls every
// surviving arm (n_j - n_{j-1}) times, then the worst arm is rejected.
// Throws if num_arms < 2 or budget < num_arms.
std::vector<std::int64_t> successive_rejects_schedule(int num_arms,
                                                      std::int64_t budget);

struct HalvingRound {
    int survivors = 0;
    std::int64_t pulls_per_arm = 0;
};

// ceil(log2 K) rounds; round r pulls each survivor floor(budget /
// (survivors * rounds)) times. Rounds with zero per-arm pulls are legal
// and simply advance the halving.
std::vector<HalvingRound> sequential_halving_schedule(int num_arms,
                                                      std::int64_t budget);

} // namespace bai
