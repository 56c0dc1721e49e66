#include "bai/core.hpp"

#include <stdexcept>
#include <string>

namespace bai {

int EnvironmentShape::total_pairs() const {
    int n = 0;
    for (int k : arms_per_bandit) n += k;
    return n;
}

bool EnvironmentShape::valid_pair(int bandit, int arm) const {
    return bandit >= 0 && bandit < num_bandits && arm >= 0 &&
           arm < arms_per_bandit[static_cast<std::size_t>(bandit)];
}

void EnvironmentShape::validate() const {
    if (num_bandits < 1) {
        throw std::invalid_argument("EnvironmentShape: need at least one bandit");
    }
    if (static_cast<int>(arms_per_bandit.size()) != num_bandits) {
        throw std::invalid_argument(
            "EnvironmentShape: arms_per_bandit size does not match num_bandits");
    }
    for (int k : arms_per_bandit) {
        if (k < 1) {
            throw std::invalid_argument(
                "EnvironmentShape: every bandit needs at least one arm");
        }
    }
    if (reward_bound != 1.0) {
        throw std::invalid_argument("EnvironmentShape: reward_bound must be 1.0");
    }
}

RunState::RunState(EnvironmentShape s, std::uint64_t seed)
    : shape(std::move(s)), rng(seed) {
    shape.validate();
    arms.resize(static_cast<std::size_t>(shape.num_bandits));
    for (int m = 0; m < shape.num_bandits; ++m) {
        arms[static_cast<std::size_t>(m)].resize(
            static_cast<std::size_t>(shape.arms_per_bandit[static_cast<std::size_t>(m)]));
    }
    zero_pull_pairs = shape.total_pairs();
}

void record_reward(RunState& state, int bandit, int arm, double reward) {
    if (!state.shape.valid_pair(bandit, arm)) {
        throw std::out_of_range("record_reward: invalid pair (" +
                                std::to_string(bandit) + ", " +
                                std::to_string(arm) + ")");
    }
    if (!(reward >= 0.0 && reward <= state.shape.reward_bound)) {
        throw std::invalid_argument("record_reward: reward " +
                                    std::to_string(reward) +
                                    " outside [0, 1]");
    }
    ArmState& a = state.arm(bandit, arm);
    if (a.pulls == 0) state.zero_pull_pairs -= 1;
    a.mean_estimate += (reward - a.mean_estimate) /
                       static_cast<double>(a.pulls + 1);
    a.pulls += 1;
    a.sum_sq += reward * reward;
}

std::size_t random_argmax(std::span<const double> values, Rng& rng) {
    if (values.empty()) {
        throw std::invalid_argument("random_argmax: empty input");
    }
    double best = values[0];
    std::size_t tie_count = 1;
    std::size_t chosen = 0;
    // Reservoir over ties: each maximal index survives with equal probability.
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (values[i] > best) {
            best = values[i];
            tie_count = 1;
            chosen = i;
        } else if (values[i] == best) {
            ++tie_count;
            if (rng.next_index(tie_count) == 0) chosen = i;
        }
    }
    return chosen;
}

void add_bandit(RunState& state, int num_arms) {
    if (num_arms < 1) {
        throw std::invalid_argument("add_bandit: need at least one arm");
    }
    state.shape.num_bandits += 1;
    state.shape.arms_per_bandit.push_back(num_arms);
    state.arms.emplace_back(static_cast<std::size_t>(num_arms));
    state.zero_pull_pairs += num_arms;
}

void add_arm(RunState& state, int bandit) {
    if (bandit < 0 || bandit >= state.shape.num_bandits) {
        throw std::out_of_range("add_arm: invalid bandit index " +
                                std::to_string(bandit));
    }
    state.shape.arms_per_bandit[static_cast<std::size_t>(bandit)] += 1;
    state.arms[static_cast<std::size_t>(bandit)].emplace_back();
    state.zero_pull_pairs += 1;
}

} // namespace bai
