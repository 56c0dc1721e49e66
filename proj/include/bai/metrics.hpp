#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bai/policies.hpp"
#include "bai/reward_source.hpp"

namespace bai {

struct CheckpointValue {
    std::int64_t round = 0;
    double simple_regret = 0.0;
    double error_rate = 0.0;
};

// One run's checkpointed metrics, rounds strictly increasing.
struct RegretCurve {
    std::vector<CheckpointValue> checkpoints;
    int run_id = 0;
    std::string policy_label;
};

struct AggregatePoint {
    std::int64_t round = 0;
    double mean_regret = 0.0;
    double std_regret = 0.0;
    double mean_error = 0.0;
    double std_error = 0.0;
};

// Mean and population standard deviation across repeats, per checkpoint.
struct AggregateCurve {
    std::string policy_label;
    std::vector<AggregatePoint> points;
};

// Average over bandits of the true best mean minus the true mean of the
// selected arm.
double simple_regret(const Prediction& prediction, const GroundTruth& truth);

// Fraction of bandits whose selected arm is not truly best; selecting any
// arm whose true mean ties the maximum counts as correct.
double error_rate(const Prediction& prediction, const GroundTruth& truth);

// All curves must share one checkpoint grid; throws otherwise and on an
// empty input.
AggregateCurve aggregate(const std::vector<RegretCurve>& curves);

} // namespace bai
