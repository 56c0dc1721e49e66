#include "bai/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace bai {

namespace {

void check_prediction(const Prediction& prediction, const GroundTruth& truth) {
    if (prediction.best_arm_per_bandit.size() != truth.true_means.size()) {
        throw std::invalid_argument(
            "prediction covers " +
            std::to_string(prediction.best_arm_per_bandit.size()) +
            " bandits, ground truth has " +
            std::to_string(truth.true_means.size()));
    }
    for (std::size_t m = 0; m < truth.true_means.size(); ++m) {
        const int j = prediction.best_arm_per_bandit[m];
        if (j < 0 || static_cast<std::size_t>(j) >= truth.true_means[m].size()) {
            throw std::out_of_range("prediction selects arm " +
                                    std::to_string(j) + " in bandit " +
                                    std::to_string(m));
        }
    }
}

} // namespace

double simple_regret(const Prediction& prediction, const GroundTruth& truth) {
    check_prediction(prediction, truth);
    double total = 0.0;
    for (std::size_t m = 0; m < truth.true_means.size(); ++m) {
        const auto j =
            static_cast<std::size_t>(prediction.best_arm_per_bandit[m]);
        total += truth.best_mean[m] - truth.true_means[m][j];
    }
    return total / static_cast<double>(truth.true_means.size());
}

double error_rate(const Prediction& prediction, const GroundTruth& truth) {
    check_prediction(prediction, truth);
    double wrong = 0.0;
    for (std::size_t m = 0; m < truth.true_means.size(); ++m) {
        const auto j =
            static_cast<std::size_t>(prediction.best_arm_per_bandit[m]);
        if (truth.true_means[m][j] != truth.best_mean[m]) wrong += 1.0;
    }
    return wrong / static_cast<double>(truth.true_means.size());
}

AggregateCurve aggregate(const std::vector<RegretCurve>& curves) {
    if (curves.empty()) {
        throw std::invalid_argument("aggregate: no curves");
    }
    const std::size_t grid = curves[0].checkpoints.size();
    for (const RegretCurve& c : curves) {
        if (c.checkpoints.size() != grid) {
            throw std::invalid_argument("aggregate: checkpoint grids differ");
        }
        for (std::size_t i = 0; i < grid; ++i) {
            if (c.checkpoints[i].round != curves[0].checkpoints[i].round) {
                throw std::invalid_argument("aggregate: checkpoint grids differ");
            }
        }
    }
    const double n = static_cast<double>(curves.size());
    AggregateCurve out;
    out.policy_label = curves[0].policy_label;
    out.points.reserve(grid);
    for (std::size_t i = 0; i < grid; ++i) {
        AggregatePoint p;
        p.round = curves[0].checkpoints[i].round;
        for (const RegretCurve& c : curves) {
            p.mean_regret += c.checkpoints[i].simple_regret;
            p.mean_error += c.checkpoints[i].error_rate;
        }
        p.mean_regret /= n;
        p.mean_error /= n;
        double var_r = 0.0;
        double var_e = 0.0;
        for (const RegretCurve& c : curves) {
            const double dr = c.checkpoints[i].simple_regret - p.mean_regret;
            const double de = c.checkpoints[i].error_rate - p.mean_error;
            var_r += dr * dr;
            var_e += de * de;
        }
        p.std_regret = std::sqrt(var_r / n);
        p.std_error = std::sqrt(var_e / n);
        out.points.push_back(p);
    }
    return out;
}

} // namespace bai
