#include "bai/policies.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

#include "bai/wilson.hpp"

namespace bai {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

int ceil_log2(int k) {
    int r = 0;
    while ((std::int64_t{1} << r) < k) ++r;
    return r;
}

// Running argmax over offered pairs with uniform tie-breaking, so a
// whole selection sweep needs no materialized score vector.
struct PairPicker {
    double best = 0.0;
    PairIndex pick{-1, -1};
    std::int64_t ties = 0;

    void offer(int bandit, int arm, double value, Rng& rng) {
        if (ties == 0 || value > best) {
            best = value;
            pick = {bandit, arm};
            ties = 1;
        } else if (value == best) {
            ++ties;
            if (rng.next_index(static_cast<std::size_t>(ties)) == 0) {
                pick = {bandit, arm};
            }
        }
    }
    bool empty() const { return ties == 0; }
};

// Same idea for the minimum (Successive Rejects eliminations).
struct MinPicker {
    double best = 0.0;
    int pick = -1;
    std::int64_t ties = 0;

    void offer(int arm, double value, Rng& rng) {
        if (ties == 0 || value < best) {
            best = value;
            pick = arm;
            ties = 1;
        } else if (value == best) {
            ++ties;
            if (rng.next_index(static_cast<std::size_t>(ties)) == 0) {
                pick = arm;
            }
        }
    }
};

double best_mean(const std::vector<ArmState>& row) {
    double m = 0.0;
    for (const ArmState& a : row) m = std::max(m, a.mean_estimate);
    return m;
}

// Keep the top ceil(n/2) arms by mean. Equal means are ordered by a
// random key so boundary ties are broken uniformly.
void halve_actives(RunState& state, int bandit, std::vector<int>& active) {
    struct Entry {
        double mean;
        std::uint64_t key;
        int arm;
    };
    std::vector<Entry> entries;
    entries.reserve(active.size());
    for (int k : active) {
        entries.push_back({state.arm(bandit, k).mean_estimate,
                           state.rng.next_u64(), k});
    }
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
        if (a.mean != b.mean) return a.mean > b.mean;
        return a.key < b.key;
    });
    const std::size_t keep = (entries.size() + 1) / 2;
    active.clear();
    for (std::size_t i = 0; i < keep; ++i) active.push_back(entries[i].arm);
}

class RandomPolicy final : public Policy {
public:
    std::optional<PairIndex> select_next(RunState& state) override {
        // Single-arm bandits are eligible only while unpulled.
        std::size_t count = 0;
        for (int m = 0; m < state.shape.num_bandits; ++m) {
            const int k = state.shape.arms_per_bandit[static_cast<std::size_t>(m)];
            if (k >= 2) {
                count += static_cast<std::size_t>(k);
            } else if (state.arm(m, 0).pulls == 0) {
                count += 1;
            }
        }
        if (count == 0) return std::nullopt;
        std::size_t idx = state.rng.next_index(count);
        for (int m = 0; m < state.shape.num_bandits; ++m) {
            const int k = state.shape.arms_per_bandit[static_cast<std::size_t>(m)];
            if (k >= 2) {
                if (idx < static_cast<std::size_t>(k)) {
                    return PairIndex{m, static_cast<int>(idx)};
                }
                idx -= static_cast<std::size_t>(k);
            } else if (state.arm(m, 0).pulls == 0) {
                if (idx == 0) return PairIndex{m, 0};
                idx -= 1;
            }
        }
        return std::nullopt;
    }
};

class UniformPolicy final : public Policy {
public:
    std::optional<PairIndex> select_next(RunState& state) override {
        const int total = state.shape.total_pairs();
        if (bandit_ >= state.shape.num_bandits) {
            bandit_ = 0;
            arm_ = 0;
        }
        for (int step = 0; step < total; ++step) {
            const int m = bandit_;
            const int k = arm_;
            advance(state);
            if (state.shape.arms_per_bandit[static_cast<std::size_t>(m)] >= 2 ||
                state.arm(m, k).pulls == 0) {
                return PairIndex{m, k};
            }
        }
        return std::nullopt;
    }

private:
    void advance(const RunState& state) {
        arm_ += 1;
        if (arm_ >= state.shape.arms_per_bandit[static_cast<std::size_t>(bandit_)]) {
            arm_ = 0;
            bandit_ = (bandit_ + 1) % state.shape.num_bandits;
        }
    }

    int bandit_ = 0;
    int arm_ = 0;
};

class UcbePolicy final : public Policy {
public:
    explicit UcbePolicy(double coef) : coef_(coef) {}

    std::optional<PairIndex> select_next(RunState& state) override {
        const int m_count = state.shape.num_bandits;
        const double t = static_cast<double>(state.round + 1);
        const double a_eff = coef_ * std::log(t);
        for (int off = 0; off < m_count; ++off) {
            const int m = (cursor_ + off) % m_count;
            const auto& row = state.arms[static_cast<std::size_t>(m)];
            if (row.size() < 2 && row[0].pulls > 0) continue;
            PairPicker picker;
            for (std::size_t k = 0; k < row.size(); ++k) {
                picker.offer(m, static_cast<int>(k), ucbe_index(row[k], a_eff),
                             state.rng);
            }
            cursor_ = (m + 1) % m_count;
            return picker.pick;
        }
        return std::nullopt;
    }

private:
    double coef_;
    int cursor_ = 0;
};

class GapePolicy final : public Policy {
public:
    GapePolicy(double a, bool use_variance) : a_(a), use_variance_(use_variance) {}

    std::optional<PairIndex> select_next(RunState& state) override {
        PairPicker picker;
        const double bound = state.shape.reward_bound;
        for (int m = 0; m < state.shape.num_bandits; ++m) {
            const auto& row = state.arms[static_cast<std::size_t>(m)];
            if (row.size() < 2) {
                if (row[0].pulls == 0) picker.offer(m, 0, kInf, state.rng);
                continue;
            }
            double top1 = -1.0;
            double top2 = -1.0;
            for (const ArmState& a : row) {
                if (a.mean_estimate > top1) {
                    top2 = top1;
                    top1 = a.mean_estimate;
                } else if (a.mean_estimate > top2) {
                    top2 = a.mean_estimate;
                }
            }
            for (std::size_t k = 0; k < row.size(); ++k) {
                const ArmState& a = row[k];
                const double gap =
                    a.mean_estimate == top1 ? top1 - top2 : top1 - a.mean_estimate;
                const double index = use_variance_
                                         ? gapev_index(a, gap, a_, bound)
                                         : gape_index(a, gap, a_);
                picker.offer(m, static_cast<int>(k), index, state.rng);
            }
        }
        if (picker.empty()) return std::nullopt;
        return picker.pick;
    }

private:
    double a_;
    bool use_variance_;
};

class OptimisticWsPolicy final : public Policy {
public:
    explicit OptimisticWsPolicy(double c) : c_(c) {}

    std::optional<PairIndex> select_next(RunState& state) override {
        const std::int64_t t = state.round + 1;
        // Any unpulled arm anywhere outranks every pulled arm: its
        // interval is the full (0, 1), so restrict the sweep to those
        // arms whenever they exist.
        const bool fresh_only = state.zero_pull_pairs > 0;
        PairPicker picker;
        zcache_.clear();
        for (int m = 0; m < state.shape.num_bandits; ++m) {
            const auto& row = state.arms[static_cast<std::size_t>(m)];
            if (fresh_only) {
                bool any_fresh = false;
                for (const ArmState& a : row) {
                    if (a.pulls == 0) {
                        any_fresh = true;
                        break;
                    }
                }
                if (!any_fresh) continue;
                const double mu_star = best_mean(row);
                for (std::size_t k = 0; k < row.size(); ++k) {
                    if (row[k].pulls != 0) continue;
                    const double delta =
                        row[k].mean_estimate == mu_star ? mu_star : 1.0 - mu_star;
                    picker.offer(m, static_cast<int>(k), delta, state.rng);
                }
                continue;
            }
            if (row.size() < 2) continue;
            const double mu_star = best_mean(row);
            const double z = z_for(static_cast<int>(row.size()), t);
            for (std::size_t k = 0; k < row.size(); ++k) {
                const ArmState& a = row[k];
                const WilsonInterval w =
                    wilson_interval_with_z(a.mean_estimate, a.pulls, z);
                const double delta = a.mean_estimate == mu_star
                                         ? mu_star - w.lower
                                         : w.upper - mu_star;
                picker.offer(m, static_cast<int>(k), delta, state.rng);
            }
        }
        if (picker.empty()) return std::nullopt;
        return picker.pick;
    }

private:
    double z_for(int num_arms, std::int64_t t) {
        for (const auto& [k, z] : zcache_) {
            if (k == num_arms) return z;
        }
        const double z =
            normal_quantile(1.0 - ows_alpha(num_arms, t, c_) / 2.0);
        zcache_.emplace_back(num_arms, z);
        return z;
    }

    double c_;
    std::vector<std::pair<int, double>> zcache_;
};

class SuccessiveRejectsPolicy final : public Policy {
public:
    explicit SuccessiveRejectsPolicy(std::int64_t total_budget)
        : total_budget_(total_budget) {}

    std::optional<PairIndex> select_next(RunState& state) override {
        if (!init_done_) init(state);
        const int m_count = static_cast<int>(bandits_.size());
        for (int off = 0; off < m_count; ++off) {
            const int m = (cursor_ + off) % m_count;
            BanditSr& b = bandits_[static_cast<std::size_t>(m)];
            advance_phases(state, m, b);
            if (b.done) continue;
            const int arm =
                b.active[static_cast<std::size_t>(b.phase_pulls) % b.active.size()];
            b.phase_pulls += 1;
            cursor_ = (m + 1) % m_count;
            return PairIndex{m, arm};
        }
        return std::nullopt;
    }

private:
    struct BanditSr {
        std::vector<int> active;
        std::vector<std::int64_t> targets;
        std::size_t phase = 0;
        std::int64_t prev_target = 0;
        std::int64_t phase_pulls = 0;
        bool done = false;
    };

    void init(const RunState& state) {
        const int m_count = state.shape.num_bandits;
        const std::int64_t per =
            total_budget_ / static_cast<std::int64_t>(m_count);
        bandits_.resize(static_cast<std::size_t>(m_count));
        for (int m = 0; m < m_count; ++m) {
            BanditSr& b = bandits_[static_cast<std::size_t>(m)];
            const int k = state.shape.arms_per_bandit[static_cast<std::size_t>(m)];
            if (k < 2) {
                b.done = true;
                continue;
            }
            b.targets = successive_rejects_schedule(k, per);
            b.active.resize(static_cast<std::size_t>(k));
            for (int i = 0; i < k; ++i) b.active[static_cast<std::size_t>(i)] = i;
        }
        init_done_ = true;
    }

    std::int64_t phase_quota(const BanditSr& b) const {
        return (b.targets[b.phase] - b.prev_target) *
               static_cast<std::int64_t>(b.active.size());
    }

    void advance_phases(RunState& state, int m, BanditSr& b) {
        while (!b.done) {
            if (b.phase >= b.targets.size() || b.active.size() <= 1) {
                b.done = true;
                break;
            }
            if (b.phase_pulls < phase_quota(b)) break;
            MinPicker worst;
            for (int k : b.active) {
                worst.offer(k, state.arm(m, k).mean_estimate, state.rng);
            }
            b.active.erase(std::find(b.active.begin(), b.active.end(), worst.pick));
            b.prev_target = b.targets[b.phase];
            b.phase += 1;
            b.phase_pulls = 0;
        }
    }

    std::int64_t total_budget_;
    bool init_done_ = false;
    int cursor_ = 0;
    std::vector<BanditSr> bandits_;
};

class SequentialHalvingPolicy final : public Policy {
public:
    explicit SequentialHalvingPolicy(std::int64_t total_budget)
        : total_budget_(total_budget) {}

    std::optional<PairIndex> select_next(RunState& state) override {
        if (!init_done_) init(state);
        const int m_count = static_cast<int>(bandits_.size());
        for (int off = 0; off < m_count; ++off) {
            const int m = (cursor_ + off) % m_count;
            BanditSh& b = bandits_[static_cast<std::size_t>(m)];
            advance_rounds(state, m, b);
            if (b.done) continue;
            const int arm =
                b.active[static_cast<std::size_t>(b.made) % b.active.size()];
            b.made += 1;
            cursor_ = (m + 1) % m_count;
            return PairIndex{m, arm};
        }
        return std::nullopt;
    }

private:
    struct BanditSh {
        std::vector<int> active;
        std::vector<HalvingRound> rounds;
        std::size_t round = 0;
        std::int64_t made = 0;
        bool done = false;
    };

    void init(const RunState& state) {
        const int m_count = state.shape.num_bandits;
        const std::int64_t per =
            total_budget_ / static_cast<std::int64_t>(m_count);
        bandits_.resize(static_cast<std::size_t>(m_count));
        for (int m = 0; m < m_count; ++m) {
            BanditSh& b = bandits_[static_cast<std::size_t>(m)];
            const int k = state.shape.arms_per_bandit[static_cast<std::size_t>(m)];
            if (k < 2 || per < 1) {
                b.done = true;
                continue;
            }
            b.rounds = sequential_halving_schedule(k, per);
            b.active.resize(static_cast<std::size_t>(k));
            for (int i = 0; i < k; ++i) b.active[static_cast<std::size_t>(i)] = i;
        }
        init_done_ = true;
    }

    void advance_rounds(RunState& state, int m, BanditSh& b) {
        while (!b.done) {
            if (b.round >= b.rounds.size()) {
                b.done = true;
                break;
            }
            const std::int64_t quota =
                b.rounds[b.round].pulls_per_arm *
                static_cast<std::int64_t>(b.active.size());
            if (b.made < quota) break;
            halve_actives(state, m, b.active);
            b.round += 1;
            b.made = 0;
        }
    }

    std::int64_t total_budget_;
    bool init_done_ = false;
    int cursor_ = 0;
    std::vector<BanditSh> bandits_;
};

// Repeated minimal-budget halving passes: every survivor is pulled once
// per round, statistics carry over from pass to pass.
class AnytimeShPolicy final : public Policy {
public:
    std::optional<PairIndex> select_next(RunState& state) override {
        const int m_count = state.shape.num_bandits;
        bandits_.resize(static_cast<std::size_t>(m_count));
        for (int off = 0; off < m_count; ++off) {
            const int m = (cursor_ + off) % m_count;
            if (state.shape.arms_per_bandit[static_cast<std::size_t>(m)] < 2) {
                continue;
            }
            BanditAsh& b = bandits_[static_cast<std::size_t>(m)];
            advance(state, m, b);
            const int arm =
                b.active[static_cast<std::size_t>(b.made) % b.active.size()];
            b.made += 1;
            cursor_ = (m + 1) % m_count;
            return PairIndex{m, arm};
        }
        return std::nullopt;
    }

private:
    struct BanditAsh {
        std::vector<int> active;
        int rounds_total = 0;
        int round = 0;
        std::int64_t made = 0;
    };

    void restart_pass(const RunState& state, int m, BanditAsh& b) {
        const int k = state.shape.arms_per_bandit[static_cast<std::size_t>(m)];
        b.active.resize(static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i) b.active[static_cast<std::size_t>(i)] = i;
        b.rounds_total = ceil_log2(k);
        b.round = 0;
        b.made = 0;
    }

    void advance(RunState& state, int m, BanditAsh& b) {
        if (b.active.empty()) restart_pass(state, m, b);
        while (true) {
            if (b.round >= b.rounds_total) {
                restart_pass(state, m, b);
                continue;
            }
            if (b.made < static_cast<std::int64_t>(b.active.size())) break;
            halve_actives(state, m, b.active);
            b.round += 1;
            b.made = 0;
        }
    }

    int cursor_ = 0;
    std::vector<BanditAsh> bandits_;
};

void require_params(const PolicyConfig& cfg, bool wants_a, bool wants_c,
                    bool wants_budget) {
    const std::string name{policy_kind_name(cfg.kind)};
    if (cfg.exploration_a.has_value() != wants_a) {
        throw std::invalid_argument(
            "policy " + name + (wants_a ? " requires" : " does not take") +
            " exploration_a");
    }
    if (cfg.exploration_c.has_value() != wants_c) {
        throw std::invalid_argument(
            "policy " + name + (wants_c ? " requires" : " does not take") +
            " exploration_c");
    }
    if (cfg.total_budget.has_value() != wants_budget) {
        throw std::invalid_argument(
            "policy " + name + (wants_budget ? " requires" : " does not take") +
            " total_budget");
    }
    if (cfg.exploration_a && !(*cfg.exploration_a > 0.0)) {
        throw std::invalid_argument("policy " + name + ": exploration_a must be > 0");
    }
    if (cfg.exploration_c && !(*cfg.exploration_c > 0.0)) {
        throw std::invalid_argument("policy " + name + ": exploration_c must be > 0");
    }
    if (cfg.total_budget && *cfg.total_budget < 1) {
        throw std::invalid_argument("policy " + name + ": total_budget must be >= 1");
    }
}

} // namespace

void Policy::observe(RunState& state, PairIndex pair, double reward) {
    record_reward(state, pair.bandit, pair.arm, reward);
}

PolicyKind parse_policy_kind(std::string_view name) {
    if (name == "random") return PolicyKind::Random;
    if (name == "uniform") return PolicyKind::Uniform;
    if (name == "gape" || name == "gap-e") return PolicyKind::GapE;
    if (name == "gapev" || name == "gape-v") return PolicyKind::GapEV;
    if (name == "ucbe" || name == "ucb-e") return PolicyKind::UCBE;
    if (name == "sr" || name == "successive-rejects") {
        return PolicyKind::SuccessiveRejects;
    }
    if (name == "sh" || name == "sequential-halving") {
        return PolicyKind::SequentialHalving;
    }
    if (name == "ash" || name == "anytime-sh") return PolicyKind::AnytimeSH;
    if (name == "ows" || name == "optimistic-ws") return PolicyKind::OptimisticWS;
    throw std::invalid_argument("unknown policy kind: " + std::string(name));
}

std::string_view policy_kind_name(PolicyKind kind) {
    switch (kind) {
        case PolicyKind::Random: return "random";
        case PolicyKind::Uniform: return "uniform";
        case PolicyKind::GapE: return "gape";
        case PolicyKind::GapEV: return "gapev";
        case PolicyKind::UCBE: return "ucbe";
        case PolicyKind::SuccessiveRejects: return "sr";
        case PolicyKind::SequentialHalving: return "sh";
        case PolicyKind::AnytimeSH: return "ash";
        case PolicyKind::OptimisticWS: return "ows";
    }
    throw std::invalid_argument("unknown policy kind");
}

std::unique_ptr<Policy> make_policy(const PolicyConfig& cfg) {
    switch (cfg.kind) {
        case PolicyKind::Random:
            require_params(cfg, false, false, false);
            return std::make_unique<RandomPolicy>();
        case PolicyKind::Uniform:
            require_params(cfg, false, false, false);
            return std::make_unique<UniformPolicy>();
        case PolicyKind::GapE:
            require_params(cfg, true, false, false);
            return std::make_unique<GapePolicy>(*cfg.exploration_a, false);
        case PolicyKind::GapEV:
            require_params(cfg, true, false, false);
            return std::make_unique<GapePolicy>(*cfg.exploration_a, true);
        case PolicyKind::UCBE:
            require_params(cfg, true, false, false);
            return std::make_unique<UcbePolicy>(*cfg.exploration_a);
        case PolicyKind::SuccessiveRejects:
            require_params(cfg, false, false, true);
            return std::make_unique<SuccessiveRejectsPolicy>(*cfg.total_budget);
        case PolicyKind::SequentialHalving:
            require_params(cfg, false, false, true);
            return std::make_unique<SequentialHalvingPolicy>(*cfg.total_budget);
        case PolicyKind::AnytimeSH:
            require_params(cfg, false, false, false);
            return std::make_unique<AnytimeShPolicy>();
        case PolicyKind::OptimisticWS:
            require_params(cfg, false, true, false);
            return std::make_unique<OptimisticWsPolicy>(*cfg.exploration_c);
    }
    throw std::invalid_argument("unknown policy kind");
}

Prediction predict(const RunState& state, Rng& rng) {
    Prediction p;
    p.best_arm_per_bandit.resize(static_cast<std::size_t>(state.shape.num_bandits));
    std::vector<double> means;
    for (int m = 0; m < state.shape.num_bandits; ++m) {
        const auto& row = state.arms[static_cast<std::size_t>(m)];
        means.clear();
        for (const ArmState& a : row) means.push_back(a.mean_estimate);
        p.best_arm_per_bandit[static_cast<std::size_t>(m)] =
            static_cast<int>(random_argmax(means, rng));
    }
    return p;
}

double ows_alpha(int num_arms, std::int64_t t, double c) {
    if (num_arms < 1) {
        throw std::invalid_argument("ows_alpha: need at least one arm");
    }
    if (t < 1) {
        throw std::invalid_argument("ows_alpha: round must be >= 1");
    }
    if (!(c > 0.0)) {
        throw std::invalid_argument("ows_alpha: c must be > 0");
    }
    const double raw =
        static_cast<double>(num_arms) / (static_cast<double>(t) * c);
    return std::clamp(raw, 1e-12, 0.9999);
}

std::vector<DeltaScore> ows_deltas(const RunState& state, double c) {
    const std::int64_t t = state.round + 1;
    std::vector<DeltaScore> out;
    out.reserve(static_cast<std::size_t>(state.shape.total_pairs()));
    for (int m = 0; m < state.shape.num_bandits; ++m) {
        const auto& row = state.arms[static_cast<std::size_t>(m)];
        const double mu_star = best_mean(row);
        const double z = normal_quantile(
            1.0 - ows_alpha(static_cast<int>(row.size()), t, c) / 2.0);
        for (std::size_t k = 0; k < row.size(); ++k) {
            const ArmState& a = row[k];
            const WilsonInterval w =
                wilson_interval_with_z(a.mean_estimate, a.pulls, z);
            const double delta = a.mean_estimate == mu_star ? mu_star - w.lower
                                                            : w.upper - mu_star;
            out.push_back({m, static_cast<int>(k), delta});
        }
    }
    return out;
}

double ucbe_index(const ArmState& arm, double a) {
    if (a < 0.0) {
        throw std::invalid_argument("ucbe_index: exploration value must be >= 0");
    }
    if (arm.pulls == 0) return kInf;
    return arm.mean_estimate + std::sqrt(a / static_cast<double>(arm.pulls));
}

double gape_gap(const RunState& state, int bandit, int arm) {
    if (!state.shape.valid_pair(bandit, arm)) {
        throw std::out_of_range("gape_gap: invalid pair");
    }
    const auto& row = state.arms[static_cast<std::size_t>(bandit)];
    if (row.size() < 2) return 0.0;
    double top1 = -1.0;
    double top2 = -1.0;
    for (const ArmState& a : row) {
        if (a.mean_estimate > top1) {
            top2 = top1;
            top1 = a.mean_estimate;
        } else if (a.mean_estimate > top2) {
            top2 = a.mean_estimate;
        }
    }
    const double mean = row[static_cast<std::size_t>(arm)].mean_estimate;
    return mean == top1 ? top1 - top2 : top1 - mean;
}

double gape_index(const ArmState& arm, double gap, double a) {
    if (!(a > 0.0)) {
        throw std::invalid_argument("gape_index: exploration value must be > 0");
    }
    if (arm.pulls == 0) return kInf;
    return -gap + std::sqrt(a / static_cast<double>(arm.pulls));
}

double gapev_index(const ArmState& arm, double gap, double a, double reward_bound) {
    if (!(a > 0.0)) {
        throw std::invalid_argument("gapev_index: exploration value must be > 0");
    }
    if (arm.pulls == 0) return kInf;
    const double t = static_cast<double>(arm.pulls);
    return -gap + std::sqrt(2.0 * a * arm.variance() / t) +
           7.0 * a * reward_bound / (3.0 * t);
}

std::vector<std::int64_t> successive_rejects_schedule(int num_arms,
                                                      std::int64_t budget) {
    if (num_arms < 2) {
        throw std::invalid_argument(
            "successive_rejects_schedule: need at least 2 arms");
    }
    if (budget < num_arms) {
        throw std::invalid_argument(
            "successive_rejects_schedule: budget " + std::to_string(budget) +
            " below arm count " + std::to_string(num_arms));
    }
    double log_bar = 0.5;
    for (int i = 2; i <= num_arms; ++i) log_bar += 1.0 / static_cast<double>(i);
    const double spendable = static_cast<double>(budget - num_arms);
    std::vector<std::int64_t> targets;
    targets.reserve(static_cast<std::size_t>(num_arms - 1));
    std::int64_t prev = 0;
    for (int j = 1; j <= num_arms - 1; ++j) {
        const double raw =
            spendable / (log_bar * static_cast<double>(num_arms + 1 - j));
        std::int64_t n = static_cast<std::int64_t>(std::ceil(raw));
        if (n < prev) n = prev;
        targets.push_back(n);
        prev = n;
    }
    return targets;
}

std::vector<HalvingRound> sequential_halving_schedule(int num_arms,
                                                      std::int64_t budget) {
    if (num_arms < 2) {
        throw std::invalid_argument(
            "sequential_halving_schedule: need at least 2 arms");
    }
    if (budget < 1) {
        throw std::invalid_argument("sequential_halving_schedule: empty budget");
    }
    const int rounds = ceil_log2(num_arms);
    std::vector<HalvingRound> out;
    out.reserve(static_cast<std::size_t>(rounds));
    int survivors = num_arms;
    for (int r = 0; r < rounds; ++r) {
        const std::int64_t per =
            budget / (static_cast<std::int64_t>(survivors) *
                      static_cast<std::int64_t>(rounds));
        out.push_back({survivors, per});
        survivors = (survivors + 1) / 2;
    }
    return out;
}

} // namespace bai
