#include "bai/reward_source.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <unordered_map>
#include <utility>

namespace bai {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            out.push_back(trim(line.substr(start)));
            break;
        }
        out.push_back(trim(line.substr(start, comma - start)));
        start = comma + 1;
    }
    return out;
}

[[noreturn]] void parse_fail(const std::string& path, std::size_t line_no,
                             const std::string& what) {
    throw std::runtime_error(path + ":" + std::to_string(line_no) + ": " + what);
}

double parse_real(const std::string& field, const std::string& path,
                  std::size_t line_no) {
    double value = 0.0;
    const char* begin = field.data();
    const char* end = begin + field.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end) {
        parse_fail(path, line_no, "cannot parse number '" + field + "'");
    }
    return value;
}

std::int64_t parse_count(const std::string& field, const std::string& path,
                         std::size_t line_no) {
    std::int64_t value = 0;
    const char* begin = field.data();
    const char* end = begin + field.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end) {
        parse_fail(path, line_no, "cannot parse count '" + field + "'");
    }
    return value;
}

struct DatasetBuilder {
    TrialDataset ds;
    std::unordered_map<std::string, std::size_t> bandit_ix;
    std::vector<std::unordered_map<std::string, std::size_t>> arm_ix;

    std::pair<std::size_t, std::size_t> pair_for(const std::string& bandit,
                                                 const std::string& arm) {
        auto [bit, fresh_b] = bandit_ix.try_emplace(bandit, ds.bandit_names.size());
        if (fresh_b) {
            ds.bandit_names.push_back(bandit);
            ds.arm_names.emplace_back();
            ds.trials.emplace_back();
            arm_ix.emplace_back();
        }
        const std::size_t m = bit->second;
        auto [ait, fresh_a] = arm_ix[m].try_emplace(arm, ds.arm_names[m].size());
        if (fresh_a) {
            ds.arm_names[m].push_back(arm);
            ds.trials[m].emplace_back();
        }
        return {m, ait->second};
    }
};

// Drop zero-trial pairs (possible with all-zero histogram counts); a
// bandit left with no arms is a hard error.
void compact_dataset(TrialDataset& ds) {
    for (std::size_t m = 0; m < ds.trials.size(); ++m) {
        std::vector<std::string> names;
        std::vector<std::vector<double>> kept;
        for (std::size_t k = 0; k < ds.trials[m].size(); ++k) {
            if (ds.trials[m][k].empty()) {
                std::fprintf(stderr, "warning: excluding %s/%s: no trials\n",
                             ds.bandit_names[m].c_str(),
                             ds.arm_names[m][k].c_str());
                continue;
            }
            names.push_back(std::move(ds.arm_names[m][k]));
            kept.push_back(std::move(ds.trials[m][k]));
        }
        if (kept.empty()) {
            throw std::runtime_error("bandit '" + ds.bandit_names[m] +
                                     "' has no arms with trials");
        }
        ds.arm_names[m] = std::move(names);
        ds.trials[m] = std::move(kept);
    }
}

void append_number(std::string& out, double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    if (ec != std::errc{}) throw std::runtime_error("number formatting failed");
    out.append(buf, ptr);
}

class DatasetSource final : public RewardSource {
public:
    explicit DatasetSource(TrialDataset ds)
        : ds_(std::move(ds)), shape_(ds_.shape()), truth_(dataset_truth(ds_)) {
        shape_.validate();
        pair_offset_.resize(static_cast<std::size_t>(shape_.num_bandits));
        std::uint64_t offset = 0;
        for (int m = 0; m < shape_.num_bandits; ++m) {
            pair_offset_[static_cast<std::size_t>(m)] = offset;
            offset += static_cast<std::uint64_t>(
                shape_.arms_per_bandit[static_cast<std::size_t>(m)]);
        }
    }

    const EnvironmentShape& shape() const override { return shape_; }
    const GroundTruth& truth() const override { return truth_; }

    double sample(int bandit, int arm, Rng& rng) const override {
        const auto& list = trials_at(bandit, arm);
        return list[rng.next_index(list.size())];
    }

    double initial_pull_value(int bandit, int arm,
                              std::uint64_t experiment_seed) const override {
        const auto& list = trials_at(bandit, arm);
        const std::uint64_t pick = derive_seed(
            experiment_seed, "init-pull",
            pair_offset_[static_cast<std::size_t>(bandit)] +
                static_cast<std::uint64_t>(arm));
        return list[static_cast<std::size_t>(pick % list.size())];
    }

private:
    const std::vector<double>& trials_at(int bandit, int arm) const {
        if (!shape_.valid_pair(bandit, arm)) {
            throw std::out_of_range("reward source: invalid pair (" +
                                    std::to_string(bandit) + ", " +
                                    std::to_string(arm) + ")");
        }
        return ds_.trials[static_cast<std::size_t>(bandit)]
                         [static_cast<std::size_t>(arm)];
    }

    TrialDataset ds_;
    EnvironmentShape shape_;
    GroundTruth truth_;
    std::vector<std::uint64_t> pair_offset_;
};

class BernoulliSource final : public RewardSource {
public:
    BernoulliSource(EnvironmentShape shape, std::vector<std::vector<double>> means)
        : shape_(std::move(shape)) {
        shape_.validate();
        truth_.true_means = std::move(means);
        truth_.best_mean.reserve(truth_.true_means.size());
        for (const auto& row : truth_.true_means) {
            truth_.best_mean.push_back(*std::max_element(row.begin(), row.end()));
        }
        pair_offset_.resize(static_cast<std::size_t>(shape_.num_bandits));
        std::uint64_t offset = 0;
        for (int m = 0; m < shape_.num_bandits; ++m) {
            pair_offset_[static_cast<std::size_t>(m)] = offset;
            offset += static_cast<std::uint64_t>(
                shape_.arms_per_bandit[static_cast<std::size_t>(m)]);
        }
    }

    const EnvironmentShape& shape() const override { return shape_; }
    const GroundTruth& truth() const override { return truth_; }

    double sample(int bandit, int arm, Rng& rng) const override {
        return rng.next_bernoulli(mean_at(bandit, arm)) ? 1.0 : 0.0;
    }

    double initial_pull_value(int bandit, int arm,
                              std::uint64_t experiment_seed) const override {
        Rng pick(derive_seed(experiment_seed, "init-pull",
                             pair_offset_[static_cast<std::size_t>(bandit)] +
                                 static_cast<std::uint64_t>(arm)));
        return pick.next_bernoulli(mean_at(bandit, arm)) ? 1.0 : 0.0;
    }

private:
    double mean_at(int bandit, int arm) const {
        if (!shape_.valid_pair(bandit, arm)) {
            throw std::out_of_range("reward source: invalid pair (" +
                                    std::to_string(bandit) + ", " +
                                    std::to_string(arm) + ")");
        }
        return truth_.true_means[static_cast<std::size_t>(bandit)]
                                [static_cast<std::size_t>(arm)];
    }

    EnvironmentShape shape_;
    GroundTruth truth_;
    std::vector<std::uint64_t> pair_offset_;
};

// Kumaraswamy(0.3, 0.3) by inverse CDF: both shape parameters below 1
// give a bimodal density with mass piling up near 0 and 1.
double skewed_mean_draw(Rng& rng) {
    constexpr double a = 0.3;
    constexpr double b = 0.3;
    const double u = rng.next_unit();
    return std::pow(1.0 - std::pow(1.0 - u, 1.0 / b), 1.0 / a);
}

} // namespace

EnvironmentShape TrialDataset::shape() const {
    EnvironmentShape s;
    s.num_bandits = static_cast<int>(bandit_names.size());
    s.arms_per_bandit.reserve(arm_names.size());
    for (const auto& row : arm_names) {
        s.arms_per_bandit.push_back(static_cast<int>(row.size()));
    }
    return s;
}

GroundTruth dataset_truth(const TrialDataset& dataset) {
    GroundTruth truth;
    truth.true_means.reserve(dataset.trials.size());
    truth.best_mean.reserve(dataset.trials.size());
    for (const auto& row : dataset.trials) {
        std::vector<double> means;
        means.reserve(row.size());
        double best = 0.0;
        for (const auto& list : row) {
            if (list.empty()) {
                throw std::invalid_argument("dataset_truth: pair without trials");
            }
            double sum = 0.0;
            for (double x : list) sum += x;
            const double mean = sum / static_cast<double>(list.size());
            means.push_back(mean);
            best = std::max(best, mean);
        }
        truth.true_means.push_back(std::move(means));
        truth.best_mean.push_back(best);
    }
    return truth;
}

DatasetFormat parse_dataset_format(std::string_view name) {
    if (name == "trials-csv") return DatasetFormat::TrialsCsv;
    if (name == "histogram-csv") return DatasetFormat::HistogramCsv;
    throw std::invalid_argument("unknown dataset format: " + std::string(name));
}

TrialDataset load_dataset(const std::string& path, DatasetFormat format) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open dataset: " + path);
    const bool histogram = format == DatasetFormat::HistogramCsv;
    const std::string expected_header =
        histogram ? "bandit,arm,outcome_value,count" : "bandit,arm,reward";

    DatasetBuilder builder;
    std::string line;
    std::size_t line_no = 0;
    bool saw_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string stripped = trim(line);
        if (stripped.empty()) continue;
        if (!saw_header) {
            if (stripped != expected_header) {
                parse_fail(path, line_no,
                           "expected header '" + expected_header + "'");
            }
            saw_header = true;
            continue;
        }
        const std::vector<std::string> fields = split_fields(stripped);
        const std::size_t want = histogram ? 4 : 3;
        if (fields.size() != want) {
            parse_fail(path, line_no,
                       "expected " + std::to_string(want) + " fields, got " +
                           std::to_string(fields.size()));
        }
        if (fields[0].empty() || fields[1].empty()) {
            parse_fail(path, line_no, "empty bandit or arm name");
        }
        const double value = parse_real(fields[2], path, line_no);
        if (!(value >= 0.0 && value <= 1.0)) {
            parse_fail(path, line_no,
                       (histogram ? "outcome_value " : "reward ") +
                           fields[2] + " outside [0, 1]");
        }
        auto [m, k] = builder.pair_for(fields[0], fields[1]);
        if (histogram) {
            const std::int64_t count = parse_count(fields[3], path, line_no);
            if (count < 0) parse_fail(path, line_no, "negative count");
            for (std::int64_t i = 0; i < count; ++i) {
                builder.ds.trials[m][k].push_back(value);
            }
        } else {
            builder.ds.trials[m][k].push_back(value);
        }
    }
    if (!saw_header) throw std::runtime_error(path + ": empty dataset file");
    if (builder.ds.bandit_names.empty()) {
        throw std::runtime_error(path + ": no trials in dataset");
    }
    compact_dataset(builder.ds);
    return std::move(builder.ds);
}

void save_trials_csv(const TrialDataset& dataset, const std::string& path) {
    std::string out = "bandit,arm,reward\n";
    for (std::size_t m = 0; m < dataset.trials.size(); ++m) {
        for (std::size_t k = 0; k < dataset.trials[m].size(); ++k) {
            for (double value : dataset.trials[m][k]) {
                out += dataset.bandit_names[m];
                out += ',';
                out += dataset.arm_names[m][k];
                out += ',';
                append_number(out, value);
                out += '\n';
            }
        }
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot write: " + path);
    file << out;
    if (!file) throw std::runtime_error("write failed: " + path);
}

std::unique_ptr<RewardSource> make_dataset_source(TrialDataset dataset) {
    return std::make_unique<DatasetSource>(std::move(dataset));
}

std::unique_ptr<RewardSource> make_synthetic(const SyntheticSpec& spec) {
    EnvironmentShape shape;
    shape.num_bandits = spec.num_bandits;
    shape.arms_per_bandit = spec.arms_per_bandit;
    shape.validate();
    if (spec.family == SyntheticFamily::Skewed && !spec.means.empty()) {
        throw std::invalid_argument(
            "make_synthetic: the skewed family draws its own means");
    }
    for (double p : spec.means) {
        if (!(p >= 0.0 && p <= 1.0)) {
            throw std::invalid_argument("make_synthetic: mean " +
                                        std::to_string(p) + " outside [0, 1]");
        }
    }
    Rng rng(derive_seed(spec.seed, "synthetic-means", 0));
    std::vector<std::vector<double>> means;
    means.reserve(static_cast<std::size_t>(spec.num_bandits));
    for (int m = 0; m < spec.num_bandits; ++m) {
        const int k_count = spec.arms_per_bandit[static_cast<std::size_t>(m)];
        std::vector<double> row;
        row.reserve(static_cast<std::size_t>(k_count));
        for (int k = 0; k < k_count; ++k) {
            double p = 0.0;
            if (spec.family == SyntheticFamily::Skewed) {
                p = skewed_mean_draw(rng);
            } else if (!spec.means.empty()) {
                p = spec.means[static_cast<std::size_t>(k) % spec.means.size()];
            } else {
                p = rng.next_unit();
            }
            row.push_back(p);
        }
        means.push_back(std::move(row));
    }
    return std::make_unique<BernoulliSource>(std::move(shape), std::move(means));
}

} // namespace bai
