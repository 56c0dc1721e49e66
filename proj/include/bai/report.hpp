#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "bai/metrics.hpp"

namespace bai {

// Shortest decimal form that round-trips the exact double.
std::string format_number(double value);

// Filesystem-safe name: alphanumerics kept (lowercased), everything else
// collapsed to '_'.
std::string slugify(std::string_view label);

// Per-policy curve: `round,mean_regret,std_regret,mean_error,std_error`.
std::string curve_csv(const AggregateCurve& curve);

// All policies in one file, leading `policy` column.
std::string aggregate_csv(const std::vector<AggregateCurve>& curves);

struct ChartSeries {
    std::string label;
    AggregateCurve curve;
};

// Hand-emitted line chart: mean simple regret per policy over arm pulls,
// each series with a translucent +/- one standard deviation band.
std::string render_regret_svg(const std::vector<ChartSeries>& series,
                              std::int64_t x_max, const std::string& title);

} // namespace bai
