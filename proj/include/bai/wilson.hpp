#pragma once

#include <cstdint>

namespace bai {

// A two-sided confidence interval for a bounded mean, both ends in [0, 1].
struct WilsonInterval {
    double lower = 0.0;
    double upper = 1.0;
    double width() const { return upper - lower; }
    friend bool operator==(const WilsonInterval&, const WilsonInterval&) = default;
};

// Inverse of the standard normal CDF. Acklam's rational approximation
// followed by one Halley step against erfc, giving absolute error well
// below 1e-9 across p in [1e-10, 1 - 1e-10]. Throws outside (0, 1).
double normal_quantile(double p);

// Wilson score interval for a mean estimate p_hat over n samples at
// confidence level 1 - alpha. n = 0 returns exactly (0, 1). Bounds are
// clamped into [0, 1] to absorb floating-point drift; p_hat = 0 yields
// lower = 0 and p_hat = 1 yields upper = 1 exactly.
WilsonInterval wilson_interval(double p_hat, std::int64_t n, double alpha);

// Same interval evaluated from a precomputed critical value
// z = normal_quantile(1 - alpha/2). Lets callers that sweep many arms at
// one confidence level pay for the quantile once.
WilsonInterval wilson_interval_with_z(double p_hat, std::int64_t n, double z);

} // namespace bai
