#include "bai/wilson.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace bai {

namespace {

constexpr double kSqrt2 = 1.4142135623730950488;
constexpr double kSqrt2Pi = 2.5066282746310005024;

// Acklam's rational approximation for the lower half p in (0, 0.5].
double acklam_estimate(double p) {
    static constexpr double a[6] = {
        -3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
        1.383577518672690e+02, -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr double b[5] = {
        -5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
        6.680131188771972e+01, -1.328068155288572e+01};
    static constexpr double c[6] = {
        -7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
        -2.549732539343734e+00, 4.374664141464968e+00,  2.938163982698783e+00};
    static constexpr double d[4] = {
        7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
        3.754408661907416e+00};
    constexpr double p_low = 0.02425;

    if (p < p_low) {
        const double q = std::sqrt(-2.0 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    const double q = p - 0.5;
    const double r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

} // namespace

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw std::invalid_argument("normal_quantile: p = " + std::to_string(p) +
                                    " outside (0, 1)");
    }
    // For p >= 0.5 the reflection 1 - p is exact (Sterbenz), so refine in
    // the lower tail where erfc keeps full relative accuracy.
    if (p > 0.5) return -normal_quantile(1.0 - p);

    double x = acklam_estimate(p);
    // One Halley step: e = Phi(x) - p, u = e / phi(x).
    const double e = 0.5 * std::erfc(-x / kSqrt2) - p;
    const double u = e * kSqrt2Pi * std::exp(0.5 * x * x);
    const double refined = x - u / (1.0 + 0.5 * x * u);
    return std::isfinite(refined) ? refined : x;
}

WilsonInterval wilson_interval(double p_hat, std::int64_t n, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw std::invalid_argument("wilson_interval: alpha = " +
                                    std::to_string(alpha) + " outside (0, 1)");
    }
    if (!(p_hat >= 0.0 && p_hat <= 1.0)) {
        throw std::invalid_argument("wilson_interval: p_hat = " +
                                    std::to_string(p_hat) + " outside [0, 1]");
    }
    if (n == 0) return {0.0, 1.0};
    return wilson_interval_with_z(p_hat, n, normal_quantile(1.0 - alpha / 2.0));
}

WilsonInterval wilson_interval_with_z(double p_hat, std::int64_t n, double z) {
    if (n < 0) {
        throw std::invalid_argument("wilson_interval: negative sample count");
    }
    if (n == 0) return {0.0, 1.0};
    const double dn = static_cast<double>(n);
    const double h = z / (2.0 * dn);          // z / 2n
    const double zh = z * h;                  // z^2 / 2n
    const double denom = 1.0 + 2.0 * zh;      // 1 + z^2 / n
    const double radical = std::sqrt(p_hat * (1.0 - p_hat) / dn + h * h);
    const double half = z * radical;
    double lower = (p_hat + zh - half) / denom;
    double upper = (p_hat + zh + half) / denom;
    // At the boundaries the radical collapses to h and the touching
    // endpoint cancels exactly; sqrt rounding must not unpin it.
    if (p_hat == 0.0) lower = 0.0;
    if (p_hat == 1.0) upper = 1.0;
    return {std::clamp(lower, 0.0, 1.0), std::clamp(upper, 0.0, 1.0)};
}

} // namespace bai
