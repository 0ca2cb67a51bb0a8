#include "dgf/specfun.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace dgf::specfun {

namespace {

// Covers every index reachable through the amplitude-assembly envelope.
constexpr int kLogFactorialTableSize = 20001;

constexpr double kInf = std::numeric_limits<double>::infinity();

// One power-of-two rescale step for the log-domain recurrence.
constexpr double kRescaleThreshold = 0x1p512;
const double kRescaleLog = 512.0 * std::log(2.0);

}  // namespace

double log_factorial(int n) {
    if (n < 0) throw std::domain_error("log_factorial: n must be >= 0");
    static const std::vector<double> table = [] {
        std::vector<double> t(kLogFactorialTableSize);
        long double acc = 0.0L;
        t[0] = 0.0;
        for (int i = 1; i < kLogFactorialTableSize; ++i) {
            acc += std::log(static_cast<long double>(i));
            t[i] = static_cast<double>(acc);
        }
        return t;
    }();
    if (n < kLogFactorialTableSize) return table[static_cast<size_t>(n)];
    return std::lgamma(static_cast<double>(n) + 1.0);
}

double assoc_laguerre(int k, int s, double x) {
    if (k < 0 || s < 0) throw std::domain_error("assoc_laguerre: k and s must be >= 0");
    if (x < 0.0) throw std::domain_error("assoc_laguerre: negative argument not supported");
    if (k == 0) return 1.0;
    double prev = 1.0;
    double cur = 1.0 + s - x;
    for (int j = 1; j < k; ++j) {
        const double next = ((2.0 * j + 1.0 + s - x) * cur - (j + s) * prev) / (j + 1.0);
        prev = cur;
        cur = next;
    }
    return cur;
}

SignedLog log_assoc_laguerre(int k, int s, double x) {
    if (k < 0 || s < 0) throw std::domain_error("log_assoc_laguerre: k and s must be >= 0");
    if (x < 0.0) throw std::domain_error("log_assoc_laguerre: negative argument not supported");
    if (k == 0) return {0.0, 1.0};
    double prev = 1.0;
    double cur = 1.0 + s - x;
    double log_scale = 0.0;
    for (int j = 1; j < k; ++j) {
        const double next = ((2.0 * j + 1.0 + s - x) * cur - (j + s) * prev) / (j + 1.0);
        prev = cur;
        cur = next;
        const double mag = std::max(std::abs(prev), std::abs(cur));
        if (mag > kRescaleThreshold) {
            prev /= kRescaleThreshold;
            cur /= kRescaleThreshold;
            log_scale += kRescaleLog;
        } else if (mag > 0.0 && mag < 1.0 / kRescaleThreshold) {
            prev *= kRescaleThreshold;
            cur *= kRescaleThreshold;
            log_scale -= kRescaleLog;
        }
    }
    if (cur == 0.0) return {-kInf, 0.0};
    return {std::log(std::abs(cur)) + log_scale, cur > 0.0 ? 1.0 : -1.0};
}

SignedLog log_amplitude_prefactor(int m, int k, double theta) {
    if (m < 0 || k < 0) throw std::domain_error("log_amplitude_prefactor: m and k must be >= 0");
    if (theta < 0.0) throw std::domain_error("log_amplitude_prefactor: theta must be >= 0");
    const int lo = std::min(m, k);
    const int s = std::abs(m - k);
    double log_mag = 0.5 * (log_factorial(lo) - log_factorial(std::max(m, k))) - 0.5 * theta * theta;
    if (s > 0) log_mag += (theta > 0.0) ? s * std::log(theta) : -kInf;
    const SignedLog lag = log_assoc_laguerre(lo, s, theta * theta);
    return {log_mag, lag.sign};
}

}  // namespace dgf::specfun
