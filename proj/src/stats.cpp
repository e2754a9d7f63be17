#include "edgefed/stats.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "edgefed/errors.hpp"
#include "edgefed/rng.hpp"

namespace edgefed {

bool NormalDist::valid() const {
    return std::isfinite(mean) && std::isfinite(stddev) && stddev >= 0.0;
}

void check_valid(const NormalDist& d, const char* what) {
    if (!d.valid()) {
        throw ConfigError(std::string(what) + ": distribution needs finite mean and finite stddev >= 0");
    }
}

double normal_cdf(double z) {
    if (!std::isfinite(z)) {
        throw std::domain_error("normal_cdf: argument must be finite");
    }
    return 0.5 * std::erfc(-z * M_SQRT1_2);
}

NormalDist convolve_normals(const NormalDist& a, const NormalDist& b) {
    return {a.mean + b.mean, std::hypot(a.stddev, b.stddev)};
}

double prob_before(const NormalDist& dist, double budget) {
    if (dist.stddev == 0.0) {
        return budget >= dist.mean ? 1.0 : 0.0;
    }
    return normal_cdf((budget - dist.mean) / dist.stddev);
}

double sample_truncated_normal(const NormalDist& dist, double floor, Rng& rng) {
    // A point mass satisfies any floor at or below it.
    const bool hopeless = dist.stddev == 0.0 ? floor > dist.mean
                                             : !(floor < dist.mean + 10.0 * dist.stddev);
    if (hopeless) {
        throw ConfigError("sample_truncated_normal: floor " + std::to_string(floor) +
                          " is beyond mean + 10 stddev");
    }
    if (dist.stddev == 0.0) {
        return dist.mean;
    }
    constexpr int max_attempts = 1000;
    for (int i = 0; i < max_attempts; ++i) {
        const double x = rng.normal(dist.mean, dist.stddev);
        if (x >= floor) {
            return x;
        }
    }
    return floor;
}

double OnlineStat::stddev() const {
    return std::sqrt(variance());
}

OnlineStat welford_update(OnlineStat acc, double x) {
    acc.count += 1;
    const double delta = x - acc.mean;
    acc.mean += delta / static_cast<double>(acc.count);
    acc.m2 += delta * (x - acc.mean);
    return acc;
}

NormalDist to_dist(const OnlineStat& acc) {
    return {acc.mean, acc.stddev()};
}

}  // namespace edgefed
