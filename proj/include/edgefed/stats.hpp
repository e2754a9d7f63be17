#pragma once

#include <cstdint>

namespace edgefed {

class Rng;

/// Normal distribution N(mean, stddev^2) of a duration, in seconds.
struct NormalDist {
    double mean = 0.0;
    double stddev = 0.0;

    double variance() const { return stddev * stddev; }
    bool valid() const;

    friend bool operator==(const NormalDist&, const NormalDist&) = default;
};

/// Throws ConfigError unless `d` is finite with stddev >= 0.
void check_valid(const NormalDist& d, const char* what);

/// Standard normal CDF. Throws std::domain_error on non-finite input.
double normal_cdf(double z);

/// Distribution of A + B for independent A and B.
NormalDist convolve_normals(const NormalDist& a, const NormalDist& b);

/// P(X <= budget) for X ~ dist. A zero-stddev distribution is a step at its mean.
double prob_before(const NormalDist& dist, double budget);

/// Draw from `dist` conditioned on the result being >= floor.
///
/// Rejection sampling with at most 1000 attempts; if every attempt falls below
/// the floor the floor itself is returned. Throws ConfigError when
/// floor >= mean + 10 * stddev (floor > mean for a point mass).
double sample_truncated_normal(const NormalDist& dist, double floor, Rng& rng);

/// Running mean / variance accumulator (Welford).
struct OnlineStat {
    std::int64_t count = 0;
    double mean = 0.0;
    double m2 = 0.0;

    /// Sample variance; 0 when fewer than two observations.
    double variance() const { return count < 2 ? 0.0 : m2 / static_cast<double>(count - 1); }
    double stddev() const;
};

OnlineStat welford_update(OnlineStat acc, double x);

NormalDist to_dist(const OnlineStat& acc);

}  // namespace edgefed
