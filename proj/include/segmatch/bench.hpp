#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace segmatch {

struct BenchReport {
    std::string algorithm;
    std::vector<std::int64_t> sizes;
    /// Wall time per size, best of the repeats.
    std::vector<double> seconds;
    double slope = 0.0;
    int oracle_checks = 0;
    int oracle_agreements = 0;
};

/// Least-squares slope of log(y) against log(x). Throws std::invalid_argument
/// with fewer than 3 points or non-positive values.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

/// max_cov_horizontal on random sets, size n = |A| + |B|. Agreement means
/// cov_eval at the returned translation reproduces the value.
BenchReport bench_coverage(const std::vector<std::int64_t>& sizes, std::uint64_t seed, double eps = 1.0,
                           int repeats = 1);

/// interval_match on batches of 3 random dense instances of about s
/// intervals, each checked against brute_match.
BenchReport bench_interval_match(const std::vector<std::int64_t>& sizes, std::uint64_t seed, int repeats = 1);

}  // namespace segmatch
