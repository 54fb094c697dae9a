#include "segmatch/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "segmatch/coverage.hpp"
#include "segmatch/interval_match.hpp"
#include "segmatch/random_instances.hpp"

namespace segmatch {

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 3) throw std::invalid_argument("loglog_slope: need at least 3 points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0) || !(y[i] > 0)) throw std::invalid_argument("loglog_slope: values must be positive");
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double den = n * sxx - sx * sx;
    if (den == 0.0) throw std::invalid_argument("loglog_slope: sizes must differ");
    return (n * sxy - sx * sy) / den;
}

namespace {

// Instances timed together per size.
constexpr int kBatch = 3;

template <class F>
double best_time(int repeats, F run) {
    double best = std::numeric_limits<double>::infinity();
    for (int r = 0; r < std::max(repeats, 1); ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        run();
        const auto t1 = std::chrono::steady_clock::now();
        best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
    }
    return best;
}

void check_sizes(const std::vector<std::int64_t>& sizes) {
    if (sizes.size() < 3) throw std::invalid_argument("bench: need at least 3 sizes");
    for (auto s : sizes)
        if (s < 2) throw std::invalid_argument("bench: sizes must be at least 2");
}

void fit(BenchReport& r) {
    std::vector<double> x(r.sizes.begin(), r.sizes.end());
    r.slope = loglog_slope(x, r.seconds);
}

}  // namespace

BenchReport bench_coverage(const std::vector<std::int64_t>& sizes, std::uint64_t seed, double eps, int repeats) {
    check_sizes(sizes);
    BenchReport r;
    r.algorithm = "max_cov_horizontal";
    gen::Rng rng(seed);
    for (auto n : sizes) {
        const int half = static_cast<int>(n / 2);
        const auto A = gen::random_segments(rng, half, 0).h;
        const auto B = gen::random_segments(rng, static_cast<int>(n) - half, 0).h;
        CoverageResult res;
        r.seconds.push_back(best_time(repeats, [&] { res = max_cov_horizontal(A, B, eps); }));
        r.sizes.push_back(n);
        ++r.oracle_checks;
        SegmentSet a{A, {}}, b{B, {}};
        if (std::abs(cov_eval(a, b, eps, res.t_star) - res.value) <= 1e-9 * std::max(1.0, res.value))
            ++r.oracle_agreements;
    }
    fit(r);
    return r;
}

BenchReport bench_interval_match(const std::vector<std::int64_t>& sizes, std::uint64_t seed, int repeats) {
    check_sizes(sizes);
    BenchReport r;
    r.algorithm = "interval_match";
    gen::Rng rng(seed);
    auto instance = [&](std::int64_t s) {
        gen::IntervalSpec spec;
        spec.universe = s;
        spec.text_length = static_cast<int>(std::max<std::int64_t>(s / 2, 2));
        spec.pattern_length = std::max(spec.text_length / 8, 1);
        spec.max_parts = 3;
        return gen::random_interval_instance(rng, spec);
    };
    // One untimed run so library start-up cost is not charged to the first size.
    interval_match(instance(sizes.front()), seed);
    for (auto s : sizes) {
        std::vector<IntervalInstance> batch;
        for (int k = 0; k < kBatch; ++k) batch.push_back(instance(s));
        std::vector<MatchResult> res(batch.size());
        r.seconds.push_back(best_time(repeats, [&] {
            for (std::size_t k = 0; k < batch.size(); ++k) res[k] = interval_match(batch[k], seed);
        }));
        r.sizes.push_back(s);
        for (std::size_t k = 0; k < batch.size(); ++k) {
            ++r.oracle_checks;
            if (res[k] == brute_match(batch[k])) ++r.oracle_agreements;
        }
    }
    fit(r);
    return r;
}

}  // namespace segmatch
