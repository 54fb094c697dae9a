// Acceptance run: one PASS/FAIL line per criterion, exit 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "segmatch/bench.hpp"
#include "segmatch/coverage.hpp"
#include "segmatch/frechet.hpp"
#include "segmatch/hausdorff.hpp"
#include "segmatch/interval_match.hpp"
#include "segmatch/kinetic_envelope.hpp"
#include "segmatch/random_instances.hpp"

using namespace segmatch;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
    bool pass = false;
    std::string detail;
};

// ---- coverage -------------------------------------------------------------

Outcome coverage_horizontal() {
    gen::Rng rng(1001);
    std::uniform_int_distribution<int> n(1, 12);
    std::uniform_real_distribution<double> e(0.1, 5.0);
    double worst = 0.0, algo_seconds = 0.0;
    int bad = 0;
    for (int it = 0; it < 500; ++it) {
        gen::SegmentSpec spec;
        spec.snap = it % 3 == 0 ? 1.0 : 0.0;
        spec.weighted = it % 2 == 0;
        const auto A = gen::random_segments(rng, n(rng), 0, spec);
        const auto B = gen::random_segments(rng, n(rng), 0, spec);
        const double eps = spec.snap > 0 ? std::round(e(rng) * 2) / 2 : e(rng);
        const auto t0 = Clock::now();
        const auto r = max_cov_horizontal(A.h, B.h, eps);
        algo_seconds += seconds_since(t0);
        const double diff = std::abs(r.value - oracle::candidate_grid_max(A, B, eps).value);
        worst = std::max(worst, diff);
        if (diff > 1e-9) ++bad;
    }
    std::ostringstream d;
    d << "500 instances, mismatches " << bad << ", max |diff| " << worst << ", sweep time " << algo_seconds << " s";
    return {bad == 0 && algo_seconds < 60.0, d.str()};
}

Outcome coverage_axis_parallel() {
    gen::Rng rng(1002);
    std::uniform_int_distribution<int> n(0, 8);
    std::uniform_real_distribution<double> e(0.1, 5.0);
    double worst = 0.0;
    int bad = 0;
    for (int it = 0; it < 200; ++it) {
        gen::SegmentSpec spec;
        spec.snap = it % 3 == 0 ? 1.0 : 0.0;
        spec.weighted = it % 2 == 1;
        const int ah = n(rng), bh = n(rng);
        const auto A = gen::random_segments(rng, ah, std::uniform_int_distribution<int>(ah == 0, 8)(rng), spec);
        const auto B = gen::random_segments(rng, bh, std::uniform_int_distribution<int>(bh == 0, 8)(rng), spec);
        const double eps = spec.snap > 0 ? std::round(e(rng) * 2) / 2 : e(rng);
        const double diff =
            std::abs(max_cov_axis_parallel(A, B, eps).value - oracle::candidate_grid_max(A, B, eps).value);
        worst = std::max(worst, diff);
        if (diff > 1e-9) ++bad;
    }
    std::ostringstream d;
    d << "200 instances, mismatches " << bad << ", max |diff| " << worst;
    return {bad == 0, d.str()};
}

// ---- kinetic envelope -----------------------------------------------------

// Returns the number of queries and adds mismatches to `bad`.
int kinetic_sequence(std::uint64_t seed, int ops, int max_live, int& bad, double& worst) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coord(0, 50), height(-5, 10), slope(-2, 2), step(0, 1.5);
    std::uniform_int_distribution<int> grid(0, 40);
    std::bernoulli_distribution moving(0.5), snap(0.4), sloped(0.3);
    EnvelopeStructure env(3.0);
    std::vector<oracle::LiveSegment> ref;
    std::vector<EnvelopeStructure::Handle> handles;
    int live = 0, queries = 0;
    for (int op = 0; op < ops; ++op) {
        const int kind = std::uniform_int_distribution<int>(0, 9)(rng);
        if ((kind < 5 && live < max_live) || live == 0) {
            double a = snap(rng) ? grid(rng) : coord(rng);
            double b = snap(rng) ? grid(rng) : coord(rng);
            if (a > b) std::swap(a, b);
            PLSegment s{a, b, moving(rng) ? slope(rng) : 0.0, height(rng), sloped(rng) ? slope(rng) : 0.0};
            handles.push_back(env.insert(s));
            ref.push_back({s, true});
            ++live;
        } else if (kind < 8) {
            std::vector<std::size_t> alive;
            for (std::size_t i = 0; i < ref.size(); ++i)
                if (ref[i].live) alive.push_back(i);
            const auto pick = alive[std::uniform_int_distribution<std::size_t>(0, alive.size() - 1)(rng)];
            env.erase(handles[pick]);
            ref[pick].live = false;
            --live;
        } else {
            env.advance_time(step(rng));
        }
        const double diff = std::abs(env.query_max().value - oracle::envelope_max(ref, env.tau()));
        worst = std::max(worst, diff);
        if (diff > 1e-9) ++bad;
        ++queries;
    }
    return queries;
}

Outcome kinetic() {
    int bad = 0, queries = 0;
    double worst = 0.0;
    for (std::uint64_t seed = 1; seed <= 1000; ++seed) queries += kinetic_sequence(seed, 150, 64, bad, worst);
    std::ostringstream d;
    d << "1000 sequences, " << queries << " queries, mismatches " << bad << ", max |diff| " << worst;
    return {bad == 0, d.str()};
}

// ---- interval matching ----------------------------------------------------

IntervalUnion U(std::vector<Interval> v) { return IntervalUnion(std::move(v)); }

SparseInstance random_sparse(gen::Rng& rng, std::int64_t M, std::int64_t n, std::int64_t m, int text_entries,
                             int pattern_entries, bool plant) {
    std::uniform_int_distribution<std::int64_t> pos_t(0, n - 1), pos_p(0, m - 1), coord(1, M);
    std::uniform_int_distribution<std::int64_t> len(0, std::max<std::int64_t>(1, M / 50));
    std::bernoulli_distribution wild(0.05);
    auto rand_union = [&] {
        std::vector<Interval> v;
        for (int k = std::uniform_int_distribution<int>(1, 3)(rng); k > 0; --k) {
            const auto lo = coord(rng);
            v.push_back({lo, std::min(M, lo + len(rng))});
        }
        return U(std::move(v));
    };
    std::map<std::int64_t, Symbol> text, pattern;
    for (int k = 0; k < text_entries; ++k) text[pos_t(rng)] = wild(rng) ? Symbol{} : Symbol{rand_union()};
    const std::int64_t shift = std::uniform_int_distribution<std::int64_t>(0, std::max<std::int64_t>(0, n - m))(rng);
    for (int k = 0; k < pattern_entries; ++k) {
        const auto i = pos_p(rng);
        if (plant && i + shift < n) {
            auto& t = text[i + shift];
            if (!t) t = rand_union();
            const auto& part = t->intervals().front();
            pattern[i] = U({{part.lo, part.lo + (part.hi - part.lo) / 2}});
        } else {
            pattern[i] = rand_union();
        }
    }
    SparseInstance s;
    s.universe = M;
    s.pattern_length = m;
    s.text_length = n;
    for (auto& [p, sym] : pattern) s.pattern.push_back({p, sym});
    for (auto& [p, sym] : text) s.text.push_back({p, sym});
    return s;
}

Outcome interval_matching() {
    gen::Rng rng(1004);
    int dense_bad = 0, dense = 0;
    std::size_t max_size = 0;
    while (dense < 300) {
        gen::IntervalSpec spec;
        spec.universe = std::uniform_int_distribution<int>(1, 1000)(rng);
        spec.pattern_length = std::uniform_int_distribution<int>(1, 30)(rng);
        spec.text_length = std::uniform_int_distribution<int>(1, 80)(rng);
        spec.max_parts = std::uniform_int_distribution<int>(1, 3)(rng);
        spec.text_empty = 0.05;
        const auto inst = gen::random_interval_instance(rng, spec);
        if (inst.size() > 200) continue;
        ++dense;
        max_size = std::max(max_size, inst.size());
        if (interval_match(inst) != brute_match(inst)) ++dense_bad;
    }

    int sparse_bad = 0, missed = 0, with_match = 0;
    for (int it = 0; it < 200; ++it) {
        const std::int64_t M = std::uniform_int_distribution<std::int64_t>(2, 1000000)(rng);
        const std::int64_t n = std::uniform_int_distribution<std::int64_t>(50, 3000)(rng);
        const std::int64_t m = std::uniform_int_distribution<std::int64_t>(1, 200)(rng);
        const auto s = random_sparse(rng, M, n, m, 25, 4, it % 4 != 0);
        auto inst = oracle::expand(s);
        const auto expect = brute_match(inst);
        if (!expect.shifts.empty()) ++with_match;
        inst.sparse = true;
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            if (interval_match(inst, seed) != expect) ++sparse_bad;
            const auto red = sparse_to_dense(s, seed);
            if (!std::includes(red.candidates.begin(), red.candidates.end(), expect.shifts.begin(),
                               expect.shifts.end()))
                ++missed;
        }
    }

    // Pre-verification rate: shifts kept by folding that fail exact checking,
    // over all anchored shifts that fail it.
    std::size_t false_kept = 0, negatives = 0;
    int trials_with_fp = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const std::int64_t M = std::uniform_int_distribution<std::int64_t>(1000, 1000000)(rng);
        const auto s = random_sparse(rng, M, 5000, 100, 12, 4, false);
        const auto red = sparse_to_dense(s, static_cast<std::uint64_t>(trial) + 1);
        const auto kept = red.candidates.size() - red.result.shifts.size();
        false_kept += kept;
        negatives += red.anchored.size() - red.result.shifts.size();
        trials_with_fp += kept > 0;
    }
    const double rate = negatives ? static_cast<double>(false_kept) / static_cast<double>(negatives) : 0.0;
    std::ostringstream d;
    d << "dense " << dense << " (max s " << max_size << ") mismatches " << dense_bad << "; sparse 200 x 5 seeds ("
      << with_match << " with a match) mismatches " << sparse_bad << ", false negatives " << missed
      << "; false-positive rate " << rate << " (" << false_kept << "/" << negatives << " shifts, " << trials_with_fp
      << "/1000 trials)";
    return {dense_bad == 0 && sparse_bad == 0 && missed == 0 && rate <= 1e-3, d.str()};
}

// ---- hausdorff ------------------------------------------------------------

Outcome hausdorff() {
    gen::Rng rng(1005);
    std::uniform_int_distribution<int> n(1, 10);
    int bad = 0;
    double worst_ratio = 0.0;
    for (int it = 0; it < 200; ++it) {
        gen::SegmentSpec spec;
        spec.hi = 20.0;
        spec.snap = it % 4 == 0 ? 1.0 : 0.0;
        const auto A = gen::random_segments(rng, n(rng), 0, spec).h;
        const auto B = gen::random_segments(rng, n(rng), 0, spec).h;
        const double exact = min_vtrans_exact(A, B).rho;
        const double approx = min_vtrans_approx(A, B, 0.1, static_cast<std::uint64_t>(it) + 1).rho;
        if (!(exact <= approx + 1e-12 && approx <= 1.1 * exact + 1e-9)) ++bad;
        if (exact > 0) worst_ratio = std::max(worst_ratio, approx / exact);
    }
    std::ostringstream d;
    d << "200 instances, violations " << bad << ", max approx/exact " << worst_ratio;
    return {bad == 0, d.str()};
}

// ---- frechet --------------------------------------------------------------

PolyChain random_chain(gen::Rng& rng, int max_segments) {
    return gen::random_chain(rng, std::uniform_int_distribution<int>(1, max_segments)(rng));
}

Outcome frechet_graph() {
    gen::Rng rng(1006);
    std::uniform_real_distribution<double> scale(0.5, 1.5);
    int cases = 0, bad = 0, yes = 0;
    while (cases < 1000) {
        const auto P = random_chain(rng, 8), Q = random_chain(rng, 8);
        const double v = frechet_value(P, Q, 1e-10);
        const double eps = v * scale(rng);
        if (std::abs(eps - v) < 1e-6) continue;
        ++cases;
        const bool dp = decide_frechet(P, Q, eps);
        yes += dp;
        if (graph_decide(P, Q, eps) != dp) ++bad;
    }
    std::ostringstream d;
    d << "1000 cases (" << yes << " positive), disagreements " << bad;
    return {bad == 0, d.str()};
}

Outcome sandwich() {
    gen::Rng rng(1007);
    const double tol = 1e-6;
    int bad = 0;
    for (int it = 0; it < 200; ++it) {
        const auto P = random_chain(rng, 6), Q = random_chain(rng, 6);
        const double strong = frechet_value(P, Q, tol);
        const double weak = weak_frechet_value(P, Q, tol);
        const double dh = oracle::sampled_chain_hausdorff(P, Q, 100);
        if (!(dh <= weak + tol && weak <= strong + tol)) ++bad;
    }
    std::ostringstream d;
    d << "200 pairs, violations " << bad;
    return {bad == 0, d.str()};
}

struct TranslationCase {
    PolyChain P, Q;
    double anchor_value = 0.0;
    oracle::GridMin grid;
};

std::vector<TranslationCase> translation_cases() {
    gen::Rng rng(1008);
    const double tol = 1e-6;
    std::vector<TranslationCase> out;
    for (int it = 0; it < 100; ++it) {
        TranslationCase c{random_chain(rng, 6), random_chain(rng, 6)};
        const auto anchor = translate_anchor(c.P, c.Q);
        c.anchor_value = frechet_value(c.P, translate(c.Q, anchor), tol);
        c.grid = oracle::grid_min(
            c.Q, anchor, c.anchor_value, 161, [&](const PolyChain& m, double e) { return decide_frechet(c.P, m, e); },
            [&](const PolyChain& m) { return frechet_value(c.P, m, tol); });
        out.push_back(std::move(c));
    }
    return out;
}

Outcome anchor_bound(const std::vector<TranslationCase>& cases) {
    int bad = 0;
    double worst = 0.0;
    for (const auto& c : cases) {
        if (c.anchor_value > 2 * c.grid.value + 1e-6) ++bad;
        if (c.grid.value > 0) worst = std::max(worst, c.anchor_value / c.grid.value);
    }
    std::ostringstream d;
    d << cases.size() << " pairs, violations " << bad << ", max anchor/grid " << worst;
    return {bad == 0, d.str()};
}

Outcome translation_approx(const std::vector<TranslationCase>& cases) {
    int bad = 0;
    double worst = 0.0;
    for (const auto& c : cases) {
        const auto r = min_frechet_translation_approx(c.P, c.Q, 0.25, 1e-6);
        if (r.value > 1.25 * c.grid.value + 1e-6) ++bad;
        if (c.grid.value > 0) worst = std::max(worst, r.value / c.grid.value);
    }
    std::ostringstream d;
    d << cases.size() << " pairs, beta 0.25, violations " << bad << ", max value/grid " << worst;
    return {bad == 0, d.str()};
}

// ---- lower-bound family ---------------------------------------------------

Outcome lower_bound() {
    auto components = [](int n, double r) {
        const auto inst = gen_lower_bound(n);
        return oracle::feasible_components(inst.A.h, inst.B.h, r, 1.0 / (8.0 * n * n));
    };
    const double need = 0.5 * std::pow(4.0 / 3.0, 4);
    const int c3 = components(3, 1.0), c4 = components(4, 1.0);
    const double ratio = static_cast<double>(c4) / c3;
    const double eps = gen_lower_bound(3).eps;
    const int e3 = components(3, eps), e4 = components(4, eps);
    std::ostringstream d;
    d << "threshold 1: components " << c3 << " -> " << c4 << ", ratio " << ratio << " (need " << need
      << "); at the instance eps " << eps << ": " << e3 << " -> " << e4 << ", ratio "
      << static_cast<double>(e4) / e3;
    return {ratio >= need, d.str()};
}

// ---- slopes ---------------------------------------------------------------

Outcome slopes() {
    const auto t0 = Clock::now();
    const auto cov = bench_coverage({200, 400, 800}, 7);
    const double cov_seconds = seconds_since(t0);
    const auto t1 = Clock::now();
    const auto im = bench_interval_match({2048, 8192, 32768}, 7);
    const double im_seconds = seconds_since(t1);
    const bool agree = cov.oracle_agreements == cov.oracle_checks && im.oracle_agreements == im.oracle_checks;
    std::ostringstream d;
    d << "coverage slope " << cov.slope << " (" << cov_seconds << " s), interval_match slope " << im.slope << " ("
      << im_seconds << " s), oracle agreement " << (agree ? "yes" : "no");
    return {cov.slope <= 2.4 && im.slope <= 1.8 && cov_seconds < 300 && im_seconds < 300 && agree, d.str()};
}

}  // namespace

int main() {
    std::vector<TranslationCase> cases;
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"coverage sweep vs candidate grid", coverage_horizontal},
        {"axis-parallel sweep vs candidate grid", coverage_axis_parallel},
        {"kinetic envelope vs explicit sum", kinetic},
        {"interval matching exactness", interval_matching},
        {"hausdorff vertical translation", hausdorff},
        {"frechet graph vs interval DP", frechet_graph},
        {"metric sandwich", sandwich},
        {"anchor within twice the grid optimum",
         [&] {
             cases = translation_cases();
             return anchor_bound(cases);
         }},
        {"translation approximation", [&] { return translation_approx(cases); }},
        {"lower-bound component growth", lower_bound},
        {"empirical slopes", slopes},
    };
    int failed = 0, index = 0;
    for (const auto& [name, run] : criteria) {
        ++index;
        const auto t0 = Clock::now();
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += !o.pass;
        std::printf("%-4s criterion %2d %s: %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", index, name, o.detail.c_str(),
                    seconds_since(t0));
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", index - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
