#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "segmatch/coverage.hpp"
#include "segmatch/random_instances.hpp"

using namespace segmatch;

namespace {

SegmentSet hset(std::vector<HSeg> h) { return {std::move(h), {}}; }

bool near(double a, double b, double tol = 1e-9) { return std::abs(a - b) <= tol; }

}  // namespace

TEST_CASE("cov_eval examples") {
    const auto A = hset({{0, 0, 10}});
    CHECK(cov_eval(A, A, 0.5, {0, 0}) == 10.0);
    CHECK(cov_eval(A, hset({{0, 5, 20}}), 0.5, {0, 0}) == doctest::Approx(5.5));
    SegmentSet vert{{}, {VSeg{5, -10, 10}}};
    CHECK(cov_eval(A, vert, 1e6, {0, 0}) == 0.0);
    CHECK_THROWS_AS(cov_eval(A, A, -1, {}), std::invalid_argument);
}

TEST_CASE("cov_eval invariants") {
    gen::Rng rng(17);
    std::uniform_real_distribution<double> u(-20, 20), e(0.0, 4.0);
    for (int it = 0; it < 300; ++it) {
        gen::SegmentSpec spec;
        spec.weighted = true;
        const auto A = gen::random_segments(rng, 4, 3, spec);
        const auto B = gen::random_segments(rng, 5, 4, spec);
        const Translation t{u(rng), u(rng)};
        const double eps = e(rng);
        const double c = cov_eval(A, B, eps, t);
        CHECK(near(c, cov_eval(translate(A, t), B, eps, {0, 0}), 1e-9));
        CHECK(cov_eval(A, B, eps + e(rng), t) >= c - 1e-12);
        double total = 0;
        for (const auto& a : A.h) total += a.weight * a.length();
        for (const auto& a : A.v) total += a.weight * a.length();
        CHECK(c <= total + 1e-9);
    }
    const auto A = hset({{0, 0, 4}});
    CHECK(cov_eval(A, A, 0.0, {}) == 4.0);
}

TEST_CASE("max_cov_horizontal examples") {
    auto r = max_cov_horizontal({{0, 0, 2}}, {{5, 10, 12}}, 0.5);
    CHECK(r.value == doctest::Approx(2.0));
    CHECK(near(cov_eval(hset({{0, 0, 2}}), hset({{5, 10, 12}}), 0.5, r.t_star), r.value));

    r = max_cov_horizontal({{0, 0, 1, 2}}, {{0, 0, 1}}, 0.1);
    CHECK(r.value == doctest::Approx(2.0));

    const std::vector<HSeg> A{{0, 0, 4}}, B{{0, 0, 1}, {0, 3, 4}};
    r = max_cov_horizontal(A, B, 0.25);
    const auto g = oracle::candidate_grid_max(hset(A), hset(B), 0.25);
    CHECK(near(r.value, g.value));
    CHECK(near(r.value, 2.5));
    CHECK(near(cov_eval(hset(A), hset(B), 0.25, r.t_star), r.value));

    CHECK_THROWS_AS(max_cov_horizontal({}, B, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(max_cov_horizontal(A, {}, 0.1), std::invalid_argument);
}

TEST_CASE("max_cov_horizontal matches the candidate grid") {
    gen::Rng rng(101);
    std::uniform_int_distribution<int> n(1, 8);
    std::uniform_real_distribution<double> e(0.1, 5.0);
    for (int it = 0; it < 150; ++it) {
        gen::SegmentSpec spec;
        spec.snap = it % 3 == 0 ? 1.0 : 0.0;
        spec.weighted = it % 2 == 0;
        spec.hi = it % 4 == 0 ? 20.0 : 100.0;
        const auto A = gen::random_segments(rng, n(rng), 0, spec);
        const auto B = gen::random_segments(rng, n(rng), 0, spec);
        const double eps = spec.snap > 0 ? std::round(e(rng) * 2) / 2 : e(rng);
        const auto r = max_cov_horizontal(A.h, B.h, eps);
        const auto g = oracle::candidate_grid_max(A, B, eps);
        INFO("iteration " << it);
        REQUIRE(near(r.value, g.value));
        REQUIRE(near(cov_eval(A, B, eps, r.t_star), r.value));
    }
}

TEST_CASE("weight scaling scales the optimum") {
    gen::Rng rng(5);
    for (int it = 0; it < 30; ++it) {
        auto A = gen::random_segments(rng, 5, 0);
        const auto B = gen::random_segments(rng, 5, 0);
        const auto r1 = max_cov_horizontal(A.h, B.h, 2.0);
        for (auto& a : A.h) a.weight *= 3.0;
        const auto r3 = max_cov_horizontal(A.h, B.h, 2.0);
        CHECK(near(r3.value, 3.0 * r1.value, 1e-9 * (1 + r3.value)));
        CHECK(near(cov_eval(A, B, 2.0, r1.t_star), r3.value, 1e-9 * (1 + r3.value)));
    }
}

TEST_CASE("max_cov_axis_parallel examples") {
    SegmentSet L{{HSeg{0, 0, 3}}, {VSeg{0, 0, 2}}};
    auto r = max_cov_axis_parallel(L, L, 0.5);
    CHECK(r.value == doctest::Approx(5.0));

    SegmentSet a{{}, {VSeg{0, 0, 2}}}, b{{}, {VSeg{4, 7, 8}}};
    r = max_cov_axis_parallel(a, b, 0.5);
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-12));
    // Without inflation only the shorter length can be covered.
    r = max_cov_axis_parallel(a, b, 0.0);
    CHECK(r.value == doctest::Approx(1.0));
}

TEST_CASE("max_cov_axis_parallel matches the candidate grid") {
    gen::Rng rng(202);
    std::uniform_int_distribution<int> n(0, 6);
    std::uniform_real_distribution<double> e(0.1, 5.0);
    for (int it = 0; it < 120; ++it) {
        gen::SegmentSpec spec;
        spec.snap = it % 3 == 0 ? 1.0 : 0.0;
        spec.weighted = it % 2 == 1;
        spec.hi = it % 4 == 0 ? 20.0 : 100.0;
        const auto A = gen::random_segments(rng, n(rng), n(rng) + 1, spec);
        const auto B = gen::random_segments(rng, n(rng), n(rng) + 1, spec);
        const double eps = spec.snap > 0 ? std::round(e(rng) * 2) / 2 : e(rng);
        const auto r = max_cov_axis_parallel(A, B, eps);
        const auto g = oracle::candidate_grid_max(A, B, eps);
        INFO("iteration " << it);
        REQUIRE(near(r.value, g.value));
        REQUIRE(near(cov_eval(A, B, eps, r.t_star), r.value));
    }
}

TEST_CASE("union decomposition") {
    auto d = decompose_union({{0, 2, 0, 1}});
    CHECK(d.pieces.size() == 1);
    d = decompose_union({{0, 1, 0, 1}, {5, 6, 3, 4}});
    CHECK(d.pieces.size() == 2);
    // Two overlapping squares: bottom slab, shared band, top slab.
    d = decompose_union({{0, 2, 0, 2}, {1, 3, 1, 3}});
    CHECK(d.pieces.size() == 3);
}

TEST_CASE("layers translate the decomposition") {
    const std::vector<Rect> bplus{{0, 2, 0, 1}, {1, 3, 0.5, 2}};
    auto layers = build_layers({{1, 1}, {0, 0}}, bplus, Orientation::Horizontal);
    REQUIRE(layers.size() == 2);
    gen::Rng rng(9);
    std::uniform_real_distribution<double> u(-3, 4);
    for (const auto& layer : layers) {
        for (int it = 0; it < 2000; ++it) {
            Point t{u(rng), u(rng)};
            Point q = t + layer.endpoint;
            bool in_b = false;
            for (const auto& r : bplus) in_b = in_b || r.contains(q);
            int hits = 0;
            for (const auto& p : layer.pieces) {
                const bool y_ok = (p.lo_open ? t.y > p.rect.y_lo : t.y >= p.rect.y_lo) &&
                                  (p.hi_open ? t.y < p.rect.y_hi : t.y <= p.rect.y_hi);
                if (y_ok && t.x >= p.rect.x_lo && t.x <= p.rect.x_hi) ++hits;
            }
            CHECK(in_b == (hits > 0));
            CHECK(hits <= 1);
        }
    }
    auto vlayers = build_layers({{0, 0}}, bplus, Orientation::Vertical);
    for (int it = 0; it < 2000; ++it) {
        Point t{u(rng), u(rng)};
        bool in_b = false;
        for (const auto& r : bplus) in_b = in_b || r.contains(t);
        int hits = 0;
        for (const auto& p : vlayers[0].pieces) {
            const bool x_ok = (p.lo_open ? t.x > p.rect.x_lo : t.x >= p.rect.x_lo) &&
                              (p.hi_open ? t.x < p.rect.x_hi : t.x <= p.rect.x_hi);
            if (x_ok && t.y >= p.rect.y_lo && t.y <= p.rect.y_hi) ++hits;
        }
        CHECK(in_b == (hits > 0));
    }
}

TEST_CASE("gen_lower_bound shape") {
    auto lb = gen_lower_bound(2);
    CHECK(lb.eps == 0.5);
    int b1_points = 0;
    for (const auto& b : lb.B.h)
        if (b.length() == 0 && b.y > -4) ++b1_points;
    CHECK(b1_points == 4);
    int a1 = 0;
    for (const auto& a : lb.A.h)
        if (a.length() == 4.0) ++a1;
    CHECK(a1 == 2);

    lb = gen_lower_bound(3);
    std::vector<double> b2;
    for (const auto& b : lb.B.h)
        if (b.y == -5.0) b2.push_back(b.x_lo);
    REQUIRE(b2.size() == 3);
    for (int i = 1; i <= 3; ++i) CHECK(b2[i - 1] == doctest::Approx(-(1.0 + 1.0 / 9.0) * i));
    for (int n = 2; n <= 6; ++n) {
        lb = gen_lower_bound(n);
        CHECK(lb.A.v.empty());
        CHECK(lb.B.v.empty());
    }
    CHECK_THROWS_AS(gen_lower_bound(1), std::invalid_argument);
}

namespace {

// Corners of the union outline on the compressed grid of rectangle bounds.
int outline_vertices(const std::vector<Rect>& rects) {
    std::vector<double> xs, ys;
    for (const auto& r : rects) {
        xs.insert(xs.end(), {r.x_lo, r.x_hi});
        ys.insert(ys.end(), {r.y_lo, r.y_hi});
    }
    xs = oracle::uniq(xs);
    ys = oracle::uniq(ys);
    auto filled = [&](long i, long j) {
        if (i < 0 || j < 0 || i + 1 >= long(xs.size()) || j + 1 >= long(ys.size())) return false;
        const Point c{(xs[i] + xs[i + 1]) / 2, (ys[j] + ys[j + 1]) / 2};
        for (const auto& r : rects)
            if (r.contains(c)) return true;
        return false;
    };
    int count = 0;
    for (long i = 0; i < long(xs.size()); ++i)
        for (long j = 0; j < long(ys.size()); ++j) {
            const bool a = filled(i - 1, j - 1), b = filled(i, j - 1), c = filled(i - 1, j), d = filled(i, j);
            const int k = a + b + c + d;
            if (k == 1 || k == 3 || (k == 2 && a == d)) ++count;
        }
    return count;
}

}  // namespace

TEST_CASE("decomposition outline matches the rectangle union") {
    gen::Rng rng(33);
    for (int it = 0; it < 200; ++it) {
        const auto B = gen::random_segments(rng, 6, 0, {0, 20, 0.35, it % 2 ? 1.0 : 0.0});
        const auto rects = inflated(B, 1.5, Orientation::Horizontal);
        const auto dec = decompose_union(rects);
        std::vector<Rect> pieces;
        for (const auto& p : dec.pieces) pieces.push_back({p.x_lo, p.x_hi, dec.y_lo(p), dec.y_hi(p)});
        CHECK(outline_vertices(pieces) == outline_vertices(rects));
    }
}
