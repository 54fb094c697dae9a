#include "segmatch/random_instances.hpp"

#include <algorithm>
#include <cmath>

namespace segmatch::gen {

namespace {

double snapped(double v, double snap) { return snap > 0.0 ? std::round(v / snap) * snap : v; }

}  // namespace

SegmentSet random_segments(Rng& rng, int n_horizontal, int n_vertical, const SegmentSpec& spec) {
    std::uniform_real_distribution<double> coord(spec.lo, spec.hi);
    std::uniform_real_distribution<double> len(0.0, spec.max_len * (spec.hi - spec.lo));
    std::uniform_real_distribution<double> weight(0.5, 2.0);
    auto span = [&](double& a, double& b) {
        a = snapped(coord(rng), spec.snap);
        b = snapped(std::min(spec.hi, a + len(rng)), spec.snap);
        if (b < a) std::swap(a, b);
    };
    SegmentSet s;
    for (int i = 0; i < n_horizontal; ++i) {
        HSeg h;
        h.y = snapped(coord(rng), spec.snap);
        span(h.x_lo, h.x_hi);
        if (spec.weighted) h.weight = weight(rng);
        s.h.push_back(h);
    }
    for (int i = 0; i < n_vertical; ++i) {
        VSeg v;
        v.x = snapped(coord(rng), spec.snap);
        span(v.y_lo, v.y_hi);
        if (spec.weighted) v.weight = weight(rng);
        s.v.push_back(v);
    }
    return s;
}

PolyChain random_chain(Rng& rng, int segments, double step) {
    std::uniform_real_distribution<double> d(-step, step);
    PolyChain c;
    Point p{d(rng), d(rng)};
    c.vertices.push_back(p);
    for (int i = 0; i < segments; ++i) {
        p = p + Point{d(rng), d(rng)};
        c.vertices.push_back(p);
    }
    return c;
}

namespace {

IntervalUnion random_union(Rng& rng, std::int64_t M, int max_parts) {
    std::uniform_int_distribution<int> parts(1, max_parts);
    std::uniform_int_distribution<std::int64_t> at(1, M);
    std::uniform_int_distribution<std::int64_t> len(0, std::max<std::int64_t>(1, M / 6));
    std::vector<Interval> iv;
    for (int k = parts(rng); k > 0; --k) {
        const std::int64_t lo = at(rng);
        iv.push_back({lo, std::min(M, lo + len(rng))});
    }
    return IntervalUnion(std::move(iv));
}

// Random sub-interval of one part of u.
IntervalUnion sub_union(Rng& rng, const IntervalUnion& u) {
    const auto& parts = u.intervals();
    const auto& p = parts[std::uniform_int_distribution<std::size_t>(0, parts.size() - 1)(rng)];
    std::uniform_int_distribution<std::int64_t> pick(p.lo, p.hi);
    std::int64_t a = pick(rng), b = pick(rng);
    if (a > b) std::swap(a, b);
    return IntervalUnion({{a, b}});
}

}  // namespace

IntervalInstance random_interval_instance(Rng& rng, const IntervalSpec& spec) {
    IntervalInstance inst;
    inst.universe = spec.universe;
    std::bernoulli_distribution twild(spec.text_wildcard), tempty(spec.text_empty),
        pwild(spec.pattern_wildcard), plant(0.6), follow(0.9);
    for (int k = 0; k < spec.text_length; ++k) {
        if (twild(rng))
            inst.text.emplace_back(std::nullopt);
        else if (tempty(rng))
            inst.text.emplace_back(IntervalUnion{});
        else
            inst.text.emplace_back(random_union(rng, spec.universe, spec.max_parts));
    }
    const bool planted = plant(rng) && spec.text_length > 0;
    const std::int64_t m = spec.pattern_length, n = spec.text_length;
    const std::int64_t j = std::uniform_int_distribution<std::int64_t>(-(m - 1), std::max<std::int64_t>(n - 1, -(m - 1)))(rng);
    for (std::int64_t i = 0; i < m; ++i) {
        if (pwild(rng)) {
            inst.pattern.emplace_back(std::nullopt);
            continue;
        }
        const std::int64_t k = i + j;
        if (planted && k >= 0 && k < n && follow(rng)) {
            const auto& t = inst.text[static_cast<std::size_t>(k)];
            if (!t || t->empty())
                inst.pattern.emplace_back(t ? Symbol{IntervalUnion{}} : Symbol{random_union(rng, spec.universe, 1)});
            else
                inst.pattern.emplace_back(sub_union(rng, *t));
        } else {
            inst.pattern.emplace_back(random_union(rng, spec.universe, 1));
        }
    }
    return inst;
}

}  // namespace segmatch::gen
