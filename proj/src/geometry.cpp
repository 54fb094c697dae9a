#include "segmatch/geometry.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace segmatch {

Point PolyChain::at(double r) const {
    const auto n = segments();
    if (n == 0) return vertices.empty() ? Point{} : vertices.front();
    r = std::clamp(r, 0.0, static_cast<double>(n));
    auto i = static_cast<std::size_t>(r);
    if (i >= n) i = n - 1;
    const double lambda = r - static_cast<double>(i);
    return (1.0 - lambda) * vertices[i] + lambda * vertices[i + 1];
}

double linf_dist(Point p, Point q) {
    return std::max(std::abs(p.x - q.x), std::abs(p.y - q.y));
}

double norm_dist(Point p, Point q, Norm norm) {
    const double dx = p.x - q.x;
    const double dy = p.y - q.y;
    switch (norm) {
        case Norm::L2: return std::hypot(dx, dy);
        case Norm::Linf: return std::max(std::abs(dx), std::abs(dy));
        case Norm::L1: return std::abs(dx) + std::abs(dy);
    }
    return 0.0;
}

HSeg translate(const HSeg& s, Translation t) {
    return {s.y + t.dy, s.x_lo + t.dx, s.x_hi + t.dx, s.weight};
}

VSeg translate(const VSeg& s, Translation t) {
    return {s.x + t.dx, s.y_lo + t.dy, s.y_hi + t.dy, s.weight};
}

SegmentSet translate(const SegmentSet& s, Translation t) {
    SegmentSet out;
    out.h.reserve(s.h.size());
    out.v.reserve(s.v.size());
    for (const auto& h : s.h) out.h.push_back(translate(h, t));
    for (const auto& v : s.v) out.v.push_back(translate(v, t));
    return out;
}

PolyChain translate(const PolyChain& c, Translation t) {
    PolyChain out = c;
    for (auto& p : out.vertices) p = p + Point{t.dx, t.dy};
    return out;
}

namespace {

void check_eps(double eps) {
    if (!(eps >= 0.0)) throw std::invalid_argument("inflate: eps must be >= 0");
}

double interval_gap(double v, double lo, double hi) {
    return std::max({lo - v, 0.0, v - hi});
}

}  // namespace

Rect inflate(const HSeg& s, double eps) {
    check_eps(eps);
    return {s.x_lo - eps, s.x_hi + eps, s.y - eps, s.y + eps};
}

Rect inflate(const VSeg& s, double eps) {
    check_eps(eps);
    return {s.x - eps, s.x + eps, s.y_lo - eps, s.y_hi + eps};
}

double linf_dist(Point p, const HSeg& s) {
    return std::max(std::abs(p.y - s.y), interval_gap(p.x, s.x_lo, s.x_hi));
}

double linf_dist(Point p, const VSeg& s) {
    return std::max(std::abs(p.x - s.x), interval_gap(p.y, s.y_lo, s.y_hi));
}

void validate(const SegmentSet& s) {
    for (std::size_t i = 0; i < s.h.size(); ++i) {
        const auto& h = s.h[i];
        const std::string where = "horizontal[" + std::to_string(i) + "]";
        if (!std::isfinite(h.y) || !std::isfinite(h.x_lo) || !std::isfinite(h.x_hi))
            throw std::invalid_argument(where + ": non-finite coordinate");
        if (h.x_lo > h.x_hi) throw std::invalid_argument(where + ": x0 > x1");
        if (!std::isfinite(h.weight) || h.weight < 0.0)
            throw std::invalid_argument(where + ": weight must be finite and >= 0");
    }
    for (std::size_t i = 0; i < s.v.size(); ++i) {
        const auto& v = s.v[i];
        const std::string where = "vertical[" + std::to_string(i) + "]";
        if (!std::isfinite(v.x) || !std::isfinite(v.y_lo) || !std::isfinite(v.y_hi))
            throw std::invalid_argument(where + ": non-finite coordinate");
        if (v.y_lo > v.y_hi) throw std::invalid_argument(where + ": y0 > y1");
        if (!std::isfinite(v.weight) || v.weight < 0.0)
            throw std::invalid_argument(where + ": weight must be finite and >= 0");
    }
}

void validate(const PolyChain& c) {
    if (c.vertices.size() < 2)
        throw std::invalid_argument("vertices: a chain needs at least 2 vertices");
    for (std::size_t i = 0; i < c.vertices.size(); ++i) {
        if (!std::isfinite(c.vertices[i].x) || !std::isfinite(c.vertices[i].y))
            throw std::invalid_argument("vertices[" + std::to_string(i) +
                                        "]: non-finite coordinate");
    }
}

}  // namespace segmatch
