#include "segmatch/coverage.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <limits>
#include <tuple>

#include "segmatch/kinetic_envelope.hpp"
#include "segmatch/kinetic_tree.hpp"

namespace segmatch {

namespace {

struct Span {
    double lo, hi;
};

double union_length(std::vector<Span>& spans) {
    std::sort(spans.begin(), spans.end(), [](const Span& a, const Span& b) { return a.lo < b.lo; });
    double total = 0.0, cur_lo = 0.0, cur_hi = 0.0;
    bool open = false;
    for (const auto& s : spans) {
        if (open && s.lo <= cur_hi) {
            cur_hi = std::max(cur_hi, s.hi);
            continue;
        }
        if (open) total += cur_hi - cur_lo;
        cur_lo = s.lo, cur_hi = s.hi, open = true;
    }
    if (open) total += cur_hi - cur_lo;
    return total;
}

// Covered length of [l, r] at row y by rows (row, lo, hi) inflated by eps.
template <class Rows>
double covered(double y, double l, double r, const Rows& rows, double eps, std::vector<Span>& scratch) {
    scratch.clear();
    for (const auto& [row, lo, hi] : rows) {
        if (std::abs(y - row) > eps + kGeomTol) continue;
        const double a = std::max(l, lo - eps), b = std::min(r, hi + eps);
        if (a <= b) scratch.push_back({a, b});
    }
    return union_length(scratch);
}

void check_eps(double eps) {
    if (!(eps >= 0.0) || !std::isfinite(eps)) throw std::invalid_argument("eps: must be finite and >= 0");
}

}  // namespace

double cov_eval(const SegmentSet& A, const SegmentSet& B, double eps, Translation t) {
    check_eps(eps);
    std::vector<std::tuple<double, double, double>> hrows, vrows;
    for (const auto& b : B.h) hrows.emplace_back(b.y, b.x_lo, b.x_hi);
    for (const auto& b : B.v) vrows.emplace_back(b.x, b.y_lo, b.y_hi);
    std::vector<Span> scratch;
    double total = 0.0;
    for (const auto& a : A.h)
        total += a.weight * covered(a.y + t.dy, a.x_lo + t.dx, a.x_hi + t.dx, hrows, eps, scratch);
    for (const auto& a : A.v)
        total += a.weight * covered(a.x + t.dx, a.y_lo + t.dy, a.y_hi + t.dy, vrows, eps, scratch);
    return total;
}

namespace {

// Sorted values merged into runs whose consecutive gaps are <= kGeomTol.
struct MergedValues {
    std::vector<double> lo, hi;

    static MergedValues from(std::vector<double> v) {
        std::sort(v.begin(), v.end());
        MergedValues m;
        for (double x : v) {
            if (!m.hi.empty() && x - m.hi.back() <= kGeomTol) {
                m.hi.back() = x;
            } else {
                m.lo.push_back(x);
                m.hi.push_back(x);
            }
        }
        return m;
    }

    std::size_t size() const { return lo.size(); }

    // Run whose span is nearest to x.
    std::size_t index(double x) const {
        auto it = std::upper_bound(lo.begin(), lo.end(), x);
        if (it == lo.begin()) return 0;
        auto k = static_cast<std::size_t>(it - lo.begin()) - 1;
        if (x > hi[k] && k + 1 < lo.size() && lo[k + 1] - x < x - hi[k]) ++k;
        return k;
    }
};

}  // namespace

UnionDecomposition decompose_union(const std::vector<Rect>& rects) {
    UnionDecomposition out;
    if (rects.empty()) return out;
    std::vector<double> ys;
    for (const auto& r : rects) {
        ys.push_back(r.y_lo);
        ys.push_back(r.y_hi);
    }
    const MergedValues levels = MergedValues::from(ys);
    out.levels = levels.lo;
    const std::size_t K = levels.size();
    std::vector<std::size_t> glo(rects.size()), ghi(rects.size());
    for (std::size_t i = 0; i < rects.size(); ++i) {
        glo[i] = levels.index(rects[i].y_lo);
        ghi[i] = levels.index(rects[i].y_hi);
    }

    struct Open {
        double lo, hi;
        std::size_t start;
    };
    std::vector<Open> open, next;
    std::vector<Span> comps;
    for (std::size_t region = 0; region + 1 < 2 * K; ++region) {
        const std::size_t k = region / 2;
        const bool slab = region % 2 == 1;
        std::vector<Span> spans;
        for (std::size_t i = 0; i < rects.size(); ++i) {
            const bool hit = slab ? (glo[i] <= k && ghi[i] >= k + 1) : (glo[i] <= k && k <= ghi[i]);
            if (hit) spans.push_back({rects[i].x_lo, rects[i].x_hi});
        }
        std::sort(spans.begin(), spans.end(), [](const Span& a, const Span& b) { return a.lo < b.lo; });
        comps.clear();
        for (const auto& s : spans) {
            if (!comps.empty() && s.lo <= comps.back().hi)
                comps.back().hi = std::max(comps.back().hi, s.hi);
            else
                comps.push_back(s);
        }
        next.clear();
        std::size_t p = 0;
        for (const auto& c : comps) {
            while (p < open.size() && open[p].lo < c.lo) {
                out.pieces.push_back({open[p].lo, open[p].hi, open[p].start, region - 1});
                ++p;
            }
            if (p < open.size() && open[p].lo == c.lo && open[p].hi == c.hi) {
                next.push_back(open[p]);
                ++p;
            } else {
                next.push_back({c.lo, c.hi, region});
            }
        }
        for (; p < open.size(); ++p) out.pieces.push_back({open[p].lo, open[p].hi, open[p].start, region - 1});
        open.swap(next);
    }
    for (const auto& o : open) out.pieces.push_back({o.lo, o.hi, o.start, 2 * K - 2});
    return out;
}

std::vector<Rect> inflated(const SegmentSet& B, double eps, Orientation o) {
    std::vector<Rect> out;
    if (o == Orientation::Horizontal)
        for (const auto& b : B.h) out.push_back(inflate(b, eps));
    else
        for (const auto& b : B.v) out.push_back(inflate(b, eps));
    return out;
}

namespace {

Rect swap_xy(const Rect& r) { return {r.y_lo, r.y_hi, r.x_lo, r.x_hi}; }

}  // namespace

std::vector<Layer> build_layers(const std::vector<Point>& endpoints, const std::vector<Rect>& b_plus,
                                Orientation o) {
    const bool vertical = o == Orientation::Vertical;
    std::vector<Rect> rects = b_plus;
    if (vertical)
        for (auto& r : rects) r = swap_xy(r);
    const auto dec = decompose_union(rects);
    std::vector<Layer> out;
    for (std::size_t i = 0; i < endpoints.size(); ++i) {
        Layer layer;
        layer.owner = i;
        layer.endpoint = endpoints[i];
        const double px = vertical ? endpoints[i].y : endpoints[i].x;
        const double py = vertical ? endpoints[i].x : endpoints[i].y;
        for (const auto& piece : dec.pieces) {
            Rect r{piece.x_lo - px, piece.x_hi - px, dec.y_lo(piece) - py, dec.y_hi(piece) - py};
            layer.pieces.push_back({vertical ? swap_xy(r) : r, dec.lo_open(piece), dec.hi_open(piece)});
        }
        out.push_back(std::move(layer));
    }
    return out;
}

namespace {

// Leaf range of a piece shifted down by `shift`, given leaves built from the
// same levels. Returns false when no leaf is covered.
bool leaf_range(const UnionDecomposition& dec, const UnionPiece& piece, double shift,
                const MergedValues& leaves, std::size_t& lo, std::size_t& hi) {
    const std::size_t klo = piece.region_lo / 2;
    const std::size_t khi = (piece.region_hi + 1) / 2;
    std::size_t a = leaves.index(dec.levels[klo] - shift);
    std::size_t b = leaves.index(dec.levels[khi] - shift);
    if (dec.lo_open(piece)) ++a;
    if (dec.hi_open(piece)) {
        if (b == 0) return false;
        --b;
    }
    if (a > b) return false;
    lo = a, hi = b;
    return true;
}

}  // namespace

CoverageResult max_cov_horizontal(const std::vector<HSeg>& A, const std::vector<HSeg>& B, double eps) {
    check_eps(eps);
    if (A.empty() || B.empty()) throw std::invalid_argument("max_cov_horizontal: empty input set");

    std::vector<Rect> rects;
    for (const auto& b : B) rects.push_back(inflate(b, eps));
    const auto dec = decompose_union(rects);

    std::vector<const HSeg*> active;
    for (const auto& a : A)
        if (a.length() > 0.0 && a.weight > 0.0) active.push_back(&a);
    CoverageResult best;
    if (active.empty()) return best;

    std::vector<double> dys;
    for (const auto* a : active)
        for (double lv : dec.levels) dys.push_back(lv - a->y);
    const MergedValues leaves = MergedValues::from(std::move(dys));

    struct Event {
        double x;
        std::size_t lo, hi;
        double slope;
    };
    std::vector<Event> events;
    for (const auto* a : active) {
        for (const auto& piece : dec.pieces) {
            std::size_t lo, hi;
            if (!leaf_range(dec, piece, a->y, leaves, lo, hi)) continue;
            // Right endpoint enters with +w, left endpoint with -w; leaving flips the sign.
            for (const auto& [px, sign] : {std::pair{a->x_hi, 1.0}, std::pair{a->x_lo, -1.0}}) {
                events.push_back({piece.x_lo - px, lo, hi, sign * a->weight});
                events.push_back({piece.x_hi - px, lo, hi, -sign * a->weight});
            }
        }
    }
    if (events.empty()) return best;
    std::sort(events.begin(), events.end(), [](const Event& p, const Event& q) { return p.x < q.x; });

    KineticSegmentTree tree(leaves.size(), events.front().x);
    std::size_t k = 0;
    while (k < events.size()) {
        const double x = events[k].x;
        tree.advance(x);
        for (; k < events.size() && events[k].x == x; ++k)
            tree.add_line(events[k].lo, events[k].hi, events[k].slope, -events[k].slope * x);
        const double v = tree.max_value();
        if (v > best.value + 1e-10) best = {{x, leaves.lo[tree.argmax()]}, v};
    }
    return best;
}

CoverageResult max_cov_axis_parallel(const SegmentSet& A, const SegmentSet& B, double eps) {
    check_eps(eps);
    if (A.empty() || B.empty()) throw std::invalid_argument("max_cov_axis_parallel: empty input set");

    const auto dec_h = decompose_union(inflated(B, eps, Orientation::Horizontal));
    std::vector<Rect> vr = inflated(B, eps, Orientation::Vertical);
    for (auto& r : vr) r = swap_xy(r);
    // Vertical union: pieces carry a constant y-extent over a range of x-levels.
    const auto dec_v = decompose_union(vr);

    std::vector<const HSeg*> ah;
    for (const auto& a : A.h)
        if (a.length() > 0.0 && a.weight > 0.0) ah.push_back(&a);
    std::vector<const VSeg*> av;
    for (const auto& a : A.v)
        if (a.length() > 0.0 && a.weight > 0.0) av.push_back(&a);

    struct Tent {
        const VSeg* a;
        const UnionPiece* piece;
        double d[4];  // d3 >= d2 >= d1 >= d0
        double h;
    };
    std::vector<Tent> tents;
    std::vector<double> dys;
    for (const auto* a : ah)
        for (double lv : dec_h.levels) dys.push_back(lv - a->y);
    for (const auto* a : av) {
        const double la = a->length();
        for (const auto& piece : dec_v.pieces) {
            const double cl = piece.x_lo, cr = piece.x_hi, lc = cr - cl;
            if (lc <= 0.0) continue;
            const bool short_a = la <= lc;
            Tent t{a, &piece, {cr - a->y_lo, short_a ? cr - a->y_hi : cl - a->y_lo,
                               short_a ? cl - a->y_lo : cr - a->y_hi, cl - a->y_hi},
                   std::min(la, lc)};
            for (double d : t.d) dys.push_back(d);
            tents.push_back(t);
        }
    }
    CoverageResult best;
    if (dys.empty()) return best;
    const MergedValues leaves = MergedValues::from(std::move(dys));
    const std::size_t L = leaves.size();

    struct Pending {
        PLSegment seg;
        std::size_t group;
    };
    std::vector<std::vector<Pending>> inserts(L);
    std::vector<std::vector<std::size_t>> removals(L);
    std::size_t groups = 0;

    for (const auto* a : ah) {
        const double la = a->length();
        for (const auto& piece : dec_h.pieces) {
            const double lc = piece.x_hi - piece.x_lo;
            if (lc <= 0.0) continue;
            std::size_t lo, hi;
            if (!leaf_range(dec_h, piece, a->y, leaves, lo, hi)) continue;
            const double w = a->weight, h = std::min(la, lc);
            const double x0 = piece.x_lo - a->x_hi, x3 = piece.x_hi - a->x_lo;
            const bool short_a = la <= lc;
            const double x1 = short_a ? piece.x_lo - a->x_lo : piece.x_hi - a->x_hi;
            const double x2 = short_a ? piece.x_hi - a->x_hi : piece.x_lo - a->x_lo;
            const std::size_t g = groups++;
            auto& ins = inserts[hi];
            ins.push_back({{x0, x1, 0.0, 0.0, w}, g});
            ins.push_back({{x1, x2, 0.0, w * h, 0.0}, g});
            ins.push_back({{x2, x3, 0.0, w * h, -w}, g});
            ins.push_back({{x1, x1, 0.0, -w * h, 0.0}, g});
            ins.push_back({{x2, x2, 0.0, -w * h, 0.0}, g});
            if (lo > 0) removals[lo - 1].push_back(g);
        }
    }

    for (const auto& t : tents) {
        const double w = t.a->weight;
        const std::size_t klo_region = t.piece->region_lo / 2, khi_region = (t.piece->region_hi + 1) / 2;
        const double dx_lo = dec_v.levels[klo_region] - t.a->x;
        const double dx_hi = dec_v.levels[khi_region] - t.a->x;
        const bool lo_open = dec_v.lo_open(*t.piece), hi_open = dec_v.hi_open(*t.piece);
        std::size_t k[4];
        for (int i = 0; i < 4; ++i) k[i] = leaves.index(t.d[i]);
        const std::size_t g = groups++;
        // u rises from d3, u' cancels it from d2, u'' takes the sum down to 0 at d0.
        const double laws[3][2] = {{-w, w * t.d[0]}, {w, -w * t.d[0] + w * t.h}, {w, -w * t.d[2]}};
        for (int i = 0; i < 3; ++i) {
            if (k[i] <= k[3]) continue;
            const double slope = laws[i][0], icpt = laws[i][1];
            auto& ins = inserts[k[i]];
            ins.push_back({{dx_lo, dx_hi, slope, icpt, 0.0}, g});
            if (lo_open) ins.push_back({{dx_lo, dx_lo, -slope, -icpt, 0.0}, g});
            if (hi_open) ins.push_back({{dx_hi, dx_hi, -slope, -icpt, 0.0}, g});
        }
        removals[k[3]].push_back(g);
    }

    std::vector<std::vector<EnvelopeStructure::Handle>> handles(groups);
    EnvelopeStructure env(leaves.lo[L - 1]);
    struct Candidate {
        double value, dx, dy;
    };
    std::vector<Candidate> cands;
    double top = -std::numeric_limits<double>::infinity();
    for (std::size_t idx = L; idx-- > 0;) {
        const double tau = leaves.lo[idx];
        env.advance_time(env.tau() - tau);
        for (auto g : removals[idx]) {
            for (auto h : handles[g]) env.erase(h);
            handles[g].clear();
        }
        for (const auto& p : inserts[idx]) handles[p.group].push_back(env.insert(p.seg));
        if (env.size() == 0) continue;
        const auto m = env.query_max();
        cands.push_back({m.value, m.x, tau});
        top = std::max(top, m.value);
    }
    if (cands.empty() || top <= 0.0) return best;
    bool found = false;
    for (const auto& c : cands) {
        if (c.value < top - 1e-10) continue;
        if (!found || c.dx < best.t_star.dx || (c.dx == best.t_star.dx && c.dy < best.t_star.dy)) {
            best = {{c.dx, c.dy}, c.value};
            found = true;
        }
    }
    return best;
}

LowerBoundInstance gen_lower_bound(int n) {
    if (n < 2) throw std::invalid_argument("n: must be >= 2");
    const double nn = n;
    LowerBoundInstance out;
    auto point = [](double x, double y) { return HSeg{y, x, x, 1.0}; };
    for (int i = 1; i <= n; ++i) {
        out.B.h.push_back(point(i, 0.5 - i / nn));
        out.B.h.push_back(point(i, -0.5 - i / nn - 1.0 / (4.0 * nn * nn)));
    }
    out.B.h.push_back({-0.25, -nn, 0.0, 1.0});
    out.B.h.push_back({-0.25, nn, 2.0 * nn, 1.0});
    for (int i = 1; i <= n; ++i) out.B.h.push_back(point(-(1.0 + 1.0 / (nn * nn)) * i, -5.0));
    for (int k = 0; k < n; ++k) out.A.h.push_back({(k - n / 2) / (nn * nn), 0.0, 2.0 * nn, 1.0});
    for (int i = 1; i <= n; ++i) out.A.h.push_back(point(-i / (2.0 * nn), -5.0));
    out.eps = 0.5;
    return out;
}

}  // namespace segmatch
