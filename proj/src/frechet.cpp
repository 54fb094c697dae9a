#include "segmatch/frechet.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <deque>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <thread>

namespace segmatch {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

FreeEdge clipped(double lo, double hi) {
    lo = std::max(lo, 0.0);
    hi = std::min(hi, 1.0);
    if (lo > hi) return std::nullopt;
    return EdgeInterval{lo, hi};
}

FreeEdge solve_l2(Point d, Point u, double eps) {
    const double a = u.x * u.x + u.y * u.y;
    const double b = 2.0 * (d.x * u.x + d.y * u.y);
    const double c = d.x * d.x + d.y * d.y - eps * eps;
    if (a == 0.0) return c <= 0.0 ? FreeEdge{EdgeInterval{0.0, 1.0}} : std::nullopt;
    const double disc = b * b - 4.0 * a * c;
    if (disc < 0.0) return std::nullopt;
    const double root = std::sqrt(disc);
    const double qq = -0.5 * (b + std::copysign(root, b));
    double r1 = qq / a, r2 = qq != 0.0 ? c / qq : r1;
    if (r1 > r2) std::swap(r1, r2);
    return clipped(r1, r2);
}

FreeEdge solve_linf(Point d, Point u, double eps) {
    double lo = 0.0, hi = 1.0;
    for (auto [dc, uc] : {std::pair{d.x, u.x}, std::pair{d.y, u.y}}) {
        if (uc == 0.0) {
            if (std::abs(dc) > eps) return std::nullopt;
            continue;
        }
        double s1 = (-eps - dc) / uc, s2 = (eps - dc) / uc;
        if (s1 > s2) std::swap(s1, s2);
        lo = std::max(lo, s1);
        hi = std::min(hi, s2);
    }
    return clipped(lo, hi);
}

// |dx + s ux| + |dy + s uy| is convex and piecewise linear with knots where a term vanishes.
FreeEdge solve_l1(Point d, Point u, double eps) {
    auto g = [&](double s) { return std::abs(d.x + s * u.x) + std::abs(d.y + s * u.y); };
    std::vector<double> knots{0.0, 1.0};
    if (u.x != 0.0) knots.push_back(-d.x / u.x);
    if (u.y != 0.0) knots.push_back(-d.y / u.y);
    std::erase_if(knots, [](double s) { return s < 0.0 || s > 1.0; });
    std::sort(knots.begin(), knots.end());
    std::size_t best = 0;
    for (std::size_t k = 1; k < knots.size(); ++k)
        if (g(knots[k]) < g(knots[best])) best = k;
    if (g(knots[best]) > eps) return std::nullopt;
    auto cross = [&](double s_in, double s_out) {
        const double gi = g(s_in), go = g(s_out);
        return s_in + (s_out - s_in) * (eps - gi) / (go - gi);
    };
    double lo = knots.front(), hi = knots.back();
    for (std::size_t k = best; k > 0; --k)
        if (g(knots[k - 1]) > eps) {
            lo = cross(knots[k], knots[k - 1]);
            break;
        }
    for (std::size_t k = best; k + 1 < knots.size(); ++k)
        if (g(knots[k + 1]) > eps) {
            hi = cross(knots[k], knots[k + 1]);
            break;
        }
    return clipped(lo, hi);
}

void check_chains(const PolyChain& P, const PolyChain& Q) {
    if (P.vertices.size() < 2 || Q.vertices.size() < 2)
        throw std::invalid_argument("frechet: chains need at least 2 vertices");
}

}  // namespace

FreeEdge edge_interval(Point p, Point s0, Point s1, double eps, Norm norm) {
    if (eps < 0.0) throw std::invalid_argument("frechet: eps must be non-negative");
    const Point d = s0 - p, u = s1 - s0;
    FreeEdge out;
    switch (norm) {
        case Norm::L2: out = solve_l2(d, u, eps); break;
        case Norm::Linf: out = solve_linf(d, u, eps); break;
        case Norm::L1: out = solve_l1(d, u, eps); break;
    }
    // Edge endpoints are decided by the exact vertex distance so that
    // neighbouring edges agree on shared corners.
    const bool free0 = norm_dist(p, s0, norm) <= eps, free1 = norm_dist(p, s1, norm) <= eps;
    if (free0 && free1) return EdgeInterval{0.0, 1.0};
    if (free0) return EdgeInterval{0.0, out ? std::max(out->hi, 0.0) : 0.0};
    if (free1) return EdgeInterval{out ? std::min(out->lo, 1.0) : 1.0, 1.0};
    if (out && (out->lo == 0.0 || out->hi == 1.0)) {
        if (out->lo == 0.0) out->lo = std::nextafter(0.0, 1.0);
        if (out->hi == 1.0) out->hi = std::nextafter(1.0, 0.0);
        if (out->lo > out->hi) return std::nullopt;
    }
    return out;
}

FreeSpaceCell cell_boundaries(Point pi0, Point pi1, Point qj0, Point qj1, double eps, Norm norm) {
    FreeSpaceCell c;
    c.left = edge_interval(pi0, qj0, qj1, eps, norm);
    c.bottom = edge_interval(qj0, pi0, pi1, eps, norm);
    return c;
}

FreeSpaceDiagram::FreeSpaceDiagram(const PolyChain& P, const PolyChain& Q, double eps, Norm norm)
    : p_(static_cast<int>(P.segments())), q_(static_cast<int>(Q.segments())), eps_(eps) {
    check_chains(P, Q);
    if (eps < 0.0) throw std::invalid_argument("frechet: eps must be non-negative");
    const auto& pv = P.vertices;
    const auto& qv = Q.vertices;
    left_.resize(static_cast<std::size_t>((p_ + 1) * q_));
    bottom_.resize(static_cast<std::size_t>(p_ * (q_ + 1)));
    for (int i = 0; i <= p_; ++i)
        for (int j = 0; j < q_; ++j)
            left_[static_cast<std::size_t>(i * q_ + j)] = edge_interval(pv[i], qv[j], qv[j + 1], eps, norm);
    for (int j = 0; j <= q_; ++j)
        for (int i = 0; i < p_; ++i)
            bottom_[static_cast<std::size_t>(j * p_ + i)] = edge_interval(qv[j], pv[i], pv[i + 1], eps, norm);
    start_free_ = norm_dist(pv.front(), qv.front(), norm) <= eps;
    end_free_ = norm_dist(pv.back(), qv.back(), norm) <= eps;
}

FreeSpaceCell FreeSpaceDiagram::cell(int i, int j) const {
    FreeSpaceCell c;
    c.i = i;
    c.j = j;
    if (j < q_) c.left = left(i, j);
    if (i < p_) c.bottom = bottom(i, j);
    return c;
}

namespace {

// Reachable part of an edge in absolute coordinates along the edge's axis.
struct Reach {
    bool any = false;
    double lo = 0.0, hi = 0.0;
};

Reach full(const FreeEdge& e, int base) {
    if (!e) return {};
    return {true, base + e->lo, base + e->hi};
}

Reach from_below(const Reach& prev, const FreeEdge& e, int base) {
    if (!prev.any || !e) return {};
    const double lo = std::max(prev.lo, base + e->lo), hi = base + e->hi;
    if (lo > hi) return {};
    return {true, lo, hi};
}

}  // namespace

bool decide_frechet(const PolyChain& P, const PolyChain& Q, double eps, Norm norm) {
    const FreeSpaceDiagram fs(P, Q, eps, norm);
    if (!fs.start_free() || !fs.end_free()) return false;
    const int p = fs.p(), q = fs.q();
    std::vector<Reach> lr(static_cast<std::size_t>((p + 1) * q)), br(static_cast<std::size_t>(p * (q + 1)));
    auto L = [&](int i, int j) -> Reach& { return lr[static_cast<std::size_t>(i * q + j)]; };
    auto B = [&](int i, int j) -> Reach& { return br[static_cast<std::size_t>(j * p + i)]; };

    L(0, 0) = full(fs.left(0, 0), 0);
    L(0, 0).lo = 0.0;
    for (int j = 1; j < q; ++j) {
        const auto& e = fs.left(0, j);
        if (L(0, j - 1).any && L(0, j - 1).hi == j && e && e->lo == 0.0) L(0, j) = {true, double(j), j + e->hi};
    }
    B(0, 0) = full(fs.bottom(0, 0), 0);
    B(0, 0).lo = 0.0;
    for (int i = 1; i < p; ++i) {
        const auto& e = fs.bottom(i, 0);
        if (B(i - 1, 0).any && B(i - 1, 0).hi == i && e && e->lo == 0.0) B(i, 0) = {true, double(i), i + e->hi};
    }
    if (!fs.left(0, 0)) L(0, 0) = {};
    if (!fs.bottom(0, 0)) B(0, 0) = {};

    for (int i = 0; i < p; ++i) {
        for (int j = 0; j < q; ++j) {
            const Reach& in_left = L(i, j);
            const Reach& in_bottom = B(i, j);
            L(i + 1, j) = in_bottom.any ? full(fs.left(i + 1, j), j) : from_below(in_left, fs.left(i + 1, j), j);
            B(i, j + 1) = in_left.any ? full(fs.bottom(i, j + 1), i) : from_below(in_bottom, fs.bottom(i, j + 1), i);
        }
    }
    const Reach& r = L(p, q - 1);
    const Reach& t = B(p - 1, q);
    return (r.any && r.hi == q) || (t.any && t.hi == p);
}

bool decide_weak_frechet(const PolyChain& P, const PolyChain& Q, double eps, Norm norm) {
    const FreeSpaceDiagram fs(P, Q, eps, norm);
    if (!fs.start_free() || !fs.end_free()) return false;
    const int p = fs.p(), q = fs.q();
    std::vector<int> parent(static_cast<std::size_t>(p * q));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    };
    auto unite = [&](int a, int b) { parent[static_cast<std::size_t>(find(a))] = find(b); };
    auto id = [&](int i, int j) { return i * q + j; };
    for (int i = 0; i < p; ++i)
        for (int j = 0; j < q; ++j) {
            if (i > 0 && fs.left(i, j)) unite(id(i - 1, j), id(i, j));
            if (j > 0 && fs.bottom(i, j)) unite(id(i, j - 1), id(i, j));
        }
    return find(id(0, 0)) == find(id(p - 1, q - 1));
}

namespace {

template <class Decide>
double bisect(const PolyChain& P, const PolyChain& Q, double tol, Norm norm, Decide decide) {
    check_chains(P, Q);
    if (!(tol > 0.0)) throw std::invalid_argument("frechet_value: tol must be positive");
    if (decide(0.0)) return 0.0;
    double hi = 0.0;
    for (const auto& a : P.vertices)
        for (const auto& b : Q.vertices) hi = std::max(hi, norm_dist(a, b, norm));
    hi += tol;
    double lo = 0.0;
    while (hi - lo > tol) {
        const double mid = lo + (hi - lo) / 2;
        if (decide(mid))
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

}  // namespace

double frechet_value(const PolyChain& P, const PolyChain& Q, double tol, Norm norm) {
    return bisect(P, Q, tol, norm, [&](double e) { return decide_frechet(P, Q, e, norm); });
}

double weak_frechet_value(const PolyChain& P, const PolyChain& Q, double tol, Norm norm) {
    return bisect(P, Q, tol, norm, [&](double e) { return decide_weak_frechet(P, Q, e, norm); });
}

std::size_t FrechetGraph::tunnels() const {
    return static_cast<std::size_t>(
        std::count_if(vertices.begin(), vertices.end(), [](const GraphVertex& v) { return v.k >= 0; }));
}

FrechetGraph build_graph(const PolyChain& P, const PolyChain& Q, double eps, Norm norm) {
    const FreeSpaceDiagram fs(P, Q, eps, norm);
    const int p = fs.p(), q = fs.q();
    FrechetGraph g;
    g.p = p;
    g.q = q;

    // Vertices on each vertical edge (i, j), with (p, q) as a degenerate edge,
    // and on each horizontal edge (i, j).
    std::vector<std::vector<int>> v1(static_cast<std::size_t>((p + 1) * (q + 1))),
        v2(static_cast<std::size_t>(p * (q + 1)));
    auto V1 = [&](int i, int j) -> std::vector<int>& { return v1[static_cast<std::size_t>(i * (q + 1) + j)]; };
    auto V2 = [&](int i, int j) -> std::vector<int>& { return v2[static_cast<std::size_t>(j * p + i)]; };
    std::vector<int> va(v1.size(), -1), vb(v1.size(), -1), vc(v2.size(), -1), vd(v2.size(), -1);
    auto slot1 = [&](int i, int j) { return static_cast<std::size_t>(i * (q + 1) + j); };
    auto slot2 = [&](int i, int j) { return static_cast<std::size_t>(j * p + i); };
    auto add = [&](GraphVertex v) {
        g.vertices.push_back(v);
        return static_cast<int>(g.vertices.size()) - 1;
    };

    for (int i = 0; i <= p; ++i)
        for (int j = 0; j < q; ++j) {
            const auto& e = fs.left(i, j);
            if (!e) continue;
            va[slot1(i, j)] = add({'a', i, j, -1, {double(i), j + e->lo}});
            vb[slot1(i, j)] = add({'b', i, j, -1, {double(i), j + e->hi}});
            V1(i, j) = {va[slot1(i, j)], vb[slot1(i, j)]};
        }
    if (fs.end_free()) {
        va[slot1(p, q)] = add({'a', p, q, -1, {double(p), double(q)}});
        vb[slot1(p, q)] = add({'b', p, q, -1, {double(p), double(q)}});
        V1(p, q) = {va[slot1(p, q)], vb[slot1(p, q)]};
    }
    for (int j = 0; j <= q; ++j)
        for (int i = 0; i < p; ++i) {
            const auto& e = fs.bottom(i, j);
            if (!e) continue;
            vc[slot2(i, j)] = add({'c', i, j, -1, {i + e->lo, double(j)}});
            vd[slot2(i, j)] = add({'d', i, j, -1, {i + e->hi, double(j)}});
            V2(i, j) = {vc[slot2(i, j)], vd[slot2(i, j)]};
        }

    // Horizontal tunnels of a and b points, vertical tunnels of c and d points,
    // each running while the projection stays inside consecutive free intervals.
    const std::size_t originals = g.vertices.size();
    for (std::size_t id = 0; id < originals; ++id) {
        const GraphVertex v = g.vertices[id];
        if (v.type == 'a' || v.type == 'b') {
            if (v.j >= q) continue;
            for (int k = v.i + 1; k <= p; ++k) {
                const auto& e = fs.left(k, v.j);
                if (!e || v.f.y < v.j + e->lo || v.f.y > v.j + e->hi) break;
                V1(k, v.j).push_back(add({v.type, v.i, v.j, k, {double(k), v.f.y}}));
            }
        } else {
            for (int k = v.j + 1; k <= q; ++k) {
                const auto& e = fs.bottom(v.i, k);
                if (!e || v.f.x < v.i + e->lo || v.f.x > v.i + e->hi) break;
                V2(v.i, k).push_back(add({v.type, v.i, v.j, k, {v.f.x, double(k)}}));
            }
        }
    }

    auto by_y = [&](int a, int b) {
        const auto &u = g.vertices[static_cast<std::size_t>(a)].f, &w = g.vertices[static_cast<std::size_t>(b)].f;
        return u.y != w.y ? u.y < w.y : a < b;
    };
    auto by_x = [&](int a, int b) {
        const auto &u = g.vertices[static_cast<std::size_t>(a)].f, &w = g.vertices[static_cast<std::size_t>(b)].f;
        return u.x != w.x ? u.x < w.x : a < b;
    };
    for (auto& list : v1) std::sort(list.begin(), list.end(), by_y);
    for (auto& list : v2) std::sort(list.begin(), list.end(), by_x);

    auto edge = [&](int u, int w, int rule) {
        if (u >= 0 && w >= 0 && u != w) g.edges.push_back({u, w, rule});
    };
    // Lowest vertex of a sorted list at or above the coordinate.
    auto successor = [&](const std::vector<int>& list, double c, bool vertical) {
        auto it = std::lower_bound(list.begin(), list.end(), c, [&](int id, double v) {
            const auto& f = g.vertices[static_cast<std::size_t>(id)].f;
            return (vertical ? f.y : f.x) < v;
        });
        return it == list.end() ? -1 : *it;
    };

    for (int i = 0; i <= p; ++i)
        for (int j = 0; j <= q; ++j) {
            if (j < q || i == p) {
                const auto& list = V1(i, j);
                for (int v : list) edge(v, vb[slot1(i, j)], 1);
                if (i < p && j < q)
                    for (int v : list) edge(v, successor(V1(i + 1, j), g.vertices[static_cast<std::size_t>(v)].f.y, true), 3);
            }
            if (i < p) {
                const auto& list = V2(i, j);
                for (int v : list) edge(v, vd[slot2(i, j)], 2);
                if (j < q)
                    for (int v : list) edge(v, successor(V2(i, j + 1), g.vertices[static_cast<std::size_t>(v)].f.x, false), 3);
            }
            if (i < p && j < q) edge(vb[slot1(i, j)], vc[slot2(i, j + 1)], 4);
            if (i < p && (j < q || i + 1 == p)) edge(vd[slot2(i, j)], va[slot1(i + 1, j)], 4);
        }

    if (fs.start_free()) g.start = va[slot1(0, 0)];
    g.target = vb[slot1(p, q)];
    return g;
}

bool graph_reachable(const FrechetGraph& g) {
    if (g.start < 0 || g.target < 0) return false;
    std::vector<std::vector<int>> out(g.vertices.size());
    for (const auto& e : g.edges) out[static_cast<std::size_t>(e.from)].push_back(e.to);
    std::vector<char> seen(g.vertices.size(), 0);
    std::deque<int> queue{g.start};
    seen[static_cast<std::size_t>(g.start)] = 1;
    while (!queue.empty()) {
        const int v = queue.front();
        queue.pop_front();
        if (v == g.target) return true;
        for (int w : out[static_cast<std::size_t>(v)])
            if (!seen[static_cast<std::size_t>(w)]) {
                seen[static_cast<std::size_t>(w)] = 1;
                queue.push_back(w);
            }
    }
    return false;
}

bool graph_decide(const PolyChain& P, const PolyChain& Q, double eps, Norm norm) {
    const auto g = build_graph(P, Q, eps, norm);
    const auto& s = g.start >= 0 ? g.vertices[static_cast<std::size_t>(g.start)].f : Point{-1, -1};
    if (!(s == Point{0, 0})) return false;
    return graph_reachable(g);
}

Translation translate_anchor(const PolyChain& P, const PolyChain& Q) {
    if (P.vertices.empty() || Q.vertices.empty()) throw std::invalid_argument("translate_anchor: empty chain");
    const Point d = P.vertices.front() - Q.vertices.front();
    return {d.x, d.y};
}

namespace {

int thread_count() {
    const char* env = std::getenv("SEGMATCH_THREADS");
    if (!env) return 1;
    const int n = std::atoi(env);
    return std::clamp(n, 1, 256);
}

}  // namespace

TranslationResult min_frechet_translation_approx(const PolyChain& P, const PolyChain& Q, double beta, double tol,
                                                 Norm norm) {
    check_chains(P, Q);
    if (!(beta > 0.0)) throw std::invalid_argument("min_frechet_translation_approx: beta must be positive");
    if (!(tol > 0.0)) throw std::invalid_argument("min_frechet_translation_approx: tol must be positive");
    TranslationResult out;
    const Translation t0 = translate_anchor(P, Q);
    const double d = frechet_value(P, translate(Q, t0), tol, norm);
    out.t = t0;
    out.value = d;
    out.anchor_value = d;
    if (d <= tol) return out;

    const double step = beta * d / (2.0 * std::sqrt(2.0));
    const auto m = static_cast<long>(std::ceil(2.0 * d / step));
    const long side = m + 1;
    out.step = step;
    out.grid_points = static_cast<std::size_t>(side * side);

    struct Best {
        double value = kInf;
        long index = -1;
    };
    const int threads = static_cast<int>(std::min<long>(thread_count(), side * side));
    std::vector<Best> best(static_cast<std::size_t>(threads));
    auto at = [&](long idx) {
        return Translation{t0.dx - d + step * static_cast<double>(idx / side),
                           t0.dy - d + step * static_cast<double>(idx % side)};
    };
    auto work = [&](int tid) {
        Best& b = best[static_cast<std::size_t>(tid)];
        b.value = d;
        for (long idx = tid; idx < side * side; idx += threads) {
            const PolyChain moved = translate(Q, at(idx));
            if (!decide_frechet(P, moved, b.value, norm)) continue;
            const double v = frechet_value(P, moved, tol, norm);
            if (v < b.value || (v == b.value && b.index >= 0 && idx < b.index)) b = {v, idx};
        }
    };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(work, t);
        for (auto& th : pool) th.join();
    }
    Best win;
    win.value = d;
    for (const auto& b : best)
        if (b.index >= 0 && (b.value < win.value || (b.value == win.value && (win.index < 0 || b.index < win.index))))
            win = b;
    if (win.index >= 0) {
        out.t = at(win.index);
        out.value = win.value;
    }
    return out;
}

double discrete_frechet(const PolyChain& P, const PolyChain& Q, int k, Norm norm) {
    check_chains(P, Q);
    if (k < 1) throw std::invalid_argument("discrete_frechet: k must be at least 1");
    auto sample = [&](const PolyChain& c) {
        std::vector<Point> pts;
        const int segs = static_cast<int>(c.segments());
        for (int s = 0; s < segs; ++s)
            for (int t = 0; t < k; ++t) pts.push_back(c.at(s + static_cast<double>(t) / k));
        pts.push_back(c.vertices.back());
        return pts;
    };
    const auto a = sample(P), b = sample(Q);
    const std::size_t n = a.size(), m = b.size();
    std::vector<double> prev(m), cur(m);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            const double dist = norm_dist(a[i], b[j], norm);
            double reach;
            if (i == 0 && j == 0)
                reach = dist;
            else if (i == 0)
                reach = cur[j - 1];
            else if (j == 0)
                reach = prev[j];
            else
                reach = std::min({prev[j], prev[j - 1], cur[j - 1]});
            cur[j] = std::max(reach, dist);
        }
        std::swap(prev, cur);
    }
    return prev[m - 1];
}

}  // namespace segmatch
