#include "segmatch/kinetic_envelope.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace segmatch {

namespace detail {

/// Balanced tree over points (x_i, b_i + a_i * tau) sorted by x. Large nodes
/// cache an upper hull built at some tau together with the lowest tau down
/// to which its combinatorial structure stays valid.
class HullTree {
public:
    HullTree(const std::vector<double>& x, const std::vector<double>& b, const std::vector<double>& a)
        : x_(x), b_(b), a_(a) {
        if (!x_.empty()) build(0, static_cast<int>(x_.size()) - 1);
    }

    /// Max over i in [l, r] of b_i + a_i * tau + c * x_i; ties to smaller i.
    std::pair<double, int> best(int l, int r, double c, double tau) {
        std::pair<double, int> acc{-std::numeric_limits<double>::infinity(), -1};
        if (l > r || nodes_.empty()) return acc;
        query(0, l, r, c, tau, acc);
        return acc;
    }

private:
    static constexpr int kScan = 64;

    struct Node {
        int lo = 0, hi = 0;
        int left = -1, right = -1;
        bool hull_ready = false;
        double stamp = 0.0;
        double valid_to = 0.0;
        std::vector<int> hull;
    };

    int build(int lo, int hi) {
        const int id = static_cast<int>(nodes_.size());
        Node nd;
        nd.lo = lo;
        nd.hi = hi;
        nodes_.push_back(std::move(nd));
        if (hi - lo + 1 > kScan) {
            const int mid = lo + (hi - lo) / 2;
            const int l = build(lo, mid);
            const int r = build(mid + 1, hi);
            nodes_[static_cast<std::size_t>(id)].left = l;
            nodes_[static_cast<std::size_t>(id)].right = r;
        }
        return id;
    }

    double y(int i, double tau) const {
        return b_[static_cast<std::size_t>(i)] + a_[static_cast<std::size_t>(i)] * tau;
    }
    double val(int i, double c, double tau) const {
        return y(i, tau) + c * x_[static_cast<std::size_t>(i)];
    }

    static void offer(std::pair<double, int>& acc, double v, int i) {
        if (v > acc.first || (v == acc.first && i < acc.second)) acc = {v, i};
    }

    void scan(int l, int r, double c, double tau, std::pair<double, int>& acc) const {
        for (int i = l; i <= r; ++i) offer(acc, val(i, c, tau), i);
    }

    void query(int id, int l, int r, double c, double tau, std::pair<double, int>& acc) {
        Node& nd = nodes_[static_cast<std::size_t>(id)];
        if (r < nd.lo || l > nd.hi) return;
        const bool covered = l <= nd.lo && nd.hi <= r;
        if (nd.left < 0) {
            scan(std::max(l, nd.lo), std::min(r, nd.hi), c, tau, acc);
            return;
        }
        if (!covered) {
            query(nd.left, l, r, c, tau, acc);
            query(nd.right, l, r, c, tau, acc);
            return;
        }
        if (!nd.hull_ready || tau < nd.valid_to || tau > nd.stamp) make_hull(nd, tau);
        hull_best(nd, c, tau, acc);
    }

    // Signed height of point k above the line through p and q at time tau.
    double above(int p, int q, int k, double tau) const {
        const double xp = x_[static_cast<std::size_t>(p)], xq = x_[static_cast<std::size_t>(q)];
        const double xk = x_[static_cast<std::size_t>(k)];
        const double t = (xk - xp) / (xq - xp);
        return y(k, tau) - ((1.0 - t) * y(p, tau) + t * y(q, tau));
    }

    // Same quantity as a line in tau: value at tau and d/dtau.
    std::pair<double, double> above_line(int p, int q, int k, double tau) const {
        const double xp = x_[static_cast<std::size_t>(p)], xq = x_[static_cast<std::size_t>(q)];
        const double xk = x_[static_cast<std::size_t>(k)];
        const double t = (xk - xp) / (xq - xp);
        const double slope = a_[static_cast<std::size_t>(k)] -
                             ((1.0 - t) * a_[static_cast<std::size_t>(p)] + t * a_[static_cast<std::size_t>(q)]);
        return {above(p, q, k, tau), slope};
    }

    void make_hull(Node& nd, double tau) {
        auto& h = nd.hull;
        h.clear();
        for (int i = nd.lo; i <= nd.hi; ++i) {
            while (h.size() >= 2 && above(h[h.size() - 2], i, h.back(), tau) <= 0.0) h.pop_back();
            h.push_back(i);
        }
        // Certificates stay >= 0 for tau' in [valid_to, tau].
        double lowest = -std::numeric_limits<double>::infinity();
        auto bound = [&](std::pair<double, double> cert) {
            const auto [v, slope] = cert;
            if (slope > 0.0) lowest = std::max(lowest, tau - std::max(v, 0.0) / slope);
        };
        for (std::size_t k = 1; k + 1 < h.size(); ++k) bound(above_line(h[k - 1], h[k + 1], h[k], tau));
        std::size_t e = 0;
        for (int i = nd.lo; i <= nd.hi; ++i) {
            while (e + 1 < h.size() && h[e + 1] <= i) ++e;
            if (h[e] == i) continue;
            // below edge (h[e], h[e+1]): certificate is -above
            auto [v, slope] = above_line(h[e], h[e + 1], i, tau);
            bound({-v, -slope});
        }
        nd.stamp = tau;
        nd.valid_to = lowest;
        nd.hull_ready = true;
    }

    void hull_best(const Node& nd, double c, double tau, std::pair<double, int>& acc) const {
        const auto& h = nd.hull;
        // First vertex whose outgoing edge does not increase y + c*x.
        std::size_t lo = 0, hi = h.size() - 1;
        while (lo < hi) {
            const std::size_t mid = (lo + hi) / 2;
            if (val(h[mid + 1], c, tau) > val(h[mid], c, tau))
                lo = mid + 1;
            else
                hi = mid;
        }
        offer(acc, val(h[lo], c, tau), h[lo]);
    }

    const std::vector<double>& x_;
    const std::vector<double>& b_;
    const std::vector<double>& a_;
    std::vector<Node> nodes_;
};

}  // namespace detail

EnvelopeStructure::EnvelopeStructure(double tau) : tau_(tau) {}
EnvelopeStructure::~EnvelopeStructure() = default;
EnvelopeStructure::EnvelopeStructure(EnvelopeStructure&&) noexcept = default;
EnvelopeStructure& EnvelopeStructure::operator=(EnvelopeStructure&&) noexcept = default;

bool EnvelopeStructure::is_live(Handle h) const {
    return h >= 0 && static_cast<std::size_t>(h) < state_.size() && state_[static_cast<std::size_t>(h)] != 0;
}

void EnvelopeStructure::add_endpoint(double x) { ++endpoints_[x]; }

void EnvelopeStructure::drop_endpoint(double x) {
    auto it = endpoints_.find(x);
    if (--it->second == 0) endpoints_.erase(it);
}

EnvelopeStructure::Handle EnvelopeStructure::insert(const PLSegment& s) {
    if (!std::isfinite(s.x_lo) || !std::isfinite(s.x_hi) || !std::isfinite(s.a) ||
        !std::isfinite(s.b) || !std::isfinite(s.c))
        throw std::invalid_argument("segment: non-finite field");
    if (s.x_lo > s.x_hi) throw std::invalid_argument("segment: x_lo > x_hi");
    const auto h = static_cast<Handle>(segs_.size());
    segs_.push_back(s);
    state_.push_back(2);
    live_pos_.push_back(live_ids_.size());
    live_ids_.push_back(h);
    ++live_count_;
    add_endpoint(s.x_lo);
    add_endpoint(s.x_hi);
    buffer_.push_back({s, h, false});
    if (buffer_.size() > static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(live_count_)))))
        rebuild();
    return h;
}

void EnvelopeStructure::erase(Handle h) {
    if (!is_live(h)) throw std::logic_error("erase: segment is not live");
    const auto idx = static_cast<std::size_t>(h);
    const PLSegment& s = segs_[idx];
    if (state_[idx] == 2) {
        auto it = std::find_if(buffer_.begin(), buffer_.end(),
                               [&](const BufferEntry& e) { return e.owner == h && !e.canceller; });
        buffer_.erase(it);
    } else {
        buffer_.push_back({{s.x_lo, s.x_hi, -s.a, -s.b, -s.c}, h, true});
    }
    state_[idx] = 0;
    --live_count_;
    const std::size_t at = live_pos_[idx];
    live_ids_[at] = live_ids_.back();
    live_pos_[static_cast<std::size_t>(live_ids_[at])] = at;
    live_ids_.pop_back();
    drop_endpoint(s.x_lo);
    drop_endpoint(s.x_hi);
    if (buffer_.size() > static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(live_count_)))))
        rebuild();
}

void EnvelopeStructure::advance_time(double delta) {
    if (!(delta >= 0.0)) throw std::invalid_argument("advance_time: delta must be >= 0");
    tau_ -= delta;
}

void EnvelopeStructure::rebuild() {
    ++rebuilds_;
    buffer_.clear();
    xs_.clear();
    for (const auto& [x, cnt] : endpoints_) xs_.push_back(x);
    const std::size_t V = xs_.size();
    std::vector<double> db(V + 1, 0.0), dc(V + 1, 0.0), da(V + 1, 0.0);
    std::vector<double> gb(V + 1, 0.0), gcv(V + 1, 0.0), gav(V + 1, 0.0);
    auto index_of = [&](double x) {
        return static_cast<std::size_t>(std::lower_bound(xs_.begin(), xs_.end(), x) - xs_.begin());
    };
    for (const Handle id : live_ids_) {
        const auto i = static_cast<std::size_t>(id);
        state_[i] = 1;
        const auto& s = segs_[i];
        const std::size_t l = index_of(s.x_lo), r = index_of(s.x_hi);
        const double base = s.b - s.c * s.x_lo;
        db[l] += base, db[r + 1] -= base;
        dc[l] += s.c, dc[r + 1] -= s.c;
        da[l] += s.a, da[r + 1] -= s.a;
        if (r > l) {
            gb[l] += base, gb[r] -= base;
            gcv[l] += s.c, gcv[r] -= s.c;
            gav[l] += s.a, gav[r] -= s.a;
        }
    }
    vb_.assign(V, 0.0);
    va_.assign(V, 0.0);
    g0_.assign(V, 0.0);
    gc_.assign(V, 0.0);
    ga_.assign(V, 0.0);
    double sb = 0, sc = 0, sa = 0, tb = 0, tc = 0, ta = 0;
    for (std::size_t i = 0; i < V; ++i) {
        sb += db[i], sc += dc[i], sa += da[i];
        tb += gb[i], tc += gcv[i], ta += gav[i];
        vb_[i] = sb + sc * xs_[i];
        va_[i] = sa;
        g0_[i] = tb;
        gc_[i] = tc;
        ga_[i] = ta;
    }
    tree_ = std::make_unique<detail::HullTree>(xs_, vb_, va_);
}

double EnvelopeStructure::bulk_at(double x) const {
    if (xs_.empty()) return 0.0;
    auto it = std::lower_bound(xs_.begin(), xs_.end(), x);
    if (it != xs_.end() && *it == x) {
        const auto i = static_cast<std::size_t>(it - xs_.begin());
        return vb_[i] + va_[i] * tau_;
    }
    if (it == xs_.begin() || it == xs_.end()) return 0.0;
    const auto i = static_cast<std::size_t>(it - xs_.begin()) - 1;
    return g0_[i] + gc_[i] * x + ga_[i] * tau_;
}

EnvelopeStructure::Max EnvelopeStructure::query_max() {
    if (live_count_ == 0) return {};

    struct Event {
        double x;
        int kind;  // 0 start, 1 end
        const PLSegment* s;
    };
    std::vector<Event> ev;
    ev.reserve(buffer_.size() * 2);
    for (const auto& e : buffer_) {
        ev.push_back({e.seg.x_lo, 0, &e.seg});
        ev.push_back({e.seg.x_hi, 1, &e.seg});
    }
    std::sort(ev.begin(), ev.end(), [](const Event& p, const Event& q) { return p.x < q.x; });

    Max best{0.0, -std::numeric_limits<double>::infinity()};
    auto offer = [&](double x, double v) {
        if (v > best.value || (v == best.value && x < best.x)) best = {x, v};
    };

    // Open-region buffer sum: ob + oc * x (tau already applied).
    double ob = 0.0, oc = 0.0;
    auto region = [&](double lo, double hi) {
        if (xs_.empty()) return;
        auto first = std::upper_bound(xs_.begin(), xs_.end(), lo);
        auto last = std::lower_bound(xs_.begin(), xs_.end(), hi);
        if (first >= last) return;
        const int l = static_cast<int>(first - xs_.begin());
        const int r = static_cast<int>(last - xs_.begin()) - 1;
        const auto [v, i] = tree_->best(l, r, oc, tau_);
        if (i >= 0) offer(xs_[static_cast<std::size_t>(i)], v + ob);
    };

    double prev = -std::numeric_limits<double>::infinity();
    std::size_t k = 0;
    while (k < ev.size()) {
        const double x = ev[k].x;
        region(prev, x);
        double closed = ob + oc * x;
        std::size_t j = k;
        double nb = ob, nc = oc;
        for (; j < ev.size() && ev[j].x == x; ++j) {
            const PLSegment& s = *ev[j].s;
            const double lb = s.b - s.c * s.x_lo + s.a * tau_;
            if (ev[j].kind == 0) {
                closed += lb + s.c * x;
                if (s.x_hi > x) nb += lb, nc += s.c;
            } else if (s.x_lo < x) {
                nb -= lb, nc -= s.c;
            }
        }
        if (endpoints_.count(x)) offer(x, closed + bulk_at(x));
        ob = nb, oc = nc;
        prev = x;
        k = j;
    }
    region(prev, std::numeric_limits<double>::infinity());
    return best;
}

}  // namespace segmatch
