#include "segmatch/kinetic_tree.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace segmatch {

namespace {
constexpr double kNever = std::numeric_limits<double>::infinity();
}

KineticSegmentTree::KineticSegmentTree(std::size_t leaves, double x0) : n_(leaves), x_(x0) {
    if (n_ == 0) throw std::invalid_argument("KineticSegmentTree: no leaves");
    line_.assign(4 * n_, {});
    lazy_.assign(4 * n_, {});
    best_.assign(4 * n_, 0);
    melt_.assign(4 * n_, kNever);
    build(1, 0, n_ - 1);
}

void KineticSegmentTree::build(std::size_t node, std::size_t nl, std::size_t nr) {
    best_[node] = nl;
    if (nl == nr) return;
    const std::size_t mid = (nl + nr) / 2;
    build(2 * node, nl, mid);
    build(2 * node + 1, mid + 1, nr);
}

double KineticSegmentTree::max_value() const { return line_[1].m * x_ + line_[1].c; }

void KineticSegmentTree::apply(std::size_t node, Line l) {
    line_[node].m += l.m;
    line_[node].c += l.c;
    lazy_[node].m += l.m;
    lazy_[node].c += l.c;
}

void KineticSegmentTree::push(std::size_t node) {
    if (lazy_[node].m != 0.0 || lazy_[node].c != 0.0) {
        apply(2 * node, lazy_[node]);
        apply(2 * node + 1, lazy_[node]);
        lazy_[node] = {};
    }
}

void KineticSegmentTree::pull(std::size_t node) {
    const std::size_t l = 2 * node, r = 2 * node + 1;
    const double vl = line_[l].m * x_ + line_[l].c;
    const double vr = line_[r].m * x_ + line_[r].c;
    const bool left_wins = vl >= vr;
    const std::size_t w = left_wins ? l : r, o = left_wins ? r : l;
    line_[node] = line_[w];
    best_[node] = best_[w];
    double melt = std::min(melt_[l], melt_[r]);
    if (line_[o].m > line_[w].m) {
        const double gap = (left_wins ? vl - vr : vr - vl);
        melt = std::min(melt, x_ + gap / (line_[o].m - line_[w].m));
    }
    melt_[node] = melt;
}

void KineticSegmentTree::add(std::size_t node, std::size_t nl, std::size_t nr, std::size_t lo,
                             std::size_t hi, Line l) {
    if (hi < nl || nr < lo) return;
    if (lo <= nl && nr <= hi) {
        apply(node, l);
        return;
    }
    push(node);
    const std::size_t mid = (nl + nr) / 2;
    add(2 * node, nl, mid, lo, hi, l);
    add(2 * node + 1, mid + 1, nr, lo, hi, l);
    pull(node);
}

void KineticSegmentTree::add_line(std::size_t lo, std::size_t hi, double slope, double intercept) {
    if (lo > hi || hi >= n_) throw std::out_of_range("KineticSegmentTree: bad leaf range");
    add(1, 0, n_ - 1, lo, hi, {slope, intercept});
}

void KineticSegmentTree::heal(std::size_t node, std::size_t nl, std::size_t nr) {
    if (melt_[node] > x_ || nl == nr) return;
    push(node);
    const std::size_t mid = (nl + nr) / 2;
    heal(2 * node, nl, mid);
    heal(2 * node + 1, mid + 1, nr);
    pull(node);
}

void KineticSegmentTree::advance(double x) {
    if (x < x_) throw std::invalid_argument("KineticSegmentTree: x must not decrease");
    x_ = x;
    heal(1, 0, n_ - 1);
}

}  // namespace segmatch
