#include "segmatch/hausdorff.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace segmatch {

namespace {

void require_nonempty(const std::vector<HSeg>& A, const std::vector<HSeg>& B) {
    if (A.empty() || B.empty()) throw std::invalid_argument("hausdorff: empty segment set");
}

// a shifted by delta lies in the union of B-segments within r, each widened by r.
bool covered(const HSeg& a, const std::vector<HSeg>& B, double delta, double r,
             std::vector<std::pair<double, double>>& scratch) {
    scratch.clear();
    const double y = a.y + delta;
    for (const auto& b : B)
        if (std::abs(y - b.y) <= r + kGeomTol) scratch.emplace_back(b.x_lo - r, b.x_hi + r);
    std::sort(scratch.begin(), scratch.end());
    double reach = a.x_lo;
    for (const auto& [lo, hi] : scratch) {
        if (lo > reach + kGeomTol) break;
        if (hi < reach - kGeomTol) continue;
        reach = std::max(reach, hi);
        if (reach >= a.x_hi - kGeomTol) return true;
    }
    return false;
}

// Radii at which the x-coverage of a can change, independent of the shift.
void gap_radii(const HSeg& a, const std::vector<HSeg>& B, std::vector<double>& out) {
    for (const auto& b : B) {
        out.push_back(b.x_lo - a.x_lo);
        out.push_back(a.x_hi - b.x_hi);
        for (const auto& c : B) out.push_back((c.x_lo - b.x_hi) / 2);
    }
}

std::vector<double> sorted_radii(std::vector<double> r) {
    r.push_back(0.0);
    std::erase_if(r, [](double v) { return v < 0.0; });
    std::sort(r.begin(), r.end());
    r.erase(std::unique(r.begin(), r.end()), r.end());
    return r;
}

// Smallest r in sorted candidates with pred(r); the last one is assumed to hold.
template <class Pred>
std::size_t first_true(const std::vector<double>& r, Pred pred) {
    std::size_t lo = 0, hi = r.size() - 1;
    while (lo < hi) {
        const std::size_t mid = (lo + hi) / 2;
        if (pred(r[mid]))
            hi = mid;
        else
            lo = mid + 1;
    }
    return lo;
}

double segment_distance(const HSeg& a, const HSeg& b) {
    const double gap = std::max({0.0, b.x_lo - a.x_hi, a.x_lo - b.x_hi});
    return std::max(std::abs(a.y - b.y), gap);
}

}  // namespace

double hausdorff_one_way(const std::vector<HSeg>& A, const std::vector<HSeg>& B, double delta) {
    require_nonempty(A, B);
    std::vector<std::pair<double, double>> scratch;
    std::vector<double> radii;
    double h = 0.0;
    for (const auto& a : A) {
        if (covered(a, B, delta, h, scratch)) continue;
        radii.clear();
        for (const auto& b : B) radii.push_back(std::abs(a.y + delta - b.y));
        gap_radii(a, B, radii);
        auto r = sorted_radii(std::move(radii));
        std::erase_if(r, [&](double v) { return v <= h; });
        // Past every |dy| and every gap the whole of a is covered.
        r.push_back(r.empty() ? h + 1.0 : r.back() + 1.0);
        h = r[first_true(r, [&](double v) { return covered(a, B, delta, v, scratch); })];
        radii = {};
    }
    return h;
}

double hausdorff_one_way(const std::vector<HSeg>& A, const std::vector<HSeg>& B) {
    return hausdorff_one_way(A, B, 0.0);
}

double hausdorff_symmetric(const std::vector<HSeg>& A, const std::vector<HSeg>& B) {
    return std::max(hausdorff_one_way(A, B), hausdorff_one_way(B, A));
}

double spread_ratio(const std::vector<HSeg>& A, const std::vector<HSeg>& B) {
    require_nonempty(A, B);
    std::vector<HSeg> all(A);
    all.insert(all.end(), B.begin(), B.end());
    double x_lo = all[0].x_lo, x_hi = all[0].x_hi, y_lo = all[0].y, y_hi = all[0].y;
    double closest = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < all.size(); ++i) {
        x_lo = std::min(x_lo, all[i].x_lo);
        x_hi = std::max(x_hi, all[i].x_hi);
        y_lo = std::min(y_lo, all[i].y);
        y_hi = std::max(y_hi, all[i].y);
        for (std::size_t j = i + 1; j < all.size(); ++j) {
            const double d = segment_distance(all[i], all[j]);
            if (d > 0) closest = std::min(closest, d);
        }
    }
    const double diam = std::max(x_hi - x_lo, y_hi - y_lo);
    if (!std::isfinite(closest) || diam <= 0) return 1.0;
    return std::max(1.0, diam / closest);
}

namespace {

std::vector<double> shift_candidates(const std::vector<HSeg>& A, const std::vector<HSeg>& B) {
    std::vector<double> c;
    c.reserve(A.size() * B.size());
    for (const auto& a : A)
        for (const auto& b : B) c.push_back(b.y - a.y);
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    return c;
}

bool all_covered(const std::vector<HSeg>& A, const std::vector<HSeg>& B, double delta, double r,
                 std::vector<std::pair<double, double>>& scratch) {
    for (const auto& a : A)
        if (!covered(a, B, delta, r, scratch)) return false;
    return true;
}

}  // namespace

VTransResult min_vtrans_exact(const std::vector<HSeg>& A, const std::vector<HSeg>& B) {
    require_nonempty(A, B);
    const auto c = shift_candidates(A, B);
    std::vector<double> radii;
    for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t j = i + 1; j < c.size(); ++j) radii.push_back((c[j] - c[i]) / 2);
    for (const auto& a : A) gap_radii(a, B, radii);
    auto r = sorted_radii(std::move(radii));
    const double upper = hausdorff_one_way(A, B, c.front());
    while (!r.empty() && r.back() > upper) r.pop_back();
    r.push_back(upper);

    std::vector<std::pair<double, double>> scratch;
    auto feasible_shifts = [&](double rad) {
        std::vector<double> out;
        for (double ci : c)
            for (double d : {ci - rad, ci + rad})
                if (all_covered(A, B, d, rad, scratch)) out.push_back(d);
        return out;
    };
    const auto k = first_true(r, [&](double rad) { return !feasible_shifts(rad).empty(); });
    VTransResult best{c.front(), upper};
    for (double d : feasible_shifts(r[k])) {
        const double h = hausdorff_one_way(A, B, d);
        if (h < best.rho || (h == best.rho && std::abs(d) < std::abs(best.delta))) best = {d, h};
    }
    return best;
}

Discretization discretize(const std::vector<HSeg>& A, const std::vector<HSeg>& B, double rho_hat, double eps) {
    require_nonempty(A, B);
    if (!(rho_hat > 0.0) || !std::isfinite(rho_hat)) throw std::invalid_argument("discretize: rho_hat must be positive");
    if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("discretize: eps must lie in (0, 1)");
    Discretization out;
    const double g = eps * rho_hat / 4.0;
    const double radius = (1.0 + eps / 2.0) * rho_hat;
    out.step = g;
    out.radius = radius;
    constexpr double limit = 4.0e18;
    auto cell = [&](double v) {
        if (!(std::abs(v) < limit)) throw std::overflow_error("discretize: grid index out of range");
        return static_cast<std::int64_t>(v);
    };
    const double slack = 1e-9;

    std::map<std::int64_t, std::vector<Interval>> prow, trow;
    std::int64_t cmin = std::numeric_limits<std::int64_t>::max(), cmax = std::numeric_limits<std::int64_t>::min();
    for (const auto& a : A) {
        const auto r = cell(std::floor(a.y / g));
        const Interval iv{cell(std::floor(a.x_lo / g)), cell(std::floor(a.x_hi / g))};
        prow[r].push_back(iv);
        cmin = std::min(cmin, iv.lo);
        cmax = std::max(cmax, iv.hi);
    }
    for (const auto& b : B) {
        const auto k_lo = cell(std::ceil((b.y - radius) / g - slack));
        const auto k_hi = cell(std::floor((b.y + radius) / g + slack)) - 1;
        const Interval iv{cell(std::ceil((b.x_lo - radius) / g - slack)),
                          cell(std::floor((b.x_hi + radius) / g + slack)) - 1};
        if (k_lo > k_hi || iv.lo > iv.hi) continue;
        cmin = std::min(cmin, iv.lo);
        cmax = std::max(cmax, iv.hi);
        for (auto k = k_lo; k <= k_hi; ++k) trow[k].push_back(iv);
    }

    auto& inst = out.instance;
    inst.universe = cmax - cmin + 1;
    auto shifted = [&](std::vector<Interval> v) {
        for (auto& iv : v) {
            iv.lo -= cmin - 1;
            iv.hi -= cmin - 1;
        }
        return IntervalUnion(std::move(v));
    };
    const std::int64_t p0 = prow.begin()->first;
    inst.pattern_length = prow.rbegin()->first - p0 + 1;
    for (auto& [r, v] : prow) inst.pattern.push_back({r - p0, shifted(std::move(v))});
    std::int64_t t0 = 0;
    if (!trow.empty()) {
        t0 = trow.begin()->first;
        inst.text_length = trow.rbegin()->first - t0 + 1;
        for (auto& [k, v] : trow) inst.text.push_back({k - t0, shifted(std::move(v))});
    }
    out.row_offset = t0 - p0;
    return out;
}

namespace {

// Half the smallest positive gap among the values.
double min_gap(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < v.size(); ++i)
        if (v[i] > v[i - 1]) best = std::min(best, v[i] - v[i - 1]);
    return best / 2.0;
}

}  // namespace

VTransSearch min_vtrans_search(const std::vector<HSeg>& A, const std::vector<HSeg>& B, double eps,
                               std::uint64_t seed) {
    require_nonempty(A, B);
    if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("min_vtrans_approx: eps must lie in (0, 1)");
    VTransSearch out;

    std::vector<std::pair<double, double>> scratch;
    for (const auto& b : B) {
        const double d = b.y - A.front().y;
        if (all_covered(A, B, d, 0.0, scratch)) {
            out.best = {d, hausdorff_one_way(A, B, d)};
            out.exact_zero = true;
            return out;
        }
    }

    // Every positive critical radius is at least the smaller of these half-gaps.
    const auto c = shift_candidates(A, B);
    std::vector<double> xs;
    for (const auto* set : {&A, &B})
        for (const auto& s : *set) {
            xs.push_back(s.x_lo);
            xs.push_back(s.x_hi);
        }
    const double lower = std::min(min_gap(c), min_gap(xs));
    const double d0 = B.front().y - A.front().y;
    const double upper = hausdorff_one_way(A, B, d0);
    out.best = {d0, upper};
    if (!std::isfinite(lower) || lower >= upper) return out;

    const double ratio = 1.0 + eps / 4.0;
    const auto K = static_cast<std::int64_t>(std::ceil(std::log(upper / lower) / std::log(ratio)));
    auto guess = [&](std::int64_t k) { return std::min(upper, lower * std::pow(ratio, static_cast<double>(k))); };

    std::map<std::int64_t, VTransResult> found;
    auto attempt = [&](std::int64_t k) {
        const double rho_hat = guess(k);
        const auto disc = discretize(A, B, rho_hat, eps);
        const auto shifts = sparse_to_dense(disc.instance, seed).result.shifts;
        out.guesses.emplace_back(rho_hat, !shifts.empty());
        if (shifts.empty()) return false;
        VTransResult best{0.0, std::numeric_limits<double>::infinity()};
        const std::size_t cap = 256;
        const std::size_t stride = std::max<std::size_t>(1, shifts.size() / cap);
        for (std::size_t i = 0; i < shifts.size(); i += stride) {
            const double d = disc.delta(shifts[i]);
            const double h = hausdorff_one_way(A, B, d);
            if (h < best.rho) best = {d, h};
        }
        found[k] = best;
        return true;
    };

    std::int64_t lo = 0, hi = K;
    while (lo < hi) {
        const auto mid = lo + (hi - lo) / 2;
        if (attempt(mid))
            hi = mid;
        else
            lo = mid + 1;
    }
    if (!found.count(hi) && !attempt(hi)) return out;
    if (found[hi].rho < out.best.rho) out.best = found[hi];
    return out;
}

VTransResult min_vtrans_approx(const std::vector<HSeg>& A, const std::vector<HSeg>& B, double eps,
                               std::uint64_t seed) {
    return min_vtrans_search(A, B, eps, seed).best;
}

}  // namespace segmatch
