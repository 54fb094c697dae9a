#include "segmatch/interval_match.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <memory>
#include <random>
#include <stdexcept>
#include <string>

#include <fftw3.h>

namespace segmatch {

IntervalUnion::IntervalUnion(std::vector<Interval> intervals) {
    for (const auto& iv : intervals)
        if (iv.lo > iv.hi) throw std::invalid_argument("interval lo > hi");
    std::sort(intervals.begin(), intervals.end(),
              [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    for (const auto& iv : intervals) {
        if (!parts_.empty() && iv.lo <= parts_.back().hi + 1)
            parts_.back().hi = std::max(parts_.back().hi, iv.hi);
        else
            parts_.push_back(iv);
    }
}

namespace {

// Part with the largest lo <= x, or end().
std::vector<Interval>::const_iterator part_at(const std::vector<Interval>& parts, std::int64_t x) {
    auto it = std::upper_bound(parts.begin(), parts.end(), x,
                               [](std::int64_t v, const Interval& iv) { return v < iv.lo; });
    if (it == parts.begin()) return parts.end();
    return std::prev(it);
}

}  // namespace

bool IntervalUnion::contains(std::int64_t x) const {
    auto it = part_at(parts_, x);
    return it != parts_.end() && x <= it->hi;
}

bool IntervalUnion::contains(const IntervalUnion& other) const {
    for (const auto& iv : other.parts_) {
        auto it = part_at(parts_, iv.lo);
        if (it == parts_.end() || iv.hi > it->hi) return false;
    }
    return true;
}

IntervalUnion IntervalUnion::united(const IntervalUnion& other) const {
    std::vector<Interval> all = parts_;
    all.insert(all.end(), other.parts_.begin(), other.parts_.end());
    return IntervalUnion(std::move(all));
}

std::size_t IntervalInstance::size() const {
    std::size_t s = 0;
    for (const auto& t : text) s += t ? t->size() : 1;
    for (const auto& p : pattern)
        if (p) s += p->size();
    return std::max<std::size_t>(s, 1);
}

std::size_t SparseInstance::size() const {
    std::size_t s = 0;
    for (const auto& e : text) s += e.symbol ? e.symbol->size() : 1;
    for (const auto& e : pattern)
        if (e.symbol) s += e.symbol->size();
    return std::max<std::size_t>(s, 1);
}

void validate(const IntervalInstance& inst) {
    if (inst.universe < 1) throw std::invalid_argument("M: must be >= 1");
    auto check = [&](const std::vector<Symbol>& seq, const char* name) {
        for (std::size_t i = 0; i < seq.size(); ++i) {
            if (!seq[i]) continue;
            for (const auto& iv : seq[i]->intervals())
                if (iv.lo < 1 || iv.hi > inst.universe)
                    throw std::invalid_argument(std::string(name) + "[" + std::to_string(i) +
                                                "]: endpoint outside [1, M]");
        }
    };
    check(inst.pattern, "pattern");
    check(inst.text, "text");
}

namespace {

std::int64_t lowest_shift(std::int64_t m) { return -(m - 1); }

// Light runs hold up to this many times sqrt(s) endpoint occurrences.
constexpr std::int64_t kGroupMass = 4;

bool imposes(const Symbol& p) { return p && !p->empty(); }

bool accepts(const Symbol* t, const IntervalUnion& p) {
    if (t == nullptr) return false;
    if (!*t) return true;
    return (*t)->contains(p);
}

}  // namespace

bool matches_at(const IntervalInstance& inst, std::int64_t shift) {
    const auto n = static_cast<std::int64_t>(inst.text.size());
    for (std::size_t i = 0; i < inst.pattern.size(); ++i) {
        if (!imposes(inst.pattern[i])) continue;
        const std::int64_t k = static_cast<std::int64_t>(i) + shift;
        const Symbol* t = (k >= 0 && k < n) ? &inst.text[static_cast<std::size_t>(k)] : nullptr;
        if (!accepts(t, *inst.pattern[i])) return false;
    }
    return true;
}

MatchResult brute_match(const IntervalInstance& inst) {
    MatchResult out;
    const auto m = static_cast<std::int64_t>(inst.pattern.size());
    const auto n = static_cast<std::int64_t>(inst.text.size());
    for (std::int64_t j = lowest_shift(m); j <= n - 1; ++j)
        if (matches_at(inst, j)) out.shifts.push_back(j);
    return out;
}

IntervalInstance rank_compress(const IntervalInstance& inst) {
    std::vector<std::int64_t> coords;
    auto collect = [&](const std::vector<Symbol>& seq) {
        for (const auto& s : seq) {
            if (!s) continue;
            for (const auto& iv : s->intervals()) {
                coords.push_back(iv.lo);
                coords.push_back(iv.hi + 1);
            }
        }
    };
    collect(inst.pattern);
    collect(inst.text);
    std::sort(coords.begin(), coords.end());
    coords.erase(std::unique(coords.begin(), coords.end()), coords.end());
    auto rank = [&](std::int64_t x) {
        return static_cast<std::int64_t>(std::lower_bound(coords.begin(), coords.end(), x) -
                                         coords.begin()) + 1;
    };
    auto map_seq = [&](const std::vector<Symbol>& seq) {
        std::vector<Symbol> out;
        out.reserve(seq.size());
        for (const auto& s : seq) {
            if (!s) {
                out.emplace_back(std::nullopt);
                continue;
            }
            std::vector<Interval> parts;
            for (const auto& iv : s->intervals()) parts.push_back({rank(iv.lo), rank(iv.hi + 1) - 1});
            out.emplace_back(IntervalUnion(std::move(parts)));
        }
        return out;
    };
    IntervalInstance out;
    out.universe = std::max<std::int64_t>(1, static_cast<std::int64_t>(coords.size()) - 1);
    out.pattern = map_seq(inst.pattern);
    out.text = map_seq(inst.text);
    out.sparse = inst.sparse;
    return out;
}

CoarseInstance reduce_universe(const IntervalInstance& inst) {
    CoarseInstance c;
    c.source = &inst;
    const auto M = inst.universe;
    const auto s = static_cast<std::int64_t>(inst.size());
    c.threshold = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::sqrt(static_cast<double>(s))));

    std::vector<std::int64_t> occ(static_cast<std::size_t>(M), 0);
    auto count = [&](const std::vector<Symbol>& seq) {
        for (const auto& sym : seq) {
            if (!sym) continue;
            for (const auto& iv : sym->intervals()) {
                ++occ[static_cast<std::size_t>(iv.lo - 1)];
                ++occ[static_cast<std::size_t>(iv.hi - 1)];
            }
        }
    };
    count(inst.pattern);
    count(inst.text);

    c.group_of.assign(static_cast<std::size_t>(M), 0);
    std::int64_t x = 1;
    while (x <= M) {
        const auto g = static_cast<std::int32_t>(c.groups.size());
        if (occ[static_cast<std::size_t>(x - 1)] > c.threshold) {
            c.groups.push_back({x, x});
            c.heavy.push_back(true);
            c.group_of[static_cast<std::size_t>(x - 1)] = g;
            ++x;
            continue;
        }
        std::int64_t mass = 0;
        const std::int64_t start = x;
        while (x <= M) {
            const auto o = occ[static_cast<std::size_t>(x - 1)];
            if (o > c.threshold) break;
            if (x > start && mass + o > kGroupMass * c.threshold) break;
            mass += o;
            c.group_of[static_cast<std::size_t>(x - 1)] = g;
            ++x;
        }
        c.groups.push_back({start, x - 1});
        c.heavy.push_back(false);
    }
    return c;
}

namespace {

enum class Cover : std::uint8_t { None, Partial, Full };

// Per-group coverage of one union: (group, state) for every group it touches.
void classify(const CoarseInstance& c, const IntervalUnion& u,
              std::vector<std::pair<std::int32_t, Cover>>& out) {
    out.clear();
    for (const auto& iv : u.intervals()) {
        const auto gl = c.group_of[static_cast<std::size_t>(iv.lo - 1)];
        const auto gh = c.group_of[static_cast<std::size_t>(iv.hi - 1)];
        for (auto g = gl; g <= gh; ++g) {
            const auto& range = c.groups[static_cast<std::size_t>(g)];
            const bool full = range.lo >= iv.lo && range.hi <= iv.hi;
            Cover st = full ? Cover::Full : Cover::Partial;
            if (!out.empty() && out.back().first == g) {
                out.back().second = Cover::Partial;
            } else {
                out.emplace_back(g, st);
            }
        }
    }
}

// Smallest 2^a 3^b 5^c at or above n.
std::size_t smooth_size(std::size_t n) {
    std::size_t best = 1;
    while (best < n) best <<= 1;
    for (std::size_t p5 = 1; p5 < best; p5 *= 5)
        for (std::size_t p35 = p5; p35 < best; p35 *= 3) {
            std::size_t v = p35;
            while (v < n) v <<= 1;
            best = std::min(best, v);
        }
    return best;
}

class FftCorrelator {
public:
    FftCorrelator(std::size_t m, std::size_t n) : m_(m), n_(n) {
        size_ = smooth_size(n + m - 1);
        spec_ = size_ / 2 + 1;
        real_ = fftw_alloc_real(size_);
        cplx_ = fftw_alloc_complex(spec_);
        fwd_ = fftw_plan_dft_r2c_1d(static_cast<int>(size_), real_, cplx_, FFTW_ESTIMATE);
        inv_ = fftw_plan_dft_c2r_1d(static_cast<int>(size_), cplx_, real_, FFTW_ESTIMATE);
        acc_.assign(spec_, {0.0, 0.0});
        pf_.resize(spec_);
    }
    ~FftCorrelator() {
        fftw_destroy_plan(fwd_);
        fftw_destroy_plan(inv_);
        fftw_free(real_);
        fftw_free(cplx_);
    }
    FftCorrelator(const FftCorrelator&) = delete;
    FftCorrelator& operator=(const FftCorrelator&) = delete;

    // Sparse pattern positions with weights against a 0/1 text indicator.
    void add(const std::vector<std::int64_t>& pat, const std::vector<double>& weight, const std::vector<char>& txt) {
        std::fill(real_, real_ + size_, 0.0);
        for (std::size_t k = 0; k < pat.size(); ++k)
            real_[m_ - 1 - static_cast<std::size_t>(pat[k])] = weight.empty() ? 1.0 : weight[k];
        fftw_execute(fwd_);
        for (std::size_t k = 0; k < spec_; ++k) pf_[k] = {cplx_[k][0], cplx_[k][1]};
        for (std::size_t k = 0; k < n_; ++k) real_[k] = txt[k];
        std::fill(real_ + n_, real_ + size_, 0.0);
        fftw_execute(fwd_);
        for (std::size_t k = 0; k < spec_; ++k) acc_[k] += pf_[k] * std::complex<double>(cplx_[k][0], cplx_[k][1]);
    }

    // Sum over added pairs of pattern entries landing on marked text, per
    // shift j in [-(m-1), n-1] at index j + m - 1.
    void result(std::vector<std::int64_t>& out) {
        for (std::size_t k = 0; k < spec_; ++k) {
            cplx_[k][0] = acc_[k].real();
            cplx_[k][1] = acc_[k].imag();
        }
        fftw_execute(inv_);
        for (std::size_t idx = 0; idx < out.size(); ++idx)
            out[idx] += std::llround(real_[idx] / static_cast<double>(size_));
    }

private:
    std::size_t m_, n_, size_ = 1, spec_ = 1;
    double* real_ = nullptr;
    fftw_complex* cplx_ = nullptr;
    fftw_plan fwd_{}, inv_{};
    std::vector<std::complex<double>> acc_, pf_;
};

}  // namespace

CoarseMatch fft_coarse_match(const CoarseInstance& coarse) {
    const auto& inst = *coarse.source;
    const std::size_t m = inst.pattern.size();
    const std::size_t n = inst.text.size();
    const std::size_t G = coarse.universe();
    CoarseMatch out;
    if (m == 0) {
        for (std::int64_t j = 1; j <= static_cast<std::int64_t>(n) - 1; ++j) out.surviving.push_back(j);
        return out;
    }

    std::vector<std::vector<std::int64_t>> t_full(G), t_part(G), p_full(G), p_part(G);
    std::vector<std::int64_t> wild;
    std::vector<std::pair<std::int32_t, Cover>> scratch;
    for (std::size_t k = 0; k < n; ++k) {
        const auto& t = inst.text[k];
        if (!t) {
            wild.push_back(static_cast<std::int64_t>(k));
            continue;
        }
        classify(coarse, *t, scratch);
        for (auto [g, st] : scratch)
            (st == Cover::Full ? t_full : t_part)[static_cast<std::size_t>(g)].push_back(static_cast<std::int64_t>(k));
    }
    for (std::size_t i = 0; i < m; ++i) {
        if (!imposes(inst.pattern[i])) continue;
        classify(coarse, *inst.pattern[i], scratch);
        for (auto [g, st] : scratch)
            (st == Cover::Full ? p_full : p_part)[static_cast<std::size_t>(g)].push_back(static_cast<std::int64_t>(i));
    }

    // Mismatches per shift: (pattern entry, group) pairs minus hits on
    // accepting text positions. Small groups count hits directly, large ones
    // through one shared FFT accumulation.
    const std::size_t shifts = n + m - 1;
    std::vector<std::int64_t> hits(shifts, 0);
    std::int64_t total = 0;
    std::unique_ptr<FftCorrelator> corr;
    const double fft_size = static_cast<double>(smooth_size(shifts));
    const double fft_cost = fft_size * std::log2(fft_size + 2.0);
    const auto pad = static_cast<std::int64_t>(m) - 1;
    auto count_direct = [&](const std::vector<std::int64_t>& pat, const std::vector<std::int64_t>& txt) {
        for (auto i : pat)
            for (auto k : txt) ++hits[static_cast<std::size_t>(k - i + pad)];
    };
    std::vector<char> mark(n, 0);
    auto correlate = [&](const std::vector<std::int64_t>& pat, const std::vector<double>& weight,
                         std::initializer_list<const std::vector<std::int64_t>*> txt) {
        if (!corr) corr = std::make_unique<FftCorrelator>(m, n);
        std::fill(mark.begin(), mark.end(), 0);
        for (const auto* t : txt)
            for (auto k : *t) mark[static_cast<std::size_t>(k)] = 1;
        corr->add(pat, weight, mark);
    };

    // Wildcard text accepts every pattern entry of every group, so its hits
    // are one correlation of per-entry group counts against the wildcards.
    std::vector<double> weight(m, 0.0);
    for (std::size_t g = 0; g < G; ++g) {
        for (auto i : p_full[g]) weight[static_cast<std::size_t>(i)] += 1.0;
        for (auto i : p_part[g]) weight[static_cast<std::size_t>(i)] += 1.0;
        total += static_cast<std::int64_t>(p_full[g].size() + p_part[g].size());
    }
    if (!wild.empty() && total > 0) {
        std::vector<std::int64_t> users;
        std::vector<double> w;
        for (std::size_t i = 0; i < m; ++i)
            if (weight[i] > 0) {
                users.push_back(static_cast<std::int64_t>(i));
                w.push_back(weight[i]);
            }
        if (static_cast<double>(total) * static_cast<double>(wild.size()) <= fft_cost) {
            for (std::size_t u = 0; u < users.size(); ++u)
                for (auto k : wild)
                    hits[static_cast<std::size_t>(k - users[u] + pad)] += static_cast<std::int64_t>(w[u]);
        } else {
            correlate(users, w, {&wild});
        }
    }
    for (std::size_t g = 0; g < G; ++g) {
        const auto &pf = p_full[g], &pp = p_part[g], &tf = t_full[g], &tp = t_part[g];
        if (!pf.empty()) {
            if (static_cast<double>(pf.size()) * static_cast<double>(tf.size()) <= fft_cost)
                count_direct(pf, tf);
            else
                correlate(pf, {}, {&tf});
        }
        if (!pp.empty()) {
            if (static_cast<double>(pp.size()) * static_cast<double>(tf.size() + tp.size()) <= fft_cost) {
                count_direct(pp, tf);
                count_direct(pp, tp);
            } else {
                correlate(pp, {}, {&tf, &tp});
            }
        }
    }
    if (corr) corr->result(hits);

    const auto lo = lowest_shift(static_cast<std::int64_t>(m));
    std::vector<char> alive(shifts, 0);
    for (std::size_t idx = 0; idx < shifts; ++idx) {
        if (hits[idx] == total) {
            alive[idx] = 1;
            out.surviving.push_back(lo + static_cast<std::int64_t>(idx));
        }
    }
    for (std::size_t g = 0; g < G; ++g) {
        for (auto i : p_part[g]) {
            for (auto k : t_part[g]) {
                const std::int64_t j = k - i;
                if (alive[static_cast<std::size_t>(j - lo)]) out.suspects.push_back({i, j});
            }
        }
    }
    std::sort(out.suspects.begin(), out.suspects.end(), [](const SuspectPair& a, const SuspectPair& b) {
        return a.shift != b.shift ? a.shift < b.shift : a.pattern_pos < b.pattern_pos;
    });
    out.suspects.erase(std::unique(out.suspects.begin(), out.suspects.end()), out.suspects.end());
    return out;
}

MatchResult verify_candidates(const IntervalInstance& inst, const CoarseMatch& coarse) {
    std::vector<std::int64_t> failed;
    const auto n = static_cast<std::int64_t>(inst.text.size());
    for (const auto& sp : coarse.suspects) {
        if (!failed.empty() && failed.back() == sp.shift) continue;
        const auto& p = inst.pattern[static_cast<std::size_t>(sp.pattern_pos)];
        const std::int64_t k = sp.pattern_pos + sp.shift;
        const Symbol* t = (k >= 0 && k < n) ? &inst.text[static_cast<std::size_t>(k)] : nullptr;
        if (!accepts(t, *p)) failed.push_back(sp.shift);
    }
    MatchResult out;
    for (auto j : coarse.surviving)
        if (!std::binary_search(failed.begin(), failed.end(), j)) out.shifts.push_back(j);
    return out;
}

MatchResult dense_interval_match(const IntervalInstance& inst) {
    const IntervalInstance compressed = rank_compress(inst);
    const CoarseInstance coarse = reduce_universe(compressed);
    return verify_candidates(compressed, fft_coarse_match(coarse));
}

SparseInstance to_sparse(const IntervalInstance& inst) {
    SparseInstance out;
    out.universe = inst.universe;
    out.pattern_length = static_cast<std::int64_t>(inst.pattern.size());
    out.text_length = static_cast<std::int64_t>(inst.text.size());
    for (std::size_t i = 0; i < inst.pattern.size(); ++i)
        if (imposes(inst.pattern[i])) out.pattern.push_back({static_cast<std::int64_t>(i), inst.pattern[i]});
    for (std::size_t k = 0; k < inst.text.size(); ++k)
        if (!inst.text[k] || !inst.text[k]->empty())
            out.text.push_back({static_cast<std::int64_t>(k), inst.text[k]});
    return out;
}

bool matches_at(const SparseInstance& inst, std::int64_t shift) {
    for (const auto& e : inst.pattern) {
        if (!imposes(e.symbol)) continue;
        const std::int64_t k = e.pos + shift;
        auto it = std::lower_bound(inst.text.begin(), inst.text.end(), k,
                                   [](const SparseEntry& t, std::int64_t v) { return t.pos < v; });
        if (it == inst.text.end() || it->pos != k) return false;
        if (!accepts(&it->symbol, *e.symbol)) return false;
    }
    return true;
}

namespace {

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mul_mod(r, a, m);
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    return r;
}

std::int64_t floor_mod(std::int64_t a, std::int64_t p) {
    const auto r = a % p;
    return r < 0 ? r + p : r;
}

int ceil_log2(std::int64_t x) {
    int k = 0;
    while ((std::int64_t{1} << k) < x) ++k;
    return k;
}

}  // namespace

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++r;
    }
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        std::uint64_t x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < r; ++i) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

int default_rounds(std::int64_t universe) {
    return 2 * ceil_log2(std::max<std::int64_t>(universe, 4));
}

SparseReduction sparse_to_dense(const SparseInstance& inst, std::uint64_t seed, int rounds) {
    SparseReduction out;
    const std::int64_t m = inst.pattern_length;
    const std::int64_t n = inst.text_length;
    const std::int64_t lo = lowest_shift(m);

    std::vector<const SparseEntry*> constraints;
    for (const auto& e : inst.pattern)
        if (imposes(e.symbol)) constraints.push_back(&e);
    if (constraints.empty()) {
        for (std::int64_t j = lo; j <= n - 1; ++j) out.anchored.push_back(j);
        out.candidates = out.anchored;
        out.result.shifts = out.anchored;
        return out;
    }

    // A matching shift must put the first constrained entry on a listed text entry.
    const std::int64_t i0 = constraints.front()->pos;
    for (const auto& t : inst.text) {
        const std::int64_t j = t.pos - i0;
        if (j >= lo && j <= n - 1) out.anchored.push_back(j);
    }

    const std::int64_t span = std::max(inst.universe, n + m);
    if (rounds < 0) rounds = default_rounds(span);
    const double s = static_cast<double>(inst.size());
    const double logm = std::max(2.0, std::ceil(std::log2(static_cast<double>(std::max<std::int64_t>(span, 4)))));
    const auto p_lo = static_cast<std::uint64_t>(std::max(2.0, 2.0 * s * logm));
    const auto p_hi = static_cast<std::uint64_t>(std::max(3.0, 8.0 * s * logm));

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint64_t> pick(p_lo, p_hi);
    std::vector<std::int64_t> alive = out.anchored;

    for (int r = 0; r < rounds && !alive.empty(); ++r) {
        std::uint64_t prime = pick(rng);
        while (!is_prime(prime)) prime = pick(rng);
        const auto P = static_cast<std::int64_t>(prime);

        std::vector<std::vector<Interval>> pparts(static_cast<std::size_t>(P));
        std::vector<char> pset(static_cast<std::size_t>(P), 0);
        for (const auto* e : constraints) {
            const auto res = static_cast<std::size_t>(floor_mod(e->pos, P));
            pset[res] = 1;
            const auto& iv = e->symbol->intervals();
            pparts[res].insert(pparts[res].end(), iv.begin(), iv.end());
        }
        std::vector<std::vector<Interval>> tparts(static_cast<std::size_t>(P));
        std::vector<char> twild(static_cast<std::size_t>(P), 0);
        for (const auto& t : inst.text) {
            const auto res = static_cast<std::size_t>(floor_mod(t.pos, P));
            if (!t.symbol) {
                twild[res] = 1;
                continue;
            }
            const auto& iv = t.symbol->intervals();
            tparts[res].insert(tparts[res].end(), iv.begin(), iv.end());
        }

        IntervalInstance folded;
        folded.universe = inst.universe;
        folded.pattern.resize(static_cast<std::size_t>(P));
        folded.text.resize(static_cast<std::size_t>(2 * P));
        for (std::int64_t k = 0; k < P; ++k) {
            const auto ks = static_cast<std::size_t>(k);
            if (pset[ks]) folded.pattern[ks] = IntervalUnion(std::move(pparts[ks]));
            Symbol t = twild[ks] ? Symbol{} : Symbol{IntervalUnion(std::move(tparts[ks]))};
            folded.text[ks] = t;
            folded.text[ks + static_cast<std::size_t>(P)] = t;
        }

        FoldedRound round;
        round.prime = prime;
        round.residue_match.assign(static_cast<std::size_t>(P), false);
        for (auto j : dense_interval_match(folded).shifts)
            if (j >= 0 && j < P) round.residue_match[static_cast<std::size_t>(j)] = true;

        std::vector<std::int64_t> next;
        for (auto j : alive)
            if (round.residue_match[static_cast<std::size_t>(floor_mod(j, P))]) next.push_back(j);
        alive = std::move(next);
        out.rounds.push_back(std::move(round));
    }

    out.candidates = alive;
    for (auto j : alive)
        if (matches_at(inst, j)) out.result.shifts.push_back(j);
    return out;
}

MatchResult interval_match(const IntervalInstance& inst, std::uint64_t seed) {
    if (inst.sparse) return sparse_to_dense(to_sparse(inst), seed).result;
    return dense_interval_match(inst);
}

}  // namespace segmatch
