#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace segmatch {

/// Closed integer interval [lo, hi].
struct Interval {
    std::int64_t lo = 0;
    std::int64_t hi = 0;
    friend bool operator==(const Interval&, const Interval&) = default;
};

/// Sorted, disjoint, non-adjacent closed integer intervals.
class IntervalUnion {
public:
    IntervalUnion() = default;
    /// Normalizes: sorts, merges overlapping and adjacent intervals. Throws if lo > hi.
    explicit IntervalUnion(std::vector<Interval> intervals);

    const std::vector<Interval>& intervals() const { return parts_; }
    std::size_t size() const { return parts_.size(); }
    bool empty() const { return parts_.empty(); }

    bool contains(std::int64_t x) const;
    /// Every point of `other` lies in *this (binary search per interval of `other`).
    bool contains(const IntervalUnion& other) const;
    IntervalUnion united(const IntervalUnion& other) const;

    friend bool operator==(const IntervalUnion&, const IntervalUnion&) = default;

private:
    std::vector<Interval> parts_;
};

/// nullopt is the empty-set symbol: as a pattern entry it imposes nothing,
/// as a text entry it accepts anything.
using Symbol = std::optional<IntervalUnion>;

/// Pattern and text over the universe [1, M]. Text positions outside [0, n)
/// hold the empty union, so a non-wildcard pattern entry placed there fails.
/// `sparse` routes interval_match through the random-prime folding stage.
struct IntervalInstance {
    std::int64_t universe = 1;
    std::vector<Symbol> pattern;
    std::vector<Symbol> text;
    bool sparse = false;

    /// Text intervals plus non-wildcard pattern intervals.
    std::size_t size() const;
};

/// Shift j aligns pattern[i] with text[i + j]; j ranges over [-(m-1), n-1].
struct MatchResult {
    std::vector<std::int64_t> shifts;
    friend bool operator==(const MatchResult&, const MatchResult&) = default;
};

/// Throws std::invalid_argument if an endpoint is outside [1, M].
void validate(const IntervalInstance& inst);

/// Direct evaluation of every shift.
MatchResult brute_match(const IntervalInstance& inst);

/// Single-shift check used by verification and by the sparse combiner.
bool matches_at(const IntervalInstance& inst, std::int64_t shift);

/// Replaces coordinates by ranks while keeping gaps between non-adjacent
/// coordinates, so containment is unchanged. Universe becomes O(s).
IntervalInstance rank_compress(const IntervalInstance& inst);

/// Coarse image of an instance: coordinate groups and per-position
/// classification of each group.
struct CoarseInstance {
    const IntervalInstance* source = nullptr;
    /// group_of[x - 1] for x in [1, M].
    std::vector<std::int32_t> group_of;
    /// Inclusive coordinate range per group.
    std::vector<Interval> groups;
    std::vector<bool> heavy;
    std::int64_t threshold = 0;

    std::size_t universe() const { return groups.size(); }
};

/// Coordinates with more than sqrt(s) endpoint occurrences become singleton
/// groups; the rest are packed into runs of at most 4 sqrt(s) occurrences.
/// Expects a rank-compressed instance; the result refers to `inst`.
CoarseInstance reduce_universe(const IntervalInstance& inst);

/// A (pattern position, shift) whose coarse comparison cannot decide containment.
struct SuspectPair {
    std::int64_t pattern_pos = 0;
    std::int64_t shift = 0;
    friend bool operator==(const SuspectPair&, const SuspectPair&) = default;
};

struct CoarseMatch {
    std::vector<std::int64_t> surviving;
    std::vector<SuspectPair> suspects;
};

/// FFT correlation over coarse groups. Never discards a true shift.
CoarseMatch fft_coarse_match(const CoarseInstance& coarse);

/// Exact check of every suspect pair; drops shifts with a failing pair.
MatchResult verify_candidates(const IntervalInstance& inst, const CoarseMatch& coarse);

/// Sparse form: only listed positions carry content. Unlisted pattern
/// positions are wildcards; unlisted text positions hold the empty union.
struct SparseEntry {
    std::int64_t pos = 0;
    Symbol symbol;
};

struct SparseInstance {
    std::int64_t universe = 1;
    std::int64_t pattern_length = 0;
    std::int64_t text_length = 0;
    /// Sorted by pos, positions unique.
    std::vector<SparseEntry> pattern;
    std::vector<SparseEntry> text;

    std::size_t size() const;
};

SparseInstance to_sparse(const IntervalInstance& inst);
bool matches_at(const SparseInstance& inst, std::int64_t shift);

/// One folding round: positions taken modulo `prime`.
struct FoldedRound {
    std::uint64_t prime = 0;
    /// residue_match[r] is true when the folded instance matches at cyclic shift r.
    std::vector<bool> residue_match;
};

struct SparseReduction {
    std::vector<FoldedRound> rounds;
    /// Shifts anchored at a non-empty text entry that pass every round,
    /// before exact verification.
    std::vector<std::int64_t> candidates;
    /// Anchored shifts considered before folding.
    std::vector<std::int64_t> anchored;
    /// Candidates that pass exact verification.
    MatchResult result;
};

/// M here is max(universe, n + m). Primes are drawn from [2 s log2 M, 8 s log2 M];
/// the default round count is 2 * ceil(log2(max(M, 4))). Rounds stop once no
/// candidate is left.
SparseReduction sparse_to_dense(const SparseInstance& inst, std::uint64_t seed,
                                int rounds = -1);

int default_rounds(std::int64_t universe);

/// Full pipeline; sparse instances go through sparse_to_dense first.
MatchResult interval_match(const IntervalInstance& inst, std::uint64_t seed = 1);

/// Dense pipeline only: rank-compress, reduce, FFT coarse match, verify.
MatchResult dense_interval_match(const IntervalInstance& inst);

bool is_prime(std::uint64_t n);

}  // namespace segmatch
