#pragma once

#include <cstdint>
#include <random>

#include "segmatch/geometry.hpp"
#include "segmatch/interval_match.hpp"

namespace segmatch::gen {

using Rng = std::mt19937_64;

struct SegmentSpec {
    double lo = 0.0;
    double hi = 100.0;
    /// Longest segment as a fraction of the box side.
    double max_len = 0.35;
    /// Coordinates rounded to multiples of snap when > 0.
    double snap = 0.0;
    /// Weights drawn from [0.5, 2] instead of 1.
    bool weighted = false;
};

/// Uniform segments in the box [lo, hi]^2.
SegmentSet random_segments(Rng& rng, int n_horizontal, int n_vertical, const SegmentSpec& spec = {});

/// Chain of `segments` edges built from cumulative uniform steps in [-step, step]^2.
PolyChain random_chain(Rng& rng, int segments, double step = 1.0);

struct IntervalSpec {
    std::int64_t universe = 50;
    int pattern_length = 5;
    int text_length = 30;
    int max_parts = 3;
    /// Probability that a pattern entry is the empty-set symbol.
    double pattern_wildcard = 0.2;
    /// Probability that a text entry is the empty-set symbol.
    double text_wildcard = 0.05;
    /// Probability that a text entry is left empty (no intervals).
    double text_empty = 0.0;
};

/// Text entries are random unions; a fraction of pattern entries is drawn as
/// subsets of a random text window so that matches actually occur.
IntervalInstance random_interval_instance(Rng& rng, const IntervalSpec& spec);

}  // namespace segmatch::gen
