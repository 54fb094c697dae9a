#pragma once

#include <cstddef>
#include <vector>

#include "segmatch/geometry.hpp"

namespace segmatch {

/// Weighted length of t+A lying within l-infinity distance eps of a B segment
/// of the same orientation. Throws on eps < 0.
double cov_eval(const SegmentSet& A, const SegmentSet& B, double eps, Translation t);

struct CoverageResult {
    Translation t_star;
    double value = 0.0;
};

/// Union of closed rectangles cut into pieces of constant x-extent.
/// Sweep levels are the distinct rectangle y-bounds (merged within kGeomTol).
/// Region 2k is the level levels[k]; region 2k+1 is the open slab above it.
struct UnionPiece {
    double x_lo = 0.0;
    double x_hi = 0.0;
    std::size_t region_lo = 0;
    std::size_t region_hi = 0;
};

struct UnionDecomposition {
    std::vector<double> levels;
    std::vector<UnionPiece> pieces;

    double y_lo(const UnionPiece& p) const { return levels[p.region_lo / 2]; }
    double y_hi(const UnionPiece& p) const { return levels[(p.region_hi + 1) / 2]; }
    bool lo_open(const UnionPiece& p) const { return p.region_lo % 2 == 1; }
    bool hi_open(const UnionPiece& p) const { return p.region_hi % 2 == 1; }
};

/// Horizontal decomposition: pieces are maximal y-ranges over which one
/// x-component of the union's cross-section stays the same.
UnionDecomposition decompose_union(const std::vector<Rect>& rects);

enum class Orientation { Horizontal, Vertical };

/// A layer's piece with its y-range ends marked open or closed.
struct LayerPiece {
    Rect rect;
    bool lo_open = false;
    bool hi_open = false;
};

/// Translations moving one endpoint into the inflated B.
struct Layer {
    std::size_t owner = 0;
    Point endpoint;
    std::vector<LayerPiece> pieces;
};

/// Inflated B segments of the given orientation.
std::vector<Rect> inflated(const SegmentSet& B, double eps, Orientation o);

/// One layer per endpoint. Horizontal orientation cuts the union into
/// constant-x-extent pieces; vertical cuts it into constant-y-extent pieces
/// (open/closed flags then refer to the x-range).
std::vector<Layer> build_layers(const std::vector<Point>& endpoints, const std::vector<Rect>& b_plus,
                                Orientation o);

/// Exact maximum of the coverage of horizontal A by horizontal B over all
/// translations; ties go to the smallest dx, then the smallest dy.
/// Throws if either set is empty or eps < 0.
CoverageResult max_cov_horizontal(const std::vector<HSeg>& A, const std::vector<HSeg>& B, double eps);

/// Exact maximum over all translations for mixed horizontal/vertical sets.
CoverageResult max_cov_axis_parallel(const SegmentSet& A, const SegmentSet& B, double eps);

struct LowerBoundInstance {
    SegmentSet A;
    SegmentSet B;
    double eps = 0.5;
};

/// Instance whose feasible translation set has quartic complexity in n.
/// Points are zero-length horizontal segments. Throws for n < 2.
LowerBoundInstance gen_lower_bound(int n);

}  // namespace segmatch
