#pragma once

#include <cstdint>
#include <vector>

#include "segmatch/geometry.hpp"
#include "segmatch/interval_match.hpp"

namespace segmatch {

/// Vertical shift and the one-way distance it achieves.
struct VTransResult {
    double delta = 0.0;
    double rho = 0.0;
};

/// h(A, B) = max over points of A of the l-infinity distance to B.
/// Throws std::invalid_argument on empty input.
double hausdorff_one_way(const std::vector<HSeg>& A, const std::vector<HSeg>& B);
/// h((0, delta) + A, B).
double hausdorff_one_way(const std::vector<HSeg>& A, const std::vector<HSeg>& B, double delta);
double hausdorff_symmetric(const std::vector<HSeg>& A, const std::vector<HSeg>& B);

/// Diameter over the closest distinct pair of segments, at least 1.
double spread_ratio(const std::vector<HSeg>& A, const std::vector<HSeg>& B);

/// Global minimum of h((0, delta) + A, B) over delta. The optimum value is one
/// of finitely many critical radii; the smallest feasible one is found by
/// binary search and checked at the shifts where the feasible set can start.
VTransResult min_vtrans_exact(const std::vector<HSeg>& A, const std::vector<HSeg>& B);

/// Grid image of a matching problem at scale rho_hat. Rows have height step,
/// columns width step. A shift J of the sparse instance is the vertical
/// translation (J + row_offset) * step.
struct Discretization {
    SparseInstance instance;
    double step = 0.0;
    std::int64_t row_offset = 0;
    /// Inflation radius of the text cells; a matching shift has h <= radius.
    double radius = 0.0;

    double delta(std::int64_t shift) const { return static_cast<double>(shift + row_offset) * step; }
};

/// Pattern cells are A's grid cells, text cells lie inside B inflated by
/// (1 + eps/2) rho_hat. Some shift matches whenever h <= rho_hat is possible.
/// Throws std::invalid_argument unless rho_hat > 0 and 0 < eps < 1.
Discretization discretize(const std::vector<HSeg>& A, const std::vector<HSeg>& B, double rho_hat, double eps);

struct VTransSearch {
    VTransResult best;
    /// Guesses tried by the search, in order, with their outcome.
    std::vector<std::pair<double, bool>> guesses;
    bool exact_zero = false;
};

/// Geometric search over rho_hat with ratio 1 + eps/4. rho <= (1 + eps) of the optimum.
VTransSearch min_vtrans_search(const std::vector<HSeg>& A, const std::vector<HSeg>& B, double eps,
                               std::uint64_t seed = 1);
VTransResult min_vtrans_approx(const std::vector<HSeg>& A, const std::vector<HSeg>& B, double eps,
                               std::uint64_t seed = 1);

}  // namespace segmatch
