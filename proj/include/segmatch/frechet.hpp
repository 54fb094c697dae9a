#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "segmatch/geometry.hpp"

namespace segmatch {

/// Parameter interval [lo, hi] inside [0, 1] along one cell edge.
struct EdgeInterval {
    double lo = 0.0;
    double hi = 0.0;
};
using FreeEdge = std::optional<EdgeInterval>;

/// Parameters s in [0, 1] with ||p - (s0 + s (s1 - s0))|| <= eps.
FreeEdge edge_interval(Point p, Point s0, Point s1, double eps, Norm norm);

/// Free parts of the left edge (x = i) and bottom edge (y = j) of cell (i, j).
/// x runs along P, y along Q.
struct FreeSpaceCell {
    int i = 0;
    int j = 0;
    FreeEdge left;
    FreeEdge bottom;
};

/// Left edge: start of Pi against Qj. Bottom edge: start of Qj against Pi.
FreeSpaceCell cell_boundaries(Point pi0, Point pi1, Point qj0, Point qj1, double eps, Norm norm);

/// All edge intervals of the free space of P (p segments) and Q (q segments).
class FreeSpaceDiagram {
public:
    FreeSpaceDiagram(const PolyChain& P, const PolyChain& Q, double eps, Norm norm = Norm::L2);

    int p() const { return p_; }
    int q() const { return q_; }
    double eps() const { return eps_; }
    /// Vertical edge x = i, y in [j, j+1]; 0 <= i <= p, 0 <= j < q.
    const FreeEdge& left(int i, int j) const { return left_[static_cast<std::size_t>(i * q_ + j)]; }
    /// Horizontal edge y = j, x in [i, i+1]; 0 <= i < p, 0 <= j <= q.
    const FreeEdge& bottom(int i, int j) const { return bottom_[static_cast<std::size_t>(j * p_ + i)]; }
    FreeSpaceCell cell(int i, int j) const;
    bool start_free() const { return start_free_; }
    bool end_free() const { return end_free_; }

private:
    int p_ = 0, q_ = 0;
    double eps_ = 0.0;
    std::vector<FreeEdge> left_, bottom_;
    bool start_free_ = false, end_free_ = false;
};

/// Monotone path from (0,0) to (p,q) in the free space. Throws std::invalid_argument
/// on chains with fewer than 2 vertices or eps < 0.
bool decide_frechet(const PolyChain& P, const PolyChain& Q, double eps, Norm norm = Norm::L2);
/// Any path from (0,0) to (p,q): cells joined through shared free edges.
bool decide_weak_frechet(const PolyChain& P, const PolyChain& Q, double eps, Norm norm = Norm::L2);

/// Bisection to within tol. Throws std::invalid_argument unless tol > 0.
double frechet_value(const PolyChain& P, const PolyChain& Q, double tol, Norm norm = Norm::L2);
double weak_frechet_value(const PolyChain& P, const PolyChain& Q, double tol, Norm norm = Norm::L2);

/// Reachability graph over free-space points.
struct GraphVertex {
    /// 'a', 'b' on vertical edges; 'c', 'd' on horizontal edges.
    char type = 'a';
    /// Edge holding the original point.
    int i = 0;
    int j = 0;
    /// Tunnel target column (a, b) or row (c, d); -1 for the point itself.
    int k = -1;
    Point f;
};

struct GraphEdge {
    int from = 0;
    int to = 0;
    /// 1 to 4 by construction rule.
    int rule = 0;
};

struct FrechetGraph {
    int p = 0, q = 0;
    std::vector<GraphVertex> vertices;
    std::vector<GraphEdge> edges;
    /// v^a_00 and v^b_pq, or -1 when absent.
    int start = -1;
    int target = -1;
    std::size_t tunnels() const;
};

/// v^b_pq is the corner (p, q) itself, present when that corner is free.
FrechetGraph build_graph(const PolyChain& P, const PolyChain& Q, double eps, Norm norm = Norm::L2);
bool graph_reachable(const FrechetGraph& g);
bool graph_decide(const PolyChain& P, const PolyChain& Q, double eps, Norm norm = Norm::L2);

/// Maps the first point of Q to the first point of P.
Translation translate_anchor(const PolyChain& P, const PolyChain& Q);

struct TranslationResult {
    Translation t;
    double value = 0.0;
    /// Anchor estimate and grid step actually used.
    double anchor_value = 0.0;
    double step = 0.0;
    std::size_t grid_points = 0;
};

/// Grid search of step beta * d / (2 sqrt 2) over [-d, d]^2 around the anchor,
/// d the Frechet distance at the anchor. Threads from SEGMATCH_THREADS
/// (default 1). Throws std::invalid_argument unless beta > 0 and tol > 0.
TranslationResult min_frechet_translation_approx(const PolyChain& P, const PolyChain& Q, double beta, double tol,
                                                 Norm norm = Norm::L2);

/// Discrete Frechet distance over k samples per edge. Throws unless k >= 1.
double discrete_frechet(const PolyChain& P, const PolyChain& Q, int k, Norm norm = Norm::L2);

}  // namespace segmatch
