#pragma once

#include <cmath>
#include <vector>

namespace segmatch {

// Tolerance for sweep-event ordering and interval comparisons.
inline constexpr double kGeomTol = 1e-9;

struct Point {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point&, const Point&) = default;
};

inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(double s, Point p) { return {s * p.x, s * p.y}; }

/// Horizontal segment {(x, y) : x_lo <= x <= x_hi}. x_lo == x_hi is a point.
struct HSeg {
    double y = 0.0;
    double x_lo = 0.0;
    double x_hi = 0.0;
    double weight = 1.0;

    double length() const { return x_hi - x_lo; }
    friend bool operator==(const HSeg&, const HSeg&) = default;
};

/// Vertical segment {(x, y) : y_lo <= y <= y_hi}.
struct VSeg {
    double x = 0.0;
    double y_lo = 0.0;
    double y_hi = 0.0;
    double weight = 1.0;

    double length() const { return y_hi - y_lo; }
    friend bool operator==(const VSeg&, const VSeg&) = default;
};

struct SegmentSet {
    std::vector<HSeg> h;
    std::vector<VSeg> v;

    bool empty() const { return h.empty() && v.empty(); }
    std::size_t size() const { return h.size() + v.size(); }
    friend bool operator==(const SegmentSet&, const SegmentSet&) = default;
};

struct Translation {
    double dx = 0.0;
    double dy = 0.0;

    Translation operator-() const { return {-dx, -dy}; }
    friend bool operator==(const Translation&, const Translation&) = default;
};

struct Rect {
    double x_lo = 0.0;
    double x_hi = 0.0;
    double y_lo = 0.0;
    double y_hi = 0.0;

    bool contains(Point p) const {
        return p.x >= x_lo && p.x <= x_hi && p.y >= y_lo && p.y <= y_hi;
    }
    double area() const { return (x_hi - x_lo) * (y_hi - y_lo); }
    friend bool operator==(const Rect&, const Rect&) = default;
};

/// Polygonal chain through its vertices; segment i joins vertices i and i+1.
struct PolyChain {
    std::vector<Point> vertices;

    std::size_t segments() const { return vertices.empty() ? 0 : vertices.size() - 1; }
    /// Point at parameter r in [0, segments()].
    Point at(double r) const;
    friend bool operator==(const PolyChain&, const PolyChain&) = default;
};

enum class Norm { L2, Linf, L1 };

double linf_dist(Point p, Point q);
double norm_dist(Point p, Point q, Norm norm);

HSeg translate(const HSeg& s, Translation t);
VSeg translate(const VSeg& s, Translation t);
SegmentSet translate(const SegmentSet& s, Translation t);
PolyChain translate(const PolyChain& c, Translation t);

/// Minkowski sum with the l-infinity ball of radius eps. Throws on eps < 0.
Rect inflate(const HSeg& s, double eps);
Rect inflate(const VSeg& s, double eps);

/// l-infinity distance from a point to a segment.
double linf_dist(Point p, const HSeg& s);
double linf_dist(Point p, const VSeg& s);

/// Throws std::invalid_argument when a segment or chain breaks its invariants.
void validate(const SegmentSet& s);
void validate(const PolyChain& c);

}  // namespace segmatch
