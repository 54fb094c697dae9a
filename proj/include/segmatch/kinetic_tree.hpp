#pragma once

#include <cstddef>
#include <vector>

namespace segmatch {

/// Leaves hold linear functions of a sweep coordinate x that only increases.
/// Supports adding a line to a leaf range and reading the maximum leaf at the
/// current x. Ties go to the smaller leaf index.
class KineticSegmentTree {
public:
    KineticSegmentTree(std::size_t leaves, double x0);

    /// Adds slope * x + intercept to leaves [lo, hi].
    void add_line(std::size_t lo, std::size_t hi, double slope, double intercept);
    /// Moves the sweep to x >= current x.
    void advance(double x);

    double x() const { return x_; }
    double max_value() const;
    std::size_t argmax() const { return best_[1]; }
    std::size_t leaves() const { return n_; }

private:
    struct Line {
        double m = 0.0;
        double c = 0.0;
    };

    void apply(std::size_t node, Line l);
    void push(std::size_t node);
    void pull(std::size_t node);
    void add(std::size_t node, std::size_t nl, std::size_t nr, std::size_t lo, std::size_t hi, Line l);
    void heal(std::size_t node, std::size_t nl, std::size_t nr);
    void build(std::size_t node, std::size_t nl, std::size_t nr);

    std::size_t n_;
    double x_;
    std::vector<Line> line_, lazy_;
    std::vector<std::size_t> best_;
    std::vector<double> melt_;
};

}  // namespace segmatch
