#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <vector>

namespace segmatch {

/// Segment over the closed span [x_lo, x_hi] whose height at (x, tau) is
/// b + c * (x - x_lo) + a * tau. Static segments have a == 0.
struct PLSegment {
    double x_lo = 0.0;
    double x_hi = 0.0;
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;

    double height(double x, double tau) const { return b + c * (x - x_lo) + a * tau; }
};

namespace detail {
class HullTree;
}

/// Maximum over x of the sum of live segments, under insertions, deletions
/// and decreasing time. Only segment endpoints are candidate maximizers.
///
/// Live segments are split into a bulk set S1, indexed by a hull tree over
/// the vertices of its sum, and a small buffer S2 that is folded into S1 once
/// it holds more than ceil(sqrt(live)) entries. Deleting an S1 segment adds a
/// negated copy to S2.
class EnvelopeStructure {
public:
    using Handle = std::int64_t;

    struct Max {
        double x = 0.0;
        double value = 0.0;
    };

    explicit EnvelopeStructure(double tau = 0.0);
    ~EnvelopeStructure();
    EnvelopeStructure(EnvelopeStructure&&) noexcept;
    EnvelopeStructure& operator=(EnvelopeStructure&&) noexcept;

    /// Throws std::invalid_argument if x_lo > x_hi or a field is not finite.
    Handle insert(const PLSegment& s);
    /// Throws std::logic_error for an unknown or already deleted handle.
    void erase(Handle h);
    /// tau -= delta. Throws std::invalid_argument on negative delta.
    void advance_time(double delta);

    /// Max over live segment endpoints of the sum; ties go to the smaller x.
    /// Returns {0, 0} when empty. Not safe to call concurrently (lazy caches).
    Max query_max();

    double tau() const { return tau_; }
    std::size_t size() const { return live_count_; }
    std::size_t buffer_size() const { return buffer_.size(); }
    std::size_t rebuilds() const { return rebuilds_; }
    const PLSegment& segment(Handle h) const { return segs_.at(static_cast<std::size_t>(h)); }
    bool is_live(Handle h) const;

private:
    struct BufferEntry {
        PLSegment seg;
        Handle owner = -1;
        bool canceller = false;
    };

    void rebuild();
    void add_endpoint(double x);
    void drop_endpoint(double x);
    double bulk_at(double x) const;

    double tau_ = 0.0;
    std::vector<PLSegment> segs_;
    std::vector<std::uint8_t> state_;  // 0 deleted, 1 in S1, 2 in S2
    std::vector<Handle> live_ids_;
    std::vector<std::size_t> live_pos_;
    std::size_t live_count_ = 0;
    std::size_t rebuilds_ = 0;
    std::vector<BufferEntry> buffer_;
    std::map<double, int> endpoints_;

    // Bulk sum: vertex values B + A*tau at xs_[i]; open gap (xs_[i], xs_[i+1])
    // carries G0 + GC*x + GA*tau.
    std::vector<double> xs_, vb_, va_, g0_, gc_, ga_;
    std::unique_ptr<detail::HullTree> tree_;
};

}  // namespace segmatch
