#ifndef INCOMPLETE_INTERVAL_SET_HPP
#define INCOMPLETE_INTERVAL_SET_HPP

#include <limits>
#include <vector>

namespace incomplete {

/// Closed interval on the extended real line.
struct Interval {
    double lo;
    double hi;
    bool operator==(const Interval&) const = default;
};

/// Finite union of disjoint closed intervals, kept sorted by lower endpoint.
///
/// All interval sets are normalized to closed intervals. This is exact for
/// measures that are absolutely continuous (boundary points carry no mass);
/// it is the only regime the library supports on real carriers.
class IntervalSet {
public:
    IntervalSet() = default;

    static IntervalSet empty() { return IntervalSet(); }

    static IntervalSet whole_line() {
        return single(-std::numeric_limits<double>::infinity(),
                      std::numeric_limits<double>::infinity());
    }

    static IntervalSet single(double lo, double hi);

    /// Builds from arbitrary (possibly overlapping, unsorted) intervals.
    /// Empty pieces (lo > hi) are dropped; touching pieces are merged.
    static IntervalSet from_pieces(std::vector<Interval> pieces);

    const std::vector<Interval>& components() const { return comps_; }
    bool is_empty() const { return comps_.empty(); }

    bool contains(double x) const;
    bool contains_interval(double lo, double hi) const;
    bool intersects_interval(double lo, double hi) const;

    IntervalSet unite(const IntervalSet& other) const;
    IntervalSet intersect(const IntervalSet& other) const;

    /// Intersection with a single closed interval (clipping).
    IntervalSet clip(double lo, double hi) const;

    double min() const;
    double max() const;

    bool operator==(const IntervalSet&) const = default;

private:
    std::vector<Interval> comps_;
};

} // namespace incomplete

#endif
