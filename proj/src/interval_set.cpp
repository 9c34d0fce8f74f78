#include "incomplete/interval_set.hpp"

#include <algorithm>
#include <stdexcept>

namespace incomplete {

IntervalSet IntervalSet::single(double lo, double hi) {
    IntervalSet s;
    if (lo <= hi) s.comps_.push_back({lo, hi});
    return s;
}

IntervalSet IntervalSet::from_pieces(std::vector<Interval> pieces) {
    std::erase_if(pieces, [](const Interval& iv) { return iv.lo > iv.hi; });
    std::sort(pieces.begin(), pieces.end(),
              [](const Interval& a, const Interval& b) {
                  return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi);
              });
    IntervalSet s;
    for (const Interval& iv : pieces) {
        if (!s.comps_.empty() && iv.lo <= s.comps_.back().hi) {
            s.comps_.back().hi = std::max(s.comps_.back().hi, iv.hi);
        } else {
            s.comps_.push_back(iv);
        }
    }
    return s;
}

bool IntervalSet::contains(double x) const {
    for (const Interval& iv : comps_)
        if (iv.lo <= x && x <= iv.hi) return true;
    return false;
}

bool IntervalSet::contains_interval(double lo, double hi) const {
    if (lo > hi) return true;
    for (const Interval& iv : comps_)
        if (iv.lo <= lo && hi <= iv.hi) return true;
    return false;
}

bool IntervalSet::intersects_interval(double lo, double hi) const {
    if (lo > hi) return false;
    for (const Interval& iv : comps_)
        if (iv.lo <= hi && lo <= iv.hi) return true;
    return false;
}

IntervalSet IntervalSet::unite(const IntervalSet& other) const {
    std::vector<Interval> pieces = comps_;
    pieces.insert(pieces.end(), other.comps_.begin(), other.comps_.end());
    return from_pieces(std::move(pieces));
}

IntervalSet IntervalSet::intersect(const IntervalSet& other) const {
    std::vector<Interval> pieces;
    for (const Interval& iv : comps_) {
        const IntervalSet clipped = other.clip(iv.lo, iv.hi);
        pieces.insert(pieces.end(), clipped.comps_.begin(), clipped.comps_.end());
    }
    return from_pieces(std::move(pieces));
}

IntervalSet IntervalSet::clip(double lo, double hi) const {
    std::vector<Interval> pieces;
    for (const Interval& iv : comps_) {
        const double a = std::max(iv.lo, lo);
        const double b = std::min(iv.hi, hi);
        if (a <= b) pieces.push_back({a, b});
    }
    return from_pieces(std::move(pieces));
}

double IntervalSet::min() const {
    if (comps_.empty()) throw std::logic_error("IntervalSet::min on empty set");
    return comps_.front().lo;
}

double IntervalSet::max() const {
    if (comps_.empty()) throw std::logic_error("IntervalSet::max on empty set");
    return comps_.back().hi;
}

} // namespace incomplete
