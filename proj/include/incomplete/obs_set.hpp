#ifndef INCOMPLETE_OBS_SET_HPP
#define INCOMPLETE_OBS_SET_HPP

#include <stdexcept>
#include <variant>

#include "incomplete/bitset.hpp"
#include "incomplete/interval_set.hpp"

namespace incomplete {

/// A subset of an observable (or latent) carrier: a bitmask of atoms for
/// finite carriers, a union of closed intervals for real ones.
class ObsSet {
public:
    ObsSet() : value_(Bitset()) {}
    explicit ObsSet(Bitset atoms) : value_(std::move(atoms)) {}
    explicit ObsSet(IntervalSet intervals) : value_(std::move(intervals)) {}

    bool is_finite() const { return std::holds_alternative<Bitset>(value_); }

    const Bitset& atoms() const {
        if (!is_finite()) throw std::logic_error("ObsSet: not a finite-carrier set");
        return std::get<Bitset>(value_);
    }

    const IntervalSet& intervals() const {
        if (is_finite()) throw std::logic_error("ObsSet: not a real-carrier set");
        return std::get<IntervalSet>(value_);
    }

    bool operator==(const ObsSet&) const = default;

private:
    std::variant<Bitset, IntervalSet> value_;
};

} // namespace incomplete

#endif
