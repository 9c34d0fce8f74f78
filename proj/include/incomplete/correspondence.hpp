#ifndef INCOMPLETE_CORRESPONDENCE_HPP
#define INCOMPLETE_CORRESPONDENCE_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "incomplete/bitset.hpp"
#include "incomplete/interval_set.hpp"

namespace incomplete {

/// Many-to-many relation between a finite observable carrier and a finite
/// latent carrier, stored as a bipartite edge set.
///
/// Validity is direction-dependent: the forward direction requires every
/// observable atom to have at least one edge (non-empty values); the
/// inverse direction requires the same of every latent atom. The
/// constructor records both flags; operations that need a direction check
/// the corresponding flag.
class FiniteCorrespondence {
public:
    FiniteCorrespondence(std::vector<std::string> y_labels,
                         std::vector<std::string> u_labels,
                         std::vector<std::pair<std::size_t, std::size_t>> edges);

    static FiniteCorrespondence from_json_text(const std::string& text);

    std::size_t y_size() const { return y_labels_.size(); }
    std::size_t u_size() const { return u_labels_.size(); }
    const std::vector<std::string>& y_labels() const { return y_labels_; }
    const std::vector<std::string>& u_labels() const { return u_labels_; }
    const std::vector<std::pair<std::size_t, std::size_t>>& edges() const { return edges_; }

    bool forward_valid() const { return forward_valid_; }
    bool inverse_valid() const { return inverse_valid_; }

    /// Image of one observable atom.
    const Bitset& value(std::size_t y_index) const { return y_images_.at(y_index); }

    /// Gamma(A): union of atom images over A.
    Bitset image(const Bitset& a) const;

    /// Upper inverse: { y : Gamma(y) meets B }.
    Bitset preimage(const Bitset& b) const;

    /// Lower inverse: { y : Gamma(y) contained in B }.
    Bitset lower_inverse(const Bitset& b) const;

    /// The inverse correspondence (edges transposed). Requires the inverse
    /// direction to be valid.
    FiniteCorrespondence swapped() const;

private:
    std::vector<std::string> y_labels_;
    std::vector<std::string> u_labels_;
    std::vector<std::pair<std::size_t, std::size_t>> edges_;
    std::vector<Bitset> y_images_;    // per y: latent atoms reachable
    std::vector<Bitset> u_preimages_; // per u: observable atoms hitting it
    bool forward_valid_ = false;
    bool inverse_valid_ = false;
};

/// Correspondence from a finite observable carrier into closed intervals
/// of a real latent carrier, e.g. a two-outcome entry game where outcome 1
/// pins the latent cost into [0, lambda] while outcome 0 is uninformative.
class IntervalValuedCorrespondence {
public:
    IntervalValuedCorrespondence(std::vector<double> atom_values,
                                 std::vector<Interval> values);

    std::size_t y_size() const { return atom_values_.size(); }
    const std::vector<double>& atom_values() const { return atom_values_; }
    const Interval& value(std::size_t y_index) const { return values_.at(y_index); }

    IntervalSet image(const Bitset& a) const;
    Bitset preimage(const IntervalSet& b) const;
    Bitset lower_inverse(const IntervalSet& b) const;

private:
    std::vector<double> atom_values_;
    std::vector<Interval> values_;
};

/// Correspondence on a compact real observable interval whose values are
/// the intervals [l(y), u(y)] between two piecewise-linear envelopes over
/// shared knots. Extrema over any subinterval are attained at knots or
/// endpoints, so images are computed exactly.
class IntervalCorrespondence {
public:
    IntervalCorrespondence(std::vector<double> knots,
                           std::vector<double> lower,
                           std::vector<double> upper);

    static IntervalCorrespondence from_json_text(const std::string& text);

    double domain_lo() const { return knots_.front(); }
    double domain_hi() const { return knots_.back(); }
    const std::vector<double>& knots() const { return knots_; }
    const std::vector<double>& lower() const { return lower_; }
    const std::vector<double>& upper() const { return upper_; }

    double lower_at(double y) const;
    double upper_at(double y) const;

    /// Image of a point: [l(y), u(y)].
    Interval value(double y) const { return {lower_at(y), upper_at(y)}; }

    /// Image of an interval union; components clipped to the domain.
    IntervalSet image(const IntervalSet& a) const;

    /// { y in domain : [l(y), u(y)] meets B }, exact for piecewise-linear
    /// envelopes.
    IntervalSet preimage(const IntervalSet& b) const;

    /// { y in domain : [l(y), u(y)] contained in B }.
    IntervalSet lower_inverse(const IntervalSet& b) const;

    bool has_monotone_envelopes() const;

private:
    // Minimum of l / maximum of u over [a, b] within the domain.
    double min_lower(double a, double b) const;
    double max_upper(double a, double b) const;

    // Sub/superlevel sets of one piecewise-linear envelope.
    IntervalSet sublevel(const std::vector<double>& vals, double cutoff) const;
    IntervalSet superlevel(const std::vector<double>& vals, double cutoff) const;

    std::vector<double> knots_;
    std::vector<double> lower_;
    std::vector<double> upper_;
};

} // namespace incomplete

#endif
