#ifndef INCOMPLETE_CAPACITY_HPP
#define INCOMPLETE_CAPACITY_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "incomplete/bitset.hpp"
#include "incomplete/correspondence.hpp"
#include "incomplete/interval_set.hpp"
#include "incomplete/measure.hpp"

namespace incomplete {

/// Absolute tolerance for capacity value comparisons. Inputs in the oracle
/// layer are small-denominator rationals, so this is generous.
inline constexpr double kCapacityTol = 1e-9;

/// Smallest reliability of latent event B: mass of { y : Gamma(y) in B }.
double belief(const DiscreteMeasure& p, const FiniteCorrespondence& corr, const Bitset& b);
double belief(const DiscreteMeasure& p, const IntervalValuedCorrespondence& corr,
              const IntervalSet& b);

/// Largest plausibility of latent event B: mass of { y : Gamma(y) meets B }.
double plausibility(const DiscreteMeasure& p, const FiniteCorrespondence& corr, const Bitset& b);
double plausibility(const DiscreteMeasure& p, const IntervalValuedCorrespondence& corr,
                    const IntervalSet& b);

/// Set function on all subsets of a finite carrier of at most 20 atoms,
/// normalized (empty -> 0, full -> 1) and monotone under inclusion.
/// Subsets are indexed by bitmask.
class CapacityTable {
public:
    CapacityTable(std::size_t carrier_size, std::vector<double> values);

    std::size_t carrier_size() const { return n_; }
    std::uint32_t full_mask() const { return (n_ == 32) ? ~0u : ((1u << n_) - 1); }
    double value(std::uint32_t mask) const { return values_[mask]; }

    std::string to_json_text() const;

    static constexpr std::size_t kMaxCarrier = 20;

private:
    std::size_t n_;
    std::vector<double> values_;
};

/// Table of the plausibility capacity B -> P(preimage(B)) of a
/// correspondence; requires u_size() <= 20.
CapacityTable plausibility_table(const DiscreteMeasure& p, const FiniteCorrespondence& corr);

/// Table of an additive measure (every inequality the alternation check
/// tests then holds with equality).
CapacityTable measure_table(const DiscreteMeasure& nu);

struct AlternationResult {
    bool alternating = true;
    /// On failure, the family of subsets violating the inequality.
    std::vector<std::uint32_t> violating_family;
};

/// Checks the alternating-of-order-k inequality
///   phi(intersection A_i) <= sum_{nonempty I} (-1)^{|I|+1} phi(union_I A_i)
/// for families of size 2..k. Families within an exhaustive budget are
/// enumerated completely (comparable pairs are skipped; those cases reduce
/// to lower order); beyond the budget, and for k > 4, random families are
/// sampled. A violation is a certificate of failure; a pass is evidence,
/// not proof, wherever sampling was used.
AlternationResult is_alternating(const CapacityTable& cap, int order,
                                 std::size_t sample_trials = 200000,
                                 std::uint64_t seed = 1);

/// Choquet integral of f (one value per atom) against the capacity:
/// level-set rearrangement, exact on finite carriers, valid for signed f.
double choquet_integral(const CapacityTable& cap, const std::vector<double>& f);

/// Supremum of the expectation of f over the core of the plausibility
/// capacity of (P, Gamma), computed as a linear program over all subset
/// constraints by a dense two-phase simplex. Independent of
/// choquet_integral; used to validate it. Requires u_size() <= 10.
double core_sup_expectation(const DiscreteMeasure& p, const FiniteCorrespondence& corr,
                            const std::vector<double>& f);

struct CoreMembership {
    bool in_core = false;
    /// A latent subset with nu(B) > plausibility(B), when not in the core.
    std::optional<Bitset> witness;
};

/// Checks nu(B) <= plausibility(B) for every latent subset; the witness is
/// the smallest violating bitmask. Requires u_size() <= 20.
CoreMembership core_membership(const DiscreteMeasure& nu, const FiniteCorrespondence& corr,
                               const DiscreteMeasure& p);

} // namespace incomplete

#endif
