#ifndef INCOMPLETE_SET_FAMILY_HPP
#define INCOMPLETE_SET_FAMILY_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "incomplete/bitset.hpp"
#include "incomplete/carrier.hpp"
#include "incomplete/correspondence.hpp"
#include "incomplete/measure.hpp"
#include "incomplete/model.hpp"
#include "incomplete/obs_set.hpp"

namespace incomplete {

enum class FamilyKind { PowerSet, Cells, Rectangles, UnionsOfK };

/// A finitely enumerable family of observable subsets over which the
/// supremum statistic runs. On real carriers the enumeration is anchored
/// at the sample's order statistics (plus unbounded endpoints), which
/// attains the continuum supremum because the empirical measure is a step
/// function and the capacity side is continuous under an atomless law.
struct SetFamily {
    FamilyKind kind = FamilyKind::PowerSet;
    int max_union = 1;               // K for UnionsOfK, at most 3
    std::size_t budget = 2'000'000;  // candidate-count guard

    static SetFamily parse(const std::string& text);
    std::string to_string() const;
};

/// Candidate sets of a family over a concrete carrier. For finite
/// carriers the sample is not consulted; for real carriers it provides
/// the endpoint grid.
std::vector<ObsSet> enumerate_family(const SetFamily& fam, const Carrier& carrier,
                                     std::span<const double> sorted_sample);

/// A family evaluated against a sample and a model: candidate sets, the
/// per-candidate sample membership indicators, and nu(Gamma(A)). All
/// statistic and quantile computations run off this structure.
struct EvaluatedFamily {
    SetFamily family;
    std::vector<ObsSet> sets;
    std::vector<Bitset> membership;  // [candidate] -> indicator over sample
    std::vector<double> nu_gamma;    // [candidate]
    std::size_t n = 0;

    double empirical_mass(std::size_t candidate) const {
        return static_cast<double>(membership[candidate].count()) / static_cast<double>(n);
    }
};

EvaluatedFamily evaluate_family(const SetFamily& fam, const Model& model,
                                std::span<const double> sorted_sample);

/// Subclass of candidates where the dominance inequality is binding up to
/// slack h. Contains the empty set and the full carrier for every h >= 0.
struct BindingClass {
    std::vector<std::size_t> members;  // candidate indices
    double bandwidth = 0.0;
};

/// Oracle path: membership by exact candidate probabilities,
/// { A : P(A) >= nu(Gamma(A)) - h }.
BindingClass binding_class(const EvaluatedFamily& fam, std::span<const double> exact_p,
                           double h);

/// Data path: the same rule with the empirical measure of the sample.
BindingClass estimated_binding_class(const EvaluatedFamily& fam, double h);

/// Exact candidate probabilities from a measure on a finite carrier.
std::vector<double> candidate_probabilities(const EvaluatedFamily& fam,
                                            const DiscreteMeasure& p_exact);

/// Exact candidate probabilities from a CDF on a real carrier.
std::vector<double> candidate_probabilities(const EvaluatedFamily& fam,
                                            const std::function<double(double)>& cdf);

/// Bandwidth h_n = c * n^(-gamma). Any gamma in (0, 1/2) keeps both
/// h_n -> 0 and h_n^{-1} sqrt(log log n / n) -> 0.
double default_bandwidth(std::size_t n, double c = 0.5, double gamma = 0.25);

struct CoreDeterminingResult {
    /// True when no counterexample was found within the trial budget;
    /// evidence, not a certificate.
    bool core_determining = true;
    std::optional<std::vector<double>> counterexample_p;
    std::optional<Bitset> counterexample_set;
    std::size_t trials_used = 0;
};

/// Randomized search for a measure P passing every family inequality while
/// violating the dominance condition on some arbitrary subset. A returned
/// counterexample certifies that the family is not core determining for
/// (Gamma, nu). Requires an observable carrier of at most 12 atoms.
CoreDeterminingResult is_core_determining_bruteforce(const SetFamily& fam,
                                                     const FiniteCorrespondence& corr,
                                                     const DiscreteMeasure& nu,
                                                     std::size_t trials = 10000,
                                                     std::uint64_t seed = 1);

} // namespace incomplete

#endif
