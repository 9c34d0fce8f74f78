#ifndef INCOMPLETE_TRANSPORT_HPP
#define INCOMPLETE_TRANSPORT_HPP

#include <cstdint>
#include <vector>

#include "incomplete/bitset.hpp"
#include "incomplete/correspondence.hpp"
#include "incomplete/measure.hpp"

namespace incomplete {

/// Feasibility threshold on the violation mass T*.
inline constexpr double kTransportTol = 1e-9;

struct CouplingEntry {
    std::size_t y_index;
    std::size_t u_index;
    double mass;
};

/// Outcome of the zero-one-cost transport problem between P and nu under
/// the admissibility relation Gamma.
///
/// violation_mass is the minimal probability mass that cannot be moved
/// along admissible edges; it is zero exactly when some coupling of P and
/// nu lives on the graph of Gamma. The dual witness is a set of observable
/// atoms attaining P(A) - nu(Gamma(A)) = violation_mass.
struct CouplingResult {
    double violation_mass = 0.0;
    bool feasible = false;
    std::vector<CouplingEntry> coupling;
    Bitset dual_witness;
};

/// Solves the transport problem by max-flow on the bipartite network
/// source -> y (capacity P(y)) -> admissible edges -> u -> sink
/// (capacity nu(u)), using highest-label push-relabel with the gap
/// heuristic. Weights that are recognizably rational are scaled to a
/// common integer denominator so the computation is exact; otherwise a
/// 2^44 fixed-point scaling is used.
CouplingResult feasible_coupling(const DiscreteMeasure& p, const DiscreteMeasure& nu,
                                 const FiniteCorrespondence& corr);

struct DualStatistic {
    double value = 0.0;
    Bitset argmax;
};

/// Exhaustive maximum of P(A) - nu(Gamma(A)) over all subsets of the
/// observable carrier (at most 24 atoms); ties resolved toward the
/// smallest bitmask.
DualStatistic dual_statistic_bruteforce(const DiscreteMeasure& p, const DiscreteMeasure& nu,
                                        const FiniteCorrespondence& corr);

} // namespace incomplete

#endif
