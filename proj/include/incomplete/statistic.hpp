#ifndef INCOMPLETE_STATISTIC_HPP
#define INCOMPLETE_STATISTIC_HPP

#include <cstdint>
#include <string>

#include "incomplete/obs_set.hpp"
#include "incomplete/set_family.hpp"

namespace incomplete {

/// Value of the supremum statistic T = max_A (P_n(A) - nu(Gamma(A))) over
/// an evaluated family. Non-negative whenever the family contains the
/// empty set, which every built-in family does.
struct StatisticValue {
    double raw = 0.0;     // T
    double scaled = 0.0;  // sqrt(n) * T
    std::size_t argmax_index = 0;
    ObsSet argmax;
    std::string family;
    std::size_t n = 0;
};

/// Exact maximum over the enumeration; ties resolve to the smallest
/// candidate index.
StatisticValue ks_capacity_statistic(const EvaluatedFamily& fam);

struct QuantileEstimate {
    double alpha = 0.0;
    double q_hat = 0.0;
    std::string method;             // "bridge" | "subsample"
    std::size_t replications = 0;   // draws (bridge) or subsample count
    std::size_t subsample_size = 0; // b_n, subsample only
    double bandwidth = 0.0;         // h_n, bridge only
    std::uint64_t seed = 0;
};

/// Null-quantile approximation by simulating the limiting Gaussian process
/// over the estimated binding class: the covariance P_n(A&B) -
/// P_n(A)P_n(B) is factorized by symmetric eigendecomposition (negative
/// eigenvalues clipped at zero, failure beyond -1e-10 reported), `reps`
/// draws are taken, and the alpha-quantile of the per-draw suprema is
/// returned.
QuantileEstimate bridge_quantile(const EvaluatedFamily& fam, double alpha, std::size_t reps,
                                 double h, std::uint64_t seed);

/// Null-quantile approximation from `count` subsamples of size b drawn
/// without replacement: the alpha-quantile (left-continuous inf form) of
/// sqrt(b) * T computed per subsample.
QuantileEstimate subsample_quantile(const EvaluatedFamily& fam, double alpha, std::size_t b,
                                    std::size_t count, std::uint64_t seed);

/// Default subsample size, ceil(n^(1/3)), clamped to [2, n-1]. Small
/// relative to n so that the subsample statistics are centered where the
/// test needs them.
std::size_t default_subsample_size(std::size_t n);

} // namespace incomplete

#endif
