#ifndef INCOMPLETE_SRC_SIMPLEX_HPP
#define INCOMPLETE_SRC_SIMPLEX_HPP

#include <vector>

namespace incomplete::detail {

enum class RowKind { LessEqual, Equal };

struct LpResult {
    bool feasible = false;
    double objective = 0.0;
    std::vector<double> solution;
};

/// Dense two-phase simplex for  max c'x  s.t.  A x (<= | =) b,  x >= 0,
/// with b >= 0. Bland's rule; intended for small oracle-sized programs.
LpResult solve_lp_max(const std::vector<std::vector<double>>& a,
                      const std::vector<double>& b,
                      const std::vector<RowKind>& kinds,
                      const std::vector<double>& c);

} // namespace incomplete::detail

#endif
