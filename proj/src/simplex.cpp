#include "simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace incomplete::detail {

namespace {

constexpr double kTol = 1e-11;

struct Tableau {
    std::size_t rows;
    std::size_t cols;              // structural + slack + artificial
    std::vector<std::vector<double>> t; // rows x (cols + 1), last entry rhs
    std::vector<double> cost;      // reduced-cost row for the active phase
    double value = 0.0;
    std::vector<std::size_t> basis;
    std::size_t first_artificial;

    void pivot(std::size_t pr, std::size_t pc) {
        const double piv = t[pr][pc];
        for (double& v : t[pr]) v /= piv;
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == pr) continue;
            const double factor = t[r][pc];
            if (factor == 0.0) continue;
            for (std::size_t c = 0; c <= cols; ++c) t[r][c] -= factor * t[pr][c];
        }
        const double cfactor = cost[pc];
        if (cfactor != 0.0) {
            for (std::size_t c = 0; c < cols; ++c) cost[c] -= cfactor * t[pr][c];
            value += cfactor * t[pr][cols];
        }
        basis[pr] = pc;
    }

    // Returns false when optimal, throws on unboundedness.
    bool step(bool allow_artificial, bool bland) {
        std::size_t enter = cols;
        double best = kTol;
        for (std::size_t c = 0; c < cols; ++c) {
            if (!allow_artificial && c >= first_artificial) continue;
            if (cost[c] > (bland ? kTol : best)) {
                enter = c;
                if (bland) break;
                best = cost[c];
            }
        }
        if (enter == cols) return false;
        std::size_t leave = rows;
        double best_ratio = std::numeric_limits<double>::infinity();
        for (std::size_t r = 0; r < rows; ++r) {
            if (t[r][enter] <= kTol) continue;
            const double ratio = t[r][cols] / t[r][enter];
            if (ratio < best_ratio - kTol ||
                (ratio < best_ratio + kTol && (leave == rows || basis[r] < basis[leave]))) {
                best_ratio = ratio;
                leave = r;
            }
        }
        if (leave == rows)
            throw std::runtime_error("simplex: unbounded program");
        pivot(leave, enter);
        return true;
    }

    void run_phase(bool allow_artificial) {
        const std::size_t bland_after = 4 * (rows + cols);
        std::size_t iter = 0;
        while (step(allow_artificial, iter > bland_after)) {
            if (++iter > 200 * (rows + cols))
                throw std::runtime_error("simplex: iteration limit exceeded");
        }
    }
};

} // namespace

LpResult solve_lp_max(const std::vector<std::vector<double>>& a,
                      const std::vector<double>& b,
                      const std::vector<RowKind>& kinds,
                      const std::vector<double>& c) {
    const std::size_t m = a.size();
    const std::size_t n = c.size();
    if (b.size() != m || kinds.size() != m)
        throw std::invalid_argument("solve_lp_max: inconsistent sizes");
    std::size_t n_slack = 0, n_art = 0;
    for (RowKind k : kinds) (k == RowKind::LessEqual ? n_slack : n_art)++;

    Tableau tab;
    tab.rows = m;
    tab.cols = n + n_slack + n_art;
    tab.first_artificial = n + n_slack;
    tab.t.assign(m, std::vector<double>(tab.cols + 1, 0.0));
    tab.basis.assign(m, 0);

    std::size_t slack_at = n, art_at = n + n_slack;
    for (std::size_t r = 0; r < m; ++r) {
        if (a[r].size() != n)
            throw std::invalid_argument("solve_lp_max: ragged constraint matrix");
        if (b[r] < 0.0)
            throw std::invalid_argument("solve_lp_max: negative right-hand side");
        std::copy(a[r].begin(), a[r].end(), tab.t[r].begin());
        tab.t[r][tab.cols] = b[r];
        if (kinds[r] == RowKind::LessEqual) {
            tab.t[r][slack_at] = 1.0;
            tab.basis[r] = slack_at++;
        } else {
            tab.t[r][art_at] = 1.0;
            tab.basis[r] = art_at++;
        }
    }

    // Phase 1: maximize -(sum of artificials).
    tab.cost.assign(tab.cols, 0.0);
    tab.value = 0.0;
    for (std::size_t r = 0; r < m; ++r) {
        if (tab.basis[r] < tab.first_artificial) continue;
        for (std::size_t cidx = 0; cidx < tab.cols; ++cidx)
            tab.cost[cidx] += tab.t[r][cidx];
        tab.value -= tab.t[r][tab.cols];
    }
    for (std::size_t cidx = tab.first_artificial; cidx < tab.cols; ++cidx)
        tab.cost[cidx] -= 1.0;
    tab.run_phase(/*allow_artificial=*/true);

    LpResult result;
    if (tab.value < -1e-8) {
        result.feasible = false;
        return result;
    }

    // Drive leftover degenerate artificials out of the basis. Rows where no
    // structural/slack column can pivot are redundant and stay inert.
    for (std::size_t r = 0; r < m; ++r) {
        if (tab.basis[r] < tab.first_artificial) continue;
        for (std::size_t cidx = 0; cidx < tab.first_artificial; ++cidx) {
            if (std::abs(tab.t[r][cidx]) > 1e-9) {
                tab.pivot(r, cidx);
                break;
            }
        }
    }

    // Phase 2: original objective, artificial columns retired.
    tab.cost.assign(tab.cols, 0.0);
    std::copy(c.begin(), c.end(), tab.cost.begin());
    tab.value = 0.0;
    for (std::size_t r = 0; r < m; ++r) {
        const std::size_t bc = tab.basis[r];
        const double cb = (bc < n) ? c[bc] : 0.0;
        if (cb == 0.0) continue;
        for (std::size_t cidx = 0; cidx < tab.cols; ++cidx)
            tab.cost[cidx] -= cb * tab.t[r][cidx];
        tab.value += cb * tab.t[r][tab.cols];
    }
    tab.run_phase(/*allow_artificial=*/false);

    result.feasible = true;
    result.objective = tab.value;
    result.solution.assign(n, 0.0);
    for (std::size_t r = 0; r < m; ++r)
        if (tab.basis[r] < n) result.solution[tab.basis[r]] = tab.t[r][tab.cols];
    return result;
}

} // namespace incomplete::detail
