#include "incomplete/transport.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <stdexcept>

#include "incomplete/math_util.hpp"

namespace incomplete {

namespace {

/// Highest-label push-relabel with the gap heuristic, integer capacities.
/// Runs to a full flow (not just a max preflow) so per-edge flows are a
/// valid coupling.
class PushRelabel {
public:
    explicit PushRelabel(std::size_t n)
        : g_(n), excess_(n, 0), height_(n, 0), arc_(n, 0), active_(n, false),
          count_(2 * n + 1, 0), bucket_(2 * n + 1), n_(n) {}

    struct ArcRef {
        std::size_t node;
        std::size_t index;
    };

    ArcRef add_edge(std::size_t from, std::size_t to, std::int64_t cap) {
        g_[from].push_back({to, g_[to].size(), cap, cap});
        g_[to].push_back({from, g_[from].size() - 1, 0, 0});
        return {from, g_[from].size() - 1};
    }

    std::int64_t flow_on(const ArcRef& ref) const {
        const Arc& a = g_[ref.node][ref.index];
        return a.init_cap - a.cap;
    }

    std::int64_t max_flow(std::size_t s, std::size_t t) {
        s_ = s;
        t_ = t;
        height_[s] = n_;
        count_[0] = n_ - 1;
        count_[n_] += 1;
        for (Arc& a : g_[s]) {
            if (a.cap <= 0) continue;
            const std::int64_t d = a.cap;
            a.cap = 0;
            g_[a.to][a.rev].cap += d;
            excess_[a.to] += d;
            excess_[s] -= d;
            activate(a.to);
        }
        while (highest_ >= 0) {
            auto& bucket = bucket_[static_cast<std::size_t>(highest_)];
            if (bucket.empty()) {
                --highest_;
                continue;
            }
            const std::size_t v = bucket.back();
            bucket.pop_back();
            active_[v] = false;
            discharge(v);
        }
        return excess_[t];
    }

    /// Nodes reachable from `from` in the residual network.
    std::vector<bool> residual_reachable(std::size_t from) const {
        std::vector<bool> seen(n_, false);
        std::deque<std::size_t> queue{from};
        seen[from] = true;
        while (!queue.empty()) {
            const std::size_t v = queue.front();
            queue.pop_front();
            for (const Arc& a : g_[v]) {
                if (a.cap > 0 && !seen[a.to]) {
                    seen[a.to] = true;
                    queue.push_back(a.to);
                }
            }
        }
        return seen;
    }

private:
    struct Arc {
        std::size_t to;
        std::size_t rev;
        std::int64_t cap;      // residual
        std::int64_t init_cap;
    };

    void activate(std::size_t v) {
        if (v == s_ || v == t_ || active_[v] || excess_[v] <= 0) return;
        active_[v] = true;
        bucket_[height_[v]].push_back(v);
        highest_ = std::max(highest_, static_cast<std::ptrdiff_t>(height_[v]));
    }

    void push(std::size_t v, Arc& a) {
        const std::int64_t d = std::min(excess_[v], a.cap);
        a.cap -= d;
        g_[a.to][a.rev].cap += d;
        excess_[v] -= d;
        excess_[a.to] += d;
        activate(a.to);
    }

    void relabel(std::size_t v) {
        const std::size_t old = height_[v];
        std::size_t nh = 2 * n_;
        for (const Arc& a : g_[v])
            if (a.cap > 0) nh = std::min(nh, height_[a.to] + 1);
        --count_[old];
        height_[v] = nh;
        ++count_[nh];
        // Gap: an empty level below n cuts off everything stacked above it.
        if (count_[old] == 0 && old < n_) {
            for (std::size_t u = 0; u < n_; ++u) {
                if (u == s_ || height_[u] <= old || height_[u] >= n_) continue;
                --count_[height_[u]];
                height_[u] = n_ + 1;
                ++count_[n_ + 1];
            }
        }
    }

    void discharge(std::size_t v) {
        while (excess_[v] > 0) {
            if (arc_[v] == g_[v].size()) {
                relabel(v);
                arc_[v] = 0;
                if (height_[v] >= 2 * n_) break;
                continue;
            }
            Arc& a = g_[v][arc_[v]];
            if (a.cap > 0 && height_[v] == height_[a.to] + 1)
                push(v, a);
            else
                ++arc_[v];
        }
    }

    std::vector<std::vector<Arc>> g_;
    std::vector<std::int64_t> excess_;
    std::vector<std::size_t> height_;
    std::vector<std::size_t> arc_;
    std::vector<bool> active_;
    std::vector<std::size_t> count_;
    std::vector<std::vector<std::size_t>> bucket_;
    std::size_t n_;
    std::size_t s_ = 0, t_ = 0;
    std::ptrdiff_t highest_ = -1;
};

constexpr std::int64_t kFixedPointScale = std::int64_t{1} << 44;

std::int64_t gcd64(std::int64_t a, std::int64_t b) {
    while (b) {
        a %= b;
        std::swap(a, b);
    }
    return a;
}

/// Common denominator for all weights if each is recognizably rational and
/// the lcm stays small enough for exact integer flows; 0 otherwise.
std::int64_t common_denominator(const std::vector<double>& a, const std::vector<double>& b) {
    std::int64_t lcm = 1;
    auto fold = [&](double w) {
        const auto r = rationalize(w, 1000000, 1e-12);
        if (!r) return false;
        const std::int64_t den = r->second;
        const std::int64_t g = gcd64(lcm, den);
        if (lcm / g > kFixedPointScale / den) return false;
        lcm = lcm / g * den;
        return true;
    };
    for (double w : a)
        if (!fold(w)) return 0;
    for (double w : b)
        if (!fold(w)) return 0;
    return lcm;
}

} // namespace

CouplingResult feasible_coupling(const DiscreteMeasure& p, const DiscreteMeasure& nu,
                                 const FiniteCorrespondence& corr) {
    if (p.size() != corr.y_size() || nu.size() != corr.u_size())
        throw std::invalid_argument("feasible_coupling: carrier mismatch");
    if (!corr.forward_valid())
        throw std::invalid_argument("feasible_coupling: correspondence has an observable atom "
                                    "with empty value");
    const std::size_t m = corr.y_size();
    const std::size_t k = corr.u_size();

    std::int64_t scale = common_denominator(p.weights(), nu.weights());
    const bool exact = scale != 0;
    if (!exact) scale = kFixedPointScale;
    auto to_units = [&](double w) {
        return static_cast<std::int64_t>(std::llround(w * static_cast<double>(scale)));
    };

    // source = 0, y atoms = 1..m, u atoms = m+1..m+k, sink = m+k+1
    const std::size_t source = 0, sink = m + k + 1;
    PushRelabel net(m + k + 2);
    for (std::size_t yi = 0; yi < m; ++yi)
        net.add_edge(source, 1 + yi, to_units(p.weight(yi)));
    std::vector<PushRelabel::ArcRef> edge_arcs;
    edge_arcs.reserve(corr.edges().size());
    for (const auto& [yi, ui] : corr.edges())
        edge_arcs.push_back(net.add_edge(1 + yi, 1 + m + ui, scale));
    for (std::size_t ui = 0; ui < k; ++ui)
        net.add_edge(1 + m + ui, sink, to_units(nu.weight(ui)));

    const std::int64_t flow = net.max_flow(source, sink);

    CouplingResult result;
    result.violation_mass =
        std::max(0.0, 1.0 - static_cast<double>(flow) / static_cast<double>(scale));
    result.feasible = result.violation_mass <= kTransportTol;
    for (std::size_t e = 0; e < edge_arcs.size(); ++e) {
        const std::int64_t f = net.flow_on(edge_arcs[e]);
        if (f > 0)
            result.coupling.push_back({corr.edges()[e].first, corr.edges()[e].second,
                                       static_cast<double>(f) / static_cast<double>(scale)});
    }
    // The source side of the min cut, restricted to observable atoms,
    // attains the dual supremum.
    const std::vector<bool> reach = net.residual_reachable(source);
    result.dual_witness = Bitset(m);
    for (std::size_t yi = 0; yi < m; ++yi)
        if (reach[1 + yi]) result.dual_witness.set(yi);
    return result;
}

DualStatistic dual_statistic_bruteforce(const DiscreteMeasure& p, const DiscreteMeasure& nu,
                                        const FiniteCorrespondence& corr) {
    if (p.size() != corr.y_size() || nu.size() != corr.u_size())
        throw std::invalid_argument("dual_statistic_bruteforce: carrier mismatch");
    const std::size_t m = corr.y_size();
    if (m > 24)
        throw std::invalid_argument("dual_statistic_bruteforce: observable carrier larger than "
                                    "24; use feasible_coupling instead");
    DualStatistic best;
    best.value = -2.0;
    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << m); ++mask) {
        Bitset a(m);
        double pa = 0.0;
        for (std::size_t yi = 0; yi < m; ++yi) {
            if (mask & (std::uint32_t{1} << yi)) {
                a.set(yi);
                pa += p.weight(yi);
            }
        }
        const double value = pa - nu.mass(corr.image(a));
        if (value > best.value) {
            best.value = value;
            best.argmax = a;
        }
    }
    return best;
}

} // namespace incomplete
