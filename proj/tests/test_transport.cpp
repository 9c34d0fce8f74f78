#include <doctest.h>

#include <cmath>
#include <random>

#include "incomplete/capacity.hpp"
#include "incomplete/model.hpp"
#include "incomplete/rng.hpp"
#include "incomplete/transport.hpp"

using namespace incomplete;

namespace {

Bitset atoms(std::size_t n, std::initializer_list<std::size_t> indices) {
    Bitset b(n);
    for (std::size_t i : indices) b.set(i);
    return b;
}

FiniteCorrespondence tiny() {
    return FiniteCorrespondence({"y1", "y2"}, {"u1", "u2"}, {{0, 0}, {1, 0}, {1, 1}});
}

FiniteCorrespondence random_instance(std::mt19937_64& eng, std::size_t max_side = 8) {
    std::uniform_int_distribution<std::size_t> side(1, max_side);
    const std::size_t m = side(eng), k = side(eng);
    std::bernoulli_distribution edge(0.35);
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t y = 0; y < m; ++y)
        for (std::size_t u = 0; u < k; ++u)
            if (edge(eng)) edges.emplace_back(y, u);
    std::vector<bool> y_hit(m, false), u_hit(k, false);
    for (auto& [y, u] : edges) {
        y_hit[y] = true;
        u_hit[u] = true;
    }
    std::uniform_int_distribution<std::size_t> pick_u(0, k - 1), pick_y(0, m - 1);
    for (std::size_t y = 0; y < m; ++y)
        if (!y_hit[y]) {
            const std::size_t u = pick_u(eng);
            edges.emplace_back(y, u);
            u_hit[u] = true;
        }
    for (std::size_t u = 0; u < k; ++u)
        if (!u_hit[u]) edges.emplace_back(pick_y(eng), u);
    std::vector<std::string> ys(m), us(k);
    for (std::size_t i = 0; i < m; ++i) ys[i] = "y" + std::to_string(i);
    for (std::size_t i = 0; i < k; ++i) us[i] = "u" + std::to_string(i);
    return FiniteCorrespondence(ys, us, edges);
}

/// Random rational weights k_i / S with a common small denominator.
std::vector<double> rational_weights(std::mt19937_64& eng, std::size_t m) {
    std::uniform_int_distribution<int> part(1, 12);
    std::vector<int> parts(m);
    int total = 0;
    for (int& v : parts) {
        v = part(eng);
        total += v;
    }
    std::vector<double> weights(m);
    for (std::size_t i = 0; i < m; ++i)
        weights[i] = static_cast<double>(parts[i]) / static_cast<double>(total);
    return weights;
}

void check_coupling_invariants(const CouplingResult& result, const DiscreteMeasure& p,
                               const DiscreteMeasure& nu, const FiniteCorrespondence& corr) {
    std::vector<double> row(p.size(), 0.0), col(nu.size(), 0.0);
    for (const CouplingEntry& e : result.coupling) {
        const Bitset& image = corr.value(e.y_index);
        CHECK(image.test(e.u_index));  // supported on the graph
        CHECK(e.mass > 0.0);
        row[e.y_index] += e.mass;
        col[e.u_index] += e.mass;
    }
    for (std::size_t i = 0; i < row.size(); ++i) CHECK(row[i] <= p.weight(i) + 1e-9);
    for (std::size_t j = 0; j < col.size(); ++j) CHECK(col[j] <= nu.weight(j) + 1e-9);
    // The witness attains the dual value.
    const double pa = p.mass(result.dual_witness);
    const double nu_gamma = nu.mass(corr.image(result.dual_witness));
    CHECK(std::abs((pa - nu_gamma) - result.violation_mass) <= 1e-9);
}

} // namespace

TEST_CASE("feasible instance recovers the unique coupling") {
    const CouplingResult result =
        feasible_coupling(DiscreteMeasure({0.5, 0.5}), DiscreteMeasure({0.6, 0.4}), tiny());
    CHECK(result.feasible);
    CHECK(result.violation_mass <= 1e-12);
    // The only coupling: y1 -> u1 (0.5), y2 -> u1 (0.1), y2 -> u2 (0.4).
    REQUIRE(result.coupling.size() == 3);
    for (const CouplingEntry& e : result.coupling) {
        if (e.y_index == 0) {
            CHECK(e.u_index == 0);
            CHECK(e.mass == doctest::Approx(0.5).epsilon(1e-9));
        } else if (e.u_index == 0) {
            CHECK(e.mass == doctest::Approx(0.1).epsilon(1e-9));
        } else {
            CHECK(e.mass == doctest::Approx(0.4).epsilon(1e-9));
        }
    }
    check_coupling_invariants(result, DiscreteMeasure({0.5, 0.5}), DiscreteMeasure({0.6, 0.4}),
                              tiny());
}

TEST_CASE("infeasible instance reports the violation and its witness") {
    const DiscreteMeasure p({0.5, 0.5});
    const DiscreteMeasure nu({0.3, 0.7});
    const CouplingResult result = feasible_coupling(p, nu, tiny());
    CHECK_FALSE(result.feasible);
    CHECK(result.violation_mass == doctest::Approx(0.2).epsilon(1e-9));
    CHECK(result.dual_witness == atoms(2, {0}));
    check_coupling_invariants(result, p, nu, tiny());
}

TEST_CASE("bijections transport exactly") {
    const FiniteCorrespondence bij({"y1", "y2"}, {"u1", "u2"}, {{0, 1}, {1, 0}});
    const DiscreteMeasure p({0.25, 0.75});
    const DiscreteMeasure nu({0.75, 0.25});  // pushforward
    const CouplingResult result = feasible_coupling(p, nu, bij);
    CHECK(result.feasible);
    REQUIRE(result.coupling.size() == 2);
    check_coupling_invariants(result, p, nu, bij);
}

TEST_CASE("isolated observable atoms are rejected before solving") {
    const FiniteCorrespondence isolated({"a", "b"}, {"u"}, {{0, 0}});
    CHECK_THROWS_AS(
        feasible_coupling(DiscreteMeasure({0.5, 0.5}), DiscreteMeasure({1.0}), isolated),
        std::invalid_argument);
}

TEST_CASE("brute-force dual matches hand computations") {
    const DiscreteMeasure p({0.5, 0.5});

    SUBCASE("infeasible tiny instance") {
        const DualStatistic dual = dual_statistic_bruteforce(p, DiscreteMeasure({0.3, 0.7}), tiny());
        CHECK(dual.value == doctest::Approx(0.2).epsilon(1e-12));
        CHECK(dual.argmax == atoms(2, {0}));
    }

    SUBCASE("well specified instance peaks at zero") {
        const DualStatistic dual = dual_statistic_bruteforce(p, DiscreteMeasure({0.6, 0.4}), tiny());
        CHECK(std::abs(dual.value) <= 1e-12);
        CHECK(dual.argmax == atoms(2, {}));  // smallest-mask tie break
    }

    SUBCASE("discretized entry game") {
        const auto model = entry_game_model(0.5, 1.0);
        const auto [corr, cell_law] = discretize(*model, 512);
        const DualStatistic dual =
            dual_statistic_bruteforce(DiscreteMeasure({0.4, 0.6}), cell_law, corr);
        CHECK(dual.value == doctest::Approx(0.1).epsilon(1e-9));
        CHECK(dual.argmax == atoms(2, {1}));
    }
}

TEST_CASE("brute-force dual rejects oversized carriers") {
    std::vector<std::string> ys(25), us{"u"};
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t i = 0; i < 25; ++i) {
        ys[i] = "y" + std::to_string(i);
        edges.emplace_back(i, 0);
    }
    const FiniteCorrespondence corr(ys, us, edges);
    std::vector<double> w(25, 1.0 / 25);
    CHECK_THROWS_WITH_AS(dual_statistic_bruteforce(DiscreteMeasure(w), DiscreteMeasure({1.0}), corr),
                         doctest::Contains("feasible_coupling"), std::invalid_argument);
}

TEST_CASE("primal equals dual on random rational instances") {
    std::mt19937_64 eng = make_engine(31, 0);
    for (int rep = 0; rep < 300; ++rep) {
        const FiniteCorrespondence corr = random_instance(eng);
        const DiscreteMeasure p(rational_weights(eng, corr.y_size()));
        const DiscreteMeasure nu(rational_weights(eng, corr.u_size()));
        const CouplingResult primal = feasible_coupling(p, nu, corr);
        const DualStatistic dual = dual_statistic_bruteforce(p, nu, corr);
        CHECK(std::abs(primal.violation_mass - dual.value) <= 1e-9);
        check_coupling_invariants(primal, p, nu, corr);
    }
}

TEST_CASE("the four feasibility formulations agree") {
    std::mt19937_64 eng = make_engine(32, 0);
    for (int rep = 0; rep < 200; ++rep) {
        const FiniteCorrespondence corr = random_instance(eng, 6);
        const DiscreteMeasure p(rational_weights(eng, corr.y_size()));
        const DiscreteMeasure nu(rational_weights(eng, corr.u_size()));

        const bool primal = feasible_coupling(p, nu, corr).feasible;
        const bool capacity_dominance = core_membership(nu, corr, p).in_core;
        const bool subset_dual = dual_statistic_bruteforce(p, nu, corr).value <= 1e-9;
        const bool symmetric =
            dual_statistic_bruteforce(nu, p, corr.swapped()).value <= 1e-9;

        CHECK(primal == capacity_dominance);
        CHECK(primal == subset_dual);
        CHECK(primal == symmetric);
    }
}

TEST_CASE("adding edges never increases the violation mass") {
    std::mt19937_64 eng = make_engine(33, 0);
    for (int rep = 0; rep < 100; ++rep) {
        const FiniteCorrespondence corr = random_instance(eng, 6);
        const DiscreteMeasure p(rational_weights(eng, corr.y_size()));
        const DiscreteMeasure nu(rational_weights(eng, corr.u_size()));
        const double before = feasible_coupling(p, nu, corr).violation_mass;

        auto edges = corr.edges();
        std::uniform_int_distribution<std::size_t> pick_y(0, corr.y_size() - 1),
            pick_u(0, corr.u_size() - 1);
        edges.emplace_back(pick_y(eng), pick_u(eng));
        const FiniteCorrespondence bigger(corr.y_labels(), corr.u_labels(), edges);
        const double after = feasible_coupling(p, nu, bigger).violation_mass;
        CHECK(after <= before + 1e-12);
    }
}

TEST_CASE("swapping the correspondence swaps the roles of the marginals") {
    std::mt19937_64 eng = make_engine(34, 0);
    for (int rep = 0; rep < 100; ++rep) {
        const FiniteCorrespondence corr = random_instance(eng, 6);
        const DiscreteMeasure p(rational_weights(eng, corr.y_size()));
        const DiscreteMeasure nu(rational_weights(eng, corr.u_size()));
        const double direct = feasible_coupling(p, nu, corr).violation_mass;
        const double swapped = feasible_coupling(nu, p, corr.swapped()).violation_mass;
        CHECK(std::abs(direct - swapped) <= 1e-9);
    }
}

TEST_CASE("irrational weights fall back to fixed-point scaling") {
    // Weights built from sqrt(2)/2 are not rational at any small denominator.
    const double a = std::sqrt(2.0) / 2.0;
    const DiscreteMeasure p({a, 1.0 - a});
    const DiscreteMeasure nu({a / 2.0, 1.0 - a / 2.0});
    const CouplingResult result = feasible_coupling(p, nu, tiny());
    const DualStatistic dual = dual_statistic_bruteforce(p, nu, tiny());
    CHECK(std::abs(result.violation_mass - dual.value) <= 1e-9);
}
