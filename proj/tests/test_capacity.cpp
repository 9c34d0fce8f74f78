#include <doctest.h>

#include <cmath>
#include <random>

#include "incomplete/capacity.hpp"
#include "incomplete/rng.hpp"
#include "incomplete/transport.hpp"

using namespace incomplete;

namespace {

Bitset atoms(std::size_t n, std::initializer_list<std::size_t> indices) {
    Bitset b(n);
    for (std::size_t i : indices) b.set(i);
    return b;
}

// Gamma(y1) = {u1}, Gamma(y2) = {u1, u2}
FiniteCorrespondence tiny() {
    return FiniteCorrespondence({"y1", "y2"}, {"u1", "u2"}, {{0, 0}, {1, 0}, {1, 1}});
}

// Four observable events a1..a4, four latent events b1..b4, arranged so
// that a3's value sits inside {b3, b4}, a1 and a2 straddle it, and a4
// misses it entirely.
FiniteCorrespondence four_by_four() {
    return FiniteCorrespondence({"a1", "a2", "a3", "a4"}, {"b1", "b2", "b3", "b4"},
                                {{0, 1}, {0, 2}, {1, 0}, {1, 3}, {2, 2}, {2, 3}, {3, 0}});
}

/// Weights with denominator 1024, strictly positive, summing exactly to 1.
std::vector<double> dyadic_weights(std::mt19937_64& eng, std::size_t m) {
    std::vector<std::int64_t> parts(m, 1);
    std::int64_t remaining = 1024 - static_cast<std::int64_t>(m);
    std::uniform_int_distribution<std::size_t> pick(0, m - 1);
    while (remaining > 0) {
        const auto chunk = std::uniform_int_distribution<std::int64_t>(1, remaining)(eng);
        parts[pick(eng)] += chunk;
        remaining -= chunk;
    }
    std::vector<double> weights(m);
    for (std::size_t i = 0; i < m; ++i)
        weights[i] = static_cast<double>(parts[i]) / 1024.0;
    return weights;
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

} // namespace

TEST_CASE("belief and plausibility on the four-event structure") {
    const FiniteCorrespondence corr = four_by_four();
    const DiscreteMeasure p({0.1, 0.2, 0.3, 0.4});
    const Bitset b34 = atoms(4, {2, 3});
    CHECK(belief(p, corr, b34) == doctest::Approx(0.3));        // P({a3})
    CHECK(plausibility(p, corr, b34) == doctest::Approx(0.6));  // P({a1,a2,a3})
}

TEST_CASE("belief and plausibility basics") {
    const FiniteCorrespondence corr = tiny();
    const DiscreteMeasure p({0.5, 0.5});
    CHECK(belief(p, corr, atoms(2, {0, 1})) == doctest::Approx(1.0));
    CHECK(belief(p, corr, atoms(2, {0})) == doctest::Approx(0.5));
    CHECK(plausibility(p, corr, atoms(2, {})) == doctest::Approx(0.0));
    CHECK(plausibility(p, corr, atoms(2, {1})) == doctest::Approx(0.5));
    CHECK_THROWS_AS(belief(DiscreteMeasure({1.0}), corr, atoms(2, {0})),
                    std::invalid_argument);
}

TEST_CASE("conjugacy and ordering of belief and plausibility") {
    std::mt19937_64 eng = make_engine(21, 0);
    for (int rep = 0; rep < 200; ++rep) {
        const FiniteCorrespondence corr = random_instance(eng);
        const DiscreteMeasure p(dyadic_weights(eng, corr.y_size()));
        std::uniform_int_distribution<std::uint64_t> mask(0, (1ull << corr.u_size()) - 1);
        for (int t = 0; t < 16; ++t) {
            Bitset b(corr.u_size());
            const std::uint64_t bits = mask(eng);
            for (std::size_t i = 0; i < corr.u_size(); ++i)
                if (bits & (1ull << i)) b.set(i);
            const double plaus = plausibility(p, corr, b);
            const double bel_c = belief(p, corr, b.complement());
            CHECK(plaus == 1.0 - bel_c);  // exact for dyadic weights
            CHECK(belief(p, corr, b) <= plaus + 1e-15);
        }
    }
}

TEST_CASE("capacity table validation and export") {
    CHECK_NOTHROW(CapacityTable(2, {0.0, 0.9, 0.9, 1.0}));
    CHECK_THROWS_AS(CapacityTable(2, {0.1, 0.9, 0.9, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(CapacityTable(2, {0.0, 0.9, 0.9, 0.7}), std::invalid_argument);
    CHECK_THROWS_AS(CapacityTable(2, {0.0, 0.9, 0.95, 0.9}), std::invalid_argument);
    CHECK_THROWS_AS(CapacityTable(2, {0.0, 1.0}), std::invalid_argument);
    const CapacityTable table(1, {0.0, 1.0});
    CHECK(table.to_json_text() == "{\"0\":0,\"1\":1}");
}

TEST_CASE("probability tables satisfy alternation with equality") {
    std::mt19937_64 eng = make_engine(22, 0);
    for (int rep = 0; rep < 20; ++rep) {
        const DiscreteMeasure nu(dyadic_weights(eng, 5));
        const CapacityTable table = measure_table(nu);
        CHECK(is_alternating(table, 3).alternating);
        // Spot-check the equality version on random pairs.
        std::uniform_int_distribution<std::uint32_t> mask(0, table.full_mask());
        for (int t = 0; t < 50; ++t) {
            const std::uint32_t a = mask(eng), b = mask(eng);
            const double lhs = table.value(a & b);
            const double rhs = table.value(a) + table.value(b) - table.value(a | b);
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
        }
    }
}

TEST_CASE("plausibility tables of correspondences are alternating") {
    std::mt19937_64 eng = make_engine(23, 0);
    for (int rep = 0; rep < 60; ++rep) {
        const FiniteCorrespondence corr = random_instance(eng, 6);
        const DiscreteMeasure p(dyadic_weights(eng, corr.y_size()));
        CHECK(is_alternating(plausibility_table(p, corr), 3).alternating);
    }
}

TEST_CASE("a superadditive table fails alternation at order two") {
    // value({u1}) + value({u2}) < value(full): no random set has this
    // hitting distribution.
    const CapacityTable table(2, {0.0, 0.4, 0.4, 1.0});
    const AlternationResult result = is_alternating(table, 2);
    CHECK_FALSE(result.alternating);
    REQUIRE(result.violating_family.size() == 2);
    CHECK((result.violating_family[0] | result.violating_family[1]) == 3u);
}

TEST_CASE("choquet integral") {
    const FiniteCorrespondence corr = tiny();
    const DiscreteMeasure p({0.5, 0.5});

    SUBCASE("against a probability measure it is the expectation") {
        std::mt19937_64 eng = make_engine(24, 0);
        for (int rep = 0; rep < 20; ++rep) {
            const DiscreteMeasure nu(dyadic_weights(eng, 4));
            const CapacityTable table = measure_table(nu);
            std::uniform_real_distribution<double> val(-3.0, 3.0);
            std::vector<double> f(4);
            for (double& v : f) v = val(eng);
            double expectation = 0.0;
            for (std::size_t i = 0; i < 4; ++i) expectation += f[i] * nu.weight(i);
            CHECK(choquet_integral(table, f) == doctest::Approx(expectation).epsilon(1e-12));
        }
    }

    SUBCASE("constant functions integrate to the constant") {
        const CapacityTable table = plausibility_table(p, corr);
        CHECK(choquet_integral(table, {2.5, 2.5}) == doctest::Approx(2.5));
        CHECK(choquet_integral(table, {-1.0, -1.0}) == doctest::Approx(-1.0));
    }

    SUBCASE("single level set picks up the plausibility value") {
        const CapacityTable table = plausibility_table(p, corr);
        CHECK(choquet_integral(table, {1.0, 0.0}) == doctest::Approx(1.0));
    }
}

TEST_CASE("choquet integral equals the core supremum") {
    const FiniteCorrespondence corr = tiny();
    const DiscreteMeasure p({0.5, 0.5});
    CHECK(core_sup_expectation(p, corr, {1.0, 0.0}) == doctest::Approx(1.0));
    CHECK(core_sup_expectation(p, corr, {0.0, 0.0}) == doctest::Approx(0.0));

    SUBCASE("random instances with signed integer payoffs") {
        std::mt19937_64 eng = make_engine(25, 0);
        for (int rep = 0; rep < 60; ++rep) {
            const FiniteCorrespondence corr2 = random_instance(eng, 6);
            const DiscreteMeasure p2(dyadic_weights(eng, corr2.y_size()));
            std::uniform_int_distribution<int> val(-5, 5);
            std::vector<double> f(corr2.u_size());
            for (double& v : f) v = val(eng);
            const double lp = core_sup_expectation(p2, corr2, f);
            const double ch = choquet_integral(plausibility_table(p2, corr2), f);
            CHECK(lp == doctest::Approx(ch).epsilon(1e-9));
        }
    }

    SUBCASE("bijections have a singleton core") {
        const FiniteCorrespondence bij({"y1", "y2"}, {"u1", "u2"}, {{0, 1}, {1, 0}});
        const DiscreteMeasure pb({0.25, 0.75});
        // Unique core element is the pushforward (0.75, 0.25).
        CHECK(core_sup_expectation(pb, bij, {1.0, 2.0}) == doctest::Approx(1.25));
    }
}

TEST_CASE("core membership") {
    const FiniteCorrespondence corr = tiny();
    const DiscreteMeasure p({0.5, 0.5});

    CHECK(core_membership(DiscreteMeasure({0.6, 0.4}), corr, p).in_core);

    const CoreMembership bad = core_membership(DiscreteMeasure({0.3, 0.7}), corr, p);
    CHECK_FALSE(bad.in_core);
    REQUIRE(bad.witness.has_value());
    CHECK(*bad.witness == atoms(2, {1}));  // nu({u2}) = 0.7 > 0.5

    SUBCASE("bijective pushforward lies in the core with equality") {
        const FiniteCorrespondence bij({"y1", "y2"}, {"u1", "u2"}, {{0, 1}, {1, 0}});
        const DiscreteMeasure pb({0.25, 0.75});
        const DiscreteMeasure pushforward({0.75, 0.25});
        CHECK(core_membership(pushforward, bij, pb).in_core);
        const CapacityTable plaus = plausibility_table(pb, bij);
        const CapacityTable push = measure_table(pushforward);
        for (std::uint32_t mask = 0; mask <= plaus.full_mask(); ++mask)
            CHECK(plaus.value(mask) == doctest::Approx(push.value(mask)));
    }

    SUBCASE("agrees with transport feasibility on random instances") {
        std::mt19937_64 eng = make_engine(26, 0);
        for (int rep = 0; rep < 120; ++rep) {
            const FiniteCorrespondence corr2 = random_instance(eng, 6);
            const DiscreteMeasure p2(dyadic_weights(eng, corr2.y_size()));
            const DiscreteMeasure nu2(dyadic_weights(eng, corr2.u_size()));
            const bool in_core = core_membership(nu2, corr2, p2).in_core;
            const CouplingResult coupling = feasible_coupling(p2, nu2, corr2);
            CHECK(in_core == coupling.feasible);
        }
    }
}
