#include <doctest.h>

#include <cmath>
#include <random>

#include "incomplete/correspondence.hpp"
#include "incomplete/rng.hpp"

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

FiniteCorrespondence random_instance(std::mt19937_64& eng, std::size_t max_side = 8) {
    std::uniform_int_distribution<std::size_t> side(1, max_side);
    const std::size_t m = side(eng), k = side(eng);
    std::bernoulli_distribution edge(0.35);
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t y = 0; y < m; ++y)
        for (std::size_t u = 0; u < k; ++u)
            if (edge(eng)) edges.emplace_back(y, u);
    // Repair empty rows/columns so both directions satisfy non-emptiness.
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

IntervalValuedCorrespondence entry_game_corr(double lambda) {
    return IntervalValuedCorrespondence({0.0, 1.0}, {{0.0, 1.0}, {0.0, lambda}});
}

} // namespace

TEST_CASE("finite image, preimage, lower inverse") {
    const FiniteCorrespondence corr = tiny();
    CHECK(corr.image(atoms(2, {0, 1})) == atoms(2, {0, 1}));
    CHECK(corr.image(atoms(2, {})) == atoms(2, {}));
    CHECK(corr.image(atoms(2, {0})) == atoms(2, {0}));

    CHECK(corr.preimage(atoms(2, {1})) == atoms(2, {1}));
    CHECK(corr.preimage(atoms(2, {0, 1})) == atoms(2, {0, 1}));

    CHECK(corr.lower_inverse(atoms(2, {0})) == atoms(2, {0}));
    CHECK(corr.lower_inverse(atoms(2, {0, 1})) == atoms(2, {0, 1}));
}

TEST_CASE("finite correspondence validates carriers and directions") {
    CHECK_THROWS_AS(FiniteCorrespondence({"a"}, {"b"}, {{0, 1}}), std::invalid_argument);
    const FiniteCorrespondence no_u_cover({"a", "b"}, {"u1", "u2"}, {{0, 0}, {1, 0}});
    CHECK(no_u_cover.forward_valid());
    CHECK_FALSE(no_u_cover.inverse_valid());
    CHECK_THROWS_AS(no_u_cover.swapped(), std::logic_error);
    const FiniteCorrespondence isolated_y({"a", "b"}, {"u"}, {{0, 0}});
    CHECK_FALSE(isolated_y.forward_valid());

    CHECK_THROWS_AS(tiny().image(Bitset(3)), std::invalid_argument);
    CHECK_THROWS_AS(tiny().preimage(Bitset(5)), std::invalid_argument);
}

TEST_CASE("finite correspondence JSON loader") {
    const auto corr = FiniteCorrespondence::from_json_text(
        R"({"y": ["y1", "y2"], "u": ["u1", "u2"], "edges": [[0,0],[1,0],[1,1]]})");
    CHECK(corr.y_size() == 2);
    CHECK(corr.u_size() == 2);
    CHECK(corr.image(atoms(2, {1})) == atoms(2, {0, 1}));
    CHECK_THROWS_AS(FiniteCorrespondence::from_json_text(R"({"y": []})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(FiniteCorrespondence::from_json_text(
                        R"({"y": ["a"], "u": ["b"], "edges": [[0]]})"),
                    std::invalid_argument);
}

TEST_CASE("entry-game correspondence: image, preimage, lower inverse") {
    const IntervalValuedCorrespondence corr = entry_game_corr(0.5);

    const IntervalSet image1 = corr.image(atoms(2, {1}));
    REQUIRE(image1.components().size() == 1);
    CHECK(image1.components()[0].lo == doctest::Approx(0.0));
    CHECK(image1.components()[0].hi == doctest::Approx(0.5));

    // [0.6, 1] misses [0, 0.5] but meets [0, 1].
    CHECK(corr.preimage(IntervalSet::single(0.6, 1.0)) == atoms(2, {0}));
    // [0, 0.5] contains Gamma(1) but not Gamma(0).
    CHECK(corr.lower_inverse(IntervalSet::single(0.0, 0.5)) == atoms(2, {1}));
    // Full latent carrier.
    CHECK(corr.preimage(IntervalSet::single(0.0, 1.0)) == atoms(2, {0, 1}));
    CHECK(corr.lower_inverse(IntervalSet::single(0.0, 1.0)) == atoms(2, {0, 1}));
}

TEST_CASE("interval correspondence: exact images of interval unions") {
    // l and u piecewise linear over [0, 1].
    const IntervalCorrespondence corr({0.0, 0.5, 1.0}, {0.0, 0.2, 0.5}, {0.3, 0.6, 0.9});

    SUBCASE("point images at knots and midpoints") {
        for (double y : {0.0, 0.25, 0.5, 0.75, 1.0}) {
            const Interval value = corr.value(y);
            const double expected_lo =
                y <= 0.5 ? 0.0 + (0.2 - 0.0) * (y / 0.5) : 0.2 + (0.5 - 0.2) * ((y - 0.5) / 0.5);
            const double expected_hi =
                y <= 0.5 ? 0.3 + (0.6 - 0.3) * (y / 0.5) : 0.6 + (0.9 - 0.6) * ((y - 0.5) / 0.5);
            CHECK(value.lo == doctest::Approx(expected_lo).epsilon(1e-12));
            CHECK(value.hi == doctest::Approx(expected_hi).epsilon(1e-12));
        }
    }

    SUBCASE("image of a subinterval evaluates envelopes at knots and ends") {
        const IntervalSet image = corr.image(IntervalSet::single(0.25, 0.75));
        REQUIRE(image.components().size() == 1);
        CHECK(image.components()[0].lo == doctest::Approx(0.1));   // l(0.25)
        CHECK(image.components()[0].hi == doctest::Approx(0.75));  // u(0.75)
    }

    SUBCASE("image clips to the domain and unions components") {
        const IntervalSet a = IntervalSet::from_pieces({{-1.0, 0.1}, {0.9, 2.0}});
        const IntervalSet image = corr.image(a);
        REQUIRE(image.components().size() == 2);
        CHECK(image.components()[0].lo == doctest::Approx(0.0));
        CHECK(image.components()[0].hi == doctest::Approx(0.36));  // u(0.1)
        CHECK(image.components()[1].lo == doctest::Approx(0.44));  // l(0.9)
        CHECK(image.components()[1].hi == doctest::Approx(0.9));
    }

    SUBCASE("preimage and lower inverse against direct scans") {
        const IntervalSet b = IntervalSet::single(0.55, 0.7);
        const IntervalSet pre = corr.preimage(b);
        const IntervalSet low = corr.lower_inverse(b);
        for (double y = 0.0; y <= 1.0; y += 1.0 / 256) {
            const Interval value = corr.value(y);
            const bool meets = value.lo <= 0.7 && value.hi >= 0.55;
            const bool inside = value.lo >= 0.55 && value.hi <= 0.7;
            CHECK(pre.contains(y) == meets);
            CHECK(low.contains(y) == inside);
        }
    }
}

TEST_CASE("interval correspondence validation") {
    CHECK_THROWS_AS(IntervalCorrespondence({0.0}, {0.0}, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS(IntervalCorrespondence({0.0, 0.0}, {0.0, 0.0}, {1.0, 1.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(IntervalCorrespondence({0.0, 1.0}, {0.5, 0.0}, {0.4, 1.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(IntervalCorrespondence({0.0, 1.0}, {0.0, 0.0}, {1.0, 1.0}).value(1.5),
                    std::invalid_argument);
}

TEST_CASE("monotone envelope detection") {
    CHECK(IntervalCorrespondence({0.0, 0.5, 1.0}, {0.0, 0.2, 0.5}, {0.3, 0.6, 0.9})
              .has_monotone_envelopes());
    CHECK_FALSE(IntervalCorrespondence({0.0, 0.5, 1.0}, {0.0, 0.2, 0.5}, {0.3, 0.9, 0.6})
                    .has_monotone_envelopes());
    CHECK(IntervalCorrespondence({0.0, 0.5, 1.0}, {0.1, 0.1, 0.1}, {0.4, 0.4, 0.4})
              .has_monotone_envelopes());
}

TEST_CASE("conjugacy of the two inverses on random finite instances") {
    std::mt19937_64 eng = make_engine(7, 0);
    for (int rep = 0; rep < 200; ++rep) {
        const FiniteCorrespondence corr = random_instance(eng);
        std::uniform_int_distribution<std::uint64_t> mask(0, (1ull << corr.u_size()) - 1);
        for (int t = 0; t < 20; ++t) {
            Bitset b(corr.u_size());
            const std::uint64_t bits = mask(eng);
            for (std::size_t i = 0; i < corr.u_size(); ++i)
                if (bits & (1ull << i)) b.set(i);
            CHECK(corr.lower_inverse(b) == corr.preimage(b.complement()).complement());
        }
    }
}

TEST_CASE("round-trip containments on random finite instances") {
    std::mt19937_64 eng = make_engine(8, 0);
    for (int rep = 0; rep < 200; ++rep) {
        const FiniteCorrespondence corr = random_instance(eng);
        std::uniform_int_distribution<std::uint64_t> ymask(0, (1ull << corr.y_size()) - 1);
        std::uniform_int_distribution<std::uint64_t> umask(0, (1ull << corr.u_size()) - 1);
        const Bitset full_image = corr.image(Bitset::full(corr.y_size()));
        for (int t = 0; t < 20; ++t) {
            Bitset a(corr.y_size());
            const std::uint64_t abits = ymask(eng);
            for (std::size_t i = 0; i < corr.y_size(); ++i)
                if (abits & (1ull << i)) a.set(i);
            CHECK(a.is_subset_of(corr.preimage(corr.image(a))));

            Bitset b(corr.u_size());
            const std::uint64_t bbits = umask(eng);
            for (std::size_t i = 0; i < corr.u_size(); ++i)
                if (bbits & (1ull << i)) b.set(i);
            CHECK((b & full_image).is_subset_of(corr.image(corr.preimage(b))));
        }
    }
}

TEST_CASE("interval point images match the envelope pair at knots and midpoints") {
    std::mt19937_64 eng = make_engine(9, 0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int rep = 0; rep < 50; ++rep) {
        std::vector<double> knots{0.0};
        for (int i = 0; i < 4; ++i) knots.push_back(knots.back() + 0.1 + unit(eng));
        std::vector<double> lower, upper;
        for (std::size_t i = 0; i < knots.size(); ++i) {
            const double a = unit(eng), b = unit(eng);
            lower.push_back(std::min(a, b));
            upper.push_back(std::max(a, b));
        }
        const IntervalCorrespondence corr(knots, lower, upper);
        for (std::size_t i = 0; i < knots.size(); ++i) {
            const IntervalSet image = corr.image(IntervalSet::single(knots[i], knots[i]));
            REQUIRE(image.components().size() == 1);
            CHECK(image.components()[0].lo == doctest::Approx(lower[i]).epsilon(1e-12));
            CHECK(image.components()[0].hi == doctest::Approx(upper[i]).epsilon(1e-12));
            if (i + 1 < knots.size()) {
                const double mid = 0.5 * (knots[i] + knots[i + 1]);
                const Interval value = corr.value(mid);
                CHECK(value.lo == doctest::Approx(0.5 * (lower[i] + lower[i + 1])).epsilon(1e-9));
                CHECK(value.hi == doctest::Approx(0.5 * (upper[i] + upper[i + 1])).epsilon(1e-9));
            }
        }
    }
}
