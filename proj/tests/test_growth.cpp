#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pslgrow/growth.hpp"

using namespace pslgrow;

TEST_CASE("cyclic BFS growth of Z_6") {
    auto one_gen = cyclic_cayley_growth(6, {1}, 10);
    CHECK(one_gen.balls == std::vector<std::uint64_t>{1, 3, 5, 6});
    CHECK(one_gen.saturated_at == 3);

    auto two_gen = cyclic_cayley_growth(6, {3, 2}, 10);
    CHECK(two_gen.balls[0] == 1);
    CHECK(two_gen.balls[1] == 4); // e, x = x^-1, y, y^-1
    CHECK(two_gen.balls[2] == 6);

    // growth of a family of finite groups depends on the generating set
    CHECK(one_gen.balls[1] != two_gen.balls[1]);
}

TEST_CASE("PSL2(F_7) growth with the classical generators") {
    std::vector<Psl2> gens{make_psl2(0, -1, 1, 0, 7), make_psl2(1, 1, 0, 1, 7)};
    auto table = cayley_growth(gens, 16);
    CHECK(table.balls.front() == 1);
    CHECK(table.balls[1] == 4); // the order-2 generator contributes one neighbor
    CHECK(table.balls.back() == 168);
    REQUIRE(table.saturated_at.has_value());
    CHECK(table.ball_at(100) == 168);
    for (std::size_t k = 1; k < table.balls.size(); ++k) CHECK(table.balls[k] >= table.balls[k - 1]);
}

TEST_CASE("growth with every non-identity generator saturates at radius 1") {
    auto elements = enumerate_group(7);
    std::vector<Psl2> gens;
    for (const auto& g : elements)
        if (!(g == psl2_identity(7))) gens.push_back(g);
    auto table = cayley_growth(gens, 3);
    CHECK(table.balls[1] == 168);
}

TEST_CASE("growth input validation") {
    CHECK_THROWS_AS(cayley_growth({}, 5), Error);
    auto truncated = cyclic_cayley_growth(100, {1}, 5);
    CHECK_FALSE(truncated.saturated_at.has_value());
    CHECK_THROWS_AS(truncated.ball_at(9), Error); // not defined through 9
}

TEST_CASE("family growth is the pointwise maximum") {
    auto a = cyclic_cayley_growth(6, {1}, 12);
    auto b = cyclic_cayley_growth(6, {3, 2}, 12);
    auto family = family_growth({a, b}, 6);
    for (int k = 0; k <= 6; ++k) CHECK(family.ball_at(k) == std::max(a.ball_at(k), b.ball_at(k)));

    auto solo = family_growth({a}, 3);
    CHECK(solo.balls == std::vector<std::uint64_t>{1, 3, 5, 6});

    auto short_table = cyclic_cayley_growth(100, {1}, 4);
    CHECK_THROWS_AS(family_growth({short_table}, 10), Error);
}

TEST_CASE("polygon series shapes") {
    auto cone1 = polygon_series(1, PolygonVariant::Cone3);
    CHECK(cone1.denominator == std::vector<std::int64_t>{1, -2, -2, -2, -2, -2, 1});
    CHECK(cone1.numerator == std::vector<std::int64_t>{1, 2, 2, 2, 2, 2, 1});

    auto smooth2 = polygon_series(2, PolygonVariant::Smooth);
    CHECK(smooth2.denominator == std::vector<std::int64_t>{1, -6, -6, -6, 1});

    for (int n : {1, 2, 3}) {
        for (auto variant : {PolygonVariant::Cone3, PolygonVariant::Smooth}) {
            if (variant == PolygonVariant::Smooth && n == 1) continue;
            auto s = polygon_series(n, variant);
            auto num_rev = s.numerator;
            auto den_rev = s.denominator;
            std::reverse(num_rev.begin(), num_rev.end());
            std::reverse(den_rev.begin(), den_rev.end());
            CHECK(s.numerator == num_rev);
            CHECK(s.denominator == den_rev);
        }
    }

    CHECK_THROWS_AS(polygon_series(0, PolygonVariant::Cone3), Error);
    CHECK_THROWS_AS(polygon_series(1, PolygonVariant::Smooth), Error);
}

TEST_CASE("series coefficients by long division") {
    auto smooth2 = polygon_series(2, PolygonVariant::Smooth);
    auto coeffs = series_coeffs(smooth2, 2);
    CHECK(coeffs[0] == 1);
    CHECK(coeffs[1] == 8);
    CHECK(coeffs[2] == 56);

    for (int n : {1, 2, 3}) {
        auto c = series_coeffs(polygon_series(n, PolygonVariant::Cone3), 1);
        CHECK(c[0] == 1);
        CHECK(c[1] == 4 * n);
    }

    RationalSeries bad{{1}, {2, 1}};
    CHECK_THROWS_AS(series_coeffs(bad, 3), Error);
}

TEST_CASE("polygon coefficients stay positive out to 500 terms") {
    for (int n : {1, 2}) {
        for (auto variant : {PolygonVariant::Cone3, PolygonVariant::Smooth}) {
            if (variant == PolygonVariant::Smooth && n == 1) continue;
            auto coeffs = series_coeffs(polygon_series(n, variant), 500);
            for (const auto& c : coeffs) CHECK(c > 0);
        }
    }
}

TEST_CASE("growth rate: ratio agrees with the dominant root") {
    auto r1 = growth_rate(polygon_series(1, PolygonVariant::Cone3));
    CHECK(r1.agree);
    CHECK(r1.exponential);
    CHECK(r1.lambda > 2.9);
    CHECK(r1.lambda < 3.0);

    auto r2 = growth_rate(polygon_series(2, PolygonVariant::Smooth));
    CHECK(r2.agree);
    CHECK(r2.lambda > 6.9);
    CHECK(r2.lambda < 7.0);

    for (int n : {2, 3, 4}) {
        for (auto variant : {PolygonVariant::Cone3, PolygonVariant::Smooth}) {
            auto r = growth_rate(polygon_series(n, variant));
            CHECK(r.agree);
            CHECK(r.lambda > 4.0 * n - 3.0);
            CHECK(r.lambda <= 4.0 * n);
        }
    }
}

TEST_CASE("a non-exponential series is reported, not rejected") {
    RationalSeries geometric{{1}, {1, -1}}; // 1/(1-z): all coefficients 1
    auto r = growth_rate(geometric, 50);
    CHECK_FALSE(r.exponential);
    CHECK(r.lambda == 1.0);
    CHECK(r.agree);
}

TEST_CASE("cyclic family contrast: linear vs quadratic window fits") {
    std::vector<std::pair<std::int64_t, std::int64_t>> pairs{{2, 3}, {4, 5}, {6, 7}};

    auto one = cyclic_family_growth(pairs, CyclicVariant::OneGen, 64);
    CHECK(one.ball_at(1) == 3);
    auto fit_one = fit_growth_exponent(one);
    CHECK(fit_one.exponent > 0.8);
    CHECK(fit_one.exponent < 1.2);

    auto two = cyclic_family_growth(pairs, CyclicVariant::TwoGen, 64);
    CHECK(two.ball_at(1) == 5);
    auto fit_two = fit_growth_exponent(two);
    CHECK(fit_two.exponent > 1.8);
    CHECK(fit_two.exponent < 2.2);

    CHECK_THROWS_AS(cyclic_family_growth({{2, 4}}, CyclicVariant::OneGen, 8), Error);
}

TEST_CASE("PSL2 family sweep follows the largest member after saturation") {
    const int nmax = 24;
    std::vector<GrowthTable> tables;
    int last_saturation = 0;
    for (std::int64_t p : {7, 11, 19, 23}) {
        std::vector<Psl2> gens{make_psl2(0, -1, 1, 0, p), make_psl2(1, 1, 0, 1, p)};
        auto table = cayley_growth(gens, nmax);
        REQUIRE(table.saturated_at.has_value());
        CHECK(table.balls.back() == psl2_order(p)); // finite groups saturate exactly at |G|
        if (p != 23) last_saturation = std::max(last_saturation, *table.saturated_at);
        tables.push_back(std::move(table));
    }
    auto family = family_growth(tables, nmax);
    for (int k = last_saturation; k <= nmax; ++k) CHECK(family.ball_at(k) == tables.back().ball_at(k));
}

TEST_CASE("quotient growth never exceeds the polygon growth") {
    for (std::int64_t p : {7, 11}) {
        auto cmp = compare_quotient_vs_fuchsian(p, parse_signature("1:3"), 8);
        CHECK(cmp.inequality_holds);
        CHECK(cmp.equality_depth >= 1);
        CHECK(cmp.rows[0].gamma_quotient == 1);
        CHECK(cmp.rows[1].gamma_quotient == 5);
        CHECK(cmp.rows[1].gamma_fuchsian == 5);
        // equal on an initial segment, strictly smaller from the first merge on
        for (const auto& row : cmp.rows) {
            if (row.k <= cmp.equality_depth)
                CHECK(row.equal);
            else
                CHECK(mpz_class(long(row.gamma_quotient)) < row.gamma_fuchsian);
        }
        auto j = cmp.to_json();
        CHECK(j["inequality_holds"] == true);
        CHECK(j["rows"].size() == 9);
    }
    CHECK_THROWS_AS(compare_quotient_vs_fuchsian(7, parse_signature("0:2,3,7"), 8), Error);
}

TEST_CASE("growth table exports") {
    auto table = cyclic_cayley_growth(6, {1}, 8);
    auto csv = growth_table_to_csv(table);
    CHECK(csv.find("k,sphere,ball\n0,1,1\n") == 0);
    auto j = growth_table_to_json(table);
    CHECK(j["balls"][0] == 1);
    CHECK(j["saturated_at"] == 3);
}
