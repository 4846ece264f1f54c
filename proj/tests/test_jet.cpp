#include <catch2/catch_amalgamated.hpp>

#include <liefield/jet.hpp>

#include "test_util.hpp"

using namespace liefield;

namespace {

const std::vector<std::string> v2{"x1", "x2"};
const std::vector<std::string> xy{"x", "y"};

Variety circle() { return Variety(2, {parse_polynomial("x1^2 + x2^2 - 1", v2)}, v2); }

std::vector<Rational> pt(const std::string& s) { return parse_point(s); }

Polynomial tpoly(const std::string& s, int nvars) {
    std::vector<std::string> names;
    for (int i = 1; i <= nvars; ++i) names.push_back("t" + std::to_string(i));
    return parse_polynomial(s, names);
}

} // namespace

TEST_CASE("jet series arithmetic") {
    JetSeries one(Polynomial::constant(1, Rational(1)), 6);
    JetSeries t(Polynomial::variable(1, 0), 6);
    SECTION("truncation") {
        JetSeries s(tpoly("t1^7 + t1^2", 1), 6);
        CHECK(s.poly() == tpoly("t1^2", 1));
        CHECK((t * t * t * t * t * t).is_zero()); // t^6 truncated at order 6
    }
    SECTION("geometric series inverse") {
        JetSeries u = one - t;
        CHECK(u.inverse().poly() == tpoly("1 + t1 + t1^2 + t1^3 + t1^4 + t1^5", 1));
        CHECK((u * u.inverse()) == one);
        CHECK_THROWS_AS(t.inverse(), std::invalid_argument);
    }
    SECTION("valuation and homogeneous parts") {
        JetSeries s(tpoly("3*t1^2 + t1^4", 1), 6);
        CHECK(s.valuation() == 2);
        CHECK(s.homogeneous_part(2) == tpoly("3*t1^2", 1));
        CHECK(!JetSeries(1, 4).valuation().has_value());
    }
}

TEST_CASE("local chart on the circle") {
    Variety X = circle();
    LocalChart chart = local_chart(X, pt("0,1"));
    // first feasible column subset: {x1} minor vanishes at (0,1), so {x2} leads
    REQUIRE(chart.leading == std::vector<size_t>{1});
    REQUIRE(chart.free_cols == std::vector<size_t>{0});
    CHECK(chart.h.rep() == parse_polynomial("2*x2", v2));
    CHECK(chart.parameter(X, 0) == parse_polynomial("x1", v2));
    REQUIRE(chart.tau.size() == 1);
    CHECK(chart.tau[0].components()[0] == parse_polynomial("2*x2", v2));
    CHECK(chart.tau[0].components()[1] == parse_polynomial("-2*x1", v2));

    CHECK_THROWS_AS(local_chart(X, pt("1,1")), std::invalid_argument);
}

TEST_CASE("local chart on the sphere") {
    std::vector<std::string> v3{"x1", "x2", "x3"};
    Variety S(3, {parse_polynomial("x1^2 + x2^2 + x3^2 - 1", v3)}, v3);
    LocalChart chart = local_chart(S, pt("0,0,1"));
    REQUIRE(chart.leading == std::vector<size_t>{2});
    REQUIRE(chart.free_cols == (std::vector<size_t>{0, 1}));
    REQUIRE(chart.tau.size() == 2);
    CHECK(chart.tau[0].components()[0] == parse_polynomial("2*x3", v3));
    CHECK(chart.tau[0].components()[2] == parse_polynomial("-2*x1", v3));
    CHECK(chart.tau[1].components()[1] == parse_polynomial("2*x3", v3));
    CHECK(chart.tau[1].components()[2] == parse_polynomial("-2*x2", v3));
}

TEST_CASE("local chart on hyperelliptic curves") {
    SECTION("critical x-coordinate: y leads, tau = 2(y dx + h' dy)") {
        // h = x^3 - 3x + 4, h'(1) = 0, P = (1, 2) on y^2 = 2h
        Variety C(2, {parse_polynomial("y^2 - 2*x^3 + 6*x - 8", xy)}, xy);
        LocalChart chart = local_chart(C, pt("1,2"));
        REQUIRE(chart.leading == std::vector<size_t>{1});
        CHECK(chart.parameter(C, 0) == parse_polynomial("x - 1", xy));
        CHECK(chart.tau[0].components()[0] == parse_polynomial("2*y", xy));
        CHECK(chart.tau[0].components()[1] == parse_polynomial("6*x^2 - 6", xy));
    }
    SECTION("generic point: x leads") {
        // h = x^3 + 1, P = (1, 2), h'(1) = 3 != 0
        Variety C(2, {parse_polynomial("y^2 - 2*x^3 - 2", xy)}, xy);
        LocalChart chart = local_chart(C, pt("1,2"));
        REQUIRE(chart.leading == std::vector<size_t>{0});
        CHECK(chart.tau[0].components()[0] == parse_polynomial("-2*y", xy));
        CHECK(chart.tau[0].components()[1] == parse_polynomial("-6*x^2", xy));
    }
}

TEST_CASE("jet expansion on the circle") {
    Variety X = circle();
    LocalChart chart = local_chart(X, pt("0,1"));
    SECTION("sqrt(1 - t^2) to order 5") {
        JetSeries s = jet_expansion(X, chart, X.element("x2"), 5);
        CHECK(s.poly() == tpoly("1 - 1/2*t1^2 - 1/8*t1^4", 1));
        // independent check: s^2 + t^2 = 1 up to the truncation
        JetSeries t(Polynomial::variable(1, 0), 5);
        CHECK((s * s + t * t).poly() == Polynomial::constant(1, Rational(1)));
    }
    SECTION("constants and parameters are fixed") {
        CHECK(jet_expansion(X, chart, X.constant(Rational(7, 3)), 4).poly() ==
              Polynomial::constant(1, Rational(7, 3)));
        CHECK(jet_expansion(X, chart, X.element("x1"), 4).poly() ==
              Polynomial::variable(1, 0));
    }
    SECTION("multiplicative up to truncation") {
        testutil::Rng rng(79);
        for (int iter = 0; iter < 10; ++iter) {
            QuotientElement f = X.element(rng.polynomial(2, 4, 3));
            QuotientElement g = X.element(rng.polynomial(2, 4, 3));
            JetSeries a = jet_expansion(X, chart, f, 6);
            JetSeries b = jet_expansion(X, chart, g, 6);
            REQUIRE(jet_expansion(X, chart, f * g, 6) == a * b);
        }
    }
    SECTION("ideal generators expand to zero at any order") {
        for (int order : {4, 9}) {
            std::vector<JetSeries> coords = jet_coordinates(X, chart, order);
            for (const Polynomial& f : X.generators())
                REQUIRE(substitute_series(f, coords, order).is_zero());
        }
    }
}

TEST_CASE("jets on a rank-2 system") {
    std::vector<std::string> n3{"x", "y", "z"};
    Variety X(3, {parse_polynomial("y - x^2", n3), parse_polynomial("z - x^3", n3)}, n3);
    LocalChart chart = local_chart(X, pt("1,1,1"));
    REQUIRE(chart.s() == 1);
    std::vector<JetSeries> coords = jet_coordinates(X, chart, 7);
    for (const Polynomial& f : X.generators())
        REQUIRE(substitute_series(f, coords, 7).is_zero());
    JetSeries sx = jet_expansion(X, chart, X.element("x"), 7);
    JetSeries sy = jet_expansion(X, chart, X.element("y"), 7);
    CHECK(sx * sx == sy);
}
