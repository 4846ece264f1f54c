#include <catch2/catch_amalgamated.hpp>

#include <liefield/variety.hpp>

#include "test_util.hpp"

using namespace liefield;

namespace {

const std::vector<std::string> v2{"x1", "x2"};
const std::vector<std::string> xy{"x", "y"};
const std::vector<std::string> v3{"x1", "x2", "x3"};

Variety circle() { return Variety(2, {parse_polynomial("x1^2 + x2^2 - 1", v2)}, v2); }
Variety cusp() { return Variety(2, {parse_polynomial("y^2 - 2*x^3", xy)}, xy); }
Variety node() { return Variety(2, {parse_polynomial("y^2 - 2*x^3 - 2*x^2", xy)}, xy); }
Variety sphere3() {
    return Variety(3, {parse_polynomial("x1^2 + x2^2 + x3^2 - 1", v3)}, v3);
}
Variety twisted_cubic() {
    std::vector<std::string> n{"x", "y", "z"};
    return Variety(3, {parse_polynomial("y - x^2", n), parse_polynomial("z - x^3", n)}, n);
}

std::vector<Rational> pt(const std::string& s) { return parse_point(s); }

} // namespace

TEST_CASE("construction guards") {
    CHECK_THROWS_AS(Variety(2, {Polynomial::zero(2)}), std::invalid_argument);
    CHECK_THROWS_AS(Variety(2, {Polynomial::constant(2, Rational(1))}), std::invalid_argument);
    // V(x1, x1 - 1) is empty: 1 lies in the ideal
    CHECK_THROWS_AS(Variety(2, {parse_polynomial("x1", v2), parse_polynomial("x1 - 1", v2)}),
                    std::invalid_argument);
    CHECK_NOTHROW(Variety::affine_space(3));
}

TEST_CASE("quotient normal forms") {
    Variety X = circle();
    CHECK(X.element("x1^2 + x2^2") == X.one());
    CHECK(X.element("0").is_zero());

    // the curve in the paper's k[x] + y k[x] shape: lex with y first
    std::vector<std::string> yx{"y", "x"};
    Variety C(2, {parse_polynomial("y^2 - 2*(x^3 + 1)", yx)}, yx, true, lex_order());
    CHECK(C.element("y^2").rep() == parse_polynomial("2*x^3 + 2", yx));
}

TEST_CASE("quotient arithmetic is a homomorphism image") {
    Variety X = circle();
    testutil::Rng rng(71);
    for (int iter = 0; iter < 25; ++iter) {
        Polynomial p = rng.polynomial(2, 6, 5), q = rng.polynomial(2, 6, 5);
        REQUIRE(X.element(p + q) == X.element(p) + X.element(q));
        REQUIRE(X.element(p * q) == X.element(p) * X.element(q));
    }
    CHECK_THROWS_AS(X.element("x1") + sphere3().element("x1"), std::invalid_argument);
}

TEST_CASE("jacobian") {
    Variety X = circle();
    const auto& J = X.jacobian();
    REQUIRE(J.size() == 1);
    CHECK(J[0][0] == parse_polynomial("2*x1", v2));
    CHECK(J[0][1] == parse_polynomial("2*x2", v2));

    Variety S = sphere3();
    CHECK(S.jacobian()[0][2] == parse_polynomial("2*x3", v3));

    Variety C = cusp();
    CHECK(C.jacobian()[0][0] == parse_polynomial("-6*x^2", xy));
    CHECK(C.jacobian()[0][1] == parse_polynomial("2*y", xy));
}

TEST_CASE("jacobian rank and dimension") {
    CHECK(circle().jacobian_rank() == 1);
    CHECK(circle().dimension() == 1);
    CHECK(cusp().jacobian_rank() == 1);
    CHECK(sphere3().jacobian_rank() == 1);
    CHECK(sphere3().dimension() == 2);
    CHECK(twisted_cubic().jacobian_rank() == 2);
    CHECK(twisted_cubic().dimension() == 1);
    CHECK(Variety::affine_space(3).jacobian_rank() == 0);
    CHECK(Variety::affine_space(3).dimension() == 3);
}

TEST_CASE("rank dominates the numeric rank at sampled points") {
    for (const Variety& X : {circle(), cusp(), twisted_cubic()}) {
        int r = X.jacobian_rank();
        bool attained = false;
        std::vector<std::vector<Rational>> samples;
        if (X.n() == 2) samples = {pt("0,0"), pt("1,2"), pt("2,4"), pt("0,1"), pt("1,0")};
        else samples = {pt("0,0,0"), pt("1,1,1"), pt("2,4,8")};
        for (const auto& P : samples) {
            if (!X.contains(P)) continue;
            size_t nr = X.jacobian_at(P).rank();
            REQUIRE(static_cast<int>(nr) <= r);
            if (static_cast<int>(nr) == r) attained = true;
        }
        REQUIRE(attained);
    }
}

TEST_CASE("singular ideal") {
    {
        std::vector<QuotientElement> s = circle().singular_ideal();
        REQUIRE(s.size() == 2);
        CHECK(s[0].rep() == parse_polynomial("2*x1", v2));
        CHECK(s[1].rep() == parse_polynomial("2*x2", v2));
    }
    {
        std::vector<QuotientElement> s = cusp().singular_ideal();
        REQUIRE(s.size() == 2);
        CHECK(s[0].rep() == parse_polynomial("-6*x^2", xy));
        CHECK(s[1].rep() == parse_polynomial("2*y", xy));
    }
    {
        std::vector<QuotientElement> s = sphere3().singular_ideal();
        REQUIRE(s.size() == 3);
        CHECK(s[2].rep() == parse_polynomial("2*x3", v3));
    }
}

TEST_CASE("smoothness certificates") {
    SECTION("circle: certificate expands to exactly 1") {
        Variety X = circle();
        const SmoothnessCertificate& c = X.is_smooth();
        REQUIRE(c.smooth);
        Polynomial acc(2);
        for (size_t i = 0; i < c.combined.size(); ++i) acc += c.cofactors[i] * c.combined[i];
        CHECK(acc == Polynomial::constant(2, Rational(1)));
    }
    SECTION("cusp and node are singular") {
        CHECK(!cusp().is_smooth().smooth);
        CHECK(!node().is_smooth().smooth);
    }
    SECTION("sphere is smooth") {
        Variety S = sphere3();
        const SmoothnessCertificate& c = S.is_smooth();
        REQUIRE(c.smooth);
        Polynomial acc(3);
        for (size_t i = 0; i < c.combined.size(); ++i) acc += c.cofactors[i] * c.combined[i];
        CHECK(acc == Polynomial::constant(3, Rational(1)));
    }
    SECTION("twisted cubic is smooth") {
        CHECK(twisted_cubic().is_smooth().smooth);
    }
}

TEST_CASE("point-level singularity test") {
    CHECK(!circle().is_singular_point(pt("0,1")));
    CHECK(cusp().is_singular_point(pt("0,0")));
    CHECK(!cusp().is_singular_point(pt("2,4"))); // 2*8 = 16 = 4^2
    CHECK_THROWS_AS(circle().is_singular_point(pt("1,1")), std::invalid_argument);
    CHECK(node().is_singular_point(pt("0,0")));
}

TEST_CASE("variety input file") {
    Variety X = parse_variety_file("# unit circle\nvars: x1 x2\nx1^2 + x2^2 - 1\n");
    CHECK(X.n() == 2);
    CHECK(X.generators().size() == 1);
    CHECK(X.names()[1] == "x2");
    CHECK_THROWS_AS(parse_variety_file("x^2\nvars: x\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_variety_file("# nothing\n"), std::invalid_argument);
}
