#include <catch2/catch_amalgamated.hpp>

#include <liefield/witness.hpp>

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

std::vector<Rational> pt(const std::string& s) { return parse_point(s); }

} // namespace

TEST_CASE("ample witness on the circle") {
    Variety X = circle();
    VectorField d12(X, "x2, -x1");
    SECTION("vanishing seed needs one bracket") {
        VectorField seed = X.element("x1") * d12;
        AmpleWitness w = ample_witness(X, pt("0,1"), seed);
        REQUIRE(w.found);
        CHECK(*w.mu == VectorField(X, "2*x2^2, -2*x1*x2"));        // 2 x2 Delta12
        CHECK(w.f->rep() == parse_polynomial("x1", v2));
        CHECK(w.value == Rational(2));
        CHECK(evaluate_witness(w.chain, seed) == *w.mu);           // chain replays
    }
    SECTION("nonvanishing seed needs zero brackets") {
        AmpleWitness w = ample_witness(X, pt("0,1"), d12);
        REQUIRE(w.found);
        CHECK(*w.mu == d12);
        CHECK(w.value == Rational(1));
        CHECK(w.chain.op == WitnessExpr::Op::seed);
    }
    SECTION("zero seed is rejected") {
        CHECK_THROWS_AS(ample_witness(X, pt("0,1"), Rational(0) * d12), std::invalid_argument);
    }
}

TEST_CASE("ample witness on the sphere") {
    Variety S = sphere3();
    VectorField d12(S, "x2, -x1, 0");
    VectorField seed = S.element("x1") * d12;
    AmpleWitness w = ample_witness(S, pt("0,0,1"), seed);
    REQUIRE(w.found);
    CHECK(!w.mu->apply(*w.f).evaluate(pt("0,0,1")).is_zero());
    CHECK(evaluate_witness(w.chain, seed) == *w.mu);
}

TEST_CASE("nonzero second derivative") {
    SECTION("d/dx needs the square") {
        Variety W = Variety::affine_space(1, {"x"});
        VectorField ddx(W, "1");
        SecondDerivativeWitness w = nonzero_second_derivative(ddx);
        CHECK(w.f.rep() == parse_polynomial("x", {"x"}));
        CHECK(w.g.rep() == parse_polynomial("x^2", {"x"}));
        CHECK(w.mu_mu_g.rep() == Polynomial::constant(1, Rational(2)));
    }
    SECTION("Euler field keeps g = f") {
        Variety W = Variety::affine_space(1, {"x"});
        VectorField xdx(W, "x");
        SecondDerivativeWitness w = nonzero_second_derivative(xdx);
        CHECK(w.g.rep() == parse_polynomial("x", {"x"}));
        CHECK(w.mu_mu_g.rep() == parse_polynomial("x", {"x"}));
    }
    SECTION("rotation field on the circle") {
        Variety X = circle();
        VectorField d12(X, "x2, -x1");
        SecondDerivativeWitness w = nonzero_second_derivative(d12);
        CHECK(w.g.rep() == parse_polynomial("x1", v2));
        CHECK(w.mu_mu_g.rep() == parse_polynomial("-x1", v2));
    }
    SECTION("zero field rejected") {
        Variety X = circle();
        CHECK_THROWS_AS(nonzero_second_derivative(Rational(0) * VectorField(X, "x2, -x1")),
                        std::invalid_argument);
    }
}

TEST_CASE("bracket-absorption witness identity") {
    SECTION("W_1 example with q = 2") {
        Variety W = Variety::affine_space(1, {"x"});
        VectorField mu(W, "1"), tau(W, "x^2");
        QuotientElement f = W.element("x"), g = W.element("x^2"), p = W.one();
        BracketWitness w = simplicity_witness(mu, tau, f, g, p);
        CHECK(w.q.rep() == Polynomial::constant(1, Rational(2)));
        CHECK(w.product == VectorField(W, "2*x^2"));
    }
    SECTION("p = 0 collapses both sides") {
        Variety W = Variety::affine_space(1, {"x"});
        VectorField mu(W, "1"), tau(W, "x^2");
        BracketWitness w = simplicity_witness(mu, tau, W.element("x"), W.element("x^2"),
                                              W.zero());
        CHECK(w.product.is_zero());
        CHECK(w.q.is_zero());
    }
    SECTION("holds in the circle quotient") {
        Variety X = circle();
        VectorField mu(X, "x2, -x1");
        VectorField tau = X.element("x1") * mu;
        QuotientElement f = X.element("x1");
        CHECK_NOTHROW(simplicity_witness(mu, tau, f, f, X.one()));
    }
    SECTION("randomized instances") {
        testutil::Rng rng(97);
        Variety W = Variety::affine_space(2, v2);
        for (int iter = 0; iter < 40; ++iter) {
            VectorField mu(W, {rng.polynomial(2, 3, 2), rng.polynomial(2, 3, 2)}, false);
            VectorField tau(W, {rng.polynomial(2, 3, 2), rng.polynomial(2, 3, 2)}, false);
            REQUIRE_NOTHROW(simplicity_witness(mu, tau, W.element(rng.polynomial(2, 3, 2)),
                                               W.element(rng.polynomial(2, 3, 2)),
                                               W.element(rng.polynomial(2, 2, 2))));
        }
    }
}

TEST_CASE("global one-certificate on the circle") {
    Variety X = circle();
    VectorField seed = X.element("x1") * VectorField(X, "x2, -x1");
    GlobalOneCertificate cert =
        global_one_certificate(X, seed, {pt("0,1"), pt("1,0"), pt("0,-1")});
    REQUIRE(cert.found);
    Polynomial acc(2);
    for (size_t i = 0; i < cert.combined.size(); ++i) acc += cert.cofactors[i] * cert.combined[i];
    CHECK(acc == Polynomial::constant(2, Rational(1)));
    CHECK(cert.uncovered_coordinates.empty());

    SECTION("automatic fallback samples work too") {
        GlobalOneCertificate auto_cert = global_one_certificate(X, seed, {});
        CHECK(auto_cert.found);
    }
}

TEST_CASE("global one-certificate fails on the cusp") {
    Variety C = cusp();
    VectorField euler(C, "2*x, 3*y");
    GlobalOneCertificate cert =
        global_one_certificate(C, euler, {pt("2,4"), pt("1/2,1/2"), pt("8,32")});
    REQUIRE(!cert.found);
    // the uncovered locus is the origin: both coordinates vanish on it
    CHECK(cert.uncovered_coordinates == std::vector<int>{0, 1});
}

TEST_CASE("singular-locus invariance") {
    CHECK(singular_invariance_check(cusp()));
    CHECK(singular_invariance_check(node()));
    CHECK(singular_invariance_check(circle())); // unit ideal, vacuous
    SECTION("hand values on the cusp") {
        Variety C = cusp();
        VectorField euler(C, "2*x, 3*y");
        std::vector<Polynomial> combined{parse_polynomial("-6*x^2", xy),
                                         parse_polynomial("2*y", xy), C.generators()[0]};
        CHECK(ideal_membership(euler.apply_raw(parse_polynomial("x^2", xy)), combined).member);
        CHECK(ideal_membership(euler.apply_raw(parse_polynomial("y", xy)), combined).member);
    }
}

TEST_CASE("filtration membership") {
    Variety C = cusp();
    VectorField euler(C, "2*x, 3*y");
    VectorField x2euler = C.element("x^2") * euler;
    CHECK(!x2euler.is_zero());
    CHECK(filtration_membership(C, x2euler, 1));
    CHECK(!filtration_membership(C, euler, 2)); // eta(y) = 3y is not in I_sing^2
    CHECK(filtration_membership(C, C.element("x^4") * euler, 2));

    Variety X = circle();
    CHECK(filtration_membership(X, VectorField(X, "x2, -x1"), 3)); // I_sing = (1)
    CHECK_THROWS_AS(filtration_membership(C, euler, 0), std::invalid_argument);
}

TEST_CASE("function-module witness search") {
    Variety X = circle();
    SECTION("nonvanishing input returns immediately") {
        FunctionModuleWitness w = function_module_witness(X, X.element("x1"), pt("1,0"));
        REQUIRE(w.found);
        CHECK(w.word.empty());
        CHECK(w.f->rep() == parse_polynomial("x1", v2));
    }
    SECTION("two applications reach a unit at P") {
        FunctionModuleWitness w = function_module_witness(X, X.element("x1 - 1"), pt("1,0"));
        REQUIRE(w.found);
        CHECK(w.word.size() == 2);
        CHECK(w.f->evaluate(pt("1,0")) == Rational(-1));
    }
    SECTION("sphere: g itself works") {
        Variety S = sphere3();
        FunctionModuleWitness w = function_module_witness(S, S.element("x3"), pt("0,0,1"));
        REQUIRE(w.found);
        CHECK(w.word.empty());
    }
    SECTION("constants are rejected") {
        CHECK_THROWS_AS(function_module_witness(X, X.one(), pt("1,0")), std::invalid_argument);
    }
}
