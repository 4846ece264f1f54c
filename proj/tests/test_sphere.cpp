#include <catch2/catch_amalgamated.hpp>

#include <liefield/sphere.hpp>

#include "test_util.hpp"

using namespace liefield;

namespace {

Polynomial P(const std::string& s, int N) {
    return parse_polynomial(s, default_variable_names(N));
}

/// Independent oracle for the projection of a degree-l form f: solve for the
/// degree-(l-2) form u with Laplacian(f - r^2 u ... ) = 0 by exact linear
/// algebra, i.e. find h = f - r^2 u harmonic.
Polynomial projection_oracle(const Polynomial& f) {
    const int N = f.nvars();
    const int ell = *f.degree();
    Polynomial r2(N);
    for (int i = 0; i < N; ++i) r2 += Polynomial::variable(N, i) * Polynomial::variable(N, i);
    std::vector<Monomial> lower = monomials_of_degree(N, ell - 2);
    std::vector<Monomial> target = monomials_of_degree(N, ell - 2); // Laplacian lands here
    QMatrix m(target.size(), lower.size());
    for (size_t j = 0; j < lower.size(); ++j) {
        Polynomial im = laplacian(r2 * Polynomial::from_monomial(lower[j], Rational(1)));
        std::vector<Rational> col = coefficient_vector(im, target);
        for (size_t i = 0; i < target.size(); ++i) m(i, j) = col[i];
    }
    std::vector<Rational> rhs = coefficient_vector(laplacian(f), target);
    auto sol = m.solve(rhs);
    REQUIRE(sol.has_value());
    Polynomial u(N);
    for (size_t j = 0; j < lower.size(); ++j)
        if (!(*sol)[j].is_zero()) u += Polynomial::from_monomial(lower[j], (*sol)[j]);
    return f - r2 * u;
}

} // namespace

TEST_CASE("delta fields") {
    SECTION("N = 2 definition and antisymmetry") {
        SphereContext ctx(2);
        VectorField d = delta_field(ctx, 0, 1);
        CHECK(d.components()[0] == P("x2", 2));
        CHECK(d.components()[1] == P("-x1", 2));
        CHECK((delta_field(ctx, 0, 1) + delta_field(ctx, 1, 0)).is_zero());
        CHECK_THROWS_AS(delta_field(ctx, 1, 1), std::invalid_argument);
    }
    SECTION("3-term relation for all triples, N <= 5") {
        for (int N = 3; N <= 5; ++N) {
            SphereContext ctx(N);
            for (int a = 0; a < N; ++a)
                for (int b = 0; b < N; ++b)
                    for (int c = 0; c < N; ++c) {
                        if (a == b || b == c || a == c) continue;
                        VectorField acc = ctx.X.coordinate(c) * delta_field(ctx, a, b) +
                                          ctx.X.coordinate(a) * delta_field(ctx, b, c) +
                                          ctx.X.coordinate(b) * delta_field(ctx, c, a);
                        REQUIRE(acc.is_zero());
                    }
        }
    }
    SECTION("tangency for N <= 5") {
        for (int N = 2; N <= 5; ++N) {
            SphereContext ctx(N);
            for (int a = 0; a < N; ++a)
                for (int b = a + 1; b < N; ++b)
                    REQUIRE(VectorField::is_tangent(ctx.X, detail::delta_raw(N, a, b)));
        }
    }
}

TEST_CASE("sl embedding") {
    SECTION("N = 2: E12 expands per the defining display") {
        SphereContext ctx(2);
        VectorField f = sl_embedding(ctx, SlElement::E(0, 1));
        // sum_p x2 x_p Delta_1p = x2^2 Delta12
        CHECK(f.components()[0] == P("x2^3", 2));
        CHECK(f.components()[1] == P("-x1*x2^2", 2));
    }
    SECTION("so_N consistency: tau(E_ab) - tau(E_ba) = Delta_ab") {
        for (int N : {2, 3}) {
            SphereContext ctx(N);
            for (int a = 0; a < N; ++a)
                for (int b = 0; b < N; ++b) {
                    if (a == b) continue;
                    VectorField lhs = sl_embedding(ctx, SlElement::E(a, b)) -
                                      sl_embedding(ctx, SlElement::E(b, a));
                    REQUIRE(lhs == delta_field(ctx, a, b));
                }
        }
    }
    SECTION("full sl_3 multiplication table (action-side bracket)") {
        SphereContext ctx(3);
        std::vector<SlElement> basis = sl_basis(3);
        for (const SlElement& x : basis) {
            for (const SlElement& y : basis) {
                QMatrix mx = x.matrix(3), my = y.matrix(3);
                // fundamental fields of the left action reverse orientation
                VectorField lhs = lie_bracket(sl_embedding(ctx, mx), sl_embedding(ctx, my));
                VectorField rhs = sl_embedding(ctx, matrix_commutator(my, mx));
                REQUIRE(lhs == rhs);
            }
        }
    }
    SECTION("all embedded fields are tangent") {
        SphereContext ctx(3);
        for (const SlElement& x : sl_basis(3))
            REQUIRE(VectorField::is_tangent(ctx.X, sl_embedding_raw(3, x.matrix(3))));
    }
}

TEST_CASE("laplacian basics") {
    CHECK(laplacian(P("x1^2", 3)) == Polynomial::constant(3, Rational(2)));
    CHECK(laplacian(P("x1*x2", 3)).is_zero());
    for (int N : {3, 4}) {
        Polynomial r2(N);
        for (int i = 0; i < N; ++i) r2 += Polynomial::variable(N, i) * Polynomial::variable(N, i);
        CHECK(laplacian(r2) == Polynomial::constant(N, Rational(2 * N)));
    }
}

TEST_CASE("harmonic projection") {
    SECTION("identity on harmonics") {
        CHECK(harmonic_project(P("x1*x2", 3)) == P("x1*x2", 3));
        CHECK(harmonic_project(P("x1^3 - 3*x1*x2^2", 3)) == P("x1^3 - 3*x1*x2^2", 3));
    }
    SECTION("x1^2 projects to x1^2 - r^2/3 (against the solver oracle)") {
        Polynomial f = P("x1^2", 3);
        Polynomial expect = P("x1^2 - 1/3*x1^2 - 1/3*x2^2 - 1/3*x3^2", 3);
        CHECK(harmonic_project(f) == expect);
        CHECK(projection_oracle(f) == expect);
    }
    SECTION("projection matches the oracle on random forms") {
        testutil::Rng rng(101);
        for (int N : {3, 4}) {
            for (int ell : {2, 3, 4, 5}) {
                for (int iter = 0; iter < 4; ++iter) {
                    Polynomial f(N);
                    for (const Monomial& m : monomials_of_degree(N, ell))
                        if (rng.uniform(0, 2) == 0)
                            f += Polynomial::from_monomial(m, rng.rational());
                    if (f.is_zero()) continue;
                    Polynomial proj = harmonic_project(f);
                    REQUIRE(laplacian(proj).is_zero());
                    REQUIRE(proj == projection_oracle(f));
                }
            }
        }
    }
    SECTION("idempotence for l <= 6") {
        testutil::Rng rng(103);
        for (int ell = 0; ell <= 6; ++ell) {
            Polynomial f(3);
            for (const Monomial& m : monomials_of_degree(3, ell))
                f += Polynomial::from_monomial(m, rng.rational());
            Polynomial once = harmonic_project(f);
            REQUIRE(laplacian(once).is_zero());
            REQUIRE(harmonic_project(once) == once);
        }
    }
    SECTION("input validation") {
        CHECK_THROWS_AS(harmonic_project(P("x1^2 + x2", 3)), std::invalid_argument);
        CHECK_THROWS_AS(harmonic_project(P("x1^2", 2)), std::invalid_argument);
    }
}

TEST_CASE("harmonic decomposition") {
    SECTION("r^2 peels to h2 = 0, h0 = 1") {
        HarmonicDecomposition d = harmonic_decompose(P("x1^2 + x2^2 + x3^2", 3));
        REQUIRE(d.components.size() == 2);
        CHECK(d.components[0].is_zero());
        CHECK(d.components[1] == Polynomial::constant(3, Rational(1)));
    }
    SECTION("x1^2 peels to (x1^2 - r^2/3, 1/3)") {
        HarmonicDecomposition d = harmonic_decompose(P("x1^2", 3));
        REQUIRE(d.components.size() == 2);
        CHECK(d.components[0] == P("x1^2 - 1/3*x1^2 - 1/3*x2^2 - 1/3*x3^2", 3));
        CHECK(d.components[1] == Polynomial::constant(3, Rational(1, 3)));
    }
    SECTION("harmonic input stays put") {
        HarmonicDecomposition d = harmonic_decompose(P("x1*x2*x3", 3));
        REQUIRE(d.components.size() == 1);
        CHECK(d.components[0] == P("x1*x2*x3", 3));
    }
    SECTION("reassembly is exact on random forms") {
        testutil::Rng rng(107);
        for (int N : {3, 4}) {
            for (int ell = 0; ell <= 6; ++ell) {
                Polynomial f(N);
                for (const Monomial& m : monomials_of_degree(N, ell))
                    f += Polynomial::from_monomial(m, rng.rational());
                HarmonicDecomposition d = harmonic_decompose(f);
                for (const Polynomial& h : d.components) REQUIRE(laplacian(h).is_zero());
                REQUIRE(reassemble(d, N) == f);
            }
        }
    }
}

TEST_CASE("harmonic dimensions match the kernel computation") {
    for (int N : {3, 4}) {
        for (int ell = 0; ell <= 6; ++ell) {
            Integer expect = harmonic_dimension(N, ell);
            Integer got(static_cast<long>(harmonic_space_basis(N, ell).size()));
            REQUIRE(got == expect);
        }
    }
    CHECK(harmonic_dimension(3, 2) == Integer(5));
    CHECK(harmonic_dimension(4, 3) == Integer(16));
}

TEST_CASE("spread lemma") {
    SphereContext ctx(3);
    SECTION("constants are killed") {
        SpreadResult r = spread_check(ctx, Polynomial::constant(3, Rational(1)),
                                      SlElement::E(0, 1));
        CHECK(r.up.is_zero());
        CHECK(r.mid.is_zero());
        CHECK(r.down.is_zero());
    }
    SECTION("x1*x2 spreads without components below H_0") {
        Polynomial h = P("x1*x2", 3);
        CHECK_NOTHROW(spread_check(ctx, h, SlElement::E(0, 1)));
    }
    SECTION("Laplacian^3 g = 0 on random harmonics, l <= 6, N <= 4") {
        testutil::Rng rng(109);
        for (int N : {3, 4}) {
            SphereContext c(N);
            for (int ell = 1; ell <= 6; ++ell) {
                std::vector<Polynomial> basis = harmonic_space_basis(N, ell);
                Polynomial h(N);
                for (const Polynomial& b : basis)
                    h += rng.rational() * b;
                if (h.is_zero()) continue;
                for (const SlElement& e : {SlElement::E(0, 1), SlElement::H(0, 1)}) {
                    Polynomial g = sl_apply_raw(N, e.matrix(N), h);
                    REQUIRE(laplacian(laplacian(laplacian(g))).is_zero());
                    REQUIRE_NOTHROW(spread_check(c, h, e));
                }
            }
        }
    }
    SECTION("non-harmonic input rejected") {
        CHECK_THROWS_AS(spread_check(ctx, P("x1^2", 3), SlElement::E(0, 1)),
                        std::invalid_argument);
    }
}

TEST_CASE("generation checks") {
    SphereContext ctx(3);
    SECTION("up from l = 1..4") {
        for (int ell = 1; ell <= 4; ++ell) REQUIRE(generation_check(ctx, ell, SpreadDirection::up));
    }
    SECTION("down from l = 2..4") {
        for (int ell = 2; ell <= 4; ++ell)
            REQUIRE(generation_check(ctx, ell, SpreadDirection::down));
    }
    SECTION("constants are the proper submodule: up from l = 0 fails") {
        CHECK(!generation_check(ctx, 0, SpreadDirection::up));
    }
    SECTION("bad arguments") {
        CHECK_THROWS_AS(generation_check(ctx, 1, SpreadDirection::down), std::invalid_argument);
    }
}
