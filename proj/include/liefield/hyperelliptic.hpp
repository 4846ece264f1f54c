#pragma once

#include <optional>
#include <string>
#include <vector>

#include "linalg.hpp"
#include "vector_field.hpp"

namespace liefield {

namespace detail {

/// Remainder of univariate division (a single generator is a Groebner basis).
inline Polynomial upoly_rem(const Polynomial& a, const Polynomial& b) {
    std::vector<FreeModuleVector> basis{FreeModuleVector({b})};
    return module_divide(FreeModuleVector({a}), basis, grevlex_order()).remainder[0];
}

} // namespace detail

/// Monic univariate gcd over Q by the Euclidean algorithm.
inline Polynomial univariate_gcd(Polynomial a, Polynomial b) {
    if (a.nvars() != 1 || b.nvars() != 1)
        throw std::invalid_argument("univariate_gcd: univariate inputs required");
    while (!b.is_zero()) {
        Polynomial r = detail::upoly_rem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (a.is_zero()) return a;
    return a.leading_term(grevlex_order()).coef.inverse() * a;
}

/// The curve y^2 = 2 h(x) for monic h of odd degree 2m+1 >= 3.
struct HyperellipticCurve {
    Polynomial h;   // univariate in x
    Polynomial hp;  // h'
    int m;

    explicit HyperellipticCurve(Polynomial h_) : h(std::move(h_)), hp(1), m(0) {
        if (h.nvars() != 1) throw std::invalid_argument("HyperellipticCurve: h must be univariate");
        auto d = h.degree();
        if (!d || *d < 3 || *d % 2 == 0)
            throw std::invalid_argument("HyperellipticCurve: h must have odd degree >= 3");
        if (!h.leading_term(grevlex_order()).coef.is_one())
            throw std::invalid_argument("HyperellipticCurve: h must be monic");
        m = (*d - 1) / 2;
        hp = h.partial_derivative(0);
    }

    /// gcd(h, h'); the curve is smooth iff this is 1.
    Polynomial smoothness_gcd() const { return univariate_gcd(h, hp); }
    bool is_smooth() const {
        Polynomial d = smoothness_gcd();
        return d.is_constant() && !d.is_zero();
    }

    /// The ambient variety V(y^2 - 2h(x)) in k[x,y].
    Variety variety() const {
        Polynomial y = Polynomial::variable(2, 1);
        return Variety(2, {y * y - Rational(2) * embed_x(h)}, {"x", "y"});
    }

    /// Lifts a univariate polynomial in x into k[x,y].
    static Polynomial embed_x(const Polynomial& u) {
        Polynomial out(2);
        for (const Term& t : u.terms())
            out += Polynomial::from_monomial(Monomial::var(2, 0, t.mono.exponent(0)), t.coef);
        return out;
    }
};

/// Element p(x) + y q(x) of A = k[x] + y k[x]; the canonical representation
/// with y-degree < 2 (y^2 reduced to 2h).
struct HEElement {
    Polynomial p;
    Polynomial q;

    HEElement() : p(1), q(1) {}
    HEElement(Polynomial p_, Polynomial q_) : p(std::move(p_)), q(std::move(q_)) {
        if (p.nvars() != 1 || q.nvars() != 1)
            throw std::invalid_argument("HEElement: univariate parts required");
    }

    static HEElement zero() { return HEElement(); }
    static HEElement of_x(const Polynomial& u) { return HEElement(u, Polynomial::zero(1)); }
    static HEElement x_power(int k) {
        return of_x(Polynomial::from_monomial(Monomial::var(1, 0, k), Rational(1)));
    }
    static HEElement y_times(const Polynomial& u) { return HEElement(Polynomial::zero(1), u); }

    bool is_zero() const { return p.is_zero() && q.is_zero(); }

    friend HEElement operator+(const HEElement& a, const HEElement& b) {
        return HEElement(a.p + b.p, a.q + b.q);
    }
    friend HEElement operator-(const HEElement& a, const HEElement& b) {
        return HEElement(a.p - b.p, a.q - b.q);
    }
    friend HEElement operator*(const Rational& c, const HEElement& a) {
        return HEElement(c * a.p, c * a.q);
    }
    friend bool operator==(const HEElement& a, const HEElement& b) {
        return a.p == b.p && a.q == b.q;
    }
    friend bool operator!=(const HEElement& a, const HEElement& b) { return !(a == b); }

    /// The representative p(x) + y q(x) in k[x,y].
    Polynomial to_xy() const {
        Polynomial out = HyperellipticCurve::embed_x(p);
        Polynomial y = Polynomial::variable(2, 1);
        return out + y * HyperellipticCurve::embed_x(q);
    }
};

/// (p1 + y q1)(p2 + y q2) with y^2 -> 2h.
inline HEElement he_multiply(const HEElement& a, const HEElement& b,
                             const HyperellipticCurve& C) {
    Polynomial two_h = Rational(2) * C.h;
    return HEElement(a.p * b.p + two_h * (a.q * b.q), a.p * b.q + a.q * b.p);
}

/// Canonical form of an arbitrary element of k[x,y]: reduce y-degree by
/// y^2 -> 2h(x) term by term.
inline HEElement he_of_xy(const Polynomial& f, const HyperellipticCurve& C) {
    Polynomial two_h = Rational(2) * C.h;
    Polynomial p(1), q(1);
    std::vector<Polynomial> two_h_pows{Polynomial::constant(1, Rational(1))};
    auto pow2h = [&](int k) -> const Polynomial& {
        while (static_cast<int>(two_h_pows.size()) <= k)
            two_h_pows.push_back(two_h_pows.back() * two_h);
        return two_h_pows[static_cast<size_t>(k)];
    };
    for (const Term& t : f.terms()) {
        int a = t.mono.exponent(0), b = t.mono.exponent(1);
        Polynomial xa = Polynomial::from_monomial(Monomial::var(1, 0, a), t.coef);
        if (b % 2 == 0)
            p += xa * pow2h(b / 2);
        else
            q += xa * pow2h((b - 1) / 2);
    }
    return HEElement(std::move(p), std::move(q));
}

/// deg(x^k) = 2k, deg(x^k y) = 2k + 2m + 1; nullopt for zero.
inline std::optional<int> he_degree(const HEElement& u, const HyperellipticCurve& C) {
    std::optional<int> d;
    if (auto dp = u.p.degree()) d = 2 * *dp;
    if (auto dq = u.q.degree()) {
        int v = 2 * *dq + 2 * C.m + 1;
        if (!d || v > *d) d = v;
    }
    return d;
}

/// Element of gr A realized in k[t]: support must lie in the numerical
/// semigroup <2, 2m+1> (even exponents, or odd exponents >= 2m+1).
struct GradedSeriesElement {
    Polynomial value; // univariate in t

    GradedSeriesElement(Polynomial v, int m) : value(std::move(v)) {
        for (const Term& t : value.terms()) {
            int e = t.mono.exponent(0);
            if (e % 2 != 0 && e < 2 * m + 1)
                throw std::invalid_argument("GradedSeriesElement: exponent outside <2, 2m+1>");
        }
    }

    friend bool operator==(const GradedSeriesElement& a, const GradedSeriesElement& b) {
        return a.value == b.value;
    }
};

/// Multiplicative leading-term map LT: A -> gr A in k[t], via
/// psi(x) = 2 t^2, psi(y) = 2^{m+1} t^{2m+1}.
inline GradedSeriesElement leading_term_map(const HEElement& u, const HyperellipticCurve& C) {
    if (u.is_zero()) throw std::invalid_argument("leading_term_map: zero element");
    std::optional<int> dp, dq;
    if (auto d = u.p.degree()) dp = 2 * *d;
    if (auto d = u.q.degree()) dq = 2 * *d + 2 * C.m + 1;
    bool use_q = dq && (!dp || *dq > *dp); // parities differ, never a tie
    Rational two_k(1);
    int deg_t;
    Rational coef;
    if (use_q) {
        int k = *u.q.degree();
        coef = u.q.leading_term(grevlex_order()).coef;
        two_k = Rational(2).pow(static_cast<unsigned>(k)) *
                Rational(2).pow(static_cast<unsigned>(C.m + 1));
        deg_t = 2 * k + 2 * C.m + 1;
    } else {
        int k = *u.p.degree();
        coef = u.p.leading_term(grevlex_order()).coef;
        two_k = Rational(2).pow(static_cast<unsigned>(k));
        deg_t = 2 * k;
    }
    return GradedSeriesElement(
        Polynomial::from_monomial(Monomial::var(1, 0, deg_t), coef * two_k), C.m);
}

/// tau = y d/dx + h'(x) d/dy acting on p + y q:
/// tau(p + yq) = (2 h q' + h' q) + y p'.
inline HEElement tau_apply(const HEElement& u, const HyperellipticCurve& C) {
    Polynomial pp = u.p.partial_derivative(0);
    Polynomial qp = u.q.partial_derivative(0);
    return HEElement(Rational(2) * C.h * qp + C.hp * u.q, pp);
}

/// Module generators of D: tau always; in the singular case additionally
/// mu = 2 (h/d) d/dx + y (h'/d) d/dy, with the relation y tau = d mu
/// verified symbolically.
struct CurveGenerators {
    VectorField tau;
    std::optional<VectorField> mu;
    Polynomial d; // smoothness gcd
};

inline CurveGenerators module_generators(const HyperellipticCurve& C, const Variety& X) {
    Polynomial y = Polynomial::variable(2, 1);
    VectorField tau(X, {HyperellipticCurve::embed_x(Polynomial::zero(1)) + y,
                        HyperellipticCurve::embed_x(C.hp)});
    Polynomial d = C.smoothness_gcd();
    CurveGenerators out{tau, std::nullopt, d};
    if (!(d.is_constant() && !d.is_zero())) {
        Polynomial h_over_d = detail::poly_exact_divide(C.h, d);
        Polynomial hp_over_d = detail::poly_exact_divide(C.hp, d);
        VectorField mu(X, {Rational(2) * HyperellipticCurve::embed_x(h_over_d),
                           y * HyperellipticCurve::embed_x(hp_over_d)});
        VectorField lhs = X.element(y) * tau;
        VectorField rhs = X.element(HyperellipticCurve::embed_x(d)) * mu;
        if (lhs != rhs) throw std::logic_error("module_generators: y tau != d mu");
        out.mu = std::move(mu);
    }
    return out;
}

inline CurveGenerators module_generators(const HyperellipticCurve& C) {
    return module_generators(C, C.variety());
}

// ---------------------------------------------------------------------------
// Bounded-degree structure checks (smooth case, D = A tau)
// ---------------------------------------------------------------------------

/// [f tau, g tau] = (f tau(g) - g tau(f)) tau; this returns the coefficient.
inline HEElement bracket_coefficient(const HEElement& f, const HEElement& g,
                                     const HyperellipticCurve& C) {
    return he_multiply(f, tau_apply(g, C), C) - he_multiply(g, tau_apply(f, C), C);
}

/// Monomial elements of A with degree <= bound, ascending degree.
inline std::vector<HEElement> he_monomials_up_to(const HyperellipticCurve& C, int bound) {
    std::vector<std::pair<int, HEElement>> items;
    for (int k = 0; 2 * k <= bound; ++k) items.push_back({2 * k, HEElement::x_power(k)});
    for (int k = 0; 2 * k + 2 * C.m + 1 <= bound; ++k)
        items.push_back({2 * k + 2 * C.m + 1,
                         HEElement::y_times(Polynomial::from_monomial(
                             Monomial::var(1, 0, k), Rational(1)))});
    std::sort(items.begin(), items.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<HEElement> out;
    for (auto& [d, e] : items) out.push_back(std::move(e));
    return out;
}

inline std::vector<Rational> he_coefficient_vector(const HEElement& u,
                                                   const std::vector<Monomial>& p_basis,
                                                   const std::vector<Monomial>& q_basis) {
    std::vector<Rational> v;
    v.reserve(p_basis.size() + q_basis.size());
    for (const Monomial& m : p_basis) v.push_back(u.p.coefficient(m));
    for (const Monomial& m : q_basis) v.push_back(u.q.coefficient(m));
    return v;
}

/// Basis of {g in A : deg(g tau) <= B and [f tau, g tau] = 0} by exact
/// linear algebra. For eta = f tau with deg f within the window the kernel
/// is expected to be span{f}.
inline std::vector<HEElement> kernel_ad_bounded(const HyperellipticCurve& C, const HEElement& f,
                                                int bound) {
    if (f.is_zero()) throw std::invalid_argument("kernel_ad_bounded: zero field");
    const int gbound = bound - (2 * C.m - 1);
    std::vector<HEElement> basis = he_monomials_up_to(C, gbound);
    // result degrees stay within deg f + gbound + 2m - 1
    int out_deg = (he_degree(f, C) ? *he_degree(f, C) : 0) + gbound + 2 * C.m + 1;
    int px = out_deg / 2 + 1, qx = out_deg / 2 + 1;
    std::vector<Monomial> p_basis, q_basis;
    for (int k = 0; k <= px; ++k) p_basis.push_back(Monomial::var(1, 0, k));
    for (int k = 0; k <= qx; ++k) q_basis.push_back(Monomial::var(1, 0, k));

    QMatrix mat(p_basis.size() + q_basis.size(), basis.size());
    for (size_t j = 0; j < basis.size(); ++j) {
        std::vector<Rational> col =
            he_coefficient_vector(bracket_coefficient(f, basis[j], C), p_basis, q_basis);
        for (size_t i = 0; i < col.size(); ++i) mat(i, j) = col[i];
    }
    std::vector<HEElement> out;
    for (const std::vector<Rational>& v : mat.kernel_basis()) {
        HEElement g = HEElement::zero();
        for (size_t j = 0; j < basis.size(); ++j)
            if (!v[j].is_zero()) g = g + v[j] * basis[j];
        out.push_back(std::move(g));
    }
    return out;
}

struct NotInImageReport {
    bool degree_raises = true;   // deg [eta, nu] > deg eta whenever nonzero
    bool no_semisimple = true;   // no nu <= B with [nu, eta] = eta
    bool no_nilpotent_escape = true; // ad(eta)^3 of the window basis never lands on k* eta
    bool ok() const { return degree_raises && no_semisimple && no_nilpotent_escape; }
};

/// Theorem-level evidence on the bounded window: eta not in Im ad(eta), no
/// semisimple eigen-relation, and no nilpotent collapse back onto eta.
inline NotInImageReport not_in_image_check(const HyperellipticCurve& C, const HEElement& f,
                                           int bound) {
    if (f.is_zero()) throw std::invalid_argument("not_in_image_check: zero field");
    NotInImageReport rep;
    const int gbound = bound - (2 * C.m - 1);
    std::vector<HEElement> basis = he_monomials_up_to(C, gbound);
    int eta_deg = *he_degree(f, C) + 2 * C.m - 1;

    for (const HEElement& g : basis) {
        HEElement c = bracket_coefficient(f, g, C);
        if (c.is_zero()) continue;
        if (*he_degree(c, C) + 2 * C.m - 1 <= eta_deg) rep.degree_raises = false;
    }

    // [g tau, f tau] = f tau: solve (g tau(f) - f tau(g)) = f linearly in g
    {
        int out_deg = *he_degree(f, C) + gbound + 2 * C.m + 1;
        std::vector<Monomial> p_basis, q_basis;
        for (int k = 0; k <= out_deg / 2 + 1; ++k) {
            p_basis.push_back(Monomial::var(1, 0, k));
            q_basis.push_back(Monomial::var(1, 0, k));
        }
        QMatrix mat(p_basis.size() + q_basis.size(), basis.size());
        for (size_t j = 0; j < basis.size(); ++j) {
            std::vector<Rational> col = he_coefficient_vector(
                bracket_coefficient(basis[j], f, C), p_basis, q_basis);
            for (size_t i = 0; i < col.size(); ++i) mat(i, j) = col[i];
        }
        if (mat.solve(he_coefficient_vector(f, p_basis, q_basis))) rep.no_semisimple = false;
    }

    for (const HEElement& g : basis) {
        HEElement w = g;
        for (int k = 0; k < 3; ++k) w = bracket_coefficient(f, w, C);
        if (w.is_zero()) continue;
        // w tau a nonzero constant multiple of f tau?
        if (w.p.term_count() == f.p.term_count() && w.q.term_count() == f.q.term_count()) {
            Rational ratio(0);
            bool proportional = true;
            auto scan = [&](const Polynomial& a, const Polynomial& b) {
                for (size_t t = 0; t < a.terms().size() && proportional; ++t) {
                    if (!(a.terms()[t].mono == b.terms()[t].mono)) { proportional = false; break; }
                    Rational r = a.terms()[t].coef / b.terms()[t].coef;
                    if (ratio.is_zero()) ratio = r;
                    else if (r != ratio) proportional = false;
                }
            };
            scan(w.p, f.p);
            scan(w.q, f.q);
            if (proportional && !ratio.is_zero()) rep.no_nilpotent_escape = false;
        }
    }
    return rep;
}

} // namespace liefield
