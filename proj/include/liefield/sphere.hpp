#pragma once

#include <string>
#include <vector>

#include "linalg.hpp"
#include "vector_field.hpp"

namespace liefield {

/// The sphere S^{N-1}: A = k[x_1..x_N] / <x_1^2 + ... + x_N^2 - 1>.
struct SphereContext {
    int N;
    Variety X;

    explicit SphereContext(int N_) : N(N_), X(make_variety(N_)) {
        if (N_ < 2) throw std::invalid_argument("SphereContext: N must be >= 2");
    }

    static Variety make_variety(int N) {
        Polynomial f(N);
        for (int i = 0; i < N; ++i) f += Polynomial::variable(N, i) * Polynomial::variable(N, i);
        f -= Polynomial::constant(N, Rational(1));
        return Variety(N, {f});
    }

    Polynomial r_squared() const {
        Polynomial r2(N);
        for (int i = 0; i < N; ++i)
            r2 += Polynomial::variable(N, i) * Polynomial::variable(N, i);
        return r2;
    }
};

namespace detail {

/// Raw components of Delta_ab = x_b d/dx_a - x_a d/dx_b (indices 0-based).
inline std::vector<Polynomial> delta_raw(int N, int a, int b) {
    std::vector<Polynomial> c(static_cast<size_t>(N), Polynomial::zero(N));
    c[static_cast<size_t>(a)] = Polynomial::variable(N, b);
    c[static_cast<size_t>(b)] = -Polynomial::variable(N, a);
    return c;
}

} // namespace detail

/// Delta_ab as a vector field on the sphere; Delta_ab = -Delta_ba.
inline VectorField delta_field(const SphereContext& ctx, int a, int b) {
    if (a == b) throw std::invalid_argument("delta_field: indices must differ");
    return VectorField(ctx.X, detail::delta_raw(ctx.N, a, b));
}

/// Basis element of sl_N: E_ab (off-diagonal) or E_aa - E_bb.
struct SlElement {
    bool off_diagonal = true;
    int a = 0;
    int b = 1;

    static SlElement E(int a, int b) { return {true, a, b}; }
    static SlElement H(int a, int b) { return {false, a, b}; }

    /// Matrix form (trace zero).
    QMatrix matrix(int N) const {
        QMatrix m(static_cast<size_t>(N), static_cast<size_t>(N));
        if (off_diagonal) {
            m(static_cast<size_t>(a), static_cast<size_t>(b)) = Rational(1);
        } else {
            m(static_cast<size_t>(a), static_cast<size_t>(a)) = Rational(1);
            m(static_cast<size_t>(b), static_cast<size_t>(b)) = Rational(-1);
        }
        return m;
    }

    std::string str() const {
        auto idx = [](int i) { return std::to_string(i + 1); };
        return off_diagonal ? "E" + idx(a) + idx(b)
                            : "E" + idx(a) + idx(a) + "-E" + idx(b) + idx(b);
    }
};

/// The paper's spanning set {E_ab, E_aa - E_bb (a < b)} in a fixed order.
inline std::vector<SlElement> sl_basis(int N) {
    std::vector<SlElement> out;
    for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b)
            if (a != b) out.push_back(SlElement::E(a, b));
    for (int a = 0; a + 1 < N; ++a) out.push_back(SlElement::H(a, a + 1));
    return out;
}

/// Raw components of the embedding of a trace-zero matrix M:
///   M maps to sum_{a,b} M_ab sum_p x_b x_p Delta_ap.
inline std::vector<Polynomial> sl_embedding_raw(int N, const QMatrix& m) {
    std::vector<Polynomial> comps(static_cast<size_t>(N), Polynomial::zero(N));
    for (int a = 0; a < N; ++a) {
        for (int b = 0; b < N; ++b) {
            const Rational& c = m(static_cast<size_t>(a), static_cast<size_t>(b));
            if (c.is_zero()) continue;
            Polynomial xb = Polynomial::variable(N, b);
            for (int p = 0; p < N; ++p) {
                if (p == a) continue; // Delta_aa = 0
                Polynomial xp = Polynomial::variable(N, p);
                std::vector<Polynomial> d = detail::delta_raw(N, a, p);
                for (int j = 0; j < N; ++j)
                    comps[static_cast<size_t>(j)] +=
                        c * (xb * xp * d[static_cast<size_t>(j)]);
            }
        }
    }
    return comps;
}

inline VectorField sl_embedding(const SphereContext& ctx, const QMatrix& m) {
    return VectorField(ctx.X, sl_embedding_raw(ctx.N, m));
}
inline VectorField sl_embedding(const SphereContext& ctx, const SlElement& e) {
    return sl_embedding(ctx, e.matrix(ctx.N));
}

/// Applies the embedded field to a raw polynomial without reducing mod I:
/// for homogeneous h of degree l the result is the canonical homogeneous
/// degree-(l+2) representative of the module action.
inline Polynomial sl_apply_raw(int N, const QMatrix& m, const Polynomial& h) {
    std::vector<Polynomial> comps = sl_embedding_raw(N, m);
    Polynomial acc(N);
    for (int j = 0; j < N; ++j)
        acc += comps[static_cast<size_t>(j)] * h.partial_derivative(j);
    return acc;
}

// ---------------------------------------------------------------------------
// Harmonic decomposition
// ---------------------------------------------------------------------------

/// Projection T_l -> H_l:
///   P = sum_k (-1)^k / (2^k k!) * (N+2l-2k-4)!! / (N+2l-4)!! * r^{2k} Laplacian^k,
/// with (-1)!! = 0!! = 1 so that the k = 0 coefficient is 1.
inline Polynomial harmonic_project(const Polynomial& f) {
    const int N = f.nvars();
    if (N < 3) throw std::invalid_argument("harmonic_project: requires N >= 3");
    if (f.is_zero()) return f;
    if (!f.is_homogeneous())
        throw std::invalid_argument("harmonic_project: input must be homogeneous");
    const int ell = *f.degree();

    Polynomial r2(N);
    for (int i = 0; i < N; ++i) r2 += Polynomial::variable(N, i) * Polynomial::variable(N, i);

    Polynomial out(N);
    Polynomial lap = f; // Laplacian^k f
    Polynomial r2k = Polynomial::constant(N, Rational(1));
    Rational denom = double_factorial(N + 2 * ell - 4);
    for (int k = 0; 2 * k <= ell; ++k) {
        if (lap.is_zero()) break;
        Rational c = double_factorial(N + 2 * ell - 2 * k - 4) / denom;
        c = c / (Rational(2).pow(static_cast<unsigned>(k)) * factorial(static_cast<unsigned>(k)));
        if (k % 2 == 1) c = -c;
        out += c * (r2k * lap);
        lap = laplacian(lap);
        r2k = r2k * r2;
    }
    return out;
}

/// h_l, h_{l-2}, ... with sum_k r^{2k} h_{l-2k} = f exactly.
struct HarmonicDecomposition {
    int ell = 0;
    std::vector<Polynomial> components; // components[k] = h_{l-2k}
};

inline HarmonicDecomposition harmonic_decompose(const Polynomial& f) {
    const int N = f.nvars();
    if (N < 3) throw std::invalid_argument("harmonic_decompose: requires N >= 3");
    if (!f.is_homogeneous())
        throw std::invalid_argument("harmonic_decompose: input must be homogeneous");
    HarmonicDecomposition out;
    if (f.is_zero()) return out;
    out.ell = *f.degree();

    Polynomial r2(N);
    for (int i = 0; i < N; ++i) r2 += Polynomial::variable(N, i) * Polynomial::variable(N, i);

    Polynomial rest = f;
    int level = out.ell;
    while (true) {
        if (level <= 1) { // degree 0 and 1 forms are harmonic
            out.components.push_back(rest);
            break;
        }
        Polynomial h = harmonic_project(rest);
        out.components.push_back(h);
        Polynomial diff = rest - h;
        if (diff.is_zero()) break;
        rest = detail::poly_exact_divide(diff, r2); // T_l = H_l + r^2 T_{l-2}
        level -= 2;
    }
    return out;
}

inline Polynomial reassemble(const HarmonicDecomposition& d, int N) {
    Polynomial r2(N);
    for (int i = 0; i < N; ++i) r2 += Polynomial::variable(N, i) * Polynomial::variable(N, i);
    Polynomial acc(N);
    Polynomial r2k = Polynomial::constant(N, Rational(1));
    for (const Polynomial& h : d.components) {
        acc += r2k * h;
        r2k = r2k * r2;
    }
    return acc;
}

/// dim H_l = (N+2l-2) (N+l-3)! / (l! (N-2)!).
inline Integer harmonic_dimension(int N, int ell) {
    if (N < 3 || ell < 0) throw std::invalid_argument("harmonic_dimension: bad arguments");
    mpz_class num, d1, d2;
    mpz_fac_ui(num.get_mpz_t(), static_cast<unsigned long>(N + ell - 3));
    num *= (N + 2 * ell - 2);
    mpz_fac_ui(d1.get_mpz_t(), static_cast<unsigned long>(ell));
    mpz_fac_ui(d2.get_mpz_t(), static_cast<unsigned long>(N - 2));
    mpz_class q = num / (d1 * d2);
    return Integer(q);
}

inline std::vector<Rational> coefficient_vector(const Polynomial& p,
                                                const std::vector<Monomial>& basis) {
    std::vector<Rational> v;
    v.reserve(basis.size());
    for (const Monomial& m : basis) v.push_back(p.coefficient(m));
    return v;
}

/// Basis of H_l as the kernel of the Laplacian on degree-l forms.
inline std::vector<Polynomial> harmonic_space_basis(int N, int ell) {
    std::vector<Monomial> src = monomials_of_degree(N, ell);
    if (ell < 2) {
        std::vector<Polynomial> out;
        for (const Monomial& m : src) out.push_back(Polynomial::from_monomial(m, Rational(1)));
        return out;
    }
    std::vector<Monomial> dst = monomials_of_degree(N, ell - 2);
    QMatrix m(dst.size(), src.size());
    for (size_t j = 0; j < src.size(); ++j) {
        Polynomial im = laplacian(Polynomial::from_monomial(src[j], Rational(1)));
        std::vector<Rational> col = coefficient_vector(im, dst);
        for (size_t i = 0; i < dst.size(); ++i) m(i, j) = col[i];
    }
    std::vector<Polynomial> out;
    for (const std::vector<Rational>& v : m.kernel_basis()) {
        Polynomial h(N);
        for (size_t j = 0; j < src.size(); ++j)
            if (!v[j].is_zero()) h += Polynomial::from_monomial(src[j], v[j]);
        out.push_back(std::move(h));
    }
    return out;
}

/// The localized-spread property: for harmonic h of degree l and X in sl_N,
/// g = X h (as a degree l+2 form) satisfies Laplacian^3 g = 0 and its
/// decomposition stops at H_{l-2}. Returns the three surviving components.
struct SpreadResult {
    Polynomial up, mid, down; // H_{l+2}, H_l, H_{l-2} components of g
};

inline SpreadResult spread_check(const SphereContext& ctx, const Polynomial& h,
                                 const SlElement& e) {
    if (!h.is_zero() && !laplacian(h).is_zero())
        throw std::invalid_argument("spread_check: input is not harmonic");
    const int N = ctx.N;
    Polynomial g = sl_apply_raw(N, e.matrix(N), h);
    SpreadResult out{Polynomial::zero(N), Polynomial::zero(N), Polynomial::zero(N)};
    if (g.is_zero()) return out;
    if (!laplacian(laplacian(laplacian(g))).is_zero())
        throw std::logic_error("spread_check: Laplacian^3 g != 0");
    HarmonicDecomposition d = harmonic_decompose(g);
    if (!d.components.empty()) out.up = d.components[0];
    if (d.components.size() > 1) out.mid = d.components[1];
    if (d.components.size() > 2) out.down = d.components[2];
    for (size_t k = 3; k < d.components.size(); ++k)
        if (!d.components[k].is_zero())
            throw std::logic_error("spread_check: component below H_{l-2} is nonzero");
    return out;
}

enum class SpreadDirection { up, down };

/// Desk-scale generation evidence: sl_N images of a basis of H_l project
/// onto a spanning set of H_{l+2} (up) or H_{l-2} (down).
inline bool generation_check(const SphereContext& ctx, int ell, SpreadDirection dir) {
    if (ell < 0 || (dir == SpreadDirection::down && ell < 2))
        throw std::invalid_argument("generation_check: bad degree for direction");
    const int N = ctx.N;
    const int target = dir == SpreadDirection::up ? ell + 2 : ell - 2;
    std::vector<Monomial> target_basis = monomials_of_degree(N, target);
    std::vector<Polynomial> hs = harmonic_space_basis(N, ell);

    std::vector<std::vector<Rational>> projections;
    for (const Polynomial& h : hs) {
        for (const SlElement& e : sl_basis(N)) {
            Polynomial g = sl_apply_raw(N, e.matrix(N), h);
            if (g.is_zero()) continue;
            Polynomial component(N);
            if (dir == SpreadDirection::up) {
                component = harmonic_project(g);
            } else {
                HarmonicDecomposition d = harmonic_decompose(g);
                if (d.components.size() > 2) component = d.components[2];
            }
            if (!component.is_zero())
                projections.push_back(coefficient_vector(component, target_basis));
        }
    }
    Integer want = harmonic_dimension(N, target);
    return Integer(static_cast<long>(rank_of_rows(projections))) == want;
}

} // namespace liefield
