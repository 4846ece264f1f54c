#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "linalg.hpp"
#include "vector_field.hpp"

namespace liefield {

/// SL_n as an affine variety: k[x_11..x_nn] / (det - 1), coordinates
/// row-major, identity point e = (delta_ij). Carries the Hopf data the
/// invariant-field machinery needs (antipode substitutions).
struct GroupContext {
    int n;
    Variety X;
    std::vector<Rational> e;
    std::vector<Polynomial> antipode_subs; // S(x_ij), row-major

    explicit GroupContext(int n_) : n(n_), X(make_variety(n_)) {
        if (n_ < 2) throw std::invalid_argument("GroupContext: n must be >= 2");
        e.assign(static_cast<size_t>(n * n), Rational(0));
        for (int i = 0; i < n; ++i) e[static_cast<size_t>(var(i, i))] = Rational(1);
        // S(x_ij) = (X^{-1})_ij = (-1)^{i+j} minor(delete row j, col i); det = 1
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                Polynomial m = symbolic_minor(n, j, i);
                antipode_subs.push_back((i + j) % 2 == 0 ? m : -m);
            }
    }

    int var(int i, int j) const { return i * n + j; }
    Polynomial coord(int i, int j) const { return Polynomial::variable(n * n, var(i, j)); }

    static std::vector<std::string> coordinate_names(int n) {
        std::vector<std::string> names;
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j)
                names.push_back("x" + std::to_string(i) + std::to_string(j));
        return names;
    }

    static Polynomial determinant_polynomial(int n) {
        const int nv = n * n;
        std::vector<int> perm(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) perm[static_cast<size_t>(i)] = i;
        Polynomial det(nv);
        do {
            int inversions = 0;
            for (size_t i = 0; i < perm.size(); ++i)
                for (size_t j = i + 1; j < perm.size(); ++j)
                    if (perm[i] > perm[j]) ++inversions;
            Polynomial term = Polynomial::constant(nv, Rational(inversions % 2 == 0 ? 1 : -1));
            for (int i = 0; i < n; ++i)
                term = term * Polynomial::variable(nv, i * n + perm[static_cast<size_t>(i)]);
            det += term;
        } while (std::next_permutation(perm.begin(), perm.end()));
        return det;
    }

    static Variety make_variety(int n) {
        Polynomial f = determinant_polynomial(n) -
                       Polynomial::constant(n * n, Rational(1));
        return Variety(n * n, {f}, coordinate_names(n));
    }

    static Polynomial symbolic_minor(int n, int del_row, int del_col) {
        const int nv = n * n;
        std::vector<std::vector<Polynomial>> sub;
        for (int i = 0; i < n; ++i) {
            if (i == del_row) continue;
            std::vector<Polynomial> row;
            for (int j = 0; j < n; ++j) {
                if (j == del_col) continue;
                row.push_back(Polynomial::variable(nv, i * n + j));
            }
            sub.push_back(std::move(row));
        }
        if (sub.empty()) return Polynomial::constant(nv, Rational(1));
        return detail::poly_det(sub);
    }

    /// Antipode: the algebra morphism x_ij -> (X^{-1})_ij.
    QuotientElement antipode(const QuotientElement& f) const {
        return X.element(f.rep().substitute(antipode_subs));
    }
};

/// Tangent vector at the identity: a trace-zero matrix pairing with
/// m_e/m_e^2 through the gradient at e.
struct TangentVectorAtE {
    QMatrix m;

    explicit TangentVectorAtE(QMatrix m_) : m(std::move(m_)) {
        if (m.rows() != m.cols()) throw std::invalid_argument("TangentVectorAtE: not square");
        Rational tr(0);
        for (size_t i = 0; i < m.rows(); ++i) tr += m(i, i);
        if (!tr.is_zero()) throw std::invalid_argument("TangentVectorAtE: nonzero trace");
    }

    static TangentVectorAtE unit(int n, int i, int j) {
        QMatrix m(static_cast<size_t>(n), static_cast<size_t>(n));
        if (i == j) throw std::invalid_argument("TangentVectorAtE::unit: use diagonal()");
        m(static_cast<size_t>(i), static_cast<size_t>(j)) = Rational(1);
        return TangentVectorAtE(std::move(m));
    }
    /// E_ii - (1/n) I, dual to the cotangent function x_ii - x_nn.
    static TangentVectorAtE diagonal(int n, int i) {
        QMatrix m(static_cast<size_t>(n), static_cast<size_t>(n));
        for (size_t t = 0; t < static_cast<size_t>(n); ++t) m(t, t) = Rational(-1, n);
        m(static_cast<size_t>(i), static_cast<size_t>(i)) += Rational(1);
        return TangentVectorAtE(std::move(m));
    }
};

/// Directional derivative phi_hat(f) = phi(f - f(e)1): the gradient of any
/// representative at e paired with the matrix (well-defined modulo det - 1
/// because the gradient of det at e is the identity pattern and tr M = 0).
inline Rational directional_derivative(const GroupContext& G, const TangentVectorAtE& phi,
                                       const Polynomial& rep) {
    Rational acc(0);
    for (int i = 0; i < G.n; ++i)
        for (int j = 0; j < G.n; ++j) {
            const Rational& c = phi.m(static_cast<size_t>(i), static_cast<size_t>(j));
            if (c.is_zero()) continue;
            acc += c * rep.partial_derivative(G.var(i, j)).evaluate(G.e);
        }
    return acc;
}
inline Rational directional_derivative(const GroupContext& G, const TangentVectorAtE& phi,
                                       const QuotientElement& f) {
    return directional_derivative(G, phi, f.rep());
}

/// Sum of f^(1) (x) f^(2) pairs in the canonical basis: both legs expanded
/// over standard monomials of A (normal forms mod det - 1).
class TensorSum {
public:
    using Key = std::pair<Monomial, Monomial>;
    struct KeyLess {
        bool operator()(const Key& a, const Key& b) const {
            if (!(a.first == b.first)) return Monomial::grevlex_greater(a.first, b.first);
            return Monomial::grevlex_greater(a.second, b.second);
        }
    };
    using Map = std::map<Key, Rational, KeyLess>;

    explicit TensorSum(const Variety& X) : X_(X) {}

    static TensorSum unit(const Variety& X) {
        TensorSum t(X);
        int nv = X.n();
        t.terms_[{Monomial::one(nv), Monomial::one(nv)}] = Rational(1);
        return t;
    }

    void add(const Polynomial& u, const Polynomial& v, const Rational& c) {
        Polynomial ru = X_.reduce(u), rv = X_.reduce(v);
        for (const Term& tu : ru.terms())
            for (const Term& tv : rv.terms()) {
                Rational cc = c * tu.coef * tv.coef;
                auto [it, fresh] = terms_.try_emplace({tu.mono, tv.mono}, cc);
                if (!fresh) {
                    it->second += cc;
                    if (it->second.is_zero()) terms_.erase(it);
                }
            }
    }

    friend TensorSum operator*(const TensorSum& a, const TensorSum& b) {
        TensorSum out(a.X_);
        for (const auto& [ka, ca] : a.terms_)
            for (const auto& [kb, cb] : b.terms_)
                out.add(Polynomial::from_monomial(ka.first * kb.first, Rational(1)),
                        Polynomial::from_monomial(ka.second * kb.second, Rational(1)), ca * cb);
        return out;
    }

    friend TensorSum operator+(const TensorSum& a, const TensorSum& b) {
        TensorSum out = a;
        for (const auto& [k, c] : b.terms_) {
            auto [it, fresh] = out.terms_.try_emplace(k, c);
            if (!fresh) {
                it->second += c;
                if (it->second.is_zero()) out.terms_.erase(it);
            }
        }
        return out;
    }

    TensorSum scaled(const Rational& c) const {
        TensorSum out(X_);
        if (c.is_zero()) return out;
        for (const auto& [k, v] : terms_) out.terms_[k] = c * v;
        return out;
    }

    const Map& terms() const { return terms_; }
    const Variety& variety() const { return X_; }
    bool is_zero() const { return terms_.empty(); }

    friend bool operator==(const TensorSum& a, const TensorSum& b) {
        return a.terms_ == b.terms_;
    }

private:
    Variety X_;
    Map terms_;
};

/// Delta(x_ij) = sum_k x_ik (x) x_kj, extended multiplicatively; the result
/// is canonical on both legs.
inline TensorSum coproduct(const GroupContext& G, const QuotientElement& f) {
    std::vector<TensorSum> gen; // coproducts of the coordinates, row-major
    for (int i = 0; i < G.n; ++i)
        for (int j = 0; j < G.n; ++j) {
            TensorSum t(G.X);
            for (int k = 0; k < G.n; ++k) t.add(G.coord(i, k), G.coord(k, j), Rational(1));
            gen.push_back(std::move(t));
        }
    TensorSum out(G.X);
    for (const Term& t : f.rep().terms()) {
        TensorSum prod = TensorSum::unit(G.X).scaled(t.coef);
        for (int v = 0; v < G.n * G.n; ++v) {
            int e = t.mono.exponent(v);
            for (int k = 0; k < e; ++k) prod = prod * gen[static_cast<size_t>(v)];
        }
        out = out + prod;
    }
    return out;
}

enum class Side { left, right };

/// theta_L(phi) f = sum phi_hat(f^(2)) f^(1)  (and mirrored for theta_R),
/// evaluated through the coproduct on the coordinate functions.
inline VectorField invariant_field(const GroupContext& G, const TangentVectorAtE& phi,
                                   Side side) {
    const int nv = G.n * G.n;
    std::vector<Polynomial> comps(static_cast<size_t>(nv), Polynomial::zero(nv));
    for (int i = 0; i < G.n; ++i)
        for (int j = 0; j < G.n; ++j) {
            TensorSum d = coproduct(G, G.X.element(G.coord(i, j)));
            Polynomial acc(nv);
            for (const auto& [key, c] : d.terms()) {
                const Monomial& m1 = key.first;
                const Monomial& m2 = key.second;
                if (side == Side::left) {
                    Rational w = directional_derivative(
                        G, phi, Polynomial::from_monomial(m2, Rational(1)));
                    if (!w.is_zero()) acc += Polynomial::from_monomial(m1, c * w);
                } else {
                    Rational w = directional_derivative(
                        G, phi, Polynomial::from_monomial(m1, Rational(1)));
                    if (!w.is_zero()) acc += Polynomial::from_monomial(m2, c * w);
                }
            }
            comps[static_cast<size_t>(G.var(i, j))] = acc;
        }
    return VectorField(G.X, std::move(comps));
}

inline VectorField left_invariant_field(const GroupContext& G, const TangentVectorAtE& phi) {
    return invariant_field(G, phi, Side::left);
}
inline VectorField right_invariant_field(const GroupContext& G, const TangentVectorAtE& phi) {
    return invariant_field(G, phi, Side::right);
}

/// Gamma(eta (x) f)(x) = eta(L_x f)(x), computed through the coproduct:
/// Gamma = sum S(f^(1)) eta(f^(2)) with S the antipode. Requires f in m_e.
inline QuotientElement gamma(const GroupContext& G, const VectorField& eta,
                             const QuotientElement& f) {
    if (!f.evaluate(G.e).is_zero())
        throw std::invalid_argument("gamma: f must vanish at the identity");
    TensorSum d = coproduct(G, f);
    QuotientElement acc = G.X.zero();
    for (const auto& [key, c] : d.terms()) {
        QuotientElement s = G.antipode(G.X.element(Polynomial::from_monomial(key.first, Rational(1))));
        QuotientElement im = G.X.element(
            eta.apply_raw(Polynomial::from_monomial(key.second, Rational(1))));
        acc += c * (s * im);
    }
    return acc;
}

/// Basis f_i of m_e/m_e^2 (off-diagonal x_ij, then x_ii - x_nn) and the
/// dual tangent basis phi_i (E_ij, then E_ii - (1/n) I).
struct DualBases {
    std::vector<QuotientElement> cotangent;
    std::vector<TangentVectorAtE> tangent;
    std::vector<std::string> labels;
};

inline DualBases dual_bases(const GroupContext& G) {
    DualBases out;
    for (int i = 0; i < G.n; ++i)
        for (int j = 0; j < G.n; ++j) {
            if (i == j) continue;
            out.cotangent.push_back(G.X.element(G.coord(i, j)));
            out.tangent.push_back(TangentVectorAtE::unit(G.n, i, j));
            out.labels.push_back("E" + std::to_string(i + 1) + std::to_string(j + 1));
        }
    for (int i = 0; i + 1 < G.n; ++i) {
        Polynomial f = G.coord(i, i) - G.coord(G.n - 1, G.n - 1);
        out.cotangent.push_back(G.X.element(f));
        out.tangent.push_back(TangentVectorAtE::diagonal(G.n, i));
        out.labels.push_back("H" + std::to_string(i + 1));
    }
    return out;
}

/// delta(eta) = sum_i Gamma(eta (x) f_i) (x) theta_L(phi_i): the module
/// coordinates of eta in A (x) L^L.
inline std::vector<QuotientElement> trivialize(const GroupContext& G, const VectorField& eta) {
    DualBases b = dual_bases(G);
    std::vector<QuotientElement> out;
    out.reserve(b.cotangent.size());
    for (const QuotientElement& f : b.cotangent) out.push_back(gamma(G, eta, f));
    return out;
}

/// epsilon: multiplies the coordinates back onto the left-invariant frame.
inline VectorField untrivialize(const GroupContext& G,
                                const std::vector<QuotientElement>& coords) {
    DualBases b = dual_bases(G);
    if (coords.size() != b.tangent.size())
        throw std::invalid_argument("untrivialize: coordinate count mismatch");
    VectorField acc(G.X, std::vector<Polynomial>(static_cast<size_t>(G.n * G.n),
                                                 Polynomial::zero(G.n * G.n)));
    for (size_t i = 0; i < coords.size(); ++i)
        acc = acc + coords[i] * left_invariant_field(G, b.tangent[i]);
    return acc;
}

/// [theta_L(phi), theta_R(psi)] = 0 on the full basis grid.
inline bool commutation_check(const GroupContext& G) {
    DualBases b = dual_bases(G);
    std::vector<VectorField> lefts, rights;
    for (const TangentVectorAtE& t : b.tangent) {
        lefts.push_back(left_invariant_field(G, t));
        rights.push_back(right_invariant_field(G, t));
    }
    for (const VectorField& l : lefts)
        for (const VectorField& r : rights)
            if (!lie_bracket(l, r).is_zero()) return false;
    return true;
}

} // namespace liefield
