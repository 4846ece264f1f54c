#pragma once

#include <memory>
#include <string>
#include <vector>

#include "variety.hpp"

namespace liefield {

/// A polynomial vector field on X, i.e. a derivation of A given by its
/// component vector (g_1,...,g_n) in A^n. Components are stored in normal
/// form. Tangency (sum_j g_j df_i/dx_j in I for every generator f_i) is the
/// defining condition; construction checks it unless explicitly skipped.
class VectorField {
public:
    VectorField(const Variety& X, std::vector<Polynomial> raw_components,
                bool check_tangency = true)
        : ctx_(X.d_) {
        if (static_cast<int>(raw_components.size()) != X.n())
            throw std::invalid_argument("VectorField: component count mismatch");
        comps_.reserve(raw_components.size());
        for (Polynomial& p : raw_components) comps_.push_back(X.reduce(p));
        if (check_tangency && !is_tangent(X, comps_))
            throw std::invalid_argument("VectorField: components are not tangent to X");
    }

    VectorField(const Variety& X, const std::string& text, bool check_tangency = true)
        : VectorField(X, parse_vector_field(text, X.names()), check_tangency) {}

    static bool is_tangent(const Variety& X, const std::vector<Polynomial>& g) {
        const auto& J = X.jacobian();
        for (const auto& row : J) {
            Polynomial acc(X.n());
            for (int j = 0; j < X.n(); ++j) acc += g[static_cast<size_t>(j)] * row[static_cast<size_t>(j)];
            if (!X.reduce(acc).is_zero()) return false;
        }
        return true;
    }

    Variety variety() const { return Variety(ctx_); }
    int n() const { return static_cast<int>(comps_.size()); }
    const std::vector<Polynomial>& components() const { return comps_; }
    QuotientElement component(int j) const {
        return QuotientElement(ctx_, comps_[static_cast<size_t>(j)]);
    }

    bool is_zero() const {
        for (const Polynomial& p : comps_)
            if (!p.is_zero()) return false;
        return true;
    }

    /// Derivation action: sum_j g_j d(rep f)/dx_j reduced mod I. Tangency
    /// makes the result independent of the chosen representative.
    QuotientElement apply(const QuotientElement& f) const {
        return QuotientElement(ctx_, apply_raw(f.rep()));
    }
    Polynomial apply_raw(const Polynomial& rep) const {
        Polynomial acc(rep.nvars());
        for (size_t j = 0; j < comps_.size(); ++j)
            acc += comps_[j] * rep.partial_derivative(static_cast<int>(j));
        return Variety(ctx_).reduce(acc);
    }

    VectorField operator-() const {
        std::vector<Polynomial> c;
        for (const Polynomial& p : comps_) c.push_back(-p);
        return VectorField(ctx_, std::move(c));
    }
    friend VectorField operator+(const VectorField& a, const VectorField& b) {
        a.check(b);
        std::vector<Polynomial> c;
        for (size_t j = 0; j < a.comps_.size(); ++j) c.push_back(a.comps_[j] + b.comps_[j]);
        return VectorField(a.ctx_, std::move(c));
    }
    friend VectorField operator-(const VectorField& a, const VectorField& b) { return a + (-b); }

    /// Left A-module action f*eta.
    friend VectorField operator*(const QuotientElement& f, const VectorField& eta) {
        return eta.scaled_by(f);
    }
    friend VectorField operator*(const Rational& c, const VectorField& eta) {
        std::vector<Polynomial> comps;
        for (const Polynomial& p : eta.comps_) comps.push_back(c * p);
        return VectorField(eta.ctx_, std::move(comps));
    }

    friend bool operator==(const VectorField& a, const VectorField& b) {
        a.check(b);
        return a.comps_ == b.comps_;
    }
    friend bool operator!=(const VectorField& a, const VectorField& b) { return !(a == b); }

    std::vector<Rational> evaluate(const std::vector<Rational>& point) const {
        std::vector<Rational> out;
        out.reserve(comps_.size());
        for (const Polynomial& p : comps_) out.push_back(p.evaluate(point));
        return out;
    }

    std::string str() const {
        return format_vector_field(comps_, Variety(ctx_).names());
    }

private:
    friend VectorField lie_bracket(const VectorField&, const VectorField&);
    VectorField(std::shared_ptr<const detail::VarietyData> ctx, std::vector<Polynomial> reduced)
        : ctx_(std::move(ctx)), comps_(std::move(reduced)) {}
    VectorField scaled_by(const QuotientElement& f) const {
        Variety X(ctx_);
        std::vector<Polynomial> c;
        for (const Polynomial& p : comps_) c.push_back(X.reduce(f.rep() * p));
        return VectorField(ctx_, std::move(c));
    }
    void check(const VectorField& o) const {
        if (ctx_ != o.ctx_) throw std::invalid_argument("VectorField: mixed variety contexts");
    }

    std::shared_ptr<const detail::VarietyData> ctx_;
    std::vector<Polynomial> comps_;
};

/// [eta, mu]_j = eta(mu_j) - mu(eta_j) in A.
inline VectorField lie_bracket(const VectorField& eta, const VectorField& mu) {
    if (!(eta.variety() == mu.variety()))
        throw std::invalid_argument("lie_bracket: mixed variety contexts");
    std::vector<Polynomial> c;
    c.reserve(mu.components().size());
    for (size_t j = 0; j < mu.components().size(); ++j)
        c.push_back(eta.apply_raw(mu.components()[j]) - mu.apply_raw(eta.components()[j]));
    return VectorField(eta.ctx_, std::move(c));
}

inline std::vector<Rational> tangent_evaluation(const VectorField& eta,
                                                const std::vector<Rational>& point) {
    if (!eta.variety().contains(point))
        throw std::invalid_argument("tangent_evaluation: point not on the variety");
    return eta.evaluate(point);
}

/// Generators of the derivation module D = {g in A^n : Jac g = 0 mod I},
/// with relations among them on request (the second syzygy projection).
struct DerivationModuleGens {
    std::vector<VectorField> generators;
    std::vector<std::vector<QuotientElement>> relations; // rows annihilate the generators
};

namespace detail {

/// The lifted column family whose syzygies realize the tangency system:
/// columns of the Jacobian plus f_k e_i for every ideal generator and every
/// target component.
inline std::vector<FreeModuleVector> tangency_family(const Variety& X) {
    const size_t m = X.generators().size();
    const int n = X.n();
    const auto& J = X.jacobian();
    std::vector<FreeModuleVector> family;
    for (int j = 0; j < n; ++j) {
        FreeModuleVector col(static_cast<int>(m), n);
        for (size_t i = 0; i < m; ++i) col[i] = J[i][static_cast<size_t>(j)];
        family.push_back(std::move(col));
    }
    for (size_t k = 0; k < m; ++k) {
        for (size_t i = 0; i < m; ++i) {
            FreeModuleVector v(static_cast<int>(m), n);
            v[i] = X.generators()[k];
            family.push_back(std::move(v));
        }
    }
    return family;
}

/// Module membership of a raw component vector in the A-span of the given
/// fields: lift to k[x]^n and divide against the fields' lifts together with
/// f_k e_j (which are zero in A^n).
inline ModuleGroebnerBasis span_basis(const Variety& X, const std::vector<VectorField>& fields) {
    const int n = X.n();
    std::vector<FreeModuleVector> gens;
    for (const VectorField& f : fields) gens.push_back(FreeModuleVector(f.components()));
    for (const Polynomial& fk : X.generators()) {
        for (int j = 0; j < n; ++j) {
            FreeModuleVector v(n, n);
            v[static_cast<size_t>(j)] = fk;
            gens.push_back(std::move(v));
        }
    }
    return module_groebner(gens);
}

} // namespace detail

/// True iff eta lies in the A-span of `fields` inside A^n.
inline bool in_module_span(const Variety& X, const std::vector<VectorField>& fields,
                           const VectorField& eta) {
    ModuleGroebnerBasis G = detail::span_basis(X, fields);
    return module_normal_form(FreeModuleVector(eta.components()), G).is_zero();
}

inline DerivationModuleGens derivation_module_generators(const Variety& X,
                                                         bool with_relations = false) {
    DerivationModuleGens out;
    const int n = X.n();
    if (X.generators().empty()) {
        // W_n: the free module with the coordinate derivations as basis
        for (int j = 0; j < n; ++j) {
            std::vector<Polynomial> comps(static_cast<size_t>(n), Polynomial::zero(n));
            comps[static_cast<size_t>(j)] = Polynomial::constant(n, Rational(1));
            out.generators.push_back(VectorField(X, std::move(comps), false));
        }
        return out;
    }

    SyzygyBasis syz = syzygies(detail::tangency_family(X));
    for (const FreeModuleVector& rel : syz.relations) {
        std::vector<Polynomial> comps;
        comps.reserve(static_cast<size_t>(n));
        bool nonzero = false;
        for (int j = 0; j < n; ++j) {
            Polynomial r = X.reduce(rel[static_cast<size_t>(j)]);
            nonzero = nonzero || !r.is_zero();
            comps.push_back(std::move(r));
        }
        if (!nonzero) continue;
        // normalize: first nonzero component monic
        for (const Polynomial& c : comps) {
            if (c.is_zero()) continue;
            Rational lead = c.leading_term(grevlex_order()).coef;
            for (Polynomial& p : comps) p = lead.inverse() * p;
            break;
        }
        out.generators.push_back(VectorField(X, std::move(comps), /*check_tangency=*/true));
    }

    // greedy minimal generating set: drop members of the span of the others
    for (size_t i = out.generators.size(); i-- > 0;) {
        if (out.generators.size() == 1) break;
        std::vector<VectorField> others;
        for (size_t j = 0; j < out.generators.size(); ++j)
            if (j != i) others.push_back(out.generators[j]);
        if (in_module_span(X, others, out.generators[i]))
            out.generators.erase(out.generators.begin() + static_cast<long>(i));
    }

    if (with_relations && !out.generators.empty()) {
        std::vector<FreeModuleVector> family;
        for (const VectorField& g : out.generators)
            family.push_back(FreeModuleVector(g.components()));
        const size_t gen_count = family.size();
        for (const Polynomial& fk : X.generators()) {
            for (int j = 0; j < n; ++j) {
                FreeModuleVector v(n, n);
                v[static_cast<size_t>(j)] = fk;
                family.push_back(std::move(v));
            }
        }
        SyzygyBasis rels = syzygies(family);
        for (const FreeModuleVector& rel : rels.relations) {
            std::vector<QuotientElement> row;
            bool nonzero = false;
            for (size_t t = 0; t < gen_count; ++t) {
                QuotientElement c = X.element(rel[t]);
                nonzero = nonzero || !c.is_zero();
                row.push_back(std::move(c));
            }
            if (nonzero) out.relations.push_back(std::move(row));
        }
    }
    return out;
}

/// True iff the evaluations of `fields` at P span the tangent space
/// ker Jac(P) (dimension s = dim X). P must be nonsingular.
inline bool ampleness_check(const Variety& X, const std::vector<Rational>& point,
                            const std::vector<VectorField>& fields) {
    if (X.is_singular_point(point))
        throw std::invalid_argument("ampleness_check: point is singular");
    const size_t s = static_cast<size_t>(X.n() - static_cast<int>(X.jacobian_at(point).rank()));
    std::vector<std::vector<Rational>> evals;
    for (const VectorField& f : fields) evals.push_back(f.evaluate(point));
    return rank_of_rows(evals) == s;
}

} // namespace liefield
