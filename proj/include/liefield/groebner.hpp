#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "polynomial.hpp"

namespace liefield {

/// Element of a free module k[x]^L with a fixed component count.
class FreeModuleVector {
public:
    FreeModuleVector(int length, int nvars)
        : comps_(static_cast<size_t>(length), Polynomial::zero(nvars)) {}
    explicit FreeModuleVector(std::vector<Polynomial> comps) : comps_(std::move(comps)) {
        if (comps_.empty()) throw std::invalid_argument("FreeModuleVector: empty");
    }

    int length() const { return static_cast<int>(comps_.size()); }
    int nvars() const { return comps_.front().nvars(); }
    const Polynomial& operator[](size_t i) const { return comps_[i]; }
    Polynomial& operator[](size_t i) { return comps_[i]; }
    const std::vector<Polynomial>& components() const { return comps_; }

    bool is_zero() const {
        for (const Polynomial& p : comps_)
            if (!p.is_zero()) return false;
        return true;
    }

    friend FreeModuleVector operator+(const FreeModuleVector& a, const FreeModuleVector& b) {
        a.check(b);
        FreeModuleVector r(a);
        for (size_t i = 0; i < r.comps_.size(); ++i) r.comps_[i] += b.comps_[i];
        return r;
    }
    friend FreeModuleVector operator-(const FreeModuleVector& a, const FreeModuleVector& b) {
        a.check(b);
        FreeModuleVector r(a);
        for (size_t i = 0; i < r.comps_.size(); ++i) r.comps_[i] -= b.comps_[i];
        return r;
    }
    FreeModuleVector& operator-=(const FreeModuleVector& o) { return *this = *this - o; }

    FreeModuleVector times_term(const Monomial& m, const Rational& c) const {
        FreeModuleVector r(*this);
        for (Polynomial& p : r.comps_) p = p.times_term(m, c);
        return r;
    }
    FreeModuleVector scaled(const Polynomial& f) const {
        FreeModuleVector r(*this);
        for (Polynomial& p : r.comps_) p = p * f;
        return r;
    }
    FreeModuleVector scaled(const Rational& c) const {
        FreeModuleVector r(*this);
        for (Polynomial& p : r.comps_) p = c * p;
        return r;
    }

    friend bool operator==(const FreeModuleVector& a, const FreeModuleVector& b) {
        return a.comps_ == b.comps_;
    }

private:
    void check(const FreeModuleVector& o) const {
        if (comps_.size() != o.comps_.size())
            throw std::invalid_argument("FreeModuleVector: component-count mismatch");
    }
    std::vector<Polynomial> comps_;

    friend bool operator!=(const FreeModuleVector& a, const FreeModuleVector& b) {
        return !(a.comps_ == b.comps_);
    }
};

namespace detail {

struct ModuleLead {
    int comp;
    Monomial mono;
    Rational coef;
};

/// Position-over-term: lower component index dominates; ties use the
/// monomial order. This makes block elimination (tag components appended
/// after the original ones) automatic.
inline ModuleLead module_lead(const FreeModuleVector& v, const MonomialOrder& ord) {
    for (int c = 0; c < v.length(); ++c) {
        if (!v[static_cast<size_t>(c)].is_zero()) {
            Term t = v[static_cast<size_t>(c)].leading_term(ord);
            return {c, t.mono, t.coef};
        }
    }
    throw std::invalid_argument("module_lead: zero vector");
}

inline bool module_term_greater(int ca, const Monomial& ma, int cb, const Monomial& mb,
                                const MonomialOrder& ord) {
    if (ca != cb) return ca < cb;
    return ord.greater(ma, mb);
}

struct DivisionResult {
    FreeModuleVector remainder;
    std::vector<Polynomial> multipliers; // input = sum multipliers[i]*basis[i] + remainder
};

inline DivisionResult module_divide(const FreeModuleVector& v,
                                    const std::vector<FreeModuleVector>& basis,
                                    const MonomialOrder& ord) {
    const int n = v.nvars();
    DivisionResult res{FreeModuleVector(v.length(), n), {}};
    res.multipliers.assign(basis.size(), Polynomial::zero(n));
    std::vector<ModuleLead> leads;
    leads.reserve(basis.size());
    for (const FreeModuleVector& g : basis) leads.push_back(module_lead(g, ord));

    FreeModuleVector work(v);
    while (!work.is_zero()) {
        ModuleLead lt = module_lead(work, ord);
        bool reduced = false;
        for (size_t t = 0; t < basis.size(); ++t) {
            if (leads[t].comp != lt.comp || !leads[t].mono.divides(lt.mono)) continue;
            Monomial q = leads[t].mono.divide_into(lt.mono);
            Rational c = lt.coef / leads[t].coef;
            work -= basis[t].times_term(q, c);
            res.multipliers[t] += Polynomial::from_monomial(q, c);
            reduced = true;
            break;
        }
        if (!reduced) {
            // move the irreducible leading term into the remainder
            Polynomial term = Polynomial::from_monomial(lt.mono, lt.coef);
            res.remainder[static_cast<size_t>(lt.comp)] += term;
            work[static_cast<size_t>(lt.comp)] -= term;
        }
    }
    return res;
}

inline FreeModuleVector spair(const FreeModuleVector& a, const ModuleLead& la,
                              const FreeModuleVector& b, const ModuleLead& lb) {
    Monomial lcm = la.mono.lcm(lb.mono);
    FreeModuleVector sa = a.times_term(la.mono.divide_into(lcm), la.coef.inverse());
    FreeModuleVector sb = b.times_term(lb.mono.divide_into(lcm), lb.coef.inverse());
    return sa - sb;
}

/// Reduced module Groebner basis via Buchberger's algorithm. Pairs are
/// selected by the normal strategy (minimal lcm degree first); the chain
/// criterion is applied always, the product criterion only in the scalar
/// case (it is not valid for modules).
inline std::vector<FreeModuleVector> module_buchberger(std::vector<FreeModuleVector> gens,
                                                       const MonomialOrder& ord) {
    std::vector<FreeModuleVector> basis;
    for (FreeModuleVector& g : gens)
        if (!g.is_zero()) basis.push_back(std::move(g));
    if (basis.empty()) return basis;
    const bool scalar = basis.front().length() == 1;

    std::vector<ModuleLead> leads;
    for (FreeModuleVector& g : basis) {
        ModuleLead l = module_lead(g, ord);
        g = g.scaled(l.coef.inverse());
        l.coef = Rational(1);
        leads.push_back(std::move(l));
    }

    struct Pair {
        size_t i, j;
        Monomial lcm;
    };
    auto pair_less = [&ord](const Pair& a, const Pair& b) {
        if (a.lcm.degree() != b.lcm.degree()) return a.lcm.degree() < b.lcm.degree();
        if (a.lcm != b.lcm) return ord.less(a.lcm, b.lcm);
        if (a.i != b.i) return a.i < b.i;
        return a.j < b.j;
    };
    std::vector<Pair> pending;
    std::set<std::pair<size_t, size_t>> pending_keys;
    auto push_pairs_for = [&](size_t j) {
        for (size_t i = 0; i < j; ++i) {
            if (leads[i].comp != leads[j].comp) continue;
            pending.push_back({i, j, leads[i].mono.lcm(leads[j].mono)});
            pending_keys.insert({i, j});
        }
    };
    for (size_t j = 0; j < basis.size(); ++j) push_pairs_for(j);

    while (!pending.empty()) {
        size_t best = 0;
        for (size_t t = 1; t < pending.size(); ++t)
            if (pair_less(pending[t], pending[best])) best = t;
        Pair pr = pending[best];
        pending.erase(pending.begin() + static_cast<long>(best));
        pending_keys.erase({pr.i, pr.j});

        if (scalar && leads[pr.i].mono.coprime(leads[pr.j].mono)) continue;

        // chain criterion
        bool skip = false;
        for (size_t t = 0; t < basis.size() && !skip; ++t) {
            if (t == pr.i || t == pr.j || leads[t].comp != leads[pr.i].comp) continue;
            if (!leads[t].mono.divides(pr.lcm)) continue;
            auto key = [&](size_t a, size_t b) {
                return std::make_pair(std::min(a, b), std::max(a, b));
            };
            if (!pending_keys.count(key(pr.i, t)) && !pending_keys.count(key(t, pr.j))) skip = true;
        }
        if (skip) continue;

        FreeModuleVector s = spair(basis[pr.i], leads[pr.i], basis[pr.j], leads[pr.j]);
        FreeModuleVector r = module_divide(s, basis, ord).remainder;
        if (r.is_zero()) continue;
        ModuleLead l = module_lead(r, ord);
        r = r.scaled(l.coef.inverse());
        l.coef = Rational(1);
        basis.push_back(std::move(r));
        leads.push_back(std::move(l));
        push_pairs_for(basis.size() - 1);
    }

    // minimize: drop elements whose lead is divisible by another's lead
    std::vector<bool> keep(basis.size(), true);
    for (size_t i = 0; i < basis.size(); ++i) {
        for (size_t j = 0; j < basis.size() && keep[i]; ++j) {
            if (i == j || !keep[j] || leads[j].comp != leads[i].comp) continue;
            if (leads[j].mono.divides(leads[i].mono) &&
                !(leads[i].mono == leads[j].mono && i < j))
                keep[i] = false;
        }
    }
    std::vector<FreeModuleVector> mini;
    for (size_t i = 0; i < basis.size(); ++i)
        if (keep[i]) mini.push_back(std::move(basis[i]));

    // inter-reduce tails to a fixpoint; leads are irreducible so they persist
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i < mini.size(); ++i) {
            std::vector<FreeModuleVector> others;
            others.reserve(mini.size() - 1);
            for (size_t j = 0; j < mini.size(); ++j)
                if (j != i) others.push_back(mini[j]);
            FreeModuleVector r = others.empty()
                                     ? mini[i]
                                     : module_divide(mini[i], others, ord).remainder;
            ModuleLead l = module_lead(r, ord);
            r = r.scaled(l.coef.inverse());
            if (r != mini[i]) {
                mini[i] = std::move(r);
                changed = true;
            }
        }
    }

    std::sort(mini.begin(), mini.end(),
              [&ord](const FreeModuleVector& a, const FreeModuleVector& b) {
                  ModuleLead la = module_lead(a, ord), lb = module_lead(b, ord);
                  return module_term_greater(lb.comp, lb.mono, la.comp, la.mono, ord);
              });
    return mini;
}

} // namespace detail

// ---------------------------------------------------------------------------
// Ideals
// ---------------------------------------------------------------------------

/// Reduced Groebner basis of an ideal. When built with cofactor tracking,
/// generators[i] == sum_j cofactors[i][j] * inputs[j] holds exactly.
struct GroebnerBasis {
    std::vector<Polynomial> generators;
    MonomialOrder order;
    std::vector<Polynomial> inputs;                 // nonempty iff cofactors tracked
    std::vector<std::vector<Polynomial>> cofactors; // row per generator

    bool has_cofactors() const { return !cofactors.empty() || generators.empty(); }
    bool is_unit_ideal() const {
        return generators.size() == 1 && generators.front().is_constant() &&
               !generators.front().is_zero();
    }
};

namespace detail {

inline std::vector<FreeModuleVector> wrap_scalar(const std::vector<Polynomial>& gens) {
    std::vector<FreeModuleVector> vs;
    for (const Polynomial& g : gens)
        if (!g.is_zero()) vs.push_back(FreeModuleVector({g}));
    return vs;
}

} // namespace detail

/// Reduced Groebner basis of <gens>. Empty input (or all zeros) yields the
/// basis of the zero ideal. With cofactor tracking the computation runs on
/// input vectors tagged with unit components, so every output carries an
/// exact representation in the inputs.
inline GroebnerBasis buchberger(const std::vector<Polynomial>& gens,
                                MonomialOrder ord = grevlex_order(),
                                bool with_cofactors = false) {
    GroebnerBasis out;
    out.order = ord;
    if (!with_cofactors) {
        std::vector<FreeModuleVector> basis = detail::module_buchberger(detail::wrap_scalar(gens), ord);
        for (FreeModuleVector& v : basis) out.generators.push_back(std::move(v[0]));
        return out;
    }
    out.inputs = gens;
    std::vector<size_t> live;
    for (size_t i = 0; i < gens.size(); ++i)
        if (!gens[i].is_zero()) live.push_back(i);
    if (live.empty()) return out;
    const int n = gens[live.front()].nvars();
    const size_t k = live.size();
    std::vector<FreeModuleVector> vs;
    for (size_t t = 0; t < k; ++t) {
        FreeModuleVector w(static_cast<int>(1 + k), n);
        w[0] = gens[live[t]];
        w[1 + t] = Polynomial::constant(n, Rational(1));
        vs.push_back(std::move(w));
    }
    std::vector<FreeModuleVector> basis = detail::module_buchberger(std::move(vs), ord);
    for (const FreeModuleVector& v : basis) {
        if (v[0].is_zero()) continue; // a syzygy of the inputs, not a generator
        out.generators.push_back(v[0]);
        std::vector<Polynomial> row(gens.size(), Polynomial::zero(n));
        for (size_t t = 0; t < k; ++t) row[live[t]] = v[1 + t];
        out.cofactors.push_back(std::move(row));
    }
    return out;
}

/// Remainder of full division: no term of the result is divisible by any
/// leading term of G. normal_form(p, G) == 0 iff p lies in <G>; idempotent.
inline Polynomial normal_form(const Polynomial& p, const GroebnerBasis& G) {
    if (p.is_zero() || G.generators.empty()) return p;
    std::vector<FreeModuleVector> basis = detail::wrap_scalar(G.generators);
    return detail::module_divide(FreeModuleVector({p}), basis, G.order).remainder[0];
}

struct MembershipResult {
    bool member = false;
    std::vector<Polynomial> cofactors; // p == sum cofactors[i]*gens[i] when member
};

/// Decides p in <gens>; optionally returns cofactors, verified by expansion.
inline MembershipResult ideal_membership(const Polynomial& p, const std::vector<Polynomial>& gens,
                                         bool want_cofactors = false,
                                         MonomialOrder ord = grevlex_order()) {
    MembershipResult res;
    if (p.is_zero()) {
        res.member = true;
        if (want_cofactors) res.cofactors.assign(gens.size(), Polynomial::zero(p.nvars()));
        return res;
    }
    GroebnerBasis G = buchberger(gens, ord, want_cofactors);
    if (G.generators.empty()) return res; // zero ideal, p != 0
    std::vector<FreeModuleVector> basis = detail::wrap_scalar(G.generators);
    detail::DivisionResult d = detail::module_divide(FreeModuleVector({p}), basis, ord);
    res.member = d.remainder[0].is_zero();
    if (res.member && want_cofactors) {
        res.cofactors.assign(gens.size(), Polynomial::zero(p.nvars()));
        for (size_t t = 0; t < G.generators.size(); ++t) {
            if (d.multipliers[t].is_zero()) continue;
            for (size_t j = 0; j < gens.size(); ++j)
                res.cofactors[j] += d.multipliers[t] * G.cofactors[t][j];
        }
        Polynomial expand = Polynomial::zero(p.nvars());
        for (size_t j = 0; j < gens.size(); ++j) expand += res.cofactors[j] * gens[j];
        if (expand != p) throw std::logic_error("ideal_membership: certificate failed expansion");
    }
    return res;
}

/// Rabinowitsch trick: p vanishes on V(<gens>) over the algebraic closure
/// iff 1 lies in <gens> + <1 - z*p> in one extra variable.
inline bool radical_membership(const Polynomial& p, const std::vector<Polynomial>& gens) {
    const int n = p.nvars();
    std::vector<Polynomial> lifted;
    for (const Polynomial& g : gens) lifted.push_back(g.extended(n + 1));
    Polynomial z = Polynomial::variable(n + 1, n);
    lifted.push_back(Polynomial::constant(n + 1, Rational(1)) - z * p.extended(n + 1));
    GroebnerBasis G = buchberger(lifted);
    return normal_form(Polynomial::constant(n + 1, Rational(1)), G).is_zero();
}

// ---------------------------------------------------------------------------
// Modules and syzygies
// ---------------------------------------------------------------------------

struct ModuleGroebnerBasis {
    std::vector<FreeModuleVector> generators;
    MonomialOrder order;
};

/// Reduced Groebner basis of the submodule generated by vs under the
/// position-over-term order (component first, then `ord`).
inline ModuleGroebnerBasis module_groebner(const std::vector<FreeModuleVector>& vs,
                                           MonomialOrder ord = grevlex_order()) {
    if (!vs.empty()) {
        int len = vs.front().length();
        for (const FreeModuleVector& v : vs)
            if (v.length() != len)
                throw std::invalid_argument("module_groebner: component-count mismatch");
    }
    return {detail::module_buchberger(vs, ord), ord};
}

inline FreeModuleVector module_normal_form(const FreeModuleVector& v,
                                           const ModuleGroebnerBasis& G) {
    if (G.generators.empty() || v.is_zero()) return v;
    return detail::module_divide(v, G.generators, G.order).remainder;
}

struct SyzygyBasis {
    std::vector<FreeModuleVector> relations; // each annihilates the inputs exactly
};

/// Generators of {r : sum r_i vs_i = 0} over the polynomial ring, extracted
/// from the tag block of a Groebner basis of the tagged inputs v_i + e_i.
inline SyzygyBasis syzygies(const std::vector<FreeModuleVector>& vs,
                            MonomialOrder ord = grevlex_order()) {
    SyzygyBasis out;
    if (vs.empty()) return out;
    const int len = vs.front().length();
    const int n = vs.front().nvars();
    const size_t k = vs.size();
    std::vector<FreeModuleVector> tagged;
    for (size_t t = 0; t < k; ++t) {
        if (vs[t].length() != len)
            throw std::invalid_argument("syzygies: component-count mismatch");
        FreeModuleVector w(static_cast<int>(len + static_cast<int>(k)), n);
        for (int c = 0; c < len; ++c) w[static_cast<size_t>(c)] = vs[t][static_cast<size_t>(c)];
        w[static_cast<size_t>(len) + t] = Polynomial::constant(n, Rational(1));
        tagged.push_back(std::move(w));
    }
    std::vector<FreeModuleVector> basis = detail::module_buchberger(std::move(tagged), ord);
    for (const FreeModuleVector& v : basis) {
        bool head_zero = true;
        for (int c = 0; c < len && head_zero; ++c)
            head_zero = v[static_cast<size_t>(c)].is_zero();
        if (!head_zero) continue;
        std::vector<Polynomial> rel;
        for (size_t t = 0; t < k; ++t) rel.push_back(v[static_cast<size_t>(len) + t]);
        FreeModuleVector r(std::move(rel));
        // soundness: the relation must annihilate the inputs exactly
        FreeModuleVector acc(len, n);
        for (size_t t = 0; t < k; ++t) acc = acc + vs[t].scaled(r[t]);
        if (!acc.is_zero()) throw std::logic_error("syzygies: relation failed verification");
        out.relations.push_back(std::move(r));
    }
    return out;
}

/// Post-hoc check that every S-vector of the basis reduces to zero.
inline bool verify_groebner(const std::vector<FreeModuleVector>& basis,
                            const MonomialOrder& ord) {
    for (size_t i = 0; i < basis.size(); ++i) {
        detail::ModuleLead li = detail::module_lead(basis[i], ord);
        for (size_t j = i + 1; j < basis.size(); ++j) {
            detail::ModuleLead lj = detail::module_lead(basis[j], ord);
            if (li.comp != lj.comp) continue;
            FreeModuleVector s = detail::spair(basis[i], li, basis[j], lj);
            if (s.is_zero()) continue;
            if (!detail::module_divide(s, basis, ord).remainder.is_zero()) return false;
        }
    }
    return true;
}

inline bool verify_groebner(const GroebnerBasis& G) {
    return verify_groebner(detail::wrap_scalar(G.generators), G.order);
}

} // namespace liefield
