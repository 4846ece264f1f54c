#pragma once

#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "monomial.hpp"
#include "rational.hpp"

namespace liefield {

struct Term {
    Monomial mono;
    Rational coef;
};

/// Sparse multivariate polynomial over Q. Terms are kept in strictly
/// descending grevlex order with nonzero coefficients; two polynomials are
/// equal iff their term lists are equal. The degree of 0 is a sentinel
/// (std::nullopt), never an integer.
class Polynomial {
public:
    explicit Polynomial(int nvars) : nvars_(nvars) {
        if (nvars < 0) throw std::invalid_argument("Polynomial: negative nvars");
    }

    static Polynomial zero(int nvars) { return Polynomial(nvars); }

    static Polynomial constant(int nvars, Rational c) {
        Polynomial p(nvars);
        if (!c.is_zero()) p.terms_.push_back({Monomial::one(nvars), std::move(c)});
        return p;
    }

    static Polynomial variable(int nvars, int i) {
        Polynomial p(nvars);
        p.terms_.push_back({Monomial::var(nvars, i), Rational(1)});
        return p;
    }

    static Polynomial from_monomial(Monomial m, Rational c) {
        Polynomial p(m.nvars());
        if (!c.is_zero()) p.terms_.push_back({std::move(m), std::move(c)});
        return p;
    }

    using TermMap = std::map<Monomial, Rational, GrevlexDescending>;

    static Polynomial from_term_map(int nvars, const TermMap& m) {
        Polynomial p(nvars);
        p.terms_.reserve(m.size());
        for (const auto& [mono, c] : m)
            if (!c.is_zero()) p.terms_.push_back({mono, c});
        return p;
    }

    int nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || terms_.front().mono.is_one(); }
    size_t term_count() const { return terms_.size(); }
    const std::vector<Term>& terms() const { return terms_; }

    /// Total degree; nullopt for the zero polynomial.
    std::optional<int> degree() const {
        if (terms_.empty()) return std::nullopt;
        return terms_.front().mono.degree(); // grevlex refines total degree
    }

    bool is_homogeneous() const {
        if (terms_.empty()) return true;
        int d = terms_.front().mono.degree();
        for (const Term& t : terms_)
            if (t.mono.degree() != d) return false;
        return true;
    }

    Rational coefficient(const Monomial& m) const {
        for (const Term& t : terms_)
            if (t.mono == m) return t.coef;
        return Rational(0);
    }

    Rational constant_coefficient() const {
        if (terms_.empty()) return Rational(0);
        const Term& last = terms_.back();
        return last.mono.is_one() ? last.coef : Rational(0);
    }

    Term leading_term(const MonomialOrder& ord) const {
        if (terms_.empty()) throw std::invalid_argument("leading_term: zero polynomial");
        if (ord.kind == OrderKind::grevlex) return terms_.front();
        size_t best = 0;
        for (size_t i = 1; i < terms_.size(); ++i)
            if (ord.greater(terms_[i].mono, terms_[best].mono)) best = i;
        return terms_[best];
    }

    Polynomial operator-() const {
        Polynomial r(*this);
        for (Term& t : r.terms_) t.coef = -t.coef;
        return r;
    }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
        a.check(b);
        Polynomial r(a.nvars_);
        r.terms_.reserve(a.terms_.size() + b.terms_.size());
        size_t i = 0, j = 0;
        while (i < a.terms_.size() && j < b.terms_.size()) {
            const Monomial& ma = a.terms_[i].mono;
            const Monomial& mb = b.terms_[j].mono;
            if (ma == mb) {
                Rational c = a.terms_[i].coef + b.terms_[j].coef;
                if (!c.is_zero()) r.terms_.push_back({ma, std::move(c)});
                ++i, ++j;
            } else if (Monomial::grevlex_greater(ma, mb)) {
                r.terms_.push_back(a.terms_[i++]);
            } else {
                r.terms_.push_back(b.terms_[j++]);
            }
        }
        for (; i < a.terms_.size(); ++i) r.terms_.push_back(a.terms_[i]);
        for (; j < b.terms_.size(); ++j) r.terms_.push_back(b.terms_[j]);
        return r;
    }

    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

    Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
    Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        a.check(b);
        TermMap acc;
        for (const Term& ta : a.terms_) {
            for (const Term& tb : b.terms_) {
                Rational c = ta.coef * tb.coef;
                auto [it, fresh] = acc.try_emplace(ta.mono * tb.mono, c);
                if (!fresh) it->second += c;
            }
        }
        return from_term_map(a.nvars_, acc);
    }

    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

    friend Polynomial operator*(const Rational& c, const Polynomial& p) {
        if (c.is_zero()) return zero(p.nvars_);
        Polynomial r(p);
        for (Term& t : r.terms_) t.coef *= c;
        return r;
    }
    friend Polynomial operator*(const Polynomial& p, const Rational& c) { return c * p; }

    /// Multiplies by the single term c*m. Order-preserving, O(terms).
    Polynomial times_term(const Monomial& m, const Rational& c) const {
        if (c.is_zero()) return zero(nvars_);
        Polynomial r(nvars_);
        r.terms_.reserve(terms_.size());
        for (const Term& t : terms_) r.terms_.push_back({t.mono * m, t.coef * c});
        return r;
    }

    Polynomial pow(unsigned e) const {
        Polynomial r = constant(nvars_, Rational(1));
        Polynomial base(*this);
        while (e > 0) {
            if (e & 1u) r = r * base;
            e >>= 1u;
            if (e > 0) base = base * base;
        }
        return r;
    }

    Polynomial partial_derivative(int i) const {
        if (i < 0 || i >= nvars_)
            throw std::invalid_argument("partial_derivative: variable index out of range");
        Polynomial r(nvars_);
        r.terms_.reserve(terms_.size());
        for (const Term& t : terms_) {
            int e = t.mono.exponent(i);
            if (e == 0) continue;
            std::vector<int> exps = t.mono.exponents();
            exps[static_cast<size_t>(i)] = e - 1;
            r.terms_.push_back({Monomial(std::move(exps)), t.coef * Rational(e)});
        }
        return r; // differentiation preserves the term order
    }

    Rational evaluate(const std::vector<Rational>& point) const {
        if (static_cast<int>(point.size()) != nvars_)
            throw std::invalid_argument("evaluate: point dimension mismatch");
        Rational acc(0);
        for (const Term& t : terms_) {
            Rational v = t.coef;
            for (int i = 0; i < nvars_; ++i) {
                int e = t.mono.exponent(i);
                if (e > 0) v *= point[static_cast<size_t>(i)].pow(static_cast<unsigned>(e));
            }
            acc += v;
        }
        return acc;
    }

    /// Substitutes subs[i] for variable i (an algebra morphism).
    Polynomial substitute(const std::vector<Polynomial>& subs) const {
        if (static_cast<int>(subs.size()) != nvars_)
            throw std::invalid_argument("substitute: arity mismatch");
        int out_n = subs.empty() ? 0 : subs.front().nvars();
        // lazily cached powers of each substituted variable
        std::vector<std::vector<Polynomial>> pows(subs.size());
        auto power = [&](int i, int e) -> const Polynomial& {
            auto& cache = pows[static_cast<size_t>(i)];
            if (cache.empty()) cache.push_back(constant(out_n, Rational(1)));
            while (static_cast<int>(cache.size()) <= e)
                cache.push_back(cache.back() * subs[static_cast<size_t>(i)]);
            return cache[static_cast<size_t>(e)];
        };
        Polynomial acc(out_n);
        for (const Term& t : terms_) {
            Polynomial prod = constant(out_n, t.coef);
            for (int i = 0; i < nvars_; ++i) {
                int e = t.mono.exponent(i);
                if (e > 0) prod = prod * power(i, e);
            }
            acc += prod;
        }
        return acc;
    }

    /// Reinterprets in a larger ambient (new variables get exponent 0).
    Polynomial extended(int new_nvars) const {
        Polynomial r(new_nvars);
        r.terms_.reserve(terms_.size());
        for (const Term& t : terms_) r.terms_.push_back({t.mono.extended(new_nvars), t.coef});
        return r; // zero-padding preserves grevlex order
    }

    /// Divides every term by m; requires exact divisibility.
    Polynomial exact_monomial_quotient(const Monomial& m) const {
        Polynomial r(nvars_);
        r.terms_.reserve(terms_.size());
        for (const Term& t : terms_) r.terms_.push_back({m.divide_into(t.mono), t.coef});
        return r;
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        if (a.nvars_ != b.nvars_ || a.terms_.size() != b.terms_.size()) return false;
        for (size_t i = 0; i < a.terms_.size(); ++i)
            if (!(a.terms_[i].mono == b.terms_[i].mono && a.terms_[i].coef == b.terms_[i].coef))
                return false;
        return true;
    }
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

private:
    void check(const Polynomial& o) const {
        if (nvars_ != o.nvars_)
            throw std::invalid_argument("Polynomial: mismatched ambient variable sets");
    }

    int nvars_;
    std::vector<Term> terms_;
};

inline Polynomial laplacian(const Polynomial& f) {
    Polynomial r(f.nvars());
    for (int i = 0; i < f.nvars(); ++i) r += f.partial_derivative(i).partial_derivative(i);
    return r;
}

} // namespace liefield
