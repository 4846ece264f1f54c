#pragma once

#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "groebner.hpp"
#include "linalg.hpp"
#include "parse.hpp"

namespace liefield {

class Variety;
class QuotientElement;

/// 1 = sum cofactors[i]*combined[i] when smooth; `combined` is the ideal's
/// generator list followed by the singular-locus minors.
struct SmoothnessCertificate {
    bool smooth = false;
    std::vector<Polynomial> combined;
    std::vector<Polynomial> cofactors;
};

namespace detail {

inline Polynomial poly_det(const std::vector<std::vector<Polynomial>>& m) {
    const size_t r = m.size();
    if (r == 0) throw std::invalid_argument("poly_det: empty matrix");
    const int n = m[0][0].nvars();
    if (r == 1) return m[0][0];
    Polynomial det(n);
    for (size_t j = 0; j < r; ++j) {
        if (m[0][j].is_zero()) continue;
        std::vector<std::vector<Polynomial>> sub;
        sub.reserve(r - 1);
        for (size_t i = 1; i < r; ++i) {
            std::vector<Polynomial> row;
            row.reserve(r - 1);
            for (size_t k = 0; k < r; ++k)
                if (k != j) row.push_back(m[i][k]);
            sub.push_back(std::move(row));
        }
        Polynomial term = m[0][j] * poly_det(sub);
        det = (j % 2 == 0) ? det + term : det - term;
    }
    return det;
}

/// Quotient of an exact division a = q*b. A single generator is its own
/// Groebner basis, so a zero remainder certifies divisibility.
inline Polynomial poly_exact_divide(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero()) return a;
    std::vector<FreeModuleVector> basis{FreeModuleVector({b})};
    DivisionResult d = module_divide(FreeModuleVector({a}), basis, grevlex_order());
    if (!d.remainder[0].is_zero()) throw std::invalid_argument("poly_exact_divide: not divisible");
    return d.multipliers[0];
}

inline std::vector<std::vector<size_t>> subsets_of_size(size_t n, size_t r) {
    std::vector<std::vector<size_t>> out;
    std::vector<size_t> cur;
    auto rec = [&](auto&& self, size_t start) -> void {
        if (cur.size() == r) {
            out.push_back(cur);
            return;
        }
        for (size_t i = start; i + (r - cur.size()) <= n; ++i) {
            cur.push_back(i);
            self(self, i + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

struct VarietyData {
    int n = 0;
    std::vector<std::string> names;
    std::vector<Polynomial> gens;
    bool irreducible_asserted = true;
    GroebnerBasis gb;

    mutable std::once_flag jac_once;
    mutable std::vector<std::vector<Polynomial>> jac;

    mutable std::once_flag rank_once;
    mutable int rank = 0;

    mutable std::once_flag minors_once;
    mutable std::vector<Polynomial> minors; // nonzero mod I, reduced, deterministic order

    mutable std::once_flag smooth_once;
    mutable SmoothnessCertificate smooth;
};

} // namespace detail

/// Canonical representative of an element of A = k[x]/I: the representative
/// is always the normal form w.r.t. the cached reduced Groebner basis of I,
/// so equality is representative equality.
class QuotientElement {
public:
    QuotientElement(const Variety& X, const Polynomial& p); // reduces p

    const Polynomial& rep() const { return rep_; }
    bool is_zero() const { return rep_.is_zero(); }
    bool is_constant() const { return rep_.is_constant(); }

    QuotientElement operator-() const { return QuotientElement(ctx_, -rep_); }
    friend QuotientElement operator+(const QuotientElement& a, const QuotientElement& b) {
        a.check(b);
        return QuotientElement(a.ctx_, a.rep_ + b.rep_); // sum of normal forms is normal
    }
    friend QuotientElement operator-(const QuotientElement& a, const QuotientElement& b) {
        a.check(b);
        return QuotientElement(a.ctx_, a.rep_ - b.rep_);
    }
    friend QuotientElement operator*(const QuotientElement& a, const QuotientElement& b) {
        a.check(b);
        return QuotientElement(a.ctx_, normal_form(a.rep_ * b.rep_, a.ctx_->gb));
    }
    friend QuotientElement operator*(const Rational& c, const QuotientElement& a) {
        return QuotientElement(a.ctx_, c * a.rep_);
    }
    QuotientElement& operator+=(const QuotientElement& o) { return *this = *this + o; }
    QuotientElement& operator-=(const QuotientElement& o) { return *this = *this - o; }
    QuotientElement& operator*=(const QuotientElement& o) { return *this = *this * o; }

    friend bool operator==(const QuotientElement& a, const QuotientElement& b) {
        a.check(b);
        return a.rep_ == b.rep_;
    }
    friend bool operator!=(const QuotientElement& a, const QuotientElement& b) {
        return !(a == b);
    }

    Rational evaluate(const std::vector<Rational>& point) const { return rep_.evaluate(point); }

private:
    friend class Variety;
    friend class VectorField;
    QuotientElement(std::shared_ptr<const detail::VarietyData> ctx, Polynomial reduced)
        : ctx_(std::move(ctx)), rep_(std::move(reduced)) {}
    void check(const QuotientElement& o) const {
        if (ctx_ != o.ctx_)
            throw std::invalid_argument("QuotientElement: mixed variety contexts");
    }

    std::shared_ptr<const detail::VarietyData> ctx_;
    Polynomial rep_;
};

/// An affine variety X = V(f_1,...,f_m) in A^n together with its coordinate
/// ring A = k[x]/I. Immutable; caches (Jacobian, rank, singular minors,
/// smoothness certificate) fill lazily under a once-only contract.
/// Irreducibility of I is asserted by the caller, not verified.
class Variety {
public:
    Variety(int n, std::vector<Polynomial> gens, std::vector<std::string> names = {},
            bool irreducible_asserted = true, MonomialOrder order = grevlex_order()) {
        auto d = std::make_shared<detail::VarietyData>();
        d->n = n;
        d->names = names.empty() ? default_variable_names(n) : std::move(names);
        if (static_cast<int>(d->names.size()) != n)
            throw std::invalid_argument("Variety: name count mismatch");
        for (const Polynomial& g : gens) {
            if (g.is_zero()) throw std::invalid_argument("Variety: zero generator");
            if (g.nvars() != n) throw std::invalid_argument("Variety: generator ambient mismatch");
        }
        d->gens = std::move(gens);
        d->irreducible_asserted = irreducible_asserted;
        d->gb = buchberger(d->gens, order);
        if (d->gb.is_unit_ideal())
            throw std::invalid_argument("Variety: 1 lies in the ideal (empty variety)");
        d_ = std::move(d);
    }

    /// W_n: the whole affine space (no equations).
    static Variety affine_space(int n, std::vector<std::string> names = {}) {
        return Variety(n, {}, std::move(names));
    }

    int n() const { return d_->n; }
    const std::vector<std::string>& names() const { return d_->names; }
    const std::vector<Polynomial>& generators() const { return d_->gens; }
    const GroebnerBasis& groebner() const { return d_->gb; }
    bool irreducible_asserted() const { return d_->irreducible_asserted; }

    Polynomial reduce(const Polynomial& p) const { return normal_form(p, d_->gb); }

    QuotientElement element(const Polynomial& p) const {
        return QuotientElement(d_, reduce(p));
    }
    QuotientElement element(const std::string& text) const {
        return element(parse_polynomial(text, d_->names));
    }
    QuotientElement zero() const { return QuotientElement(d_, Polynomial::zero(d_->n)); }
    QuotientElement one() const { return element(Polynomial::constant(d_->n, Rational(1))); }
    QuotientElement coordinate(int i) const { return element(Polynomial::variable(d_->n, i)); }
    QuotientElement constant(const Rational& c) const {
        return element(Polynomial::constant(d_->n, c));
    }

    bool contains(const std::vector<Rational>& point) const {
        for (const Polynomial& g : d_->gens)
            if (!g.evaluate(point).is_zero()) return false;
        return true;
    }

    /// Entry (i,j) = df_i/dx_j.
    const std::vector<std::vector<Polynomial>>& jacobian() const {
        std::call_once(d_->jac_once, [&] {
            for (const Polynomial& f : d_->gens) {
                std::vector<Polynomial> row;
                row.reserve(static_cast<size_t>(d_->n));
                for (int j = 0; j < d_->n; ++j) row.push_back(f.partial_derivative(j));
                d_->jac.push_back(std::move(row));
            }
        });
        return d_->jac;
    }

    /// Rank of the Jacobian over the fraction field of A: fraction-free
    /// (Bareiss) elimination over k[x] with pivots tested by NF mod I.
    /// When no remaining entry survives mod I, every bordered minor of the
    /// pivot minor vanishes on X, so the rank is the number of pivots taken.
    int jacobian_rank() const {
        std::call_once(d_->rank_once, [&] { d_->rank = compute_rank(); });
        return d_->rank;
    }

    int dimension() const { return d_->n - jacobian_rank(); }

    /// The r x r minors of the Jacobian (r = jacobian_rank), reduced mod I;
    /// zero reductions are dropped. Generates I_sing together with I.
    const std::vector<Polynomial>& singular_minors() const {
        std::call_once(d_->minors_once, [&] {
            const int r = jacobian_rank();
            if (r == 0) return; // Jacobian vanishes identically on X
            const auto& J = jacobian();
            auto row_sets = detail::subsets_of_size(d_->gens.size(), static_cast<size_t>(r));
            auto col_sets = detail::subsets_of_size(static_cast<size_t>(d_->n),
                                                    static_cast<size_t>(r));
            for (const auto& rows : row_sets) {
                for (const auto& cols : col_sets) {
                    std::vector<std::vector<Polynomial>> sub;
                    for (size_t i : rows) {
                        std::vector<Polynomial> row;
                        for (size_t j : cols) row.push_back(J[i][j]);
                        sub.push_back(std::move(row));
                    }
                    Polynomial m = reduce(detail::poly_det(sub));
                    if (!m.is_zero()) d_->minors.push_back(std::move(m));
                }
            }
        });
        return d_->minors;
    }

    std::vector<QuotientElement> singular_ideal() const {
        std::vector<QuotientElement> out;
        for (const Polynomial& m : singular_minors()) out.push_back(QuotientElement(d_, m));
        return out;
    }

    /// Nullstellensatz certificate: X is smooth iff V(I + I_sing) is empty
    /// iff 1 lies in I + I_sing; the certificate carries the cofactors.
    const SmoothnessCertificate& is_smooth() const {
        std::call_once(d_->smooth_once, [&] {
            SmoothnessCertificate& c = d_->smooth;
            c.combined = d_->gens;
            for (const Polynomial& m : singular_minors()) c.combined.push_back(m);
            MembershipResult res = ideal_membership(
                Polynomial::constant(d_->n, Rational(1)), c.combined, /*want_cofactors=*/true);
            c.smooth = res.member;
            if (res.member) c.cofactors = std::move(res.cofactors);
        });
        return d_->smooth;
    }

    QMatrix jacobian_at(const std::vector<Rational>& point) const {
        const auto& J = jacobian();
        QMatrix m(d_->gens.size(), static_cast<size_t>(d_->n));
        for (size_t i = 0; i < J.size(); ++i)
            for (int j = 0; j < d_->n; ++j)
                m(i, static_cast<size_t>(j)) = J[i][static_cast<size_t>(j)].evaluate(point);
        return m;
    }

    /// Jacobian-criterion test; requires the point to lie on X.
    bool is_singular_point(const std::vector<Rational>& point) const {
        if (!contains(point))
            throw std::invalid_argument("is_singular_point: point not on the variety");
        if (d_->gens.empty()) return false;
        return static_cast<int>(jacobian_at(point).rank()) < jacobian_rank();
    }

    friend bool operator==(const Variety& a, const Variety& b) { return a.d_ == b.d_; }

private:
    friend class VectorField;
    friend class QuotientElement;
    explicit Variety(std::shared_ptr<const detail::VarietyData> d) : d_(std::move(d)) {}

    int compute_rank() const {
        const auto& J = jacobian();
        const size_t m = J.size(), n = static_cast<size_t>(d_->n);
        if (m == 0) return 0;
        std::vector<std::vector<Polynomial>> a = J;
        std::vector<bool> row_used(m, false), col_used(n, false);
        Polynomial prev = Polynomial::constant(d_->n, Rational(1));
        int rank = 0;
        while (true) {
            size_t pr = m, pc = n;
            for (size_t i = 0; i < m && pr == m; ++i) {
                if (row_used[i]) continue;
                for (size_t j = 0; j < n; ++j) {
                    if (col_used[j]) continue;
                    if (!reduce(a[i][j]).is_zero()) {
                        pr = i;
                        pc = j;
                        break;
                    }
                }
            }
            if (pr == m) break;
            for (size_t i = 0; i < m; ++i) {
                if (row_used[i] || i == pr) continue;
                for (size_t j = 0; j < n; ++j) {
                    if (col_used[j] || j == pc) continue;
                    a[i][j] = detail::poly_exact_divide(
                        a[pr][pc] * a[i][j] - a[i][pc] * a[pr][j], prev);
                }
            }
            prev = a[pr][pc];
            row_used[pr] = true;
            col_used[pc] = true;
            ++rank;
        }
        return rank;
    }

    std::shared_ptr<const detail::VarietyData> d_;
};

inline QuotientElement::QuotientElement(const Variety& X, const Polynomial& p)
    : QuotientElement(X.d_, X.reduce(p)) {}

/// Line-oriented variety input: `vars: x1 x2 ...`, then one generator
/// polynomial per line; `#` starts a comment line.
inline Variety parse_variety_file(const std::string& content) {
    std::vector<std::string> names;
    std::vector<Polynomial> gens;
    std::istringstream in(content);
    std::string line;
    while (std::getline(in, line)) {
        size_t a = line.find_first_not_of(" \t\r");
        if (a == std::string::npos) continue;
        size_t b = line.find_last_not_of(" \t\r");
        std::string body = line.substr(a, b - a + 1);
        if (body.empty() || body[0] == '#') continue;
        if (body.rfind("vars:", 0) == 0) {
            std::istringstream vs(body.substr(5));
            std::string name;
            while (vs >> name) names.push_back(name);
            continue;
        }
        if (names.empty())
            throw std::invalid_argument("variety file: 'vars:' line must come first");
        gens.push_back(parse_polynomial(body, names));
    }
    if (names.empty()) throw std::invalid_argument("variety file: missing 'vars:' line");
    return Variety(static_cast<int>(names.size()), std::move(gens), names);
}

} // namespace liefield
