#pragma once

#include <optional>
#include <vector>

#include "vector_field.hpp"

namespace liefield {

/// Truncated multivariate power series in the local parameters t_1..t_s:
/// all stored terms have total degree < order.
class JetSeries {
public:
    JetSeries(int nvars, int order) : order_(order), poly_(nvars) {
        if (order < 1) throw std::invalid_argument("JetSeries: order must be >= 1");
    }
    JetSeries(Polynomial p, int order) : order_(order), poly_(truncate(std::move(p), order)) {
        if (order < 1) throw std::invalid_argument("JetSeries: order must be >= 1");
    }

    static Polynomial truncate(Polynomial p, int order) {
        Polynomial::TermMap keep;
        for (const Term& t : p.terms())
            if (t.mono.degree() < order) keep.emplace(t.mono, t.coef);
        return Polynomial::from_term_map(p.nvars(), keep);
    }

    int order() const { return order_; }
    int nvars() const { return poly_.nvars(); }
    const Polynomial& poly() const { return poly_; }
    bool is_zero() const { return poly_.is_zero(); }

    Rational constant_term() const { return poly_.constant_coefficient(); }

    /// Minimal total degree of a stored term; nullopt for the zero series.
    std::optional<int> valuation() const {
        std::optional<int> v;
        for (const Term& t : poly_.terms())
            if (!v || t.mono.degree() < *v) v = t.mono.degree();
        return v;
    }

    Polynomial homogeneous_part(int d) const {
        Polynomial::TermMap keep;
        for (const Term& t : poly_.terms())
            if (t.mono.degree() == d) keep.emplace(t.mono, t.coef);
        return Polynomial::from_term_map(poly_.nvars(), keep);
    }

    JetSeries with_order(int order) const { return JetSeries(poly_, order); }

    friend JetSeries operator+(const JetSeries& a, const JetSeries& b) {
        a.check(b);
        return JetSeries(a.poly_ + b.poly_, a.order_);
    }
    friend JetSeries operator-(const JetSeries& a, const JetSeries& b) {
        a.check(b);
        return JetSeries(a.poly_ - b.poly_, a.order_);
    }
    friend JetSeries operator*(const JetSeries& a, const JetSeries& b) {
        a.check(b);
        return JetSeries(a.poly_ * b.poly_, a.order_);
    }
    friend JetSeries operator*(const Rational& c, const JetSeries& a) {
        return JetSeries(c * a.poly_, a.order_);
    }
    JetSeries operator-() const { return JetSeries(-poly_, order_); }
    JetSeries& operator+=(const JetSeries& o) { return *this = *this + o; }
    JetSeries& operator-=(const JetSeries& o) { return *this = *this - o; }

    friend bool operator==(const JetSeries& a, const JetSeries& b) {
        return a.order_ == b.order_ && a.poly_ == b.poly_;
    }
    friend bool operator!=(const JetSeries& a, const JetSeries& b) { return !(a == b); }

    /// Multiplicative inverse of a unit (nonzero constant term), by Newton
    /// iteration with doubling truncation.
    JetSeries inverse() const {
        Rational c = constant_term();
        if (c.is_zero()) throw std::invalid_argument("JetSeries: inverse of a non-unit");
        Polynomial two = Polynomial::constant(poly_.nvars(), Rational(2));
        Polynomial v = Polynomial::constant(poly_.nvars(), c.inverse());
        for (int prec = 2; prec / 2 < order_; prec *= 2) {
            int p = std::min(prec, order_);
            v = truncate(v * (two - poly_ * v), p);
        }
        return JetSeries(std::move(v), order_);
    }

private:
    void check(const JetSeries& o) const {
        if (order_ != o.order_) throw std::invalid_argument("JetSeries: mixed truncation orders");
    }

    int order_;
    Polynomial poly_;
};

/// f(coords) truncated: substitutes one series per ambient variable.
inline JetSeries substitute_series(const Polynomial& f, const std::vector<JetSeries>& coords,
                                   int order) {
    if (static_cast<int>(coords.size()) != f.nvars())
        throw std::invalid_argument("substitute_series: arity mismatch");
    const int s = coords.empty() ? 0 : coords.front().nvars();
    std::vector<std::vector<JetSeries>> pows(coords.size());
    auto power = [&](size_t i, int e) -> const JetSeries& {
        auto& cache = pows[i];
        if (cache.empty())
            cache.push_back(JetSeries(Polynomial::constant(s, Rational(1)), order));
        while (static_cast<int>(cache.size()) <= e) cache.push_back(cache.back() * coords[i]);
        return cache[static_cast<size_t>(e)];
    };
    JetSeries acc(s, order);
    for (const Term& t : f.terms()) {
        JetSeries prod(Polynomial::constant(s, t.coef), order);
        for (int i = 0; i < f.nvars(); ++i) {
            int e = t.mono.exponent(i);
            if (e > 0) prod = prod * power(static_cast<size_t>(i), e);
        }
        acc += prod;
    }
    return acc;
}

namespace detail {

/// Solves M x = b over truncated series; M's constant-term matrix must be
/// invertible (true at a nonsingular point with a valid chart).
inline std::vector<JetSeries> series_solve(std::vector<std::vector<JetSeries>> m,
                                           std::vector<JetSeries> b) {
    const size_t r = m.size();
    for (size_t col = 0; col < r; ++col) {
        size_t sel = col;
        while (sel < r && m[sel][col].constant_term().is_zero()) ++sel;
        if (sel == r) throw std::logic_error("series_solve: singular leading matrix");
        std::swap(m[sel], m[col]);
        std::swap(b[sel], b[col]);
        JetSeries inv = m[col][col].inverse();
        for (size_t j = 0; j < r; ++j) m[col][j] = inv * m[col][j];
        b[col] = inv * b[col];
        for (size_t i = 0; i < r; ++i) {
            if (i == col || m[i][col].is_zero()) continue;
            JetSeries f = m[i][col];
            for (size_t j = 0; j < r; ++j) m[i][j] -= f * m[col][j];
            b[i] -= f * b[col];
        }
    }
    return b;
}

} // namespace detail

/// Local data at a nonsingular point P: the chosen nonzero r x r minor h of
/// the Jacobian (rows beta, leading columns alpha), the local parameters
/// t_j = x_{free_j} - p_{free_j}, and the triangular basis fields
/// tau_j = sum_i q_ij d/dx_{alpha_i} + h d/dx_{free_j}.
struct LocalChart {
    std::vector<Rational> point;
    std::vector<size_t> rows;      // beta
    std::vector<size_t> leading;   // alpha
    std::vector<size_t> free_cols; // the s local-parameter columns
    QuotientElement h;
    std::vector<VectorField> tau;

    int s() const { return static_cast<int>(free_cols.size()); }

    /// Raw representative of t_j = x_{free_j} - p_{free_j}.
    Polynomial parameter(const Variety& X, int j) const {
        int col = static_cast<int>(free_cols[static_cast<size_t>(j)]);
        return Polynomial::variable(X.n(), col) -
               Polynomial::constant(X.n(), point[static_cast<size_t>(col)]);
    }
};

/// Chart columns: the lexicographically first r-subset of columns (and then
/// rows) whose minor does not vanish at P. Deterministic by construction.
inline LocalChart local_chart(const Variety& X, const std::vector<Rational>& point) {
    if (X.is_singular_point(point)) // also rejects points off X
        throw std::invalid_argument("local_chart: point is singular");
    const int n = X.n();
    const int r = X.jacobian_rank();
    const auto& J = X.jacobian();
    QMatrix JP = X.jacobian_at(point);

    std::vector<size_t> alpha, beta;
    bool found = r == 0;
    if (r > 0) {
        auto col_sets = detail::subsets_of_size(static_cast<size_t>(n), static_cast<size_t>(r));
        auto row_sets = detail::subsets_of_size(X.generators().size(), static_cast<size_t>(r));
        for (const auto& cols : col_sets) {
            for (const auto& rows_ : row_sets) {
                QMatrix sub(static_cast<size_t>(r), static_cast<size_t>(r));
                for (size_t i = 0; i < rows_.size(); ++i)
                    for (size_t j = 0; j < cols.size(); ++j) sub(i, j) = JP(rows_[i], cols[j]);
                if (!sub.determinant().is_zero()) {
                    alpha = cols;
                    beta = rows_;
                    found = true;
                    break;
                }
            }
            if (found) break;
        }
        if (!found) throw std::logic_error("local_chart: no nonvanishing minor at a nonsingular point");
    }

    std::vector<size_t> free_cols;
    {
        std::vector<bool> lead(static_cast<size_t>(n), false);
        for (size_t c : alpha) lead[c] = true;
        for (size_t c = 0; c < static_cast<size_t>(n); ++c)
            if (!lead[c]) free_cols.push_back(c);
    }

    auto minor_matrix = [&](std::optional<std::pair<size_t, size_t>> replace_col_with_free) {
        std::vector<std::vector<Polynomial>> m;
        for (size_t bi : beta) {
            std::vector<Polynomial> row;
            for (size_t t = 0; t < alpha.size(); ++t) {
                size_t col = alpha[t];
                if (replace_col_with_free && replace_col_with_free->first == t)
                    col = replace_col_with_free->second;
                row.push_back(J[bi][col]);
            }
            m.push_back(std::move(row));
        }
        return m;
    };

    Polynomial h_raw = r == 0 ? Polynomial::constant(n, Rational(1))
                              : detail::poly_det(minor_matrix(std::nullopt));

    std::vector<VectorField> tau;
    for (size_t fj : free_cols) {
        std::vector<Polynomial> comps(static_cast<size_t>(n), Polynomial::zero(n));
        // Cramer: q_i = det(M with column i replaced by -J[., free_j])
        for (size_t i = 0; i < alpha.size(); ++i) {
            Polynomial q = detail::poly_det(minor_matrix(std::make_pair(i, fj)));
            comps[alpha[i]] = -q;
        }
        comps[fj] = h_raw;
        tau.emplace_back(X, std::move(comps), /*check_tangency=*/true);
    }

    return LocalChart{point, beta, alpha, free_cols, X.element(h_raw), std::move(tau)};
}

/// Series expansions of the ambient coordinates in the local parameters:
/// free coordinates are p + t_j exactly; leading coordinates solve
/// f_b(x(t)) = 0 by Newton iteration with doubling precision.
inline std::vector<JetSeries> jet_coordinates(const Variety& X, const LocalChart& chart,
                                              int order) {
    if (order < 1) throw std::invalid_argument("jet_coordinates: order must be >= 1");
    const int n = X.n();
    const int s = chart.s();
    const size_t r = chart.leading.size();
    const auto& J = X.jacobian();

    std::vector<JetSeries> coords(static_cast<size_t>(n), JetSeries(s, order));
    for (int i = 0; i < n; ++i)
        coords[static_cast<size_t>(i)] =
            JetSeries(Polynomial::constant(s, chart.point[static_cast<size_t>(i)]), order);
    for (int j = 0; j < s; ++j) {
        size_t col = chart.free_cols[static_cast<size_t>(j)];
        coords[col] = JetSeries(
            Polynomial::variable(s, j) + Polynomial::constant(s, chart.point[col]), order);
    }
    if (r == 0) return coords;

    for (int prec = 2; prec / 2 < order; prec *= 2) {
        int p = std::min(prec, order);
        std::vector<JetSeries> trunc;
        trunc.reserve(coords.size());
        for (const JetSeries& c : coords) trunc.push_back(c.with_order(p));

        std::vector<JetSeries> fval;
        std::vector<std::vector<JetSeries>> m;
        for (size_t bi : chart.rows) {
            fval.push_back(substitute_series(X.generators()[bi], trunc, p));
            std::vector<JetSeries> row;
            for (size_t aj : chart.leading)
                row.push_back(substitute_series(J[bi][aj], trunc, p));
            m.push_back(std::move(row));
        }
        std::vector<JetSeries> delta = detail::series_solve(std::move(m), std::move(fval));
        for (size_t i = 0; i < r; ++i) {
            JetSeries updated = trunc[chart.leading[i]] - delta[i];
            coords[chart.leading[i]] = updated.with_order(order);
        }
    }

    for (const Polynomial& f : X.generators())
        if (!substitute_series(f, coords, order).is_zero())
            throw std::logic_error("jet_coordinates: Newton iteration failed to converge");
    return coords;
}

/// The truncation of pi(f) in R = k[[t_1..t_s]].
inline JetSeries jet_expansion(const Variety& X, const LocalChart& chart,
                               const QuotientElement& f, int order) {
    return substitute_series(f.rep(), jet_coordinates(X, chart, order), order);
}

} // namespace liefield
