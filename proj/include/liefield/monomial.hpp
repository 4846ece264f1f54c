#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace liefield {

/// Exponent vector of fixed length (the ambient variable count).
class Monomial {
public:
    explicit Monomial(int nvars) : e_(static_cast<size_t>(nvars), 0), deg_(0) {}
    explicit Monomial(std::vector<int> exps)
        : e_(std::move(exps)), deg_(std::accumulate(e_.begin(), e_.end(), 0)) {
        for (int x : e_)
            if (x < 0) throw std::invalid_argument("Monomial: negative exponent");
    }

    static Monomial one(int nvars) { return Monomial(nvars); }
    static Monomial var(int nvars, int i, int power = 1) {
        Monomial m(nvars);
        m.e_.at(static_cast<size_t>(i)) = power;
        m.deg_ = power;
        return m;
    }

    int nvars() const { return static_cast<int>(e_.size()); }
    int degree() const { return deg_; }
    int exponent(int i) const { return e_[static_cast<size_t>(i)]; }
    const std::vector<int>& exponents() const { return e_; }
    bool is_one() const { return deg_ == 0; }

    Monomial operator*(const Monomial& o) const {
        check(o);
        Monomial r(*this);
        for (size_t i = 0; i < e_.size(); ++i) r.e_[i] += o.e_[i];
        r.deg_ += o.deg_;
        return r;
    }

    bool divides(const Monomial& o) const {
        check(o);
        for (size_t i = 0; i < e_.size(); ++i)
            if (e_[i] > o.e_[i]) return false;
        return true;
    }

    /// Quotient o / this; requires divisibility.
    Monomial divide_into(const Monomial& o) const {
        check(o);
        Monomial r(o);
        for (size_t i = 0; i < e_.size(); ++i) {
            r.e_[i] -= e_[i];
            if (r.e_[i] < 0) throw std::invalid_argument("Monomial: not divisible");
        }
        r.deg_ = o.deg_ - deg_;
        return r;
    }

    Monomial lcm(const Monomial& o) const {
        check(o);
        Monomial r(*this);
        r.deg_ = 0;
        for (size_t i = 0; i < e_.size(); ++i) {
            r.e_[i] = std::max(e_[i], o.e_[i]);
            r.deg_ += r.e_[i];
        }
        return r;
    }

    bool coprime(const Monomial& o) const {
        check(o);
        for (size_t i = 0; i < e_.size(); ++i)
            if (e_[i] > 0 && o.e_[i] > 0) return false;
        return true;
    }

    Monomial extended(int new_nvars) const {
        if (new_nvars < nvars()) throw std::invalid_argument("Monomial: cannot shrink");
        Monomial r(new_nvars);
        std::copy(e_.begin(), e_.end(), r.e_.begin());
        r.deg_ = deg_;
        return r;
    }

    friend bool operator==(const Monomial& a, const Monomial& b) {
        return a.deg_ == b.deg_ && a.e_ == b.e_;
    }
    friend bool operator!=(const Monomial& a, const Monomial& b) { return !(a == b); }

    /// Strict a > b in graded reverse lexicographic order (x1 > x2 > ...).
    static bool grevlex_greater(const Monomial& a, const Monomial& b) {
        if (a.deg_ != b.deg_) return a.deg_ > b.deg_;
        for (size_t i = a.e_.size(); i-- > 0;) {
            if (a.e_[i] != b.e_[i]) return a.e_[i] < b.e_[i];
        }
        return false;
    }

    /// Strict a > b in lexicographic order (x1 > x2 > ...).
    static bool lex_greater(const Monomial& a, const Monomial& b) {
        for (size_t i = 0; i < a.e_.size(); ++i)
            if (a.e_[i] != b.e_[i]) return a.e_[i] > b.e_[i];
        return false;
    }

private:
    void check(const Monomial& o) const {
        if (e_.size() != o.e_.size())
            throw std::invalid_argument("Monomial: mismatched ambient variable sets");
    }

    std::vector<int> e_;
    int deg_;
};

enum class OrderKind { lex, grevlex };

/// Total, multiplicative well-order on monomials of a fixed ambient.
struct MonomialOrder {
    OrderKind kind = OrderKind::grevlex;

    bool greater(const Monomial& a, const Monomial& b) const {
        return kind == OrderKind::grevlex ? Monomial::grevlex_greater(a, b)
                                          : Monomial::lex_greater(a, b);
    }
    bool less(const Monomial& a, const Monomial& b) const { return greater(b, a); }
};

inline MonomialOrder grevlex_order() { return MonomialOrder{OrderKind::grevlex}; }
inline MonomialOrder lex_order() { return MonomialOrder{OrderKind::lex}; }

/// Comparator for map storage: descending grevlex (the canonical term order).
struct GrevlexDescending {
    bool operator()(const Monomial& a, const Monomial& b) const {
        return Monomial::grevlex_greater(a, b);
    }
};

/// All monomials in `nvars` variables of total degree exactly `d`,
/// in ascending lexicographic order. Deterministic; used by witness searches.
inline std::vector<Monomial> monomials_of_degree(int nvars, int d) {
    std::vector<Monomial> out;
    std::vector<int> e(static_cast<size_t>(nvars), 0);
    auto rec = [&](auto&& self, int pos, int rem) -> void {
        if (pos == nvars - 1) {
            e[static_cast<size_t>(pos)] = rem;
            out.emplace_back(e);
            return;
        }
        for (int k = 0; k <= rem; ++k) {
            e[static_cast<size_t>(pos)] = k;
            self(self, pos + 1, rem - k);
        }
        e[static_cast<size_t>(pos)] = 0;
    };
    if (nvars == 0) {
        if (d == 0) out.emplace_back(0);
        return out;
    }
    rec(rec, 0, d);
    return out;
}

} // namespace liefield
