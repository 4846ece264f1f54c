#pragma once

#include <algorithm>
#include <deque>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "jet.hpp"

namespace liefield {

/// Explicit expression chain applied to a seed field: brackets with known
/// fields and A-multiplications, exactly the moves available inside a Lie
/// ideal of D. Every witness stays re-verifiable by replaying the chain.
struct WitnessExpr {
    enum class Op { seed, scale, bracket };

    Op op = Op::seed;
    std::optional<Polynomial> factor;  // scale
    std::optional<VectorField> with;   // bracket: [with, child]
    std::shared_ptr<const WitnessExpr> child;

    static WitnessExpr seed() { return WitnessExpr{}; }
    static WitnessExpr scale(Polynomial f, WitnessExpr inner) {
        WitnessExpr e;
        e.op = Op::scale;
        e.factor = std::move(f);
        e.child = std::make_shared<const WitnessExpr>(std::move(inner));
        return e;
    }
    static WitnessExpr bracket(VectorField with, WitnessExpr inner) {
        WitnessExpr e;
        e.op = Op::bracket;
        e.with = std::move(with);
        e.child = std::make_shared<const WitnessExpr>(std::move(inner));
        return e;
    }
};

inline VectorField evaluate_witness(const WitnessExpr& expr, const VectorField& seed) {
    switch (expr.op) {
        case WitnessExpr::Op::seed: return seed;
        case WitnessExpr::Op::scale: {
            VectorField inner = evaluate_witness(*expr.child, seed);
            return QuotientElement(inner.variety(), *expr.factor) * inner;
        }
        case WitnessExpr::Op::bracket:
            return lie_bracket(*expr.with, evaluate_witness(*expr.child, seed));
    }
    throw std::logic_error("evaluate_witness: bad op");
}

struct AmpleWitnessOptions {
    int jet_order = 6;
    int max_doublings = 4;
};

/// Result of the constructive local-ampleness search: mu lies in the Lie
/// ideal generated by the seed (chain recorded), f is a local parameter,
/// and mu(f)(P) = value != 0.
struct AmpleWitness {
    bool found = false;
    std::optional<VectorField> mu;
    std::optional<QuotientElement> f;
    int parameter_index = -1; // index into chart.free_cols
    Rational value;
    WitnessExpr chain;
    int jet_order_used = 0;
    std::string message;
};

/// ad-iteration from the jet expansion: read the lowest homogeneous part of
/// the seed's image in Der k[[t]], pick a monomial t^k in its first nonzero
/// component (lexicographically smallest exponent vector), and apply
/// ad(tau_1)^{k_1} ... ad(tau_s)^{k_s}. The postcondition is re-verified
/// numerically at P; insufficient truncation doubles the order up to a cap.
inline AmpleWitness ample_witness(const Variety& X, const std::vector<Rational>& point,
                                  const VectorField& eta,
                                  AmpleWitnessOptions opts = {}) {
    if (eta.is_zero()) throw std::invalid_argument("ample_witness: zero seed field");
    LocalChart chart = local_chart(X, point);
    const int s = chart.s();
    AmpleWitness out;
    if (s == 0) {
        out.message = "variety has dimension 0 at this chart; no local parameters";
        return out;
    }

    int order = opts.jet_order;
    for (int attempt = 0; attempt <= opts.max_doublings; ++attempt, order *= 2) {
        std::vector<JetSeries> coords = jet_coordinates(X, chart, order);
        // eta(t_j) is just the free_cols[j] component of eta
        std::vector<JetSeries> images;
        images.reserve(static_cast<size_t>(s));
        for (int j = 0; j < s; ++j)
            images.push_back(substitute_series(
                eta.components()[chart.free_cols[static_cast<size_t>(j)]], coords, order));

        std::optional<int> val;
        for (const JetSeries& u : images) {
            std::optional<int> v = u.valuation();
            if (v && (!val || *v < *val)) val = v;
        }
        if (!val) continue; // truncation shows nothing; double the order

        int j0 = -1;
        Polynomial low(s);
        for (int j = 0; j < s; ++j) {
            Polynomial part = images[static_cast<size_t>(j)].homogeneous_part(*val);
            if (!part.is_zero()) {
                j0 = j;
                low = std::move(part);
                break;
            }
        }

        // variable-major (lexicographically greatest) monomial of the component
        const Term* pick = &low.terms().front();
        for (const Term& t : low.terms())
            if (Monomial::lex_greater(t.mono, pick->mono)) pick = &t;

        VectorField mu = eta;
        WitnessExpr chain = WitnessExpr::seed();
        for (int j = s - 1; j >= 0; --j) {
            for (int c = 0; c < pick->mono.exponent(j); ++c) {
                mu = lie_bracket(chart.tau[static_cast<size_t>(j)], mu);
                chain = WitnessExpr::bracket(chart.tau[static_cast<size_t>(j)], std::move(chain));
            }
        }

        QuotientElement f = X.element(chart.parameter(X, j0));
        Rational value = mu.apply(f).evaluate(point);
        if (!value.is_zero()) {
            out.found = true;
            out.mu = std::move(mu);
            out.f = std::move(f);
            out.parameter_index = j0;
            out.value = std::move(value);
            out.chain = std::move(chain);
            out.jet_order_used = order;
            return out;
        }
    }
    out.message = "no witness within the jet-order cap (order reached " +
                  std::to_string(order / 2) + ")";
    return out;
}

/// Constructive form of the no-nilpotents lemma: finds g with mu(mu(g)) != 0.
/// Searches monomials f in degree order (then lex) for mu(f) != 0 and
/// returns f itself or f^2 (mu(mu(f^2)) = 2 mu(f)^2 when mu(mu(f)) = 0).
struct SecondDerivativeWitness {
    QuotientElement f;
    QuotientElement g;
    QuotientElement mu_mu_g;
};

inline SecondDerivativeWitness nonzero_second_derivative(const VectorField& mu) {
    if (mu.is_zero()) throw std::invalid_argument("nonzero_second_derivative: zero field");
    Variety X = mu.variety();
    for (int d = 1; d <= 2; ++d) {
        std::vector<Monomial> cands = monomials_of_degree(X.n(), d);
        std::reverse(cands.begin(), cands.end()); // variable-major within a degree
        for (const Monomial& m : cands) {
            QuotientElement f = X.element(Polynomial::from_monomial(m, Rational(1)));
            if (mu.apply(f).is_zero()) continue;
            QuotientElement g = f;
            QuotientElement mmf = mu.apply(mu.apply(f));
            if (mmf.is_zero()) g = f * f;
            QuotientElement mmg = mu.apply(mu.apply(g));
            if (mmg.is_zero())
                throw std::logic_error(
                    "nonzero_second_derivative: 2 mu(f)^2 vanished; A has zero divisors");
            return {std::move(f), std::move(g), std::move(mmg)};
        }
    }
    // unreachable: mu(x_j) is the j-th component, and some component is nonzero
    throw std::logic_error("nonzero_second_derivative: no monomial with mu(f) != 0");
}

/// Pointwise refinement used by the global certificate: given mu(f)(P) != 0,
/// returns g in {f, f^2} with mu(mu(g))(P) != 0.
inline QuotientElement pointwise_second_derivative(const VectorField& mu,
                                                   const QuotientElement& f,
                                                   const std::vector<Rational>& point) {
    QuotientElement mmf = mu.apply(mu.apply(f));
    if (!mmf.evaluate(point).is_zero()) return f;
    QuotientElement g = f * f;
    if (mu.apply(mu.apply(g)).evaluate(point).is_zero())
        throw std::logic_error("pointwise_second_derivative: 2 mu(f)(P)^2 vanished");
    return g;
}

/// Record of the bracket identity behind the ideal-absorption lemma:
///   [p mu(mu(g)) mu, f tau] - [f p mu(mu(g)) mu, tau] - tau(f) p mu(mu(g)) mu
///     = p mu(f) mu(mu(g)) tau.
/// The identity is a theorem; failure signals an arithmetic bug.
struct BracketWitness {
    VectorField mu;
    VectorField tau;
    QuotientElement f, g, p;
    QuotientElement q; // p mu(f) mu(mu(g))
    VectorField product; // both sides, = q tau
};

inline BracketWitness simplicity_witness(const VectorField& mu, const VectorField& tau,
                                         const QuotientElement& f, const QuotientElement& g,
                                         const QuotientElement& p) {
    QuotientElement a = p * mu.apply(mu.apply(g));
    VectorField amu = a * mu;
    VectorField lhs = lie_bracket(amu, f * tau) - lie_bracket(f * amu, tau) -
                      (tau.apply(f) * a) * mu;
    QuotientElement q = p * mu.apply(f) * mu.apply(mu.apply(g));
    VectorField rhs = q * tau;
    if (lhs != rhs) throw std::logic_error("simplicity_witness: bracket identity failed");
    return {mu, tau, f, g, p, q, rhs};
}

/// Rational points of small height on X, nonsingular, in a deterministic
/// sweep order. Fallback sample cover for the global certificate.
inline std::vector<std::vector<Rational>> default_sample_points(const Variety& X,
                                                                size_t max_count) {
    static const long heights[][2] = {{0, 1}, {1, 1}, {-1, 1}, {2, 1}, {-2, 1},
                                      {1, 2}, {-1, 2}, {4, 1}, {-4, 1}};
    std::vector<std::vector<Rational>> found;
    std::vector<size_t> idx(static_cast<size_t>(X.n()), 0);
    const size_t base = sizeof(heights) / sizeof(heights[0]);
    while (true) {
        std::vector<Rational> p;
        for (size_t i : idx) p.emplace_back(heights[i][0], heights[i][1]);
        if (X.contains(p) && !X.is_singular_point(p)) {
            found.push_back(p);
            if (found.size() >= max_count) return found;
        }
        size_t pos = 0;
        while (pos < idx.size() && ++idx[pos] == base) idx[pos++] = 0;
        if (pos == idx.size()) break;
    }
    return found;
}

/// Machine-checkable global certificate: at each sample point the pipeline
/// produces a local generator u_P = mu_P(f) mu_P(mu_P(g)) in the ideal of A
/// cut out by the Lie ideal of the seed; 1 in <u_P...> + I certifies that
/// the Lie ideal is all of D relative to the sampled cover.
struct GlobalOneCertificate {
    bool found = false;
    std::vector<std::vector<Rational>> samples;
    std::vector<Polynomial> local_generators;    // u_P, reduced
    std::vector<Polynomial> combined;            // u_P list followed by gens(I)
    std::vector<Polynomial> cofactors;           // 1 = sum cofactors[i]*combined[i]
    std::vector<int> uncovered_coordinates;      // x_j vanishing on V(I + <u>)
    std::vector<AmpleWitness> witnesses;
    std::string message;
};

inline GlobalOneCertificate global_one_certificate(const Variety& X, const VectorField& seed,
                                                   std::vector<std::vector<Rational>> samples,
                                                   AmpleWitnessOptions opts = {}) {
    if (seed.is_zero()) throw std::invalid_argument("global_one_certificate: zero seed field");
    GlobalOneCertificate out;
    if (samples.empty()) samples = default_sample_points(X, 4);
    out.samples = samples;
    for (const auto& P : samples) {
        AmpleWitness w = ample_witness(X, P, seed, opts);
        if (!w.found) {
            out.message = "ample witness failed at a sample point: " + w.message;
            return out;
        }
        QuotientElement g = pointwise_second_derivative(*w.mu, *w.f, P);
        QuotientElement u = w.mu->apply(*w.f) * w.mu->apply(w.mu->apply(g));
        out.local_generators.push_back(u.rep());
        out.witnesses.push_back(std::move(w));
    }
    out.combined = out.local_generators;
    for (const Polynomial& f : X.generators()) out.combined.push_back(f);
    MembershipResult res = ideal_membership(Polynomial::constant(X.n(), Rational(1)),
                                            out.combined, /*want_cofactors=*/true);
    if (res.member) {
        out.found = true;
        out.cofactors = std::move(res.cofactors);
        return out;
    }
    // uncovered locus V(I + <u>): report the coordinates vanishing on it
    for (int j = 0; j < X.n(); ++j)
        if (radical_membership(Polynomial::variable(X.n(), j), out.combined))
            out.uncovered_coordinates.push_back(j);
    out.message = "1 is not in the generated ideal; the sampled cover misses a locus";
    return out;
}

/// eta(I_sing) subset I_sing for every computed generator eta of D.
inline bool singular_invariance_check(const Variety& X) {
    const std::vector<Polynomial>& minors = X.singular_minors();
    std::vector<Polynomial> combined = minors;
    for (const Polynomial& f : X.generators()) combined.push_back(f);
    DerivationModuleGens gens = derivation_module_generators(X);
    for (const VectorField& eta : gens.generators)
        for (const Polynomial& d : minors)
            if (!ideal_membership(eta.apply_raw(d), combined).member) return false;
    return true;
}

/// Membership of eta in J_i = {mu : mu(A) subset I_sing^i}: checked on the
/// coordinate functions (equivalent by the Leibniz rule). The i-th power
/// ideal is generated by i-fold products of the minors.
inline bool filtration_membership(const Variety& X, const VectorField& eta, int power) {
    if (power < 1) throw std::invalid_argument("filtration_membership: power must be >= 1");
    const std::vector<Polynomial>& minors = X.singular_minors();
    std::vector<Polynomial> combined;
    std::vector<size_t> pick(static_cast<size_t>(power), 0);
    if (!minors.empty()) {
        while (true) { // multisets of size `power` from the minors
            Polynomial prod = Polynomial::constant(X.n(), Rational(1));
            for (size_t i : pick) prod = prod * minors[i];
            combined.push_back(X.reduce(prod));
            size_t pos = pick.size();
            while (pos > 0 && pick[pos - 1] == minors.size() - 1) --pos;
            if (pos == 0) break;
            size_t v = ++pick[pos - 1];
            for (size_t t = pos; t < pick.size(); ++t) pick[t] = v;
        }
    }
    for (const Polynomial& f : X.generators()) combined.push_back(f);
    for (int j = 0; j < X.n(); ++j)
        if (!ideal_membership(eta.apply_raw(Polynomial::variable(X.n(), j)), combined).member)
            return false;
    return true;
}

/// Breadth-first search for a function in the D-module generated by g that
/// does not vanish at P. The alphabet is {apply a computed generator,
/// multiply by a coordinate}; words up to max_length, first hit wins in
/// search order.
struct FunctionModuleWitness {
    bool found = false;
    std::optional<QuotientElement> f;
    std::vector<std::string> word; // outermost operation last
    std::string message;
};

inline FunctionModuleWitness function_module_witness(const Variety& X, const QuotientElement& g,
                                                     const std::vector<Rational>& point,
                                                     int max_length = 4) {
    if (g.is_constant())
        throw std::invalid_argument("function_module_witness: g must be non-constant");
    DerivationModuleGens gens = derivation_module_generators(X);
    FunctionModuleWitness out;

    struct Node {
        QuotientElement f;
        std::vector<std::string> word;
    };
    std::deque<Node> queue{{g, {}}};
    std::set<std::string> seen{format_polynomial(g.rep(), X.names())};
    while (!queue.empty()) {
        Node cur = std::move(queue.front());
        queue.pop_front();
        if (!cur.f.evaluate(point).is_zero()) {
            out.found = true;
            out.f = std::move(cur.f);
            out.word = std::move(cur.word);
            return out;
        }
        if (static_cast<int>(cur.word.size()) >= max_length) continue;
        for (size_t t = 0; t < gens.generators.size(); ++t) {
            Node next{gens.generators[t].apply(cur.f), cur.word};
            next.word.push_back("eta" + std::to_string(t + 1));
            if (next.f.is_zero()) continue;
            if (seen.insert(format_polynomial(next.f.rep(), X.names())).second)
                queue.push_back(std::move(next));
        }
        for (int j = 0; j < X.n(); ++j) {
            Node next{X.coordinate(j) * cur.f, cur.word};
            next.word.push_back(X.names()[static_cast<size_t>(j)] + "*");
            if (next.f.is_zero()) continue;
            if (seen.insert(format_polynomial(next.f.rep(), X.names())).second)
                queue.push_back(std::move(next));
        }
    }
    out.message = "word-length bound exhausted";
    return out;
}

} // namespace liefield
