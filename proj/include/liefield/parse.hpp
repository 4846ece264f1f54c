#pragma once

#include <cctype>
#include <cstddef>
#include <exception>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "polynomial.hpp"

namespace liefield {

struct SourceSpan {
    size_t start = 0;
    size_t end = 0;
};

enum class ParseErrorKind { unexpected_token, unknown_variable, bad_exponent, empty_input };

class ParseError : public std::exception {
public:
    ParseError(SourceSpan span, ParseErrorKind kind, std::string message)
        : span_(span), kind_(kind), message_(std::move(message)) {}

    const char* what() const noexcept override { return message_.c_str(); }
    SourceSpan span() const { return span_; }
    ParseErrorKind kind() const { return kind_; }

private:
    SourceSpan span_;
    ParseErrorKind kind_;
    std::string message_;
};

namespace detail {

enum class Tok { integer, name, plus, minus, star, caret, slash, lparen, rparen, comma, end };

struct Token {
    Tok kind;
    SourceSpan span;
    std::string text;
};

inline std::vector<Token> tokenize(std::string_view src) {
    std::vector<Token> out;
    size_t i = 0;
    while (i < src.size()) {
        char c = src[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        size_t start = i;
        if (std::isdigit(static_cast<unsigned char>(c))) {
            while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) ++i;
            out.push_back({Tok::integer, {start, i}, std::string(src.substr(start, i - start))});
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            while (i < src.size() &&
                   (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '_'))
                ++i;
            out.push_back({Tok::name, {start, i}, std::string(src.substr(start, i - start))});
            continue;
        }
        Tok k;
        switch (c) {
            case '+': k = Tok::plus; break;
            case '-': k = Tok::minus; break;
            case '*': k = Tok::star; break;
            case '^': k = Tok::caret; break;
            case '/': k = Tok::slash; break;
            case '(': k = Tok::lparen; break;
            case ')': k = Tok::rparen; break;
            case ',': k = Tok::comma; break;
            default:
                throw ParseError({start, start + 1}, ParseErrorKind::unexpected_token,
                                 "unexpected character '" + std::string(1, c) + "'");
        }
        ++i;
        out.push_back({k, {start, i}, std::string(1, c)});
    }
    out.push_back({Tok::end, {src.size(), src.size()}, ""});
    return out;
}

/// Recursive-descent parser. Precedence: ^ > unary - > * > binary + -.
/// `^` is right-associative and takes non-negative integer-literal exponents.
class PolyParser {
public:
    PolyParser(std::string_view src, const std::vector<std::string>& variables)
        : toks_(tokenize(src)), vars_(variables) {}

    Polynomial parse_expression() {
        Polynomial p = parse_term();
        while (peek().kind == Tok::plus || peek().kind == Tok::minus) {
            bool neg = next().kind == Tok::minus;
            Polynomial q = parse_term();
            p = neg ? p - q : p + q;
        }
        return p;
    }

    Polynomial parse_full() {
        if (peek().kind == Tok::end)
            throw ParseError(peek().span, ParseErrorKind::empty_input, "empty input");
        Polynomial p = parse_expression();
        expect_end();
        return p;
    }

    std::vector<Polynomial> parse_component_list() {
        if (peek().kind == Tok::end)
            throw ParseError(peek().span, ParseErrorKind::empty_input, "empty input");
        std::vector<Polynomial> comps;
        comps.push_back(parse_expression());
        while (peek().kind == Tok::comma) {
            next();
            comps.push_back(parse_expression());
        }
        expect_end();
        return comps;
    }

private:
    Polynomial parse_term() {
        Polynomial p = parse_unary();
        while (peek().kind == Tok::star) {
            next();
            p = p * parse_unary();
        }
        return p;
    }

    Polynomial parse_unary() {
        if (peek().kind == Tok::minus) {
            next();
            return -parse_unary();
        }
        return parse_power();
    }

    Polynomial parse_power() {
        Polynomial base = parse_atom();
        if (peek().kind == Tok::caret) {
            next();
            return base.pow(parse_exponent());
        }
        return base;
    }

    // exponent := integer ('^' exponent)?   (right-associative literal tower)
    unsigned parse_exponent() {
        const Token& t = peek();
        if (t.kind != Tok::integer) {
            if (t.kind == Tok::minus)
                throw ParseError(t.span, ParseErrorKind::bad_exponent,
                                 "exponent must be a non-negative integer literal");
            throw ParseError(t.span, ParseErrorKind::bad_exponent,
                             "expected integer exponent, got '" + t.text + "'");
        }
        next();
        unsigned long base = 0;
        try {
            base = std::stoul(t.text);
        } catch (const std::exception&) {
            throw ParseError(t.span, ParseErrorKind::bad_exponent, "exponent out of range");
        }
        if (peek().kind == Tok::caret) {
            next();
            unsigned e = parse_exponent();
            unsigned long r = 1;
            for (unsigned k = 0; k < e; ++k) {
                r *= base;
                if (r > 100000)
                    throw ParseError(t.span, ParseErrorKind::bad_exponent,
                                     "exponent out of range");
            }
            base = r;
        }
        if (base > 100000)
            throw ParseError(t.span, ParseErrorKind::bad_exponent, "exponent out of range");
        return static_cast<unsigned>(base);
    }

    Polynomial parse_atom() {
        const Token& t = peek();
        int n = static_cast<int>(vars_.size());
        switch (t.kind) {
            case Tok::integer: {
                next();
                Integer num(t.text);
                if (peek().kind == Tok::slash) {
                    next();
                    const Token& d = peek();
                    if (d.kind != Tok::integer)
                        throw ParseError(d.span, ParseErrorKind::unexpected_token,
                                         "expected integer denominator");
                    next();
                    Integer den(d.text);
                    if (den == 0)
                        throw ParseError(d.span, ParseErrorKind::unexpected_token,
                                         "zero denominator");
                    return Polynomial::constant(n, Rational(num, den));
                }
                return Polynomial::constant(n, Rational(num));
            }
            case Tok::name: {
                next();
                for (size_t i = 0; i < vars_.size(); ++i)
                    if (vars_[i] == t.text)
                        return Polynomial::variable(n, static_cast<int>(i));
                throw ParseError(t.span, ParseErrorKind::unknown_variable,
                                 "unknown variable '" + t.text + "'");
            }
            case Tok::lparen: {
                next();
                Polynomial p = parse_expression();
                if (peek().kind != Tok::rparen)
                    throw ParseError(peek().span, ParseErrorKind::unexpected_token,
                                     "expected ')'");
                next();
                return p;
            }
            default:
                throw ParseError(t.span, ParseErrorKind::unexpected_token,
                                 "unexpected '" + (t.kind == Tok::end ? "end of input" : t.text) +
                                     "'");
        }
    }

    const Token& peek() const { return toks_[pos_]; }
    const Token& next() { return toks_[pos_++]; }
    void expect_end() {
        if (peek().kind != Tok::end)
            throw ParseError(peek().span, ParseErrorKind::unexpected_token,
                             "unexpected trailing '" + peek().text + "'");
    }

    std::vector<Token> toks_;
    size_t pos_ = 0;
    const std::vector<std::string>& vars_;
};

} // namespace detail

inline Polynomial parse_polynomial(std::string_view text, const std::vector<std::string>& variables) {
    if (variables.empty()) throw std::invalid_argument("parse_polynomial: no variables declared");
    return detail::PolyParser(text, variables).parse_full();
}

/// Comma-separated component list "g1, g2, ..., gn", one polynomial per variable.
inline std::vector<Polynomial> parse_vector_field(std::string_view text,
                                                  const std::vector<std::string>& variables) {
    if (variables.empty()) throw std::invalid_argument("parse_vector_field: no variables declared");
    std::vector<Polynomial> comps = detail::PolyParser(text, variables).parse_component_list();
    if (comps.size() != variables.size())
        throw ParseError({0, text.size()}, ParseErrorKind::unexpected_token,
                         "expected " + std::to_string(variables.size()) + " components, got " +
                             std::to_string(comps.size()));
    return comps;
}

inline std::vector<std::string> default_variable_names(int n) {
    std::vector<std::string> v;
    v.reserve(static_cast<size_t>(n));
    for (int i = 1; i <= n; ++i) v.push_back("x" + std::to_string(i));
    return v;
}

/// Canonical text form: terms in descending grevlex, explicit '*' and '^',
/// unit coefficients elided. parse_polynomial(format_polynomial(p)) == p.
inline std::string format_polynomial(const Polynomial& p, const std::vector<std::string>& names) {
    if (p.is_zero()) return "0";
    if (static_cast<int>(names.size()) != p.nvars())
        throw std::invalid_argument("format_polynomial: name count mismatch");
    std::ostringstream os;
    bool first = true;
    for (const Term& t : p.terms()) {
        Rational c = t.coef;
        if (first) {
            if (c.sign() < 0) {
                os << "-";
                c = -c;
            }
            first = false;
        } else {
            os << (c.sign() < 0 ? " - " : " + ");
            if (c.sign() < 0) c = -c;
        }
        bool printed_coef = false;
        if (!c.is_one() || t.mono.is_one()) {
            os << c.str();
            printed_coef = true;
        }
        bool any_var = false;
        for (int i = 0; i < p.nvars(); ++i) {
            int e = t.mono.exponent(i);
            if (e == 0) continue;
            if (printed_coef || any_var) os << "*";
            os << names[static_cast<size_t>(i)];
            if (e > 1) os << "^" << e;
            any_var = true;
        }
    }
    return os.str();
}

inline std::string format_polynomial(const Polynomial& p) {
    return format_polynomial(p, default_variable_names(p.nvars()));
}

inline std::string format_vector_field(const std::vector<Polynomial>& comps,
                                       const std::vector<std::string>& names) {
    std::ostringstream os;
    for (size_t j = 0; j < comps.size(); ++j) {
        if (j > 0) os << ", ";
        os << format_polynomial(comps[j], names);
    }
    return os.str();
}

/// Parses "c1,c2,...,cn" as exact rationals.
inline std::vector<Rational> parse_point(std::string_view text) {
    std::vector<Rational> out;
    std::string cur;
    auto flush = [&]() {
        std::string s = cur;
        size_t a = s.find_first_not_of(" \t");
        size_t b = s.find_last_not_of(" \t");
        if (a == std::string::npos)
            throw std::invalid_argument("parse_point: empty coordinate");
        out.push_back(Rational::from_string(s.substr(a, b - a + 1)));
        cur.clear();
    };
    for (char c : text) {
        if (c == ',')
            flush();
        else
            cur += c;
    }
    flush();
    return out;
}

} // namespace liefield
