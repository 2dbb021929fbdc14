#pragma once

// Text and JSON forms of planar polynomial maps.
//
//   map      := "(" expr "," expr ")"
//   expr     := term (("+" | "-") term)*
//   term     := factor (("*" | "/") factor)*
//   factor   := ("-")? base ("^" nat)?
//   base     := "x" | "y" | nat | "(" expr ")"
//
// Division is allowed only by subexpressions that fold to a nonzero constant.
// Whitespace is ignored everywhere.

#include <cctype>
#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "polymap.hpp"

namespace dmyq {

enum class ParseErrorKind { Syntax, NonPolynomial, DegreeCapExceeded, NonIntegerExponent, DivisionByZero };

inline const char* to_string(ParseErrorKind k) {
    switch (k) {
        case ParseErrorKind::Syntax: return "SyntaxError";
        case ParseErrorKind::NonPolynomial: return "NonPolynomial";
        case ParseErrorKind::DegreeCapExceeded: return "DegreeCapExceeded";
        case ParseErrorKind::NonIntegerExponent: return "NonIntegerExponent";
        case ParseErrorKind::DivisionByZero: return "DivisionByZero";
    }
    return "?";
}

class ParseError : public std::runtime_error {
public:
    ParseError(ParseErrorKind kind, std::size_t position, std::string expected)
        : std::runtime_error(std::string(dmyq::to_string(kind)) + " at position " + std::to_string(position) + ": " +
                             expected),
          kind_(kind),
          position_(position),
          expected_(std::move(expected)) {}

    [[nodiscard]] ParseErrorKind kind() const { return kind_; }
    [[nodiscard]] std::size_t position() const { return position_; }
    [[nodiscard]] const std::string& expected() const { return expected_; }

private:
    ParseErrorKind kind_;
    std::size_t position_;
    std::string expected_;
};

namespace detail {

class MapParser {
public:
    MapParser(std::string_view text, int degree_cap) : text_(text), cap_(degree_cap) {}

    PolyMap parse_map() {
        expect('(', "'('");
        Poly2 a = expr();
        expect(',', "','");
        Poly2 b = expr();
        expect(')', "')'");
        skip_ws();
        if (pos_ != text_.size()) fail(ParseErrorKind::Syntax, "end of input");
        return {std::move(a), std::move(b), std::string(text_)};
    }

    Poly2 parse_single() {
        Poly2 p = expr();
        skip_ws();
        if (pos_ != text_.size()) fail(ParseErrorKind::Syntax, "end of input");
        return p;
    }

private:
    [[noreturn]] void fail(ParseErrorKind kind, std::string expected) const {
        throw ParseError(kind, pos_, std::move(expected));
    }
    [[noreturn]] void fail_at(std::size_t at, ParseErrorKind kind, std::string expected) const {
        throw ParseError(kind, at, std::move(expected));
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    void expect(char c, const char* what) {
        if (peek() != c) fail(ParseErrorKind::Syntax, what);
        ++pos_;
    }

    void check_cap(const Poly2& p, std::size_t at) const {
        if (p.degree() > cap_)
            fail_at(at, ParseErrorKind::DegreeCapExceeded,
                    "degree at most " + std::to_string(cap_) + " (got " + std::to_string(p.degree()) + ")");
    }

    Poly2 expr() {
        Poly2 acc = term();
        for (;;) {
            char c = peek();
            if (c == '+') {
                ++pos_;
                acc = acc + term();
            } else if (c == '-') {
                ++pos_;
                acc = acc - term();
            } else {
                return acc;
            }
        }
    }

    Poly2 term() {
        std::size_t start = (skip_ws(), pos_);
        Poly2 acc = factor();
        for (;;) {
            char c = peek();
            if (c == '*') {
                ++pos_;
                acc = acc * factor();
                check_cap(acc, start);
            } else if (c == '/') {
                ++pos_;
                std::size_t at = (skip_ws(), pos_);
                Poly2 d = factor();
                if (d.degree() > 0) fail_at(at, ParseErrorKind::NonPolynomial, "constant divisor");
                if (d.is_zero()) fail_at(at, ParseErrorKind::DivisionByZero, "nonzero divisor");
                acc = Rat(1 / d.coeff({0, 0})) * acc;
            } else {
                return acc;
            }
        }
    }

    Poly2 factor() {
        bool negate = false;
        if (peek() == '-') {
            ++pos_;
            negate = true;
        }
        std::size_t start = (skip_ws(), pos_);
        Poly2 b = base();
        if (peek() == '^') {
            ++pos_;
            char c = peek();
            if (c == '-' || c == '(' || c == '.')
                fail(ParseErrorKind::NonIntegerExponent, "nonnegative integer exponent");
            if (!std::isdigit(static_cast<unsigned char>(c))) fail(ParseErrorKind::Syntax, "integer exponent");
            std::size_t exp_at = pos_;
            Int e = nat();
            if (pos_ < text_.size() && text_[pos_] == '.')
                fail_at(exp_at, ParseErrorKind::NonIntegerExponent, "nonnegative integer exponent");
            if (e > 65536) fail_at(exp_at, ParseErrorKind::Syntax, "exponent at most 65536");
            unsigned n = static_cast<unsigned>(e.get_ui());
            if (b.degree() > 0 && static_cast<long>(b.degree()) * n > cap_)
                fail_at(start, ParseErrorKind::DegreeCapExceeded, "degree at most " + std::to_string(cap_));
            b = b.pow(n);
        }
        return negate ? -b : b;
    }

    Poly2 base() {
        char c = peek();
        if (c == 'x') {
            ++pos_;
            return Poly2::x();
        }
        if (c == 'y') {
            ++pos_;
            return Poly2::y();
        }
        if (c == '(') {
            ++pos_;
            Poly2 inner = expr();
            expect(')', "')'");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t at = pos_;
            Int n = nat();
            if (pos_ < text_.size() && text_[pos_] == '.')
                fail_at(at, ParseErrorKind::Syntax, "integer or fraction literal (no decimals)");
            return Poly2::constant(Rat(n));
        }
        fail(ParseErrorKind::Syntax, "'x', 'y', number or '('");
    }

    Int nat() {
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        return Int(std::string(text_.substr(start, pos_ - start)), 10);
    }

    std::string_view text_;
    int cap_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline PolyMap parse_map(std::string_view text, int degree_cap = kDefaultDegreeCap) {
    return detail::MapParser(text, degree_cap).parse_map();
}

inline Poly2 parse_poly(std::string_view text, int degree_cap = kDefaultDegreeCap) {
    return detail::MapParser(text, degree_cap).parse_single();
}

inline std::string format_monomial(const Exp2& e) {
    std::string out;
    auto var = [&out](char v, int k) {
        if (k == 0) return;
        if (!out.empty()) out += '*';
        out += v;
        if (k > 1) out += '^' + std::to_string(k);
    };
    var('x', e.i);
    var('y', e.j);
    return out;
}

/// Canonical text: graded-lex order, explicit '*', coefficients as num/den.
inline std::string format_poly(const Poly2& f) {
    if (f.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [e, c] : f.terms()) {
        bool negative = sgn(c) < 0;
        Rat mag = abs(c);
        if (first)
            out += negative ? "-" : "";
        else
            out += negative ? " - " : " + ";
        first = false;
        std::string mono = format_monomial(e);
        if (mono.empty())
            out += to_string(mag);
        else if (mag == 1)
            out += mono;
        else
            out += to_string(mag) + "*" + mono;
    }
    return out;
}

inline std::string format_map(const PolyMap& F) { return "(" + format_poly(F.f1) + ", " + format_poly(F.f2) + ")"; }

inline std::string format_poly1(const Poly1& p, char var = 'u') {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        const auto& [k, c] = *it;
        bool negative = sgn(c) < 0;
        Rat mag = abs(c);
        out += first ? (negative ? "-" : "") : (negative ? " - " : " + ");
        first = false;
        std::string mono = k == 0 ? "" : (k == 1 ? std::string(1, var) : std::string(1, var) + "^" + std::to_string(k));
        if (mono.empty())
            out += to_string(mag);
        else if (mag == 1)
            out += mono;
        else
            out += to_string(mag) + "*" + mono;
    }
    return out;
}

// ---------------------------------------------------------------------------
// JSON

struct SchemaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline nlohmann::json to_json(const Poly2& f) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [e, c] : f.terms()) arr.push_back({e.i, e.j, to_string(c)});
    return arr;
}

inline nlohmann::json to_json(const Poly1& p) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [k, c] : p.terms()) arr.push_back({k, to_string(c)});
    return arr;
}

inline nlohmann::json to_json(const PolyMap& F) { return {{"f1", to_json(F.f1)}, {"f2", to_json(F.f2)}}; }

inline nlohmann::json to_json(const RatMat& M) {
    return nlohmann::json::array({nlohmann::json::array({to_string(M(0, 0)), to_string(M(0, 1))}),
                                  nlohmann::json::array({to_string(M(1, 0)), to_string(M(1, 1))})});
}

inline Rat rat_from_json(const nlohmann::json& j) {
    if (!j.is_string()) throw SchemaError("coefficient must be a \"num/den\" string");
    try {
        return parse_rat(j.get<std::string>());
    } catch (const std::exception& e) {
        throw SchemaError(e.what());
    }
}

inline Poly2 poly2_from_json(const nlohmann::json& arr, int degree_cap = kDefaultDegreeCap) {
    if (!arr.is_array()) throw SchemaError("polynomial must be an array of [i, j, \"num/den\"] triplets");
    Poly2 p;
    for (const auto& t : arr) {
        if (!t.is_array() || t.size() != 3 || !t[0].is_number_integer() || !t[1].is_number_integer())
            throw SchemaError("term must be [i, j, \"num/den\"] with integer exponents");
        long i = t[0].get<long>(), j = t[1].get<long>();
        if (i < 0 || j < 0) throw SchemaError("exponents must be nonnegative");
        if (i + j > degree_cap) throw SchemaError("term degree exceeds cap " + std::to_string(degree_cap));
        Exp2 e{static_cast<int>(i), static_cast<int>(j)};
        if (!is_zero(p.coeff(e))) throw SchemaError("duplicate exponent pair");
        Rat c = rat_from_json(t[2]);
        if (is_zero(c)) throw SchemaError("zero coefficients must not be stored");
        p.add_term(e, c);
    }
    return p;
}

inline PolyMap polymap_from_json(const nlohmann::json& j, int degree_cap = kDefaultDegreeCap) {
    if (!j.is_object() || !j.contains("f1") || !j.contains("f2")) throw SchemaError("map must have \"f1\" and \"f2\"");
    return {poly2_from_json(j.at("f1"), degree_cap), poly2_from_json(j.at("f2"), degree_cap)};
}

inline PolyMap polymap_from_json(std::string_view text, int degree_cap = kDefaultDegreeCap) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw SchemaError(e.what());
    }
    return polymap_from_json(j, degree_cap);
}

inline PolyMap polymap_from_json(const std::string& text, int degree_cap = kDefaultDegreeCap) {
    return polymap_from_json(std::string_view(text), degree_cap);
}

}  // namespace dmyq
