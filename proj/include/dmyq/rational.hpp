#pragma once

// Exact rational scalars backed by GMP, plus the Gaussian-rational pair used
// for complex (z, conj z) coefficients.

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dmyq {

/// Arbitrary precision rational; mpq_class keeps values canonical after every
/// arithmetic operation (lowest terms, positive denominator).
using Rat = mpq_class;
using Int = mpz_class;

inline Rat rat(long num, long den = 1) {
    if (den == 0) throw std::domain_error("rat: zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline Rat rat(const Int& num, const Int& den) {
    if (den == 0) throw std::domain_error("rat: zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline bool is_zero(const Rat& r) { return sgn(r) == 0; }

/// "num/den", or "num" when the denominator is one.
inline std::string to_string(const Rat& r) { return r.get_str(10); }

/// Parses "num", "-num" or "num/den". Throws std::invalid_argument.
inline Rat parse_rat(std::string_view text) {
    if (text.empty()) throw std::invalid_argument("empty rational");
    std::size_t start = (text.front() == '-' || text.front() == '+') ? 1 : 0;
    bool seen_slash = false;
    bool digit_before = false;
    bool digit_after = false;
    for (std::size_t k = start; k < text.size(); ++k) {
        char c = text[k];
        if (c == '/') {
            if (seen_slash) throw std::invalid_argument("malformed rational: " + std::string(text));
            seen_slash = true;
        } else if (c >= '0' && c <= '9') {
            (seen_slash ? digit_after : digit_before) = true;
        } else {
            throw std::invalid_argument("malformed rational: " + std::string(text));
        }
    }
    if (!digit_before || (seen_slash && !digit_after))
        throw std::invalid_argument("malformed rational: " + std::string(text));
    std::string s(text.front() == '+' ? text.substr(1) : text);
    Rat r;
    if (r.set_str(s, 10) != 0) throw std::invalid_argument("malformed rational: " + s);
    if (r.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
    r.canonicalize();
    return r;
}

inline double to_double(const Rat& r) { return r.get_d(); }

/// Nearest rational with denominator 2^bits. Exact round trip for doubles whose
/// binary expansion fits.
inline Rat dyadic_round(double v, unsigned bits = 40) {
    if (!std::isfinite(v)) throw std::domain_error("dyadic_round: non-finite value");
    // Scaling by a power of two is exact, so only the rounding step is lossy.
    double scaled = std::nearbyint(std::ldexp(v, static_cast<int>(bits)));
    Int num;
    mpz_set_d(num.get_mpz_t(), scaled);
    Int scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 2, bits);
    return rat(num, scale);
}

/// Simplest rational (smallest denominator) in the closed interval [lo, hi],
/// found by the continued-fraction descent of the Stern-Brocot tree.
inline Rat simplest_between(Rat lo, Rat hi) {
    if (lo > hi) std::swap(lo, hi);
    if (lo <= 0 && hi >= 0) return Rat(0);
    bool negative = hi < 0;
    if (negative) {
        Rat t = -lo;
        lo = -hi;
        hi = t;
    }
    // Both endpoints positive from here on.
    Int fl;
    mpz_fdiv_q(fl.get_mpz_t(), lo.get_num_mpz_t(), lo.get_den_mpz_t());
    Rat result;
    if (Rat(fl) == lo) {
        result = Rat(fl);
    } else if (Rat(fl + 1) <= hi) {
        result = Rat(fl + 1);
    } else {
        Rat frac_lo = lo - Rat(fl);
        Rat frac_hi = hi - Rat(fl);
        // Reciprocal swaps the interval ends.
        Rat inner = simplest_between(1 / frac_hi, 1 / frac_lo);
        result = Rat(fl) + 1 / inner;
    }
    result.canonicalize();
    return negative ? Rat(-result) : result;
}

/// Exact a + b i with rational parts.
struct GaussRat {
    Rat re;
    Rat im;

    GaussRat() = default;
    GaussRat(Rat r, Rat i = Rat(0)) : re(std::move(r)), im(std::move(i)) {}

    friend GaussRat operator+(const GaussRat& a, const GaussRat& b) { return {a.re + b.re, a.im + b.im}; }
    friend GaussRat operator-(const GaussRat& a, const GaussRat& b) { return {a.re - b.re, a.im - b.im}; }
    friend GaussRat operator-(const GaussRat& a) { return {-a.re, -a.im}; }
    friend GaussRat operator*(const GaussRat& a, const GaussRat& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend bool operator==(const GaussRat& a, const GaussRat& b) { return a.re == b.re && a.im == b.im; }

    GaussRat& operator+=(const GaussRat& o) { return *this = *this + o; }
    GaussRat& operator-=(const GaussRat& o) { return *this = *this - o; }
    GaussRat& operator*=(const GaussRat& o) { return *this = *this * o; }

    [[nodiscard]] GaussRat conj() const { return {re, -im}; }
    [[nodiscard]] bool is_real() const { return sgn(im) == 0; }
};

inline bool is_zero(const GaussRat& g) { return sgn(g.re) == 0 && sgn(g.im) == 0; }
inline bool is_zero(double v) { return v == 0.0; }

inline std::string to_string(const GaussRat& g) {
    if (is_zero(g.im)) return to_string(g.re);
    if (is_zero(g.re)) return to_string(g.im) + "i";
    std::string im = to_string(abs(g.im));
    return to_string(g.re) + (sgn(g.im) < 0 ? " - " : " + ") + im + "i";
}

}  // namespace dmyq
