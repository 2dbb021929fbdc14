#pragma once

// Sparse polynomials in one and two variables.
//
// Bivariate terms are keyed by exponent pairs (i, j) for x^i y^j and kept in
// graded-lexicographic order: total degree ascending, then x-power descending.
// Wherever an algorithm refers to the "first monomial" of a polynomial it means
// the first key in this order. Zero coefficients are never stored, and the zero
// polynomial has degree -1.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <type_traits>
#include <utility>
#include <vector>

#include "matrix.hpp"
#include "rational.hpp"

namespace dmyq {

struct Exp2 {
    int i = 0;  // power of x
    int j = 0;  // power of y

    [[nodiscard]] int degree() const { return i + j; }
    friend bool operator==(const Exp2&, const Exp2&) = default;
};

struct GradedLex {
    bool operator()(const Exp2& a, const Exp2& b) const {
        if (a.degree() != b.degree()) return a.degree() < b.degree();
        return a.i > b.i;
    }
};

enum class Var { X, Y };

template <class C>
class SparsePoly2 {
public:
    using Coeff = C;
    using Terms = std::map<Exp2, C, GradedLex>;

    SparsePoly2() = default;

    static SparsePoly2 constant(const C& c) { return monomial(c, 0, 0); }

    static SparsePoly2 monomial(const C& c, int i, int j) {
        if (i < 0 || j < 0) throw std::invalid_argument("monomial: negative exponent");
        SparsePoly2 p;
        p.add_term({i, j}, c);
        return p;
    }

    static SparsePoly2 x() { return monomial(C(1), 1, 0); }
    static SparsePoly2 y() { return monomial(C(1), 0, 1); }

    /// Accumulates c into the coefficient of e, pruning an exact zero.
    void add_term(Exp2 e, const C& c) {
        if (dmyq::is_zero(c)) return;
        auto [it, inserted] = terms_.try_emplace(e, c);
        if (!inserted) {
            it->second = it->second + c;
            if (dmyq::is_zero(it->second)) terms_.erase(it);
        }
    }

    [[nodiscard]] const Terms& terms() const { return terms_; }
    [[nodiscard]] bool is_zero() const { return terms_.empty(); }
    [[nodiscard]] std::size_t size() const { return terms_.size(); }

    [[nodiscard]] int degree() const {
        int d = -1;
        for (const auto& [e, c] : terms_) d = std::max(d, e.degree());
        return d;
    }

    [[nodiscard]] int min_degree() const { return terms_.empty() ? -1 : terms_.begin()->first.degree(); }

    [[nodiscard]] C coeff(Exp2 e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? C(0) : it->second;
    }

    [[nodiscard]] std::optional<Exp2> first_monomial() const {
        if (terms_.empty()) return std::nullopt;
        return terms_.begin()->first;
    }

    friend SparsePoly2 operator+(SparsePoly2 a, const SparsePoly2& b) {
        for (const auto& [e, c] : b.terms_) a.add_term(e, c);
        return a;
    }

    friend SparsePoly2 operator-(SparsePoly2 a, const SparsePoly2& b) {
        for (const auto& [e, c] : b.terms_) a.add_term(e, C(-c));
        return a;
    }

    friend SparsePoly2 operator-(const SparsePoly2& a) {
        SparsePoly2 r;
        for (const auto& [e, c] : a.terms_) r.terms_.emplace(e, C(-c));
        return r;
    }

    friend SparsePoly2 operator*(const SparsePoly2& a, const SparsePoly2& b) {
        SparsePoly2 r;
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) r.add_term({ea.i + eb.i, ea.j + eb.j}, C(ca * cb));
        return r;
    }

    friend SparsePoly2 operator*(const C& s, const SparsePoly2& a) {
        SparsePoly2 r;
        if (dmyq::is_zero(s)) return r;
        for (const auto& [e, c] : a.terms_) r.add_term(e, C(s * c));
        return r;
    }

    friend bool operator==(const SparsePoly2& a, const SparsePoly2& b) { return a.terms_ == b.terms_; }

    [[nodiscard]] SparsePoly2 pow(unsigned n) const {
        SparsePoly2 result = constant(C(1));
        SparsePoly2 base = *this;
        while (n > 0) {
            if (n & 1u) result = result * base;
            n >>= 1u;
            if (n > 0) base = base * base;
        }
        return result;
    }

private:
    Terms terms_;
};

using Poly2 = SparsePoly2<Rat>;
using FloatPoly2 = SparsePoly2<double>;
/// Coefficients c_pq of f(z, conj z) = sum c_pq z^p conj(z)^q; keys are (p, q).
using ComplexCoeffs = SparsePoly2<GaussRat>;

/// Univariate polynomial, sparse by exponent.
class Poly1 {
public:
    using Terms = std::map<int, Rat>;

    Poly1() = default;

    static Poly1 constant(const Rat& c) { return monomial(c, 0); }
    static Poly1 monomial(const Rat& c, int k) {
        if (k < 0) throw std::invalid_argument("Poly1::monomial: negative exponent");
        Poly1 p;
        p.add_term(k, c);
        return p;
    }
    static Poly1 u() { return monomial(Rat(1), 1); }

    /// Coefficients listed from degree 0 upwards.
    static Poly1 from_coeffs(const std::vector<Rat>& ascending) {
        Poly1 p;
        for (std::size_t k = 0; k < ascending.size(); ++k) p.add_term(static_cast<int>(k), ascending[k]);
        return p;
    }

    void add_term(int k, const Rat& c) {
        if (dmyq::is_zero(c)) return;
        auto [it, inserted] = terms_.try_emplace(k, c);
        if (!inserted) {
            it->second += c;
            if (dmyq::is_zero(it->second)) terms_.erase(it);
        }
    }

    [[nodiscard]] const Terms& terms() const { return terms_; }
    [[nodiscard]] bool is_zero() const { return terms_.empty(); }
    [[nodiscard]] int degree() const { return terms_.empty() ? -1 : terms_.rbegin()->first; }
    [[nodiscard]] int min_degree() const { return terms_.empty() ? -1 : terms_.begin()->first; }
    [[nodiscard]] Rat leading_coeff() const { return terms_.empty() ? Rat(0) : terms_.rbegin()->second; }
    [[nodiscard]] Rat coeff(int k) const {
        auto it = terms_.find(k);
        return it == terms_.end() ? Rat(0) : it->second;
    }

    friend Poly1 operator+(Poly1 a, const Poly1& b) {
        for (const auto& [k, c] : b.terms_) a.add_term(k, c);
        return a;
    }
    friend Poly1 operator-(Poly1 a, const Poly1& b) {
        for (const auto& [k, c] : b.terms_) a.add_term(k, Rat(-c));
        return a;
    }
    friend Poly1 operator-(const Poly1& a) { return Rat(-1) * a; }
    friend Poly1 operator*(const Poly1& a, const Poly1& b) {
        Poly1 r;
        for (const auto& [ka, ca] : a.terms_)
            for (const auto& [kb, cb] : b.terms_) r.add_term(ka + kb, Rat(ca * cb));
        return r;
    }
    friend Poly1 operator*(const Rat& s, const Poly1& a) {
        Poly1 r;
        if (dmyq::is_zero(s)) return r;
        for (const auto& [k, c] : a.terms_) r.terms_.emplace(k, Rat(s * c));
        return r;
    }
    friend bool operator==(const Poly1& a, const Poly1& b) { return a.terms_ == b.terms_; }

    [[nodiscard]] Poly1 derivative() const {
        Poly1 r;
        for (const auto& [k, c] : terms_)
            if (k > 0) r.add_term(k - 1, Rat(c * k));
        return r;
    }

    /// Horner evaluation over the dense coefficient range.
    [[nodiscard]] Rat eval(const Rat& u) const {
        if (terms_.empty()) return Rat(0);
        Rat acc(0);
        for (int k = degree(); k >= 0; --k) {
            acc *= u;
            auto it = terms_.find(k);
            if (it != terms_.end()) acc += it->second;
        }
        return acc;
    }

    [[nodiscard]] double eval_f64(double u) const {
        double acc = 0;
        for (int k = degree(); k >= 0; --k) {
            acc *= u;
            auto it = terms_.find(k);
            if (it != terms_.end()) acc += it->second.get_d();
        }
        return acc;
    }

    /// Exact division by u^k; throws if any term has exponent below k.
    [[nodiscard]] Poly1 shift_down(int k) const {
        Poly1 r;
        for (const auto& [e, c] : terms_) {
            if (e < k) throw std::domain_error("Poly1::shift_down: not divisible by u^k");
            r.terms_.emplace(e - k, c);
        }
        return r;
    }

    [[nodiscard]] Poly1 shift_up(int k) const {
        Poly1 r;
        for (const auto& [e, c] : terms_) r.terms_.emplace(e + k, c);
        return r;
    }

    /// Euclidean division: *this = q * d + r with deg r < deg d.
    [[nodiscard]] std::pair<Poly1, Poly1> divmod(const Poly1& d) const {
        if (d.is_zero()) throw std::domain_error("Poly1::divmod: division by zero polynomial");
        Poly1 q;
        Poly1 r = *this;
        const int dd = d.degree();
        const Rat lead = d.leading_coeff();
        while (!r.is_zero() && r.degree() >= dd) {
            int shift = r.degree() - dd;
            Rat factor = r.leading_coeff() / lead;
            q.add_term(shift, factor);
            r = r - (factor * d).shift_up(shift);
        }
        return {q, r};
    }

private:
    Terms terms_;
};

// ---------------------------------------------------------------------------
// Bivariate operations.

template <class C>
SparsePoly2<C> diff(const SparsePoly2<C>& f, Var v) {
    SparsePoly2<C> r;
    for (const auto& [e, c] : f.terms()) {
        int k = v == Var::X ? e.i : e.j;
        if (k == 0) continue;
        Exp2 de = v == Var::X ? Exp2{e.i - 1, e.j} : Exp2{e.i, e.j - 1};
        r.add_term(de, C(c * C(k)));
    }
    return r;
}

namespace detail {

template <class T>
std::vector<T> powers(const T& base, int max_power) {
    std::vector<T> out;
    out.reserve(static_cast<std::size_t>(std::max(max_power, 0)) + 1);
    out.push_back(T(1));
    for (int k = 1; k <= max_power; ++k) out.push_back(out.back() * base);
    return out;
}

template <class C>
std::vector<SparsePoly2<C>> poly_powers(const SparsePoly2<C>& base, int max_power) {
    std::vector<SparsePoly2<C>> out;
    out.push_back(SparsePoly2<C>::constant(C(1)));
    for (int k = 1; k <= max_power; ++k) out.push_back(out.back() * base);
    return out;
}

template <class C>
int max_power(const SparsePoly2<C>& f, Var v) {
    int m = 0;
    for (const auto& [e, c] : f.terms()) m = std::max(m, v == Var::X ? e.i : e.j);
    return m;
}

}  // namespace detail

/// Exact value at a rational point. Terms are accumulated row by row in the
/// y-power (Horner in x inside each row).
inline Rat eval(const Poly2& f, const Rat& x, const Rat& y) {
    if (f.is_zero()) return Rat(0);
    std::map<int, Poly1> rows;  // y-power -> polynomial in x
    for (const auto& [e, c] : f.terms()) rows[e.j].add_term(e.i, c);
    Rat acc(0);
    int top = rows.rbegin()->first;
    for (int j = top; j >= 0; --j) {
        acc *= y;
        auto it = rows.find(j);
        if (it != rows.end()) acc += it->second.eval(x);
    }
    return acc;
}

inline Rat eval(const Poly2& f, const RatVec& p) { return eval(f, p.x, p.y); }

/// Floating-point evaluation; summation of monomials with cached powers.
template <class C>
double eval_f64(const SparsePoly2<C>& f, double x, double y) {
    auto px = detail::powers(x, detail::max_power(f, Var::X));
    auto py = detail::powers(y, detail::max_power(f, Var::Y));
    double acc = 0;
    for (const auto& [e, c] : f.terms()) {
        double cd;
        if constexpr (std::is_same_v<C, double>)
            cd = c;
        else
            cd = c.get_d();
        acc += cd * px[e.i] * py[e.j];
    }
    return acc;
}

/// f(M (x, y)^T + t), expanded exactly.
template <class C>
SparsePoly2<C> subst_linear(const SparsePoly2<C>& f, const Mat2<C>& M, const Vec2<C>& t = {}) {
    using P = SparsePoly2<C>;
    if (f.is_zero()) return P{};
    P lx = M(0, 0) * P::x() + M(0, 1) * P::y() + P::constant(t.x);
    P ly = M(1, 0) * P::x() + M(1, 1) * P::y() + P::constant(t.y);
    auto px = detail::poly_powers(lx, detail::max_power(f, Var::X));
    auto py = detail::poly_powers(ly, detail::max_power(f, Var::Y));
    P out;
    for (const auto& [e, c] : f.terms()) out = out + c * (px[e.i] * py[e.j]);
    return out;
}

/// Homogeneous pieces of f, ascending by degree; empty for the zero polynomial.
template <class C>
std::vector<std::pair<int, SparsePoly2<C>>> homog_components(const SparsePoly2<C>& f) {
    std::vector<std::pair<int, SparsePoly2<C>>> out;
    for (const auto& [e, c] : f.terms()) {
        if (out.empty() || out.back().first != e.degree()) out.emplace_back(e.degree(), SparsePoly2<C>{});
        out.back().second.add_term(e, c);
    }
    return out;
}

/// Part of f with total degree >= min_deg.
template <class C>
SparsePoly2<C> truncate_below(const SparsePoly2<C>& f, int min_deg) {
    SparsePoly2<C> r;
    for (const auto& [e, c] : f.terms())
        if (e.degree() >= min_deg) r.add_term(e, c);
    return r;
}

inline FloatPoly2 to_float(const Poly2& f) {
    FloatPoly2 r;
    for (const auto& [e, c] : f.terms()) r.add_term(e, c.get_d());
    return r;
}

/// rho(a x + b y) expanded as a bivariate polynomial.
inline Poly2 compose_line(const Poly1& rho, const Rat& a, const Rat& b) {
    if (rho.is_zero()) return Poly2{};
    Poly2 u = a * Poly2::x() + b * Poly2::y();
    auto pu = detail::poly_powers(u, rho.degree());
    Poly2 out;
    for (const auto& [k, c] : rho.terms()) out = out + c * pu[k];
    return out;
}

struct NotAFunctionOfU : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Returns rho with rho(a x + b y) = f(x, y). Extraction uses the x-axis when
/// a != 0 and the y-axis otherwise, then resubstitutes to verify.
inline Poly1 restrict_to_line(const Poly2& f, const Rat& a, const Rat& b) {
    if (is_zero(a) && is_zero(b)) throw std::invalid_argument("restrict_to_line: (a, b) = (0, 0)");
    Poly1 rho;
    if (!is_zero(a)) {
        // f(u/a, 0): only terms without y survive.
        Rat inv = 1 / a;
        for (const auto& [e, c] : f.terms())
            if (e.j == 0) {
                Rat s = c;
                for (int k = 0; k < e.i; ++k) s *= inv;
                rho.add_term(e.i, s);
            }
    } else {
        Rat inv = 1 / b;
        for (const auto& [e, c] : f.terms())
            if (e.i == 0) {
                Rat s = c;
                for (int k = 0; k < e.j; ++k) s *= inv;
                rho.add_term(e.j, s);
            }
    }
    if (!(compose_line(rho, a, b) == f))
        throw NotAFunctionOfU("polynomial is not a function of " + to_string(a) + "*x + " + to_string(b) + "*y");
    return rho;
}

}  // namespace dmyq
