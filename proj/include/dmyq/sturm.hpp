#pragma once

// Sturm sequences over exact rationals: real-root counting, isolation, and
// strict positivity on the whole real line.

#include <algorithm>
#include <optional>
#include <vector>

#include "poly.hpp"

namespace dmyq {

namespace detail {

/// Divides by the positive content so that signs are preserved and
/// coefficients stay integral and small.
inline Poly1 positive_primitive(const Poly1& p) {
    if (p.is_zero()) return p;
    Int num_gcd = 0;
    Int den_lcm = 1;
    for (const auto& [k, c] : p.terms()) {
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num_mpz_t());
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
    }
    return rat(den_lcm, num_gcd) * p;  // num_gcd > 0 after mpz_gcd
}

inline int sign(const Rat& r) { return sgn(r); }

}  // namespace detail

/// p, p', -rem(p, p'), ... with positive rescaling at every step.
inline std::vector<Poly1> sturm_sequence(const Poly1& p) {
    std::vector<Poly1> seq;
    if (p.is_zero()) return seq;
    seq.push_back(detail::positive_primitive(p));
    Poly1 d = p.derivative();
    if (d.is_zero()) return seq;
    seq.push_back(detail::positive_primitive(d));
    for (;;) {
        const Poly1& a = seq[seq.size() - 2];
        const Poly1& b = seq.back();
        Poly1 r = a.divmod(b).second;
        if (r.is_zero()) break;
        seq.push_back(detail::positive_primitive(-r));
    }
    return seq;
}

namespace detail {

inline int count_sign_changes(const std::vector<int>& signs) {
    int changes = 0, last = 0;
    for (int s : signs) {
        if (s == 0) continue;
        if (last != 0 && s != last) ++changes;
        last = s;
    }
    return changes;
}

inline int variations_at(const std::vector<Poly1>& seq, const Rat& u) {
    std::vector<int> s;
    s.reserve(seq.size());
    for (const auto& p : seq) s.push_back(sign(p.eval(u)));
    return count_sign_changes(s);
}

/// Sign of p(u) as u -> +inf (plus = true) or -inf.
inline int sign_at_infinity(const Poly1& p, bool plus) {
    int s = sign(p.leading_coeff());
    if (!plus && p.degree() % 2 == 1) s = -s;
    return s;
}

inline int variations_at_infinity(const std::vector<Poly1>& seq, bool plus) {
    std::vector<int> s;
    for (const auto& p : seq) s.push_back(sign_at_infinity(p, plus));
    return count_sign_changes(s);
}

}  // namespace detail

/// p / gcd(p, p'): same distinct roots, all simple.
inline Poly1 squarefree_part(const Poly1& p) {
    if (p.degree() < 1) return p;
    auto seq = sturm_sequence(p);
    const Poly1& g = seq.back();  // gcd(p, p') up to a positive constant
    if (g.degree() == 0) return seq.front();
    return detail::positive_primitive(seq.front().divmod(g).first);
}

/// Number of distinct real roots of p (p nonzero).
inline int count_real_roots(const std::vector<Poly1>& seq) {
    if (seq.empty()) return 0;
    return detail::variations_at_infinity(seq, false) - detail::variations_at_infinity(seq, true);
}

inline int count_real_roots(const Poly1& p) { return count_real_roots(sturm_sequence(p)); }

/// Distinct real roots in the half-open interval (lo, hi]. The sequence must
/// come from a squarefree polynomial for endpoints that are roots.
inline int count_roots_in(const std::vector<Poly1>& seq, const Rat& lo, const Rat& hi) {
    if (seq.empty()) return 0;
    return detail::variations_at(seq, lo) - detail::variations_at(seq, hi);
}

/// Cauchy bound: every real root has |u| < bound.
inline Rat root_bound(const Poly1& p) {
    Rat lead = abs(p.leading_coeff());
    Rat m(0);
    for (const auto& [k, c] : p.terms())
        if (k != p.degree()) m = std::max(m, Rat(abs(c) / lead));
    return m + 1;
}

struct RootInterval {
    Rat lo;  // exclusive
    Rat hi;  // inclusive
};

/// Disjoint intervals (lo, hi], each holding exactly one distinct real root,
/// ascending, each of width at most max_width.
inline std::vector<RootInterval> isolate_real_roots(const Poly1& p, const Rat& max_width = rat(1, 1 << 20)) {
    std::vector<RootInterval> out;
    if (p.degree() < 1) return out;
    Poly1 sqf = squarefree_part(p);
    auto seq = sturm_sequence(sqf);
    Rat b = root_bound(sqf);
    std::vector<RootInterval> stack{{Rat(-b), b}};
    while (!stack.empty()) {
        RootInterval iv = stack.back();
        stack.pop_back();
        int n = count_roots_in(seq, iv.lo, iv.hi);
        if (n == 0) continue;
        if (n == 1 && iv.hi - iv.lo <= max_width) {
            out.push_back(iv);
            continue;
        }
        Rat mid = (iv.lo + iv.hi) / 2;
        stack.push_back({iv.lo, mid});
        stack.push_back({mid, iv.hi});
    }
    std::sort(out.begin(), out.end(), [](const RootInterval& a, const RootInterval& b) { return a.lo < b.lo; });
    return out;
}

/// True iff q(u) > 0 for every real u. Any real root, of any multiplicity,
/// makes the answer false.
inline bool sturm_positive(const Poly1& q) {
    if (q.is_zero()) return false;
    if (q.degree() == 0) return sgn(q.leading_coeff()) > 0;
    if (q.degree() % 2 == 1 || sgn(q.leading_coeff()) < 0) return false;
    return count_real_roots(q) == 0;
}

}  // namespace dmyq
