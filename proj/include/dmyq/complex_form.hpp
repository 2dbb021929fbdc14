#pragma once

// Complex form of a planar map: with z = x + iy, the map (f1, f2) is the
// single polynomial f(z, conj z) = f1 + i f2 = sum c_pq z^p conj(z)^q.
// Rotations act as z -> e^{i theta} z and the reflection (x, y) -> (x, -y)
// as z -> conj z, so symmetry conditions become conditions on individual c_pq.

#include "polymap.hpp"
#include "poly.hpp"

namespace dmyq {

inline ComplexCoeffs to_complex(const PolyMap& F) {
    using CP = ComplexCoeffs;
    // x = (z + w)/2 and y = (z - w)/(2i) = -i/2 z + i/2 w, where w = conj z.
    CP zx;
    zx.add_term({1, 0}, GaussRat(rat(1, 2)));
    zx.add_term({0, 1}, GaussRat(rat(1, 2)));
    CP zy;
    zy.add_term({1, 0}, GaussRat(Rat(0), rat(-1, 2)));
    zy.add_term({0, 1}, GaussRat(Rat(0), rat(1, 2)));

    auto px = detail::poly_powers(zx, std::max(detail::max_power(F.f1, Var::X), detail::max_power(F.f2, Var::X)));
    auto py = detail::poly_powers(zy, std::max(detail::max_power(F.f1, Var::Y), detail::max_power(F.f2, Var::Y)));

    // Coefficient of x^i y^j in f1 + i f2.
    std::map<Exp2, GaussRat, GradedLex> combined;
    for (const auto& [e, c] : F.f1.terms()) combined[e].re += c;
    for (const auto& [e, c] : F.f2.terms()) combined[e].im += c;

    CP out;
    for (const auto& [e, c] : combined) out = out + c * (px[e.i] * py[e.j]);
    return out;
}

inline PolyMap from_complex(const ComplexCoeffs& cc) {
    // z = x + iy and w = x - iy, tracked as (real part, imaginary part) pairs.
    struct CPoly {
        Poly2 re, im;
        CPoly operator*(const CPoly& o) const { return {re * o.re - im * o.im, re * o.im + im * o.re}; }
    };
    int max_p = detail::max_power(cc, Var::X);
    int max_q = detail::max_power(cc, Var::Y);
    std::vector<CPoly> zp{{Poly2::constant(Rat(1)), Poly2{}}};
    std::vector<CPoly> wp{{Poly2::constant(Rat(1)), Poly2{}}};
    const CPoly z{Poly2::x(), Poly2::y()};
    const CPoly w{Poly2::x(), -Poly2::y()};
    for (int k = 1; k <= max_p; ++k) zp.push_back(zp.back() * z);
    for (int k = 1; k <= max_q; ++k) wp.push_back(wp.back() * w);

    Poly2 f1, f2;
    for (const auto& [e, c] : cc.terms()) {
        CPoly m = zp[e.i] * wp[e.j];
        f1 = f1 + c.re * m.re - c.im * m.im;
        f2 = f2 + c.re * m.im + c.im * m.re;
    }
    return {f1, f2};
}

}  // namespace dmyq
