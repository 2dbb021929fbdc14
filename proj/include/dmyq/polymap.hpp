#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "matrix.hpp"
#include "poly.hpp"

namespace dmyq {

inline constexpr int kDefaultDegreeCap = 64;

struct DegreeCapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A planar polynomial map F = (f1, f2).
struct PolyMap {
    Poly2 f1;
    Poly2 f2;
    std::optional<std::string> source_text;

    PolyMap() = default;
    PolyMap(Poly2 a, Poly2 b, std::optional<std::string> text = std::nullopt)
        : f1(std::move(a)), f2(std::move(b)), source_text(std::move(text)) {}

    static PolyMap identity() { return {Poly2::x(), Poly2::y()}; }

    /// Linear map v -> M v.
    static PolyMap linear(const RatMat& M) {
        return {M(0, 0) * Poly2::x() + M(0, 1) * Poly2::y(), M(1, 0) * Poly2::x() + M(1, 1) * Poly2::y()};
    }

    [[nodiscard]] const Poly2& operator[](int k) const { return k == 0 ? f1 : f2; }

    [[nodiscard]] int degree() const { return std::max(f1.degree(), f2.degree()); }
    [[nodiscard]] bool is_zero() const { return f1.is_zero() && f2.is_zero(); }

    [[nodiscard]] bool fixes_origin() const {
        return dmyq::is_zero(f1.coeff({0, 0})) && dmyq::is_zero(f2.coeff({0, 0}));
    }

    /// True when every term has total degree at most one.
    [[nodiscard]] bool is_linear() const { return degree() <= 1; }

    /// Equality ignores the source text.
    friend bool operator==(const PolyMap& a, const PolyMap& b) { return a.f1 == b.f1 && a.f2 == b.f2; }
};

inline void check_degree_cap(const PolyMap& F, int cap = kDefaultDegreeCap) {
    if (F.degree() > cap)
        throw DegreeCapExceeded("map degree " + std::to_string(F.degree()) + " exceeds cap " + std::to_string(cap));
}

inline RatVec eval(const PolyMap& F, const RatVec& p) { return {eval(F.f1, p), eval(F.f2, p)}; }

/// F o (M v + t).
inline PolyMap precompose_linear(const PolyMap& F, const RatMat& M, const RatVec& t = {}) {
    return {subst_linear(F.f1, M, t), subst_linear(F.f2, M, t)};
}

/// M F(v).
inline PolyMap postcompose_linear(const RatMat& M, const PolyMap& F) {
    return {M(0, 0) * F.f1 + M(0, 1) * F.f2, M(1, 0) * F.f1 + M(1, 1) * F.f2};
}

/// P^{-1} o F o P for invertible P.
inline PolyMap conjugate(const PolyMap& F, const RatMat& P) {
    return postcompose_linear(P.inverse(), precompose_linear(F, P));
}

}  // namespace dmyq
