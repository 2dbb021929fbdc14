#pragma once

// Decomposition of a fixed-origin planar polynomial map into
//
//     F(x, y) = B (x, y)^T + r(a x + b y) (alpha, beta)^T,   r(u) = u^2 p(u),
//
// i.e. a linear map plus a rank-one nonlinear term driven by one linear form.
// Maps whose eigenvalues stay inside the unit disk everywhere must have this
// shape, so a failure here is already a certificate that the hypotheses fail.
//
// Canonical normalization fixes the two scale freedoms u -> lambda u and
// r -> c r: the first nonzero entry of (a, b) is 1, r is monic, and the scale
// lives in (alpha, beta). Linear maps decompose with r = p = 0, (a, b) = (1, 0)
// and (alpha, beta) = (0, 0).

#include <optional>
#include <string>
#include <utility>
#include <variant>

#include "polymap.hpp"

namespace dmyq {

struct NormalFormData {
    RatMat B;
    Rat a{1};
    Rat b{0};
    Rat alpha{0};
    Rat beta{0};
    Poly1 p;
    Poly1 r;  // u^2 p(u)

    [[nodiscard]] bool is_linear() const { return r.is_zero(); }

    friend bool operator==(const NormalFormData& x, const NormalFormData& y) {
        return x.B == y.B && x.a == y.a && x.b == y.b && x.alpha == y.alpha && x.beta == y.beta && x.p == y.p &&
               x.r == y.r;
    }
};

enum class DecomposeReason { OriginNotFixed, NonProportional, NotSingleLinearForm };

inline const char* to_string(DecomposeReason r) {
    switch (r) {
        case DecomposeReason::OriginNotFixed: return "OriginNotFixed";
        case DecomposeReason::NonProportional: return "NonProportional";
        case DecomposeReason::NotSingleLinearForm: return "NotSingleLinearForm";
    }
    return "?";
}

struct DecomposeFailure {
    DecomposeReason reason;
    std::string detail;
};

struct OriginNotFixed : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct LinearSplit {
    RatMat linear;  // JF(0, 0)
    PolyMap nonlinear;
};

inline LinearSplit split_linear(const PolyMap& F) {
    if (!F.fixes_origin()) throw OriginNotFixed("F(0,0) != (0,0)");
    LinearSplit s;
    s.linear = RatMat::from(F.f1.coeff({1, 0}), F.f1.coeff({0, 1}), F.f2.coeff({1, 0}), F.f2.coeff({0, 1}));
    s.nonlinear = {truncate_below(F.f1, 2), truncate_below(F.f2, 2)};
    return s;
}

struct Proportionality {
    Rat alpha;
    Rat beta;
    Poly2 r2;  // N1 = alpha r2, N2 = beta r2
};

/// Looks for constants with N1 = alpha r2 and N2 = beta r2.
///
/// If such constants exist and mu is any monomial present in N1 or N2, then
/// (N1[mu], N2[mu]) = r2[mu] (alpha, beta) with r2[mu] != 0, so the pair read
/// off the first graded-lex monomial is the only candidate up to scale. One
/// exact cross-multiplication check therefore settles the question.
inline std::optional<Proportionality> proportional(const Poly2& N1, const Poly2& N2) {
    if (N1.is_zero() && N2.is_zero()) return Proportionality{Rat(0), Rat(0), Poly2{}};
    if (N1.is_zero()) return Proportionality{Rat(0), Rat(1), N2};
    if (N2.is_zero()) return Proportionality{Rat(1), Rat(0), N1};

    Exp2 mu = *N1.first_monomial();
    if (GradedLex{}(*N2.first_monomial(), mu)) mu = *N2.first_monomial();

    Rat alpha = N1.coeff(mu);
    Rat beta = N2.coeff(mu);
    if (!(beta * N1 == alpha * N2)) return std::nullopt;
    // r2 has mu-coefficient 1.
    Poly2 r2 = !is_zero(alpha) ? Rat(1 / alpha) * N1 : Rat(1 / beta) * N2;
    return Proportionality{alpha, beta, r2};
}

/// Normalized (a, b) with b dr/dx - a dr/dy == 0, i.e. r is a polynomial in
/// a x + b y. If r = g(a x + b y) then (dr/dx, dr/dy) = g'(u) (a, b), so the
/// coefficients of any one monomial of the gradient give the direction.
inline std::optional<std::pair<Rat, Rat>> single_form_direction(const Poly2& r2) {
    if (r2.is_zero()) throw std::invalid_argument("single_form_direction: zero polynomial");
    Poly2 dx = diff(r2, Var::X);
    Poly2 dy = diff(r2, Var::Y);
    std::optional<Exp2> first = dx.first_monomial();
    if (auto fy = dy.first_monomial(); fy && (!first || GradedLex{}(*fy, *first))) first = fy;
    if (!first) return std::nullopt;  // constant; excluded by the degree >= 2 precondition
    Rat a = dx.coeff(*first);
    Rat b = dy.coeff(*first);
    if (!(b * dx - a * dy).is_zero()) return std::nullopt;
    if (!is_zero(a)) {
        b /= a;
        a = 1;
    } else {
        b = 1;
    }
    return std::make_pair(a, b);
}

inline PolyMap reconstruct(const NormalFormData& nf) {
    PolyMap lin = PolyMap::linear(nf.B);
    if (nf.r.is_zero()) return lin;
    Poly2 ru = compose_line(nf.r, nf.a, nf.b);
    return {lin.f1 + nf.alpha * ru, lin.f2 + nf.beta * ru};
}

using DecomposeResult = std::variant<NormalFormData, DecomposeFailure>;

inline DecomposeResult decompose(const PolyMap& F) {
    if (!F.fixes_origin())
        return DecomposeFailure{DecomposeReason::OriginNotFixed,
                                "constant terms (" + to_string(F.f1.coeff({0, 0})) + ", " +
                                    to_string(F.f2.coeff({0, 0})) + ")"};
    LinearSplit s = split_linear(F);
    NormalFormData nf;
    nf.B = s.linear;
    const Poly2& N1 = s.nonlinear.f1;
    const Poly2& N2 = s.nonlinear.f2;

    auto prop = proportional(N1, N2);
    if (!prop)
        return DecomposeFailure{DecomposeReason::NonProportional, "quotient of nonlinear parts is non-constant"};
    if (prop->r2.is_zero()) return nf;

    auto dir = single_form_direction(prop->r2);
    if (!dir)
        return DecomposeFailure{DecomposeReason::NotSingleLinearForm,
                                "common nonlinear factor is not a polynomial in one linear form"};
    nf.a = dir->first;
    nf.b = dir->second;

    Poly1 rho;
    try {
        rho = restrict_to_line(prop->r2, nf.a, nf.b);
    } catch (const NotAFunctionOfU& e) {
        return DecomposeFailure{DecomposeReason::NotSingleLinearForm, e.what()};
    }
    Rat lead = rho.leading_coeff();
    nf.r = Rat(1 / lead) * rho;
    nf.alpha = prop->alpha * lead;
    nf.beta = prop->beta * lead;
    nf.p = nf.r.shift_down(2);
    return nf;
}

}  // namespace dmyq
