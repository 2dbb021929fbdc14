#pragma once

// Linear orthogonal symmetries of a planar polynomial map.
//
// Writing F as f(z, conj z) = sum c_pq z^p conj(z)^q and m = p - q - 1:
//   rotation by theta is a symmetry  iff  m theta is in 2 pi Z for every term;
//   the reflection z -> e^{2 i phi} conj(z) (axis at angle phi) is a symmetry
//   iff c_pq e^{2 i phi m} = conj(c_pq) for every term.
// The rotation part is therefore Z_g with g = gcd |m| over terms with m != 0,
// or all of SO(2) when every m vanishes.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "complex_form.hpp"
#include "polymap.hpp"

namespace dmyq {

inline constexpr double kDefaultSymmetryTol = 1e-9;

struct ZeroMapError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotOrthogonal : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Rotation part of the symmetry group: Z_n, or SO(2) when continuous.
struct RotationOrder {
    bool continuous = false;
    int n = 1;

    friend bool operator==(const RotationOrder&, const RotationOrder&) = default;
};

inline RotationOrder rotation_subgroup(const ComplexCoeffs& cc) {
    if (cc.is_zero()) throw ZeroMapError("rotation_subgroup: zero map");
    int g = 0;
    for (const auto& [e, c] : cc.terms()) g = std::gcd(g, std::abs(e.i - e.j - 1));
    if (g == 0) return {true, 0};
    return {false, g};
}

struct ReflectionAxis {
    double angle = 0;   // in [0, pi)
    bool exact = false;  // verified in exact arithmetic
};

struct ReflectionAxes {
    bool every_angle = false;  // every line through the origin is an axis
    std::vector<ReflectionAxis> axes;

    [[nodiscard]] bool any() const { return every_angle || !axes.empty(); }
};

namespace detail {

/// e^{2 i phi} for phi = k pi / 4, which is the unit 1, i, -1 or -i.
inline GaussRat quarter_turn_unit(int k) {
    switch (((k % 4) + 4) % 4) {
        case 0: return {Rat(1), Rat(0)};
        case 1: return {Rat(0), Rat(1)};
        case 2: return {Rat(-1), Rat(0)};
        default: return {Rat(0), Rat(-1)};
    }
}

inline GaussRat unit_pow(const GaussRat& w, int m) {
    GaussRat base = m < 0 ? w.conj() : w;  // |w| = 1
    GaussRat r{Rat(1), Rat(0)};
    for (int k = 0; k < std::abs(m); ++k) r = r * base;
    return r;
}

inline std::complex<double> to_complex_f64(const GaussRat& g) { return {g.re.get_d(), g.im.get_d()}; }

inline bool reflection_holds_exact(const ComplexCoeffs& cc, int quarter) {
    GaussRat w = quarter_turn_unit(quarter);
    for (const auto& [e, c] : cc.terms())
        if (!(c * unit_pow(w, e.i - e.j - 1) == c.conj())) return false;
    return true;
}

inline bool reflection_holds_float(const ComplexCoeffs& cc, double phi, double tol) {
    for (const auto& [e, c] : cc.terms()) {
        std::complex<double> cd = to_complex_f64(c);
        std::complex<double> lhs = cd * std::polar(1.0, 2.0 * phi * (e.i - e.j - 1));
        if (std::abs(lhs - std::conj(cd)) > tol * std::max(1.0, std::abs(cd))) return false;
    }
    return true;
}

/// Index k with phi = k pi/4 up to rounding, if any.
inline std::optional<int> as_quarter_turn(double phi) {
    double k = phi / (std::numbers::pi / 4);
    double kr = std::round(k);
    if (std::abs(k - kr) < 1e-12) return static_cast<int>(kr);
    return std::nullopt;
}

}  // namespace detail

inline ReflectionAxes reflection_axes(const ComplexCoeffs& cc, double tol = kDefaultSymmetryTol) {
    ReflectionAxes out;
    if (cc.is_zero()) {
        out.every_angle = true;
        return out;
    }
    const std::pair<const Exp2, GaussRat>* ref = nullptr;
    for (const auto& term : cc.terms()) {
        int m = term.first.i - term.first.j - 1;
        if (m == 0) continue;
        if (!ref || std::abs(m) < std::abs(ref->first.i - ref->first.j - 1)) ref = &term;
    }
    if (!ref) {
        out.every_angle = std::all_of(cc.terms().begin(), cc.terms().end(),
                                      [](const auto& t) { return t.second.is_real(); });
        return out;
    }

    const int m = ref->first.i - ref->first.j - 1;
    std::complex<double> c = detail::to_complex_f64(ref->second);
    double psi = -2.0 * std::arg(c);  // arg(conj(c) / c)
    std::vector<double> candidates;
    for (int k = 0; k < 2 * std::abs(m); ++k) {
        double phi = (psi + 2 * std::numbers::pi * k) / (2.0 * m);
        phi = std::fmod(phi, std::numbers::pi);
        if (phi < 0) phi += std::numbers::pi;
        if (std::numbers::pi - phi < 1e-12) phi = 0;
        candidates.push_back(phi);
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end(),
                                 [](double a, double b) { return std::abs(a - b) < 1e-9; }),
                     candidates.end());

    for (double phi : candidates) {
        if (auto q = detail::as_quarter_turn(phi)) {
            if (detail::reflection_holds_exact(cc, *q)) out.axes.push_back({*q * std::numbers::pi / 4, true});
        } else if (detail::reflection_holds_float(cc, phi, tol)) {
            out.axes.push_back({phi, false});
        }
    }
    return out;
}

// ---------------------------------------------------------------------------

inline bool is_orthogonal(const RatMat& g) { return g.transpose() * g == RatMat::identity(); }

inline bool is_orthogonal(const FloatMat& g, double tol) {
    FloatMat p = g.transpose() * g;
    return std::abs(p(0, 0) - 1) <= tol && std::abs(p(1, 1) - 1) <= tol && std::abs(p(0, 1)) <= tol &&
           std::abs(p(1, 0)) <= tol;
}

/// Exact check of F(g v) = g F(v).
inline bool is_equivariant(const PolyMap& F, const RatMat& g) {
    if (!is_orthogonal(g)) throw NotOrthogonal("is_equivariant: matrix is not orthogonal");
    return precompose_linear(F, g) == postcompose_linear(g, F);
}

/// Floating-point check of F(g v) = g F(v), coefficientwise within tol relative
/// to the largest coefficient involved.
inline bool is_equivariant(const PolyMap& F, const FloatMat& g, double tol = kDefaultSymmetryTol) {
    if (!is_orthogonal(g, tol)) throw NotOrthogonal("is_equivariant: matrix is not orthogonal within tolerance");
    FloatPoly2 f1 = to_float(F.f1), f2 = to_float(F.f2);
    FloatPoly2 l1 = subst_linear(f1, g), l2 = subst_linear(f2, g);
    FloatPoly2 r1 = g(0, 0) * f1 + g(0, 1) * f2;
    FloatPoly2 r2 = g(1, 0) * f1 + g(1, 1) * f2;
    double scale = 1;
    for (const auto* p : {&l1, &l2, &r1, &r2})
        for (const auto& [e, c] : p->terms()) scale = std::max(scale, std::abs(c));
    for (const auto& [a, b] : {std::pair{&l1, &r1}, std::pair{&l2, &r2}}) {
        FloatPoly2 d = *a - *b;
        for (const auto& [e, c] : d.terms())
            if (std::abs(c) > tol * scale) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------

enum class SymmetryClass { Trivial, Z2_minus_identity, Zn, Z2_reflection, Dn, SO2, O2 };

inline const char* to_string(SymmetryClass c) {
    switch (c) {
        case SymmetryClass::Trivial: return "Trivial";
        case SymmetryClass::Z2_minus_identity: return "Z2_minus_identity";
        case SymmetryClass::Zn: return "Zn";
        case SymmetryClass::Z2_reflection: return "Z2_reflection";
        case SymmetryClass::Dn: return "Dn";
        case SymmetryClass::SO2: return "SO2";
        case SymmetryClass::O2: return "O2";
    }
    return "?";
}

struct Generator {
    std::optional<RatMat> exact;
    FloatMat approx;

    static Generator from_exact(const RatMat& m) { return {m, to_float(m)}; }
    static Generator from_float(const FloatMat& m) { return {std::nullopt, m}; }
};

struct SymmetryGroup {
    RotationOrder rotation;
    bool has_reflection = false;
    std::optional<double> reflection_axis_angle;
    SymmetryClass classification = SymmetryClass::Trivial;
    std::vector<Generator> generators;
    /// Every reflection axis found, ascending; empty for the continuous case.
    std::vector<ReflectionAxis> axes;

    /// Groups compatible with a nonlinear map whose eigenvalues stay inside the disk.
    [[nodiscard]] bool is_trivial_or_z2() const {
        return classification == SymmetryClass::Trivial || classification == SymmetryClass::Z2_reflection ||
               classification == SymmetryClass::Z2_minus_identity;
    }

    /// Short group name, e.g. "Z4", "D3", "O(2)".
    [[nodiscard]] std::string label() const {
        switch (classification) {
            case SymmetryClass::Trivial: return "Trivial";
            case SymmetryClass::Z2_minus_identity: return "Z2 (-I)";
            case SymmetryClass::Z2_reflection: return "Z2 (reflection)";
            case SymmetryClass::Zn: return "Z" + std::to_string(rotation.n);
            case SymmetryClass::Dn: return "D" + std::to_string(rotation.n);
            case SymmetryClass::SO2: return "SO(2)";
            case SymmetryClass::O2: return "O(2)";
        }
        return "?";
    }
};

inline SymmetryClass classify_pair(const RotationOrder& rot, bool reflection) {
    if (rot.continuous) return reflection ? SymmetryClass::O2 : SymmetryClass::SO2;
    if (reflection) return rot.n == 1 ? SymmetryClass::Z2_reflection : SymmetryClass::Dn;
    if (rot.n == 1) return SymmetryClass::Trivial;
    return rot.n == 2 ? SymmetryClass::Z2_minus_identity : SymmetryClass::Zn;
}

namespace detail {

/// Rotation by an irrational multiple of pi with rational entries; its powers
/// are dense in SO(2), so it topologically generates the continuous group.
inline RatMat pythagorean_rotation() { return RatMat::from(rat(3, 5), rat(-4, 5), rat(4, 5), rat(3, 5)); }

inline Generator rotation_generator(const RotationOrder& rot) {
    if (rot.continuous) return Generator::from_exact(pythagorean_rotation());
    switch (rot.n) {
        case 1: return Generator::from_exact(RatMat::identity());
        case 2: return Generator::from_exact(RatMat::from(Rat(-1), Rat(0), Rat(0), Rat(-1)));
        case 4: return Generator::from_exact(RatMat::from(Rat(0), Rat(-1), Rat(1), Rat(0)));
        default: return Generator::from_float(rotation_matrix(2 * std::numbers::pi / rot.n));
    }
}

inline Generator reflection_generator(double phi) {
    if (auto q = as_quarter_turn(phi)) {
        switch (((*q % 4) + 4) % 4) {
            case 0: return Generator::from_exact(RatMat::from(Rat(1), Rat(0), Rat(0), Rat(-1)));
            case 1: return Generator::from_exact(RatMat::from(Rat(0), Rat(1), Rat(1), Rat(0)));
            case 2: return Generator::from_exact(RatMat::from(Rat(-1), Rat(0), Rat(0), Rat(1)));
            default: return Generator::from_exact(RatMat::from(Rat(0), Rat(-1), Rat(-1), Rat(0)));
        }
    }
    return Generator::from_float(reflection_matrix(phi));
}

}  // namespace detail

inline SymmetryGroup classify(const PolyMap& F, double tol = kDefaultSymmetryTol) {
    SymmetryGroup g;
    ComplexCoeffs cc = to_complex(F);
    ReflectionAxes ax;
    if (cc.is_zero()) {
        g.rotation = {true, 0};
        ax.every_angle = true;
    } else {
        g.rotation = rotation_subgroup(cc);
        ax = reflection_axes(cc, tol);
    }
    g.has_reflection = ax.any();
    g.axes = ax.axes;
    if (g.has_reflection) g.reflection_axis_angle = ax.every_angle ? 0.0 : ax.axes.front().angle;
    g.classification = classify_pair(g.rotation, g.has_reflection);

    if (g.rotation.continuous || g.rotation.n > 1 || !g.has_reflection)
        g.generators.push_back(detail::rotation_generator(g.rotation));
    if (g.has_reflection) g.generators.push_back(detail::reflection_generator(*g.reflection_axis_angle));
    return g;
}

inline bool is_equivariant(const PolyMap& F, const Generator& gen, double tol = kDefaultSymmetryTol) {
    return gen.exact ? is_equivariant(F, *gen.exact) : is_equivariant(F, gen.approx, tol);
}

}  // namespace dmyq
