#pragma once

// Combines decomposition, symmetry and spectral decisions into one verdict
// with a certificate that can be re-verified without trusting the pipeline.

#include <cmath>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "mapio.hpp"
#include "normal_form.hpp"
#include "spectra.hpp"
#include "symmetry.hpp"

namespace dmyq {

enum class Status { HypothesesHold, HypothesesFail, Undecided };

inline const char* to_string(Status s) {
    switch (s) {
        case Status::HypothesesHold: return "HypothesesHold";
        case Status::HypothesesFail: return "HypothesesFail";
        case Status::Undecided: return "Undecided";
    }
    return "?";
}

namespace cert {

/// Normal form with all three Jury polynomials strictly positive.
struct NormalFormPositive {
    NormalFormData nf;
    UnivariateSpectral spectral;
    JuryPolys polys;
};

struct OriginNotFixed {
    Rat c1, c2;  // F(0, 0)
};

/// Nonlinear parts whose quotient is not constant.
struct NonProportional {
    Poly2 n1, n2;
};

/// Proportional nonlinear parts alpha r2, beta r2 with r2 not a polynomial
/// in a single linear form.
struct NotSingleLinearForm {
    Rat alpha, beta;
    Poly2 r2;
};

/// Normal form whose Jury polynomial `index` is not strictly positive.
struct UnivariateRootFailure {
    NormalFormData nf;
    int index = 0;
    Poly1 poly;
    Violation violation;
};

/// A nonlinear map with a symmetry group other than trivial or Z2.
struct SymmetryObstruction {
    SymmetryGroup group;
    std::string structural;  // the normal-form reason that also applies
};

struct NumericWitness {
    Witness witness;
};

}  // namespace cert

using Certificate = std::variant<cert::NormalFormPositive, cert::OriginNotFixed, cert::NonProportional,
                                 cert::NotSingleLinearForm, cert::UnivariateRootFailure, cert::SymmetryObstruction,
                                 cert::NumericWitness>;

inline const char* certificate_kind(const Certificate& c) {
    static const char* names[] = {"NormalFormPositive",    "OriginNotFixed",      "NonProportional",
                                  "NotSingleLinearForm",   "UnivariateRootFailure", "SymmetryObstruction",
                                  "NumericWitness"};
    return names[c.index()];
}

struct Verdict {
    Status status = Status::Undecided;
    Certificate certificate;
    SymmetryGroup symmetry;
    /// Supplementary numeric evidence for failing maps.
    std::optional<Witness> witness;
    bool witness_exhausted = false;
    std::vector<std::string> notes;
    PolyMap map;
};

struct AnalyzeConfig {
    WitnessConfig search;
    double tol = kDefaultSymmetryTol;
    bool search_witness = true;
};

struct InternalInconsistency : std::logic_error {
    using std::logic_error::logic_error;
};

namespace detail {

inline void attach_witness(Verdict& v, const PolyMap& F, const AnalyzeConfig& cfg) {
    if (!cfg.search_witness) return;
    v.witness = witness_search(F, cfg.search);
    if (!v.witness) {
        v.witness_exhausted = true;
        v.notes.emplace_back("witness search exhausted its budget; the structural certificate stands on its own");
    } else if (!v.witness->certified) {
        v.notes.emplace_back("numeric witness did not survive exact re-evaluation at its dyadic point");
    }
}

}  // namespace detail

inline Verdict analyze(const PolyMap& F, const AnalyzeConfig& cfg = {}) {
    Verdict v;
    v.map = F;
    v.symmetry = classify(F, cfg.tol);
    const bool nonlinear = !F.is_linear();
    const bool obstructed = nonlinear && !v.symmetry.is_trivial_or_z2();
    v.notes.push_back("symmetry group: " + v.symmetry.label());

    if (!F.fixes_origin()) {
        v.status = Status::HypothesesFail;
        v.certificate = cert::OriginNotFixed{F.f1.coeff({0, 0}), F.f2.coeff({0, 0})};
        return v;
    }

    DecomposeResult dr = decompose(F);
    if (auto* fail = std::get_if<DecomposeFailure>(&dr)) {
        v.status = Status::HypothesesFail;
        LinearSplit s = split_linear(F);
        if (obstructed) {
            v.certificate = cert::SymmetryObstruction{v.symmetry, to_string(fail->reason)};
            v.notes.push_back(std::string("normal form also fails: ") + to_string(fail->reason));
        } else if (fail->reason == DecomposeReason::NonProportional) {
            v.certificate = cert::NonProportional{s.nonlinear.f1, s.nonlinear.f2};
        } else {
            auto prop = proportional(s.nonlinear.f1, s.nonlinear.f2);
            if (!prop) throw InternalInconsistency("NotSingleLinearForm without proportional nonlinear parts");
            v.certificate = cert::NotSingleLinearForm{prop->alpha, prop->beta, prop->r2};
        }
        detail::attach_witness(v, F, cfg);
        return v;
    }

    const auto& nf = std::get<NormalFormData>(dr);
    UnivariateSpectral us = univariate_reduce(nf);
    GlobalDecision gd = global_disk_decision(us);
    if (gd.holds) {
        if (obstructed)
            throw InternalInconsistency("nonlinear map with symmetry group " + v.symmetry.label() +
                                        " passed the global eigenvalue test");
        v.status = Status::HypothesesHold;
        v.certificate = cert::NormalFormPositive{nf, us, gd.polys};
        if (!nonlinear && !v.symmetry.rotation.continuous && v.symmetry.rotation.n >= 3)
            v.notes.emplace_back("linear map with rotational symmetry of order >= 3: linear part commutes with rotations");
        return v;
    }

    // Prefer a polynomial that is strictly negative somewhere.
    std::optional<cert::UnivariateRootFailure> chosen;
    auto polys = gd.polys.all();
    for (int k = 0; k < 3; ++k) {
        if (gd.positive[k]) continue;
        auto viol = find_violation(*polys[k]);
        if (!viol) throw InternalInconsistency("Jury polynomial reported non-positive but no violation found");
        cert::UnivariateRootFailure f{nf, k, *polys[k], *viol};
        if (!viol->boundary_only) {
            chosen = f;
            break;
        }
        if (!chosen) chosen = f;
    }
    v.status = Status::HypothesesFail;
    if (chosen->violation.boundary_only)
        v.notes.emplace_back("boundary-only failure: every Jury polynomial is >= 0 and an eigenvalue reaches modulus 1");
    if (obstructed) {
        v.certificate = cert::SymmetryObstruction{v.symmetry, certificate_kind(Certificate{*chosen})};
        v.notes.push_back(std::string("univariate test also fails: ") + jury_poly_name(chosen->index) + " = " +
                          format_poly1(chosen->poly));
    } else {
        v.certificate = *chosen;
    }
    if (!chosen->violation.boundary_only) detail::attach_witness(v, F, cfg);
    return v;
}

// ---------------------------------------------------------------------------
// Independent re-verification.

namespace detail {

/// True when the coefficient vectors of p and q are linearly dependent,
/// checked through all 2x2 minors over the union of monomials.
inline bool coefficient_vectors_dependent(const Poly2& p, const Poly2& q) {
    std::vector<Exp2> keys;
    for (const auto& [e, c] : p.terms()) keys.push_back(e);
    for (const auto& [e, c] : q.terms())
        if (is_zero(p.coeff(e))) keys.push_back(e);
    for (std::size_t i = 0; i < keys.size(); ++i)
        for (std::size_t j = i + 1; j < keys.size(); ++j)
            if (p.coeff(keys[i]) * q.coeff(keys[j]) != p.coeff(keys[j]) * q.coeff(keys[i])) return false;
    return true;
}

inline bool witness_holds(const PolyMap& F, const Witness& w) {
    RatVec p{Rat(w.point.x), Rat(w.point.y)};
    return !disk_test_at(jacobian(F), p).inside;
}

/// Whether the generators span a group that is neither trivial nor Z2.
inline bool generators_exceed_z2(const std::vector<Generator>& gens) {
    bool reflection = false, half_turn = false, higher_rotation = false;
    for (const auto& g : gens) {
        double det = g.approx.det(), tr = g.approx.trace();
        if (det < 0) {
            reflection = true;
        } else if (std::abs(tr + 2) < 1e-12) {
            half_turn = true;
        } else if (std::abs(tr - 2) > 1e-12) {
            higher_rotation = true;
        }
    }
    return higher_rotation || (reflection && half_turn);
}

}  // namespace detail

inline bool recheck(const PolyMap& F, const Verdict& v, double tol = kDefaultSymmetryTol) {
    struct Visitor {
        const PolyMap& F;
        double tol;

        bool operator()(const cert::NormalFormPositive& c) const {
            if (!(reconstruct(c.nf) == F)) return false;
            UnivariateSpectral us = univariate_reduce(c.nf);
            if (!(us.t == c.spectral.t) || !(us.d == c.spectral.d)) return false;
            JuryPolys jp = jury_polynomials(us);
            for (const Poly1* p : jp.all())
                if (!sturm_positive(*p)) return false;
            // Cross-check trace and determinant against the Jacobian directly.
            JacobianSym J = jacobian(F);
            for (int k = -3; k <= 3; ++k) {
                RatVec pt{rat(k, 2), rat(1 - k, 3)};
                RatMat m = J.at(pt);
                Rat u = c.nf.a * pt.x + c.nf.b * pt.y;
                if (m.trace() != us.t.eval(u) || m.det() != us.d.eval(u)) return false;
            }
            return true;
        }
        bool operator()(const cert::OriginNotFixed& c) const {
            return (!is_zero(c.c1) || !is_zero(c.c2)) && c.c1 == F.f1.coeff({0, 0}) && c.c2 == F.f2.coeff({0, 0});
        }
        bool operator()(const cert::NonProportional& c) const {
            if (!(c.n1 == truncate_below(F.f1, 2)) || !(c.n2 == truncate_below(F.f2, 2))) return false;
            return !detail::coefficient_vectors_dependent(c.n1, c.n2);
        }
        bool operator()(const cert::NotSingleLinearForm& c) const {
            Poly2 n1 = truncate_below(F.f1, 2), n2 = truncate_below(F.f2, 2);
            if (!(c.alpha * c.r2 == n1) || !(c.beta * c.r2 == n2) || c.r2.is_zero()) return false;
            return !detail::coefficient_vectors_dependent(diff(c.r2, Var::X), diff(c.r2, Var::Y));
        }
        bool operator()(const cert::UnivariateRootFailure& c) const {
            if (!(reconstruct(c.nf) == F)) return false;
            JuryPolys jp = jury_polynomials(univariate_reduce(c.nf));
            if (!(*jp.all()[c.index] == c.poly)) return false;
            if (c.violation.u_star) {
                if (sgn(c.poly.eval(*c.violation.u_star)) > 0) return false;
                return !disk_test_at(jacobian(F), point_on_line(c.nf.a, c.nf.b, *c.violation.u_star)).inside;
            }
            if (!c.violation.root_interval) return false;
            auto seq = sturm_sequence(squarefree_part(c.poly));
            return count_roots_in(seq, c.violation.root_interval->lo, c.violation.root_interval->hi) >= 1;
        }
        bool operator()(const cert::SymmetryObstruction& c) const {
            if (F.is_linear()) return false;
            for (const auto& g : c.group.generators)
                if (!is_equivariant(F, g, tol)) return false;
            return detail::generators_exceed_z2(c.group.generators);
        }
        bool operator()(const cert::NumericWitness& c) const { return detail::witness_holds(F, c.witness); }
    };
    if (!std::visit(Visitor{F, tol}, v.certificate)) return false;
    if (v.witness && v.witness->certified && !detail::witness_holds(F, *v.witness)) return false;
    return true;
}

// ---------------------------------------------------------------------------

inline std::string format_rat_pair(const Rat& a, const Rat& b) { return to_string(a) + "," + to_string(b); }

inline std::string explain(const Verdict& v) {
    std::ostringstream os;
    const std::string map_text = format_map(v.map);
    os << "map: " << map_text << "\n";
    os << "status: " << to_string(v.status) << "\n";
    os << "certificate: " << certificate_kind(v.certificate) << "\n";
    struct Visitor {
        std::ostringstream& os;
        const std::string& map_text;

        void operator()(const cert::NormalFormPositive& c) const {
            os << "  normal form with B = [[" << to_string(c.nf.B(0, 0)) << ", " << to_string(c.nf.B(0, 1)) << "], ["
               << to_string(c.nf.B(1, 0)) << ", " << to_string(c.nf.B(1, 1)) << "]], u = " << to_string(c.nf.a)
               << "*x + " << to_string(c.nf.b) << "*y, (alpha, beta) = (" << to_string(c.nf.alpha) << ", "
               << to_string(c.nf.beta) << "), r(u) = " << format_poly1(c.nf.r) << "\n";
            os << "  trace t(u) = " << format_poly1(c.spectral.t) << ", det d(u) = " << format_poly1(c.spectral.d)
               << "\n";
            os << "  Jury polynomials, each certified positive on the real line by a Sturm count:\n";
            auto all = c.polys.all();
            for (int k = 0; k < 3; ++k) os << "    " << jury_poly_name(k) << " = " << format_poly1(*all[k]) << "\n";
        }
        void operator()(const cert::OriginNotFixed& c) const {
            os << "  F(0,0) = (" << to_string(c.c1) << ", " << to_string(c.c2) << ") is not the origin\n";
        }
        void operator()(const cert::NonProportional& c) const {
            os << "  quotient of nonlinear parts is non-constant: N1 = " << format_poly(c.n1)
               << ", N2 = " << format_poly(c.n2) << "\n";
            os << "  so some Jacobian eigenvalue leaves the open unit disk\n";
        }
        void operator()(const cert::NotSingleLinearForm& c) const {
            os << "  nonlinear part (" << to_string(c.alpha) << ", " << to_string(c.beta) << ") * ("
               << format_poly(c.r2) << ") does not depend on a single linear form a*x + b*y\n";
        }
        void operator()(const cert::UnivariateRootFailure& c) const {
            os << "  Jury polynomial " << jury_poly_name(c.index) << " = " << format_poly1(c.poly)
               << " is not positive everywhere\n";
            if (c.violation.u_star) {
                RatVec p = point_on_line(c.nf.a, c.nf.b, *c.violation.u_star);
                os << "  at u* = " << to_string(*c.violation.u_star) << " (point " << to_string(p.x) << ", "
                   << to_string(p.y) << ")" << (c.violation.boundary_only ? ", eigenvalue modulus exactly 1" : "")
                   << "\n";
                os << "  recheck: dmyq jury \"" << map_text << "\" --point " << format_rat_pair(p.x, p.y) << "\n";
            } else if (c.violation.root_interval) {
                os << "  root in (" << to_string(c.violation.root_interval->lo) << ", "
                   << to_string(c.violation.root_interval->hi) << "]\n";
            }
        }
        void operator()(const cert::SymmetryObstruction& c) const {
            os << "  nonlinear map with symmetry group " << c.group.label()
               << "; only trivial or Z2 symmetry is compatible with eigenvalues inside the unit disk\n";
            os << "  recheck: dmyq symmetry \"" << map_text << "\"\n";
        }
        void operator()(const cert::NumericWitness& c) const {
            os << "  spectral radius " << c.witness.spectral_radius << " at (" << c.witness.point.x << ", "
               << c.witness.point.y << ")\n";
        }
    };
    std::visit(Visitor{os, map_text}, v.certificate);
    os << "symmetry: " << v.symmetry.label() << "\n";
    if (v.witness) {
        os << "witness: spectral radius " << v.witness->spectral_radius << " at (" << v.witness->point.x << ", "
           << v.witness->point.y << ")" << (v.witness->certified ? ", certified exactly" : ", not certified") << "\n";
        os << "  recheck: dmyq jury \"" << map_text << "\" --point "
           << format_rat_pair(Rat(v.witness->point.x), Rat(v.witness->point.y)) << "\n";
    }
    for (const auto& n : v.notes) os << "note: " << n << "\n";
    return os.str();
}

}  // namespace dmyq
