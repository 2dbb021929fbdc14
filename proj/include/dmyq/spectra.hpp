#pragma once

// Eigenvalues of the Jacobian of a planar polynomial map.
//
// For a real 2x2 matrix with trace t and determinant d, both eigenvalues lie
// strictly inside the unit disk iff |d| < 1 and |t| < 1 + d (Schur-Cohn/Jury).
// Over a whole line of points this is equivalent to the three strict
// inequalities 1 - d > 0, 1 + d - t > 0 and 1 + d + t > 0 (their last two sum
// to 2(1 + d) > 0, which supplies d > -1).

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "normal_form.hpp"
#include "polymap.hpp"
#include "sturm.hpp"

namespace dmyq {

/// Exact partial derivatives: entries(r, c) = d F_r / d v_c.
struct JacobianSym {
    std::array<std::array<Poly2, 2>, 2> entries;

    [[nodiscard]] const Poly2& operator()(int r, int c) const { return entries[r][c]; }

    [[nodiscard]] RatMat at(const RatVec& p) const {
        return RatMat::from(eval(entries[0][0], p), eval(entries[0][1], p), eval(entries[1][0], p),
                            eval(entries[1][1], p));
    }

    [[nodiscard]] Poly2 trace() const { return entries[0][0] + entries[1][1]; }
    [[nodiscard]] Poly2 det() const { return entries[0][0] * entries[1][1] - entries[0][1] * entries[1][0]; }
};

inline JacobianSym jacobian(const PolyMap& F) {
    JacobianSym J;
    J.entries[0][0] = diff(F.f1, Var::X);
    J.entries[0][1] = diff(F.f1, Var::Y);
    J.entries[1][0] = diff(F.f2, Var::X);
    J.entries[1][1] = diff(F.f2, Var::Y);
    return J;
}

struct DiskTest {
    bool inside = false;
    Rat trace;
    Rat det;
};

/// Strict test; eigenvalues of modulus exactly one count as outside.
inline DiskTest disk_test(const Rat& t, const Rat& d) {
    DiskTest r;
    r.trace = t;
    r.det = d;
    r.inside = abs(d) < 1 && abs(t) < 1 + d;
    return r;
}

inline DiskTest disk_test_at(const JacobianSym& J, const RatVec& point) {
    RatMat m = J.at(point);
    return disk_test(m.trace(), m.det());
}

/// max |lambda| from trace and determinant in closed form. A complex pair
/// has |lambda|^2 = d.
inline double spectral_radius(double t, double d) {
    double disc = t * t - 4 * d;
    if (disc >= 0) {
        double s = std::sqrt(disc);
        return std::max(std::abs(t + s), std::abs(t - s)) / 2;
    }
    return std::sqrt(std::max(d, 0.0));
}

inline double spectral_radius(const FloatMat& m) { return spectral_radius(m.trace(), m.det()); }

// ---------------------------------------------------------------------------
// Global decision for maps in normal form.

/// Trace and determinant of JF as polynomials in u = a x + b y.
struct UnivariateSpectral {
    Poly1 t;
    Poly1 d;
};

/// JF = B + r'(u) (alpha, beta)^T (a, b) is a rank-one update of B, so
/// tr JF = tr B + r'(u) (a alpha + b beta) and
/// det JF = det B + r'(u) (a, b) adj(B) (alpha, beta)^T.
inline UnivariateSpectral univariate_reduce(const NormalFormData& nf) {
    Poly1 dr = nf.r.derivative();
    RatMat adj = nf.B.adjugate();
    Rat trace_gain = nf.a * nf.alpha + nf.b * nf.beta;
    Rat det_gain = nf.a * (adj(0, 0) * nf.alpha + adj(0, 1) * nf.beta) + nf.b * (adj(1, 0) * nf.alpha + adj(1, 1) * nf.beta);
    UnivariateSpectral us;
    us.t = Poly1::constant(nf.B.trace()) + trace_gain * dr;
    us.d = Poly1::constant(nf.B.det()) + det_gain * dr;
    return us;
}

/// The three Jury polynomials, each required to be strictly positive.
struct JuryPolys {
    Poly1 one_minus_det;           // 1 - d
    Poly1 one_plus_det_minus_tr;   // 1 + d - t
    Poly1 one_plus_det_plus_tr;    // 1 + d + t

    [[nodiscard]] std::array<const Poly1*, 3> all() const {
        return {&one_minus_det, &one_plus_det_minus_tr, &one_plus_det_plus_tr};
    }
};

inline const char* jury_poly_name(int k) {
    static const char* names[] = {"1 - d", "1 + d - t", "1 + d + t"};
    return names[k];
}

inline JuryPolys jury_polynomials(const UnivariateSpectral& us) {
    Poly1 one = Poly1::constant(Rat(1));
    return {one - us.d, one + us.d - us.t, one + us.d + us.t};
}

struct GlobalDecision {
    bool holds = false;
    JuryPolys polys;
    std::array<bool, 3> positive{};
};

inline GlobalDecision global_disk_decision(const UnivariateSpectral& us) {
    GlobalDecision g;
    g.polys = jury_polynomials(us);
    auto all = g.polys.all();
    for (int k = 0; k < 3; ++k) g.positive[k] = sturm_positive(*all[k]);
    g.holds = g.positive[0] && g.positive[1] && g.positive[2];
    return g;
}

/// Where a Jury polynomial fails to be strictly positive.
struct Violation {
    /// A rational u with P(u) <= 0; absent only for boundary-only failures at
    /// irrational roots.
    std::optional<Rat> u_star;
    /// P >= 0 everywhere; failure comes from roots alone (modulus exactly one).
    bool boundary_only = false;
    /// Isolating interval (lo, hi] of a root, when the failure is at a root.
    std::optional<RootInterval> root_interval;
};

/// Locates a point where P is not strictly positive. Sample points strictly
/// between the isolated roots (and beyond them) catch every sign change; if
/// none is negative, P only touches zero, and a rational root is recovered
/// when the simplest rational of a tight isolating interval is one.
inline std::optional<Violation> find_violation(const Poly1& P) {
    if (sturm_positive(P)) return std::nullopt;
    Violation v;
    if (P.degree() <= 0) {
        v.u_star = Rat(0);
        v.boundary_only = P.is_zero();
        return v;
    }
    auto roots = isolate_real_roots(P);
    const Poly1 sqf = squarefree_part(P);
    const auto seq = sturm_sequence(sqf);
    std::vector<Rat> samples;
    if (roots.empty()) {
        samples.push_back(Rat(0));
    } else {
        samples.push_back(roots.front().lo - 1);
        for (std::size_t k = 0; k + 1 < roots.size(); ++k) {
            // Adjacent intervals may share an endpoint that is itself a root;
            // shrink the right one until a gap opens.
            while (roots[k].hi == roots[k + 1].lo && is_zero(sqf.eval(roots[k].hi))) {
                Rat mid = (roots[k + 1].lo + roots[k + 1].hi) / 2;
                if (count_roots_in(seq, roots[k + 1].lo, mid) > 0)
                    roots[k + 1].hi = mid;
                else
                    roots[k + 1].lo = mid;
            }
            samples.push_back((roots[k].hi + roots[k + 1].lo) / 2);
        }
        samples.push_back(roots.back().hi + 1);
    }
    for (const Rat& s : samples) {
        if (sgn(P.eval(s)) < 0) {
            v.u_star = s;
            return v;
        }
    }
    v.boundary_only = true;
    v.root_interval = roots.front();
    Rat eps(1);
    mpz_ui_pow_ui(eps.get_den_mpz_t(), 2, 64);
    eps.canonicalize();
    for (const auto& iv : roots) {
        Rat lo = iv.lo, hi = iv.hi;
        while (hi - lo > eps) {
            Rat mid = (lo + hi) / 2;
            if (count_roots_in(seq, lo, mid) > 0)
                hi = mid;
            else
                lo = mid;
        }
        Rat c = simplest_between(lo, hi);
        if (is_zero(P.eval(c))) {
            v.u_star = c;
            v.root_interval = RootInterval{lo, hi};
            return v;
        }
    }
    return v;
}

/// A point on the line a x + b y = u with (a, b) normalized as in NormalFormData.
inline RatVec point_on_line(const Rat& a, const Rat& b, const Rat& u) {
    if (!is_zero(a)) return {u / a, Rat(0)};
    return {Rat(0), u / b};
}

// ---------------------------------------------------------------------------
// Numeric witness search.

struct WitnessConfig {
    double grid_extent = 16;
    double grid_step = 0.25;
    int restarts = 8;
    std::uint64_t seed = 42;
    int max_iters = 10000;
    /// The search box doubles on exhaustion until its half-width passes this.
    double max_extent = 1024;
};

struct Witness {
    Vec2<double> point;
    double spectral_radius = 0;
    bool certified = false;
};

/// Float evaluator for the four Jacobian entries with shared power tables.
class CompiledJacobian {
public:
    explicit CompiledJacobian(const JacobianSym& J) {
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c)
                for (const auto& [e, coef] : J(r, c).terms()) {
                    terms_[r][c].push_back({e.i, e.j, coef.get_d()});
                    max_i_ = std::max(max_i_, e.i);
                    max_j_ = std::max(max_j_, e.j);
                }
    }

    [[nodiscard]] FloatMat at(double x, double y) const {
        std::vector<double> px(max_i_ + 1, 1.0), py(max_j_ + 1, 1.0);
        for (int k = 1; k <= max_i_; ++k) px[k] = px[k - 1] * x;
        for (int k = 1; k <= max_j_; ++k) py[k] = py[k - 1] * y;
        FloatMat m;
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) {
                double acc = 0;
                for (const auto& t : terms_[r][c]) acc += t.c * px[t.i] * py[t.j];
                m(r, c) = acc;
            }
        return m;
    }

    [[nodiscard]] double radius(double x, double y) const {
        double r = spectral_radius(at(x, y));
        return std::isfinite(r) ? r : -1.0;
    }

private:
    struct Term {
        int i, j;
        double c;
    };
    std::array<std::array<std::vector<Term>, 2>, 2> terms_;
    int max_i_ = 0, max_j_ = 0;
};

namespace detail {

struct Candidate {
    double radius;
    double x, y;
};

/// Larger radius first; ties broken lexicographically on the point.
inline bool better(const Candidate& a, const Candidate& b) {
    if (a.radius != b.radius) return a.radius > b.radius;
    if (a.x != b.x) return a.x < b.x;
    return a.y < b.y;
}

/// Hill climb on the spectral radius, confined to the box [-extent, extent]^2.
inline Candidate compass_ascent(const CompiledJacobian& cj, Candidate start, double step, double extent, int budget) {
    static constexpr std::array<std::array<int, 2>, 8> dirs{
        {{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {1, -1}, {-1, 1}, {-1, -1}}};
    Candidate cur = start;
    for (int it = 0; it < budget; ++it) {
        Candidate best = cur;
        for (const auto& d : dirs) {
            Candidate c{0, std::clamp(cur.x + d[0] * step, -extent, extent),
                        std::clamp(cur.y + d[1] * step, -extent, extent)};
            c.radius = cj.radius(c.x, c.y);
            if (better(c, best) && c.radius > best.radius) best = c;
        }
        if (best.radius > cur.radius) {
            cur = best;
        } else {
            step /= 2;
            if (step < 1e-12 * std::max(1.0, std::hypot(cur.x, cur.y))) break;
        }
    }
    return cur;
}

}  // namespace detail

/// Maximizes the spectral radius of JF over a grid followed by compass-step
/// ascent from the best cells. Returns the best point found once its radius
/// reaches 1 + 1e-9; the point is snapped to a dyadic rational (denominator
/// 2^40) and re-tested exactly, which sets `certified`.
inline std::optional<Witness> witness_search(const PolyMap& F, const WitnessConfig& cfg = {}) {
    const JacobianSym J = jacobian(F);
    const CompiledJacobian cj(J);
    std::mt19937_64 rng(cfg.seed);
    double extent = cfg.grid_extent;
    double step = cfg.grid_step;
    const int restarts = std::max(cfg.restarts, 1);
    for (;;) {
        const long cells = static_cast<long>(std::floor(2 * extent / step + 1e-9)) + 1;
        std::vector<detail::Candidate> grid;
        grid.reserve(static_cast<std::size_t>(cells * cells));
        for (long ix = 0; ix < cells; ++ix)
            for (long iy = 0; iy < cells; ++iy) {
                double x = -extent + ix * step, y = -extent + iy * step;
                grid.push_back({cj.radius(x, y), x, y});
            }
        std::size_t top = std::min<std::size_t>(grid.size(), static_cast<std::size_t>(restarts));
        std::partial_sort(grid.begin(), grid.begin() + static_cast<long>(top), grid.end(), detail::better);

        detail::Candidate best = grid.front();
        std::uniform_real_distribution<double> jitter(-step / 2, step / 2);
        const int budget = std::max(1, cfg.max_iters / restarts);
        for (std::size_t k = 0; k < top; ++k) {
            detail::Candidate start = grid[k];
            start.x = std::clamp(start.x + jitter(rng), -extent, extent);
            start.y = std::clamp(start.y + jitter(rng), -extent, extent);
            start.radius = cj.radius(start.x, start.y);
            if (detail::better(grid[k], start)) start = grid[k];
            detail::Candidate end = detail::compass_ascent(cj, start, step, extent, budget);
            if (detail::better(end, best)) best = end;
        }

        if (best.radius >= 1 + 1e-9) {
            RatVec rp{dyadic_round(best.x), dyadic_round(best.y)};
            DiskTest exact = disk_test_at(J, rp);
            Witness w;
            w.point = {rp.x.get_d(), rp.y.get_d()};
            w.spectral_radius = spectral_radius(exact.trace.get_d(), exact.det.get_d());
            w.certified = !exact.inside;
            return w;
        }
        if (extent * 2 > cfg.max_extent) return std::nullopt;
        extent *= 2;
        step *= 2;
    }
}

}  // namespace dmyq
