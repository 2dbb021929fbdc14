#pragma once

// Floating-point orbits of x_{k+1} = F(x_k). This is evidence, not proof.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "polymap.hpp"

namespace dmyq {

struct OrbitConfig {
    long max_iter = 100000;
    double conv_tol = 1e-9;
    double escape_radius = 1e6;
};

enum class Outcome { Converged, Escaped, Undecided };

inline const char* to_string(Outcome o) {
    switch (o) {
        case Outcome::Converged: return "Converged";
        case Outcome::Escaped: return "Escaped";
        case Outcome::Undecided: return "Undecided";
    }
    return "?";
}

struct OrbitResult {
    Outcome outcome = Outcome::Undecided;
    long steps = 0;
    Vec2<double> final_point;
    double final_norm = 0;
    bool non_finite = false;  // escaped by overflow
};

/// Double-precision evaluator with precomputed power tables.
class CompiledMap {
public:
    explicit CompiledMap(const PolyMap& F) {
        for (int k = 0; k < 2; ++k)
            for (const auto& [e, c] : F[k].terms()) {
                terms_[k].push_back({e.i, e.j, c.get_d()});
                max_i_ = std::max(max_i_, e.i);
                max_j_ = std::max(max_j_, e.j);
            }
        px_.assign(max_i_ + 1, 1.0);
        py_.assign(max_j_ + 1, 1.0);
    }

    Vec2<double> operator()(Vec2<double> v) {
        for (int k = 1; k <= max_i_; ++k) px_[k] = px_[k - 1] * v.x;
        for (int k = 1; k <= max_j_; ++k) py_[k] = py_[k - 1] * v.y;
        std::array<double, 2> out{0, 0};
        for (int k = 0; k < 2; ++k)
            for (const auto& t : terms_[k]) out[k] += t.c * px_[t.i] * py_[t.j];
        return {out[0], out[1]};
    }

private:
    struct Term {
        int i, j;
        double c;
    };
    std::array<std::vector<Term>, 2> terms_;
    int max_i_ = 0, max_j_ = 0;
    std::vector<double> px_, py_;
};

inline void validate(const OrbitConfig& cfg) {
    if (cfg.max_iter <= 0 || !(cfg.conv_tol > 0) || !(cfg.escape_radius > 0) || !(cfg.conv_tol < cfg.escape_radius))
        throw std::invalid_argument("orbit config: need positive values and conv_tol < escape_radius");
}

inline OrbitResult iterate(CompiledMap& F, Vec2<double> x0, const OrbitConfig& cfg) {
    OrbitResult r;
    Vec2<double> x = x0;
    for (long k = 1; k <= cfg.max_iter; ++k) {
        x = F(x);
        double n = std::hypot(x.x, x.y);
        r.steps = k;
        r.final_point = x;
        r.final_norm = n;
        if (!std::isfinite(n)) {
            r.outcome = Outcome::Escaped;
            r.non_finite = true;
            r.final_norm = std::numeric_limits<double>::infinity();
            return r;
        }
        if (n > cfg.escape_radius) {
            r.outcome = Outcome::Escaped;
            return r;
        }
        if (n < cfg.conv_tol) {
            r.outcome = Outcome::Converged;
            return r;
        }
    }
    r.outcome = Outcome::Undecided;
    return r;
}

inline OrbitResult iterate(const PolyMap& F, Vec2<double> x0, const OrbitConfig& cfg = {}) {
    validate(cfg);
    CompiledMap cm(F);
    return iterate(cm, x0, cfg);
}

struct GridSpec {
    double extent = 10;
    double step = 0.5;

    /// Points per axis: -extent, -extent + step, ..., up to extent.
    [[nodiscard]] long per_axis() const { return static_cast<long>(std::floor(2 * extent / step + 1e-9)) + 1; }
    [[nodiscard]] double coord(long k) const { return -extent + static_cast<double>(k) * step; }
};

struct BasinException {
    Vec2<double> start;
    Outcome outcome;
    long steps;
};

struct BasinSummary {
    GridSpec grid;
    long converged = 0;
    long escaped = 0;
    long undecided = 0;
    long worst_steps = 0;  // largest step count among converged orbits
    std::vector<BasinException> exceptions;  // sorted by (x, y)

    [[nodiscard]] long total() const { return converged + escaped + undecided; }
};

inline BasinSummary basin_scan(const PolyMap& F, const GridSpec& grid = {}, const OrbitConfig& cfg = {}) {
    if (!(grid.step > 0) || !(grid.extent >= 0)) throw std::invalid_argument("basin_scan: need step > 0, extent >= 0");
    validate(cfg);
    CompiledMap cm(F);
    BasinSummary s;
    s.grid = grid;
    const long n = grid.per_axis();
    for (long ix = 0; ix < n; ++ix)
        for (long iy = 0; iy < n; ++iy) {
            Vec2<double> x0{grid.coord(ix), grid.coord(iy)};
            OrbitResult r = iterate(cm, x0, cfg);
            switch (r.outcome) {
                case Outcome::Converged:
                    ++s.converged;
                    s.worst_steps = std::max(s.worst_steps, r.steps);
                    break;
                case Outcome::Escaped: ++s.escaped; break;
                case Outcome::Undecided: ++s.undecided; break;
            }
            if (r.outcome != Outcome::Converged) s.exceptions.push_back({x0, r.outcome, r.steps});
        }
    std::sort(s.exceptions.begin(), s.exceptions.end(), [](const BasinException& a, const BasinException& b) {
        return a.start.x != b.start.x ? a.start.x < b.start.x : a.start.y < b.start.y;
    });
    return s;
}

}  // namespace dmyq
