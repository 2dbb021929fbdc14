#pragma once

// JSON forms of analysis results. Exact quantities are "num/den" strings;
// floating-point quantities are JSON numbers.

#include <nlohmann/json.hpp>

#include "dynamics.hpp"
#include "engine.hpp"
#include "mapio.hpp"
#include "normal_form.hpp"
#include "spectra.hpp"
#include "symmetry.hpp"

namespace dmyq {

using nlohmann::json;

inline json to_json(const NormalFormData& nf) {
    return {{"B", to_json(nf.B)},         {"a", to_string(nf.a)},         {"b", to_string(nf.b)},
            {"alpha", to_string(nf.alpha)}, {"beta", to_string(nf.beta)}, {"p", to_json(nf.p)}};
}

inline json to_json(const DecomposeFailure& f) { return {{"reason", to_string(f.reason)}, {"detail", f.detail}}; }

inline json to_json(const FloatMat& m) {
    return json::array({json::array({m(0, 0), m(0, 1)}), json::array({m(1, 0), m(1, 1)})});
}

inline json to_json(const Generator& g) { return g.exact ? to_json(*g.exact) : to_json(g.approx); }

inline json to_json(const SymmetryGroup& g) {
    json gens = json::array();
    for (const auto& gen : g.generators) gens.push_back(to_json(gen));
    json n = g.rotation.continuous ? json(nullptr) : json(g.rotation.n);
    json axis = g.reflection_axis_angle ? json(*g.reflection_axis_angle) : json(nullptr);
    return {{"classification", to_string(g.classification)},
            {"n", n},
            {"reflection_axis", axis},
            {"generators", gens}};
}

inline json to_json(const Witness& w) {
    return {{"point", json::array({w.point.x, w.point.y})},
            {"spectral_radius", w.spectral_radius},
            {"certified", w.certified}};
}

inline json to_json(const UnivariateSpectral& us) { return {{"t", to_json(us.t)}, {"d", to_json(us.d)}}; }

inline json to_json(const JuryPolys& jp) {
    return {{"one_minus_d", to_json(jp.one_minus_det)},
            {"one_plus_d_minus_t", to_json(jp.one_plus_det_minus_tr)},
            {"one_plus_d_plus_t", to_json(jp.one_plus_det_plus_tr)}};
}

inline json to_json(const Certificate& c) {
    struct Visitor {
        json operator()(const cert::NormalFormPositive& c) const {
            return {{"normal_form", to_json(c.nf)}, {"univariate", to_json(c.spectral)}, {"jury", to_json(c.polys)}};
        }
        json operator()(const cert::OriginNotFixed& c) const {
            return {{"constant_terms", json::array({to_string(c.c1), to_string(c.c2)})}};
        }
        json operator()(const cert::NonProportional& c) const { return {{"n1", to_json(c.n1)}, {"n2", to_json(c.n2)}}; }
        json operator()(const cert::NotSingleLinearForm& c) const {
            return {{"alpha", to_string(c.alpha)}, {"beta", to_string(c.beta)}, {"r2", to_json(c.r2)}};
        }
        json operator()(const cert::UnivariateRootFailure& c) const {
            json j{{"normal_form", to_json(c.nf)},
                   {"polynomial", jury_poly_name(c.index)},
                   {"coefficients", to_json(c.poly)},
                   {"boundary_only", c.violation.boundary_only},
                   {"u_star", c.violation.u_star ? json(to_string(*c.violation.u_star)) : json(nullptr)}};
            if (c.violation.root_interval)
                j["root_interval"] = {to_string(c.violation.root_interval->lo),
                                      to_string(c.violation.root_interval->hi)};
            return j;
        }
        json operator()(const cert::SymmetryObstruction& c) const {
            return {{"group", to_json(c.group)}, {"structural", c.structural}};
        }
        json operator()(const cert::NumericWitness& c) const { return {{"witness", to_json(c.witness)}}; }
    };
    json j = std::visit(Visitor{}, c);
    j["kind"] = certificate_kind(c);
    return j;
}

inline json to_json(const Verdict& v) {
    return {{"status", to_string(v.status)},
            {"map", format_map(v.map)},
            {"certificate", to_json(v.certificate)},
            {"symmetry", to_json(v.symmetry)},
            {"witness", v.witness ? to_json(*v.witness) : json(nullptr)},
            {"witness_exhausted", v.witness_exhausted},
            {"notes", v.notes}};
}

inline json to_json(const OrbitResult& r) {
    json norm = std::isfinite(r.final_norm) ? json(r.final_norm) : json(nullptr);
    json pt = std::isfinite(r.final_point.x) && std::isfinite(r.final_point.y)
                  ? json::array({r.final_point.x, r.final_point.y})
                  : json(nullptr);
    return {{"outcome", to_string(r.outcome)}, {"steps", r.steps}, {"final_point", pt}, {"final_norm", norm}};
}

inline json to_json(const BasinSummary& s) {
    json ex = json::array();
    for (const auto& e : s.exceptions)
        ex.push_back({{"x0", json::array({e.start.x, e.start.y})}, {"outcome", to_string(e.outcome)}, {"steps", e.steps}});
    return {{"extent", s.grid.extent},
            {"step", s.grid.step},
            {"grid_size", s.total()},
            {"counts", {{"Converged", s.converged}, {"Escaped", s.escaped}, {"Undecided", s.undecided}}},
            {"worst_steps", s.worst_steps},
            {"exceptions", ex}};
}

/// One row per exception: x0_x, x0_y, outcome, steps.
inline std::string exceptions_csv(const BasinSummary& s) {
    std::string out = "x0_x,x0_y,outcome,steps\n";
    for (const auto& e : s.exceptions) {
        json row = json::array({e.start.x, e.start.y});
        out += row[0].dump() + "," + row[1].dump() + "," + to_string(e.outcome) + "," + std::to_string(e.steps) + "\n";
    }
    return out;
}

}  // namespace dmyq
