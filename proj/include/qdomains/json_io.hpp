#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "conformal.hpp"
#include "fluxes.hpp"
#include "growth.hpp"
#include "medium.hpp"

namespace qdom {

// Ordered JSON keeps key order stable so identical inputs serialize byte-identically.
using Json = nlohmann::ordered_json;

inline Json gauss_to_json(const GaussRat& g) {
    return Json::array({rat_to_string(g.re), rat_to_string(g.im)});
}
inline GaussRat gauss_from_json(const Json& j) {
    if (j.is_string()) return GaussRat(rat_from_string(j.get<std::string>()));
    if (j.is_number()) return GaussRat(rationalize(j.get<double>()));
    if (!j.is_array() || j.size() != 2) throw ValidationError("expected [re, im] pair");
    auto part = [](const Json& v) {
        if (v.is_string()) return rat_from_string(v.get<std::string>());
        if (v.is_number()) return rationalize(v.get<double>());
        throw ValidationError("rational must be a \"p/q\" string or a number");
    };
    return GaussRat(part(j[0]), part(j[1]));
}
inline Rat rat_from_json(const Json& j) {
    if (j.is_string()) return rat_from_string(j.get<std::string>());
    if (j.is_number()) return rationalize(j.get<double>());
    throw ValidationError("rational must be a \"p/q\" string or a number");
}

inline Json map_to_json(const ConformalMap& m) {
    Json j;
    j["z1"] = gauss_to_json(m.z1);
    j["r"] = rat_to_string(m.r);
    Json u = Json::array();
    for (auto& ui : m.u) u.push_back(gauss_to_json(ui));
    j["u"] = u;
    return j;
}
inline ConformalMap map_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("z1") || !j.contains("r"))
        throw ValidationError("map JSON needs z1 and r");
    ConformalMap m;
    m.z1 = gauss_from_json(j.at("z1"));
    m.r = rat_from_json(j.at("r"));
    if (!(m.r > 0)) throw ValidationError("map radius must be positive");
    if (j.contains("u"))
        for (auto& ui : j.at("u")) m.u.push_back(gauss_from_json(ui));
    return m;
}

inline Json fluxes_to_json(const FluxVector& f) {
    Json j;
    j["Q"] = rat_to_string(f.Q);
    for (size_t i = 0; i < f.Qj.size(); ++i)
        j["Q" + std::to_string(i + 1)] = gauss_to_json(f.Qj[i]);
    return j;
}
inline FluxVector fluxes_from_json(const Json& j) {
    FluxVector f;
    f.Q = rat_from_json(j.at("Q"));
    for (int i = 1; j.contains("Q" + std::to_string(i)); ++i)
        f.Qj.push_back(gauss_from_json(j.at("Q" + std::to_string(i))));
    return f;
}

inline Json poly2_to_json(const Poly2& p) {
    Json terms = Json::array();
    for (auto& [e, c] : p.terms())
        terms.push_back(Json::array(
            {e.a, e.b, rat_to_string(c.re), rat_to_string(c.im)}));
    return terms;
}
inline Poly2 poly2_from_json(const Json& j) {
    Poly2 p;
    for (auto& t : j) {
        if (!t.is_array() || t.size() != 4) throw ValidationError("polynomial term must be [a, b, re, im]");
        p.add_term({t[0].get<int>(), t[1].get<int>()},
                   GaussRat(rat_from_string(t[2].get<std::string>()),
                            rat_from_string(t[3].get<std::string>())));
    }
    return p;
}

inline Json diffop_to_json(const DiffOp2& T) {
    Json terms = Json::array();
    for (auto& [e, p] : T.terms()) {
        Json t;
        t["dz"] = e.a;
        t["dzbar"] = e.b;
        t["coeff"] = poly2_to_json(p);
        terms.push_back(t);
    }
    return terms;
}

inline Json schedule_to_json(const SourceSchedule& s) {
    Json j;
    j["z1"] = gauss_to_json(s.z1);
    Json pieces = Json::array();
    for (auto& p : s.pieces) {
        Json pj;
        pj["t0"] = rat_to_string(p.t0);
        pj["t1"] = rat_to_string(p.t1);
        pj["q"] = rat_to_string(p.q);
        Json qj = Json::array();
        for (auto& c : p.qj) qj.push_back(gauss_to_json(c));
        pj["qj"] = qj;
        pieces.push_back(pj);
    }
    j["pieces"] = pieces;
    return j;
}
inline SourceSchedule schedule_from_json(const Json& j) {
    SourceSchedule s;
    s.z1 = gauss_from_json(j.at("z1"));
    for (auto& pj : j.at("pieces")) {
        SchedulePiece p;
        p.t0 = rat_from_json(pj.at("t0"));
        p.t1 = rat_from_json(pj.at("t1"));
        p.q = rat_from_json(pj.at("q"));
        if (pj.contains("qj"))
            for (auto& c : pj.at("qj")) p.qj.push_back(gauss_from_json(c));
        s.pieces.push_back(std::move(p));
    }
    s.validate();
    return s;
}

// Scenario = medium + schedule, the grow/path-check input document.
struct Scenario {
    MediumSpec medium;
    SourceSchedule schedule;
};

inline Scenario scenario_from_json(const Json& j) {
    Scenario sc{MediumSpec::axis(0), {}};
    sc.medium = MediumSpec::parse(j.at("medium").get<std::string>());
    sc.schedule = schedule_from_json(j.at("schedule"));
    return sc;
}
inline Json scenario_to_json(const Scenario& sc) {
    Json j;
    j["medium"] = sc.medium.str();
    j["schedule"] = schedule_to_json(sc.schedule);
    return j;
}

inline Json frame_to_json(const Frame& f) {
    Json j;
    j["t"] = rat_to_string(f.t);
    j["map"] = map_to_json(f.map);
    j["homog_fluxes"] = fluxes_to_json(f.homog);
    j["medium_fluxes"] = fluxes_to_json(f.medium.fluxes);
    j["residuals_zero"] = f.medium.all_zero;
    return j;
}

} // namespace qdom
