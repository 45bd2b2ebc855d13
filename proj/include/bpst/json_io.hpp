#pragma once

#include <json.hpp>

#include "bpst/obstruction.hpp"
#include "bpst/presentation.hpp"
#include "bpst/render.hpp"

namespace bpst {

using Json = nlohmann::ordered_json;

/// Big integers render as JSON numbers while they fit int64, decimal strings
/// beyond that.
inline Json int_to_json(const Int& v)
{
    if (fits_int64(v))
        return Json(v.convert_to<long long>());
    return Json(v.str());
}

inline Json to_json(const Presentation& pr)
{
    Json j;
    j["n"] = pr.n;
    j["k"] = pr.k;
    j["p"] = pr.p;
    j["gamma_degrees"] = pr.gamma_degrees;
    Json ideal = Json::array();
    for (const auto& [c, deg] : pr.ideal)
        ideal.push_back(Json::array({int_to_json(c), deg}));
    j["ideal"] = ideal;
    j["staircase"] = pr.staircase;
    j["minimal_generators"] = pr.minimal_generators;
    j["gamma_multipliers"] = pr.gamma_multipliers;
    return j;
}

inline Json to_json(const ModuleShape& m)
{
    Json j;
    j["free"] = m.free_rank;
    j["torsion"] = m.torsion;
    return j;
}

/// Nontrivial bidegrees of a page, ordered by (s+t, s).
inline Json einfty_to_json(const Page& pg)
{
    Json arr = Json::array();
    std::vector<std::pair<long, long>> keys;
    for (const auto& [key, slot] : pg.slots)
        keys.push_back(key);
    std::sort(keys.begin(), keys.end(), [](auto a, auto b) {
        return std::make_tuple(a.first + a.second, a.first) < std::make_tuple(b.first + b.second, b.first);
    });
    for (auto [s, t] : keys) {
        ModuleShape m = pg.shape(s, t);
        Json j;
        j["s"] = s;
        j["t"] = t;
        j["free"] = m.free_rank;
        j["torsion"] = m.torsion;
        arr.push_back(j);
    }
    return arr;
}

inline Json witness_to_json(const Witness& w)
{
    Json j = Json::object();
    for (const auto& [key, val] : w) {
        if (std::holds_alternative<long>(val))
            j[key] = std::get<long>(val);
        else
            j[key] = std::get<std::string>(val);
    }
    return j;
}

inline Json to_json(const ObstructionReport& rep)
{
    Json j;
    j["n"] = rep.query.n;
    j["k"] = rep.query.k;
    j["m"] = rep.query.m;
    j["l"] = rep.query.l;
    j["verdict"] = to_string(rep.verdict);
    Json cs = Json::array();
    for (const auto& c : rep.criteria) {
        Json cj;
        cj["name"] = c.name;
        cj["fires"] = c.fires;
        Json w = witness_to_json(c.witness);
        if (!c.applicable)
            w["applicable"] = false;
        cj["witness"] = w;
        cs.push_back(cj);
    }
    j["criteria"] = cs;
    return j;
}

inline Json to_json(const Constraint& c)
{
    Json j;
    j["s"] = c.s;
    j["m_minus_l"] = c.m_minus_l;
    j["alpha_s"] = c.alpha_s.str();
    j["lhs"] = "beta*(m-l)";
    j["rhs_coeff"] = int_to_json(c.rhs_coeff);
    j["equation"] = c.text();
    j["v2_lhs"] = c.v2_lhs;
    j["v2_rhs_min"] = c.v2_rhs_min;
    j["unsatisfiable"] = c.unsatisfiable;
    return j;
}

inline Json series_to_json(const Series& s)
{
    Json terms = Json::array();
    for (int d = 0; d <= s.max_xdeg(); ++d)
        if (!s.coeff(d).is_zero())
            terms.push_back(Json{{"deg", d}, {"coeff", render(s.coeff(d))}});
    return terms;
}

inline Json series_to_json(const BiSeries& s)
{
    Json terms = Json::array();
    for (const auto& [k, c] : s.terms())
        terms.push_back(Json{{"xdeg", k[0]}, {"ydeg", k[1]}, {"coeff", render(c)}});
    return terms;
}

inline std::string csv_header()
{
    return "n,k,m,l,verdict,first_firing_criterion";
}

inline std::string csv_row(const ObstructionReport& rep)
{
    const CriterionResult* f = rep.first_firing();
    return std::to_string(rep.query.n) + "," + std::to_string(rep.query.k) + ","
           + std::to_string(rep.query.m) + "," + std::to_string(rep.query.l) + ","
           + to_string(rep.verdict) + "," + (f ? f->name : "");
}

} // namespace bpst
