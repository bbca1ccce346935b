#pragma once

#include <cstdio>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "snk/error.hpp"
#include "snk/kspace.hpp"
#include "snk/objective.hpp"
#include "snk/tangency.hpp"
#include "snk/transform.hpp"

namespace snk {

enum class Algorithm { constant, enumerate_all, oracle };

inline std::string_view algorithm_name(Algorithm a) {
    switch (a) {
    case Algorithm::constant: return "constant";
    case Algorithm::enumerate_all: return "enumerate";
    case Algorithm::oracle: return "oracle";
    }
    return "?";
}

inline std::optional<Algorithm> algorithm_from_name(std::string_view s) {
    if (s == "constant") return Algorithm::constant;
    if (s == "enumerate") return Algorithm::enumerate_all;
    if (s == "oracle") return Algorithm::oracle;
    return std::nullopt;
}

/**
 * Everything a solve produces: the instance echo, preprocessing
 * results, the candidate table, the winner and its expanded coordinate
 * vector. x is in original coordinates; x_unit repeats it in unit-box
 * coordinates when the instance was normalized from [a, b] bounds.
 *
 * wall_seconds is measured but never serialized, so identical inputs
 * produce byte-identical reports.
 */
struct SolveReport {
    int n = 0;
    double M = 0.0;
    std::optional<ProblemInstance::Bounds> bounds;
    Family family = Family::smoothstep;
    std::map<std::string, double> family_params;
    double center = 0.5;
    Tangency tang;
    Algorithm algorithm = Algorithm::constant;
    std::vector<KSolution> candidates;
    KSolution chosen;
    std::vector<double> x;
    std::vector<double> x_unit;
    long f_eval_count = 0;
    double wall_seconds = 0.0;
};

namespace detail {

using ordered_json = nlohmann::ordered_json;

inline ordered_json tangency_to_json(const TangencyData& t) {
    return ordered_json{{"r", t.r},
                        {"d", t.d},
                        {"residual", t.residual},
                        {"iterations", t.iterations},
                        {"tol", t.tol}};
}

inline TangencyData tangency_from_json(const ordered_json& j) {
    TangencyData t;
    t.r = j.at("r").get<double>();
    t.d = j.at("d").get<double>();
    t.residual = j.at("residual").get<double>();
    t.iterations = j.at("iterations").get<int>();
    t.tol = j.at("tol").get<double>();
    return t;
}

inline ordered_json ksolution_to_json(const KSolution& s) {
    ordered_json j{{"label", std::string(label_name(s.label))},
                   {"k0", s.k0},
                   {"k1", s.k1},
                   {"ky", s.ky}};
    if (s.y)
        j["y"] = *s.y;
    else
        j["y"] = nullptr;
    j["objective"] = s.objective;
    j["feasible"] = s.feasible;
    return j;
}

inline Label label_from_name(const std::string& s) {
    for (Label l : {Label::A, Label::A_minus, Label::C1, Label::C2,
                    Label::C2_minus, Label::C2_plus, Label::C3, Label::custom})
        if (s == label_name(l)) return l;
    throw parameter_error("unknown candidate label: " + s);
}

inline KSolution ksolution_from_json(const ordered_json& j) {
    KSolution s;
    s.label = label_from_name(j.at("label").get<std::string>());
    s.k0 = j.at("k0").get<double>();
    s.k1 = j.at("k1").get<double>();
    s.ky = j.at("ky").get<double>();
    if (!j.at("y").is_null()) s.y = j.at("y").get<double>();
    s.objective = j.at("objective").get<double>();
    s.feasible = j.at("feasible").get<bool>();
    return s;
}

} // namespace detail

inline nlohmann::ordered_json report_to_json(const SolveReport& rep) {
    using detail::ordered_json;
    ordered_json inst{{"n", rep.n},
                      {"M", rep.M},
                      {"family", std::string(family_name(rep.family))},
                      {"params", ordered_json::object()},
                      {"center", rep.center}};
    for (const auto& [k, v] : rep.family_params) inst["params"][k] = v;
    if (rep.bounds) {
        inst["bounds"] = ordered_json{
            {"a", rep.bounds->a}, {"b", rep.bounds->b}, {"M0", rep.bounds->M0}};
    } else {
        inst["bounds"] = nullptr;
    }

    ordered_json j;
    j["instance"] = inst;
    j["preprocessing"] = ordered_json{{"d0", detail::tangency_to_json(rep.tang.d0)},
                                      {"d1", detail::tangency_to_json(rep.tang.d1)}};
    j["algorithm"] = std::string(algorithm_name(rep.algorithm));
    ordered_json cands = ordered_json::array();
    for (const KSolution& s : rep.candidates)
        cands.push_back(detail::ksolution_to_json(s));
    j["candidates"] = cands;
    j["chosen"] = detail::ksolution_to_json(rep.chosen);
    j["x"] = rep.x;
    if (rep.bounds) j["x_unit"] = rep.x_unit;
    j["f_eval_count"] = rep.f_eval_count;
    return j;
}

inline SolveReport report_from_json(const nlohmann::ordered_json& j) {
    SolveReport rep;
    const auto& inst = j.at("instance");
    rep.n = inst.at("n").get<int>();
    rep.M = inst.at("M").get<double>();
    const auto fam = family_from_name(inst.at("family").get<std::string>());
    if (!fam) throw parameter_error("unknown family in report");
    rep.family = *fam;
    for (const auto& [k, v] : inst.at("params").items())
        rep.family_params[k] = v.get<double>();
    rep.center = inst.at("center").get<double>();
    if (!inst.at("bounds").is_null()) {
        const auto& b = inst.at("bounds");
        rep.bounds = ProblemInstance::Bounds{b.at("a").get<double>(),
                                             b.at("b").get<double>(),
                                             b.at("M0").get<double>()};
    }
    rep.tang.d0 = detail::tangency_from_json(j.at("preprocessing").at("d0"));
    rep.tang.d1 = detail::tangency_from_json(j.at("preprocessing").at("d1"));
    const auto alg = algorithm_from_name(j.at("algorithm").get<std::string>());
    if (!alg) throw parameter_error("unknown algorithm in report");
    rep.algorithm = *alg;
    for (const auto& c : j.at("candidates"))
        rep.candidates.push_back(detail::ksolution_from_json(c));
    rep.chosen = detail::ksolution_from_json(j.at("chosen"));
    rep.x = j.at("x").get<std::vector<double>>();
    if (j.contains("x_unit")) rep.x_unit = j.at("x_unit").get<std::vector<double>>();
    rep.f_eval_count = j.at("f_eval_count").get<long>();
    return rep;
}

namespace detail {

inline std::string csv_num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace detail

/// Candidate table as CSV; the winner is marked in the last column.
inline std::string report_to_csv(const SolveReport& rep) {
    std::string out = "label,k0,k1,ky,y,objective,feasible,chosen\n";
    const auto row = [&](const KSolution& s, bool chosen) {
        out += std::string(label_name(s.label));
        out += ',';
        out += detail::csv_num(s.k0);
        out += ',';
        out += detail::csv_num(s.k1);
        out += ',';
        out += detail::csv_num(s.ky);
        out += ',';
        if (s.y) out += detail::csv_num(*s.y);
        out += ',';
        out += detail::csv_num(s.objective);
        out += ',';
        out += s.feasible ? "true" : "false";
        out += ',';
        out += chosen ? "true" : "false";
        out += '\n';
    };
    for (const KSolution& s : rep.candidates) {
        const bool is_chosen = s.label == rep.chosen.label && s.k0 == rep.chosen.k0 &&
                               s.k1 == rep.chosen.k1 && s.ky == rep.chosen.ky;
        row(s, is_chosen);
    }
    return out;
}

namespace detail {

/// Fills the instance echo, preprocessing block and coordinate vectors
/// shared by every solve mode. x_unit holds unit-box coordinates; x is
/// mapped back through the affine bounds when present.
inline void fill_report_common(SolveReport& rep, const ProblemInstance& inst,
                               const Tangency& tang, Algorithm alg,
                               std::vector<double> x_unit) {
    rep.n = inst.n();
    rep.M = inst.M();
    rep.bounds = inst.bounds();
    rep.family = inst.objective().family();
    rep.family_params = inst.objective().params();
    rep.center = inst.objective().center();
    rep.tang = tang;
    rep.algorithm = alg;
    rep.x_unit = std::move(x_unit);
    if (rep.bounds) {
        const AffineMap map{rep.bounds->a, rep.bounds->b};
        rep.x.reserve(rep.x_unit.size());
        for (double v : rep.x_unit) rep.x.push_back(map.to_original(v));
    } else {
        rep.x = rep.x_unit;
    }
}

} // namespace detail

} // namespace snk
