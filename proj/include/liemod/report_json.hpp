#pragma once

#include <nlohmann/json.hpp>
#include <string>

#include "liemod/complexity.hpp"
#include "liemod/variety.hpp"

namespace liemod {

// nlohmann::json keeps object keys sorted, so every emitter here produces
// byte-identical output for identical inputs regardless of worker count.

inline nlohmann::json dimension_to_json(const DimensionSummary& d) {
    nlohmann::json j;
    j["lo"] = d.lo;
    j["hi"] = d.hi;
    j["certified"] = d.certified;
    j["value"] = d.value;
    j["heuristic"] = d.heuristic;
    j["method"] = d.method;
    if (d.slope_estimate >= 0.0) j["slope_estimate"] = d.slope_estimate;
    return j;
}

inline nlohmann::json variety_to_json(const VarietyReport& r) {
    nlohmann::json j;
    j["schema"] = 1;
    j["kind"] = "variety";
    j["n"] = r.n;
    j["p"] = r.p;
    j["shape"] = r.shape.to_string();
    j["k"] = r.k;
    j["dim"] = r.dim;
    j["shortcut"] = r.shortcut_projective;
    if (r.shortcut_projective) j["shortcut_reason"] = r.shortcut_reason;
    j["points"] = nlohmann::json::array();
    for (const PointRecord& pt : r.points) {
        nlohmann::json pj;
        pj["alpha"] = pt.alpha;
        pj["e"] = pt.e;
        pj["rank"] = pt.rank;
        pj["member"] = pt.member;
        j["points"].push_back(std::move(pj));
    }
    if (r.sigma) {
        j["sigma"]["free_count"] = r.sigma->free_count;
        j["sigma"]["pf_dim"] = r.sigma->pf_dim;
        j["sigma"]["group_order"] = r.sigma->group_order;
    }
    j["generic"] = nlohmann::json::array();
    for (const GenericOutcome& g : r.generic) {
        nlohmann::json gj;
        gj["chart"] = g.chart;
        gj["outcome"] = g.outcome;
        gj["method"] = g.method;
        gj["exact"] = g.exact;
        j["generic"].push_back(std::move(gj));
    }
    j["dimension"] = dimension_to_json(r.dimension);
    return j;
}

// Flat per-point rows; alpha codes are ';'-joined to stay one CSV cell.
inline std::string variety_to_csv(const VarietyReport& r) {
    std::string out = "n,p,shape,e,alpha,rank,member\n";
    const std::string prefix =
        std::to_string(r.n) + "," + std::to_string(r.p) + ",\"" + r.shape.to_string() + "\",";
    for (const PointRecord& pt : r.points) {
        std::string alpha;
        for (size_t i = 0; i < pt.alpha.size(); ++i) {
            if (i) alpha += ';';
            alpha += std::to_string(pt.alpha[i]);
        }
        out += prefix + std::to_string(pt.e) + "," + alpha + "," + std::to_string(pt.rank) + "," +
               (pt.member ? "1" : "0") + "\n";
    }
    return out;
}

inline nlohmann::json certificate_to_json(const ComplexityCertificate& c) {
    nlohmann::json j;
    j["schema"] = 1;
    j["kind"] = "certificate";
    j["n"] = c.n;
    j["p"] = c.p;
    j["m"] = c.m;
    j["dim"] = c.dim;
    j["subgroups"] = nlohmann::json::array();
    for (const SubgroupResult& s : c.subgroups) {
        nlohmann::json sj;
        sj["shape"] = s.shape.to_string();
        sj["summary"] = dimension_to_json(s.report.dimension);
        if (s.report.sigma) sj["pf_dim"] = s.report.sigma->pf_dim;
        j["subgroups"].push_back(std::move(sj));
    }
    j["certified"] = c.certified;
    if (c.certified) {
        j["value"] = c.value;
    } else {
        j["bracket"] = {c.lo, c.hi};
        j["estimate"] = c.value;
    }
    j["method"] = c.method;
    if (!c.notes.empty()) j["notes"] = c.notes;
    return j;
}

inline nlohmann::json conjecture_to_json(const ConjectureRecord& r) {
    nlohmann::json j;
    j["schema"] = 1;
    j["kind"] = "conjecture";
    j["m"] = r.m;
    j["p"] = r.p;
    j["n"] = r.n;
    j["verdict"] = r.verdict;
    j["report"] = variety_to_json(r.report);
    return j;
}

inline nlohmann::json consistency_to_json(const ConsistencyRecord& r) {
    nlohmann::json j;
    j["schema"] = 1;
    j["kind"] = "consistency";
    j["n"] = r.n;
    j["p"] = r.p;
    j["m"] = r.m;
    j["cofactor"] = r.cofactor;
    j["whole"] = certificate_to_json(r.whole);
    j["powers"] = nlohmann::json::array();
    for (const ComplexityCertificate& c : r.powers) j["powers"].push_back(certificate_to_json(c));
    j["expected"] = {r.expected_lo, r.expected_hi};
    j["agree"] = r.agree;
    j["certified"] = r.certified;
    return j;
}

}  // namespace liemod
