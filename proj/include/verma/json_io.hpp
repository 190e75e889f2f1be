#pragma once

#include <json.hpp>

#include "verma/graded.hpp"
#include "verma/matrix.hpp"
#include "verma/partition.hpp"
#include "verma/ratfn.hpp"
#include "verma/series.hpp"

namespace verma {

using Json = nlohmann::ordered_json;

// Rational -> "p/q" ("/q" omitted when 1); all numbers in reports are exact.
inline Json to_json(const Rational& r) { return r.str(); }

// MPoly -> list of {coeff, exponents} records.
inline Json to_json(const MPoly& p) {
    Json terms = Json::array();
    for (const auto& [e, r] : p.terms()) {
        Json t;
        t["coeff"] = r.str();
        t["exponents"] = e;
        terms.push_back(t);
    }
    return terms;
}

inline Json variables_manifest(const VarTable& t) {
    Json vars = Json::array();
    for (const auto& v : *t) {
        Json j;
        j["name"] = v.name;
        j["weight"] = v.weight;
        vars.push_back(j);
    }
    return vars;
}

// RatFn -> {num, den}.
inline Json to_json(const RatFn& f) {
    Json j;
    j["num"] = to_json(f.num());
    j["den"] = to_json(f.den());
    return j;
}

inline Json scalar_json(const RatFn& f) {
    if (f.is_constant()) return f.constant_value().str();
    return to_json(f);
}

inline Json to_json(const ExactMatrix& m) {
    Json rows = Json::array();
    for (size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (size_t j = 0; j < m.cols(); ++j) row.push_back(scalar_json(m.at(i, j)));
        rows.push_back(row);
    }
    Json j;
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    j["entries"] = rows;
    return j;
}

inline Json to_json(const GradedMap& g) {
    Json comps;
    for (const auto& [d, m] : g.comps) comps[std::to_string(d)] = to_json(m);
    Json j;
    j["shift"] = g.shift;
    j["components"] = comps;
    return j;
}

inline Json to_json(const Partition& p) { return Json(p); }

// One relation-check record: {relation, degrees_checked, passed, first_violation?}.
struct RelationReport {
    std::string relation;
    std::vector<int> degrees_checked;
    bool passed = true;
    bool asserted = true;  // recorded-not-asserted entries never fail a suite
    std::optional<Violation> first_violation;
    std::string note;

    static RelationReport from_map(const std::string& name, const GradedMap& diff,
                                   bool asserted = true) {
        RelationReport r;
        r.relation = name;
        r.asserted = asserted;
        for (const auto& [d, m] : diff.comps) r.degrees_checked.push_back(d);
        auto v = graded_first_nonzero(diff);
        r.passed = !v.has_value();
        r.first_violation = v;
        return r;
    }
};

inline Json to_json(const RelationReport& r) {
    Json j;
    j["relation"] = r.relation;
    j["degrees_checked"] = r.degrees_checked;
    j["passed"] = r.passed;
    j["asserted"] = r.asserted;
    if (r.first_violation) {
        Json v;
        v["degree"] = r.first_violation->level;
        v["row"] = r.first_violation->row;
        v["col"] = r.first_violation->col;
        v["value"] = r.first_violation->value;
        j["first_violation"] = v;
    }
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

struct SuiteReport {
    std::string suite;
    std::vector<RelationReport> checks;
    Json extra;

    bool all_asserted_passed() const {
        for (const auto& c : checks)
            if (c.asserted && !c.passed) return false;
        return true;
    }
};

inline Json to_json(const SuiteReport& s) {
    Json j;
    j["suite"] = s.suite;
    j["passed"] = s.all_asserted_passed();
    Json arr = Json::array();
    for (const auto& c : s.checks) arr.push_back(to_json(c));
    j["checks"] = arr;
    if (!s.extra.is_null()) j["extra"] = s.extra;
    return j;
}

}  // namespace verma
