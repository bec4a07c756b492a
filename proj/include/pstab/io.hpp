#pragma once

// JSON document format (schema_version "1") for objects, data and reports.
// One self-describing document serves every CLI command: top-level fields
// `context`, `objects`, `datum`, `cone`.

#include "pstab/curve.hpp"
#include "pstab/elliptic.hpp"
#include "pstab/pstability.hpp"

#include <json.hpp>

#include <string>

namespace pstab::io {

using json = nlohmann::ordered_json;

struct parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline json int_to_json(const Int& v) {
    static const Int lo = std::numeric_limits<std::int64_t>::min();
    static const Int hi = std::numeric_limits<std::int64_t>::max();
    if (v >= lo && v <= hi) return static_cast<std::int64_t>(v);
    return v.str();
}

inline Int int_from_json(const json& j, const std::string& field) {
    if (j.is_number_integer()) return Int(j.get<std::int64_t>());
    if (j.is_string()) {
        try {
            return Int(j.get<std::string>());
        } catch (const std::exception&) {
        }
    }
    throw parse_error("field '" + field + "': expected an integer");
}

template <typename T = json>
inline T require(const json& j, const std::string& field) {
    if (!j.contains(field)) throw parse_error("missing field '" + field + "'");
    return j.at(field);
}

inline void reject_unknown(const json& j, std::initializer_list<const char*> known,
                           const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool found = false;
        for (const char* k : known)
            if (it.key() == k) found = true;
        if (!found)
            throw parse_error("unknown field '" + it.key() + "' in " + where);
    }
}

// --- curve classes and objects ------------------------------------------

inline json to_json(const CurveClass& c) {
    return json{{"rank", int_to_json(c.rank)}, {"degree", int_to_json(c.degree)}};
}

inline CurveClass curve_class_from_json(const json& j) {
    reject_unknown(j, {"rank", "degree"}, "class");
    return {int_from_json(require(j, "rank"), "rank"),
            int_from_json(require(j, "degree"), "degree")};
}

inline json to_json(const Atom& a) {
    json j{{"rank", int_to_json(a.kclass.rank)},
           {"degree", int_to_json(a.kclass.degree)},
           {"shift", int_to_json(a.shift)}};
    if (!a.support.empty()) {
        json sup = json::array();
        for (const auto& p : a.support) sup.push_back(p.name);
        j["support"] = sup;
    }
    return j;
}

inline Atom atom_from_json(const json& j) {
    reject_unknown(j, {"rank", "degree", "shift", "support"}, "object atom");
    SupportMultiset support;
    if (j.contains("support"))
        for (const auto& s : j.at("support"))
            support.push_back(PointLabel{s.get<std::string>()});
    Int shift = j.contains("shift") ? int_from_json(j.at("shift"), "shift") : Int(0);
    return Atom{{int_from_json(require(j, "rank"), "rank"),
                 int_from_json(require(j, "degree"), "degree")},
                shift, std::move(support)};
}

inline json to_json(const EllipticObject& o) {
    json arr = json::array();
    for (const auto& a : o.atoms) arr.push_back(to_json(a));
    return arr;
}

inline EllipticObject object_from_json(const json& j) {
    std::vector<Atom> atoms;
    for (const auto& a : j) atoms.push_back(atom_from_json(a));
    return EllipticObject{std::move(atoms)};
}

// --- data ----------------------------------------------------------------

inline json to_json(const PDatum& d) {
    json j;
    j["context"] = json{{"genus", int_to_json(d.ctx.genus)}};
    if (d.ctx.polarisation_degree)
        j["context"]["polarisation_degree"] = int_to_json(*d.ctx.polarisation_degree);
    json conds = json::array();
    for (const auto& c : d.conditions) {
        json cj;
        cj["index"] = c.index;
        cj["direction"] = (c.direction == Direction::Covariant) ? "covariant"
                                                                : "contravariant";
        cj["class"] = json{{"rank", int_to_json(c.cls.sheaf.rank)},
                           {"degree", int_to_json(c.cls.sheaf.degree)},
                           {"cdeg", c.cls.cdeg}};
        json exp = json::object();
        for (const auto& [deg, n] : c.expected) exp[std::to_string(deg)] = int_to_json(n);
        cj["expected"] = exp;
        if (!c.unconstrained.empty()) {
            json unc = json::array();
            for (int u : c.unconstrained) unc.push_back(u);
            cj["unconstrained"] = unc;
        }
        if (c.others_unconstrained) cj["others_unconstrained"] = true;
        if (!c.note.empty()) cj["note"] = c.note;
        conds.push_back(cj);
    }
    j["conditions"] = conds;
    if (d.cone)
        j["cone"] = json{{"A", to_json(d.cone->a)}, {"B", to_json(d.cone->b)}};
    if (!d.notes.empty()) j["notes"] = d.notes;
    return j;
}

inline PDatum datum_from_json(const json& j) {
    reject_unknown(j, {"schema_version", "context", "conditions", "cone", "notes"}, "datum");
    PDatum d;
    const json ctx = require(j, "context");
    reject_unknown(ctx, {"genus", "polarisation_degree"}, "context");
    std::optional<Int> D;
    if (ctx.contains("polarisation_degree"))
        D = int_from_json(ctx.at("polarisation_degree"), "polarisation_degree");
    d.ctx = CurveCtx{int_from_json(require(ctx, "genus"), "genus"), D};
    for (const auto& cj : require(j, "conditions")) {
        reject_unknown(cj, {"index", "direction", "class", "expected", "unconstrained",
                            "others_unconstrained", "note"}, "condition");
        Condition c;
        c.index = require(cj, "index").get<int>();
        const std::string dir = require(cj, "direction").get<std::string>();
        if (dir == "covariant")
            c.direction = Direction::Covariant;
        else if (dir == "contravariant")
            c.direction = Direction::Contravariant;
        else
            throw parse_error("condition direction must be covariant or contravariant");
        const json cls = require(cj, "class");
        reject_unknown(cls, {"rank", "degree", "cdeg"}, "condition class");
        c.cls = ConditionClass{{int_from_json(require(cls, "rank"), "rank"),
                                int_from_json(require(cls, "degree"), "degree")},
                               cls.contains("cdeg") ? cls.at("cdeg").get<int>() : 0};
        const json exp = require(cj, "expected");
        for (auto it = exp.begin(); it != exp.end(); ++it)
            c.expected[std::stoi(it.key())] = int_from_json(it.value(), "expected");
        if (cj.contains("unconstrained"))
            for (const auto& u : cj.at("unconstrained")) c.unconstrained.insert(u.get<int>());
        if (cj.contains("others_unconstrained"))
            c.others_unconstrained = cj.at("others_unconstrained").get<bool>();
        if (cj.contains("note")) c.note = cj.at("note").get<std::string>();
        d.conditions.push_back(std::move(c));
    }
    if (j.contains("cone"))
        d.cone = ConeDatum{curve_class_from_json(require(j.at("cone"), "A")),
                           curve_class_from_json(require(j.at("cone"), "B"))};
    if (j.contains("notes"))
        for (const auto& n : j.at("notes")) d.notes.push_back(n.get<std::string>());
    return d;
}

// --- verdicts ------------------------------------------------------------

inline json to_json(const Verdict& v) {
    json j;
    switch (v.status) {
        case VerdictStatus::Pass: j["status"] = "pass"; break;
        case VerdictStatus::Fail: j["status"] = "fail"; break;
        case VerdictStatus::Indeterminate: j["status"] = "indeterminate"; break;
    }
    json diffs = json::array();
    for (const auto& d : v.diffs)
        diffs.push_back(json{{"index", d.index},
                             {"degree", d.degree},
                             {"expected", int_to_json(d.expected)},
                             {"actual", int_to_json(d.actual)}});
    j["diffs"] = diffs;
    if (!v.chi_mismatches.empty()) {
        json ms = json::array();
        for (const auto& m : v.chi_mismatches)
            ms.push_back(json{{"index", m.index},
                              {"expected_chi", int_to_json(m.expected_chi)},
                              {"actual_chi", int_to_json(m.actual_chi)}});
        j["chi_mismatches"] = ms;
    }
    if (!v.indeterminate.empty()) {
        json ind = json::array();
        for (const auto& [i, deg] : v.indeterminate)
            ind.push_back(json{{"index", i}, {"degree", deg}});
        j["indeterminate"] = ind;
    }
    if (v.cone_report) {
        j["cone_report"] = json{{"chi", int_to_json(v.cone_report->chi)},
                                {"consistent", v.cone_report->consistent},
                                {"fully_verified", v.cone_report->fully_verified},
                                {"note", v.cone_report->note}};
    }
    if (!v.notes.empty()) j["notes"] = v.notes;
    return j;
}

}  // namespace pstab::io
