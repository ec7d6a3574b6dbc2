#pragma once

#include <array>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "kleincl/cl.hpp"

namespace kleincl {

using json = nlohmann::ordered_json;

/// Portable on-disk form of a generator set. Generators are stored as their
/// canonical reduced-echelon bases of Pluecker 6-tuples (every basis row of
/// a totally singular plane is itself a quadric point), so documents stay
/// valid across enumeration-order changes. Field elements are the integer
/// indices of the deterministic field encoding.
struct SetDocument {
    int version = 1;
    unsigned p = 2, h = 1, t = 1;
    std::string model = "X0X5+X1X4+X2X3";
    std::vector<std::array<std::array<Elem, 6>, 3>> generators;
    json provenance;  // null when absent
};

inline SetDocument make_document(const CLCandidate& c, json provenance = nullptr) {
    const KleinModel& M = *c.model;
    const Field& F = M.field();
    SetDocument d;
    d.p = F.characteristic();
    d.h = F.base_degree();
    d.t = F.tower_degree();
    d.provenance = std::move(provenance);
    c.members.for_each([&](std::size_t g) {
        const Subspace& pl = M.generators()[g].plane;
        std::array<std::array<Elem, 6>, 3> rows;
        for (unsigned r = 0; r < 3; ++r)
            for (unsigned k = 0; k < 6; ++k) rows[r][k] = pl.rows[r][k];
        d.generators.push_back(rows);
    });
    return d;
}

inline json to_json(const SetDocument& d, const CLCandidate* derived_from = nullptr) {
    json j;
    j["format_version"] = d.version;
    j["field"] = {{"p", d.p}, {"h", d.h}, {"t", d.t}};
    j["model"] = d.model;
    json gens = json::array();
    for (const auto& g : d.generators) {
        json rows = json::array();
        for (const auto& r : g) rows.push_back(std::vector<Elem>(r.begin(), r.end()));
        gens.push_back(rows);
    }
    j["generators"] = gens;
    if (!d.provenance.is_null()) j["provenance"] = d.provenance;
    if (derived_from) {
        const CLCandidate& c = *derived_from;
        long long x = parameter_of(c);
        std::size_t latin = 0, greek = 0;
        c.members.for_each([&](std::size_t g) {
            (c.model->generators()[g].cls == GenClass::Latin ? latin : greek)++;
        });
        PointPlaneSystem s = to_pg3(c);
        j["derived"] = {{"x", x},
                        {"latin_count", latin},
                        {"greek_count", greek},
                        {"p0_size", s.p0.count()},
                        {"p2_size", s.p2.count()}};
    }
    return j;
}

inline SetDocument document_from_json(const json& j) {
    SetDocument d;
    d.version = j.at("format_version").get<int>();
    d.p = j.at("field").at("p").get<unsigned>();
    d.h = j.at("field").at("h").get<unsigned>();
    d.t = j.at("field").at("t").get<unsigned>();
    d.model = j.at("model").get<std::string>();
    if (d.model != "X0X5+X1X4+X2X3")
        throw std::invalid_argument("unsupported quadric model: " + d.model);
    for (const auto& g : j.at("generators")) {
        if (g.size() != 3) throw std::invalid_argument("generator must have 3 basis rows");
        std::array<std::array<Elem, 6>, 3> rows;
        for (unsigned r = 0; r < 3; ++r) {
            if (g[r].size() != 6) throw std::invalid_argument("generator row must have 6 coordinates");
            for (unsigned k = 0; k < 6; ++k) rows[r][k] = g[r][k].get<Elem>();
        }
        d.generators.push_back(rows);
    }
    if (j.contains("provenance")) d.provenance = j["provenance"];
    return d;
}

/// Map the document's generators onto a model's generator table. Validates
/// field agreement, the quadric relation on every stored tuple, canonical
/// (strictly increasing) order, and that every plane is a known generator.
inline CLCandidate realize(const SetDocument& d, const KleinModel& M) {
    const Field& F = M.field();
    if (d.p != F.characteristic() || d.h != F.base_degree() || d.t != F.tower_degree())
        throw std::invalid_argument("document field spec does not match the model");
    CLCandidate c(M);
    int prev = -1;
    for (const auto& rows : d.generators) {
        std::vector<Vec> rv;
        for (const auto& r : rows) {
            Vec v(r.begin(), r.end());
            for (Elem e : v)
                if (e >= F.order()) throw std::invalid_argument("coordinate out of field range");
            if (quadric_form(F, v) != 0)
                throw std::invalid_argument("generator tuple violates the quadric relation");
            rv.push_back(std::move(v));
        }
        Subspace pl = rref(F, std::move(rv), 6);
        if (pl.pdim() != 2) throw std::invalid_argument("generator rows are not independent");
        int idx = M.generator_index(pl);
        if (idx < 0) throw std::invalid_argument("plane is not a generator of the quadric");
        if (idx <= prev)
            throw std::invalid_argument("generator list is not strictly increasing in canonical order");
        prev = idx;
        c.members.set(idx);
    }
    return c;
}

inline void save_document(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << j.dump(2) << "\n";
}

inline json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return json::parse(in);
}

// --------------------------------------------------------------- reports

inline json report_to_json(const VerificationReport& rep) {
    json j;
    j["all_pass"] = rep.all_pass();
    json checks = json::array();
    for (const auto& c : rep.checks)
        checks.push_back({{"check", c.check},
                          {"pass", c.pass},
                          {"witness", c.witness},
                          {"expected", c.expected},
                          {"observed", c.observed},
                          {"millis", c.millis}});
    j["checks"] = checks;
    return j;
}

inline std::string report_to_csv(const VerificationReport& rep) {
    std::string out = "check,pass,witness,expected,observed,millis\n";
    for (const auto& c : rep.checks)
        out += c.check + "," + (c.pass ? "1" : "0") + "," + std::to_string(c.witness) + "," +
               std::to_string(c.expected) + "," + std::to_string(c.observed) + "," +
               std::to_string(c.millis) + "\n";
    return out;
}

}  // namespace kleincl
