#pragma once

// JSON input of module presentations and JSON / text output of reports.
//
// Presentation file:
//   {"ring": {"coeff": "Q", "n": 3, "w": 2},
//    "shifts": [0, 0],
//    "relations": [["t1", "t2^2"], ["-t2", "0"]],   // one row per generator
//    "relation_shifts": [2, 4]}                     // optional
// Without relation_shifts each column's degree is read off its entries.

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "eqcoh/verify.hpp"

namespace eqcoh {

using Json = nlohmann::ordered_json;

struct PresentationData {
    CoefficientRing coeff;
    std::size_t num_vars = 0;
    int weight = 2;
    std::vector<long> shifts;
    std::vector<std::vector<std::string>> relations;  // rows x columns
    std::optional<std::vector<long>> relation_shifts;

    std::size_t num_relations() const { return relations.empty() ? 0 : relations.front().size(); }

    template <CoefficientDomain D>
    ModulePresentation<D> build(const D& coeffs) const {
        auto ring = make_ring(coeffs, num_vars, weight);
        const std::size_t cols = num_relations();
        std::vector<std::vector<Polynomial<D>>> entries(shifts.size());
        for (std::size_t i = 0; i < relations.size(); ++i)
            for (const auto& text : relations[i]) entries[i].push_back(parse_polynomial(ring, text));
        std::vector<long> src;
        if (relation_shifts) {
            src = *relation_shifts;
        } else {
            for (std::size_t j = 0; j < cols; ++j) {
                std::optional<long> deg;
                // Leading term of the first nonzero entry; validation below
                // reports any entry of another degree.
                for (std::size_t i = 0; i < entries.size() && !deg; ++i)
                    if (!entries[i][j].is_zero()) deg = shifts[i] + ring->degree(entries[i][j].leading().mon);
                if (!deg) throw ParseError("relation column " + std::to_string(j + 1) + " is zero; give relation_shifts");
                src.push_back(*deg);
            }
        }
        if (src.size() != cols) throw ParseError("relation_shifts has the wrong length");
        GradedMap<D> m(GradedFreeModule<D>(ring, src), GradedFreeModule<D>(ring, shifts), 0);
        for (std::size_t i = 0; i < entries.size(); ++i)
            for (std::size_t j = 0; j < cols; ++j)
                if (!entries[i][j].is_zero()) m.set(i, j, entries[i][j]);
        return ModulePresentation<D>(GradedFreeModule<D>(ring, shifts), validate_graded_map(std::move(m)));
    }
};

inline PresentationData parse_presentation(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("presentation: ") + e.what());
    }
    PresentationData p;
    try {
        const auto& ring = j.at("ring");
        p.coeff = CoefficientRing::parse(ring.value("coeff", std::string("Q")));
        p.num_vars = ring.at("n").get<std::size_t>();
        p.weight = ring.value("w", 2);
        p.shifts = j.at("shifts").get<std::vector<long>>();
        if (j.contains("relations")) p.relations = j.at("relations").get<std::vector<std::vector<std::string>>>();
        if (j.contains("relation_shifts")) p.relation_shifts = j.at("relation_shifts").get<std::vector<long>>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("presentation: ") + e.what());
    }
    if (p.num_vars == 0 || p.num_vars > kMaxVars) throw ParseError("presentation: bad number of variables");
    if (p.weight < 1) throw ParseError("presentation: variable weight must be positive");
    if (!p.relations.empty() && p.relations.size() != p.shifts.size())
        throw ParseError("presentation: relations need one row per generator");
    for (const auto& row : p.relations)
        if (row.size() != p.num_relations()) throw ParseError("presentation: ragged relation matrix");
    return p;
}

inline PresentationData load_presentation(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_presentation(ss.str());
}

// ---------------------------------------------------------------------------
// Reports

inline Json to_json(const GradedBettiTable& t) {
    Json j = Json::object();
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        Json row = Json::object();
        for (auto [d, c] : t.rows[i]) row[std::to_string(d)] = c;
        j[std::to_string(i)] = row;
    }
    return j;
}

inline Json to_json(const DegreewiseReport& r) {
    Json rows = Json::array();
    const bool integral = r.coefficients == "Z";
    for (const auto& e : r.entries) {
        Json row;
        row["d"] = e.degree;
        row["position"] = e.position;
        row[integral ? "rank" : "dim"] = e.rank;
        Json tors = Json::array();
        for (const auto& f : e.torsion) tors.push_back(f.get_str());
        row["torsion"] = tors;
        rows.push_back(row);
    }
    Json j;
    j["coefficients"] = r.coefficients;
    j["degrees"] = {r.min_degree, r.max_degree};
    j["table"] = rows;
    return j;
}

inline Json to_json(const VerificationReport& r) {
    Json j;
    j["model"] = r.model;
    j["coefficients"] = r.coefficients;
    Json checks = Json::array();
    for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"pass", c.pass}, {"details", c.details}});
    j["checks"] = checks;
    j["degree_bound"] = r.degree_bound;
    j["engines"] = {{"symbolic", kSymbolicEngine}, {"degreewise", kDegreewiseEngine}};
    if (!r.facts.empty()) {
        Json f = Json::object();
        for (const auto& [k, v] : r.facts) f[k] = v;
        j["facts"] = f;
    }
    if (r.betti) j["betti"] = to_json(*r.betti);
    if (!r.tables.empty()) {
        Json t = Json::array();
        for (const auto& tab : r.tables) t.push_back(to_json(tab));
        j["degreewise"] = t;
    }
    if (!r.notes.empty()) j["notes"] = r.notes;
    j["overall"] = r.overall() ? "pass" : "fail";
    return j;
}

inline Json to_json(const std::vector<VerificationReport>& reports) {
    Json j;
    Json arr = Json::array();
    bool all = !reports.empty();
    for (const auto& r : reports) {
        arr.push_back(to_json(r));
        all = all && r.overall();
    }
    j["reports"] = arr;
    j["overall"] = all ? "pass" : "fail";
    return j;
}

inline std::string to_text(const VerificationReport& r) {
    std::ostringstream os;
    os << "model: " << r.model;
    if (!r.coefficients.empty()) os << " over " << r.coefficients;
    os << "\n";
    if (r.degree_bound != 0) os << "degree bound: " << r.degree_bound << "\n";
    for (const auto& [k, v] : r.facts) os << k << ": " << v << "\n";
    if (r.betti) os << "betti: " << r.betti->to_string() << "\n";
    std::size_t width = 5;
    for (const auto& c : r.checks) width = std::max(width, c.name.size());
    for (const auto& c : r.checks)
        os << "  " << c.name << std::string(width - c.name.size() + 2, ' ') << (c.pass ? "pass" : "FAIL") << "  "
           << c.details << "\n";
    for (const auto& n : r.notes) os << "note: " << n << "\n";
    os << "overall: " << (r.overall() ? "pass" : "fail") << "\n";
    return os.str();
}

}  // namespace eqcoh
