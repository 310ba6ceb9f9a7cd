#pragma once

// JSON schemas for algebra tables, representations and machine-readable
// reports. All coefficients travel as exact fraction strings; container
// ordering is deterministic so identical inputs serialize byte-identically.

#include "loopcas/algebra.hpp"
#include "loopcas/invariants.hpp"
#include "loopcas/representation.hpp"
#include "loopcas/roots.hpp"

#include <json.hpp>

#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace loopcas {

using Json = nlohmann::ordered_json;

struct SchemaError : std::runtime_error {
    explicit SchemaError(const std::string& msg) : std::runtime_error("schema error: " + msg) {}
};

// Thrown when a structurally well-formed table fails the algebra axioms.
struct TableValidationError : std::runtime_error {
    ValidationReport report;
    explicit TableValidationError(ValidationReport rep)
        : std::runtime_error("validation failed:\n" + rep.to_string()), report(std::move(rep)) {}
};

namespace detail {

inline Rational json_fraction(const Json& j, const char* where) {
    if (!j.is_string()) throw SchemaError(std::string(where) + ": coefficient must be a fraction string");
    auto r = Rational::parse(j.get<std::string>());
    if (!r) throw SchemaError(std::string(where) + ": bad fraction '" + j.get<std::string>() + "'");
    return *r;
}

inline int json_index(const Json& j, int dim, const char* where) {
    if (!j.is_number_integer()) throw SchemaError(std::string(where) + ": index must be an integer");
    int v = j.get<int>();
    if (v < 0 || v >= dim) throw SchemaError(std::string(where) + ": index " + std::to_string(v) + " out of range");
    return v;
}

} // namespace detail

inline Json algebra_to_json(const SuperAlgebra& A) {
    Json j;
    j["name"] = A.name();
    Json basis = Json::array();
    for (int i = 0; i < A.dim(); ++i) basis.push_back({{"label", A.label(i)}, {"parity", parity_name(A.parity(i))}});
    j["basis"] = std::move(basis);
    Json brackets = Json::array();
    for (int i = 0; i < A.dim(); ++i)
        for (int k = 0; k < A.dim(); ++k) {
            const auto& terms = A.bracket(i, k);
            if (terms.empty()) continue;
            Json list = Json::array();
            std::map<int, Rational> sorted;
            for (const auto& [m, c] : terms) sorted[m] = c;
            for (const auto& [m, c] : sorted) list.push_back(Json::array({m, c.to_string()}));
            brackets.push_back(Json::array({i, k, std::move(list)}));
        }
    j["brackets"] = std::move(brackets);
    Json form = Json::array();
    for (int i = 0; i < A.dim(); ++i)
        for (int k = 0; k < A.dim(); ++k)
            if (!A.form(i, k).is_zero()) form.push_back(Json::array({i, k, A.form(i, k).to_string()}));
    j["form"] = std::move(form);
    j["cartan"] = A.cartan();
    if (A.chevalley()) {
        Json chev;
        chev["e"] = A.chevalley()->e;
        chev["f"] = A.chevalley()->f;
        Json odd = Json::array();
        for (bool b : A.chevalley()->odd) odd.push_back(b);
        chev["odd"] = std::move(odd);
        j["chevalley"] = std::move(chev);
    }
    if (A.gl_signature()) j["gl"] = Json::array({A.gl_signature()->first, A.gl_signature()->second});
    return j;
}

// Parses, shape-checks and axiom-checks an algebra document. Axiom failures
// throw TableValidationError with the full witness report.
inline SuperAlgebra algebra_from_json(const Json& j) {
    if (!j.is_object()) throw SchemaError("algebra document must be an object");
    for (const char* key : {"name", "basis", "brackets", "form", "cartan"})
        if (!j.contains(key)) throw SchemaError(std::string("missing field '") + key + "'");
    SuperAlgebra::Data d;
    d.name = j.at("name").get<std::string>();
    if (!j.at("basis").is_array() || j.at("basis").empty()) throw SchemaError("'basis' must be a nonempty array");
    for (const auto& b : j.at("basis")) {
        if (!b.is_object() || !b.contains("label") || !b.contains("parity"))
            throw SchemaError("basis entries need 'label' and 'parity'");
        d.labels.push_back(b.at("label").get<std::string>());
        std::string p = b.at("parity").get<std::string>();
        if (p == "even") {
            d.parity.push_back(Parity::Even);
        } else if (p == "odd") {
            d.parity.push_back(Parity::Odd);
        } else {
            throw SchemaError("parity must be 'even' or 'odd', got '" + p + "'");
        }
    }
    const int dim = static_cast<int>(d.labels.size());
    for (const auto& entry : j.at("brackets")) {
        if (!entry.is_array() || entry.size() != 3) throw SchemaError("bracket entries are [i, j, [[k,\"c\"]...]]");
        int i = detail::json_index(entry[0], dim, "brackets");
        int k = detail::json_index(entry[1], dim, "brackets");
        std::vector<std::pair<int, Rational>> terms;
        for (const auto& t : entry[2]) {
            if (!t.is_array() || t.size() != 2) throw SchemaError("bracket terms are [k, \"c\"]");
            terms.emplace_back(detail::json_index(t[0], dim, "brackets"), detail::json_fraction(t[1], "brackets"));
        }
        d.brackets[{i, k}] = std::move(terms);
    }
    for (const auto& entry : j.at("form")) {
        if (!entry.is_array() || entry.size() != 3) throw SchemaError("form entries are [i, j, \"c\"]");
        d.form.emplace_back(detail::json_index(entry[0], dim, "form"), detail::json_index(entry[1], dim, "form"),
                            detail::json_fraction(entry[2], "form"));
    }
    for (const auto& c : j.at("cartan")) d.cartan.push_back(detail::json_index(c, dim, "cartan"));
    if (j.contains("chevalley")) {
        const auto& chev = j.at("chevalley");
        ChevalleyData cd;
        for (const auto& e : chev.at("e")) cd.e.push_back(detail::json_index(e, dim, "chevalley.e"));
        for (const auto& f : chev.at("f")) cd.f.push_back(detail::json_index(f, dim, "chevalley.f"));
        for (const auto& o : chev.at("odd")) cd.odd.push_back(o.get<bool>());
        d.chevalley = std::move(cd);
    }
    if (j.contains("gl")) {
        if (!j.at("gl").is_array() || j.at("gl").size() != 2) throw SchemaError("'gl' must be [M, N]");
        d.gl_signature = {j.at("gl")[0].get<int>(), j.at("gl")[1].get<int>()};
    }
    SuperAlgebra A(std::move(d));
    ValidationReport rep = validate_algebra(A);
    if (!rep.ok()) throw TableValidationError(std::move(rep));
    return A;
}

inline Json representation_to_json(const SuperAlgebra& A, const Representation& rep) {
    Json j;
    j["dimension"] = rep.dimension();
    Json parity = Json::array();
    for (std::size_t v = 0; v < rep.dimension(); ++v) parity.push_back(parity_name(rep.vector_parity(v)));
    j["parity"] = std::move(parity);
    Json actions;
    for (int b = 0; b < A.dim(); ++b) {
        Json triplets = Json::array();
        const Matrix& m = rep.action(b);
        for (std::size_t r = 0; r < m.rows(); ++r)
            for (std::size_t c = 0; c < m.cols(); ++c)
                if (!m(r, c).is_zero()) triplets.push_back(Json::array({r, c, m(r, c).to_string()}));
        actions[A.label(b)] = std::move(triplets);
    }
    j["actions"] = std::move(actions);
    return j;
}

inline Representation representation_from_json(const SuperAlgebra& A, const Json& j) {
    if (!j.is_object()) throw SchemaError("representation document must be an object");
    for (const char* key : {"dimension", "parity", "actions"})
        if (!j.contains(key)) throw SchemaError(std::string("missing field '") + key + "'");
    std::size_t dim = j.at("dimension").get<std::size_t>();
    if (dim == 0) throw SchemaError("'dimension' must be positive");
    std::vector<Parity> parity;
    for (const auto& p : j.at("parity")) {
        std::string s = p.get<std::string>();
        if (s == "even") {
            parity.push_back(Parity::Even);
        } else if (s == "odd") {
            parity.push_back(Parity::Odd);
        } else {
            throw SchemaError("parity must be 'even' or 'odd'");
        }
    }
    if (parity.size() != dim) throw SchemaError("'parity' length must equal 'dimension'");
    std::vector<Matrix> actions(static_cast<std::size_t>(A.dim()), Matrix(dim, dim));
    for (const auto& [label, triplets] : j.at("actions").items()) {
        auto idx = A.basis_index(label);
        if (!idx) throw SchemaError("action for unknown basis label '" + label + "'");
        Matrix& m = actions[static_cast<std::size_t>(*idx)];
        for (const auto& t : triplets) {
            if (!t.is_array() || t.size() != 3) throw SchemaError("action entries are [row, col, \"c\"]");
            std::size_t r = t[0].get<std::size_t>();
            std::size_t c = t[1].get<std::size_t>();
            if (r >= dim || c >= dim) throw SchemaError("action entry out of range for '" + label + "'");
            m(r, c) = detail::json_fraction(t[2], "actions");
        }
    }
    Representation rep(dim, std::move(parity), std::move(actions));
    ValidationReport check = validate_representation(A, rep);
    if (!check.ok()) throw TableValidationError(std::move(check));
    return rep;
}

// ------------------------------------------------------------- reports

inline Json validation_report_to_json(const ValidationReport& rep) {
    Json out;
    out["ok"] = rep.ok();
    Json v = Json::array();
    for (const auto& viol : rep.violations)
        v.push_back({{"check", viol.check}, {"witness", viol.witness}, {"detail", viol.detail}});
    out["violations"] = std::move(v);
    return out;
}

inline Json uea_to_json(const SuperAlgebra& A, const UEAElement& u) {
    Json terms = Json::array();
    for (const auto& [w, c] : u.terms()) {
        Json word = Json::array();
        for (const auto& g : w) word.push_back(Json::array({A.label(g.basis), g.exp}));
        terms.push_back(Json::array({std::move(word), c.to_string()}));
    }
    Json out;
    out["text"] = u.to_string(A);
    out["terms"] = std::move(terms);
    return out;
}

inline Json residual_report_to_json(const SuperAlgebra& A, const ResidualReport& rep) {
    Json out;
    out["pass"] = rep.pass;
    Json entries = Json::array();
    for (const auto& e : rep.entries) {
        Json je;
        je["generator"] = e.generator;
        je["zero"] = e.residual.is_zero();
        if (e.informational) je["informational"] = true;
        je["residual"] = uea_to_json(A, e.residual);
        entries.push_back(std::move(je));
    }
    out["residuals"] = std::move(entries);
    return out;
}

inline Json matrix_to_json(const Matrix& m) {
    Json rows = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c).to_string());
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Json vector_to_json(const std::vector<Rational>& v) {
    Json row = Json::array();
    for (const auto& x : v) row.push_back(x.to_string());
    return row;
}

inline Json weight_to_json(const Weight& w) { return vector_to_json(w.v); }

inline Json basis_to_json(const std::vector<std::vector<Rational>>& basis) {
    Json rows = Json::array();
    for (const auto& v : basis) rows.push_back(vector_to_json(v));
    return rows;
}

inline Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    Json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw SchemaError(std::string("invalid JSON in ") + path + ": " + e.what());
    }
    return j;
}

} // namespace loopcas
