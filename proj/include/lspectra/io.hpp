#pragma once

#include "ltables.hpp"
#include "poincare.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace lspectra {

using json = nlohmann::ordered_json;

namespace detail {

inline json int_to_json(const Int& v) {
    if (v.fits_slong_p()) return v.get_si();
    return v.get_str();
}

inline Int int_from_json(const json& j) {
    if (j.is_number_integer()) return Int(j.get<long>());
    if (j.is_string()) {
        Int v;
        if (v.set_str(j.get<std::string>(), 10) != 0) throw InvalidInput("bad integer '" + j.get<std::string>() + "'");
        return v;
    }
    throw InvalidInput("expected an integer, got " + j.dump());
}

inline const json& field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw InvalidInput(std::string("missing field '") + key + "'");
    return j.at(key);
}

inline int degree_key(const std::string& s) {
    try {
        std::size_t used = 0;
        int v = std::stoi(s, &used);
        if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
    throw InvalidInput("bad degree key '" + s + "'");
}

}  // namespace detail

inline json matrix_to_json(const IntMatrix& M) {
    json rows = json::array();
    for (std::size_t i = 0; i < M.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < M.cols(); ++j) row.push_back(detail::int_to_json(M(i, j)));
        rows.push_back(row);
    }
    return rows;
}

inline IntMatrix matrix_from_json(const json& j, std::size_t rows, std::size_t cols) {
    if (!j.is_array() || j.size() != rows) throw InvalidInput("matrix should have " + std::to_string(rows) + " rows");
    IntMatrix M(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        if (!j[i].is_array() || j[i].size() != cols)
            throw InvalidInput("matrix row should have " + std::to_string(cols) + " entries");
        for (std::size_t c = 0; c < cols; ++c) M(i, c) = detail::int_from_json(j[i][c]);
    }
    return M;
}

// ---------------------------------------------------------------------------
// Graded groups

inline json graded_to_json(const GradedGroup& G, const std::string& name = "") {
    json j;
    if (!name.empty()) j["name"] = name;
    j["window"] = json::array({G.lo(), G.hi()});
    j["period"] = G.period() ? json(*G.period()) : json(nullptr);
    json groups = json::object();
    for (int n = G.lo(); n <= G.hi(); ++n) groups[std::to_string(n)] = G.at(n).to_string();
    j["groups"] = groups;
    return j;
}

inline GradedGroup graded_from_json(const json& j) {
    const json& w = detail::field(j, "window");
    if (!w.is_array() || w.size() != 2 || !w[0].is_number_integer() || !w[1].is_number_integer())
        throw InvalidInput("window should be [a, b], got " + w.dump());
    int lo = w[0].get<int>(), hi = w[1].get<int>();
    if (lo > hi) throw InvalidInput("window [" + std::to_string(lo) + "," + std::to_string(hi) + "] is empty");
    std::optional<int> period;
    if (j.contains("period") && !j.at("period").is_null()) {
        if (!j.at("period").is_number_integer()) throw InvalidInput("period should be an integer or null");
        period = j.at("period").get<int>();
    }
    const json& gs = detail::field(j, "groups");
    if (!gs.is_object()) throw InvalidInput("groups should be an object keyed by degree");
    std::map<int, FgAbGroup> byDeg;
    for (auto& [k, v] : gs.items()) {
        int n = detail::degree_key(k);
        if (n < lo || n > hi) throw InvalidInput("degree " + k + " lies outside the window");
        if (!v.is_string()) throw InvalidInput("group in degree " + k + " should be a string");
        byDeg[n] = FgAbGroup::parse(v.get<std::string>());
    }
    std::vector<FgAbGroup> groups;
    for (int n = lo; n <= hi; ++n) {
        auto it = byDeg.find(n);
        if (it == byDeg.end()) throw InvalidInput("missing group in degree " + std::to_string(n));
        groups.push_back(it->second);
    }
    return GradedGroup(lo, hi, std::move(groups), period);
}

inline std::string graded_to_tsv(const GradedGroup& G) {
    std::string out;
    for (int n = G.lo(); n <= G.hi(); ++n) out += std::to_string(n) + "\t" + G.at(n).to_string() + "\n";
    return out;
}

// ---------------------------------------------------------------------------
// Complexes and structures

inline json complex_to_json(const IntComplex& C) {
    json ranks = json::object(), diffs = json::object();
    for (auto& [n, r] : C.ranks()) ranks[std::to_string(n)] = r;
    for (auto& [n, M] : C.differentials()) diffs[std::to_string(n)] = matrix_to_json(M);
    return json{{"ranks", ranks}, {"differentials", diffs}};
}

inline IntComplex complex_from_json(const json& j) {
    std::map<int, std::size_t> ranks;
    for (auto& [k, v] : detail::field(j, "ranks").items()) {
        long r = v.get<long>();
        if (r < 0) throw InvalidInput("negative rank");
        ranks[detail::degree_key(k)] = static_cast<std::size_t>(r);
    }
    auto rank = [&](int n) { return ranks.count(n) ? ranks[n] : std::size_t(0); };
    std::map<int, IntMatrix> diffs;
    if (j.contains("differentials"))
        for (auto& [k, v] : j.at("differentials").items()) {
            int n = detail::degree_key(k);
            diffs[n] = matrix_from_json(v, rank(n - 1), rank(n));
        }
    return IntComplex(ranks, diffs);
}

inline json structure_to_json(const StructuredComplex& S) {
    json levels = json::array();
    for (auto& [s, f] : S.levels) {
        json blocks = json::object();
        for (auto& [a, M] : f.blocks)
            if (!M.is_zero()) blocks[std::to_string(a)] = matrix_to_json(M);
        levels.push_back(json{{"level", s}, {"blocks", blocks}});
    }
    return json{{"complex", complex_to_json(S.C)},
                {"kind", S.kind == StructureKind::Symmetric ? "symmetric" : "quadratic"},
                {"dimension", S.dim},
                {"levels", levels}};
}

inline StructuredComplex structure_from_json(const json& j) {
    IntComplex C = complex_from_json(detail::field(j, "complex"));
    std::string kind = detail::field(j, "kind").get<std::string>();
    if (kind != "symmetric" && kind != "quadratic") throw InvalidInput("kind must be symmetric or quadratic");
    StructureKind K = kind == "symmetric" ? StructureKind::Symmetric : StructureKind::Quadratic;
    int dim = detail::field(j, "dimension").get<int>();
    std::map<int, ChainForm> levels;
    for (auto& lv : detail::field(j, "levels")) {
        int s = detail::field(lv, "level").get<int>();
        if (s < 0) throw InvalidInput("negative level");
        int w = K == StructureKind::Symmetric ? dim - s : dim + s;
        ChainForm f{w, {}};
        for (auto& [k, v] : detail::field(lv, "blocks").items()) {
            int a = detail::degree_key(k);
            f.blocks[a] = matrix_from_json(v, C.rank(a), C.rank(w - a));
        }
        levels[s] = f;
    }
    return make_structured(C, K, dim, levels);
}

// ---------------------------------------------------------------------------
// Linking forms

inline json linking_to_json(const LinkingForm& L) {
    json values = json::array();
    for (long i = 0; i < L.order(); ++i) values.push_back(L.q(i).to_string());
    return json{{"factors", L.factors()}, {"values", values}};
}

inline LinkingForm linking_from_json(const json& j) {
    auto factors = detail::field(j, "factors").get<std::vector<long>>();
    auto& values = detail::field(j, "values");
    long n = 1;
    for (long f : factors) {
        if (f < 2 || (f & (f - 1)) != 0) throw InvalidInput("linking form factors must be powers of two");
        if (f > kLinkingFormMaxOrder || n * f > kLinkingFormMaxOrder) throw EnumerationLimit("linking form too large");
        n *= f;
    }
    if (!values.is_array() || static_cast<long>(values.size()) != n)
        throw InvalidInput("expected " + std::to_string(n) + " values");
    std::vector<Dyadic> v;
    for (auto& x : values) v.push_back(Dyadic::parse(x.get<std::string>()));
    LinkingForm L = LinkingForm::from_function(factors, [&, i = 0L](const std::vector<long>&) mutable { return v[i++]; });
    return L;
}

// ---------------------------------------------------------------------------
// Reports

inline json report_to_json(const Report& r) {
    json items = json::array();
    for (auto& c : r.items) {
        json it{{"name", c.name}, {"pass", c.pass}};
        if (c.degree) it["degree"] = *c.degree;
        if (!c.detail.empty()) it["detail"] = c.detail;
        items.push_back(it);
    }
    return json{{"title", r.title}, {"pass", r.all_pass()}, {"items", items}};
}

inline Report report_from_json(const json& j) {
    Report r{detail::field(j, "title").get<std::string>(), {}};
    for (auto& it : detail::field(j, "items")) {
        CheckResult c{detail::field(it, "name").get<std::string>(), detail::field(it, "pass").get<bool>(), {}, ""};
        if (it.contains("degree")) c.degree = it.at("degree").get<int>();
        if (it.contains("detail")) c.detail = it.at("detail").get<std::string>();
        r.items.push_back(c);
    }
    return r;
}

inline std::string report_to_tsv(const Report& r) {
    std::string out;
    for (auto& c : r.items) {
        out += std::string(c.pass ? "PASS" : "FAIL") + "\t" + c.name;
        if (c.degree) out += "\tdegree " + std::to_string(*c.degree);
        if (!c.detail.empty()) out += "\t" + c.detail;
        out += "\n";
    }
    return out;
}

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw InvalidInput(path + ": " + e.what());
    }
}

}  // namespace lspectra
