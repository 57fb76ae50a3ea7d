#pragma once

#include "orbk/cocycle.hpp"
#include "orbk/complex.hpp"
#include "orbk/cyclotomic.hpp"
#include "orbk/group.hpp"
#include "orbk/h2.hpp"
#include "orbk/sector_series.hpp"

#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>

namespace orbk {

using json = nlohmann::json;

inline std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw validation_error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline json parse_json(const std::string& text, const std::string& what) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw validation_error("malformed JSON in " + what);
    return j;
}

namespace detail {

inline long require_int(const json& j, const std::string& path) {
    if (!j.is_number_integer())
        throw validation_error("expected an integer at " + path);
    return j.get<long>();
}

inline const json& require_array(const json& j, const std::string& path) {
    if (!j.is_array()) throw validation_error("expected an array at " + path);
    return j;
}

}  // namespace detail

/// Group file: {"points": k, "generators": [[images...], ...]} or
/// {"table": [[...], ...]}.  Errors name the failing axiom or JSON path.
inline FiniteGroup group_from_json(const json& j, int order_cap = FiniteGroup::kDefaultOrderCap) {
    if (!j.is_object()) throw validation_error("group file must be a JSON object");
    if (j.contains("table")) {
        const json& t = detail::require_array(j.at("table"), "/table");
        std::vector<std::vector<int>> rows;
        for (std::size_t i = 0; i < t.size(); ++i) {
            const json& row = detail::require_array(t[i], "/table/" + std::to_string(i));
            std::vector<int> r;
            for (std::size_t k = 0; k < row.size(); ++k)
                r.push_back(static_cast<int>(detail::require_int(
                    row[k], "/table/" + std::to_string(i) + "/" + std::to_string(k))));
            rows.push_back(std::move(r));
        }
        if (static_cast<int>(rows.size()) > order_cap)
            throw validation_error("group table exceeds the order cap " + std::to_string(order_cap));
        return FiniteGroup::from_table(rows);
    }
    if (!j.contains("points"))
        throw validation_error("group file needs either /table or /points with /generators");
    int k = static_cast<int>(detail::require_int(j.at("points"), "/points"));
    std::vector<Perm> gens;
    if (j.contains("generators")) {
        const json& g = detail::require_array(j.at("generators"), "/generators");
        for (std::size_t i = 0; i < g.size(); ++i) {
            const json& row = detail::require_array(g[i], "/generators/" + std::to_string(i));
            Perm p;
            for (std::size_t t = 0; t < row.size(); ++t)
                p.push_back(static_cast<int>(detail::require_int(
                    row[t], "/generators/" + std::to_string(i) + "/" + std::to_string(t))));
            if (!is_bijection(p, k))
                throw validation_error("generator at /generators/" + std::to_string(i) +
                                       " is not a bijection of 0.." + std::to_string(k - 1));
            gens.push_back(std::move(p));
        }
    }
    return FiniteGroup::from_permutations(k, gens, order_cap);
}

/// Cocycle file: {"modulus": m, "values": [[...], ...]} (row-major by
/// element index) or {"h2_class": i} with an optional "modulus"
/// (default |G|), referring to the enumeration order of h2_group.
inline Cocycle cocycle_from_json(const json& j, const FiniteGroup& G, const H2Caps& caps = {}) {
    if (!j.is_object()) throw validation_error("cocycle file must be a JSON object");
    if (j.contains("h2_class")) {
        long idx = detail::require_int(j.at("h2_class"), "/h2_class");
        long m = j.contains("modulus") ? detail::require_int(j.at("modulus"), "/modulus")
                                       : G.order();
        CohomologyClassSet h2 = h2_group(G, m, caps);
        if (idx < 0 || idx >= h2.class_count())
            throw validation_error("/h2_class index " + std::to_string(idx) + " out of range (" +
                                   std::to_string(h2.class_count()) + " classes)");
        return h2.class_reps[idx];
    }
    if (!j.contains("modulus") || !j.contains("values"))
        throw validation_error("cocycle file needs /modulus and /values, or /h2_class");
    long m = detail::require_int(j.at("modulus"), "/modulus");
    const json& v = detail::require_array(j.at("values"), "/values");
    if (static_cast<int>(v.size()) != G.order())
        throw validation_error("/values must have one row per group element");
    std::vector<std::vector<long>> vals;
    for (std::size_t g = 0; g < v.size(); ++g) {
        const json& row = detail::require_array(v[g], "/values/" + std::to_string(g));
        if (static_cast<int>(row.size()) != G.order())
            throw validation_error("/values/" + std::to_string(g) + " has the wrong length");
        std::vector<long> r;
        for (std::size_t h = 0; h < row.size(); ++h)
            r.push_back(detail::require_int(row[h], "/values/" + std::to_string(g) + "/" +
                                                        std::to_string(h)));
        vals.push_back(std::move(r));
    }
    return make_cocycle(G, m, std::move(vals));
}

/// Complex file: {"vertices": [labels], "maximal_simplices": [[indices]],
/// "action": [[vertex images per group generator]]}.
inline GComplex complex_from_json(const json& j, const FiniteGroup& G) {
    if (!j.is_object()) throw validation_error("complex file must be a JSON object");
    if (!j.contains("vertices") || !j.contains("maximal_simplices"))
        throw validation_error("complex file needs /vertices and /maximal_simplices");
    std::vector<std::string> labels;
    const json& verts = detail::require_array(j.at("vertices"), "/vertices");
    for (std::size_t i = 0; i < verts.size(); ++i) {
        if (!verts[i].is_string())
            throw validation_error("expected a string label at /vertices/" + std::to_string(i));
        labels.push_back(verts[i].get<std::string>());
    }
    std::vector<std::vector<int>> maximal;
    const json& ms = detail::require_array(j.at("maximal_simplices"), "/maximal_simplices");
    for (std::size_t i = 0; i < ms.size(); ++i) {
        const json& row = detail::require_array(ms[i], "/maximal_simplices/" + std::to_string(i));
        std::vector<int> s;
        for (std::size_t t = 0; t < row.size(); ++t)
            s.push_back(static_cast<int>(detail::require_int(
                row[t], "/maximal_simplices/" + std::to_string(i) + "/" + std::to_string(t))));
        maximal.push_back(std::move(s));
    }
    std::vector<Perm> actions;
    if (j.contains("action")) {
        const json& act = detail::require_array(j.at("action"), "/action");
        for (std::size_t i = 0; i < act.size(); ++i) {
            const json& row = detail::require_array(act[i], "/action/" + std::to_string(i));
            Perm p;
            for (std::size_t t = 0; t < row.size(); ++t)
                p.push_back(static_cast<int>(detail::require_int(
                    row[t], "/action/" + std::to_string(i) + "/" + std::to_string(t))));
            actions.push_back(std::move(p));
        }
    }
    if (actions.size() != G.generator_perms().size())
        throw validation_error("/action must list one vertex permutation per group generator (" +
                               std::to_string(G.generator_perms().size()) + " expected, " +
                               std::to_string(actions.size()) + " given)");
    SimplicialComplex K = SimplicialComplex::from_maximal(std::move(labels), maximal);
    return make_g_complex(G, std::move(K), actions);
}

/// Sector file: {"sectors": [{"label": ..., "betti": [...]} or
/// {"label": ..., "euler": e}], "expect": {"k0": ..., "k1": ...}?}.
struct SectorFile {
    SectorData data;
    std::optional<KRank> expect;
};

inline SectorFile sectors_from_json(const json& j) {
    if (!j.is_object() || !j.contains("sectors"))
        throw validation_error("sector file needs a /sectors array");
    SectorFile out;
    const json& arr = detail::require_array(j.at("sectors"), "/sectors");
    for (std::size_t i = 0; i < arr.size(); ++i) {
        std::string path = "/sectors/" + std::to_string(i);
        const json& e = arr[i];
        if (!e.is_object()) throw validation_error("expected an object at " + path);
        SectorDatum d;
        d.label = e.contains("label") && e.at("label").is_string() ? e.at("label").get<std::string>()
                                                                   : ("sector" + std::to_string(i));
        if (e.contains("betti")) {
            const json& b = detail::require_array(e.at("betti"), path + "/betti");
            std::vector<long> betti;
            for (std::size_t t = 0; t < b.size(); ++t)
                betti.push_back(detail::require_int(b[t], path + "/betti/" + std::to_string(t)));
            d.betti = betti;
        }
        if (e.contains("euler")) d.euler = detail::require_int(e.at("euler"), path + "/euler");
        if (e.contains("level"))
            d.level = static_cast<int>(detail::require_int(e.at("level"), path + "/level"));
        if (!d.betti && !d.euler)
            throw validation_error("sector entry at " + path + " needs /betti or /euler");
        out.data.entries.push_back(std::move(d));
    }
    if (j.contains("expect")) {
        const json& ex = j.at("expect");
        KRank k;
        k.k0 = detail::require_int(ex.at("k0"), "/expect/k0");
        k.k1 = detail::require_int(ex.at("k1"), "/expect/k1");
        out.expect = k;
    }
    return out;
}

inline json cyclotomic_to_json(const Cyclotomic& v) {
    Cyclotomic r = v.reduced();
    json coeffs = json::array();
    for (const Rat& c : r.coeffs()) coeffs.push_back(c.str());
    return json{{"level", r.level()}, {"coeffs", coeffs}};
}

}  // namespace orbk
