#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "module.hpp"

namespace mtc::io {

using Json = nlohmann::ordered_json;

namespace detail {

inline const Json& field(const Json& j, const std::string& key, const std::string& where)
{
    if (!j.is_object()) throw InputError(where + ": expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw InputError(where + "/" + key + ": missing field");
    return *it;
}

inline std::int64_t as_int(const Json& j, const std::string& where)
{
    if (!j.is_number_integer()) throw InputError(where + ": expected an integer");
    return j.get<std::int64_t>();
}

inline std::string as_string(const Json& j, const std::string& where)
{
    if (j.is_string()) return j.get<std::string>();
    if (j.is_number_integer()) return std::to_string(j.get<std::int64_t>());
    throw InputError(where + ": expected a string");
}

inline std::vector<std::int64_t> as_int_list(const Json& j, const std::string& where)
{
    if (!j.is_array()) throw InputError(where + ": expected an array");
    std::vector<std::int64_t> v;
    for (std::size_t i = 0; i < j.size(); ++i) v.push_back(as_int(j[i], where + "/" + std::to_string(i)));
    return v;
}

inline FpMatrix as_matrix(const Json& j, std::size_t rows, std::size_t cols, Scalar p, const std::string& where)
{
    FpMatrix m(rows, cols, p);
    if (!j.is_array()) throw InputError(where + ": expected a matrix (array of rows)");
    if (rows == 0 || cols == 0) {
        for (auto& r : j)
            if (!r.is_array() || !r.empty())
                throw InputError(where + ": expected an empty " + std::to_string(rows) + "x" + std::to_string(cols) +
                                 " matrix");
        return m;
    }
    if (j.size() != rows) throw InputError(where + ": expected " + std::to_string(rows) + " rows");
    for (std::size_t r = 0; r < rows; ++r) {
        std::string w = where + "/" + std::to_string(r);
        auto row = as_int_list(j[r], w);
        if (row.size() != cols) throw InputError(w + ": expected " + std::to_string(cols) + " entries");
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = reduce(row[c], p);
    }
    return m;
}

inline Json matrix_json(const FpMatrix& m)
{
    Json rows = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Json vector_json(const FpVector& v)
{
    Json a = Json::array();
    for (auto x : v) a.push_back(x);
    return a;
}

} // namespace detail

inline Json read_json_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw InputError(path.string() + ": cannot open file");
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(path.string() + ": " + e.what());
    }
}

inline std::string read_text_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError(path.string() + ": cannot open file");
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

inline AlgebraPtr parse_algebra_unchecked(const Json& j, const std::string& where)
{
    using namespace detail;
    std::string kind = as_string(field(j, "kind", where), where + "/kind");
    std::int64_t p = as_int(field(j, "p", where), where + "/p");
    if (kind == "quiver") {
        Quiver q;
        const auto& vs = field(j, "vertices", where);
        if (!vs.is_array()) throw InputError(where + "/vertices: expected an array");
        for (std::size_t i = 0; i < vs.size(); ++i) q.vertices.push_back(as_string(vs[i], where + "/vertices/" + std::to_string(i)));
        if (j.contains("arrows")) {
            const auto& as = j["arrows"];
            if (!as.is_array()) throw InputError(where + "/arrows: expected an array");
            for (std::size_t i = 0; i < as.size(); ++i) {
                std::string w = where + "/arrows/" + std::to_string(i);
                q.arrows.push_back({as_string(field(as[i], "name", w), w + "/name"),
                                    as_string(field(as[i], "source", w), w + "/source"),
                                    as_string(field(as[i], "target", w), w + "/target")});
            }
        }
        std::vector<Relation> rels;
        if (j.contains("relations")) {
            const auto& rs = j["relations"];
            if (!rs.is_array()) throw InputError(where + "/relations: expected an array");
            for (std::size_t r = 0; r < rs.size(); ++r) {
                std::string w = where + "/relations/" + std::to_string(r);
                if (!rs[r].is_array()) throw InputError(w + ": expected an array of terms");
                Relation rel;
                for (std::size_t t = 0; t < rs[r].size(); ++t) {
                    std::string wt = w + "/" + std::to_string(t);
                    PathTerm term;
                    term.coeff = rs[r][t].contains("coeff") ? as_int(rs[r][t]["coeff"], wt + "/coeff") : 1;
                    const auto& path = field(rs[r][t], "path", wt);
                    if (!path.is_array()) throw InputError(wt + "/path: expected an array of arrow names");
                    for (std::size_t k = 0; k < path.size(); ++k)
                        term.path.push_back(as_string(path[k], wt + "/path/" + std::to_string(k)));
                    rel.push_back(std::move(term));
                }
                rels.push_back(std::move(rel));
            }
        }
        std::int64_t bound = j.contains("length_bound") ? as_int(j["length_bound"], where + "/length_bound") : 10;
        if (bound <= 0) throw InputError(where + "/length_bound: must be positive");
        return build_path_algebra(q, rels, p, static_cast<std::size_t>(bound));
    }
    if (kind == "table") {
        std::int64_t dim = as_int(field(j, "dim", where), where + "/dim");
        if (dim <= 0) throw InputError(where + "/dim: must be positive");
        std::vector<std::string> labels;
        if (j.contains("basis")) {
            const auto& b = j["basis"];
            if (!b.is_array() || b.size() != static_cast<std::size_t>(dim))
                throw InputError(where + "/basis: expected " + std::to_string(dim) + " names");
            for (std::size_t i = 0; i < b.size(); ++i) labels.push_back(as_string(b[i], where + "/basis/" + std::to_string(i)));
        } else {
            for (std::int64_t i = 0; i < dim; ++i) labels.push_back("b" + std::to_string(i));
        }
        const auto& pr = field(j, "products", where);
        std::vector<std::vector<std::vector<std::int64_t>>> products;
        if (!pr.is_array()) throw InputError(where + "/products: expected an array");
        for (std::size_t i = 0; i < pr.size(); ++i) {
            std::string w = where + "/products/" + std::to_string(i);
            if (!pr[i].is_array()) throw InputError(w + ": expected an array");
            std::vector<std::vector<std::int64_t>> row;
            for (std::size_t k = 0; k < pr[i].size(); ++k) row.push_back(as_int_list(pr[i][k], w + "/" + std::to_string(k)));
            products.push_back(std::move(row));
        }
        auto unit = as_int_list(field(j, "unit", where), where + "/unit");
        std::vector<std::vector<std::int64_t>> idem;
        if (j.contains("idempotents")) {
            const auto& es = j["idempotents"];
            if (!es.is_array()) throw InputError(where + "/idempotents: expected an array");
            for (std::size_t i = 0; i < es.size(); ++i) idem.push_back(as_int_list(es[i], where + "/idempotents/" + std::to_string(i)));
        }
        return build_table_algebra(labels, products, unit, idem, p);
    }
    throw InputError(where + "/kind: expected \"quiver\" or \"table\"");
}

/// Parses an algebra document; axiom violations are reported as input errors.
inline AlgebraPtr parse_algebra(const Json& j, const std::string& where = "algebra")
{
    try {
        return parse_algebra_unchecked(j, where);
    } catch (const AxiomError& e) {
        throw InputError(where + ": " + e.what());
    }
}

inline AlgebraPtr load_algebra(const std::filesystem::path& path)
{
    return parse_algebra(read_json_file(path), path.string());
}

inline Json algebra_json(const Algebra& a)
{
    Json j;
    const auto& pres = a.presentation();
    if (pres && !a.reversed()) {
        j["kind"] = "quiver";
        j["p"] = a.modulus();
        j["vertices"] = pres->quiver.vertices;
        Json arrows = Json::array();
        for (auto& ar : pres->quiver.arrows) arrows.push_back({{"name", ar.name}, {"source", ar.source}, {"target", ar.target}});
        j["arrows"] = std::move(arrows);
        Json rels = Json::array();
        for (auto& r : pres->relations) {
            Json terms = Json::array();
            for (auto& t : r) terms.push_back({{"coeff", t.coeff}, {"path", t.path}});
            rels.push_back(std::move(terms));
        }
        j["relations"] = std::move(rels);
        j["length_bound"] = pres->length_bound;
        return j;
    }
    const std::size_t n = a.dim();
    j["kind"] = "table";
    j["p"] = a.modulus();
    j["dim"] = n;
    j["basis"] = a.labels();
    Json products = Json::array();
    for (std::size_t i = 0; i < n; ++i) {
        Json row = Json::array();
        for (std::size_t k = 0; k < n; ++k) row.push_back(detail::vector_json(a.product(i, k)));
        products.push_back(std::move(row));
    }
    j["products"] = std::move(products);
    j["unit"] = detail::vector_json(a.unit());
    Json idem = Json::array();
    for (auto& e : a.idempotents()) idem.push_back(detail::vector_json(e));
    j["idempotents"] = std::move(idem);
    return j;
}

/// Parses a module document. `base` resolves a relative algebra path; `known` short-circuits an
/// already loaded algebra so that modules read together share one algebra object.
inline ModuleRep parse_module(const Json& j, const std::filesystem::path& base, const std::string& where = "module",
                              AlgebraPtr known = nullptr)
{
    using namespace detail;
    const auto& aj = field(j, "algebra", where);
    AlgebraPtr a;
    if (aj.is_string()) {
        auto path = std::filesystem::path(aj.get<std::string>());
        if (path.is_relative()) path = base / path;
        a = load_algebra(path);
    } else if (aj.is_object()) {
        a = parse_algebra(aj, where + "/algebra");
    } else {
        throw InputError(where + "/algebra: expected a file path or an inline algebra");
    }
    if (known && same_algebra(known, a)) a = known;
    Side side = Side::left;
    if (j.contains("side")) {
        std::string s = as_string(j["side"], where + "/side");
        if (s == "right")
            side = Side::right;
        else if (s != "left")
            throw InputError(where + "/side: expected \"left\" or \"right\"");
    }
    const Scalar p = a->modulus();
    Json action = j.contains("action") ? j["action"] : Json::object();
    if (!action.is_object()) throw InputError(where + "/action: expected an object keyed by arrow or basis name");
    if (a->presentation() && !a->reversed() && j.contains("dims")) {
        const auto& q = a->presentation()->quiver;
        const auto& dj = j["dims"];
        if (!dj.is_object()) throw InputError(where + "/dims: expected an object keyed by vertex");
        std::vector<std::size_t> dims(q.vertices.size(), 0);
        for (auto it = dj.begin(); it != dj.end(); ++it) {
            std::size_t v;
            try {
                v = q.vertex_index(it.key());
            } catch (const InputError&) {
                throw InputError(where + "/dims/" + it.key() + ": unknown vertex");
            }
            auto d = as_int(it.value(), where + "/dims/" + it.key());
            if (d < 0) throw InputError(where + "/dims/" + it.key() + ": must be non-negative");
            dims[v] = static_cast<std::size_t>(d);
        }
        for (auto it = action.begin(); it != action.end(); ++it) {
            bool found = false;
            for (auto& ar : q.arrows) found = found || ar.name == it.key();
            if (!found) throw InputError(where + "/action/" + it.key() + ": unknown arrow");
        }
        std::vector<FpMatrix> maps;
        for (auto& ar : q.arrows) {
            std::size_t s = q.vertex_index(ar.source), t = q.vertex_index(ar.target);
            std::size_t from = side == Side::left ? s : t, to = side == Side::left ? t : s;
            if (action.contains(ar.name))
                maps.push_back(as_matrix(action[ar.name], dims[to], dims[from], p, where + "/action/" + ar.name));
            else
                maps.push_back(FpMatrix(dims[to], dims[from], p));
        }
        try {
            return quiver_module(a, side, dims, maps);
        } catch (const AxiomError& e) {
            throw InputError(where + ": " + e.what());
        }
    }
    std::int64_t dim = as_int(field(j, "dim", where), where + "/dim");
    if (dim < 0) throw InputError(where + "/dim: must be non-negative");
    const auto n = static_cast<std::size_t>(dim);
    AlgebraPtr acting = side == Side::left ? a : opposite(a);
    std::vector<FpMatrix> act;
    for (std::size_t i = 0; i < a->dim(); ++i) {
        const auto& lab = a->label(i);
        if (action.contains(lab))
            act.push_back(as_matrix(action[lab], n, n, p, where + "/action/" + lab));
        else
            act.push_back(FpMatrix(n, n, p));
    }
    for (auto it = action.begin(); it != action.end(); ++it)
        if (!a->label_index(it.key())) throw InputError(where + "/action/" + it.key() + ": unknown basis element");
    try {
        return ModuleRep(acting, side, n, std::move(act));
    } catch (const AxiomError& e) {
        throw InputError(where + ": " + e.what());
    }
}

inline ModuleRep load_module(const std::filesystem::path& path, AlgebraPtr known = nullptr)
{
    return parse_module(read_json_file(path), path.parent_path(), path.string(), std::move(known));
}

/// Module document with the algebra inlined (or given as `algebra_ref` when non-null).
inline Json module_json(const ModuleRep& m, const Json& algebra_ref = nullptr)
{
    Json j;
    auto a = m.algebra();
    j["algebra"] = algebra_ref.is_null() ? algebra_json(*a) : algebra_ref;
    j["side"] = to_string(m.side());
    if (a->presentation() && !a->reversed()) {
        auto rep = to_quiver_representation(m);
        const auto& q = a->presentation()->quiver;
        Json dims = Json::object();
        for (std::size_t v = 0; v < q.vertices.size(); ++v) dims[q.vertices[v]] = rep.dims[v];
        j["dims"] = std::move(dims);
        Json action = Json::object();
        for (std::size_t k = 0; k < q.arrows.size(); ++k) action[q.arrows[k].name] = detail::matrix_json(rep.arrow_maps[k]);
        j["action"] = std::move(action);
        return j;
    }
    j["dim"] = m.dim();
    Json action = Json::object();
    for (std::size_t i = 0; i < a->dim(); ++i) action[a->label(i)] = detail::matrix_json(m.action(i));
    j["action"] = std::move(action);
    return j;
}

inline void write_json_file(const std::filesystem::path& path, const Json& j)
{
    std::ofstream out(path);
    if (!out) throw InputError(path.string() + ": cannot write file");
    out << j.dump(2) << "\n";
}

/// FNV-1a over the given byte strings, as 16 hex digits.
inline std::string digest(const std::vector<std::string>& parts)
{
    std::uint64_t h = 1469598103934665603ull;
    for (auto& s : parts) {
        for (unsigned char c : s) {
            h ^= c;
            h *= 1099511628211ull;
        }
        h ^= 0xff;
        h *= 1099511628211ull;
    }
    static const char* hex = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i, h >>= 4) out[static_cast<std::size_t>(i)] = hex[h & 15];
    return out;
}

} // namespace mtc::io
