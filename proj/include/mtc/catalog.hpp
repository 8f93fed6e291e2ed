#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "module.hpp"

namespace mtc {

struct NamedModule {
    std::string name;
    ModuleRep module;
};

struct CorpusEntry {
    std::string name;
    AlgebraPtr algebra;
    std::vector<NamedModule> modules;
};

struct FamilySpec {
    enum class Family { linear_an, nakayama, truncated_polynomial };

    Family family = Family::linear_an;
    std::int64_t p = 2;
    std::size_t n = 2;                // linear-An: vertex count
    std::vector<std::size_t> kupisch; // nakayama: projective lengths c_1..c_n
    bool cyclic = false;              // nakayama: arrow from n back to 1
    std::size_t t = 2;                // truncated polynomial degree
    std::size_t max_dim = 4;          // bound on total dimension of a listed sum
    std::size_t max_summands = 2;
};

/// Quiver 1 -> 2 -> ... -> n with arrows a1, ..., a(n-1).
inline AlgebraPtr linear_an(std::size_t n, std::int64_t p)
{
    if (n == 0) throw InputError("linear-An needs n >= 1");
    Quiver q;
    for (std::size_t i = 1; i <= n; ++i) q.vertices.push_back(std::to_string(i));
    for (std::size_t i = 1; i < n; ++i)
        q.arrows.push_back({"a" + std::to_string(i), std::to_string(i), std::to_string(i + 1)});
    return build_path_algebra(q, {}, p, n + 1);
}

/// The interval representation [i, j] of linear A_n (1-based, k at vertices i..j, identity maps).
inline ModuleRep interval_module(const AlgebraPtr& a, std::size_t i, std::size_t j)
{
    const std::size_t n = a->presentation()->quiver.vertices.size();
    if (i < 1 || i > j || j > n) throw InputError("interval out of range");
    const Scalar p = a->modulus();
    std::vector<std::size_t> dims(n, 0);
    for (std::size_t v = i; v <= j; ++v) dims[v - 1] = 1;
    std::vector<FpMatrix> maps;
    for (std::size_t k = 1; k < n; ++k) {
        FpMatrix m(dims[k], dims[k - 1], p);
        if (dims[k] && dims[k - 1]) m(0, 0) = 1;
        maps.push_back(std::move(m));
    }
    return quiver_module(a, Side::left, dims, maps);
}

/// Nakayama algebra with arrows i -> i+1 (and n -> 1 when cyclic) whose projective A e_i is
/// uniserial of length c_i.
inline AlgebraPtr nakayama(const std::vector<std::size_t>& c, bool cyclic, std::int64_t p)
{
    const std::size_t n = c.size();
    if (n == 0) throw InputError("Kupisch series is empty");
    for (std::size_t i = 0; i < n; ++i) {
        if (c[i] == 0) throw InputError("Kupisch series entries must be positive");
        bool has_next = cyclic || i + 1 < n;
        if (has_next && c[i] < 2) throw InputError("Kupisch series: c_i >= 2 where an arrow leaves vertex i");
        if (!cyclic && i + 1 == n && c[i] != 1) throw InputError("Kupisch series: linear series must end in 1");
        if (has_next && c[(i + 1) % n] + 1 < c[i]) throw InputError("Kupisch series: need c_{i+1} >= c_i - 1");
    }
    Quiver q;
    for (std::size_t i = 1; i <= n; ++i) q.vertices.push_back(std::to_string(i));
    std::size_t narrows = cyclic ? n : n - 1;
    for (std::size_t i = 0; i < narrows; ++i)
        q.arrows.push_back({"a" + std::to_string(i + 1), std::to_string(i + 1), std::to_string((i + 1) % n + 1)});
    std::vector<Relation> rels;
    std::size_t longest = 0;
    for (std::size_t i = 0; i < n; ++i) {
        longest = std::max(longest, c[i]);
        bool has_next = cyclic || i + 1 < n;
        if (!has_next) continue;
        // the path of length c_i from i is zero unless already forced by c_{i+1}
        if (c[(i + 1) % n] + 1 == c[i]) continue;
        if (!cyclic && i + c[i] > n - 1) continue;
        PathTerm t;
        for (std::size_t k = 0; k < c[i]; ++k) t.path.push_back("a" + std::to_string((i + k) % n + 1));
        rels.push_back({t});
    }
    auto a = build_path_algebra(q, rels, p, longest + 1);
    const auto& pres = *a->presentation();
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t len = 0;
        for (std::size_t b = 0; b < a->dim(); ++b)
            if (pres.basis_source[b] == i) ++len;
        if (len != c[i]) throw InputError("Kupisch series is not realised by the Nakayama relations");
    }
    return a;
}

/// Uniserial module with top at vertex i (0-based) and the given length, over a Nakayama algebra
/// built by `nakayama`. Basis v_0..v_{len-1}, v_k at vertex i+k, arrows shift v_k to v_{k+1}.
inline ModuleRep uniserial_module(const AlgebraPtr& a, std::size_t i, std::size_t len)
{
    const auto& pres = *a->presentation();
    const std::size_t n = pres.quiver.vertices.size();
    const Scalar p = a->modulus();
    if (i >= n) throw InputError("uniserial module: vertex out of range");
    std::size_t longest = 0;
    for (std::size_t b = 0; b < a->dim(); ++b) longest += pres.basis_source[b] == i;
    if (len == 0 || len > longest)
        throw InputError("uniserial module: length must be between 1 and " + std::to_string(longest));
    std::vector<FpMatrix> act;
    for (std::size_t b = 0; b < a->dim(); ++b) {
        FpMatrix m(len, len, p);
        std::size_t s = pres.basis_source[b];
        std::size_t l = pres.basis_paths[b].size();
        for (std::size_t k = 0; k < len; ++k)
            if ((i + k) % n == s && k + l < len) m(k + l, k) = 1;
        act.push_back(std::move(m));
    }
    return ModuleRep(a, Side::left, len, std::move(act));
}

/// k[x]/(x^t) as a one-loop quiver algebra.
inline AlgebraPtr truncated_polynomial(std::size_t t, std::int64_t p)
{
    if (t == 0) throw InputError("truncation degree must be positive");
    Quiver q{{"v"}, {}};
    std::vector<Relation> rels;
    if (t >= 2) {
        q.arrows.push_back({"x", "v", "v"});
        rels.push_back({PathTerm{1, std::vector<std::string>(t, "x")}});
    }
    return build_path_algebra(q, rels, p, t + 1);
}

/// k[x]/(x^s) as a module over k[x]/(x^t), s <= t.
inline ModuleRep truncated_module(const AlgebraPtr& a, std::size_t s)
{
    const auto& pres = *a->presentation();
    const Scalar p = a->modulus();
    std::vector<FpMatrix> act;
    for (std::size_t b = 0; b < a->dim(); ++b) {
        FpMatrix m(s, s, p);
        std::size_t l = pres.basis_paths[b].size();
        for (std::size_t k = 0; k + l < s; ++k) m(k + l, k) = 1;
        act.push_back(std::move(m));
    }
    return ModuleRep(a, Side::left, s, std::move(act));
}

/// Direct sums of up to `max_summands` indecomposables (with repetition) of total dimension at most
/// `max_dim`, listed in a fixed order.
inline std::vector<NamedModule> sums_up_to(const std::vector<NamedModule>& ind, std::size_t max_dim,
                                           std::size_t max_summands)
{
    std::vector<NamedModule> out;
    std::vector<std::size_t> pick;
    auto rec = [&](auto&& self, std::size_t start, std::size_t dim) -> void {
        if (!pick.empty()) {
            std::string name;
            std::vector<ModuleRep> parts;
            for (auto k : pick) {
                name += (name.empty() ? "" : "+") + ind[k].name;
                parts.push_back(ind[k].module);
            }
            out.push_back({name, parts.size() == 1 ? parts.front() : direct_sum(parts)});
        }
        if (pick.size() == max_summands) return;
        for (std::size_t k = start; k < ind.size(); ++k) {
            if (dim + ind[k].module.dim() > max_dim) continue;
            pick.push_back(k);
            self(self, k, dim + ind[k].module.dim());
            pick.pop_back();
        }
    };
    rec(rec, 0, 0);
    return out;
}

inline std::string kupisch_name(const std::vector<std::size_t>& c, bool cyclic)
{
    std::string s = cyclic ? "nakayama-cyclic(" : "nakayama(";
    for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + std::to_string(c[i]);
    return s + ")";
}

inline CorpusEntry enumerate_family(const FamilySpec& spec)
{
    CorpusEntry e;
    std::vector<NamedModule> ind;
    const std::string ps = ",p=" + std::to_string(spec.p);
    switch (spec.family) {
    case FamilySpec::Family::linear_an:
        e.name = "linear-A" + std::to_string(spec.n) + ps;
        e.algebra = linear_an(spec.n, spec.p);
        for (std::size_t i = 1; i <= spec.n; ++i)
            for (std::size_t j = i; j <= spec.n; ++j)
                ind.push_back({"[" + std::to_string(i) + "," + std::to_string(j) + "]", interval_module(e.algebra, i, j)});
        break;
    case FamilySpec::Family::nakayama:
        e.name = kupisch_name(spec.kupisch, spec.cyclic) + ps;
        e.algebra = nakayama(spec.kupisch, spec.cyclic, spec.p);
        for (std::size_t i = 0; i < spec.kupisch.size(); ++i)
            for (std::size_t l = 1; l <= spec.kupisch[i]; ++l)
                ind.push_back({"M(" + std::to_string(i + 1) + "," + std::to_string(l) + ")", uniserial_module(e.algebra, i, l)});
        break;
    case FamilySpec::Family::truncated_polynomial:
        e.name = "k[x]/x^" + std::to_string(spec.t) + ps;
        e.algebra = truncated_polynomial(spec.t, spec.p);
        for (std::size_t s = 1; s <= spec.t; ++s) ind.push_back({"k[x]/x^" + std::to_string(s), truncated_module(e.algebra, s)});
        break;
    }
    if (spec.max_dim == 0 || spec.max_summands == 0) return e;
    e.modules = sums_up_to(ind, spec.max_dim, spec.max_summands);
    return e;
}

/// Kupisch series of length 1..max_n with entries at most max_len and sum at most max_total.
/// Cyclic series are listed once per rotation class, starting at a maximal entry.
inline std::vector<std::pair<std::vector<std::size_t>, bool>> kupisch_series(std::size_t max_n, std::size_t max_len,
                                                                             std::size_t max_total)
{
    std::vector<std::pair<std::vector<std::size_t>, bool>> out;
    auto valid = [](const std::vector<std::size_t>& c, bool cyc) {
        const std::size_t n = c.size();
        for (std::size_t i = 0; i < n; ++i) {
            bool has_next = cyc || i + 1 < n;
            if (has_next && c[i] < 2) return false;
            if (!cyc && i + 1 == n && c[i] != 1) return false;
            if (has_next && c[(i + 1) % n] + 1 < c[i]) return false;
        }
        return true;
    };
    auto canonical = [](const std::vector<std::size_t>& c) {
        for (std::size_t r = 1; r < c.size(); ++r) {
            std::vector<std::size_t> rot(c.begin() + static_cast<std::ptrdiff_t>(r), c.end());
            rot.insert(rot.end(), c.begin(), c.begin() + static_cast<std::ptrdiff_t>(r));
            if (rot > c) return false;
        }
        return true;
    };
    for (std::size_t n = 1; n <= max_n; ++n)
        for (int cyc = 0; cyc < 2; ++cyc) {
            std::vector<std::size_t> c;
            std::function<void(std::size_t)> grow = [&](std::size_t total) {
                if (c.size() == n) {
                    if (valid(c, cyc == 1) && (!cyc || canonical(c))) out.push_back({c, cyc == 1});
                    return;
                }
                for (std::size_t v = 1; v <= max_len && total + v + (n - c.size() - 1) <= max_total; ++v) {
                    if (!c.empty() && v + 1 < c.back()) continue;
                    c.push_back(v);
                    grow(total + v);
                    c.pop_back();
                }
            };
            grow(0);
        }
    return out;
}

/// The shipped corpus: linear A_n (n <= 4), connected Nakayama algebras of dimension <= 10, and
/// k[x]/(x^t) for t <= 4, each over GF(2) and GF(3).
inline std::vector<FamilySpec> default_corpus_specs()
{
    std::vector<FamilySpec> specs;
    auto bounded = [](FamilySpec s, std::size_t vertices) {
        s.max_dim = 10;
        s.max_summands = std::clamp<std::size_t>(vertices, 2, 4);
        return s;
    };
    for (std::int64_t p : {2, 3}) {
        for (std::size_t n = 1; n <= 4; ++n) {
            FamilySpec s;
            s.family = FamilySpec::Family::linear_an;
            s.p = p;
            s.n = n;
            specs.push_back(bounded(s, n));
        }
        for (auto& [c, cyc] : kupisch_series(10, 10, 10)) {
            if (c.size() == 1 && !cyc) continue;
            FamilySpec s;
            s.family = FamilySpec::Family::nakayama;
            s.p = p;
            s.kupisch = c;
            s.cyclic = cyc;
            specs.push_back(bounded(s, c.size()));
        }
        for (std::size_t t = 1; t <= 4; ++t) {
            FamilySpec s;
            s.family = FamilySpec::Family::truncated_polynomial;
            s.p = p;
            s.t = t;
            specs.push_back(bounded(s, 1));
        }
    }
    return specs;
}

inline std::vector<CorpusEntry> enumerate_corpus(const std::vector<FamilySpec>& specs)
{
    std::vector<CorpusEntry> out;
    for (auto& s : specs) out.push_back(enumerate_family(s));
    return out;
}

} // namespace mtc
