#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "matrix.hpp"

namespace mtc {

struct Arrow {
    std::string name;
    std::string source;
    std::string target;
};

struct Quiver {
    std::vector<std::string> vertices;
    std::vector<Arrow> arrows;

    std::size_t vertex_index(const std::string& v) const
    {
        for (std::size_t i = 0; i < vertices.size(); ++i)
            if (vertices[i] == v) return i;
        throw InputError("unknown vertex '" + v + "'");
    }

    std::size_t arrow_index(const std::string& a) const
    {
        for (std::size_t i = 0; i < arrows.size(); ++i)
            if (arrows[i].name == a) return i;
        throw InputError("unknown arrow '" + a + "'");
    }

    void validate() const
    {
        std::map<std::string, int> seen;
        for (auto& v : vertices)
            if (seen[v]++) throw InputError("duplicate vertex name '" + v + "'");
        for (auto& a : arrows) {
            if (seen[a.name]++) throw InputError("duplicate arrow/vertex name '" + a.name + "'");
            vertex_index(a.source);
            vertex_index(a.target);
        }
    }
};

/// One term of a relation: coefficient times a path listed in traversal order.
struct PathTerm {
    std::int64_t coeff = 1;
    std::vector<std::string> path;
};

using Relation = std::vector<PathTerm>;

/// How a quiver-presented algebra was built: which basis element is which path.
struct QuiverPresentation {
    Quiver quiver;
    std::vector<Relation> relations;
    std::size_t length_bound = 0;
    /// Arrow indices in traversal order; empty for a vertex idempotent.
    std::vector<std::vector<std::size_t>> basis_paths;
    std::vector<std::size_t> basis_source;
    std::vector<std::size_t> basis_target;
    std::vector<std::size_t> vertex_basis;
    std::vector<std::size_t> arrow_basis;
};

struct AlgebraData {
    Scalar p = 2;
    std::vector<std::string> labels;
    /// left_mult[i] has column j equal to the coordinates of b_i * b_j.
    std::vector<FpMatrix> left_mult;
    FpVector unit;
    std::vector<FpVector> idempotents;
    std::vector<FpVector> generators;
    std::shared_ptr<const QuiverPresentation> presentation;
    /// True when this is the opposite of the presented algebra.
    bool reversed = false;
    std::optional<FpMatrix> radical;
};

class Algebra;
using AlgebraPtr = std::shared_ptr<const Algebra>;

/// Finite-dimensional associative unital algebra given by structure constants.
///
/// Products follow the composition convention: for paths, b * a means "a, then b".
/// A complete set of orthogonal idempotents travels with the algebra.
class Algebra {
public:
    /// Validates associativity, unit and idempotent axioms unless `trusted`.
    explicit Algebra(AlgebraData data, bool trusted = false) : d_(std::move(data))
    {
        const std::size_t n = d_.labels.size();
        if (d_.left_mult.size() != n) throw InputError("structure constant count differs from dimension");
        for (auto& m : d_.left_mult)
            if (m.rows() != n || m.cols() != n || m.modulus() != d_.p)
                throw InputError("structure constant matrix has wrong shape or modulus");
        if (d_.unit.size() != n) throw InputError("unit has wrong length");
        if (d_.idempotents.empty()) d_.idempotents.push_back(d_.unit);
        for (auto& e : d_.idempotents)
            if (e.size() != n) throw InputError("idempotent has wrong length");
        if (!trusted) validate();
        if (d_.generators.empty()) d_.generators = compute_generators();
        hash_ = compute_hash();
    }

    Algebra(const Algebra&) = delete;
    Algebra& operator=(const Algebra&) = delete;

    std::size_t dim() const { return d_.labels.size(); }
    Scalar modulus() const { return d_.p; }
    const std::vector<std::string>& labels() const { return d_.labels; }
    const std::string& label(std::size_t i) const { return d_.labels.at(i); }
    const FpMatrix& left_mult(std::size_t i) const { return d_.left_mult.at(i); }
    const FpVector& unit() const { return d_.unit; }
    const std::vector<FpVector>& idempotents() const { return d_.idempotents; }
    const std::vector<FpVector>& generators() const { return d_.generators; }
    const std::shared_ptr<const QuiverPresentation>& presentation() const { return d_.presentation; }
    bool reversed() const { return d_.reversed; }
    const std::optional<FpMatrix>& known_radical() const { return d_.radical; }
    const AlgebraData& data() const { return d_; }
    std::uint64_t hash() const { return hash_; }

    std::optional<std::size_t> label_index(const std::string& s) const
    {
        for (std::size_t i = 0; i < dim(); ++i)
            if (d_.labels[i] == s) return i;
        return std::nullopt;
    }

    FpVector basis_vector(std::size_t i) const
    {
        FpVector v(dim(), 0);
        v.at(i) = 1 % d_.p;
        return v;
    }

    /// Coordinates of b_i * b_j.
    FpVector product(std::size_t i, std::size_t j) const { return d_.left_mult[i].col(j); }

    FpVector multiply(const FpVector& x, const FpVector& y) const { return element_matrix(x) * y; }

    /// Matrix of left multiplication by x.
    FpMatrix element_matrix(const FpVector& x) const
    {
        FpMatrix m(dim(), dim(), d_.p);
        for (std::size_t i = 0; i < dim(); ++i) m.add_scaled(d_.left_mult[i], x[i]);
        return m;
    }

    /// Matrix of right multiplication z -> z * x.
    FpMatrix right_matrix(const FpVector& x) const
    {
        FpMatrix m(dim(), dim(), d_.p);
        for (std::size_t j = 0; j < dim(); ++j) {
            auto col = d_.left_mult[j] * x;
            for (std::size_t k = 0; k < dim(); ++k) m(k, j) = col[k];
        }
        return m;
    }

    bool same_as(const Algebra& o) const
    {
        if (this == &o) return true;
        if (hash_ != o.hash_ || d_.p != o.d_.p || dim() != o.dim()) return false;
        for (std::size_t i = 0; i < dim(); ++i)
            if (!(d_.left_mult[i] == o.d_.left_mult[i])) return false;
        return d_.unit == o.d_.unit;
    }

    void validate() const
    {
        const std::size_t n = dim();
        const Scalar p = d_.p;
        // associativity: L_i L_j = L_{b_i b_j}
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                FpMatrix lhs = d_.left_mult[i] * d_.left_mult[j];
                FpMatrix rhs = element_matrix(product(i, j));
                if (lhs == rhs) continue;
                for (std::size_t k = 0; k < n; ++k)
                    if (lhs.col(k) != rhs.col(k))
                        throw AxiomError("associativity fails for basis triple (" + d_.labels[i] + ", " +
                                         d_.labels[j] + ", " + d_.labels[k] + ")");
            }
        FpMatrix id = FpMatrix::identity(n, p);
        if (!(element_matrix(d_.unit) == id)) throw AxiomError("unit is not a left identity");
        for (std::size_t i = 0; i < n; ++i)
            if (d_.left_mult[i] * d_.unit != basis_vector(i))
                throw AxiomError("unit is not a right identity on " + d_.labels[i]);
        FpVector sum(n, 0);
        for (std::size_t a = 0; a < d_.idempotents.size(); ++a) {
            const auto& e = d_.idempotents[a];
            for (std::size_t k = 0; k < n; ++k) sum[k] = add_mod(sum[k], e[k], p);
            for (std::size_t b = 0; b < d_.idempotents.size(); ++b) {
                auto prod = multiply(e, d_.idempotents[b]);
                FpVector expect = (a == b) ? e : FpVector(n, 0);
                if (prod != expect)
                    throw AxiomError("idempotent axioms fail for pair (" + std::to_string(a) + ", " +
                                     std::to_string(b) + ")");
            }
        }
        if (sum != d_.unit) throw AxiomError("idempotents do not sum to the unit");
    }

private:
    friend AlgebraPtr opposite(const AlgebraPtr& a);
    friend FpMatrix radical(const AlgebraPtr& a);

    /// Greedy algebra generating set: idempotents first, then basis elements outside the closure.
    std::vector<FpVector> compute_generators() const
    {
        const std::size_t n = dim();
        std::vector<FpVector> gens;
        auto closure = [&]() {
            EchelonBasis span(n, d_.p);
            std::vector<FpVector> elems;
            auto push = [&](const FpVector& v) {
                if (span.add(v)) elems.push_back(v);
            };
            push(d_.unit);
            for (auto& g : gens) push(g);
            for (std::size_t k = 0; k < elems.size(); ++k)
                for (auto& g : gens) push(multiply(elems[k], g));
            return span;
        };
        std::vector<FpVector> candidates = d_.idempotents;
        for (std::size_t i = 0; i < n; ++i) candidates.push_back(basis_vector(i));
        auto span = closure();
        for (auto& c : candidates) {
            if (span.rank() == n) break;
            if (span.contains(c)) continue;
            gens.push_back(c);
            span = closure();
        }
        for (auto& e : d_.idempotents)
            if (std::find(gens.begin(), gens.end(), e) == gens.end()) gens.insert(gens.begin(), e);
        return gens;
    }

    std::uint64_t compute_hash() const
    {
        std::uint64_t h = 1469598103934665603ull;
        auto mix = [&](std::uint64_t v) {
            h ^= v;
            h *= 1099511628211ull;
        };
        mix(d_.p);
        mix(dim());
        for (auto& m : d_.left_mult)
            for (auto v : m.data()) mix(v);
        return h;
    }

    AlgebraData d_;
    std::uint64_t hash_ = 0;
    mutable std::mutex cache_mutex_;
    mutable std::shared_ptr<const Algebra> opposite_;
    mutable std::weak_ptr<const Algebra> opposite_of_;
    mutable std::optional<FpMatrix> radical_cache_;
};

inline bool same_algebra(const AlgebraPtr& a, const AlgebraPtr& b)
{
    return a == b || (a && b && a->same_as(*b));
}

/// Opposite algebra: c'[i][j] = c[j][i]; same unit and idempotents. Cached both ways.
inline AlgebraPtr opposite(const AlgebraPtr& a)
{
    std::lock_guard lock(a->cache_mutex_);
    if (a->opposite_) return a->opposite_;
    if (auto back = a->opposite_of_.lock()) return back;
    const std::size_t n = a->dim();
    AlgebraData d;
    d.p = a->modulus();
    d.labels = a->labels();
    d.left_mult.assign(n, FpMatrix(n, n, d.p));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            auto v = a->product(j, i);
            for (std::size_t k = 0; k < n; ++k) d.left_mult[i](k, j) = v[k];
        }
    d.unit = a->unit();
    d.idempotents = a->idempotents();
    d.generators = a->generators();
    d.presentation = a->presentation();
    d.reversed = !a->reversed();
    d.radical = a->known_radical();
    if (!d.radical && a->radical_cache_) d.radical = a->radical_cache_;
    auto op = std::make_shared<const Algebra>(std::move(d), true);
    op->opposite_of_ = a;
    a->opposite_ = op;
    return op;
}

namespace detail {

inline std::string path_label(const Quiver& q, const std::vector<std::size_t>& path, std::size_t vertex)
{
    if (path.empty()) return "e_" + q.vertices[vertex];
    std::string s;
    for (std::size_t i = 0; i < path.size(); ++i) s += (i ? "." : "") + q.arrows[path[i]].name;
    return s;
}

struct PathInfo {
    std::vector<std::size_t> arrows;
    std::size_t source = 0;
    std::size_t target = 0;
};

inline bool path_less(const PathInfo& a, const PathInfo& b)
{
    if (a.arrows.size() != b.arrows.size()) return a.arrows.size() < b.arrows.size();
    if (a.arrows.empty()) return a.source < b.source;
    return a.arrows < b.arrows;
}

} // namespace detail

/// Builds kQ/I truncated at `bound`.
///
/// Basis: paths that are not leading terms of the ideal, with paths ordered by length and then
/// lexicographically on arrow indices. The ideal is generated inside kQ/J^{bound+1} and reduced to
/// echelon form with the largest path as leading term; products of basis paths are concatenated and
/// reduced to normal form. Every path of length `bound` must reduce to zero, otherwise the
/// presentation is rejected as possibly infinite-dimensional.
inline AlgebraPtr build_path_algebra(const Quiver& q, const std::vector<Relation>& rels, std::int64_t p_in,
                                     std::size_t bound)
{
    const Scalar p = checked_modulus(p_in);
    q.validate();
    if (bound == 0) throw InputError("length bound must be positive");
    const std::size_t nv = q.vertices.size();
    if (nv == 0) throw InputError("quiver has no vertices");

    struct Term {
        Scalar coeff;
        std::vector<std::size_t> arrows;
    };
    struct Rel {
        std::vector<Term> terms;
        std::size_t source, target;
    };
    std::vector<Rel> relations;
    for (std::size_t r = 0; r < rels.size(); ++r) {
        Rel rel{};
        bool first = true;
        for (auto& t : rels[r]) {
            if (t.path.size() < 2)
                throw InputError("relation " + std::to_string(r) + " is not admissible: path of length < 2");
            std::vector<std::size_t> idx;
            for (auto& name : t.path) idx.push_back(q.arrow_index(name));
            for (std::size_t k = 0; k + 1 < idx.size(); ++k)
                if (q.arrows[idx[k]].target != q.arrows[idx[k + 1]].source)
                    throw InputError("relation " + std::to_string(r) + " contains a non-composable path");
            std::size_t s = q.vertex_index(q.arrows[idx.front()].source);
            std::size_t tg = q.vertex_index(q.arrows[idx.back()].target);
            if (first) {
                rel.source = s;
                rel.target = tg;
                first = false;
            } else if (s != rel.source || tg != rel.target) {
                throw InputError("relation " + std::to_string(r) + " mixes paths with different endpoints");
            }
            Scalar c = reduce(t.coeff, p);
            if (c) rel.terms.push_back({c, std::move(idx)});
        }
        if (!rel.terms.empty()) relations.push_back(std::move(rel));
    }

    // all paths of length <= bound
    std::vector<detail::PathInfo> paths;
    for (std::size_t v = 0; v < nv; ++v) paths.push_back({{}, v, v});
    std::size_t layer_begin = 0;
    constexpr std::size_t max_paths = 40000;
    for (std::size_t len = 1; len <= bound; ++len) {
        std::size_t layer_end = paths.size();
        for (std::size_t i = layer_begin; i < layer_end; ++i)
            for (std::size_t a = 0; a < q.arrows.size(); ++a) {
                if (q.vertex_index(q.arrows[a].source) != paths[i].target) continue;
                detail::PathInfo np = paths[i];
                np.arrows.push_back(a);
                np.target = q.vertex_index(q.arrows[a].target);
                paths.push_back(std::move(np));
                if (paths.size() > max_paths)
                    throw InputError("too many paths below the length bound; lower the bound");
            }
        layer_begin = layer_end;
    }
    std::sort(paths.begin(), paths.end(), detail::path_less);
    // coordinate index: largest path first so that leading terms become pivots
    const std::size_t np = paths.size();
    std::map<std::vector<std::size_t>, std::size_t> arrow_path_index;
    std::vector<std::size_t> vertex_path_index(nv);
    auto coord = [&](std::size_t sorted_pos) { return np - 1 - sorted_pos; };
    for (std::size_t i = 0; i < np; ++i) {
        if (paths[i].arrows.empty())
            vertex_path_index[paths[i].source] = coord(i);
        else
            arrow_path_index[paths[i].arrows] = coord(i);
    }
    auto coord_of = [&](const std::vector<std::size_t>& arrows) -> std::optional<std::size_t> {
        if (arrows.size() > bound) return std::nullopt;
        return arrow_path_index.at(arrows);
    };

    EchelonBasis ideal(np, p);
    for (auto& rel : relations) {
        std::size_t min_len = bound + 1;
        for (auto& t : rel.terms) min_len = std::min(min_len, t.arrows.size());
        if (min_len > bound) continue;
        for (auto& pre : paths) {
            if (pre.target != rel.source) continue;
            if (pre.arrows.size() + min_len > bound) continue;
            for (auto& post : paths) {
                if (post.source != rel.target) continue;
                if (pre.arrows.size() + min_len + post.arrows.size() > bound) continue;
                FpVector v(np, 0);
                for (auto& t : rel.terms) {
                    std::vector<std::size_t> w = pre.arrows;
                    w.insert(w.end(), t.arrows.begin(), t.arrows.end());
                    w.insert(w.end(), post.arrows.begin(), post.arrows.end());
                    if (auto c = coord_of(w)) v[*c] = add_mod(v[*c], t.coeff, p);
                }
                ideal.add(std::move(v));
            }
        }
    }

    auto normal_form = [&](std::optional<std::size_t> c) {
        FpVector v(np, 0);
        if (c) v[*c] = 1 % p;
        ideal.reduce(v);
        return v;
    };

    std::vector<bool> leading(np, false);
    for (auto piv : ideal.pivots()) leading[piv] = true;

    for (std::size_t i = 0; i < np; ++i) {
        if (paths[i].arrows.size() != bound) continue;
        auto nf = normal_form(coord(i));
        if (std::any_of(nf.begin(), nf.end(), [](Scalar s) { return s != 0; }))
            throw InputError("possibly infinite-dimensional or non-confluent presentation: path " +
                             detail::path_label(q, paths[i].arrows, paths[i].source) +
                             " survives at length bound " + std::to_string(bound));
    }

    // basis in ascending path order
    std::vector<std::size_t> basis_sorted_pos;
    std::vector<std::size_t> coord_to_basis(np, SIZE_MAX);
    for (std::size_t i = 0; i < np; ++i)
        if (!leading[coord(i)]) {
            coord_to_basis[coord(i)] = basis_sorted_pos.size();
            basis_sorted_pos.push_back(i);
        }
    const std::size_t n = basis_sorted_pos.size();

    auto pres = std::make_shared<QuiverPresentation>();
    pres->quiver = q;
    pres->relations = rels;
    pres->length_bound = bound;
    pres->vertex_basis.resize(nv);
    pres->arrow_basis.resize(q.arrows.size());

    AlgebraData d;
    d.p = p;
    for (std::size_t b = 0; b < n; ++b) {
        auto& path = paths[basis_sorted_pos[b]];
        d.labels.push_back(detail::path_label(q, path.arrows, path.source));
        pres->basis_paths.push_back(path.arrows);
        pres->basis_source.push_back(path.source);
        pres->basis_target.push_back(path.target);
        if (path.arrows.empty()) pres->vertex_basis[path.source] = b;
        if (path.arrows.size() == 1) pres->arrow_basis[path.arrows[0]] = b;
    }

    auto to_basis = [&](const FpVector& nf) {
        FpVector out(n, 0);
        for (std::size_t c = 0; c < np; ++c)
            if (nf[c]) {
                if (coord_to_basis[c] == SIZE_MAX) throw AxiomError("normal form contains a leading term");
                out[coord_to_basis[c]] = nf[c];
            }
        return out;
    };

    d.left_mult.assign(n, FpMatrix(n, n, p));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            // b_i * b_j = traverse b_j, then b_i
            if (pres->basis_target[j] != pres->basis_source[i]) continue;
            std::vector<std::size_t> w = pres->basis_paths[j];
            w.insert(w.end(), pres->basis_paths[i].begin(), pres->basis_paths[i].end());
            std::optional<std::size_t> c;
            if (w.empty())
                c = vertex_path_index[pres->basis_source[i]];
            else
                c = coord_of(w);
            if (!c) continue;
            auto col = to_basis(normal_form(c));
            for (std::size_t k = 0; k < n; ++k) d.left_mult[i](k, j) = col[k];
        }

    d.unit.assign(n, 0);
    for (std::size_t v = 0; v < nv; ++v) {
        FpVector e(n, 0);
        e[pres->vertex_basis[v]] = 1 % p;
        d.unit[pres->vertex_basis[v]] = 1 % p;
        d.idempotents.push_back(std::move(e));
    }
    for (std::size_t v = 0; v < nv; ++v) {
        FpVector e(n, 0);
        e[pres->vertex_basis[v]] = 1 % p;
        d.generators.push_back(std::move(e));
    }
    for (std::size_t a = 0; a < q.arrows.size(); ++a) {
        FpVector e(n, 0);
        e[pres->arrow_basis[a]] = 1 % p;
        d.generators.push_back(std::move(e));
    }
    std::vector<std::size_t> rad_cols;
    for (std::size_t b = 0; b < n; ++b)
        if (!pres->basis_paths[b].empty()) rad_cols.push_back(b);
    d.radical = FpMatrix::identity(n, p).select_columns(rad_cols);
    d.presentation = std::move(pres);
    return std::make_shared<const Algebra>(std::move(d));
}

/// Algebra from a multiplication table: products[i][j] are the coordinates of b_i * b_j.
inline AlgebraPtr build_table_algebra(std::vector<std::string> labels,
                                      const std::vector<std::vector<std::vector<std::int64_t>>>& products,
                                      const std::vector<std::int64_t>& unit,
                                      const std::vector<std::vector<std::int64_t>>& idempotents, std::int64_t p_in)
{
    const Scalar p = checked_modulus(p_in);
    const std::size_t n = labels.size();
    if (products.size() != n) throw InputError("products: expected " + std::to_string(n) + " rows");
    AlgebraData d;
    d.p = p;
    d.labels = std::move(labels);
    d.left_mult.assign(n, FpMatrix(n, n, p));
    for (std::size_t i = 0; i < n; ++i) {
        if (products[i].size() != n) throw InputError("products[" + std::to_string(i) + "]: wrong length");
        for (std::size_t j = 0; j < n; ++j) {
            if (products[i][j].size() != n)
                throw InputError("products[" + std::to_string(i) + "][" + std::to_string(j) + "]: wrong length");
            for (std::size_t k = 0; k < n; ++k) d.left_mult[i](k, j) = reduce(products[i][j][k], p);
        }
    }
    if (unit.size() != n) throw InputError("unit: wrong length");
    for (auto u : unit) d.unit.push_back(reduce(u, p));
    for (auto& e : idempotents) {
        FpVector v;
        for (auto x : e) v.push_back(reduce(x, p));
        d.idempotents.push_back(std::move(v));
    }
    return std::make_shared<const Algebra>(std::move(d));
}

} // namespace mtc
