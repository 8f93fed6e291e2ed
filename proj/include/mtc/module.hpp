#pragma once

#include <string>
#include <vector>

#include "algebra.hpp"

namespace mtc {

enum class Side { left, right };

inline Side flip(Side s) { return s == Side::left ? Side::right : Side::left; }
inline const char* to_string(Side s) { return s == Side::left ? "left" : "right"; }

/// Finite-dimensional module given by the action matrices of an algebra basis.
///
/// Every module is stored as a left module over its acting algebra. A left A-module acts through
/// A itself; a right A-module is stored as a left module over opposite(A), so that
/// action(i) is the matrix of m -> m * b_i and action(i) * action(j) = action of b_j * b_i.
class ModuleRep {
public:
    ModuleRep() = default;

    ModuleRep(AlgebraPtr acting, Side side, std::size_t dim, std::vector<FpMatrix> action, bool trusted = false,
              std::vector<FpMatrix> endo_idempotents = {})
        : acting_(std::move(acting)), side_(side), dim_(dim), action_(std::move(action)),
          endo_idempotents_(std::move(endo_idempotents))
    {
        if (action_.size() != acting_->dim()) throw InputError("module action count differs from algebra dimension");
        for (auto& m : action_)
            if (m.rows() != dim_ || m.cols() != dim_ || m.modulus() != acting_->modulus())
                throw InputError("module action matrix has wrong shape or modulus");
        if (!trusted) validate();
    }

    const AlgebraPtr& acting() const { return acting_; }
    /// The algebra this is a module over, on its stated side.
    AlgebraPtr algebra() const { return side_ == Side::left ? acting_ : opposite(acting_); }
    Side side() const { return side_; }
    std::size_t dim() const { return dim_; }
    Scalar modulus() const { return acting_->modulus(); }
    const FpMatrix& action(std::size_t i) const { return action_.at(i); }
    const std::vector<FpMatrix>& actions() const { return action_; }

    /// Matrix of the action of an acting-algebra element.
    FpMatrix act(const FpVector& x) const
    {
        FpMatrix m(dim_, dim_, modulus());
        for (std::size_t i = 0; i < x.size(); ++i) m.add_scaled(action_[i], x[i]);
        return m;
    }

    /// Known orthogonal idempotent endomorphisms summing to the identity (may be empty).
    const std::vector<FpMatrix>& endo_idempotents() const { return endo_idempotents_; }

    void validate() const
    {
        const auto& a = *acting_;
        const std::size_t n = a.dim();
        if (!(act(a.unit()) == FpMatrix::identity(dim_, modulus())))
            throw AxiomError("module: unit does not act as the identity");
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (!(action_[i] * action_[j] == act(a.product(i, j))))
                    throw AxiomError("module: action is not multiplicative on (" + a.label(i) + ", " + a.label(j) + ")");
        if (!endo_idempotents_.empty()) {
            FpMatrix sum(dim_, dim_, modulus());
            for (auto& e : endo_idempotents_) {
                if (!(e * e == e)) throw AxiomError("module: endomorphism idempotent is not idempotent");
                for (auto& g : action_)
                    if (!(e * g == g * e)) throw AxiomError("module: endomorphism idempotent is not linear");
                sum += e;
            }
            if (!(sum == FpMatrix::identity(dim_, modulus())))
                throw AxiomError("module: endomorphism idempotents do not sum to the identity");
        }
    }

    bool operator==(const ModuleRep& o) const
    {
        return side_ == o.side_ && dim_ == o.dim_ && same_algebra(acting_, o.acting_) && action_ == o.action_;
    }

private:
    AlgebraPtr acting_;
    Side side_ = Side::left;
    std::size_t dim_ = 0;
    std::vector<FpMatrix> action_;
    std::vector<FpMatrix> endo_idempotents_;
};

inline void require_same_acting(const ModuleRep& m, const ModuleRep& n, const char* what)
{
    if (!same_algebra(m.acting(), n.acting()) || m.side() != n.side())
        throw InputError(std::string(what) + ": modules live over different algebras or sides");
}

inline ModuleRep zero_module(const AlgebraPtr& acting, Side side)
{
    return ModuleRep(acting, side, 0, std::vector<FpMatrix>(acting->dim(), FpMatrix(0, 0, acting->modulus())), true);
}

/// Left regular module of the acting algebra (for `right`, the right regular module of a).
inline ModuleRep regular(const AlgebraPtr& a, Side side = Side::left)
{
    AlgebraPtr acting = side == Side::left ? a : opposite(a);
    std::vector<FpMatrix> act;
    for (std::size_t i = 0; i < acting->dim(); ++i) act.push_back(acting->left_mult(i));
    std::vector<FpMatrix> endo;
    for (auto& e : acting->idempotents()) {
        auto r = acting->right_matrix(e);
        if (!r.is_zero()) endo.push_back(std::move(r));
    }
    return ModuleRep(acting, side, acting->dim(), std::move(act), true, std::move(endo));
}

/// Basis (columns, as acting-algebra elements) of acting * e_i.
inline FpMatrix projective_basis(const Algebra& acting, std::size_t i)
{
    return column_space(acting.right_matrix(acting.idempotents().at(i)));
}

/// Restriction of the action to an invariant subspace with independent basis columns.
inline ModuleRep submodule(const ModuleRep& m, const FpMatrix& basis)
{
    std::vector<FpMatrix> act;
    for (auto& g : m.actions()) {
        auto x = solve(basis, g * basis);
        if (!x) throw AxiomError("submodule: subspace is not invariant");
        act.push_back(std::move(*x));
    }
    return ModuleRep(m.acting(), m.side(), basis.cols(), std::move(act), true);
}

/// Projective A e_i for the idempotent with index i (on the given side).
inline ModuleRep projective(const AlgebraPtr& a, std::size_t i, Side side = Side::left)
{
    auto reg = regular(a, side);
    return submodule(reg, projective_basis(*reg.acting(), i));
}

struct QuotientModule {
    ModuleRep module;
    FpMatrix projection;
    FpMatrix section;
};

/// Quotient by an invariant subspace spanned by the columns of `sub`.
inline QuotientModule quotient(const ModuleRep& m, const FpMatrix& sub)
{
    auto qm = quotient_map(sub, m.dim(), m.modulus());
    std::vector<FpMatrix> act;
    for (auto& g : m.actions()) act.push_back(qm.projection * g * qm.section);
    return {ModuleRep(m.acting(), m.side(), qm.section.cols(), std::move(act), true), std::move(qm.projection),
            std::move(qm.section)};
}

inline ModuleRep direct_sum(const std::vector<ModuleRep>& ms)
{
    if (ms.empty()) throw InputError("direct_sum of an empty list");
    for (auto& m : ms) require_same_acting(ms.front(), m, "direct_sum");
    const Scalar p = ms.front().modulus();
    const auto& acting = ms.front().acting();
    std::vector<FpMatrix> act;
    for (std::size_t i = 0; i < acting->dim(); ++i) {
        std::vector<FpMatrix> blocks;
        for (auto& m : ms) blocks.push_back(m.action(i));
        act.push_back(block_diagonal(blocks, p));
    }
    std::size_t total = 0;
    for (auto& m : ms) total += m.dim();
    std::vector<FpMatrix> endo;
    std::size_t offset = 0;
    for (auto& m : ms) {
        std::vector<FpMatrix> local = m.endo_idempotents();
        if (local.empty() && m.dim()) local.push_back(FpMatrix::identity(m.dim(), p));
        for (auto& e : local) {
            FpMatrix big(total, total, p);
            big.set_block(offset, offset, e);
            endo.push_back(std::move(big));
        }
        offset += m.dim();
    }
    return ModuleRep(acting, ms.front().side(), total, std::move(act), true, std::move(endo));
}

/// Power M^k.
inline ModuleRep power(const ModuleRep& m, std::size_t k)
{
    if (k == 0) return zero_module(m.acting(), m.side());
    return direct_sum(std::vector<ModuleRep>(k, m));
}

/// Standard duality: side flips and every action matrix is transposed.
inline ModuleRep dual(const ModuleRep& m)
{
    std::vector<FpMatrix> act;
    for (auto& g : m.actions()) act.push_back(g.transpose());
    std::vector<FpMatrix> endo;
    for (auto& e : m.endo_idempotents()) endo.push_back(e.transpose());
    return ModuleRep(opposite(m.acting()), flip(m.side()), m.dim(), std::move(act), true, std::move(endo));
}

/// Span of { b x : b in basis, x in gens } as basis columns.
inline FpMatrix generated_submodule(const ModuleRep& m, const std::vector<FpVector>& gens)
{
    EchelonBasis span(m.dim(), m.modulus());
    std::vector<FpVector> cols;
    for (auto& g : gens)
        for (auto& a : m.actions()) {
            auto v = a * g;
            if (span.add(v)) cols.push_back(std::move(v));
        }
    return FpMatrix::from_columns(cols, m.dim(), m.modulus());
}

/// dim(e_i M) for each distinguished idempotent.
inline std::vector<std::size_t> dimension_vector(const ModuleRep& m)
{
    std::vector<std::size_t> dv;
    for (auto& e : m.acting()->idempotents()) dv.push_back(rank(m.act(e)));
    return dv;
}

/// Isomorphic copy whose basis runs through e_1 M, e_2 M, ... in order.
inline ModuleRep adapt_to_idempotents(const ModuleRep& m)
{
    std::vector<FpMatrix> blocks;
    for (auto& e : m.acting()->idempotents()) blocks.push_back(column_space(m.act(e)));
    FpMatrix t = hstack(blocks, m.dim(), m.modulus());
    auto tinv = inverse(t);
    if (!tinv) throw AxiomError("idempotent decomposition of module is not a direct sum");
    std::vector<FpMatrix> act;
    for (auto& g : m.actions()) act.push_back(*tinv * g * t);
    std::vector<FpMatrix> endo;
    for (auto& e : m.endo_idempotents()) endo.push_back(*tinv * e * t);
    return ModuleRep(m.acting(), m.side(), m.dim(), std::move(act), true, std::move(endo));
}

/// Module over a quiver algebra from vertex dimensions and arrow matrices.
///
/// Left modules: the matrix of arrow a: s -> t maps the s-block to the t-block (dims[t] x dims[s]).
/// Right modules: it is the matrix of m -> m * a, mapping the t-block to the s-block (dims[s] x dims[t]).
inline ModuleRep quiver_module(const AlgebraPtr& a, Side side, const std::vector<std::size_t>& dims,
                               const std::vector<FpMatrix>& arrow_maps)
{
    const auto& pres = a->presentation();
    if (!pres || a->reversed()) throw InputError("quiver_module: algebra has no quiver presentation");
    const auto& q = pres->quiver;
    const Scalar p = a->modulus();
    if (dims.size() != q.vertices.size()) throw InputError("quiver_module: one dimension per vertex required");
    if (arrow_maps.size() != q.arrows.size()) throw InputError("quiver_module: one matrix per arrow required");
    std::vector<std::size_t> offset(dims.size() + 1, 0);
    for (std::size_t v = 0; v < dims.size(); ++v) offset[v + 1] = offset[v] + dims[v];
    const std::size_t n = offset.back();
    std::vector<FpMatrix> big;
    for (std::size_t k = 0; k < q.arrows.size(); ++k) {
        std::size_t s = q.vertex_index(q.arrows[k].source), t = q.vertex_index(q.arrows[k].target);
        std::size_t from = side == Side::left ? s : t, to = side == Side::left ? t : s;
        const auto& m = arrow_maps[k];
        if (m.rows() != dims[to] || m.cols() != dims[from])
            throw InputError("arrow '" + q.arrows[k].name + "': expected a " + std::to_string(dims[to]) + "x" +
                             std::to_string(dims[from]) + " matrix");
        FpMatrix e(n, n, p);
        e.set_block(offset[to], offset[from], m);
        big.push_back(std::move(e));
    }
    std::vector<FpMatrix> act;
    for (std::size_t b = 0; b < a->dim(); ++b) {
        const auto& path = pres->basis_paths[b];
        if (path.empty()) {
            std::size_t v = pres->basis_source[b];
            FpMatrix e(n, n, p);
            for (std::size_t i = offset[v]; i < offset[v + 1]; ++i) e(i, i) = 1 % p;
            act.push_back(std::move(e));
            continue;
        }
        FpMatrix m = FpMatrix::identity(n, p);
        if (side == Side::left)
            for (auto k : path) m = big[k] * m;
        else
            for (auto k : path) m = m * big[k];
        act.push_back(std::move(m));
    }
    AlgebraPtr acting = side == Side::left ? a : opposite(a);
    return ModuleRep(acting, side, n, std::move(act));
}

/// Arrow matrices of a module over a quiver algebra, in a vertex-adapted basis.
struct QuiverRepresentation {
    std::vector<std::size_t> dims;
    std::vector<FpMatrix> arrow_maps;
};

inline QuiverRepresentation to_quiver_representation(const ModuleRep& m)
{
    auto a = m.algebra();
    const auto& pres = a->presentation();
    if (!pres || a->reversed()) throw InputError("module algebra has no quiver presentation");
    ModuleRep ad = adapt_to_idempotents(m);
    const auto& q = pres->quiver;
    QuiverRepresentation r;
    r.dims.resize(q.vertices.size());
    std::vector<std::size_t> offset(q.vertices.size() + 1, 0);
    for (std::size_t v = 0; v < q.vertices.size(); ++v) {
        r.dims[v] = rank(ad.action(pres->vertex_basis[v]));
        offset[v + 1] = offset[v] + r.dims[v];
    }
    for (std::size_t k = 0; k < q.arrows.size(); ++k) {
        std::size_t s = q.vertex_index(q.arrows[k].source), t = q.vertex_index(q.arrows[k].target);
        std::size_t from = m.side() == Side::left ? s : t, to = m.side() == Side::left ? t : s;
        r.arrow_maps.push_back(ad.action(pres->arrow_basis[k]).block(offset[to], offset[from], r.dims[to], r.dims[from]));
    }
    return r;
}

} // namespace mtc
