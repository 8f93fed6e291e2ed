#pragma once

#include <optional>
#include <vector>

#include "module.hpp"

namespace mtc {

/// Basis of Hom_A(source, target); each map is a target.dim() x source.dim() matrix.
struct HomSpace {
    ModuleRep source;
    ModuleRep target;
    std::vector<FpMatrix> basis;

    std::size_t dim() const { return basis.size(); }

    /// Basis maps flattened into the columns of one matrix.
    FpMatrix flattened() const
    {
        std::vector<FpVector> cols;
        for (auto& f : basis) cols.push_back(f.flatten());
        return FpMatrix::from_columns(cols, target.dim() * source.dim(), source.modulus());
    }

    /// Coordinates of an A-linear map in this basis; nullopt if it is not in the span.
    std::optional<FpVector> coordinates(const FpMatrix& f) const
    {
        auto x = solve(flattened(), FpMatrix::column(f.flatten(), source.modulus()));
        if (!x) return std::nullopt;
        return x->col(0);
    }
};

namespace detail {

/// Basis change putting the module into blocks e_1 M, e_2 M, ... (columns of `to_block`).
struct BlockBasis {
    FpMatrix to_block;   // block coordinates -> original
    FpMatrix from_block; // original -> block coordinates
    std::vector<std::size_t> offset;
};

inline BlockBasis block_basis(const ModuleRep& m)
{
    const auto& idem = m.acting()->idempotents();
    std::vector<FpMatrix> blocks;
    BlockBasis b;
    b.offset.push_back(0);
    for (auto& e : idem) {
        blocks.push_back(column_space(m.act(e)));
        b.offset.push_back(b.offset.back() + blocks.back().cols());
    }
    b.to_block = hstack(blocks, m.dim(), m.modulus());
    auto inv = inverse(b.to_block);
    if (!inv) throw AxiomError("module is not the direct sum of its idempotent pieces");
    b.from_block = std::move(*inv);
    return b;
}

} // namespace detail

/// All A-linear maps M -> N: the kernel of the intertwining system f rho_M(g) = rho_N(g) f over a
/// generating set g, solved blockwise along the distinguished idempotents.
inline HomSpace hom(const ModuleRep& m, const ModuleRep& n)
{
    require_same_acting(m, n, "hom");
    HomSpace h{m, n, {}};
    const std::size_t dm = m.dim(), dn = n.dim();
    if (dm == 0 || dn == 0) return h;
    const Scalar p = m.modulus();
    const auto& alg = *m.acting();
    auto bm = detail::block_basis(m);
    auto bn = detail::block_basis(n);
    const std::size_t r = alg.idempotents().size();
    // unknown index of block entry (row i of N-block k, column j of M-block k)
    std::vector<std::size_t> unk_off(r + 1, 0);
    for (std::size_t k = 0; k < r; ++k)
        unk_off[k + 1] = unk_off[k] + (bn.offset[k + 1] - bn.offset[k]) * (bm.offset[k + 1] - bm.offset[k]);
    const std::size_t nunk = unk_off[r];
    if (nunk == 0) return h;
    std::vector<std::size_t> mblock(dm), nblock(dn);
    for (std::size_t k = 0; k < r; ++k) {
        for (std::size_t c = bm.offset[k]; c < bm.offset[k + 1]; ++c) mblock[c] = k;
        for (std::size_t c = bn.offset[k]; c < bn.offset[k + 1]; ++c) nblock[c] = k;
    }
    auto unknown = [&](std::size_t row, std::size_t col) {
        std::size_t k = nblock[row];
        std::size_t w = bm.offset[k + 1] - bm.offset[k];
        return unk_off[k] + (row - bn.offset[k]) * w + (col - bm.offset[k]);
    };

    EchelonBasis eqs(nunk, p);
    for (auto& g : alg.generators()) {
        if (std::find(alg.idempotents().begin(), alg.idempotents().end(), g) != alg.idempotents().end()) continue;
        FpMatrix gm = bm.from_block * m.act(g) * bm.to_block;
        FpMatrix gn = bn.from_block * n.act(g) * bn.to_block;
        for (std::size_t row = 0; row < dn; ++row)
            for (std::size_t col = 0; col < dm; ++col) {
                FpVector eq(nunk, 0);
                bool nonzero = false;
                // (f gm)[row][col] = sum_k f[row][k] gm[k][col], k in the M-block of row's N-block
                std::size_t kb = nblock[row];
                for (std::size_t k = bm.offset[kb]; k < bm.offset[kb + 1]; ++k)
                    if (Scalar c = gm(k, col)) {
                        auto u = unknown(row, k);
                        eq[u] = add_mod(eq[u], c, p);
                        nonzero = true;
                    }
                // (gn f)[row][col] = sum_k gn[row][k] f[k][col], k in the N-block of col's M-block
                std::size_t cb = mblock[col];
                for (std::size_t k = bn.offset[cb]; k < bn.offset[cb + 1]; ++k)
                    if (Scalar c = gn(row, k)) {
                        auto u = unknown(k, col);
                        eq[u] = sub_mod(eq[u], c, p);
                        nonzero = true;
                    }
                if (nonzero) eqs.add(std::move(eq));
            }
        if (eqs.rank() == nunk) return h;
    }
    FpMatrix sys = eqs.rank() ? FpMatrix::from_columns(eqs.rows(), nunk, p).transpose() : FpMatrix(0, nunk, p);
    FpMatrix ker = kernel_basis(sys);
    for (std::size_t c = 0; c < ker.cols(); ++c) {
        FpMatrix fb(dn, dm, p);
        for (std::size_t row = 0; row < dn; ++row) {
            std::size_t k = nblock[row];
            for (std::size_t col = bm.offset[k]; col < bm.offset[k + 1]; ++col) fb(row, col) = ker(unknown(row, col), c);
        }
        h.basis.push_back(bn.to_block * fb * bm.from_block);
    }
    return h;
}

inline bool is_homomorphism(const ModuleRep& m, const ModuleRep& n, const FpMatrix& f)
{
    for (std::size_t i = 0; i < m.actions().size(); ++i)
        if (!(f * m.action(i) == n.action(i) * f)) return false;
    return true;
}

/// Endomorphism algebra with multiplication f g = f o g, and M as a left module over it.
struct EndAlgebra {
    AlgebraPtr algebra;
    ModuleRep module;
    std::vector<FpMatrix> basis;
};

/// End_A(M). Idempotents of the result come from the known idempotent endomorphisms of M
/// (summand projections) when available, otherwise {1}.
inline EndAlgebra end_algebra(const ModuleRep& m)
{
    if (m.dim() == 0) throw InputError("end_algebra of the zero module");
    const Scalar p = m.modulus();
    auto h = hom(m, m);
    const std::size_t r = h.dim();
    FpMatrix flat = h.flattened();
    std::vector<FpMatrix> rhs;
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) rhs.push_back(FpMatrix::column((h.basis[i] * h.basis[j]).flatten(), p));
    std::vector<FpMatrix> extra;
    extra.push_back(FpMatrix::column(FpMatrix::identity(m.dim(), p).flatten(), p));
    for (auto& e : m.endo_idempotents()) extra.push_back(FpMatrix::column(e.flatten(), p));
    std::vector<FpMatrix> all = rhs;
    all.insert(all.end(), extra.begin(), extra.end());
    auto x = solve(flat, hstack(all, flat.rows(), p));
    if (!x) throw AxiomError("end_algebra: composite or idempotent outside the endomorphism space");
    AlgebraData d;
    d.p = p;
    for (std::size_t i = 0; i < r; ++i) d.labels.push_back("f" + std::to_string(i));
    d.left_mult.assign(r, FpMatrix(r, r, p));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j)
            for (std::size_t k = 0; k < r; ++k) d.left_mult[i](k, j) = (*x)(k, i * r + j);
    d.unit = x->col(r * r);
    for (std::size_t e = 0; e < m.endo_idempotents().size(); ++e) d.idempotents.push_back(x->col(r * r + 1 + e));
    auto alg = std::make_shared<const Algebra>(std::move(d), true);
    std::vector<FpMatrix> endo;
    for (auto& e : m.acting()->idempotents()) {
        auto a = m.act(e);
        if (!a.is_zero()) endo.push_back(std::move(a));
    }
    ModuleRep mod(alg, Side::left, m.dim(), h.basis, true, std::move(endo));
    return {std::move(alg), std::move(mod), std::move(h.basis)};
}

/// Regular module over the acting algebra of m, on the same side as m.
inline ModuleRep regular_like(const ModuleRep& m)
{
    std::vector<FpMatrix> act;
    const auto& a = *m.acting();
    for (std::size_t i = 0; i < a.dim(); ++i) act.push_back(a.left_mult(i));
    std::vector<FpMatrix> endo;
    for (auto& e : a.idempotents()) {
        auto r = a.right_matrix(e);
        if (!r.is_zero()) endo.push_back(std::move(r));
    }
    return ModuleRep(m.acting(), m.side(), a.dim(), std::move(act), true, std::move(endo));
}

/// D of the regular module of the other side: the injective cogenerator on m's side.
inline ModuleRep dual_regular_like(const ModuleRep& m)
{
    // a left module over opposite(acting) with the flipped side, dualised back onto m's side
    std::vector<FpMatrix> act;
    auto op = opposite(m.acting());
    for (std::size_t i = 0; i < op->dim(); ++i) act.push_back(op->left_mult(i));
    ModuleRep reg_other(op, flip(m.side()), op->dim(), std::move(act), true);
    return dual(reg_other);
}

/// X in add M: the identity of X lies in the span of composites X -> M -> X.
inline bool in_add(const ModuleRep& x, const ModuleRep& m)
{
    require_same_acting(x, m, "in_add");
    if (x.dim() == 0) return true;
    const Scalar p = x.modulus();
    auto into = hom(m, x);
    auto out = hom(x, m);
    FpVector id = FpMatrix::identity(x.dim(), p).flatten();
    EchelonBasis span(x.dim() * x.dim(), p);
    for (auto& f : into.basis)
        for (auto& g : out.basis) {
            if (span.add((f * g).flatten()) && span.contains(id)) return true;
        }
    return false;
}

/// Explicit split witness: u = evaluation X -> M^r over a basis of Hom(X, M) and v : M^r -> X
/// with v u = id, or nullopt when X is not in add M.
struct SplitWitness {
    FpMatrix embed;   // (r * dim M) x dim X
    FpMatrix retract; // dim X x (r * dim M)
};

inline std::optional<SplitWitness> split_witness(const ModuleRep& x, const ModuleRep& m)
{
    require_same_acting(x, m, "split_witness");
    const Scalar p = x.modulus();
    auto out = hom(x, m);
    auto into = hom(m, x);
    const std::size_t r = out.dim();
    std::vector<FpVector> cols;
    for (std::size_t k = 0; k < r; ++k)
        for (auto& f : into.basis) cols.push_back((f * out.basis[k]).flatten());
    FpVector id = FpMatrix::identity(x.dim(), p).flatten();
    auto coeffs = solve(FpMatrix::from_columns(cols, x.dim() * x.dim(), p), FpMatrix::column(id, p));
    if (!coeffs) return std::nullopt;
    SplitWitness w{vstack(out.basis, x.dim(), p), FpMatrix(x.dim(), r * m.dim(), p)};
    if (r == 0) w.embed = FpMatrix(0, x.dim(), p);
    for (std::size_t k = 0; k < r; ++k) {
        FpMatrix vk(x.dim(), m.dim(), p);
        for (std::size_t a = 0; a < into.dim(); ++a) vk.add_scaled(into.basis[a], (*coeffs)(k * into.dim() + a, 0));
        w.retract.set_block(0, k * m.dim(), vk);
    }
    if (!(w.retract * w.embed == FpMatrix::identity(x.dim(), p))) throw AxiomError("split witness does not compose to id");
    return w;
}

inline bool is_projective(const ModuleRep& m) { return in_add(m, regular_like(m)); }

inline bool is_injective(const ModuleRep& m) { return in_add(m, dual_regular_like(m)); }

/// Projectivity by splitting the cover of M by copies of A e_i, one per basis vector of e_i M.
inline bool is_projective_by_split(const ModuleRep& m)
{
    if (m.dim() == 0) return true;
    const Scalar p = m.modulus();
    const auto& a = *m.acting();
    auto reg = regular_like(m);
    std::vector<ModuleRep> parts;
    std::vector<FpMatrix> cover_blocks;
    for (std::size_t i = 0; i < a.idempotents().size(); ++i) {
        FpMatrix gens = column_space(m.act(a.idempotents()[i]));
        if (gens.cols() == 0) continue;
        FpMatrix pb = projective_basis(a, i);
        ModuleRep pi = submodule(reg, pb);
        for (std::size_t g = 0; g < gens.cols(); ++g) {
            FpMatrix block(m.dim(), pb.cols(), p);
            for (std::size_t t = 0; t < pb.cols(); ++t) {
                auto v = m.act(pb.col(t)) * gens.col(g);
                for (std::size_t r = 0; r < m.dim(); ++r) block(r, t) = v[r];
            }
            parts.push_back(pi);
            cover_blocks.push_back(std::move(block));
        }
    }
    ModuleRep f = direct_sum(parts);
    FpMatrix pi_map = hstack(cover_blocks, m.dim(), p);
    auto sections = hom(m, f);
    std::vector<FpVector> cols;
    for (auto& s : sections.basis) cols.push_back((pi_map * s).flatten());
    if (cols.empty()) return false;
    FpVector id = FpMatrix::identity(m.dim(), p).flatten();
    return membership(id, FpMatrix::from_columns(cols, id.size(), p));
}

/// X (x) _A N for X a right A-module and N a left A-module.
struct BimoduleTensor {
    std::size_t left_dim = 0;
    std::size_t right_dim = 0;
    std::size_t dim = 0;
    FpMatrix projection; // dim x (left_dim * right_dim), index s * right_dim + t for x_s (x) y_t
    FpMatrix section;
};

inline BimoduleTensor tensor_over(const ModuleRep& x, const ModuleRep& n)
{
    if (!same_algebra(x.acting(), opposite(n.acting())) || x.side() == n.side())
        throw InputError("tensor: need a right module and a left module over the same algebra");
    const Scalar p = n.modulus();
    const std::size_t dx = x.dim(), dn = n.dim(), total = dx * dn;
    std::vector<FpVector> rel;
    EchelonBasis span(total, p);
    for (auto& g : n.acting()->generators()) {
        FpMatrix gx = x.act(g), gn = n.act(g);
        for (std::size_t s = 0; s < dx; ++s)
            for (std::size_t t = 0; t < dn; ++t) {
                FpVector v(total, 0);
                for (std::size_t s2 = 0; s2 < dx; ++s2)
                    if (Scalar c = gx(s2, s)) v[s2 * dn + t] = add_mod(v[s2 * dn + t], c, p);
                for (std::size_t t2 = 0; t2 < dn; ++t2)
                    if (Scalar c = gn(t2, t)) v[s * dn + t2] = sub_mod(v[s * dn + t2], c, p);
                if (span.add(v)) rel.push_back(std::move(v));
            }
    }
    auto qm = quotient_map(FpMatrix::from_columns(rel, total, p), total, p);
    BimoduleTensor t;
    t.left_dim = dx;
    t.right_dim = dn;
    t.dim = qm.section.cols();
    t.projection = std::move(qm.projection);
    t.section = std::move(qm.section);
    return t;
}

} // namespace mtc
