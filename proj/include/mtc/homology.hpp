#pragma once

#include <deque>
#include <vector>

#include "approx.hpp"
#include "dimvalue.hpp"
#include "hom.hpp"
#include "radical.hpp"

namespace mtc {

/// Direct sum of indecomposable-by-idempotent projectives A e_j, one per listed top.
struct ProjectiveTerm {
    std::vector<std::size_t> tops;
    std::vector<std::size_t> offset;
    ModuleRep module;

    std::size_t dim() const { return module.dim(); }
};

namespace detail {

/// Basis of e_j X for every distinguished idempotent, with left inverses for coordinates.
struct PieceBases {
    std::vector<FpMatrix> basis;
    std::vector<FpMatrix> coords;
};

inline PieceBases piece_bases(const ModuleRep& x)
{
    PieceBases b;
    for (auto& e : x.acting()->idempotents()) {
        b.basis.push_back(column_space(x.act(e)));
        b.coords.push_back(left_inverse(b.basis.back()));
    }
    return b;
}

} // namespace detail

/// Projective resolution ... -> P_1 -> P_0 -> M -> 0, extended on demand.
///
/// Omega_0 = M and Omega_{i+1} = ker(P_i -> Omega_i). Covers are built from a basis of the top
/// Omega / J Omega when `minimal`, otherwise from an irredundant generating set.
class Resolution {
public:
    explicit Resolution(ModuleRep m, bool minimal = true) : minimal_(minimal)
    {
        const auto& a = *m.acting();
        auto reg = regular_like(m);
        for (std::size_t j = 0; j < a.idempotents().size(); ++j) {
            proj_basis_.push_back(projective_basis(a, j));
            proj_.push_back(submodule(reg, proj_basis_.back()));
        }
        if (minimal_) radical_ = radical(m.acting());
        omega_.push_back(std::move(m));
    }

    const ModuleRep& target() const { return omega_.front(); }
    bool minimal() const { return minimal_; }

    /// Ensure P_0 .. P_n exist.
    void extend(std::size_t n)
    {
        while (terms_.size() <= n) step();
    }

    const ProjectiveTerm& term(std::size_t i)
    {
        extend(i);
        return terms_[i];
    }

    const ModuleRep& syzygy(std::size_t i)
    {
        if (i > 0) extend(i - 1);
        return omega_[i];
    }

    /// Matrix of P_0 -> M (i = 0) or P_i -> P_{i-1}.
    const FpMatrix& differential(std::size_t i)
    {
        extend(i);
        return diff_[i];
    }

    /// z[l][k]: component in P_{i-1}'s k-th summand of the image of P_i's l-th generator, as an
    /// algebra element of e_{top l} A e_{top k}. Defined for i >= 1.
    const std::vector<std::vector<FpVector>>& components(std::size_t i)
    {
        extend(i);
        return comp_[i];
    }

    /// First index whose syzygy is zero, if reached.
    std::optional<std::size_t> terminated_at() const
    {
        for (std::size_t i = 0; i < omega_.size(); ++i)
            if (omega_[i].dim() == 0) return i;
        return std::nullopt;
    }

    /// d_i d_{i+1} = 0 and rank d_{i+1} = dim P_i - rank d_i for the computed part.
    bool verify_exact()
    {
        for (std::size_t i = 0; i + 1 < terms_.size(); ++i) {
            if (!(diff_[i] * diff_[i + 1]).is_zero()) return false;
            if (rank(diff_[i + 1]) + rank(diff_[i]) != terms_[i].dim()) return false;
        }
        if (!terms_.empty() && rank(diff_[0]) != target().dim()) return false;
        return true;
    }

private:
    std::vector<std::pair<std::size_t, FpVector>> generators(const ModuleRep& om) const
    {
        const auto& a = *om.acting();
        const Scalar p = om.modulus();
        std::vector<std::pair<std::size_t, FpVector>> gens;
        if (om.dim() == 0) return gens;
        EchelonBasis span(om.dim(), p);
        if (minimal_) {
            for (std::size_t c = 0; c < radical_.cols(); ++c) {
                FpMatrix r = om.act(radical_.col(c));
                for (std::size_t k = 0; k < om.dim(); ++k) span.add(r.col(k));
            }
        }
        for (std::size_t j = 0; j < a.idempotents().size(); ++j) {
            FpMatrix piece = column_space(om.act(a.idempotents()[j]));
            for (std::size_t k = 0; k < piece.cols(); ++k) {
                FpVector v = piece.col(k);
                if (span.contains(v)) continue;
                gens.emplace_back(j, v);
                if (minimal_) {
                    span.add(v);
                } else {
                    FpMatrix sub = generated_submodule(om, {v});
                    for (std::size_t c = 0; c < sub.cols(); ++c) span.add(sub.col(c));
                }
            }
        }
        if (!minimal_ || span.rank() == om.dim()) return gens;
        throw AxiomError("resolution: top generators do not span");
    }

    void step()
    {
        const std::size_t i = terms_.size();
        const ModuleRep& om = omega_[i];
        const Scalar p = om.modulus();
        auto gens = generators(om);
        ProjectiveTerm t;
        std::vector<ModuleRep> parts;
        std::vector<FpMatrix> cover;
        t.offset.push_back(0);
        for (auto& [j, g] : gens) {
            t.tops.push_back(j);
            parts.push_back(proj_[j]);
            t.offset.push_back(t.offset.back() + proj_[j].dim());
            FpMatrix block(om.dim(), proj_basis_[j].cols(), p);
            for (std::size_t c = 0; c < proj_basis_[j].cols(); ++c) {
                auto v = om.act(proj_basis_[j].col(c)) * g;
                for (std::size_t r = 0; r < om.dim(); ++r) block(r, c) = v[r];
            }
            cover.push_back(std::move(block));
        }
        t.module = parts.empty() ? zero_module(om.acting(), om.side()) : direct_sum(parts);
        FpMatrix pi = hstack(cover, om.dim(), p);
        if (rank(pi) != om.dim()) throw AxiomError("resolution: cover is not surjective");
        // embedding of Omega_i into P_{i-1}, or identity on M
        FpMatrix d = i == 0 ? pi : embed_.back() * pi;
        std::vector<std::vector<FpVector>> comp;
        if (i > 0) {
            const auto& prev = terms_[i - 1];
            for (auto& [j, g] : gens) {
                FpVector y = embed_.back() * g;
                std::vector<FpVector> row;
                for (std::size_t k = 0; k < prev.tops.size(); ++k) {
                    const auto& b = proj_basis_[prev.tops[k]];
                    FpVector coeff(y.begin() + static_cast<long>(prev.offset[k]),
                                   y.begin() + static_cast<long>(prev.offset[k + 1]));
                    row.push_back(b * coeff);
                }
                comp.push_back(std::move(row));
            }
        }
        FpMatrix ker = kernel_basis(pi);
        omega_.push_back(submodule(t.module, ker));
        embed_.push_back(std::move(ker));
        diff_.push_back(std::move(d));
        comp_.push_back(std::move(comp));
        terms_.push_back(std::move(t));
    }

    bool minimal_;
    FpMatrix radical_;
    std::vector<FpMatrix> proj_basis_;
    std::vector<ModuleRep> proj_;
    std::deque<ModuleRep> omega_;
    std::vector<FpMatrix> embed_; // embed_[i]: Omega_{i+1} -> P_i
    std::deque<ProjectiveTerm> terms_;
    std::vector<FpMatrix> diff_;
    std::vector<std::vector<std::vector<FpVector>>> comp_;
};

namespace detail {

/// Matrix of the map induced by d_i on pieces:
/// hom_side: Hom(P_{i-1}, N) -> Hom(P_i, N), blocks coords_{top l} rho(z_lk) basis_{top k};
/// otherwise X (x) P_i -> X (x) P_{i-1}, blocks coords_{top k} rho(z_lk) basis_{top l}.
inline FpMatrix induced_map(Resolution& r, std::size_t i, const ModuleRep& x, const PieceBases& pb, bool hom_side)
{
    const Scalar p = x.modulus();
    const auto& cur = r.term(i).tops;
    const auto& prev = r.term(i - 1).tops;
    const auto& z = r.components(i);
    auto piece_dim = [&](std::size_t j) { return pb.basis[j].cols(); };
    std::vector<std::size_t> off_cur{0}, off_prev{0};
    for (auto j : cur) off_cur.push_back(off_cur.back() + piece_dim(j));
    for (auto j : prev) off_prev.push_back(off_prev.back() + piece_dim(j));
    FpMatrix m = hom_side ? FpMatrix(off_cur.back(), off_prev.back(), p) : FpMatrix(off_prev.back(), off_cur.back(), p);
    for (std::size_t l = 0; l < cur.size(); ++l)
        for (std::size_t k = 0; k < prev.size(); ++k) {
            FpMatrix act = x.act(z[l][k]);
            if (act.is_zero()) continue;
            if (hom_side)
                m.set_block(off_cur[l], off_prev[k], pb.coords[cur[l]] * act * pb.basis[prev[k]]);
            else
                m.set_block(off_prev[k], off_cur[l], pb.coords[prev[k]] * act * pb.basis[cur[l]]);
        }
    return m;
}

inline std::size_t piece_total(const std::vector<std::size_t>& tops, const PieceBases& pb)
{
    std::size_t s = 0;
    for (auto j : tops) s += pb.basis[j].cols();
    return s;
}

} // namespace detail

/// dim Ext^i(M, N) for i = 0..max_i, from the resolution of M.
inline std::vector<std::size_t> ext_dims(Resolution& r, const ModuleRep& n, std::size_t max_i)
{
    require_same_acting(r.target(), n, "ext");
    auto pb = detail::piece_bases(n);
    r.extend(max_i + 1);
    std::vector<std::size_t> rk(max_i + 2, 0); // rk[i] = rank of Hom(P_{i-1},N) -> Hom(P_i,N)
    for (std::size_t i = 1; i <= max_i + 1; ++i) rk[i] = rank(detail::induced_map(r, i, n, pb, true));
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i <= max_i; ++i)
        out.push_back(detail::piece_total(r.term(i).tops, pb) - rk[i + 1] - rk[i]);
    return out;
}

inline std::size_t ext(const ModuleRep& m, const ModuleRep& n, std::size_t i)
{
    Resolution r(m);
    return ext_dims(r, n, i)[i];
}

/// dim Tor_i(X, N) for i = 0..max_i, X a right module, from the resolution of the left module N.
inline std::vector<std::size_t> tor_dims(const ModuleRep& x, Resolution& r, std::size_t max_i)
{
    const auto& n = r.target();
    if (!same_algebra(x.acting(), opposite(n.acting())) || x.side() == n.side())
        throw InputError("tor: need a right module and a left module over the same algebra");
    auto pb = detail::piece_bases(x);
    r.extend(max_i + 1);
    std::vector<std::size_t> rk(max_i + 2, 0);
    for (std::size_t i = 1; i <= max_i + 1; ++i) rk[i] = rank(detail::induced_map(r, i, x, pb, false));
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i <= max_i; ++i)
        out.push_back(detail::piece_total(r.term(i).tops, pb) - rk[i + 1] - rk[i]);
    return out;
}

inline std::size_t tor(const ModuleRep& x, const ModuleRep& n, std::size_t i)
{
    Resolution r(n);
    return tor_dims(x, r, i)[i];
}

struct DimOptions {
    std::size_t cap = 16;
    bool minimal = true;
    /// Certify infinity when a non-projective syzygy is a summand of a sum of copies of a later one.
    bool periodicity = false;
};

struct PdimResult {
    DimValue value;
    /// Syzygy indices (j, k) of the periodicity certificate, when infinity was certified.
    std::optional<std::pair<std::size_t, std::size_t>> period;
};

/// Smallest n < cap with Omega_n projective.
inline PdimResult pdim_detail(Resolution& r, const DimOptions& opt = {})
{
    std::vector<std::size_t> nonproj;
    for (std::size_t n = 0; n < opt.cap; ++n) {
        const ModuleRep& om = r.syzygy(n);
        if (om.dim() == 0 || is_projective(om)) return {DimValue::exactly(n), std::nullopt};
        if (opt.periodicity)
            for (auto j : nonproj)
                if (in_add(r.syzygy(j), om))
                    return {DimValue::infinite(), std::make_pair(j, n)};
        nonproj.push_back(n);
    }
    return {DimValue::at_least(opt.cap), std::nullopt};
}

inline DimValue pdim(const ModuleRep& m, const DimOptions& opt = {})
{
    Resolution r(m, opt.minimal);
    return pdim_detail(r, opt).value;
}

inline DimValue idim(const ModuleRep& m, const DimOptions& opt = {}) { return pdim(dual(m), opt); }

/// Injective dimension through cosyzygies: the n-th cokernel of approximations into D(regular)
/// is injective exactly when idim <= n.
inline DimValue idim_by_coresolution(const ModuleRep& m, std::size_t cap)
{
    auto ch = approximation_chain(m, dual_regular_like(m), cap, true, false);
    switch (ch.outcome) {
    case ApproxChain::Outcome::closed: return DimValue::exactly(ch.length);
    case ApproxChain::Outcome::capped: return DimValue::at_least(cap);
    case ApproxChain::Outcome::failed:
    case ApproxChain::Outcome::periodic: break;
    }
    throw AxiomError("coresolution: map into an injective cogenerator is not injective");
}

/// Ext^i(M, M) = 0 for i > 0: certified when pdim is finite, otherwise checked up to the cap.
inline Verdict is_self_orthogonal(const ModuleRep& m, const DimOptions& opt = {})
{
    Resolution r(m, opt.minimal);
    auto pd = pdim_detail(r, opt).value;
    std::size_t top = pd.is_finite() ? pd.value : opt.cap;
    if (top == 0) return {true, true, 0};
    auto e = ext_dims(r, m, top);
    for (std::size_t i = 1; i <= top; ++i)
        if (e[i] != 0) return {false, true, i};
    return {true, pd.is_finite(), 0};
}

} // namespace mtc
