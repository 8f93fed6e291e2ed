#pragma once

#include <optional>
#include <string>
#include <vector>

#include "approx.hpp"
#include "homology.hpp"

namespace mtc {

enum class DomdimMethod { greedy, criterion, both };

inline const char* to_string(DomdimMethod m)
{
    switch (m) {
    case DomdimMethod::greedy: return "greedy";
    case DomdimMethod::criterion: return "criterion";
    case DomdimMethod::both: return "both";
    }
    return "";
}

struct DomdimResult {
    DimValue value;
    DomdimMethod method = DomdimMethod::greedy;
    std::optional<DimValue> greedy;
    std::optional<DimValue> criterion;
    /// Criterion precondition: the evaluation map alpha is bijective.
    std::optional<bool> alpha_bijective;
    std::optional<ApproxChain> chain;
    /// Tor_i^B(Hom_A(M, Q), DQ) and Tor_i^B(Hom_A(DQ, DM), DQ) for i = 1, 2, ...
    std::vector<std::size_t> tor_hom;
    std::vector<std::size_t> tor_dual;
};

/// Q-domdim M from iterated left add-Q approximations of M.
inline DomdimResult greedy_domdim(const ModuleRep& q, const ModuleRep& m, std::size_t cap, bool reduced = true)
{
    DomdimResult r;
    r.method = DomdimMethod::greedy;
    auto ch = approximation_chain(m, q, cap, reduced);
    switch (ch.outcome) {
    case ApproxChain::Outcome::closed:
    case ApproxChain::Outcome::periodic: r.value = DimValue::infinite(); break;
    case ApproxChain::Outcome::failed: r.value = DimValue::exactly(ch.length); break;
    case ApproxChain::Outcome::capped: r.value = DimValue::at_least(cap); break;
    }
    r.greedy = r.value;
    r.chain = std::move(ch);
    return r;
}

/// Q with its endomorphism algebra E = End_A(Q) (product f o g) and the B = E^op-modules that
/// appear in the Tor criterion.
struct EndContext {
    EndAlgebra end;
    AlgebraPtr b;       // E^op
    ModuleRep dq_over_b; // DQ, left B-module through transposes
};

inline EndContext end_context(const ModuleRep& q)
{
    EndContext c{end_algebra(q), nullptr, {}};
    c.b = opposite(c.end.algebra);
    std::vector<FpMatrix> act;
    for (auto& f : c.end.basis) act.push_back(f.transpose());
    std::vector<FpMatrix> endo;
    for (auto& e : q.acting()->idempotents()) {
        auto a = q.act(e);
        if (!a.is_zero()) endo.push_back(a.transpose());
    }
    c.dq_over_b = ModuleRep(c.b, Side::left, q.dim(), std::move(act), true, std::move(endo));
    return c;
}

/// Hom_A(M, Q) with E acting by post-composition, recorded as a right B-module.
inline std::pair<ModuleRep, HomSpace> hom_into_q(const ModuleRep& m, const ModuleRep& q, const EndContext& c)
{
    auto h = hom(m, q);
    const Scalar p = q.modulus();
    const std::size_t s = h.dim();
    std::vector<FpMatrix> act;
    if (s) {
        FpMatrix flat = h.flattened();
        std::vector<FpMatrix> rhs;
        for (auto& f : c.end.basis)
            for (auto& g : h.basis) rhs.push_back(FpMatrix::column((f * g).flatten(), p));
        auto x = solve(flat, hstack(rhs, flat.rows(), p));
        if (!x) throw AxiomError("Hom(M, Q) is not closed under post-composition");
        for (std::size_t i = 0; i < c.end.basis.size(); ++i) act.push_back(x->block(0, i * s, s, s));
    } else {
        act.assign(c.end.basis.size(), FpMatrix(0, 0, p));
    }
    return {ModuleRep(c.end.algebra, Side::right, s, std::move(act)), std::move(h)};
}

/// Hom_A(DQ, DM) with phi . f = phi o f^T, a right B-module.
inline std::pair<ModuleRep, HomSpace> hom_between_duals(const ModuleRep& m, const ModuleRep& q, const EndContext& c)
{
    auto h = hom(dual(q), dual(m));
    const Scalar p = q.modulus();
    const std::size_t s = h.dim();
    std::vector<FpMatrix> act;
    if (s) {
        FpMatrix flat = h.flattened();
        std::vector<FpMatrix> rhs;
        for (auto& f : c.end.basis)
            for (auto& g : h.basis) rhs.push_back(FpMatrix::column((g * f.transpose()).flatten(), p));
        auto x = solve(flat, hstack(rhs, flat.rows(), p));
        if (!x) throw AxiomError("Hom(DQ, DM) is not closed under End(Q)");
        for (std::size_t i = 0; i < c.end.basis.size(); ++i) act.push_back(x->block(0, i * s, s, s));
    } else {
        act.assign(c.end.basis.size(), FpMatrix(0, 0, p));
    }
    return {ModuleRep(c.end.algebra, Side::right, s, std::move(act)), std::move(h)};
}

struct AlphaMap {
    FpMatrix map; // dim Hom_E(Hom_A(M, Q), Q) x dim M
    std::size_t target_dim = 0;
    bool injective = false;
    bool bijective = false;
};

/// alpha_M : M -> Hom_E(Hom_A(M, Q), Q), m -> (f -> f(m)), E = End_A(Q) acting on the left.
inline AlphaMap alpha_map(const ModuleRep& m, const ModuleRep& q, const EndContext& c)
{
    require_same_acting(m, q, "alpha_map");
    const Scalar p = q.modulus();
    auto h = hom(m, q);
    const std::size_t s = h.dim();
    AlphaMap a;
    // Hom_A(M, Q) as a left E-module, f . g = f o g
    std::vector<FpMatrix> act;
    if (s) {
        FpMatrix flat = h.flattened();
        std::vector<FpMatrix> rhs;
        for (auto& f : c.end.basis)
            for (auto& g : h.basis) rhs.push_back(FpMatrix::column((f * g).flatten(), p));
        auto x = solve(flat, hstack(rhs, flat.rows(), p));
        if (!x) throw AxiomError("Hom(M, Q) is not closed under post-composition");
        for (std::size_t i = 0; i < c.end.basis.size(); ++i) act.push_back(x->block(0, i * s, s, s));
    } else {
        act.assign(c.end.basis.size(), FpMatrix(0, 0, p));
    }
    ModuleRep hm(c.end.algebra, Side::left, s, std::move(act));
    auto target = hom(hm, c.end.module);
    a.target_dim = target.dim();
    a.map = FpMatrix(a.target_dim, m.dim(), p);
    if (a.target_dim) {
        FpMatrix flat = target.flattened();
        for (std::size_t col = 0; col < m.dim(); ++col) {
            FpMatrix ev(q.dim(), s, p);
            for (std::size_t t = 0; t < s; ++t)
                for (std::size_t r = 0; r < q.dim(); ++r) ev(r, t) = h.basis[t](r, col);
            auto x = solve(flat, FpMatrix::column(ev.flatten(), p));
            if (!x) throw AxiomError("alpha: evaluation is not E-linear");
            for (std::size_t r = 0; r < a.target_dim; ++r) a.map(r, col) = (*x)(r, 0);
        }
    }
    std::size_t rk = rank(a.map);
    a.injective = rk == m.dim();
    a.bijective = a.injective && a.target_dim == m.dim();
    return a;
}

inline AlphaMap alpha_map(const ModuleRep& m, const ModuleRep& q) { return alpha_map(m, q, end_context(q)); }

struct ChiMap {
    std::size_t tensor_dim = 0;
    bool bijective = false;
};

/// chi : Hom_A(DQ, DM) (x)_B DQ -> DM, phi (x) x -> phi(x).
inline ChiMap chi_map(const ModuleRep& m, const ModuleRep& q, const EndContext& c)
{
    const Scalar p = q.modulus();
    auto [x2, h] = hom_between_duals(m, q, c);
    auto t = tensor_over(x2, c.dq_over_b);
    const std::size_t dq = q.dim();
    FpMatrix ev(m.dim(), h.dim() * dq, p);
    for (std::size_t s = 0; s < h.dim(); ++s)
        for (std::size_t k = 0; k < dq; ++k)
            for (std::size_t r = 0; r < m.dim(); ++r) ev(r, s * dq + k) = h.basis[s](r, k);
    FpMatrix chi = ev * t.section;
    if (!(chi * t.projection == ev)) throw AxiomError("chi: evaluation does not factor through the tensor product");
    return {t.dim, t.dim == m.dim() && rank(chi) == m.dim()};
}

/// Q-domdim M by Tor vanishing over B = End_A(Q)^op, valid from 2 upward.
inline DomdimResult tor_criterion_domdim(const ModuleRep& q, const ModuleRep& m, std::size_t cap)
{
    require_same_acting(m, q, "tor_criterion_domdim");
    DomdimResult r;
    r.method = DomdimMethod::criterion;
    auto c = end_context(q);
    auto a = alpha_map(m, q, c);
    auto chi = chi_map(m, q, c);
    if (a.bijective != chi.bijective) throw AxiomError("alpha and chi disagree on bijectivity");
    r.alpha_bijective = a.bijective;
    if (!a.bijective) return r;
    auto x1 = hom_into_q(m, q, c).first;
    auto x2 = hom_between_duals(m, q, c).first;
    Resolution res(c.dq_over_b);
    const std::size_t top = cap >= 2 ? cap - 2 : 0;
    auto pd = pdim_detail(res, {cap, true, false}).value;
    std::size_t check = pd.is_finite() ? std::min(pd.value, top) : top;
    std::vector<std::size_t> t1, t2;
    if (check) {
        t1 = tor_dims(x1, res, check);
        t2 = tor_dims(x2, res, check);
    }
    for (std::size_t i = 1; i <= check; ++i) {
        r.tor_hom.push_back(t1[i]);
        r.tor_dual.push_back(t2[i]);
        if (t1[i] || t2[i]) {
            r.value = DimValue::exactly(i + 1);
            r.criterion = r.value;
            return r;
        }
    }
    // vanishing beyond pdim_B DQ is automatic
    r.value = pd.is_finite() && pd.value <= top ? DimValue::infinite() : DimValue::at_least(cap);
    r.criterion = r.value;
    return r;
}

namespace detail {

/// Whether two values of the same dimension can both be correct.
inline bool compatible(const DimValue& a, const DimValue& b)
{
    using K = DimValue::Kind;
    if (a.kind == K::at_least && b.kind == K::at_least) return true;
    if (a.kind == K::at_least) return b.kind == K::infinite || b.value >= a.value;
    if (b.kind == K::at_least) return a.kind == K::infinite || a.value >= b.value;
    return a == b;
}

inline DimValue sharper(const DimValue& a, const DimValue& b)
{
    if (a.certified()) return a;
    if (b.certified()) return b;
    return a.value >= b.value ? a : b;
}

} // namespace detail

/// Q-domdim M by the chosen method; with `both`, disagreement between the methods throws.
inline DomdimResult domdim(const ModuleRep& q, const ModuleRep& m, std::size_t cap,
                           DomdimMethod method = DomdimMethod::greedy)
{
    if (q.dim() == 0) throw InputError("domdim: Q is the zero module");
    if (method == DomdimMethod::greedy) return greedy_domdim(q, m, cap);
    auto crit = tor_criterion_domdim(q, m, cap);
    if (method == DomdimMethod::criterion) {
        if (!*crit.alpha_bijective) {
            // below 2 the criterion defers to the greedy chain
            auto g = greedy_domdim(q, m, cap);
            crit.greedy = g.value;
            crit.value = g.value;
            crit.chain = std::move(g.chain);
        }
        return crit;
    }
    auto g = greedy_domdim(q, m, cap);
    DomdimResult r = crit;
    r.method = DomdimMethod::both;
    r.greedy = g.value;
    r.chain = std::move(g.chain);
    if (g.value.known_at_least(2) != *crit.alpha_bijective && g.value.certified())
        throw AxiomError("domdim: alpha bijectivity disagrees with greedy value " + g.value.str());
    if (!*crit.alpha_bijective) {
        r.value = g.value;
        return r;
    }
    if (!detail::compatible(g.value, *crit.criterion))
        throw AxiomError("domdim: greedy " + g.value.str() + " disagrees with criterion " + crit.criterion->str());
    r.value = detail::sharper(g.value, *crit.criterion);
    return r;
}

/// Q-codomdim M = DQ-domdim DM over the opposite side.
inline DomdimResult codomdim(const ModuleRep& q, const ModuleRep& m, std::size_t cap,
                             DomdimMethod method = DomdimMethod::greedy)
{
    return domdim(dual(q), dual(m), cap, method);
}

struct DoubleCentralizer {
    std::size_t algebra_dim = 0;
    std::size_t end_dim = 0;       // dim End_A(Q)
    std::size_t bicommutant_dim = 0; // dim End_{End_A(Q)}(Q)
    bool faithful = false;
    bool holds = false;
};

/// The canonical map from the acting algebra into End_{End_A(Q)}(Q), a -> (q -> a q), is bijective.
inline DoubleCentralizer double_centralizer(const ModuleRep& q)
{
    DoubleCentralizer d;
    const auto& a = *q.acting();
    d.algebra_dim = a.dim();
    auto e = end_algebra(q);
    d.end_dim = e.algebra->dim();
    auto bic = hom(e.module, e.module);
    d.bicommutant_dim = bic.dim();
    std::vector<FpVector> cols;
    for (auto& g : q.actions()) cols.push_back(g.flatten());
    d.faithful = rank(FpMatrix::from_columns(cols, q.dim() * q.dim(), q.modulus())) == a.dim();
    for (std::size_t i = 0; i < a.dim(); ++i)
        if (!is_homomorphism(e.module, e.module, q.action(i)))
            throw AxiomError("double centralizer: algebra action does not commute with End(Q)");
    d.holds = d.faithful && d.bicommutant_dim == a.dim();
    return d;
}

} // namespace mtc
