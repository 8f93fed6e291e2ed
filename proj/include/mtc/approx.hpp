#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "dimvalue.hpp"
#include "hom.hpp"
#include "radical.hpp"

namespace mtc {

/// Left add-Q approximation u : C -> Q', Q' a direct sum of summands of Q.
struct ApproxStep {
    ModuleRep source;
    ModuleRep target;                 // direct sum of summands of Q
    FpMatrix map;                     // dim target x dim C
    std::vector<FpMatrix> components; // each component composed into Q, dim Q x dim C
    std::size_t copies = 0;
    bool injective = false;
    QuotientModule cokernel;
};

/// Data about Q reused along a chain: End(Q), its radical, and the summands cut out by the
/// known idempotent endomorphisms of Q.
struct ApproxTarget {
    struct Summand {
        ModuleRep module;
        FpMatrix idempotent;
        FpMatrix inclusion; // dim Q x dim summand
        FpMatrix retraction;
    };

    ModuleRep q;
    std::vector<FpMatrix> end_q;
    std::vector<FpMatrix> rad_q;
    std::vector<Summand> summands;
};

inline ApproxTarget approx_target(const ModuleRep& q)
{
    const Scalar p = q.modulus();
    ApproxTarget t;
    t.q = q;
    auto e = end_algebra(q);
    t.end_q = e.basis;
    FpMatrix j = radical(e.algebra);
    for (std::size_t c = 0; c < j.cols(); ++c) {
        FpMatrix r(q.dim(), q.dim(), p);
        for (std::size_t i = 0; i < e.basis.size(); ++i)
            if (j(i, c)) r.add_scaled(e.basis[i], j(i, c));
        t.rad_q.push_back(std::move(r));
    }
    std::vector<FpMatrix> idem = q.endo_idempotents();
    if (idem.empty()) idem.push_back(FpMatrix::identity(q.dim(), p));
    for (auto& eps : idem) {
        FpMatrix inc = column_space(eps);
        if (inc.cols() == 0) continue;
        t.summands.push_back({submodule(q, inc), eps, inc, left_inverse(inc)});
    }
    return t;
}

/// Maps C -> Q_j into summands of Q whose End(Q)-multiples span Hom(C, Q). Reduced: one map per
/// basis vector of Hom(C, Q) / rad End(Q) Hom(C, Q); otherwise every basis map into all of Q.
inline std::vector<std::pair<std::size_t, FpMatrix>> approximation_maps(const HomSpace& h, const ApproxTarget& t,
                                                                        bool reduced)
{
    std::vector<std::pair<std::size_t, FpMatrix>> keep;
    if (!reduced) {
        for (auto& f : h.basis) keep.push_back({SIZE_MAX, f});
        return keep;
    }
    const Scalar p = h.source.modulus();
    EchelonBasis span(h.target.dim() * h.source.dim(), p);
    for (auto& r : t.rad_q)
        for (auto& f : h.basis) span.add((r * f).flatten());
    for (std::size_t j = 0; j < t.summands.size() && span.rank() < h.dim(); ++j)
        for (auto& f : h.basis) {
            FpMatrix g = t.summands[j].idempotent * f;
            if (span.add(g.flatten())) keep.push_back({j, std::move(g)});
            if (span.rank() == h.dim()) break;
        }
    if (span.rank() != h.dim()) throw AxiomError("approximation: summand maps do not span Hom(C, Q) modulo the radical");
    return keep;
}

inline ApproxStep approximate(const ModuleRep& c, const ApproxTarget& t, bool reduced)
{
    const Scalar p = c.modulus();
    const auto& q = t.q;
    auto h = hom(c, q);
    auto maps = approximation_maps(h, t, reduced);
    ApproxStep s;
    s.source = c;
    s.copies = maps.size();
    std::vector<ModuleRep> parts;
    std::vector<FpMatrix> rows;
    for (auto& [j, f] : maps) {
        parts.push_back(j == SIZE_MAX ? q : t.summands[j].module);
        rows.push_back(j == SIZE_MAX ? f : t.summands[j].retraction * f);
        s.components.push_back(f);
    }
    s.target = parts.empty() ? zero_module(q.acting(), q.side()) : direct_sum(parts);
    s.map = rows.empty() ? FpMatrix(0, c.dim(), p) : vstack(rows, c.dim(), p);
    // approximation property: v -> v o u from Hom(target, Q) onto Hom(C, Q)
    EchelonBasis img(q.dim() * c.dim(), p);
    for (auto& g : t.end_q)
        for (auto& f : s.components) img.add((g * f).flatten());
    if (img.rank() != h.dim()) throw AxiomError("approximation property fails");
    s.injective = rank(s.map) == c.dim();
    s.cokernel = quotient(s.target, column_space(s.map));
    return s;
}

/// Iterated left add-Q approximations starting from M: C_0 = M, C_{k+1} = coker(C_k -> Q_k).
struct ApproxChain {
    enum class Outcome { closed, failed, capped, periodic };

    std::vector<ApproxStep> steps;
    Outcome outcome = Outcome::capped;
    /// closed: C_length lies in add Q; failed: the map out of C_length is not injective;
    /// periodic: add(C_length + Q) = add(C_j + Q) for the earlier index j in `period`, so the
    /// chain repeats its pattern of summands and neither closes nor fails.
    std::size_t length = 0;
    ModuleRep last;
    std::optional<std::pair<std::size_t, std::size_t>> period;
};

inline const char* to_string(ApproxChain::Outcome o)
{
    switch (o) {
    case ApproxChain::Outcome::closed: return "closed";
    case ApproxChain::Outcome::failed: return "failed";
    case ApproxChain::Outcome::capped: return "capped";
    case ApproxChain::Outcome::periodic: return "periodic";
    }
    return "";
}

inline ApproxChain approximation_chain(const ModuleRep& m, const ModuleRep& q, std::size_t cap, bool reduced = true,
                                       bool detect_period = true)
{
    require_same_acting(m, q, "approximation_chain");
    if (q.dim() == 0) throw InputError("approximation by the zero module");
    auto t = approx_target(q);
    ApproxChain ch;
    ModuleRep c = m;
    for (std::size_t k = 0;; ++k) {
        ch.length = k;
        ch.last = c;
        if (in_add(c, q)) {
            ch.outcome = ApproxChain::Outcome::closed;
            return ch;
        }
        if (detect_period) {
            ModuleRep with_q = direct_sum({c, q});
            for (std::size_t j = 0; j < k; ++j) {
                const auto& prev = ch.steps[j].source;
                if (in_add(prev, with_q) && in_add(c, direct_sum({prev, q}))) {
                    ch.outcome = ApproxChain::Outcome::periodic;
                    ch.period = std::make_pair(j, k);
                    return ch;
                }
            }
        }
        if (k == cap) {
            ch.outcome = ApproxChain::Outcome::capped;
            return ch;
        }
        ch.steps.push_back(approximate(c, t, reduced));
        if (!ch.steps.back().injective) {
            ch.outcome = ApproxChain::Outcome::failed;
            return ch;
        }
        c = ch.steps.back().cokernel.module;
    }
}

/// Checks a chain as a coresolution 0 -> M -> Q_0 -> Q_1 -> ...: exactness, and exactness of
/// Hom(-, Q) applied to it, by rank counts at every joint.
inline bool verify_chain(const ApproxChain& ch, const ModuleRep& q)
{
    const Scalar p = q.modulus();
    for (std::size_t k = 0; k < ch.steps.size(); ++k) {
        const auto& s = ch.steps[k];
        // term maps d_k : Q_k -> Q_{k+1} are u_{k+1} composed with the cokernel projection
        if (k + 1 < ch.steps.size()) {
            const auto& nx = ch.steps[k + 1];
            FpMatrix d = nx.map * s.cokernel.projection;
            if (!(d * s.map).is_zero()) return false;
            if (nx.injective && rank(d) + rank(s.map) != s.map.rows()) return false;
        }
        if (!s.injective && k + 1 != ch.steps.size()) return false;
        if (!in_add(s.target, q) || !is_homomorphism(s.source, s.target, s.map)) return false;
        // Hom(target, Q) -> Hom(C, Q) is onto
        auto h = hom(s.source, q);
        auto ht = hom(s.target, q);
        EchelonBasis img(q.dim() * s.source.dim(), p);
        for (auto& g : ht.basis) img.add((g * s.map).flatten());
        if (img.rank() != h.dim()) return false;
    }
    return true;
}

} // namespace mtc
