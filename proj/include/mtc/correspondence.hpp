#pragma once

#include <string>
#include <vector>

#include "domdim.hpp"

namespace mtc {

/// Length of the shortest add-M coresolution of the regular module (generator kind) or, through
/// duality, of the dual regular module (cogenerator kind).
struct QuasiDegree {
    enum class Kind { generator, cogenerator };
    enum class Status { exact, none, capped };

    Kind kind = Kind::generator;
    Status status = Status::capped;
    std::size_t value = 0;
    ApproxChain witness;
    bool witness_verified = false;

    bool exact() const { return status == Status::exact; }

    std::string str() const
    {
        switch (status) {
        case Status::exact: return std::to_string(value);
        case Status::none: return "none";
        case Status::capped: return ">= " + std::to_string(value);
        }
        return {};
    }
};

inline QuasiDegree quasi_generator_degree(const ModuleRep& m, std::size_t cap)
{
    if (m.dim() == 0) throw InputError("quasi_generator_degree of the zero module");
    QuasiDegree d;
    d.witness = approximation_chain(regular_like(m), m, cap);
    switch (d.witness.outcome) {
    case ApproxChain::Outcome::closed:
        d.status = QuasiDegree::Status::exact;
        d.value = d.witness.length;
        break;
    case ApproxChain::Outcome::failed:
    case ApproxChain::Outcome::periodic: d.status = QuasiDegree::Status::none; break;
    case ApproxChain::Outcome::capped:
        d.status = QuasiDegree::Status::capped;
        d.value = cap;
        break;
    }
    d.witness_verified = verify_chain(d.witness, m) && (!d.exact() || in_add(d.witness.last, m));
    if (!d.witness_verified) throw AxiomError("quasi-generator witness failed verification");
    return d;
}

inline QuasiDegree quasi_cogenerator_degree(const ModuleRep& m, std::size_t cap)
{
    auto d = quasi_generator_degree(dual(m), cap);
    d.kind = QuasiDegree::Kind::cogenerator;
    return d;
}

/// An algebra with a module over it.
struct AlgebraModule {
    AlgebraPtr algebra;
    ModuleRep module;
};

/// (B, M) -> (End_B(M), M), M a left module over its endomorphism algebra.
inline AlgebraModule phi(const ModuleRep& m)
{
    auto e = end_algebra(m);
    return {e.algebra, std::move(e.module)};
}

/// (A, M) -> (End_A(M)^op, M), M a right module over End_A(M)^op.
inline AlgebraModule psi(const ModuleRep& m)
{
    auto e = end_algebra(m);
    ModuleRep right(e.algebra, Side::right, m.dim(), e.module.actions(), true, e.module.endo_idempotents());
    return {opposite(e.algebra), std::move(right)};
}

/// One named check inside a verification report.
struct Check {
    std::string name;
    std::string value;
    bool passed = false;
    bool certified = true;
};

enum class Status { confirmed, failed, uncertified };

inline const char* to_string(Status s)
{
    switch (s) {
    case Status::confirmed: return "confirmed";
    case Status::failed: return "failed";
    case Status::uncertified: return "uncertified";
    }
    return "";
}

struct VerifyReport {
    std::string theorem;
    std::vector<Check> checks;
    std::size_t end_dim = 0;
    std::size_t tensor_dim = 0;

    void add(std::string name, std::string value, bool passed, bool certified = true)
    {
        checks.push_back({std::move(name), std::move(value), passed, certified});
    }

    /// failed when some certified check fails, uncertified when some check could not be decided.
    Status status() const
    {
        bool unc = false;
        for (auto& c : checks) {
            if (c.certified && !c.passed) return Status::failed;
            if (!c.certified) unc = true;
        }
        return unc ? Status::uncertified : Status::confirmed;
    }
};

namespace detail {

inline void check_degree(VerifyReport& r, const std::string& name, const QuasiDegree& d, std::size_t expected)
{
    r.add(name, d.str(), d.exact() && d.value == expected, d.status != QuasiDegree::Status::capped);
}

inline void check_dim(VerifyReport& r, const std::string& name, const DimValue& v, std::size_t expected)
{
    r.add(name, v.str(), v.is_finite() && v.value == expected, v.certified());
}

/// Tor_i(DM, M) = 0 for 0 < i <= bound over M's algebra.
inline void check_tor_vanishing(VerifyReport& r, const ModuleRep& m, std::optional<std::size_t> bound, std::size_t cap)
{
    std::size_t top = bound ? *bound : cap;
    bool ok = true;
    std::string vals;
    if (top) {
        Resolution res(m);
        auto t = tor_dims(dual(m), res, top);
        for (std::size_t i = 1; i <= top; ++i) {
            vals += (i > 1 ? "," : "") + std::to_string(t[i]);
            if (t[i]) ok = false;
        }
    }
    r.add("tor_vanishing(DM,M)", "[" + vals + "]", ok, !ok || bound.has_value());
}

/// Lambda-side conditions on (A, M): M-domdim A >= 2, Tor vanishing, both double centralizers.
inline void check_lambda_common(VerifyReport& r, const ModuleRep& over_b, const AlgebraModule& img,
                                std::optional<std::size_t> tor_bound, std::size_t cap)
{
    const auto& ma = img.module;
    r.end_dim = img.algebra->dim();
    auto dd = greedy_domdim(ma, regular_like(ma), cap).value;
    r.add("M-domdim(A) >= 2", dd.str(), dd.known_at_least(2), dd.certified() || dd.value >= 2);
    check_tor_vanishing(r, ma, tor_bound, cap);
    r.tensor_dim = tensor_over(dual(ma), ma).dim;
    auto dcb = double_centralizer(over_b);
    r.add("double_centralizer(B)", dcb.holds ? "true" : "false", dcb.holds);
    auto dca = double_centralizer(ma);
    r.add("double_centralizer(A)", dca.holds ? "true" : "false", dca.holds);
}

} // namespace detail

/// Round trip for an n-quasi-generator M over B: the Phi-image (A, M) has pdim_A M = n,
/// M-domdim A >= 2 and Tor_{>0}(DM, M) = 0; Psi brings back an algebra of the same dimension over
/// which M is again an n-quasi-generator.
inline VerifyReport verify_thm33(const ModuleRep& m, std::size_t n, std::size_t cap)
{
    VerifyReport r;
    r.theorem = "quasi-generator";
    auto qd = quasi_generator_degree(m, cap);
    detail::check_degree(r, "quasi_generator_degree(B,M)", qd, n);
    if (r.status() != Status::confirmed) return r;
    auto img = phi(m);
    auto pd = pdim(img.module, {cap});
    detail::check_dim(r, "pdim_A(M)", pd, n);
    detail::check_lambda_common(r, m, img, pd.is_finite() ? std::optional(pd.value) : std::nullopt, cap);
    auto back = psi(img.module);
    r.add("dim End_A(M)^op = dim B", std::to_string(back.algebra->dim()), back.algebra->dim() == m.acting()->dim());
    detail::check_degree(r, "quasi_generator_degree(Psi)", quasi_generator_degree(back.module, cap), n);
    return r;
}

/// Dual round trip for an m-quasi-cogenerator: idim over the Phi-image equals m.
inline VerifyReport verify_thm34(const ModuleRep& m, std::size_t deg, std::size_t cap)
{
    VerifyReport r;
    r.theorem = "quasi-cogenerator";
    auto qd = quasi_cogenerator_degree(m, cap);
    detail::check_degree(r, "quasi_cogenerator_degree(B,M)", qd, deg);
    if (r.status() != Status::confirmed) return r;
    auto img = phi(m);
    auto id = idim(img.module, {cap});
    detail::check_dim(r, "idim_A(M)", id, deg);
    detail::check_dim(r, "idim_A(M) by coresolution", idim_by_coresolution(img.module, cap), deg);
    // Tor_i(DM, M) vanishes above the flat dimension of DM, which is idim M
    detail::check_lambda_common(r, m, img, id.is_finite() ? std::optional(id.value) : std::nullopt, cap);
    auto back = psi(img.module);
    r.add("dim End_A(M)^op = dim B", std::to_string(back.algebra->dim()), back.algebra->dim() == m.acting()->dim());
    detail::check_degree(r, "quasi_cogenerator_degree(Psi)", quasi_cogenerator_degree(back.module, cap), deg);
    return r;
}

/// Both at once: (n, m) quasi-generator/cogenerator degrees become (pdim, idim) over the Phi-image.
inline VerifyReport verify_thm35(const ModuleRep& mod, std::size_t n, std::size_t m, std::size_t cap)
{
    VerifyReport r;
    r.theorem = "quasi-generator-cogenerator";
    detail::check_degree(r, "quasi_generator_degree(B,M)", quasi_generator_degree(mod, cap), n);
    detail::check_degree(r, "quasi_cogenerator_degree(B,M)", quasi_cogenerator_degree(mod, cap), m);
    if (r.status() != Status::confirmed) return r;
    auto img = phi(mod);
    auto pd = pdim(img.module, {cap});
    auto id = idim(img.module, {cap});
    detail::check_dim(r, "pdim_A(M)", pd, n);
    detail::check_dim(r, "idim_A(M)", id, m);
    std::optional<std::size_t> bound;
    if (pd.is_finite()) bound = pd.value;
    if (id.is_finite()) bound = bound ? std::min(*bound, id.value) : id.value;
    detail::check_lambda_common(r, mod, img, bound, cap);
    auto back = psi(img.module);
    r.add("dim End_A(M)^op = dim B", std::to_string(back.algebra->dim()), back.algebra->dim() == mod.acting()->dim());
    detail::check_degree(r, "quasi_generator_degree(Psi)", quasi_generator_degree(back.module, cap), n);
    detail::check_degree(r, "quasi_cogenerator_degree(Psi)", quasi_cogenerator_degree(back.module, cap), m);
    return r;
}

struct MoritaCheck {
    bool generator = false;
    bool projective_over_end = false;
    bool double_centralizer = false;
    /// generator exactly when projective over End and double centralizer
    bool consistent = false;
};

inline MoritaCheck classical_morita_check(const ModuleRep& m)
{
    MoritaCheck c;
    c.generator = in_add(regular_like(m), m);
    auto e = end_algebra(m);
    c.projective_over_end = is_projective(e.module);
    c.double_centralizer = double_centralizer(m).holds;
    c.consistent = c.generator == (c.projective_over_end && c.double_centralizer);
    return c;
}

/// Membership of (B, M) and of its Phi-image (A, M) in the four classes of the correspondences.
struct PairVerdict {
    Verdict in_gamma;      // M is an n-quasi-generator over B
    Verdict in_var_gamma;  // M is an m-quasi-cogenerator over B
    Verdict in_lambda;     // pdim_A M = n, M-domdim A >= 2, Tor_{>0}(DM, M) = 0
    Verdict in_var_lambda; // idim_A M = m, M-domdim A >= 2, Tor_{>0}(DM, M) = 0
    bool double_centralizer = false;
    std::size_t end_dim = 0;
};

namespace detail {

inline Verdict as_verdict(const VerifyReport& r)
{
    switch (r.status()) {
    case Status::confirmed: return {true, true, 0};
    case Status::failed: return {false, true, 0};
    case Status::uncertified: break;
    }
    return {false, false, 0};
}

} // namespace detail

inline PairVerdict pair_verdict(const ModuleRep& m, std::size_t n, std::size_t co, std::size_t cap)
{
    PairVerdict v;
    VerifyReport g, vg, l, vl;
    detail::check_degree(g, "quasi_generator_degree", quasi_generator_degree(m, cap), n);
    detail::check_degree(vg, "quasi_cogenerator_degree", quasi_cogenerator_degree(m, cap), co);
    v.in_gamma = detail::as_verdict(g);
    v.in_var_gamma = detail::as_verdict(vg);
    auto img = phi(m);
    v.end_dim = img.algebra->dim();
    auto pd = pdim(img.module, {cap});
    auto id = idim(img.module, {cap});
    detail::check_dim(l, "pdim_A(M)", pd, n);
    detail::check_dim(vl, "idim_A(M)", id, co);
    auto dd = greedy_domdim(img.module, regular_like(img.module), cap).value;
    for (auto* r : {&l, &vl}) r->add("M-domdim(A) >= 2", dd.str(), dd.known_at_least(2), dd.certified() || dd.value >= 2);
    detail::check_tor_vanishing(l, img.module, pd.is_finite() ? std::optional(pd.value) : std::nullopt, cap);
    detail::check_tor_vanishing(vl, img.module, id.is_finite() ? std::optional(id.value) : std::nullopt, cap);
    v.in_lambda = detail::as_verdict(l);
    v.in_var_lambda = detail::as_verdict(vl);
    v.double_centralizer = double_centralizer(m).holds;
    return v;
}

} // namespace mtc
