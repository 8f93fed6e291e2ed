#pragma once

#include <string>
#include <vector>

#include "catalog.hpp"
#include "correspondence.hpp"

namespace mtc {

struct TiltingResult {
    Verdict verdict;
    DimValue pdim;
    Verdict self_orthogonal;
    QuasiDegree degree;
};

/// n-tilting with n = pdim T: finite pdim, self-orthogonal, and a quasi-generator degree <= n.
inline TiltingResult is_tilting(const ModuleRep& t, std::size_t cap)
{
    TiltingResult r;
    r.pdim = pdim(t, {cap});
    r.self_orthogonal = is_self_orthogonal(t, {cap});
    r.degree = quasi_generator_degree(t, cap);
    const bool pd_ok = r.pdim.is_finite();
    if (r.pdim.is_infinite() || (r.self_orthogonal.certified && !r.self_orthogonal.value)) {
        r.verdict = {false, true, 0};
        return r;
    }
    if (!pd_ok || !r.self_orthogonal.certified) {
        r.verdict = {false, false, 0};
        return r;
    }
    switch (r.degree.status) {
    case QuasiDegree::Status::exact: r.verdict = {r.degree.value <= r.pdim.value, true, r.pdim.value}; break;
    case QuasiDegree::Status::none: r.verdict = {false, true, r.pdim.value}; break;
    case QuasiDegree::Status::capped:
        r.verdict = {false, r.pdim.value < r.degree.value, r.pdim.value};
        break;
    }
    return r;
}

enum class ScanStatus { confirmed, skipped, uncertified, counterexample };

inline const char* to_string(ScanStatus s)
{
    switch (s) {
    case ScanStatus::confirmed: return "confirmed";
    case ScanStatus::skipped: return "skipped";
    case ScanStatus::uncertified: return "uncertified";
    case ScanStatus::counterexample: return "COUNTEREXAMPLE";
    }
    return "";
}

struct ConjectureVerdict {
    std::string instance;
    Verdict self_orthogonal;
    QuasiDegree degree;
    DimValue pdim;
    ScanStatus status = ScanStatus::uncertified;
    std::string reason;
};

/// Every self-orthogonal n-quasi-generator has pdim <= n, checked on one instance.
inline ConjectureVerdict check_conjecture42(const std::string& id, const ModuleRep& m, std::size_t cap)
{
    ConjectureVerdict v;
    v.instance = id;
    v.self_orthogonal = is_self_orthogonal(m, {cap});
    v.degree = quasi_generator_degree(m, cap);
    v.pdim = pdim(m, {cap});
    if (v.self_orthogonal.certified && !v.self_orthogonal.value) {
        v.status = ScanStatus::skipped;
        v.reason = "Ext^" + std::to_string(v.self_orthogonal.witness) + "(M,M) != 0";
    } else if (v.degree.status == QuasiDegree::Status::none) {
        v.status = ScanStatus::skipped;
        v.reason = "not a quasi-generator";
    } else if (!v.self_orthogonal.certified || !v.degree.exact()) {
        v.status = ScanStatus::uncertified;
        v.reason = !v.degree.exact() ? "quasi-generator degree beyond cap" : "self-orthogonality checked only up to cap";
    } else if (v.pdim.is_finite() && v.pdim.value <= v.degree.value) {
        v.status = ScanStatus::confirmed;
        v.reason = "pdim " + v.pdim.str() + " <= " + v.degree.str();
    } else {
        v.status = ScanStatus::counterexample;
        v.reason = "pdim " + v.pdim.str() + " > " + v.degree.str();
    }
    return v;
}

/// check_conjecture42 on every module of every corpus entry; ids read "algebra / module".
inline std::vector<ConjectureVerdict> scan_conjecture42(const std::vector<CorpusEntry>& corpus, std::size_t cap)
{
    std::vector<ConjectureVerdict> out;
    for (auto& e : corpus)
        for (auto& m : e.modules) out.push_back(check_conjecture42(e.name + " / " + m.name, m.module, cap));
    return out;
}

struct WakamatsuProbe {
    Verdict self_orthogonal;
    DimValue pdim;
    DimValue domdim;
    std::optional<TiltingResult> tilting;
    ScanStatus status = ScanStatus::uncertified;
    std::string reason;
};

/// Hypotheses: self-orthogonal, finite pdim, T-domdim A infinite. Conclusion: T is tilting.
inline WakamatsuProbe wakamatsu_probe(const ModuleRep& t, std::size_t cap)
{
    WakamatsuProbe w;
    w.self_orthogonal = is_self_orthogonal(t, {cap});
    w.pdim = pdim(t, {cap});
    w.domdim = greedy_domdim(t, regular_like(t), cap).value;
    bool fails = (w.self_orthogonal.certified && !w.self_orthogonal.value) || w.pdim.is_infinite() ||
                 w.domdim.is_finite();
    if (fails) {
        w.status = ScanStatus::skipped;
        w.reason = "hypotheses not met";
        return w;
    }
    if (!w.self_orthogonal.certified || !w.pdim.is_finite() || !w.domdim.is_infinite()) {
        w.reason = "hypotheses not certified within cap";
        return w;
    }
    w.tilting = is_tilting(t, cap);
    if (!w.tilting->verdict.certified) {
        w.reason = "tilting test not certified";
    } else if (w.tilting->verdict.value) {
        w.status = ScanStatus::confirmed;
        w.reason = "tilting";
    } else {
        w.status = ScanStatus::counterexample;
        w.reason = "hypotheses hold but not tilting";
    }
    return w;
}

struct GorensteinProbe {
    QuasiDegree degree;
    DimValue idim_left;
    DimValue idim_right;
    ScanStatus status = ScanStatus::uncertified;
    std::string reason;
};

/// Compares "DA has a quasi-generator degree" with "A has finite self-injective dimension on
/// both sides".
inline GorensteinProbe gorenstein_probe(const AlgebraPtr& a, std::size_t cap)
{
    GorensteinProbe g;
    auto left = regular(a, Side::left);
    auto right = regular(a, Side::right);
    g.degree = quasi_generator_degree(dual_regular_like(left), cap);
    g.idim_left = idim(left, {cap});
    g.idim_right = idim(right, {cap});
    bool gor_cert = g.idim_left.certified() && g.idim_right.certified();
    bool gorenstein = g.idim_left.is_finite() && g.idim_right.is_finite();
    bool deg_cert = g.degree.status != QuasiDegree::Status::capped;
    if (!deg_cert || !gor_cert) {
        g.reason = "caps bind";
        return g;
    }
    if (g.degree.exact() == gorenstein) {
        g.status = ScanStatus::confirmed;
        g.reason = gorenstein ? "Gorenstein and DA is a quasi-generator" : "neither";
    } else {
        g.status = ScanStatus::counterexample;
        g.reason = "characterization disagrees";
    }
    return g;
}

} // namespace mtc
