#pragma once

#include <chrono>
#include <cstdlib>
#include <map>
#include <optional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "catalog.hpp"
#include "conjectures.hpp"
#include "io.hpp"
#include "radical.hpp"

namespace mtc::cli {

using io::Json;

enum ExitCode : int { ok = 0, negative = 1, uncertified = 2, input_error = 3 };

namespace detail {

inline std::size_t default_cap()
{
    if (const char* env = std::getenv("MTC_CAP")) {
        try {
            long v = std::stol(env);
            if (v > 0) return static_cast<std::size_t>(v);
        } catch (const std::exception&) {
        }
        throw InputError("MTC_CAP: expected a positive integer");
    }
    return 16;
}

inline Json dim_json(const DimValue& v)
{
    Json j;
    j["value"] = v.str();
    j["certified"] = v.certified();
    if (v.is_finite()) j["exact"] = v.value;
    return j;
}

inline Json dims_json(const std::vector<std::size_t>& v)
{
    Json a = Json::array();
    for (auto x : v) a.push_back(x);
    return a;
}

inline Json chain_json(const ApproxChain& ch)
{
    Json j;
    j["outcome"] = to_string(ch.outcome);
    j["length"] = ch.length;
    if (ch.period) j["period"] = {ch.period->first, ch.period->second};
    Json steps = Json::array();
    for (auto& s : ch.steps)
        steps.push_back({{"source_dim", s.source.dim()}, {"copies", s.copies}, {"injective", s.injective},
                         {"cokernel_dim", s.cokernel.module.dim()}});
    j["steps"] = std::move(steps);
    return j;
}

inline Json degree_json(const QuasiDegree& d)
{
    Json j;
    j["kind"] = d.kind == QuasiDegree::Kind::generator ? "generator" : "cogenerator";
    j["value"] = d.str();
    j["certified"] = d.status != QuasiDegree::Status::capped;
    j["witness_verified"] = d.witness_verified;
    j["witness"] = chain_json(d.witness);
    return j;
}

inline int degree_exit(const QuasiDegree& d)
{
    switch (d.status) {
    case QuasiDegree::Status::exact: return ok;
    case QuasiDegree::Status::none: return negative;
    case QuasiDegree::Status::capped: return uncertified;
    }
    return uncertified;
}

inline Json verify_json(const VerifyReport& r)
{
    Json j;
    j["kind"] = r.theorem;
    j["status"] = to_string(r.status());
    j["end_dim"] = r.end_dim;
    j["tensor_dim"] = r.tensor_dim;
    Json checks = Json::array();
    for (auto& c : r.checks)
        checks.push_back({{"name", c.name}, {"value", c.value}, {"passed", c.passed}, {"certified", c.certified}});
    j["checks"] = std::move(checks);
    return j;
}

inline std::vector<std::size_t> parse_list(const std::string& s, const std::string& what)
{
    std::vector<std::size_t> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t pos = 0;
            long v = std::stol(item, &pos);
            if (pos != item.size() || v <= 0) throw std::invalid_argument(item);
            out.push_back(static_cast<std::size_t>(v));
        } catch (const std::exception&) {
            throw InputError(what + ": expected a comma-separated list of positive integers");
        }
    }
    return out;
}

inline void print_summary(std::ostream& out, const Json& j, const std::string& indent = "")
{
    for (auto it = j.begin(); it != j.end(); ++it) {
        const auto& v = it.value();
        if (v.is_object()) {
            out << indent << it.key() << ":\n";
            print_summary(out, v, indent + "  ");
        } else if (v.is_array() && !v.empty() && v.front().is_object()) {
            out << indent << it.key() << ": " << v.size() << " entries\n";
        } else {
            out << indent << it.key() << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
        }
    }
}

} // namespace detail

/// Runs one command line (without the program name). The report goes to --out when given; a
/// summary goes to `out`, diagnostics to `err`.
inline int run(const std::vector<std::string>& args, std::ostream& out = std::cout, std::ostream& err = std::cerr)
{
    CLI::App app{"Homological invariants of finite-dimensional algebras over prime fields", "mtc"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");

    std::string report_path;
    std::size_t cap = 0;
    std::uint64_t seed = 0;
    bool periodicity = false;
    std::vector<std::string> files;
    std::string q_file, method = "greedy", algebra_out, module_out, family = "default", kupisch;
    bool co = false, gen = false, cogen = false, cyclic = false;
    std::size_t degree = 4, thm = 0, family_n = 2, family_t = 2, max_dim = 4, max_summands = 2;
    std::optional<std::size_t> n_opt, m_opt;
    std::int64_t p = 2;
    std::optional<std::int64_t> p_opt;
    std::string conjecture = "42";

    auto common = [&](CLI::App* s) {
        s->add_option("--out", report_path, "write the JSON report to this path");
        s->add_option("--cap", cap, "truncation cap for resolutions and chains (default 16 or MTC_CAP)")
            ->check(CLI::PositiveNumber);
        s->add_option("--seed", seed, "seed recorded in the report");
        s->add_flag("--periodicity", periodicity, "certify infinite dimensions by syzygy recurrence");
    };
    auto with_files = [&](CLI::App* s, std::size_t count, const std::string& desc) {
        s->add_option("files", files, desc)->required()->expected(static_cast<int>(count));
        common(s);
    };

    auto* c_check = app.add_subcommand("check-algebra", "validate an algebra file");
    with_files(c_check, 1, "algebra file");
    auto* c_hom = app.add_subcommand("hom", "dimension of Hom(M, N)");
    with_files(c_hom, 2, "module files M N");
    auto* c_ext = app.add_subcommand("ext", "dimensions of Ext^i(M, N)");
    with_files(c_ext, 2, "module files M N");
    c_ext->add_option("--max", degree, "largest degree");
    auto* c_tor = app.add_subcommand("tor", "dimensions of Tor_i(X, N), X right and N left");
    with_files(c_tor, 2, "module files X N");
    c_tor->add_option("--max", degree, "largest degree");
    auto* c_pdim = app.add_subcommand("pdim", "projective dimension");
    with_files(c_pdim, 1, "module file");
    auto* c_idim = app.add_subcommand("idim", "injective dimension");
    with_files(c_idim, 1, "module file");
    auto* c_dual = app.add_subcommand("dual", "vector-space dual module");
    with_files(c_dual, 1, "module file");
    c_dual->add_option("--module-out", module_out, "write the dual module here");
    auto* c_end = app.add_subcommand("end", "endomorphism algebra");
    with_files(c_end, 1, "module file");
    c_end->add_option("--algebra-out", algebra_out, "write End(M) here");
    c_end->add_option("--module-out", module_out, "write M as a left End(M)-module here");
    auto* c_add = app.add_subcommand("add-member", "is X a summand of a power of M");
    with_files(c_add, 2, "module files X M");
    auto* c_domdim = app.add_subcommand("domdim", "relative dominant dimension Q-domdim(M)");
    with_files(c_domdim, 1, "module file M");
    c_domdim->add_option("--Q", q_file, "module file Q")->required();
    c_domdim->add_option("--method", method, "greedy, criterion or both")
        ->check(CLI::IsMember({"greedy", "criterion", "both"}));
    c_domdim->add_flag("--co", co, "relative codominant dimension instead");
    auto* c_qd = app.add_subcommand("quasidegree", "quasi-generator or quasi-cogenerator degree");
    with_files(c_qd, 1, "module file");
    auto* g_flag = c_qd->add_flag("--gen", gen, "quasi-generator degree (default)");
    c_qd->add_flag("--cogen", cogen, "quasi-cogenerator degree")->excludes(g_flag);
    auto* c_phi = app.add_subcommand("phi", "(B, M) to (End_B(M), M)");
    with_files(c_phi, 1, "module file");
    auto* c_psi = app.add_subcommand("psi", "(A, M) to (End_A(M)^op, M)");
    with_files(c_psi, 1, "module file");
    for (auto* s : {c_phi, c_psi}) {
        s->add_option("--algebra-out", algebra_out, "write the new algebra here");
        s->add_option("--module-out", module_out, "write M over the new algebra here");
    }
    auto* c_verify = app.add_subcommand("verify", "check a correspondence round trip on a module");
    with_files(c_verify, 1, "module file");
    c_verify->add_option("--thm", thm, "33 (quasi-generator), 34 (quasi-cogenerator) or 35 (both)")
        ->required()
        ->check(CLI::IsMember({33, 34, 35}));
    c_verify->add_option("--n", n_opt, "quasi-generator degree");
    c_verify->add_option("--m", m_opt, "quasi-cogenerator degree");
    auto* c_scan = app.add_subcommand("scan", "probe a conjecture over a corpus");
    c_scan->add_option("files", files, "module files for --family custom-file");
    common(c_scan);
    c_scan->add_option("--conjecture", conjecture, "42, wakamatsu or gorenstein")
        ->check(CLI::IsMember({"42", "wakamatsu", "gorenstein"}));
    c_scan->add_option("--family", family,
                       "default, linear-An, nakayama-kupisch, truncated-polynomial or custom-file")
        ->check(CLI::IsMember({"default", "linear-An", "nakayama-kupisch", "truncated-polynomial", "custom-file"}));
    c_scan->add_option("--n", family_n, "vertex count for linear-An");
    c_scan->add_option("--kupisch", kupisch, "Kupisch series such as 2,2,1");
    c_scan->add_flag("--cyclic", cyclic, "cyclic Nakayama quiver");
    c_scan->add_option("--t", family_t, "truncation degree");
    c_scan->add_option("--p", p_opt, "field characteristic");
    c_scan->add_option("--max-dim", max_dim, "largest total dimension of an enumerated sum");
    c_scan->add_option("--max-summands", max_summands, "largest number of summands");

    std::vector<const char*> argv{"mtc"};
    for (auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? ok : input_error;
    }

    const auto start = std::chrono::steady_clock::now();
    CLI::App* sub = app.get_subcommands().front();
    const std::string cmd = sub->get_name();
    Json report;
    Json echo = Json::array();
    echo.push_back("mtc");
    for (auto& a : args) echo.push_back(a);
    report["command"] = std::move(echo);
    int code = ok;
    try {
        if (cap == 0) cap = detail::default_cap();
        DimOptions opt{cap, true, periodicity};
        std::vector<std::string> contents;
        for (auto& f : files) contents.push_back(io::read_text_file(f));
        if (!q_file.empty()) contents.push_back(io::read_text_file(q_file));
        report["inputs_digest"] = io::digest(contents);
        report["cap"] = cap;
        report["seed"] = seed;
        Json res;
        AlgebraPtr shared;
        auto load = [&](const std::string& f) {
            auto m = io::load_module(f, shared);
            if (!shared) shared = m.algebra();
            return m;
        };
        auto write_pair = [&](const AlgebraModule& am) {
            if (!algebra_out.empty()) io::write_json_file(algebra_out, io::algebra_json(*am.algebra));
            if (!module_out.empty()) io::write_json_file(module_out, io::module_json(am.module));
        };

        if (sub == c_check) {
            auto a = io::load_algebra(files[0]);
            auto j = radical(a);
            res["kind"] = a->presentation() ? "quiver" : "table";
            res["p"] = a->modulus();
            res["dim"] = a->dim();
            res["radical_dim"] = j.cols();
            res["idempotents"] = a->idempotents().size();
            res["basis"] = a->labels();
        } else if (sub == c_hom) {
            auto m = load(files[0]), n = load(files[1]);
            require_same_acting(m, n, "hom");
            res["dim"] = hom(m, n).dim();
        } else if (sub == c_ext) {
            auto m = load(files[0]), n = load(files[1]);
            Resolution r(m);
            res["ext_dims"] = detail::dims_json(ext_dims(r, n, degree));
        } else if (sub == c_tor) {
            auto x = load(files[0]), n = load(files[1]);
            Resolution r(n);
            res["tor_dims"] = detail::dims_json(tor_dims(x, r, degree));
        } else if (sub == c_pdim || sub == c_idim) {
            auto m = load(files[0]);
            Resolution r(sub == c_pdim ? m : dual(m));
            auto pr = pdim_detail(r, opt);
            res[sub == c_pdim ? "pdim" : "idim"] = detail::dim_json(pr.value);
            if (pr.period) res["period"] = {pr.period->first, pr.period->second};
            if (!pr.value.certified()) code = uncertified;
        } else if (sub == c_dual) {
            auto d = dual(load(files[0]));
            res["dim"] = d.dim();
            res["side"] = to_string(d.side());
            if (!module_out.empty()) io::write_json_file(module_out, io::module_json(d));
        } else if (sub == c_end) {
            auto m = load(files[0]);
            auto e = end_algebra(m);
            res["dim"] = e.algebra->dim();
            res["radical_dim"] = radical(e.algebra).cols();
            write_pair({e.algebra, e.module});
        } else if (sub == c_add) {
            auto x = load(files[0]), m = load(files[1]);
            auto w = split_witness(x, m);
            res["member"] = w.has_value();
            if (w) {
                res["copies"] = w->embed.rows() / std::max<std::size_t>(m.dim(), 1);
                res["witness_verified"] = w->retract * w->embed == FpMatrix::identity(x.dim(), x.modulus());
            } else {
                code = negative;
            }
        } else if (sub == c_domdim) {
            auto m = load(files[0]), q = load(q_file);
            auto meth = method == "both" ? DomdimMethod::both
                        : method == "criterion" ? DomdimMethod::criterion
                                                : DomdimMethod::greedy;
            auto r = co ? codomdim(q, m, cap, meth) : domdim(q, m, cap, meth);
            res["kind"] = co ? "codomdim" : "domdim";
            res["method"] = to_string(meth);
            res["value"] = detail::dim_json(r.value);
            if (r.greedy) res["greedy"] = r.greedy->str();
            if (r.criterion) res["criterion"] = r.criterion->str();
            if (r.alpha_bijective) res["alpha_bijective"] = *r.alpha_bijective;
            if (!r.tor_hom.empty()) res["tor_hom"] = detail::dims_json(r.tor_hom);
            if (!r.tor_dual.empty()) res["tor_dual"] = detail::dims_json(r.tor_dual);
            if (r.chain) res["chain"] = detail::chain_json(*r.chain);
            if (!r.value.certified()) code = uncertified;
        } else if (sub == c_qd) {
            auto m = load(files[0]);
            auto d = cogen ? quasi_cogenerator_degree(m, cap) : quasi_generator_degree(m, cap);
            res["degree"] = detail::degree_json(d);
            code = detail::degree_exit(d);
        } else if (sub == c_phi || sub == c_psi) {
            auto m = load(files[0]);
            auto am = sub == c_phi ? phi(m) : psi(m);
            res["algebra_dim"] = am.algebra->dim();
            res["module_dim"] = am.module.dim();
            res["module_side"] = to_string(am.module.side());
            res["dimension_vector"] = detail::dims_json(dimension_vector(am.module));
            write_pair(am);
        } else if (sub == c_verify) {
            auto m = load(files[0]);
            auto need = [&](const std::optional<std::size_t>& v, const char* flag) {
                if (!v) throw InputError(std::string("verify --thm ") + std::to_string(thm) + ": " + flag + " is required");
                return *v;
            };
            VerifyReport r = thm == 33   ? verify_thm33(m, need(n_opt, "--n"), cap)
                             : thm == 34 ? verify_thm34(m, need(m_opt, "--m"), cap)
                                         : verify_thm35(m, need(n_opt, "--n"), need(m_opt, "--m"), cap);
            res["verification"] = detail::verify_json(r);
            code = r.status() == Status::confirmed ? ok : r.status() == Status::failed ? negative : uncertified;
        } else if (sub == c_scan) {
            std::vector<CorpusEntry> corpus;
            if (family == "custom-file") {
                if (files.empty()) throw InputError("scan --family custom-file: module files required");
                std::map<std::string, std::size_t> by_hash;
                for (auto& f : files) {
                    auto m = io::load_module(f);
                    auto a = m.algebra();
                    std::string key = std::to_string(a->hash());
                    auto it = by_hash.find(key);
                    if (it == by_hash.end() || !same_algebra(corpus[it->second].algebra, a)) {
                        by_hash[key] = corpus.size();
                        corpus.push_back({f, a, {}});
                        it = by_hash.find(key);
                    }
                    corpus[it->second].modules.push_back({f, m});
                }
            } else if (family == "default") {
                auto specs = default_corpus_specs();
                if (p_opt) {
                    std::vector<FamilySpec> keep;
                    for (auto& s : specs)
                        if (s.p == *p_opt) keep.push_back(s);
                    specs = keep;
                }
                corpus = enumerate_corpus(specs);
            } else {
                FamilySpec s;
                s.p = p_opt ? *p_opt : p;
                s.max_dim = max_dim;
                s.max_summands = max_summands;
                if (family == "linear-An") {
                    s.family = FamilySpec::Family::linear_an;
                    s.n = family_n;
                } else if (family == "nakayama-kupisch") {
                    s.family = FamilySpec::Family::nakayama;
                    s.kupisch = detail::parse_list(kupisch, "--kupisch");
                    s.cyclic = cyclic;
                } else {
                    s.family = FamilySpec::Family::truncated_polynomial;
                    s.t = family_t;
                }
                corpus.push_back(enumerate_family(s));
            }
            std::map<std::string, std::size_t> counts{
                {"confirmed", 0}, {"skipped", 0}, {"uncertified", 0}, {"COUNTEREXAMPLE", 0}};
            Json entries = Json::array();
            Json flagged = Json::array();
            auto record = [&](const std::string& alg, const std::string& mod, ScanStatus st, const std::string& reason,
                              Json extra) {
                ++counts[to_string(st)];
                Json e;
                e["algebra"] = alg;
                if (!mod.empty()) e["module"] = mod;
                e["status"] = to_string(st);
                e["reason"] = reason;
                for (auto it = extra.begin(); it != extra.end(); ++it) e[it.key()] = it.value();
                if (st == ScanStatus::uncertified || st == ScanStatus::counterexample)
                    flagged.push_back(alg + (mod.empty() ? "" : " / " + mod) + ": " + to_string(st) + " (" + reason + ")");
                entries.push_back(std::move(e));
            };
            for (auto& entry : corpus) {
                if (conjecture == "gorenstein") {
                    auto g = gorenstein_probe(entry.algebra, cap);
                    record(entry.name, "", g.status, g.reason,
                           {{"degree", g.degree.str()}, {"idim_left", g.idim_left.str()}, {"idim_right", g.idim_right.str()}});
                    continue;
                }
                for (auto& nm : entry.modules) {
                    if (conjecture == "42") {
                        auto v = check_conjecture42(nm.name, nm.module, cap);
                        record(entry.name, nm.name, v.status, v.reason,
                               {{"degree", v.degree.str()}, {"pdim", v.pdim.str()}});
                    } else {
                        auto w = wakamatsu_probe(nm.module, cap);
                        record(entry.name, nm.name, w.status, w.reason,
                               {{"pdim", w.pdim.str()}, {"domdim", w.domdim.str()}});
                    }
                }
            }
            res["conjecture"] = conjecture;
            res["family"] = family;
            res["algebras"] = corpus.size();
            res["instances"] = entries.size();
            Json c;
            for (auto& [k, v] : counts) c[k] = v;
            res["counts"] = std::move(c);
            res["flagged"] = std::move(flagged);
            res["entries"] = std::move(entries);
            if (counts["COUNTEREXAMPLE"]) code = negative;
            else if (counts["uncertified"]) code = uncertified;
        }
        report["results"] = std::move(res);
    } catch (const InputError& e) {
        err << "mtc " << cmd << ": input error: " << e.what() << "\n";
        return input_error;
    } catch (const AxiomError& e) {
        err << "mtc " << cmd << ": consistency check failed: " << e.what() << "\n";
        report["error"] = e.what();
        code = negative;
    }
    report["exit_code"] = code;
    out << "mtc " << cmd << "\n";
    detail::print_summary(out, report);
    if (report.contains("results") && report["results"].contains("flagged"))
        for (auto& f : report["results"]["flagged"]) out << "  " << f.get<std::string>() << "\n";
    const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    report["timing_ms"] = ms;
    if (!report_path.empty()) {
        try {
            io::write_json_file(report_path, report);
        } catch (const InputError& e) {
            err << "mtc " << cmd << ": " << e.what() << "\n";
            return input_error;
        }
    }
    return code;
}

} // namespace mtc::cli
