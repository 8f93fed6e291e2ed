// Acceptance run: one PASS/FAIL line per criterion. Usage: acceptance <path-to-mtc-binary>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <set>
#include <iostream>
#include <sstream>
#include <sys/wait.h>
#include <unistd.h>

#include <mtc/io.hpp>

#include "oracles.hpp"

using namespace mtc;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

/// Collects failures while a criterion runs.
struct Check {
    Outcome& o;
    void expect(bool ok, const std::string& what)
    {
        if (ok || !o.pass) {
            if (!ok) o.detail += "; " + what;
            o.pass = o.pass && ok;
            return;
        }
        o.pass = false;
        o.detail = what;
    }
};

int shell(const std::string& cmd)
{
    int status = std::system((cmd + " > /dev/null 2>&1").c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

CorpusEntry family(FamilySpec::Family f, std::int64_t p, std::size_t size, std::size_t max_dim,
                   std::vector<std::size_t> kupisch = {}, bool cyclic = false)
{
    FamilySpec s;
    s.family = f;
    s.p = p;
    s.n = size;
    s.t = size;
    s.kupisch = std::move(kupisch);
    s.cyclic = cyclic;
    s.max_dim = max_dim;
    s.max_summands = 2;
    return enumerate_family(s);
}

Outcome linear_algebra()
{
    Outcome o;
    Check c{o};
    for (Scalar p : {2u, 3u, 5u}) {
        std::mt19937_64 rng(1000 + p);
        for (int t = 0; t < 200; ++t) {
            auto m = oracle::random_matrix(rng, 1 + rng() % 12, 1 + rng() % 12, p, 0.5);
            auto e = rref(m);
            auto again = rref(e.reduced);
            c.expect(again.reduced == e.reduced && again.pivots == e.pivots, "rref not idempotent");
            auto k = kernel_basis(m);
            c.expect(rank(m) + k.cols() == m.cols() && (m * k).is_zero(), "rank-nullity");
            auto x0 = oracle::random_matrix(rng, m.cols(), 1, p);
            auto b = m * x0;
            auto x = solve(m, b);
            c.expect(x.has_value() && m * *x == b, "solve substitution");
        }
    }
    o.detail = o.pass ? "600 matrices over GF(2), GF(3), GF(5)" : o.detail;
    return o;
}

Outcome duality()
{
    Outcome o;
    Check c{o};
    const std::size_t cap = 8;
    std::vector<CorpusEntry> corpora{family(FamilySpec::Family::linear_an, 2, 2, 4),
                                     family(FamilySpec::Family::linear_an, 3, 2, 4),
                                     family(FamilySpec::Family::truncated_polynomial, 2, 2, 4),
                                     family(FamilySpec::Family::truncated_polynomial, 3, 2, 4)};
    std::size_t pairs = 0;
    for (auto& e : corpora)
        for (auto& m : e.modules) {
            Resolution r(m.module);
            auto pd = pdim_detail(r, {cap}).value;
            auto id_op = idim_by_coresolution(dual(m.module), cap);
            c.expect(pd == id_op, e.name + " " + m.name + ": pdim " + pd.str() + " vs idim_op " + id_op.str());
            for (auto& n : e.modules) {
                ++pairs;
                auto ex = ext_dims(r, n.module, 4);
                Resolution rd(dual(n.module));
                auto ex_op = ext_dims(rd, dual(m.module), 4);
                auto tr = tor_dims(dual(n.module), r, 4);
                for (std::size_t i = 0; i <= 4; ++i) {
                    c.expect(ex[i] == ex_op[i], e.name + " Ext^" + std::to_string(i) + "(" + m.name + "," + n.name + ") vs op");
                    c.expect(ex[i] == tr[i], e.name + " Tor_" + std::to_string(i) + " vs Ext^" + std::to_string(i));
                }
            }
        }
    if (o.pass) o.detail = std::to_string(pairs) + " pairs, degrees 0..4";
    return o;
}

Outcome domdim_oracle()
{
    Outcome o;
    Check c{o};
    std::vector<CorpusEntry> corpora{family(FamilySpec::Family::linear_an, 2, 2, 4),
                                     family(FamilySpec::Family::linear_an, 3, 2, 4),
                                     family(FamilySpec::Family::linear_an, 2, 3, 4),
                                     family(FamilySpec::Family::truncated_polynomial, 2, 2, 4),
                                     family(FamilySpec::Family::nakayama, 2, 0, 4, {2, 2, 1}),
                                     family(FamilySpec::Family::nakayama, 3, 0, 4, {2, 2}, true)};
    std::size_t triples = 0, applied = 0;
    for (auto& e : corpora)
        for (auto& q : e.modules)
            for (auto& m : e.modules) {
                ++triples;
                try {
                    auto r = domdim(q.module, m.module, 10, DomdimMethod::both);
                    applied += *r.alpha_bijective;
                } catch (const AxiomError& err) {
                    c.expect(false, e.name + " Q=" + q.name + " M=" + m.name + ": " + err.what());
                }
            }
    c.expect(triples >= 50, "fewer than 50 triples");
    auto a2 = linear_an(2, 2);
    auto a = regular(a2);
    auto p1 = interval_module(a2, 1, 2);
    auto s1 = interval_module(a2, 1, 1);
    auto one = domdim(p1, a, 16, DomdimMethod::both).value;
    c.expect(one == DimValue::exactly(1), "(A2, P1, A) gave " + one.str());
    auto inf = domdim(direct_sum({p1, s1}), a, 16, DomdimMethod::both).value;
    c.expect(inf.is_infinite(), "(A2, P1+S1, A) gave " + inf.str());
    auto k = truncated_polynomial(2, 2);
    auto r = regular(k);
    auto g = domdim(direct_sum({r, truncated_module(k, 1)}), r, 16, DomdimMethod::both).value;
    c.expect(g.is_infinite(), "(k[x]/x^2, A+S, A) gave " + g.str());
    if (o.pass)
        o.detail = std::to_string(triples) + " triples, criterion applied on " + std::to_string(applied) + ", anchors 1 / infinite / infinite";
    return o;
}

Outcome quasi_generator_round_trip()
{
    Outcome o;
    Check c{o};
    auto a2 = linear_an(2, 2);
    auto t = direct_sum({interval_module(a2, 1, 2), interval_module(a2, 1, 1)});
    auto d = quasi_generator_degree(t, 16);
    c.expect(d.exact() && d.value == 1, "degree of T is " + d.str());
    auto img = phi(t);
    c.expect(img.algebra->dim() == 3, "dim End(T) = " + std::to_string(img.algebra->dim()));
    auto pd = pdim(img.module);
    c.expect(pd == DimValue::exactly(1), "pdim over End(T) = " + pd.str());
    auto dd = greedy_domdim(img.module, regular_like(img.module), 16).value;
    c.expect(dd.known_at_least(2), "T-domdim = " + dd.str());
    Resolution res(img.module);
    auto tor = tor_dims(dual(img.module), res, 4);
    for (std::size_t i = 1; i <= 4; ++i) c.expect(tor[i] == 0, "Tor_" + std::to_string(i) + "(DT,T) != 0");
    c.expect(double_centralizer(t).holds, "double centralizer over A2");
    c.expect(double_centralizer(img.module).holds, "double centralizer over End(T)");
    c.expect(verify_thm33(t, 1, 16).status() == Status::confirmed, "round trip for T");
    auto k = truncated_polynomial(2, 2);
    auto as = direct_sum({regular(k), truncated_module(k, 1)});
    auto dk = quasi_generator_degree(as, 16);
    c.expect(dk.exact() && dk.value == 0, "degree of A+S is " + dk.str());
    auto imk = phi(as);
    c.expect(imk.algebra->dim() == 5, "dim End(A+S) = " + std::to_string(imk.algebra->dim()));
    c.expect(is_projective(imk.module), "A+S not projective over its End");
    c.expect(verify_thm33(as, 0, 16).status() == Status::confirmed, "round trip for A+S");
    if (o.pass) o.detail = "(A2, P1+S1): degree 1, End dim 3, pdim 1; (k[x]/x^2, A+S): degree 0, End dim 5, projective";
    return o;
}

Outcome generator_cogenerator()
{
    Outcome o;
    Check c{o};
    auto a2 = linear_an(2, 2);
    auto a = regular(a2);
    auto da = dual_regular_like(a);
    c.expect(verify_thm35(da, 1, 0, 16).status() == Status::confirmed, "(A2, DA) does not certify (1,0)");
    c.expect(verify_thm35(a, 0, 1, 16).status() == Status::confirmed, "(A2, A) does not certify (0,1)");
    auto ida = phi(da);
    c.expect(pdim(ida.module) == DimValue::exactly(1) && idim(ida.module) == DimValue::exactly(0), "Phi(A2, DA) dims");
    auto ia = phi(a);
    c.expect(pdim(ia.module) == DimValue::exactly(0) && idim(ia.module) == DimValue::exactly(1), "Phi(A2, A) dims");
    if (o.pass) o.detail = "(A2, DA) -> (1,0), (A2, A) -> (0,1)";
    return o;
}

Outcome generator_law(const std::vector<CorpusEntry>& corpus)
{
    Outcome o;
    Check c{o};
    std::size_t generators = 0, checked = 0;
    for (auto& e : corpus) {
        auto reg = regular(e.algebra);
        for (auto& m : e.modules) {
            if (m.module.dim() < e.algebra->dim()) continue;
            if (!in_add(reg, m.module)) continue;
            ++generators;
            auto v = domdim(m.module, reg, 16).value;
            c.expect(v.is_infinite(), e.name + " / " + m.name + ": domdim " + v.str());
            auto mc = classical_morita_check(m.module);
            c.expect(mc.generator && mc.projective_over_end && mc.double_centralizer,
                     e.name + " / " + m.name + ": Morita check fails on a generator");
        }
    }
    // the converse direction on non-generators of the smaller algebras
    for (auto& e : corpus) {
        if (e.algebra->dim() > 4) continue;
        for (auto& m : e.modules) {
            ++checked;
            c.expect(classical_morita_check(m.module).consistent, e.name + " / " + m.name + ": Morita check inconsistent");
        }
    }
    if (o.pass)
        o.detail = std::to_string(generators) + " generators certified infinite; " + std::to_string(checked) +
                   " modules checked both directions";
    return o;
}

Outcome conjecture_scan(const std::vector<CorpusEntry>& corpus)
{
    Outcome o;
    Check c{o};
    auto vs = scan_conjecture42(corpus, 16);
    std::size_t counts[4] = {0, 0, 0, 0};
    std::vector<std::string> uncertified;
    for (auto& v : vs) {
        ++counts[static_cast<int>(v.status)];
        if (v.status == ScanStatus::counterexample) c.expect(false, "counterexample " + v.instance + ": " + v.reason);
        if (v.status == ScanStatus::uncertified) uncertified.push_back(v.instance + " (" + v.reason + ")");
    }
    std::ostringstream s;
    s << corpus.size() << " algebras, " << vs.size() << " instances: " << counts[0] << " confirmed, " << counts[1]
      << " skipped, " << counts[2] << " uncertified, " << counts[3] << " counterexamples";
    for (auto& u : uncertified) s << "\n      uncertified: " << u;
    if (o.pass) o.detail = s.str();
    return o;
}

Outcome cli_round_trip(const std::string& mtc, const fs::path& fixtures)
{
    Outcome o;
    Check c{o};
    auto dir = fs::temp_directory_path() / ("mtc-acceptance-" + std::to_string(::getpid()));
    fs::create_directories(dir);
    auto f = [&](const std::string& n) { return (fixtures / n).string(); };
    auto d = [&](const std::string& n) { return (dir / n).string(); };
    auto value = [&](const std::string& args, const std::vector<std::string>& path) {
        shell(mtc + " " + args + " --out " + d("r.json"));
        auto j = io::read_json_file(d("r.json"))["results"];
        for (auto& k : path) j = j[k];
        return j.dump();
    };
    std::set<int> codes;
    auto code = [&](const std::string& args, int expected) {
        int got = shell(mtc + " " + args);
        codes.insert(got);
        c.expect(got == expected, "'" + args + "' exited " + std::to_string(got));
    };
    try {
        code("phi " + f("A2_T.json") + " --algebra-out " + d("A.json") + " --module-out " + d("M.json"), 0);
        code("psi " + d("M.json") + " --algebra-out " + d("B.json") + " --module-out " + d("N.json"), 0);
        c.expect(value("quasidegree " + f("A2_T.json"), {"degree"}) == value("quasidegree " + d("N.json"), {"degree"}),
                 "quasi-generator degree changes after phi/psi");
        c.expect(value("verify " + f("A2_T.json") + " --thm 33 --n 1", {"verification", "status"}) ==
                     value("verify " + d("N.json") + " --thm 33 --n 1", {"verification", "status"}),
                 "verify verdict changes after phi/psi");
        c.expect(value("pdim " + d("M.json"), {"pdim", "value"}) == "\"1\"", "pdim of the phi image");
        for (auto& e : fs::directory_iterator(fixtures)) {
            if (e.path().extension() != ".json") continue;
            auto raw = io::read_json_file(e.path());
            if (raw.contains("algebra")) {
                auto m = io::load_module(e.path());
                auto j = io::module_json(m);
                c.expect(io::module_json(io::parse_module(j, fixtures)).dump() == j.dump() &&
                             io::parse_module(j, fixtures) == m,
                         "fixpoint fails for " + e.path().filename().string());
            } else {
                auto a = io::load_algebra(e.path());
                auto j = io::algebra_json(*a);
                c.expect(io::algebra_json(*io::parse_algebra(j)).dump() == j.dump(),
                         "fixpoint fails for " + e.path().filename().string());
            }
        }
        code("hom " + f("A2_P1.json") + " " + f("A2_T.json"), 0);
        code("add-member " + f("A2_P2.json") + " " + f("A2_T.json"), 1);
        code("pdim " + f("kx2_S.json") + " --cap 8", 2);
        code("check-algebra " + f("invalid/not_associative.json"), 3);
        c.expect(codes == std::set<int>{0, 1, 2, 3}, "exit codes 0/1/2/3 not all hit");
    } catch (const std::exception& e) {
        c.expect(false, e.what());
    }
    fs::remove_all(dir);
    if (o.pass) o.detail = "phi/psi re-ingested, fixtures fixpoint, exit codes 0/1/2/3";
    return o;
}

} // namespace

int main(int argc, char** argv)
{
    if (argc < 2) {
        std::cerr << "usage: acceptance <mtc binary> [fixtures dir]\n";
        return 3;
    }
    const std::string mtc = argv[1];
    const fs::path fixtures = argc > 2 ? fs::path(argv[2]) : fs::path(MTC_FIXTURES);
    std::vector<CorpusEntry> corpus;
    bool all = true;
    auto run = [&](int n, double limit_s, const std::function<Outcome()>& f) {
        auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = f();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (s > limit_s) {
            o.pass = false;
            o.detail += " (exceeded " + std::to_string(static_cast<int>(limit_s)) + " s)";
        }
        all = all && o.pass;
        std::printf("criterion %d: %s (%.1f s) %s\n", n, o.pass ? "PASS" : "FAIL", s, o.detail.c_str());
        std::fflush(stdout);
    };
    run(1, 5, linear_algebra);
    run(2, 30, duality);
    run(3, 60, domdim_oracle);
    run(4, 60, quasi_generator_round_trip);
    run(5, 60, generator_cogenerator);
    corpus = enumerate_corpus(default_corpus_specs());
    run(6, 300, [&] { return generator_law(corpus); });
    run(7, 300, [&] { return conjecture_scan(corpus); });
    run(8, 60, [&] { return cli_round_trip(mtc, fixtures); });
    return all ? 0 : 1;
}
