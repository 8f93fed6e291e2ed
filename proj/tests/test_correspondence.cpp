#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace mtc;

namespace {

struct A2Setup {
    AlgebraPtr a = linear_an(2, 2);
    ModuleRep p1 = interval_module(a, 1, 2);
    ModuleRep p2 = interval_module(a, 2, 2);
    ModuleRep s1 = interval_module(a, 1, 1);
    ModuleRep t = direct_sum({p1, s1});
    ModuleRep reg = regular(a);
    ModuleRep dreg = dual_regular_like(regular(a));
};

std::vector<CorpusEntry> corpora()
{
    std::vector<FamilySpec> specs;
    for (std::int64_t p : {2, 3}) {
        FamilySpec a2;
        a2.p = p;
        a2.n = 2;
        a2.max_dim = 5;
        a2.max_summands = 3;
        specs.push_back(a2);
    }
    FamilySpec a3;
    a3.n = 3;
    a3.max_dim = 4;
    specs.push_back(a3);
    FamilySpec k2;
    k2.family = FamilySpec::Family::truncated_polynomial;
    k2.t = 2;
    k2.max_dim = 5;
    k2.max_summands = 3;
    specs.push_back(k2);
    FamilySpec nak;
    nak.family = FamilySpec::Family::nakayama;
    nak.kupisch = {2, 2, 1};
    nak.max_dim = 4;
    specs.push_back(nak);
    return enumerate_corpus(specs);
}

TEST(QuasiDegree, SpecifiedExamples)
{
    A2Setup s;
    auto t = quasi_generator_degree(s.t, 16);
    EXPECT_TRUE(t.exact());
    EXPECT_EQ(t.value, 1u);
    EXPECT_TRUE(t.witness_verified);
    ASSERT_EQ(t.witness.steps.size(), 1u);
    EXPECT_EQ(t.witness.steps[0].source.dim(), 3u);
    EXPECT_EQ(t.witness.steps[0].target.dim(), 4u);
    EXPECT_EQ(t.witness.last.dim(), 1u);
    EXPECT_EQ(quasi_generator_degree(s.reg, 16).value, 0u);
    EXPECT_EQ(quasi_generator_degree(s.p1, 16).status, QuasiDegree::Status::none);
    auto dcog = quasi_cogenerator_degree(s.dreg, 16);
    EXPECT_TRUE(dcog.exact());
    EXPECT_EQ(dcog.value, 0u);
    auto acog = quasi_cogenerator_degree(s.reg, 16);
    EXPECT_TRUE(acog.exact());
    EXPECT_EQ(acog.value, 1u);
    EXPECT_THROW(quasi_generator_degree(zero_module(s.a, Side::left), 4), InputError);
}

TEST(QuasiDegree, ZeroExactlyForGenerators)
{
    for (auto& e : corpora()) {
        auto reg = regular(e.algebra);
        auto dreg = dual_regular_like(reg);
        for (auto& m : e.modules) {
            auto g = quasi_generator_degree(m.module, 8);
            auto c = quasi_cogenerator_degree(m.module, 8);
            EXPECT_EQ(g.exact() && g.value == 0, in_add(reg, m.module)) << e.name << " " << m.name;
            EXPECT_EQ(c.exact() && c.value == 0, in_add(dreg, m.module)) << e.name << " " << m.name;
            EXPECT_TRUE(g.witness_verified);
        }
    }
}

TEST(QuasiDegree, DualityExchangesKinds)
{
    for (auto& e : corpora())
        for (auto& m : e.modules) {
            auto g = quasi_generator_degree(m.module, 8);
            auto c = quasi_cogenerator_degree(dual(m.module), 8);
            EXPECT_EQ(g.status, c.status);
            EXPECT_EQ(g.value, c.value);
            EXPECT_EQ(c.kind, QuasiDegree::Kind::cogenerator);
        }
}

TEST(PhiPsi, EndAlgebraDimensionsMatchEnumeration)
{
    A2Setup s;
    auto k = truncated_polynomial(2, 2);
    auto as = direct_sum({regular(k), truncated_module(k, 1)});
    EXPECT_EQ(phi(s.t).algebra->dim(), 3u);
    EXPECT_EQ(psi(s.t).algebra->dim(), 3u);
    EXPECT_EQ(phi(as).algebra->dim(), 5u);
    EXPECT_EQ(psi(as).algebra->dim(), 5u);
    for (auto& m : {s.t, s.p1, s.dreg, as}) {
        EXPECT_EQ(oracle::all_homs(m, m).size(), oracle::ipow(m.modulus(), phi(m).algebra->dim()));
        auto img = phi(m);
        EXPECT_EQ(img.module.dim(), m.dim());
        EXPECT_TRUE(same_algebra(img.module.acting(), img.algebra));
        auto back = psi(img.module);
        EXPECT_EQ(back.module.side(), Side::right);
        EXPECT_EQ(back.module.dim(), m.dim());
    }
}

TEST(PhiPsi, RegularModuleIsAFixedPoint)
{
    A2Setup s;
    auto img = phi(s.reg);
    EXPECT_EQ(img.algebra->dim(), s.a->dim());
    EXPECT_TRUE(double_centralizer(s.reg).holds);
    EXPECT_TRUE(double_centralizer(img.module).holds);
    auto r = verify_thm33(s.reg, 0, 8);
    EXPECT_EQ(r.status(), Status::confirmed);
}

TEST(Correspondence, QuasiGeneratorRoundTrip)
{
    A2Setup s;
    auto r = verify_thm33(s.t, 1, 16);
    EXPECT_EQ(r.status(), Status::confirmed);
    EXPECT_EQ(r.end_dim, 3u);
    auto img = phi(s.t);
    EXPECT_EQ(pdim(img.module), DimValue::exactly(1));
    EXPECT_TRUE(greedy_domdim(img.module, regular_like(img.module), 16).value.known_at_least(2));
    Resolution res(img.module);
    auto tor = tor_dims(dual(img.module), res, 4);
    for (std::size_t i = 1; i <= 4; ++i) EXPECT_EQ(tor[i], 0u);
    EXPECT_TRUE(double_centralizer(s.t).holds);
    EXPECT_TRUE(double_centralizer(img.module).holds);
    EXPECT_EQ(verify_thm33(s.t, 2, 16).status(), Status::failed);
}

TEST(Correspondence, MoritaCaseOverDualNumbers)
{
    auto k = truncated_polynomial(2, 2);
    auto m = direct_sum({regular(k), truncated_module(k, 1)});
    auto r = verify_thm33(m, 0, 16);
    EXPECT_EQ(r.status(), Status::confirmed);
    EXPECT_EQ(r.end_dim, 5u);
    auto img = phi(m);
    EXPECT_TRUE(is_projective(img.module));
    EXPECT_EQ(pdim(img.module), DimValue::exactly(0));
}

TEST(Correspondence, QuasiCogeneratorInstance)
{
    A2Setup s;
    auto r = verify_thm34(s.reg, 1, 16);
    EXPECT_EQ(r.status(), Status::confirmed);
    EXPECT_EQ(idim(phi(s.reg).module), DimValue::exactly(1));
    EXPECT_EQ(verify_thm34(s.dreg, 0, 16).status(), Status::confirmed);
}

TEST(Correspondence, GeneratorCogeneratorInstances)
{
    A2Setup s;
    auto da = verify_thm35(s.dreg, 1, 0, 16);
    EXPECT_EQ(da.status(), Status::confirmed);
    auto ida = phi(s.dreg);
    EXPECT_EQ(pdim(ida.module), DimValue::exactly(1));
    EXPECT_EQ(idim(ida.module), DimValue::exactly(0));
    auto a = verify_thm35(s.reg, 0, 1, 16);
    EXPECT_EQ(a.status(), Status::confirmed);
    auto ia = phi(s.reg);
    EXPECT_EQ(pdim(ia.module), DimValue::exactly(0));
    EXPECT_EQ(idim(ia.module), DimValue::exactly(1));
    EXPECT_EQ(verify_thm35(direct_sum({s.reg, s.dreg}), 0, 0, 16).status(), Status::confirmed);
    EXPECT_EQ(verify_thm35(s.reg, 1, 1, 16).status(), Status::failed);
}

TEST(Correspondence, EveryCertifiedQuasiGeneratorRoundTrips)
{
    std::size_t checked = 0;
    for (auto& e : corpora())
        for (auto& m : e.modules) {
            auto g = quasi_generator_degree(m.module, 8);
            if (g.exact()) {
                auto r = verify_thm33(m.module, g.value, 8);
                EXPECT_EQ(r.status(), Status::confirmed) << e.name << " " << m.name;
                ++checked;
            }
            auto c = quasi_cogenerator_degree(m.module, 8);
            if (c.exact()) {
                EXPECT_EQ(verify_thm34(m.module, c.value, 8).status(), Status::confirmed) << e.name << " " << m.name;
            }
            if (g.exact() && c.exact()) {
                EXPECT_EQ(verify_thm35(m.module, g.value, c.value, 8).status(), Status::confirmed);
            }
        }
    EXPECT_GT(checked, 10u);
}

TEST(Correspondence, PairVerdicts)
{
    A2Setup s;
    auto t = pair_verdict(s.t, 1, 0, 16);
    EXPECT_TRUE(t.in_gamma.value);
    EXPECT_TRUE(t.in_lambda.value);
    EXPECT_TRUE(t.in_var_gamma.value);
    EXPECT_TRUE(t.in_var_lambda.value);
    EXPECT_TRUE(t.double_centralizer);
    EXPECT_EQ(t.end_dim, 3u);
    auto wrong = pair_verdict(s.t, 0, 1, 16);
    EXPECT_FALSE(wrong.in_gamma.value);
    EXPECT_TRUE(wrong.in_gamma.certified);
    EXPECT_FALSE(wrong.in_lambda.value);
    EXPECT_TRUE(wrong.in_lambda.certified);
    for (auto& e : corpora())
        for (auto& m : e.modules) {
            auto g = quasi_generator_degree(m.module, 8);
            if (!g.exact()) continue;
            auto v = pair_verdict(m.module, g.value, 0, 8);
            EXPECT_TRUE(v.in_gamma.value);
            // Phi maps Gamma into Lambda
            EXPECT_TRUE(v.in_lambda.value) << e.name << " " << m.name;
            EXPECT_TRUE(v.double_centralizer);
            EXPECT_EQ(v.in_var_gamma.value, v.in_var_lambda.value) << e.name << " " << m.name;
        }
}

TEST(Morita, ClassicalCheck)
{
    A2Setup s;
    auto k = truncated_polynomial(2, 2);
    auto as = classical_morita_check(direct_sum({regular(k), truncated_module(k, 1)}));
    EXPECT_TRUE(as.generator);
    EXPECT_TRUE(as.projective_over_end);
    EXPECT_TRUE(as.double_centralizer);
    auto p2 = classical_morita_check(s.p2);
    EXPECT_FALSE(p2.generator);
    EXPECT_FALSE(p2.double_centralizer);
    EXPECT_TRUE(p2.consistent);
    auto d = double_centralizer(s.p2);
    EXPECT_EQ(d.end_dim, 1u);
    EXPECT_EQ(d.bicommutant_dim, 1u);
    EXPECT_EQ(d.algebra_dim, 3u);
    for (auto& e : corpora())
        for (auto& m : e.modules) EXPECT_TRUE(classical_morita_check(m.module).consistent) << e.name << " " << m.name;
}

} // namespace
