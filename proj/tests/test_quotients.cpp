#include "doctest.h"

#include <random>

#include "fixtures_util.hpp"
#include "orbitcov/quotients.hpp"

using namespace orbitcov;

namespace {

struct FixC {
    std::shared_ptr<const GCategory> gc = testfx::fix_c();
    PushdownContext ctx{gc};
    CategoryPtr c = gc->category;
    Module s1 = simple(c, 0);
    Module s2 = simple(c, 1);
    Module p1 = representable(c, 0);
    Module p2 = representable(c, 1);

    MorphObject socle(const Module& s, const Module& p) const { return {s, p, hom_space(s, p).basis(0)}; }

    std::vector<NamedModule> modules() const { return {{"S1", s1}, {"S2", s2}, {"P1", p1}, {"P2", p2}}; }
    std::vector<NamedMorph> arrows() const
    {
        return {{"0->S1", from_zero(s1)}, {"0->P1", from_zero(p1)}, {"S1->P2", socle(s1, p2)},
                {"S2->0", to_zero(s2)}};
    }
};

}  // namespace

TEST_CASE("ideals through objects and projectives")
{
    FixC fx;
    CHECK(ideal_hom(IdealSpec::objects({Module::zero(fx.c)}), fx.p1, fx.s1).dim() == 0);
    CHECK(factor_hom(IdealSpec::objects({}), fx.p1, fx.p2).dim() == hom_space(fx.p1, fx.p2).dim());

    // the orbit category of the two-cycle is equivalent to k[x]/(x^2)
    Module s = simple(fx.ctx.down(), 0);
    Module p = representable(fx.ctx.down(), 0);
    CHECK(ideal_hom(IdealSpec::projectives(), s, s).dim() == 0);
    CHECK(factor_hom(IdealSpec::projectives(), s, s).dim() == 1);
    CHECK(factor_hom(IdealSpec::projectives(), p, p).dim() == 0);
    CHECK(hom_space(p, p).dim() == 2);
}

TEST_CASE("stable homs match on both sides of the pushdown")
{
    FixC fx;
    Module ps1 = pushdown(fx.ctx, fx.s1);
    CHECK(factor_hom(IdealSpec::projectives(), ps1, ps1).dim() == 1);
    CHECK(factor_hom(IdealSpec::projectives(), fx.s1, fx.s1).dim() == 1);
    CHECK(factor_hom(IdealSpec::projectives(), fx.s1, twist(*fx.gc, 1, fx.s1)).dim() == 0);
}

TEST_CASE("closed form of the arrow ideal")
{
    FixC fx;
    MorphObject z = from_zero(fx.s1);
    CHECK(u_ideal_hom(z, z).dim() == 0);
    CHECK(fp_hom(z, z).dim() == 1);
    MorphObject id = identity_object(fx.p1);
    MorphObject f = fx.socle(fx.s1, fx.p2);
    CHECK(u_ideal_hom(f, id).dim() == MorphHomSpace(f, id).dim());
    CHECK(fp_hom(identity_object(fx.s1), f).dim() == 0);
    CHECK(fp_hom(identity_object(fx.s1), z).dim() == 0);
}

TEST_CASE("closed form agrees with the generator ideal on random arrow pairs")
{
    std::mt19937_64 rng(2718);
    int pairs = 0;
    for (auto gc : {testfx::fix_b(), testfx::fix_c()}) {
        for (int k = 0; k < 12; ++k) {
            MorphObject f = testfx::random_arrow(gc->category, rng);
            MorphObject g = testfx::random_arrow(gc->category, rng);
            CHECK(u_ideal_hom(f, g) == ideal_hom(IdealSpec::u_objects(), f, g));
            ++pairs;
        }
    }
    CHECK(pairs >= 20);
}

TEST_CASE("generators (Y -> Y) and (X' -> 0) alone miss part of the ideal")
{
    FixC fx;
    // f = (S1 -> 0), g = (P2 -> S2). The socle inclusion h : S1 -> P2 has g h = 0,
    // but End(P2) = k has no nonzero endomorphism killed by g, so (h, 0) does
    // not factor through (P2 -> 0).
    MorphObject f = to_zero(fx.s1);
    ProjectiveCover pc = projective_epi(fx.s2);
    REQUIRE(pc.projective.dims() == fx.p2.dims());
    MorphObject g{pc.projective, fx.s2, pc.epi};
    Subspace listed = ideal_hom(IdealSpec::arrows({identity_object(f.cod), to_zero(g.dom)}), f, g);
    Subspace full = u_ideal_hom(f, g);
    CHECK(listed.dim() == 0);
    CHECK(full.dim() == 1);
    CHECK(ideal_hom(IdealSpec::arrows({identity_object(f.cod), to_zero(f.dom), to_zero(g.dom)}), f, g) == full);
}

TEST_CASE("finitely presented functors")
{
    FixC fx;
    CHECK(eval_fp(from_zero(fx.s1), fx.s1).dim() == 1);
    CHECK(eval_fp(identity_object(fx.p1), fx.s1).dim() == 0);
    CHECK(eval_fp(identity_object(fx.p1), fx.p2).dim() == 0);

    // presentation P -> S of the simple over k[x]/(x^2), evaluated at S
    Module s = simple(fx.ctx.down(), 0);
    ProjectiveCover pc = projective_epi(s);
    MorphObject pres{pc.projective, s, pc.epi};
    CHECK(eval_fp(pres, s).dim() == 1);

    MorphObject z = from_zero(fx.s1);
    CHECK(fp_hom(z, z).dim() == 1);
    CHECK(nat_oracle(z, z) == 1);
    MorphObject id = identity_object(fx.p2);
    CHECK(fp_hom(id, id).dim() == 0);
    CHECK(nat_oracle(id, id) == 0);
    MorphObject zp = from_zero(fx.p1);
    CHECK(fp_hom(zp, z).dim() == 1);
    CHECK(nat_oracle(zp, z) == 1);
}

TEST_CASE("fp hom dimensions agree with the presentation oracle")
{
    std::mt19937_64 rng(1618);
    for (auto gc : {testfx::fix_a(), testfx::fix_b(), testfx::fix_c()}) {
        for (int k = 0; k < 8; ++k) {
            MorphObject f = testfx::random_arrow(gc->category, rng);
            MorphObject g = testfx::random_arrow(gc->category, rng);
            CHECK(fp_hom(f, g).dim() == nat_oracle(f, g));
        }
    }
}

TEST_CASE("Theta is additive")
{
    FixC fx;
    std::mt19937_64 rng(44);
    for (int k = 0; k < 5; ++k) {
        MorphObject f = testfx::random_arrow(fx.c, rng);
        MorphObject g = testfx::random_arrow(fx.c, rng);
        MorphObject fg = morph_direct_sum(fx.c, {f, g}).sum;
        for (const auto& z : {fx.s1, fx.s2, fx.p1, fx.p2}) {
            CHECK(eval_fp(fg, z).dim() == eval_fp(f, z).dim() + eval_fp(g, z).dim());
        }
    }
}

TEST_CASE("ideal axiom on sampled triples")
{
    FixC fx;
    std::mt19937_64 rng(9);
    std::vector<IdealSpec> specs = {IdealSpec::projectives(), IdealSpec::objects({fx.s1, fx.s2}),
                                    IdealSpec::objects({direct_sum(fx.c, {fx.p1, fx.p2}).sum})};
    for (const auto& spec : specs) {
        for (int k = 0; k < 3; ++k) {
            Module w = testfx::random_quotient(fx.c, rng);
            Module x = testfx::random_quotient(fx.c, rng);
            Module y = testfx::random_quotient(fx.c, rng);
            Module z = testfx::random_quotient(fx.c, rng);
            CHECK(ideal_axiom_holds(spec, w, x, y, z));
        }
    }
    for (int k = 0; k < 3; ++k) {
        MorphObject w = testfx::random_arrow(fx.c, rng);
        MorphObject x = testfx::random_arrow(fx.c, rng);
        MorphObject y = testfx::random_arrow(fx.c, rng);
        MorphObject z = testfx::random_arrow(fx.c, rng);
        CHECK(ideal_axiom_holds(IdealSpec::u_objects(), w, x, y, z));
    }
}

TEST_CASE("induced precoverings on the swapped two-cycle")
{
    FixC fx;
    auto report_ok = [](const InducedReport& r) {
        for (const auto& p : r.pairs) {
            CAPTURE(r.mode);
            CAPTURE(p.x);
            CAPTURE(p.y);
            CHECK(p.ideal_preserved);
            CHECK(p.section_independent);
            CHECK(p.bijective);
            CHECK(p.oracle_agrees);
        }
        return r.ok;
    };
    CHECK(report_ok(check_induced_precovering(ModuleQuotient::stable(fx.ctx, fx.modules()))));
    CHECK(report_ok(check_induced_precovering(
        ModuleQuotient::factor_by(fx.ctx, fx.modules(), {direct_sum(fx.c, {fx.p1, fx.p2}).sum}))));
    CHECK(report_ok(check_induced_precovering(ModuleQuotient::factor_by(fx.ctx, fx.modules(), {fx.s1, fx.s2}))));
    CHECK(report_ok(check_induced_precovering(MorphQuotient::h_factor(fx.ctx, fx.arrows()))));
    InducedReport fp = check_induced_precovering(MorphQuotient::fp(fx.ctx, fx.arrows()));
    CHECK(report_ok(fp));
    for (const auto& p : fp.pairs) {
        CHECK(p.oracle_dims.size() == 3);
    }

    CHECK_THROWS_AS(ModuleQuotient::factor_by(fx.ctx, fx.modules(), {fx.s1}), ValidationError);
    CHECK_THROWS_AS(check_induced_precovering(ModuleQuotient::stable(fx.ctx, {})), ValidationError);
}

TEST_CASE("induced precoverings are trivially fine for the trivial group")
{
    PushdownContext ctx(testfx::fix_a());
    Module k = representable(ctx.up(), 0);
    std::vector<NamedModule> pool = {{"k", k}, {"k2", direct_sum(ctx.up(), {k, k}).sum}};
    std::vector<NamedMorph> arrows = {{"k->k", identity_object(k)}, {"0->k", from_zero(k)}, {"k->0", to_zero(k)}};
    CHECK(check_induced_precovering(ModuleQuotient::stable(ctx, pool)).ok);
    CHECK(check_induced_precovering(ModuleQuotient::factor_by(ctx, pool, {k})).ok);
    CHECK(check_induced_precovering(MorphQuotient::h_factor(ctx, arrows)).ok);
    CHECK(check_induced_precovering(MorphQuotient::fp(ctx, arrows)).ok);
}

TEST_CASE("fp precovering dimension identity on random arrows")
{
    std::mt19937_64 rng(31337);
    for (auto gc : {testfx::fix_b(), testfx::fix_c()}) {
        PushdownContext ctx(gc);
        for (int k = 0; k < 5; ++k) {
            MorphObject f = testfx::random_arrow(ctx.up(), rng);
            MorphObject g = testfx::random_arrow(ctx.up(), rng);
            std::size_t total = 0;
            for (std::size_t a = 0; a < gc->group.order(); ++a) {
                total += fp_hom(f, morph_twist(*gc, a, g)).dim();
            }
            CHECK(total == fp_hom(h_pushdown(ctx, f), h_pushdown(ctx, g)).dim());
        }
    }
}

TEST_CASE("Krull-Schmidt in the fp factor under the free swap")
{
    FixC fx;
    std::vector<NamedMorph> pool = fx.arrows();
    pool.emplace_back("0->S2", from_zero(fx.s2));
    pool.emplace_back("S2->P1", fx.socle(fx.s2, fx.p1));
    FactorKsReport rep = check_factor_krull_schmidt(fx.ctx, pool);
    CHECK(rep.ok);
    std::size_t nonzero = 0;
    for (const auto& r : rep.objects) {
        CAPTURE(r.name);
        if (r.up_indecomposable) {
            ++nonzero;
            CHECK(r.down_indecomposable);
        }
    }
    CHECK(nonzero >= 4);
    CHECK_FALSE(rep.fibers.empty());
    for (const auto& f : rep.fibers) {
        CHECK(f.twist.has_value());
    }
}
