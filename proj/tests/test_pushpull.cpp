#include "doctest.h"

#include <random>

#include "fixtures_util.hpp"
#include "orbitcov/pushpull.hpp"

using namespace orbitcov;

namespace {

// Random combinations of a hom basis; at p = 101 an iso turns up quickly when
// one exists.
bool isomorphic_by_search(const Module& m, const Module& n, std::mt19937_64& rng)
{
    if (m.dims() != n.dims()) {
        return false;
    }
    HomSpace h = hom_space(m, n);
    std::uniform_int_distribution<std::uint32_t> coin(0, m.field().p() - 1);
    for (int t = 0; t < 20; ++t) {
        Vec c(h.dim());
        for (auto& e : c) {
            e = coin(rng);
        }
        if (is_iso(h.combine(c))) {
            return true;
        }
    }
    return false;
}

std::vector<NamedModule> up_pool(const GCategory& gc, std::mt19937_64& rng)
{
    std::vector<NamedModule> pool;
    const LinearCategory& c = gc.cat();
    for (std::size_t x = 0; x < c.object_count(); ++x) {
        pool.emplace_back("S_" + c.object_name(x), simple(gc.category, x));
        pool.emplace_back("P_" + c.object_name(x), representable(gc.category, x));
    }
    pool.emplace_back("rand", testfx::random_quotient(gc.category, rng));
    return pool;
}

std::vector<NamedModule> down_pool(const PushdownContext& ctx, std::mt19937_64& rng)
{
    std::vector<NamedModule> pool;
    const CategoryPtr& d = ctx.down();
    for (std::size_t x = 0; x < d->object_count(); ++x) {
        pool.emplace_back("P_" + d->object_name(x), representable(d, x));
        for (auto& s : simples_at(d, x)) {
            pool.emplace_back("S_" + d->object_name(x), std::move(s));
        }
    }
    pool.emplace_back("rand", testfx::random_quotient(d, rng));
    return pool;
}

}  // namespace

TEST_CASE("pushdown of k under a trivial Z/2 is the regular module")
{
    PushdownContext ctx(testfx::fix_b());
    Module k = representable(ctx.up(), 0);
    Module pk = pushdown(ctx, k);
    CHECK(validate_module(pk).ok());
    CHECK(pk.dims() == std::vector<std::size_t>{2});
    std::mt19937_64 rng(7);
    CHECK(isomorphic_by_search(pk, representable(ctx.down(), 0), rng));

    ModuleMap swap = phi_down(ctx, 1, k);
    Matrix expected(ctx.gcat().cat().field(), 2, 2);
    expected(0, 1) = 1;
    expected(1, 0) = 1;
    CHECK(swap.comps[0] == expected);
    CHECK(validate_map(swap, pk, pushdown(ctx, twist(ctx.gcat(), 1, k))).ok());
}

TEST_CASE("pushdown and pullup on the swapped two-cycle")
{
    PushdownContext ctx(testfx::fix_c());
    Module s1 = simple(ctx.up(), 0);
    Module s2 = simple(ctx.up(), 1);
    Module ps1 = pushdown(ctx, s1);
    CHECK(validate_module(ps1).ok());
    CHECK(ps1.dims() == std::vector<std::size_t>{1, 1});
    // every basis morphism of C/G except the identity blocks acts by zero
    const LinearCategory& d = *ctx.down();
    for (std::size_t x = 0; x < 2; ++x) {
        for (std::size_t y = 0; y < 2; ++y) {
            for (std::size_t i = 0; i < d.hom_dim(x, y); ++i) {
                const std::string& l = d.basis_labels(x, y)[i];
                if (l.rfind("e_", 0) != 0) {
                    CHECK(ps1.action(x, y, i).is_zero());
                }
            }
        }
    }

    Module top1 = simple(ctx.down(), 0);
    Module up = pullup(ctx, top1);
    CHECK(validate_module(up).ok());
    std::mt19937_64 rng(11);
    CHECK(isomorphic_by_search(up, direct_sum(ctx.up(), {s1, s2}).sum, rng));
    CHECK(isomorphic_by_search(pushdown(ctx, s2), ps1, rng));
}

TEST_CASE("pushdown along the trivial group is the identity up to relabelling")
{
    PushdownContext ctx(testfx::fix_a());
    Module k = representable(ctx.up(), 0);
    Module pk = pushdown(ctx, k);
    CHECK(pk.dims() == k.dims());
    CHECK(pullup(ctx, pk) == k);
}

TEST_CASE("theta is a natural bijection with both triangle identities")
{
    std::mt19937_64 rng(2024);
    for (auto gc : {testfx::fix_a(), testfx::fix_b(), testfx::fix_c()}) {
        PushdownContext ctx(gc);
        auto ups = up_pool(*gc, rng);
        auto downs = down_pool(ctx, rng);
        AdjointReport rep = verify_adjoint_system(ctx, ups, downs);
        CHECK(rep.ok);
        for (const auto& r : rep.pairs) {
            CAPTURE(r.x);
            CAPTURE(r.y);
            CHECK(r.hom_down == r.hom_up);
            CHECK(r.bijective);
            CHECK(r.round_trips);
            CHECK(r.natural);
        }
        for (const auto& [name, ok] : rep.unit_triangles) {
            CAPTURE(name);
            CHECK(ok);
        }
        for (const auto& [name, ok] : rep.counit_triangles) {
            CAPTURE(name);
            CHECK(ok);
        }
        for (const auto& [name, ok] : rep.coproducts) {
            CAPTURE(name);
            CHECK(ok);
        }
    }
}

TEST_CASE("hom dimensions across the adjunction match an independent count")
{
    // dim Hom(P_X, Y) computed directly against dim Hom(X, P^Y) computed directly
    std::mt19937_64 rng(5);
    PushdownContext ctx(testfx::fix_c());
    for (int t = 0; t < 6; ++t) {
        Module x = testfx::random_quotient(ctx.up(), rng);
        Module y = testfx::random_quotient(ctx.down(), rng);
        CHECK(hom_space(pushdown(ctx, x), y).dim() == hom_space(x, pullup(ctx, y)).dim());
    }
}

TEST_CASE("vital square commutes on the reference pairs")
{
    {
        PushdownContext ctx(testfx::fix_c());
        Module s1 = simple(ctx.up(), 0);
        VitalReport r = verify_vital_diagram(ctx, s1, s1);
        CHECK(r.source_dim == 1);
        CHECK(r.target_dim == 1);
        CHECK(r.ok());
    }
    {
        PushdownContext ctx(testfx::fix_b());
        Module k = representable(ctx.up(), 0);
        VitalReport r = verify_vital_diagram(ctx, k, k);
        CHECK(r.source_dim == 2);
        CHECK(r.target_dim == 2);
        CHECK(r.ok());
    }
}

TEST_CASE("pushdown is a G-precovering on hom spaces for random modules")
{
    std::mt19937_64 rng(99);
    for (auto gc : {testfx::fix_b(), testfx::fix_c()}) {
        PushdownContext ctx(gc);
        for (int t = 0; t < 5; ++t) {
            Module x = testfx::random_quotient(ctx.up(), rng);
            Module y = testfx::random_quotient(ctx.up(), rng);
            // sum_a dim Hom(X, ^aY) = dim Hom(P_X, P_Y)
            std::size_t total = 0;
            for (std::size_t a = 0; a < gc->group.order(); ++a) {
                total += hom_space(x, twist(*gc, a, y)).dim();
            }
            const std::size_t target = hom_space(pushdown(ctx, x), pushdown(ctx, y)).dim();
            CHECK(total == target);
            VitalReport r = verify_vital_diagram(ctx, x, y);
            CHECK(r.ok());
        }
    }
}

TEST_CASE("phi-down identifies pushdowns of twists")
{
    std::mt19937_64 rng(31);
    PushdownContext ctx(testfx::fix_c());
    for (int t = 0; t < 4; ++t) {
        Module x = testfx::random_quotient(ctx.up(), rng);
        for (std::size_t c = 0; c < 2; ++c) {
            ModuleMap phi = phi_down(ctx, c, x);
            Module px = pushdown(ctx, x);
            Module ptx = pushdown(ctx, twist(ctx.gcat(), c, x));
            CHECK(validate_map(phi, px, ptx).ok());
            CHECK(is_iso(phi));
        }
        TwistSum ts = t_iso(ctx, x);
        Module ppx = pullup(ctx, pushdown(ctx, x));
        CHECK(validate_map(ts.t, ts.twists.sum, ppx).ok());
        CHECK(is_iso(ts.t));
    }
}
