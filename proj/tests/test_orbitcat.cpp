#include "doctest.h"

#include "fixtures_util.hpp"

using namespace orbitcov;

namespace {

// Full family f_{b,a} in C(ax, by) of a C/G(x,y) element, rebuilt by
// equivariance from the a = 1 slice.
std::vector<std::vector<Vec>> expand(const OrbitCategory& oc, std::size_t x, std::size_t y, const Vec& f)
{
    const GCategory& gc = oc.base();
    const FiniteGroup& g = gc.group;
    std::vector<std::vector<Vec>> fam(g.order(), std::vector<Vec>(g.order()));
    for (std::size_t b = 0; b < g.order(); ++b) {
        for (std::size_t a = 0; a < g.order(); ++a) {
            const std::size_t c = g.mul(g.inverse(a), b);
            fam[b][a] = gc.act_hom(a, x, gc.act(c, y), oc.slice(x, y, c, f));
        }
    }
    return fam;
}

// (gf)_{b,a} = sum_c g_{b,c} f_{c,a}
std::vector<std::vector<Vec>> double_sum(const OrbitCategory& oc, std::size_t x, std::size_t y, std::size_t z,
                                         const std::vector<std::vector<Vec>>& gfam,
                                         const std::vector<std::vector<Vec>>& ffam)
{
    const GCategory& gc = oc.base();
    const LinearCategory& c = gc.cat();
    const std::size_t order = gc.group.order();
    std::vector<std::vector<Vec>> out(order, std::vector<Vec>(order));
    for (std::size_t b = 0; b < order; ++b) {
        for (std::size_t a = 0; a < order; ++a) {
            Vec acc(c.hom_dim(gc.act(a, x), gc.act(b, z)), 0);
            for (std::size_t k = 0; k < order; ++k) {
                Vec term = c.compose(gc.act(a, x), gc.act(k, y), gc.act(b, z), gfam[b][k], ffam[k][a]);
                acc = vec_add(c.field(), acc, term);
            }
            out[b][a] = acc;
        }
    }
    return out;
}

void check_double_sum_oracle(const OrbitCategory& oc)
{
    const LinearCategory& q = oc.cat();
    const std::size_t n = q.object_count();
    const std::size_t one = oc.base().group.identity();
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
            for (std::size_t z = 0; z < n; ++z) {
                for (std::size_t i = 0; i < q.hom_dim(x, y); ++i) {
                    for (std::size_t j = 0; j < q.hom_dim(y, z); ++j) {
                        Vec f = unit_vector(q.hom_dim(x, y), i);
                        Vec g = unit_vector(q.hom_dim(y, z), j);
                        auto fam = double_sum(oc, x, y, z, expand(oc, y, z, g), expand(oc, x, y, f));
                        Vec fast = q.compose(x, y, z, g, f);
                        auto expected = expand(oc, x, z, fast);
                        for (std::size_t b = 0; b < fam.size(); ++b) {
                            for (std::size_t a = 0; a < fam.size(); ++a) {
                                CHECK(fam[b][a] == expected[b][a]);
                            }
                            CHECK(oc.slice(x, z, b, fast) == fam[b][one]);
                        }
                    }
                }
            }
        }
    }
}

}  // namespace

TEST_CASE("groups")
{
    auto z3 = FiniteGroup::cyclic(3);
    CHECK(z3.order() == 3);
    CHECK(z3.mul(2, 2) == 1);
    CHECK(z3.inverse(1) == 2);
    auto s3 = FiniteGroup::symmetric3();
    CHECK(s3.order() == 6);
    std::size_t noncommuting = 0;
    for (std::size_t a = 0; a < 6; ++a) {
        for (std::size_t b = 0; b < 6; ++b) {
            noncommuting += s3.mul(a, b) != s3.mul(b, a);
        }
    }
    CHECK(noncommuting > 0);
    CHECK_THROWS_AS(FiniteGroup::from_table({{0, 1}, {0, 1}}), ValidationError);
    CHECK_THROWS_AS(FiniteGroup::from_table({{0, 1}, {1, 1}}), ValidationError);
}

TEST_CASE("validate_action examples")
{
    auto b = testfx::fix_b();
    auto rb = validate_action(b->cat(), b->group, b->action);
    CHECK(rb.violations.ok());
    CHECK_FALSE(rb.free);

    auto c = testfx::fix_c();
    auto rc = validate_action(c->cat(), c->group, c->action);
    CHECK(rc.violations.ok());
    CHECK(rc.free);

    // A_g A_g != A_1: scale alpha by 2 under the swap
    GroupAction broken = c->action;
    broken.automorphisms[1].hom_maps[0 * 2 + 1] = Matrix::from_rows(c->cat().field(), {{2}});
    auto rx = validate_action(c->cat(), c->group, broken);
    CHECK_FALSE(rx.violations.ok());
    CHECK_THROWS_AS(
        generate_action(c->cat(), c->group, {{1, broken.automorphisms[1]}}), ValidationError);
}

TEST_CASE("orbit category of the fixtures")
{
    SUBCASE("trivial group leaves C unchanged")
    {
        auto a = testfx::fix_a();
        auto oc = build_orbit(a);
        CHECK(oc.cat().hom_dim(0, 0) == 1);
        CHECK(oc.cat().composite(0, 0, 0, 0, 0)[0] == 1);
        CHECK(validate_category(oc.cat()).ok());
    }
    SUBCASE("trivial Z/2 action gives the group algebra")
    {
        auto b = testfx::fix_b();
        auto oc = build_orbit(b);
        const auto& q = oc.cat();
        REQUIRE(q.hom_dim(0, 0) == 2);
        CHECK(validate_category(q).ok());
        // basis (1|1, 1|g): products follow Z/2
        for (std::size_t i = 0; i < 2; ++i) {
            for (std::size_t j = 0; j < 2; ++j) {
                CHECK(Vec(q.composite(0, 0, 0, j, i).begin(), q.composite(0, 0, 0, j, i).end()) ==
                      unit_vector(2, i ^ j));
            }
        }
        check_double_sum_oracle(oc);
    }
    SUBCASE("free swap on the two-cycle gives k[x]/(x^2)")
    {
        auto c = testfx::fix_c();
        auto oc = build_orbit(c);
        const auto& q = oc.cat();
        CHECK(validate_category(q).ok());
        REQUIRE(q.hom_dim(0, 0) == 2);
        // block 1 is C(1,1) = identity, block g is C(1,2) = alpha
        Vec u = unit_vector(2, 1);
        CHECK(vec_is_zero(q.compose(0, 0, 0, u, u)));
        CHECK(q.identity(0) == unit_vector(2, 0));
        for (std::size_t x = 0; x < 2; ++x) {
            for (std::size_t y = 0; y < 2; ++y) {
                std::size_t expected = 0;
                for (std::size_t b = 0; b < 2; ++b) {
                    expected += c->cat().hom_dim(x, c->act(b, y));
                }
                CHECK(q.hom_dim(x, y) == expected);
            }
        }
        check_double_sum_oracle(oc);
    }
}

TEST_CASE("canonical covering")
{
    for (auto gc : {testfx::fix_a(), testfx::fix_b(), testfx::fix_c()}) {
        auto oc = build_orbit(gc);
        auto cov = canonical_covering(oc);
        CHECK(validate_functor(cov.functor, gc->cat(), oc.cat()).ok());
        CHECK(validate_invariant_structure(*gc, cov).ok());
        std::vector<std::size_t> pool;
        for (std::size_t x = 0; x < gc->cat().object_count(); ++x) {
            pool.push_back(x);
        }
        auto rep = is_precovering(*gc, cov, pool);
        CHECK(rep.precovering);
        CHECK(rep.kinds_agree);
    }
    SUBCASE("FIX-B assembled map and phi")
    {
        auto b = testfx::fix_b();
        auto oc = build_orbit(b);
        auto cov = canonical_covering(oc);
        auto m = precovering_map(2, *b, cov, 0, 0);
        CHECK(m.matrix.rows() == 2);
        CHECK(m.matrix.cols() == 2);
        CHECK(rank(m.matrix) == 2);
        CHECK(cov.phi(1, 0) == unit_vector(2, 1));
        CHECK(cov.functor.apply(0, 0, Vec{1}) == oc.cat().identity(0));
    }
    SUBCASE("FIX-C at (1,1)")
    {
        auto c = testfx::fix_c();
        auto oc = build_orbit(c);
        auto cov = canonical_covering(oc);
        auto m = precovering_map(2, *c, cov, 0, 0);
        CHECK(m.matrix.rows() == 2);
        CHECK(m.matrix.cols() == 2);
        CHECK(rank(m.matrix) == 2);
    }
    SUBCASE("zero functor with fabricated phi is not a precovering")
    {
        auto c = testfx::fix_c();
        auto oc = build_orbit(c);
        auto cov = canonical_covering(oc);
        for (auto& m : cov.functor.hom_maps) {
            m = Matrix(m.field(), m.rows(), m.cols());
        }
        auto rep = is_precovering(*c, cov, {0, 1});
        CHECK_FALSE(rep.precovering);
        CHECK(rep.pairs[0].rank2 < rep.pairs[0].target_dim);
    }
    SUBCASE("phi scaled by 2 breaks the cocycle")
    {
        auto b = testfx::fix_b();
        auto oc = build_orbit(b);
        auto cov = canonical_covering(oc);
        cov.structure.phi[1].components[0] = vec_scale(PrimeField(), 2, cov.phi(1, 0));
        CHECK_FALSE(validate_invariant_structure(*b, cov).ok());
    }
}

TEST_CASE("property: group relabeling permutes block columns")
{
    auto c = testfx::fix_c();
    auto oc = build_orbit(c);
    auto cov = canonical_covering(oc);
    for (std::size_t x = 0; x < 2; ++x) {
        for (std::size_t y = 0; y < 2; ++y) {
            auto m = precovering_map(2, *c, cov, x, y);
            // linear in each summand: the image of a block column equals the
            // map applied to that summand alone
            for (std::size_t b = 0; b < 2; ++b) {
                for (std::size_t i = 0; i < m.block_dims[b]; ++i) {
                    Vec e = unit_vector(m.matrix.cols(), m.block_offsets[b] + i);
                    Vec twice = m.matrix.apply(vec_scale(PrimeField(), 2, e));
                    CHECK(twice == vec_scale(PrimeField(), 2, m.matrix.col(m.block_offsets[b] + i)));
                }
            }
        }
    }
    // free action: orbit map is injective
    for (std::size_t x = 0; x < 2; ++x) {
        CHECK(c->act(0, x) != c->act(1, x));
    }
}

TEST_CASE("skeleton")
{
    auto c = testfx::fix_c();
    auto oc = build_orbit(c);
    auto s = skeleton(oc, {0});
    CHECK(s.category.object_count() == 1);
    CHECK(s.category.hom_dim(0, 0) == 2);
    CHECK(validate_functor(s.inclusion, s.category, oc.cat()).ok());
    REQUIRE(s.witnesses.size() == 2);
    for (const auto& w : s.witnesses) {
        CHECK(oc.cat().compose(w.object, w.rep, w.object, w.from_rep, w.to_rep) == oc.cat().identity(w.object));
        CHECK(oc.cat().compose(w.rep, w.object, w.rep, w.to_rep, w.from_rep) == oc.cat().identity(w.rep));
    }
    CHECK_THROWS_AS(skeleton(oc, {0, 1}), ValidationError);

    auto a = testfx::fix_a();
    auto sa = skeleton(build_orbit(a), {0});
    CHECK(sa.category == build_orbit(a).cat());

    auto b = testfx::fix_b();
    auto sb = skeleton(build_orbit(b), {0});
    CHECK_FALSE(sb.free);
    CHECK(sb.witnesses.empty());
    CHECK(sb.category.hom_dim(0, 0) == 2);
}
