#include "doctest.h"

#include <random>

#include "fixtures_util.hpp"
#include "orbitcov/modrep.hpp"

using namespace orbitcov;

namespace {

// Radical of the whole category algebra via its regular trace form.
Subspace regular_category_radical(const LinearCategory& c)
{
    const std::size_t n = c.object_count();
    std::vector<std::size_t> off(n * n + 1, 0);
    for (std::size_t k = 0; k < n * n; ++k) {
        off[k + 1] = off[k] + c.hom_dim(k / n, k % n);
    }
    const std::size_t total = off.back();
    Vec one(total, 0);
    for (std::size_t x = 0; x < n; ++x) {
        const Vec& id = c.identity(x);
        std::copy(id.begin(), id.end(), one.begin() + static_cast<std::ptrdiff_t>(off[x * n + x]));
    }
    auto where = [&](std::size_t s) {
        std::size_t k = 0;
        while (off[k + 1] <= s) {
            ++k;
        }
        return std::pair{k, s - off[k]};
    };
    FdAlgebra alg(c.field(), total, one, [&](std::size_t s, std::size_t t) {
        Vec out(total, 0);
        const auto [ks, is] = where(s);
        const auto [kt, it] = where(t);
        if (ks / n != kt % n) {
            return out;
        }
        auto comp = c.composite(kt / n, kt % n, ks % n, is, it);
        std::copy(comp.begin(), comp.end(), out.begin() + static_cast<std::ptrdiff_t>(off[(kt / n) * n + ks % n]));
        return out;
    });
    return radical(alg);
}

struct FixC {
    std::shared_ptr<const GCategory> gc = testfx::fix_c();
    CategoryPtr c = gc->category;
    Module s1 = simple(c, 0);
    Module s2 = simple(c, 1);
    Module p1 = representable(c, 0);
    Module p2 = representable(c, 1);
};

}  // namespace

TEST_CASE("simples and representables on the two-cycle")
{
    FixC fx;
    CHECK(fx.s1.dims() == std::vector<std::size_t>{1, 0});
    CHECK(fx.s2.dims() == std::vector<std::size_t>{0, 1});
    CHECK(fx.p1.dims() == std::vector<std::size_t>{1, 1});
    CHECK(validate_module(fx.s1).ok());
    CHECK(validate_module(fx.p1).ok());

    auto a = testfx::fix_a();
    Module k = representable(a->category, 0);
    CHECK(k.dims() == std::vector<std::size_t>{1});
}

TEST_CASE("hom_space examples")
{
    FixC fx;
    CHECK(hom_space(fx.s1, fx.s1).dim() == 1);
    CHECK(hom_space(fx.s1, fx.s2).dim() == 0);
    CHECK(hom_space(Module::zero(fx.c), fx.p1).dim() == 0);
    // Yoneda: Hom(P1, S2) = S2(1) = 0
    CHECK(hom_space(fx.p1, fx.s2).dim() == 0);
    CHECK(hom_space(fx.p1, fx.s1).dim() == 1);
    // P1 has socle S2: Hom(S2, P1) = 1, Hom(S1, P1) = 0
    CHECK(hom_space(fx.s2, fx.p1).dim() == 1);
    CHECK(hom_space(fx.s1, fx.p1).dim() == 0);
    for (const auto& u : hom_space(fx.p1, fx.p1).basis()) {
        CHECK(validate_map(u, fx.p1, fx.p1).ok());
    }
}

TEST_CASE("property: Yoneda dimension on random modules")
{
    std::mt19937_64 rng(11);
    FixC fx;
    for (int t = 0; t < 12; ++t) {
        Module m = testfx::random_quotient(fx.c, rng);
        REQUIRE(validate_module(m).ok());
        for (std::size_t x = 0; x < 2; ++x) {
            CHECK(hom_space(representable(fx.c, x), m).dim() == m.dim(x));
        }
    }
}

TEST_CASE("twists")
{
    FixC fx;
    CHECK(twist(*fx.gc, 0, fx.p1) == fx.p1);
    CHECK(twist(*fx.gc, 1, fx.s1) == fx.s2);
    CHECK(twist(*fx.gc, 1, twist(*fx.gc, 1, fx.p1)) == fx.p1);
    std::mt19937_64 rng(5);
    for (int t = 0; t < 6; ++t) {
        Module m = testfx::random_quotient(fx.c, rng);
        for (std::size_t a = 0; a < 2; ++a) {
            for (std::size_t b = 0; b < 2; ++b) {
                CHECK(twist(*fx.gc, a, twist(*fx.gc, b, m)) == twist(*fx.gc, fx.gc->group.mul(a, b), m));
            }
        }
        Module tm = twist(*fx.gc, 1, m);
        CHECK(validate_module(tm).ok());
        for (const auto& u : hom_space(m, m).basis()) {
            CHECK(validate_map(twist_map(*fx.gc, 1, u), tm, tm).ok());
        }
    }
}

TEST_CASE("direct sums")
{
    FixC fx;
    CHECK(direct_sum(fx.c, {}).sum.is_zero());
    auto ds = direct_sum(fx.c, {fx.s1, fx.s2});
    CHECK(ds.sum.dims() == std::vector<std::size_t>{1, 1});
    auto d3 = direct_sum(fx.c, {fx.s1, fx.p1, fx.p2});
    CHECK(validate_module(d3.sum).ok());
    ModuleMap total = zero_map(d3.sum, d3.sum);
    for (std::size_t i = 0; i < 3; ++i) {
        total = add(total, compose(d3.injections[i], d3.projections[i]));
        for (std::size_t j = 0; j < 3; ++j) {
            ModuleMap pq = compose(d3.projections[i], d3.injections[j]);
            if (i == j) {
                CHECK(pq == identity_map(i == 0 ? fx.s1 : i == 1 ? fx.p1 : fx.p2));
            } else {
                CHECK(is_zero_map(pq));
            }
        }
    }
    CHECK(total == identity_map(d3.sum));
}

TEST_CASE("projective epis")
{
    FixC fx;
    auto pe = projective_epi(fx.p1);
    CHECK(validate_map(pe.epi, pe.projective, fx.p1).ok());
    // split: solve epi . s = id over Hom(P1, P)
    HomSpace back = hom_space(fx.p1, pe.projective);
    HomSpace endo = hom_space(fx.p1, fx.p1);
    std::vector<Vec> cols;
    for (const auto& s : back.basis()) {
        cols.push_back(endo.coords(compose(pe.epi, s)));
    }
    Matrix a = Matrix::from_col_vectors(PrimeField(), endo.dim(), cols);
    CHECK(solve_vec(a, endo.coords(identity_map(fx.p1))).has_value());
    // P1 is generated by its top at 1, so the cover is P1 itself
    CHECK(pe.tops == std::vector<std::size_t>{0});
    CHECK(pe.projective.total_dim() == fx.p1.total_dim());
    auto ps = projective_epi(direct_sum(fx.c, {fx.s1, fx.s2, fx.p2}).sum);
    CHECK(ps.projective.total_dim() == 2 + 2 + 2);
    CHECK(projective_epi(Module::zero(fx.c)).projective.is_zero());

    auto b = testfx::fix_b();
    auto oc = build_orbit(b);
    auto simples = simples_at(oc.category(), 0);
    REQUIRE(simples.size() == 2);
    auto pb = projective_epi(simples[0]);
    CHECK(pb.projective.total_dim() == 2);
    CHECK(rank(pb.epi.comps[0]) == 1);
}

TEST_CASE("category radical agrees with the regular trace form")
{
    std::vector<std::shared_ptr<const LinearCategory>> cats;
    for (const auto& gc : {testfx::fix_a(), testfx::fix_b(), testfx::fix_c()}) {
        cats.push_back(gc->category);
        cats.push_back(build_orbit(gc).category());
    }
    for (const auto& c : cats) {
        Subspace mine = category_radical(*c);
        Subspace oracle = regular_category_radical(*c);
        CHECK(mine.dim() == oracle.dim());
        for (std::size_t r = 0; r < mine.dim(); ++r) {
            CHECK(oracle.contains(mine.vector(r)));
        }
    }
    // the two-cycle: rad is spanned by alpha and beta; k[Z/2] downstairs at p = 101 is semisimple
    CHECK(category_radical(*testfx::fix_c()->category).dim() == 2);
    CHECK(category_radical(*build_orbit(testfx::fix_b()).category()).dim() == 0);
}

TEST_CASE("decomposition when dim End reaches p")
{
    // over F_3, End(S1 + S1) = M_2 has dimension 4 but acts on a 2-dimensional space
    auto gc = testfx::fix_c(PrimeField(3));
    Module s1 = simple(gc->category, 0);
    Module twice = direct_sum(gc->category, {s1, s1}).sum;
    CHECK(end_algebra(twice).algebra.dim() == 4);
    auto parts = decompose(twice, 1);
    REQUIRE(parts.size() == 2);
    CHECK(is_indecomposable(parts[0].module));
    Module thrice = direct_sum(gc->category, {s1, s1, s1}).sum;
    CHECK_THROWS_AS(decompose(thrice, 1), FieldTooSmall);
}

TEST_CASE("decomposition examples")
{
    FixC fx;
    CHECK(is_indecomposable(fx.s1));
    CHECK(end_algebra(fx.s1).algebra.dim() == 1);

    auto ds = direct_sum(fx.c, {fx.s1, fx.s1});
    auto parts = decompose(ds.sum, 3);
    REQUIRE(parts.size() == 2);
    for (const auto& p : parts) {
        CHECK(p.module.dims() == std::vector<std::size_t>{1, 0});
        CHECK(is_indecomposable(p.module));
        CHECK(compose(p.projection, p.inclusion) == identity_map(p.module));
    }

    // regular module of k[x]/(x^2) on the one-object skeleton
    auto oc = build_orbit(fx.gc);
    auto sk = skeleton(oc, {0});
    auto skc = std::make_shared<LinearCategory>(sk.category);
    Module reg = representable(skc, 0);
    CHECK(is_indecomposable(reg));
    auto end = end_algebra(reg);
    CHECK(end.algebra.dim() == 2);
    CHECK(radical(end.algebra).dim() == 1);
    CHECK(simple(skc, 0).dims() == std::vector<std::size_t>{1});
}

TEST_CASE("property: idempotents and reassembly")
{
    std::mt19937_64 rng(99);
    FixC fx;
    for (int t = 0; t < 10; ++t) {
        Module a = testfx::random_quotient(fx.c, rng);
        Module b = testfx::random_quotient(fx.c, rng);
        Module m = direct_sum(fx.c, {a, b}).sum;
        auto parts = decompose(m, static_cast<std::uint64_t>(t));
        ModuleMap total = zero_map(m, m);
        for (std::size_t i = 0; i < parts.size(); ++i) {
            CHECK(is_indecomposable(parts[i].module));
            ModuleMap e = compose(parts[i].inclusion, parts[i].projection);
            CHECK(compose(e, e) == e);
            for (std::size_t j = 0; j < parts.size(); ++j) {
                if (i != j) {
                    CHECK(is_zero_map(compose(parts[j].projection, parts[i].inclusion)));
                }
            }
            total = add(total, e);
        }
        CHECK(total == identity_map(m));
    }
}

TEST_CASE("submodules and quotients")
{
    FixC fx;
    // socle of P1 is S2
    HomSpace h = hom_space(fx.s2, fx.p1);
    REQUIRE(h.dim() == 1);
    Quotient q = cokernel(h.basis(0), fx.p1);
    CHECK(q.module.dims() == std::vector<std::size_t>{1, 0});
    CHECK(validate_module(q.module).ok());
    Submodule im = image(h.basis(0), fx.p1);
    CHECK(im.module.dims() == std::vector<std::size_t>{0, 1});
    Submodule k = kernel(q.projection, fx.p1);
    CHECK(k.module.dims() == std::vector<std::size_t>{0, 1});
    CHECK(top(fx.p1).module.dims() == std::vector<std::size_t>{1, 0});
    CHECK_THROWS_AS(submodule(fx.p1, {Subspace::full(PrimeField(), 1), Subspace(PrimeField(), 1)}),
                    ValidationError);
}
