#pragma once

// Programmatic versions of the three reference fixtures, built without the
// fixture parser so parser tests have something independent to compare to.

#include <memory>
#include <random>

#include "orbitcov/modrep.hpp"
#include "orbitcov/morph.hpp"
#include "orbitcov/orbitcat.hpp"

namespace testfx {

using namespace orbitcov;

inline QuiverPresentation point_quiver()
{
    QuiverPresentation q;
    q.vertices = {"*"};
    return q;
}

inline QuiverPresentation two_cycle_quiver()
{
    QuiverPresentation q;
    q.vertices = {"1", "2"};
    q.arrows = {{"alpha", 0, 1}, {"beta", 1, 0}};
    q.relations = {{{1, Path{0, {0, 1}}}}, {{1, Path{1, {1, 0}}}}};
    return q;
}

inline std::shared_ptr<const GCategory> fix_a(PrimeField f = PrimeField())
{
    auto pc = build_category(point_quiver(), f);
    auto g = FiniteGroup::trivial();
    return std::make_shared<GCategory>(make_gcategory(pc.category(), g, trivial_action(*pc.category(), g)));
}

inline std::shared_ptr<const GCategory> fix_b(PrimeField f = PrimeField())
{
    auto pc = build_category(point_quiver(), f);
    auto g = FiniteGroup::cyclic(2);
    return std::make_shared<GCategory>(make_gcategory(pc.category(), g, trivial_action(*pc.category(), g)));
}

/// The swap 1 <-> 2, alpha <-> beta on the two-cycle with zero composites.
inline FunctorData two_cycle_swap(const LinearCategory& c)
{
    FunctorData swap;
    swap.object_map = {1, 0};
    for (std::size_t x = 0; x < 2; ++x) {
        for (std::size_t y = 0; y < 2; ++y) {
            swap.hom_maps.push_back(Matrix::identity(c.field(), c.hom_dim(x, y)));
        }
    }
    return swap;
}

inline std::shared_ptr<const GCategory> fix_c(PrimeField f = PrimeField())
{
    auto pc = build_category(two_cycle_quiver(), f);
    auto g = FiniteGroup::cyclic(2);
    auto act = generate_action(*pc.category(), g, {{1, two_cycle_swap(*pc.category())}});
    return std::make_shared<GCategory>(make_gcategory(pc.category(), g, act));
}

// Random module: a seeded quotient of a sum of representables.
inline Module random_quotient(const CategoryPtr& c, std::mt19937_64& rng)
{
    std::vector<Module> parts;
    std::uniform_int_distribution<std::size_t> obj(0, c->object_count() - 1);
    std::uniform_int_distribution<int> count(1, 2);
    const int k = count(rng);
    for (int i = 0; i < k; ++i) {
        parts.push_back(representable(c, obj(rng)));
    }
    DirectSum ds = direct_sum(c, parts);
    // kill the submodule generated by one random element at a random object
    const std::size_t x = obj(rng);
    if (ds.sum.dim(x) == 0) {
        return ds.sum;
    }
    std::uniform_int_distribution<std::uint32_t> coin(0, c->field().p() - 1);
    Vec v(ds.sum.dim(x));
    for (auto& e : v) {
        e = coin(rng);
    }
    ModuleMap gen = yoneda_map(ds.sum, x, v);
    return cokernel(gen, ds.sum).module;
}

// Random element of Hom(X, Y) for two random quotients X, Y.
inline MorphObject random_arrow(const CategoryPtr& c, std::mt19937_64& rng)
{
    Module x = random_quotient(c, rng);
    Module y = random_quotient(c, rng);
    HomSpace h = hom_space(x, y);
    std::uniform_int_distribution<std::uint32_t> coin(0, c->field().p() - 1);
    Vec co(h.dim());
    for (auto& e : co) {
        e = coin(rng);
    }
    return {x, y, h.combine(co)};
}

/// One loop x with x^2 = 0.
inline QuiverPresentation dual_numbers_quiver()
{
    QuiverPresentation q;
    q.vertices = {"*"};
    q.arrows = {{"x", 0, 0}};
    q.relations = {{{1, Path{0, {0, 0}}}}};
    return q;
}

}  // namespace testfx
