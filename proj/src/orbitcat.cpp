#include "orbitcov/orbitcat.hpp"

namespace orbitcov {

std::size_t OrbitCategory::block_offset(std::size_t x, std::size_t y, std::size_t b) const
{
    const std::size_t n = base_->cat().object_count();
    return offsets_.at((x * n + y) * base_->group.order() + b);
}

std::size_t OrbitCategory::block_dim(std::size_t x, std::size_t y, std::size_t b) const
{
    return base_->cat().hom_dim(x, base_->act(b, y));
}

Vec OrbitCategory::embed(std::size_t x, std::size_t y, std::size_t b, std::span<const Elem> f) const
{
    if (f.size() != block_dim(x, y, b)) {
        throw DimensionMismatch("embed: morphism does not live in C(x, by)");
    }
    Vec out(cat_->hom_dim(x, y), 0);
    std::copy(f.begin(), f.end(), out.begin() + static_cast<std::ptrdiff_t>(block_offset(x, y, b)));
    return out;
}

Vec OrbitCategory::slice(std::size_t x, std::size_t y, std::size_t b, std::span<const Elem> g) const
{
    const auto first = g.begin() + static_cast<std::ptrdiff_t>(block_offset(x, y, b));
    return Vec(first, first + static_cast<std::ptrdiff_t>(block_dim(x, y, b)));
}

OrbitCategory build_orbit(std::shared_ptr<const GCategory> gc)
{
    const LinearCategory& c = gc->cat();
    const FiniteGroup& g = gc->group;
    const std::size_t n = c.object_count();
    const std::size_t order = g.order();

    OrbitCategory oc;
    oc.base_ = gc;
    oc.offsets_.resize(n * n * order);
    std::vector<std::vector<std::string>> labels(n * n);
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
            std::size_t off = 0;
            for (std::size_t b = 0; b < order; ++b) {
                oc.offsets_[(x * n + y) * order + b] = off;
                const std::size_t by = gc->act(b, y);
                for (const auto& l : c.basis_labels(x, by)) {
                    labels[x * n + y].push_back(order == 1 ? l : l + "|" + g.name(b));
                }
                off += c.hom_dim(x, by);
            }
        }
    }
    auto cat = std::make_shared<LinearCategory>(c.field(), c.object_names(), labels);
    oc.cat_ = cat;
    for (std::size_t x = 0; x < n; ++x) {
        cat->set_identity(x, oc.embed(x, x, g.identity(), c.identity(x)));
    }
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
            for (std::size_t z = 0; z < n; ++z) {
                for (std::size_t b1 = 0; b1 < order; ++b1) {
                    const std::size_t b1y = gc->act(b1, y);
                    const std::size_t d1 = c.hom_dim(x, b1y);
                    for (std::size_t b2 = 0; b2 < order; ++b2) {
                        const std::size_t b2z = gc->act(b2, z);
                        const std::size_t b12 = g.mul(b1, b2);
                        const std::size_t b12z = gc->act(b12, z);
                        const std::size_t d2 = c.hom_dim(y, b2z);
                        for (std::size_t j = 0; j < d2; ++j) {
                            // A_{b1}(g_j) in C(b1 y, b1 b2 z)
                            Vec moved = gc->act_hom(b1, y, b2z, unit_vector(d2, j));
                            for (std::size_t i = 0; i < d1; ++i) {
                                Vec comp = c.compose(x, b1y, b12z, moved, unit_vector(d1, i));
                                cat->set_composite(x, y, z, oc.block_offset(y, z, b2) + j,
                                                   oc.block_offset(x, y, b1) + i, oc.embed(x, z, b12, comp));
                            }
                        }
                    }
                }
            }
        }
    }
    return oc;
}

InvariantFunctor canonical_covering(const OrbitCategory& oc)
{
    const GCategory& gc = oc.base();
    const LinearCategory& c = gc.cat();
    const FiniteGroup& g = gc.group;
    const std::size_t n = c.object_count();

    InvariantFunctor f;
    f.target = oc.category();
    f.functor.object_map.resize(n);
    for (std::size_t x = 0; x < n; ++x) {
        f.functor.object_map[x] = x;
    }
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
            Matrix m(c.field(), oc.cat().hom_dim(x, y), c.hom_dim(x, y));
            const std::size_t off = oc.block_offset(x, y, g.identity());
            for (std::size_t i = 0; i < c.hom_dim(x, y); ++i) {
                m(off + i, i) = 1;
            }
            f.functor.hom_maps.push_back(std::move(m));
        }
    }
    for (std::size_t a = 0; a < g.order(); ++a) {
        NatTransData phi;
        for (std::size_t x = 0; x < n; ++x) {
            // C/G(x, ax) block a^-1 is C(x, a^-1 a x) = C(x, x)
            phi.components.push_back(oc.embed(x, gc.act(a, x), g.inverse(a), c.identity(x)));
        }
        f.structure.phi.push_back(std::move(phi));
    }
    return f;
}

OrbitFamily orbit_family(const OrbitCategory& oc, std::size_t x, std::size_t y, std::span<const Elem> f)
{
    const GCategory& gc = oc.base();
    const FiniteGroup& g = gc.group;
    OrbitFamily fam(g.order(), std::vector<Vec>(g.order()));
    for (std::size_t b = 0; b < g.order(); ++b) {
        for (std::size_t a = 0; a < g.order(); ++a) {
            // f_{b,a} = A_a(f_{a^-1 b})
            const std::size_t c = g.mul(g.inverse(a), b);
            fam[b][a] = gc.act_hom(a, x, gc.act(c, y), oc.slice(x, y, c, f));
        }
    }
    return fam;
}

OrbitFamily family_compose(const OrbitCategory& oc, std::size_t x, std::size_t y, std::size_t z, const OrbitFamily& g,
                           const OrbitFamily& f)
{
    const GCategory& gc = oc.base();
    const LinearCategory& c = gc.cat();
    const std::size_t order = gc.group.order();
    OrbitFamily out(order, std::vector<Vec>(order));
    for (std::size_t b = 0; b < order; ++b) {
        for (std::size_t a = 0; a < order; ++a) {
            Vec acc(c.hom_dim(gc.act(a, x), gc.act(b, z)), 0);
            for (std::size_t k = 0; k < order; ++k) {
                Vec term = c.compose(gc.act(a, x), gc.act(k, y), gc.act(b, z), g[b][k], f[k][a]);
                vec_axpy(c.field(), 1, term, acc);
            }
            out[b][a] = std::move(acc);
        }
    }
    return out;
}

DoubleSumReport check_double_sum(const OrbitCategory& oc)
{
    DoubleSumReport rep;
    const LinearCategory& q = oc.cat();
    const std::size_t n = q.object_count();
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
            for (std::size_t z = 0; z < n; ++z) {
                for (std::size_t i = 0; i < q.hom_dim(x, y); ++i) {
                    const Vec f = unit_vector(q.hom_dim(x, y), i);
                    const OrbitFamily ff = orbit_family(oc, x, y, f);
                    for (std::size_t j = 0; j < q.hom_dim(y, z); ++j) {
                        const Vec g = unit_vector(q.hom_dim(y, z), j);
                        OrbitFamily prod = family_compose(oc, x, y, z, orbit_family(oc, y, z, g), ff);
                        ++rep.checked;
                        if (prod != orbit_family(oc, x, z, q.compose(x, y, z, g, f))) {
                            ++rep.mismatches;
                        }
                    }
                }
            }
        }
    }
    return rep;
}

Skeleton skeleton(const OrbitCategory& oc, const std::vector<std::size_t>& reps)
{
    const GCategory& gc = oc.base();
    const FiniteGroup& g = gc.group;
    const std::size_t n = gc.cat().object_count();

    // orbit_of[x] = (index into reps, element a with x = a rep)
    std::vector<std::optional<std::pair<std::size_t, std::size_t>>> orbit_of(n);
    for (std::size_t r = 0; r < reps.size(); ++r) {
        if (reps[r] >= n) {
            throw ValidationError("skeleton: representative out of range");
        }
        for (std::size_t a = 0; a < g.order(); ++a) {
            const std::size_t x = gc.act(a, reps[r]);
            if (orbit_of[x] && orbit_of[x]->first != r) {
                throw ValidationError("skeleton: representatives " + gc.cat().object_name(reps[orbit_of[x]->first]) +
                                      " and " + gc.cat().object_name(reps[r]) + " lie in one orbit");
            }
            if (!orbit_of[x]) {
                orbit_of[x] = std::make_pair(r, a);
            }
        }
    }
    for (std::size_t x = 0; x < n; ++x) {
        if (!orbit_of[x]) {
            throw ValidationError("skeleton: the orbit of " + gc.cat().object_name(x) + " has no representative");
        }
    }

    Skeleton s;
    s.reps = reps;
    s.category = full_subcategory(oc.cat(), reps);
    s.free = gc.free;
    s.inclusion.object_map = reps;
    for (auto x : reps) {
        for (auto y : reps) {
            s.inclusion.hom_maps.push_back(Matrix::identity(gc.cat().field(), oc.cat().hom_dim(x, y)));
        }
    }
    if (!s.free) {
        return s;
    }
    InvariantFunctor cov = canonical_covering(oc);
    for (std::size_t x = 0; x < n; ++x) {
        const auto [r, a] = *orbit_of[x];
        IsoWitness w;
        w.object = x;
        w.rep = reps[r];
        w.element = a;
        w.to_rep = cov.phi(g.inverse(a), x);  // x -> a^-1 x = rep
        w.from_rep = cov.phi(a, reps[r]);     // rep -> a rep = x
        s.witnesses.push_back(std::move(w));
    }
    return s;
}

}  // namespace orbitcov
