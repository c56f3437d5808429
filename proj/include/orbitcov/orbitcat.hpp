#pragma once

// The orbit category C/G, the canonical covering (P, phi) and skeleta.

#include <memory>

#include "orbitcov/groupact.hpp"

namespace orbitcov {

/// C/G with the same objects as C. A morphism x -> y is stored by its slice
/// (f_{b,1})_b in (+)_b C(x, by), blocks in group order.
class OrbitCategory {
public:
    OrbitCategory() = default;

    const GCategory& base() const { return *base_; }
    std::shared_ptr<const GCategory> base_ptr() const noexcept { return base_; }
    const CategoryPtr& category() const noexcept { return cat_; }
    const LinearCategory& cat() const { return *cat_; }

    std::size_t block_offset(std::size_t x, std::size_t y, std::size_t b) const;
    std::size_t block_dim(std::size_t x, std::size_t y, std::size_t b) const;
    /// f in C(x, by) placed in block b of C/G(x, y).
    Vec embed(std::size_t x, std::size_t y, std::size_t b, std::span<const Elem> f) const;
    /// The b-block of a C/G(x,y) element, in C(x, by).
    Vec slice(std::size_t x, std::size_t y, std::size_t b, std::span<const Elem> g) const;

    friend OrbitCategory build_orbit(std::shared_ptr<const GCategory> gc);

private:
    std::shared_ptr<const GCategory> base_;
    CategoryPtr cat_;
    std::vector<std::size_t> offsets_;  // [(x*n + y) * |G| + b]
};

/// Composition of basis morphisms f = (b1, f_i), g = (b2, g_j) lands in block
/// b1 b2 as A_{b1}(g_j) . f_i.
OrbitCategory build_orbit(std::shared_ptr<const GCategory> gc);

/// P(f) = f in block 1 and phi_{c,x} = 1_x in block c^-1 of C/G(x, cx).
InvariantFunctor canonical_covering(const OrbitCategory& oc);

/// f in C/G(x, y) as the equivariant family f_{b,a} in C(ax, by), indexed [b][a].
using OrbitFamily = std::vector<std::vector<Vec>>;
OrbitFamily orbit_family(const OrbitCategory& oc, std::size_t x, std::size_t y, std::span<const Elem> f);
/// (g f)_{b,a} = sum_c g_{b,c} f_{c,a}
OrbitFamily family_compose(const OrbitCategory& oc, std::size_t x, std::size_t y, std::size_t z, const OrbitFamily& g,
                           const OrbitFamily& f);

struct DoubleSumReport {
    std::size_t checked = 0;
    std::size_t mismatches = 0;
};
/// Compares composition in C/G with the family product on all basis pairs.
DoubleSumReport check_double_sum(const OrbitCategory& oc);

struct IsoWitness {
    std::size_t object = 0;
    std::size_t rep = 0;
    std::size_t element = 0;  ///< object = element . rep
    Vec to_rep;               ///< in C/G(object, rep)
    Vec from_rep;             ///< in C/G(rep, object)
};

struct Skeleton {
    std::vector<std::size_t> reps;
    LinearCategory category;
    FunctorData inclusion;  ///< skeleton -> C/G
    bool free = false;      ///< witnesses are only emitted for free actions
    std::vector<IsoWitness> witnesses;
};

/// Throws ValidationError when `reps` is not a transversal of the orbits.
Skeleton skeleton(const OrbitCategory& oc, const std::vector<std::size_t>& reps);

}  // namespace orbitcov
