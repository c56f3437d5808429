#pragma once

// Finite groups acting strictly on linear categories, invariant structures
// for functors out of a G-category, and the assembled precovering maps.

#include <string>
#include <utility>
#include <vector>

#include "orbitcov/lincat.hpp"

namespace orbitcov {

/// Elements are 0..order-1 in table order; every direct sum over G in the
/// library runs through the elements in this order.
class FiniteGroup {
public:
    FiniteGroup() = default;

    /// Validates closure, associativity, identity and inverses.
    static FiniteGroup from_table(std::vector<std::vector<std::size_t>> table, std::vector<std::string> names = {});
    static FiniteGroup trivial();
    static FiniteGroup cyclic(std::size_t n);
    /// S_3 as permutations of {0,1,2}; element 0 is the identity.
    static FiniteGroup symmetric3();

    std::size_t order() const noexcept { return table_.size(); }
    std::size_t mul(std::size_t a, std::size_t b) const { return table_[a][b]; }
    std::size_t identity() const noexcept { return identity_; }
    std::size_t inverse(std::size_t a) const { return inverse_[a]; }
    const std::string& name(std::size_t a) const { return names_[a]; }
    std::optional<std::size_t> find(const std::string& name) const;
    const std::vector<std::vector<std::size_t>>& table() const noexcept { return table_; }

    bool operator==(const FiniteGroup&) const = default;

private:
    std::vector<std::vector<std::size_t>> table_;
    std::vector<std::size_t> inverse_;
    std::vector<std::string> names_;
    std::size_t identity_ = 0;
};

/// A_a for every group element a, as functors C -> C.
struct GroupAction {
    std::vector<FunctorData> automorphisms;

    const FunctorData& of(std::size_t a) const { return automorphisms.at(a); }
    std::size_t act(std::size_t a, std::size_t x) const { return automorphisms.at(a).object_map.at(x); }
};

/// Closes a generating set under composition: A_1 = id and A_{gh} = A_g A_h.
/// Throws ValidationError when two words for the same element disagree.
GroupAction generate_action(const LinearCategory& c, const FiniteGroup& g,
                            const std::vector<std::pair<std::size_t, FunctorData>>& generators);

/// A_a for an action on a single object category with k as endomorphisms, or
/// more generally the identity functor for every element.
GroupAction trivial_action(const LinearCategory& c, const FiniteGroup& g);

struct ActionReport {
    Violations violations;
    bool free = false;  ///< a.x != x for all a != 1 and all objects x
};

ActionReport validate_action(const LinearCategory& c, const FiniteGroup& g, const GroupAction& act);

/// A category with a validated strict group action.
struct GCategory {
    CategoryPtr category;
    FiniteGroup group;
    GroupAction action;
    bool free = false;

    const LinearCategory& cat() const { return *category; }
    std::size_t act(std::size_t a, std::size_t x) const { return action.act(a, x); }
    /// A_a applied to f in C(x,y).
    Vec act_hom(std::size_t a, std::size_t x, std::size_t y, std::span<const Elem> f) const
    {
        return action.of(a).apply(x, y, f);
    }
};

/// Validates and bundles; throws ValidationError listing the first violations.
GCategory make_gcategory(CategoryPtr c, FiniteGroup g, GroupAction act);

/// phi_a : F => F A_a, components phi_{a,x} in D(Fx, F(ax)).
struct InvariantStructure {
    std::vector<NatTransData> phi;
};

/// A G-invariant functor (F, phi) from a G-category into `target`.
struct InvariantFunctor {
    CategoryPtr target;
    FunctorData functor;
    InvariantStructure structure;

    const Vec& phi(std::size_t a, std::size_t x) const { return structure.phi.at(a).components.at(x); }
};

Violations validate_invariant_structure(const GCategory& gc, const InvariantFunctor& f);

struct PrecoveringMapData {
    int kind = 2;
    std::size_t x = 0, y = 0;
    /// Column offset and size of the summand for each group element, table order.
    std::vector<std::size_t> block_offsets;
    std::vector<std::size_t> block_dims;
    Matrix matrix;
};

/// kind 2: (f_b) in (+)_b C(x, by)  ->  sum_b phi_{b^-1, by} F(f_b)
/// kind 1: (f_a) in (+)_a C(ax, y)  ->  sum_a F(f_a) phi_{a, x}
PrecoveringMapData precovering_map(int kind, const GCategory& gc, const InvariantFunctor& f, std::size_t x,
                                   std::size_t y);

struct PrecoveringPair {
    std::size_t x = 0, y = 0;
    std::size_t source_dim = 0, target_dim = 0;
    std::size_t rank2 = 0, rank1 = 0;
    bool bijective2 = false, bijective1 = false;
};

struct PrecoveringReport {
    std::vector<PrecoveringPair> pairs;
    bool precovering = true;   ///< every kind-2 map bijective
    bool kinds_agree = true;   ///< kind-1 and kind-2 verdicts agree pairwise
};

PrecoveringReport is_precovering(const GCategory& gc, const InvariantFunctor& f, const std::vector<std::size_t>& pool);

}  // namespace orbitcov
