#pragma once

// Finite-dimensional linear categories presented by bound quivers.

#include <memory>
#include <string>
#include <vector>

#include "orbitcov/exactla.hpp"

namespace orbitcov {

/// A path is a list of arrow indices in traversal order: {a, b} is a followed
/// by b, i.e. the morphism b . a. A path of length zero is the trivial path at
/// `vertex`.
struct Path {
    std::size_t vertex = 0;  ///< start vertex (used only for trivial paths)
    std::vector<std::size_t> arrows;

    bool operator==(const Path&) const = default;
};

struct Arrow {
    std::string name;
    std::size_t source = 0;
    std::size_t target = 0;
};

struct RelationTerm {
    std::int64_t coeff = 1;
    Path path;
};

using Relation = std::vector<RelationTerm>;

struct QuiverPresentation {
    std::vector<std::string> vertices;
    std::vector<Arrow> arrows;
    std::vector<Relation> relations;

    std::size_t path_source(const Path& p) const;
    std::size_t path_target(const Path& p) const;
    std::string path_name(const Path& p) const;
};

class LinearCategory {
public:
    LinearCategory() = default;
    LinearCategory(PrimeField field, std::vector<std::string> object_names,
                   std::vector<std::vector<std::string>> basis_labels);

    PrimeField field() const noexcept { return field_; }
    std::size_t object_count() const noexcept { return names_.size(); }
    const std::string& object_name(std::size_t x) const { return names_.at(x); }
    const std::vector<std::string>& object_names() const noexcept { return names_; }
    std::size_t hom_dim(std::size_t x, std::size_t y) const { return labels_[pair(x, y)].size(); }
    const std::vector<std::string>& basis_labels(std::size_t x, std::size_t y) const
    {
        return labels_[pair(x, y)];
    }
    std::size_t total_dim() const;

    const Vec& identity(std::size_t x) const { return identity_.at(x); }
    void set_identity(std::size_t x, Vec coords);

    /// Coordinates in C(x,z) of g_j . f_i for f_i in C(x,y), g_j in C(y,z).
    std::span<const Elem> composite(std::size_t x, std::size_t y, std::size_t z, std::size_t j,
                                    std::size_t i) const;
    void set_composite(std::size_t x, std::size_t y, std::size_t z, std::size_t j, std::size_t i,
                       std::span<const Elem> coords);

    /// Bilinear composition g . f with g in C(y,z), f in C(x,y).
    Vec compose(std::size_t x, std::size_t y, std::size_t z, std::span<const Elem> g,
                std::span<const Elem> f) const;

    /// Index of the basis element equal to the identity, if the identity is a basis vector.
    std::optional<std::size_t> identity_basis_index(std::size_t x) const;

    bool operator==(const LinearCategory& other) const;

private:
    std::size_t pair(std::size_t x, std::size_t y) const { return x * names_.size() + y; }
    std::size_t triple(std::size_t x, std::size_t y, std::size_t z) const
    {
        return (x * names_.size() + y) * names_.size() + z;
    }

    PrimeField field_{};
    std::vector<std::string> names_;
    std::vector<std::vector<std::string>> labels_;  // per pair
    std::vector<Vec> identity_;
    std::vector<std::vector<Elem>> comp_;  // per triple, [j][i][k]
};

using CategoryPtr = std::shared_ptr<const LinearCategory>;

/// Result of building a path category: the category plus the normal-form map
/// from paths to coordinates.
class PathCategory {
public:
    const QuiverPresentation& presentation() const noexcept { return quiver_; }
    const CategoryPtr& category() const noexcept { return cat_; }
    /// Coordinates of a path in C(source, target).
    Vec path_coords(const Path& p) const;
    /// Longest nonzero path length plus one.
    std::size_t nilpotency_bound() const noexcept { return bound_; }
    /// Basis paths of C(x,y) in basis order.
    const std::vector<Path>& basis_paths(std::size_t x, std::size_t y) const
    {
        return basis_paths_[x * quiver_.vertices.size() + y];
    }

private:
    friend PathCategory build_category(const QuiverPresentation& q, PrimeField field, std::size_t dim_cap);

    QuiverPresentation quiver_;
    CategoryPtr cat_;
    std::size_t bound_ = 0;
    std::vector<std::vector<Path>> paths_;        // per pair, all paths of length < bound, sorted
    std::vector<Subspace> relations_;             // per pair, in path coordinates
    std::vector<std::vector<std::size_t>> free_;  // per pair, non-pivot path indices = basis
    std::vector<std::vector<Path>> basis_paths_;
};

/// Path category k[Q]/I. Paths are ordered by (length, lexicographic arrow
/// sequence); the basis of each hom space is the set of non-pivot paths.
PathCategory build_category(const QuiverPresentation& q, PrimeField field, std::size_t dim_cap = 4096);

struct Violations {
    std::vector<std::string> items;
    bool ok() const noexcept { return items.empty(); }
    void add(std::string s) { items.push_back(std::move(s)); }
    void append(const Violations& o) { items.insert(items.end(), o.items.begin(), o.items.end()); }
};

Violations validate_category(const LinearCategory& c);

/// A k-linear functor: object map and, per pair (x,y), the matrix
/// C(x,y) -> D(Fx,Fy) in basis coordinates.
struct FunctorData {
    std::vector<std::size_t> object_map;
    std::vector<Matrix> hom_maps;  // index x * n + y

    std::size_t source_count() const noexcept { return object_map.size(); }
    const Matrix& on(std::size_t x, std::size_t y) const { return hom_maps[x * object_map.size() + y]; }
    Vec apply(std::size_t x, std::size_t y, std::span<const Elem> f) const { return on(x, y).apply(f); }
    bool operator==(const FunctorData&) const = default;
};

FunctorData identity_functor(const LinearCategory& c);
/// Endofunctor of a path category determined by an object permutation and the
/// image of each arrow (coordinates in C(F s, F t)). Throws ValidationError when
/// an image has the wrong length or the result does not respect relations.
FunctorData functor_from_arrow_images(const PathCategory& pc, std::vector<std::size_t> object_map,
                                      const std::vector<Vec>& arrow_images);
/// g . f (apply f first).
FunctorData compose_functors(const FunctorData& g, const FunctorData& f);
Violations validate_functor(const FunctorData& f, const LinearCategory& src, const LinearCategory& tgt);

/// Components alpha_x in D(Fx, Gx).
struct NatTransData {
    std::vector<Vec> components;
};

Violations validate_nat_trans(const NatTransData& alpha, const FunctorData& f, const FunctorData& g,
                              const LinearCategory& src, const LinearCategory& tgt);

LinearCategory opposite(const LinearCategory& c);
LinearCategory full_subcategory(const LinearCategory& c, const std::vector<std::size_t>& objects);

/// Matrix of h -> g . h from D(w,x) to D(w,y) for fixed g in D(x,y).
Matrix post_composition(const LinearCategory& c, std::size_t w, std::size_t x, std::size_t y,
                        std::span<const Elem> g);
/// Matrix of h -> h . f from D(y,z) to D(x,z) for fixed f in D(x,y).
Matrix pre_composition(const LinearCategory& c, std::size_t x, std::size_t y, std::size_t z,
                       std::span<const Elem> f);
/// True iff f in C(x,y) has a two-sided inverse.
bool is_iso_morphism(const LinearCategory& c, std::size_t x, std::size_t y, std::span<const Elem> f);

}  // namespace orbitcov
