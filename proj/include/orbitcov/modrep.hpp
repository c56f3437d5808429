#pragma once

// Finite-dimensional right modules over a linear category, i.e. contravariant
// functors C -> mod-k. For e in C(x,y) the matrix M(e) maps M(y) -> M(x), so
// M(g . f) = M(f) M(g) and a map u : M -> N is natural iff
// u_x M(e) = N(e) u_y.

#include <cstdint>
#include <vector>

#include "orbitcov/algebra.hpp"
#include "orbitcov/groupact.hpp"

namespace orbitcov {

class Module {
public:
    Module() = default;
    /// `actions[x * n + y][i]` is M(e_i) for the i-th basis element of C(x,y).
    Module(CategoryPtr c, std::vector<std::size_t> dims, std::vector<std::vector<Matrix>> actions);
    static Module zero(CategoryPtr c);

    const CategoryPtr& category() const noexcept { return cat_; }
    const LinearCategory& cat() const { return *cat_; }
    PrimeField field() const { return cat_->field(); }
    std::size_t object_count() const { return dims_.size(); }
    std::size_t dim(std::size_t x) const { return dims_.at(x); }
    const std::vector<std::size_t>& dims() const noexcept { return dims_; }
    std::size_t total_dim() const;
    bool is_zero() const { return total_dim() == 0; }

    const Matrix& action(std::size_t x, std::size_t y, std::size_t i) const { return actions_[x * dims_.size() + y][i]; }
    /// M(e) for a general element e in C(x,y).
    Matrix act(std::size_t x, std::size_t y, std::span<const Elem> e) const;

    bool operator==(const Module& o) const;

private:
    CategoryPtr cat_;
    std::vector<std::size_t> dims_;
    std::vector<std::vector<Matrix>> actions_;
};

/// Checks shapes, identities and M(g . f) = M(f) M(g) on all basis pairs.
Violations validate_module(const Module& m);

struct ModuleMap {
    std::vector<Matrix> comps;  ///< u_x : M(x) -> N(x)

    bool operator==(const ModuleMap&) const = default;
};

ModuleMap identity_map(const Module& m);
ModuleMap zero_map(const Module& from, const Module& to);
/// v . u
ModuleMap compose(const ModuleMap& v, const ModuleMap& u);
ModuleMap add(const ModuleMap& a, const ModuleMap& b);
ModuleMap scale(PrimeField f, Elem s, const ModuleMap& a);
bool is_zero_map(const ModuleMap& u);
bool is_iso(const ModuleMap& u);
Violations validate_map(const ModuleMap& u, const Module& from, const Module& to);

/// Hom(M, N) as a subspace of the flattened component space; the canonical
/// echelon basis is the basis of the hom space.
class HomSpace {
public:
    HomSpace() = default;
    HomSpace(const Module& from, const Module& to, Subspace space);

    std::size_t dim() const noexcept { return space_.dim(); }
    std::size_t flat_dim() const noexcept { return space_.ambient_dim(); }
    const Subspace& space() const noexcept { return space_; }
    ModuleMap basis(std::size_t i) const { return unflatten(space_.vector(i)); }
    std::vector<ModuleMap> basis() const;
    Vec flatten(const ModuleMap& u) const;
    ModuleMap unflatten(std::span<const Elem> v) const;
    /// Coordinates in the echelon basis; throws if u is not natural.
    Vec coords(const ModuleMap& u) const;
    ModuleMap combine(std::span<const Elem> coeffs) const;

private:
    PrimeField field_{};
    std::vector<std::size_t> rows_, cols_, offsets_;
    Subspace space_;
};

HomSpace hom_space(const Module& m, const Module& n);

/// ^aM(x) = M(a^-1 x), ^aM(e) = M(A_{a^-1} e).
Module twist(const GCategory& gc, std::size_t a, const Module& m);
/// (^au)_x = u_{a^-1 x}
ModuleMap twist_map(const GCategory& gc, std::size_t a, const ModuleMap& u);

/// C(-, x).
Module representable(const CategoryPtr& c, std::size_t x);
/// The Yoneda map C(-, x) -> M sending 1_x to v in M(x).
ModuleMap yoneda_map(const Module& m, std::size_t x, std::span<const Elem> v);

struct DirectSum {
    Module sum;
    std::vector<ModuleMap> injections;
    std::vector<ModuleMap> projections;
};

/// `c` fixes the category for the empty sum.
DirectSum direct_sum(const CategoryPtr& c, const std::vector<Module>& parts);

struct ProjectiveCover {
    Module projective;        ///< sum of representables on a generating set of M
    ModuleMap epi;            ///< evaluation map onto M
    std::vector<std::size_t> tops;  ///< object of each representable summand
};

ProjectiveCover projective_epi(const Module& m);

/// Submodule generated by per-object subspaces (must be closed under the action).
struct Submodule {
    Module module;
    ModuleMap inclusion;
};
Submodule submodule(const Module& m, const std::vector<Subspace>& parts);

struct Quotient {
    Module module;
    ModuleMap projection;
};
Quotient quotient(const Module& m, const std::vector<Subspace>& parts);

Submodule image(const ModuleMap& u, const Module& to);
Submodule kernel(const ModuleMap& u, const Module& from);
Quotient cokernel(const ModuleMap& u, const Module& to);

/// Jacobson radical of the category algebra (+)_{x,y} C(x,y), assembled from
/// rad(x,y) = { u : v u in rad End(x) for all v in C(y,x) }; needs p > dim End(x).
Subspace category_radical(const LinearCategory& c);
/// M / M rad C.
Quotient top(const Module& m);

struct EndAlgebra {
    HomSpace hom;
    FdAlgebra algebra;  ///< basis = hom basis, product = composition
};

/// Sum over objects of the traces of the components, one entry per map.
Vec map_traces(const std::vector<ModuleMap>& maps);

/// Throws FieldTooSmall (from the radical) when p <= total dim M.
EndAlgebra end_algebra(const Module& m);

struct Summand {
    Module module;
    ModuleMap inclusion;   ///< summand -> M
    ModuleMap projection;  ///< M -> summand
};

/// The summand Im e of M for an idempotent endomorphism e.
Summand split_idempotent(const ModuleMap& e, const Module& m);

/// Krull-Schmidt decomposition from a complete set of primitive idempotents.
std::vector<Summand> decompose(const Module& m, std::uint64_t seed = 0);
bool is_indecomposable(const Module& m, std::uint64_t seed = 0);

/// The simple summands of top(C(-, v)).
std::vector<Module> simples_at(const CategoryPtr& c, std::size_t v, std::uint64_t seed = 0);
/// The first simple at v (the only one for path categories).
Module simple(const CategoryPtr& c, std::size_t v, std::uint64_t seed = 0);

}  // namespace orbitcov
