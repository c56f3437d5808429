#pragma once

// The morphism category H(mod C): objects are module maps f : X -> Y, and a
// morphism f -> g (g : X' -> Y') is a pair (p, q) with q f = g p. Hom spaces
// are computed on demand; H is never materialised.

#include <cstdint>
#include <string>
#include <vector>

#include "orbitcov/pushpull.hpp"

namespace orbitcov {

struct MorphObject {
    Module dom;
    Module cod;
    ModuleMap arrow;

    bool operator==(const MorphObject&) const = default;
    const CategoryPtr& category() const { return dom.category(); }
    PrimeField field() const { return dom.field(); }
    bool is_zero() const { return dom.is_zero() && cod.is_zero(); }
};

/// Throws ValidationError when the arrow is not a map dom -> cod.
MorphObject make_morph(Module dom, Module cod, ModuleMap arrow);
/// (X -> X, identity)
MorphObject identity_object(const Module& x);
/// (X -> 0)
MorphObject to_zero(const Module& x);
/// (0 -> Y)
MorphObject from_zero(const Module& y);

struct MorphHom {
    ModuleMap p;  ///< dom -> dom'
    ModuleMap q;  ///< cod -> cod'

    bool operator==(const MorphHom&) const = default;
};

MorphHom morph_identity(const MorphObject& f);
MorphHom morph_zero(const MorphObject& f, const MorphObject& g);
/// v . u
MorphHom morph_compose(const MorphHom& v, const MorphHom& u);
MorphHom morph_add(const MorphHom& a, const MorphHom& b);
MorphHom morph_scale(PrimeField f, Elem s, const MorphHom& a);
bool morph_is_zero(const MorphHom& h);
bool morph_is_iso(const MorphHom& h);
/// Naturality of both components and q f = g p.
bool is_morph_hom(const MorphHom& h, const MorphObject& f, const MorphObject& g);

/// Hom_H(f, g) inside Hom(X, X') (+) Hom(Y, Y'), in coordinates of those two
/// hom spaces; the echelon basis of the square condition is the basis.
class MorphHomSpace {
public:
    MorphHomSpace() = default;
    MorphHomSpace(const MorphObject& f, const MorphObject& g);

    std::size_t dim() const noexcept { return space_.dim(); }
    const Subspace& space() const noexcept { return space_; }
    const HomSpace& p_space() const noexcept { return hp_; }
    const HomSpace& q_space() const noexcept { return hq_; }
    /// dim Hom(X, X') + dim Hom(Y, Y')
    std::size_t ambient_dim() const noexcept { return hp_.dim() + hq_.dim(); }

    MorphHom basis(std::size_t i) const { return from_ambient(space_.vector(i)); }
    std::vector<MorphHom> basis() const;
    /// Coordinates in Hom(X, X') (+) Hom(Y, Y').
    Vec ambient_coords(const MorphHom& h) const;
    MorphHom from_ambient(std::span<const Elem> v) const;
    /// Coordinates in the echelon basis; throws ValidationError when h is not a square.
    Vec coords(const MorphHom& h) const;
    MorphHom combine(std::span<const Elem> coeffs) const;

private:
    HomSpace hp_, hq_;
    Subspace space_;
};

MorphObject morph_twist(const GCategory& gc, std::size_t a, const MorphObject& f);
MorphHom morph_twist_hom(const GCategory& gc, std::size_t a, const MorphHom& h);
MorphObject h_pushdown(const PushdownContext& ctx, const MorphObject& f);
MorphHom h_pushdown_hom(const PushdownContext& ctx, const MorphHom& h);
MorphObject h_pullup(const PushdownContext& ctx, const MorphObject& g);
MorphHom h_pullup_hom(const PushdownContext& ctx, const MorphHom& h);
/// (phi-down_c at dom, phi-down_c at cod) : H(P_)f -> H(P_)(^c f)
MorphHom h_phi_down(const PushdownContext& ctx, std::size_t c, const MorphObject& f);

/// (p, q) : H(P_)f -> g  gives  (theta p, theta q) : f -> H(P^)g.
MorphHom h_theta(const PushdownContext& ctx, const MorphObject& f, const MorphObject& g, const MorphHom& h);
/// (p, q) : f -> H(P^)g  gives  (theta^-1 p, theta^-1 q) : H(P_)f -> g.
MorphHom h_theta_inv(const PushdownContext& ctx, const MorphObject& f, const MorphObject& g, const MorphHom& h);

struct MorphDirectSum {
    MorphObject sum;
    std::vector<MorphHom> injections;
    std::vector<MorphHom> projections;
};
MorphDirectSum morph_direct_sum(const CategoryPtr& c, const std::vector<MorphObject>& parts);

/// Matrix of (h_a)_a -> sum_a H(phi-down_{a^-1}) H(P_)(h_a) from the
/// concatenated ambient coordinates of Hom_H(f, ^a g) to the ambient
/// coordinates of Hom_H(H(P_)f, H(P_)g).
struct MorphPrecovering {
    std::vector<MorphHomSpace> sources;
    std::vector<MorphObject> twists;  ///< ^a g
    MorphHomSpace target;
    Matrix ambient_matrix;
    /// The same map restricted to the square subspaces (echelon coordinates).
    Matrix matrix;
};
MorphPrecovering morph_precovering(const PushdownContext& ctx, const MorphObject& f, const MorphObject& g);

struct MorphEndAlgebra {
    MorphHomSpace hom;
    FdAlgebra algebra;
};
/// Throws FieldTooSmall (from the radical) when p <= total dim of dom and cod.
MorphEndAlgebra morph_end_algebra(const MorphObject& f);

struct MorphSummand {
    MorphObject object;
    MorphHom inclusion;
    MorphHom projection;
};
MorphSummand morph_split_idempotent(const MorphHom& e, const MorphObject& f);
std::vector<MorphSummand> morph_decompose(const MorphObject& f, std::uint64_t seed = 0);
bool morph_is_indecomposable(const MorphObject& f);

}  // namespace orbitcov
