#pragma once

// Pushdown and pullup along the canonical covering P : C -> C/G, with the
// adjunction theta, the structure phi-down and the isomorphism t.

#include <memory>
#include <string>

#include "orbitcov/modrep.hpp"
#include "orbitcov/orbitcat.hpp"

namespace orbitcov {

class PushdownContext {
public:
    explicit PushdownContext(std::shared_ptr<const GCategory> gc);

    const GCategory& gcat() const { return *gc_; }
    const FiniteGroup& group() const { return gc_->group; }
    const OrbitCategory& orbit() const { return orbit_; }
    const InvariantFunctor& covering() const { return covering_; }
    const CategoryPtr& up() const { return gc_->category; }
    const CategoryPtr& down() const { return orbit_.category(); }

    /// Offset of the summand X(ax) inside (P_X)(x) = (+)_a X(ax).
    std::size_t block_offset(const Module& x_mod, std::size_t x, std::size_t a) const;

private:
    std::shared_ptr<const GCategory> gc_;
    OrbitCategory orbit_;
    InvariantFunctor covering_;
};

Module pushdown(const PushdownContext& ctx, const Module& x);
/// P_(u) for u : X -> Y, componentwise (+)_a u_{ax}.
ModuleMap pushdown_map(const PushdownContext& ctx, const ModuleMap& u);
Module pullup(const PushdownContext& ctx, const Module& n);
ModuleMap pullup_map(const PushdownContext& ctx, const ModuleMap& v);

/// The isomorphism P_X -> P_(^cX), block (b, a) = delta_{a, c^-1 b} id.
ModuleMap phi_down(const PushdownContext& ctx, std::size_t c, const Module& x);

struct TwistSum {
    DirectSum twists;  ///< (+)_a ^aX in group order
    ModuleMap t;       ///< (+)_a ^aX -> P^ P_ X
};
TwistSum t_iso(const PushdownContext& ctx, const Module& x);

/// alpha : P_X -> Y  gives  theta(alpha) : X -> P^Y, the a = 1 block of alpha.
ModuleMap theta(const PushdownContext& ctx, const Module& x, const ModuleMap& alpha);
/// f : X -> P^Y  gives  (Y(phi_{a,x}) f_{ax})_a : P_X -> Y.
ModuleMap theta_inv(const PushdownContext& ctx, const Module& x, const Module& y, const ModuleMap& f);
ModuleMap unit(const PushdownContext& ctx, const Module& x);
ModuleMap counit(const PushdownContext& ctx, const Module& y);

/// Matrix of (f_a)_a -> sum_a phi-down_{a^-1, ^aY} P_(f_a), from the
/// concatenated coordinates of Hom(X, ^aY) (group order) to Hom(P_X, P_Y).
struct PushdownPrecovering {
    std::vector<HomSpace> sources;  ///< Hom(X, ^aY)
    std::vector<Module> twists;     ///< ^aY
    HomSpace target;                ///< Hom(P_X, P_Y)
    Matrix matrix;
    std::vector<std::size_t> offsets;
};
PushdownPrecovering pushdown_precovering(const PushdownContext& ctx, const Module& x, const Module& y);

struct AdjointPairRecord {
    std::string x, y;
    std::size_t hom_down = 0;  ///< dim Hom(P_X, Y)
    std::size_t hom_up = 0;    ///< dim Hom(X, P^Y)
    bool bijective = false;
    bool round_trips = false;
    bool natural = false;
};

struct AdjointReport {
    std::vector<AdjointPairRecord> pairs;
    std::vector<std::pair<std::string, bool>> unit_triangles;    ///< eps_{P_X} . P_(eta_X) = id
    std::vector<std::pair<std::string, bool>> counit_triangles;  ///< P^(eps_Y) . eta_{P^Y} = id
    std::vector<std::pair<std::string, bool>> coproducts;        ///< P^ preserves binary sums
    bool ok = true;
};

using NamedModule = std::pair<std::string, Module>;

AdjointReport verify_adjoint_system(const PushdownContext& ctx, const std::vector<NamedModule>& up_pool,
                                    const std::vector<NamedModule>& down_pool);

struct VitalReport {
    std::size_t source_dim = 0;  ///< sum_a dim Hom(X, ^aY)
    std::size_t target_dim = 0;  ///< dim Hom(P_X, P_Y)
    bool nu_iso = false;
    bool commutes = false;
    bool bijective = false;
    bool ok() const { return nu_iso && commutes && bijective && source_dim == target_dim; }
};

VitalReport verify_vital_diagram(const PushdownContext& ctx, const Module& x, const Module& y);

}  // namespace orbitcov
