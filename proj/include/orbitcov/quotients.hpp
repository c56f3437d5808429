#pragma once

// Ideals generated by classes of objects, factor categories, the ideal of
// H(mod C) generated by arrows (X -> 0) and (X -> X, id), finitely presented
// functors Theta(f) = coker(Hom(-, X) -> Hom(-, Y)), and the induced
// precovering checks on all of these factor categories.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "orbitcov/ks.hpp"
#include "orbitcov/morph.hpp"

namespace orbitcov {

enum class IdealMode { projectives, object_list, u_objects };

struct IdealSpec {
    IdealMode mode = IdealMode::object_list;
    std::vector<Module> modules;     ///< object_list over mod C
    std::vector<MorphObject> morphs; ///< object_list over H(mod C)

    static IdealSpec projectives() { return {IdealMode::projectives, {}, {}}; }
    static IdealSpec objects(std::vector<Module> d) { return {IdealMode::object_list, std::move(d), {}}; }
    static IdealSpec arrows(std::vector<MorphObject> d) { return {IdealMode::object_list, {}, std::move(d)}; }
    static IdealSpec u_objects() { return {IdealMode::u_objects, {}, {}}; }
};

/// The maps X -> Y factoring through the ideal, as a subspace of the echelon
/// coordinates of hom_space(X, Y). u_objects is not a module-level ideal and
/// throws ValidationError.
Subspace ideal_hom(const IdealSpec& spec, const Module& x, const Module& y);
/// The same for H(mod C), in the echelon coordinates of MorphHomSpace(f, g).
/// u_objects uses the generators (Y -> Y, id), (X -> 0) and (X' -> 0).
Subspace ideal_hom(const IdealSpec& spec, const MorphObject& f, const MorphObject& g);

struct FactorHom {
    std::size_t ambient_dim = 0;
    Subspace ideal;
    QuotientSpace quotient;

    std::size_t dim() const noexcept { return quotient.dim(); }
};

FactorHom make_factor_hom(std::size_t ambient_dim, const Subspace& ideal);
FactorHom factor_hom(const IdealSpec& spec, const Module& x, const Module& y);
FactorHom factor_hom(const IdealSpec& spec, const MorphObject& f, const MorphObject& g);

/// {(s f + h, g s) : s in Hom(Y, X'), g h = 0} in MorphHomSpace(f, g) coordinates.
Subspace u_ideal_hom(const MorphObject& f, const MorphObject& g);

/// Theta(f)(Z) = Hom(Z, Y) / f Hom(Z, X), ambient = echelon coordinates of hom_space(Z, Y).
QuotientSpace eval_fp(const MorphObject& f, const Module& z);
/// Hom(Theta f, Theta g) as the factor of Hom_H(f, g) by the closed-form ideal.
FactorHom fp_hom(const MorphObject& f, const MorphObject& g);
/// dim ker(Theta g(Y) -> Theta g(X)), r -> r f.
std::size_t nat_oracle(const MorphObject& f, const MorphObject& g);

/// The ideal axiom on basis elements: v u and u w stay in the ideal for u in
/// I(X, Y), v in Hom(Y, Z), w in Hom(W, X).
bool ideal_axiom_holds(const IdealSpec& spec, const Module& w, const Module& x, const Module& y, const Module& z);
bool ideal_axiom_holds(const IdealSpec& spec, const MorphObject& w, const MorphObject& x, const MorphObject& y,
                       const MorphObject& z);

/// An explanation when some indecomposable summand of some ^a D is not
/// isomorphic to a summand of a member of D.
std::optional<std::string> g_stability_violation(const GCategory& gc, const std::vector<Module>& d,
                                                 std::uint64_t seed = 0);

/// The data of the induced map (+)_a X/I(x, ^a y) -> Y/J(F x, F y) for one
/// pool pair: factor homs on both sides plus the ambient matrix of the
/// assembled functor.
struct InducedData {
    std::vector<FactorHom> sources;
    FactorHom target;
    Matrix ambient_map;
    std::vector<std::optional<std::size_t>> oracle_sources;
    std::optional<std::size_t> oracle_target;
};

/// A quotient construction applied on both sides of the pushdown. Stable,
/// factor-by-D, the H factor and fp functors are the shipped instances.
class QuotientConstruction {
public:
    virtual ~QuotientConstruction() = default;
    virtual std::string mode() const = 0;
    virtual std::size_t size() const = 0;
    virtual const std::string& name(std::size_t i) const = 0;
    virtual InducedData induced(std::size_t i, std::size_t j) const = 0;
};

struct InducedPairRecord {
    std::string x, y;
    std::vector<std::size_t> source_dims;  ///< per a
    std::size_t target_dim = 0;
    std::size_t rank = 0;
    bool ideal_preserved = false;
    bool section_independent = false;
    bool projection_full = false;
    bool bijective = false;
    bool oracle_agrees = true;
    std::vector<std::size_t> oracle_dims;  ///< oracle per a, then the target oracle
    bool ok() const
    {
        return ideal_preserved && section_independent && projection_full && bijective && oracle_agrees;
    }
};

struct InducedReport {
    std::string mode;
    std::vector<InducedPairRecord> pairs;
    bool ok = true;
};

InducedPairRecord check_induced_pair(const QuotientConstruction& q, std::size_t i, std::size_t j);
/// Throws ValidationError on an empty pool.
InducedReport check_induced_precovering(const QuotientConstruction& q);

class ModuleQuotient : public QuotientConstruction {
public:
    /// mode "stable": projectives on both sides.
    static ModuleQuotient stable(const PushdownContext& ctx, std::vector<NamedModule> pool);
    /// mode "factor": <D> upstairs and <P_ D> downstairs; throws ValidationError
    /// when D is not G-stable.
    static ModuleQuotient factor_by(const PushdownContext& ctx, std::vector<NamedModule> pool, std::vector<Module> d);

    std::string mode() const override { return mode_; }
    std::size_t size() const override { return pool_.size(); }
    const std::string& name(std::size_t i) const override { return pool_.at(i).first; }
    InducedData induced(std::size_t i, std::size_t j) const override;

    const IdealSpec& up_spec() const noexcept { return up_; }
    const IdealSpec& down_spec() const noexcept { return down_; }

private:
    ModuleQuotient(const PushdownContext& ctx, std::vector<NamedModule> pool, std::string mode, IdealSpec up,
                   IdealSpec down);
    PushdownContext ctx_;
    std::vector<NamedModule> pool_;
    std::string mode_;
    IdealSpec up_, down_;
};

using NamedMorph = std::pair<std::string, MorphObject>;

class MorphQuotient : public QuotientConstruction {
public:
    /// mode "hfactor": the generator form of the ideal on both sides.
    static MorphQuotient h_factor(const PushdownContext& ctx, std::vector<NamedMorph> pool);
    /// mode "fp": the closed form of the ideal, with nat_oracle on both sides.
    static MorphQuotient fp(const PushdownContext& ctx, std::vector<NamedMorph> pool);

    std::string mode() const override { return fp_ ? "fp" : "hfactor"; }
    std::size_t size() const override { return pool_.size(); }
    const std::string& name(std::size_t i) const override { return pool_.at(i).first; }
    InducedData induced(std::size_t i, std::size_t j) const override;

private:
    MorphQuotient(const PushdownContext& ctx, std::vector<NamedMorph> pool, bool fp);
    PushdownContext ctx_;
    std::vector<NamedMorph> pool_;
    bool fp_;
};

/// End_H(f) modulo the closed-form ideal.
FdAlgebra fp_end_algebra(const MorphObject& f);
/// Nonzero in the factor with a local endomorphism algebra there.
bool fp_is_indecomposable(const MorphObject& f);
/// For f, g indecomposable in the factor: some v u with u : f -> g, v : g -> f
/// is invertible modulo the ideal.
bool fp_isomorphic(const MorphObject& f, const MorphObject& g);

struct FactorKsRecord {
    std::string name;
    bool up_indecomposable = false;
    bool down_indecomposable = false;
};

struct FactorKsFiber {
    std::string x, y;
    std::optional<std::size_t> twist;
};

struct FactorKsReport {
    std::vector<FactorKsRecord> objects;
    std::vector<FactorKsFiber> fibers;  ///< pairs with isomorphic pushdowns in the factor
    bool ok = true;
};

/// Nonzero indecomposables of the fp factor push down to indecomposables, and
/// isomorphic pushdowns come from twists.
FactorKsReport check_factor_krull_schmidt(const PushdownContext& ctx, const std::vector<NamedMorph>& pool);

}  // namespace orbitcov
