#include "orbitcov/quotients.hpp"

namespace orbitcov {

namespace {

// span{ v u : u in Hom(x, d), v in Hom(d, y) } in the coordinates of `target`
template <class Obj, class Space, class Compose>
void add_factorisations(std::vector<Vec>& gens, const Space& target, const Obj& x, const Obj& d, const Obj& y,
                        Compose comp)
{
    const Space into(x, d);
    const Space outof(d, y);
    for (const auto& u : into.basis()) {
        for (const auto& v : outof.basis()) {
            gens.push_back(target.coords(comp(v, u)));
        }
    }
}

ModuleMap compose_modules(const ModuleMap& v, const ModuleMap& u)
{
    return compose(v, u);
}

template <class Obj, class Space, class Ideal, class Compose>
bool axiom_on(const Ideal& ideal, const Obj& w, const Obj& x, const Obj& y, const Obj& z, Compose comp)
{
    const Space xy(x, y);
    const Space yz(y, z);
    const Space wx(w, x);
    const Space xz(x, z);
    const Space wy(w, y);
    const Subspace ixy = ideal(x, y);
    const Subspace ixz = ideal(x, z);
    const Subspace iwy = ideal(w, y);
    for (std::size_t k = 0; k < ixy.dim(); ++k) {
        auto u = xy.combine(ixy.vector(k));
        for (const auto& v : yz.basis()) {
            if (!ixz.contains(xz.coords(comp(v, u)))) {
                return false;
            }
        }
        for (const auto& t : wx.basis()) {
            if (!iwy.contains(wy.coords(comp(u, t)))) {
                return false;
            }
        }
    }
    return true;
}

struct HomSpaceOf {
    HomSpace h;
    HomSpaceOf(const Module& a, const Module& b) : h(hom_space(a, b)) {}
    std::vector<ModuleMap> basis() const { return h.basis(); }
    ModuleMap combine(std::span<const Elem> c) const { return h.combine(c); }
    Vec coords(const ModuleMap& u) const { return h.coords(u); }
};

}  // namespace

Subspace ideal_hom(const IdealSpec& spec, const Module& x, const Module& y)
{
    const HomSpace target = hom_space(x, y);
    std::vector<Vec> gens;
    switch (spec.mode) {
    case IdealMode::projectives: {
        // u factors through a projective iff it lifts along the epi P -> Y
        ProjectiveCover pc = projective_epi(y);
        for (const auto& w : hom_space(x, pc.projective).basis()) {
            gens.push_back(target.coords(compose(pc.epi, w)));
        }
        break;
    }
    case IdealMode::object_list:
        if (!spec.morphs.empty()) {
            throw ValidationError("ideal of arrows applied to modules");
        }
        for (const auto& d : spec.modules) {
            const HomSpace into = hom_space(x, d);
            const HomSpace outof = hom_space(d, y);
            for (const auto& u : into.basis()) {
                for (const auto& v : outof.basis()) {
                    gens.push_back(target.coords(compose(v, u)));
                }
            }
        }
        break;
    case IdealMode::u_objects:
        throw ValidationError("the ideal generated by (X -> 0) and identity arrows lives in H(mod C)");
    }
    return Subspace::span(x.field(), target.dim(), gens);
}

Subspace ideal_hom(const IdealSpec& spec, const MorphObject& f, const MorphObject& g)
{
    const MorphHomSpace target(f, g);
    std::vector<Vec> gens;
    std::vector<MorphObject> through;
    switch (spec.mode) {
    case IdealMode::projectives:
        throw ValidationError("the projectives ideal is only defined on module categories");
    case IdealMode::object_list:
        if (!spec.modules.empty()) {
            throw ValidationError("ideal of modules applied to arrows");
        }
        through = spec.morphs;
        break;
    case IdealMode::u_objects:
        through = {identity_object(f.cod), to_zero(f.dom), to_zero(g.dom)};
        break;
    }
    for (const auto& d : through) {
        add_factorisations(gens, target, f, d, g,
                           [](const MorphHom& v, const MorphHom& u) { return morph_compose(v, u); });
    }
    return Subspace::span(f.field(), target.dim(), gens);
}

FactorHom make_factor_hom(std::size_t ambient_dim, const Subspace& ideal)
{
    return {ambient_dim, ideal, quotient_space(ambient_dim, ideal)};
}

FactorHom factor_hom(const IdealSpec& spec, const Module& x, const Module& y)
{
    Subspace i = ideal_hom(spec, x, y);
    return make_factor_hom(i.ambient_dim(), i);
}

FactorHom factor_hom(const IdealSpec& spec, const MorphObject& f, const MorphObject& g)
{
    Subspace i = ideal_hom(spec, f, g);
    return make_factor_hom(i.ambient_dim(), i);
}

Subspace u_ideal_hom(const MorphObject& f, const MorphObject& g)
{
    const MorphHomSpace target(f, g);
    const PrimeField fld = f.field();
    std::vector<Vec> gens;
    for (const auto& s : hom_space(f.cod, g.dom).basis()) {
        gens.push_back(target.coords({compose(s, f.arrow), compose(g.arrow, s)}));
    }
    // h in Hom(X, X') with g h = 0
    const HomSpace& hp = target.p_space();
    std::vector<Vec> cols;
    std::size_t rows = 0;
    for (const auto& h : hp.basis()) {
        Vec flat;
        for (const auto& m : compose(g.arrow, h).comps) {
            flat.insert(flat.end(), m.data().begin(), m.data().end());
        }
        rows = flat.size();
        cols.push_back(std::move(flat));
    }
    Matrix eq = Matrix::from_col_vectors(fld, rows, cols);
    if (hp.dim() == 0) {
        eq = Matrix(fld, 0, 0);
    }
    Subspace killed = kernel_basis(eq);
    const ModuleMap zero_q = zero_map(f.cod, g.cod);
    for (std::size_t k = 0; k < killed.dim(); ++k) {
        gens.push_back(target.coords({hp.combine(killed.vector(k)), zero_q}));
    }
    return Subspace::span(fld, target.dim(), gens);
}

QuotientSpace eval_fp(const MorphObject& f, const Module& z)
{
    const HomSpace zy = hom_space(z, f.cod);
    std::vector<Vec> gens;
    for (const auto& w : hom_space(z, f.dom).basis()) {
        gens.push_back(zy.coords(compose(f.arrow, w)));
    }
    return quotient_space(zy.dim(), Subspace::span(f.field(), zy.dim(), gens));
}

FactorHom fp_hom(const MorphObject& f, const MorphObject& g)
{
    Subspace i = u_ideal_hom(f, g);
    return make_factor_hom(i.ambient_dim(), i);
}

std::size_t nat_oracle(const MorphObject& f, const MorphObject& g)
{
    const QuotientSpace at_y = eval_fp(g, f.cod);
    const QuotientSpace at_x = eval_fp(g, f.dom);
    const HomSpace hy = hom_space(f.cod, g.cod);
    const HomSpace hx = hom_space(f.dom, g.cod);
    std::vector<Vec> cols;
    for (std::size_t k = 0; k < at_y.dim(); ++k) {
        ModuleMap r = hy.combine(at_y.lift(unit_vector(at_y.dim(), k)));
        cols.push_back(at_x.project(hx.coords(compose(r, f.arrow))));
    }
    Matrix m = Matrix::from_col_vectors(f.field(), at_x.dim(), cols);
    return at_y.dim() - (cols.empty() ? 0 : rank(m));
}

bool ideal_axiom_holds(const IdealSpec& spec, const Module& w, const Module& x, const Module& y, const Module& z)
{
    auto ideal = [&](const Module& a, const Module& b) { return ideal_hom(spec, a, b); };
    return axiom_on<Module, HomSpaceOf>(ideal, w, x, y, z, compose_modules);
}

bool ideal_axiom_holds(const IdealSpec& spec, const MorphObject& w, const MorphObject& x, const MorphObject& y,
                       const MorphObject& z)
{
    auto ideal = [&](const MorphObject& a, const MorphObject& b) { return ideal_hom(spec, a, b); };
    return axiom_on<MorphObject, MorphHomSpace>(
        ideal, w, x, y, z, [](const MorphHom& v, const MorphHom& u) { return morph_compose(v, u); });
}

std::optional<std::string> g_stability_violation(const GCategory& gc, const std::vector<Module>& d,
                                                 std::uint64_t seed)
{
    std::vector<Module> summands;
    for (const auto& m : d) {
        for (auto& s : decompose(m, seed)) {
            summands.push_back(std::move(s.module));
        }
    }
    for (std::size_t k = 0; k < d.size(); ++k) {
        for (std::size_t a = 0; a < gc.group.order(); ++a) {
            for (const auto& s : decompose(twist(gc, a, d[k]), seed)) {
                bool found = false;
                for (const auto& t : summands) {
                    if (iso_test(s.module, t, seed).isomorphic()) {
                        found = true;
                        break;
                    }
                }
                if (!found) {
                    return "a summand of the twist of member " + std::to_string(k) + " by " + gc.group.name(a) +
                           " is not a summand of any member";
                }
            }
        }
    }
    return std::nullopt;
}

InducedPairRecord check_induced_pair(const QuotientConstruction& q, std::size_t i, std::size_t j)
{
    InducedData data = q.induced(i, j);
    InducedPairRecord r;
    r.x = q.name(i);
    r.y = q.name(j);
    r.target_dim = data.target.dim();
    const PrimeField f = data.ambient_map.field();

    std::vector<Matrix> sections, shifted;
    std::vector<std::size_t> offsets;
    std::size_t off = 0;
    r.ideal_preserved = true;
    r.projection_full = rank(data.target.quotient.projection) == data.target.dim();
    for (const auto& s : data.sources) {
        r.source_dims.push_back(s.dim());
        r.projection_full = r.projection_full && rank(s.quotient.projection) == s.dim();
        offsets.push_back(off);
        for (std::size_t k = 0; k < s.ideal.dim(); ++k) {
            Vec v(data.ambient_map.cols(), 0);
            Vec iv = s.ideal.vector(k);
            std::copy(iv.begin(), iv.end(), v.begin() + static_cast<std::ptrdiff_t>(off));
            r.ideal_preserved = r.ideal_preserved && data.target.ideal.contains(data.ambient_map.apply(v));
        }
        sections.push_back(s.quotient.section);
        // a second section: every lift moved by an element of the ideal
        Matrix sh = s.quotient.section;
        if (s.ideal.dim() > 0) {
            for (std::size_t c = 0; c < sh.cols(); ++c) {
                Vec iv = s.ideal.vector(c % s.ideal.dim());
                for (std::size_t row = 0; row < sh.rows(); ++row) {
                    sh(row, c) = f.add(sh(row, c), iv[row]);
                }
            }
        }
        shifted.push_back(std::move(sh));
        off += s.ambient_dim;
    }
    const Matrix& proj = data.target.quotient.projection;
    Matrix induced = proj * data.ambient_map * block_diag(f, sections);
    Matrix induced2 = proj * data.ambient_map * block_diag(f, shifted);
    r.section_independent = induced == induced2;
    r.rank = rank(induced);
    r.bijective = induced.is_square() && r.rank == induced.rows();

    for (std::size_t a = 0; a < data.oracle_sources.size(); ++a) {
        if (data.oracle_sources[a]) {
            r.oracle_dims.push_back(*data.oracle_sources[a]);
            r.oracle_agrees = r.oracle_agrees && *data.oracle_sources[a] == data.sources[a].dim();
        }
    }
    if (data.oracle_target) {
        r.oracle_dims.push_back(*data.oracle_target);
        r.oracle_agrees = r.oracle_agrees && *data.oracle_target == data.target.dim();
    }
    return r;
}

InducedReport check_induced_precovering(const QuotientConstruction& q)
{
    if (q.size() == 0) {
        throw ValidationError("induced precovering check on an empty pool");
    }
    InducedReport rep;
    rep.mode = q.mode();
    for (std::size_t i = 0; i < q.size(); ++i) {
        for (std::size_t j = 0; j < q.size(); ++j) {
            InducedPairRecord r = check_induced_pair(q, i, j);
            rep.ok = rep.ok && r.ok();
            rep.pairs.push_back(std::move(r));
        }
    }
    return rep;
}

ModuleQuotient::ModuleQuotient(const PushdownContext& ctx, std::vector<NamedModule> pool, std::string mode,
                               IdealSpec up, IdealSpec down)
    : ctx_(ctx), pool_(std::move(pool)), mode_(std::move(mode)), up_(std::move(up)), down_(std::move(down))
{
}

ModuleQuotient ModuleQuotient::stable(const PushdownContext& ctx, std::vector<NamedModule> pool)
{
    return ModuleQuotient(ctx, std::move(pool), "stable", IdealSpec::projectives(), IdealSpec::projectives());
}

ModuleQuotient ModuleQuotient::factor_by(const PushdownContext& ctx, std::vector<NamedModule> pool,
                                         std::vector<Module> d)
{
    if (auto why = g_stability_violation(ctx.gcat(), d)) {
        throw ValidationError("factor class is not G-stable: " + *why);
    }
    std::vector<Module> down;
    for (const auto& m : d) {
        down.push_back(pushdown(ctx, m));
    }
    return ModuleQuotient(ctx, std::move(pool), "factor", IdealSpec::objects(std::move(d)),
                          IdealSpec::objects(std::move(down)));
}

InducedData ModuleQuotient::induced(std::size_t i, std::size_t j) const
{
    const Module& x = pool_.at(i).second;
    const Module& y = pool_.at(j).second;
    PushdownPrecovering pre = pushdown_precovering(ctx_, x, y);
    InducedData d;
    for (std::size_t a = 0; a < pre.sources.size(); ++a) {
        d.sources.push_back(make_factor_hom(pre.sources[a].dim(), ideal_hom(up_, x, pre.twists[a])));
        d.oracle_sources.emplace_back();
    }
    d.target = make_factor_hom(pre.target.dim(), ideal_hom(down_, pushdown(ctx_, x), pushdown(ctx_, y)));
    d.ambient_map = std::move(pre.matrix);
    return d;
}

MorphQuotient::MorphQuotient(const PushdownContext& ctx, std::vector<NamedMorph> pool, bool fp)
    : ctx_(ctx), pool_(std::move(pool)), fp_(fp)
{
}

MorphQuotient MorphQuotient::h_factor(const PushdownContext& ctx, std::vector<NamedMorph> pool)
{
    return MorphQuotient(ctx, std::move(pool), false);
}

MorphQuotient MorphQuotient::fp(const PushdownContext& ctx, std::vector<NamedMorph> pool)
{
    return MorphQuotient(ctx, std::move(pool), true);
}

InducedData MorphQuotient::induced(std::size_t i, std::size_t j) const
{
    const MorphObject& f = pool_.at(i).second;
    const MorphObject& g = pool_.at(j).second;
    MorphPrecovering pre = morph_precovering(ctx_, f, g);
    const MorphObject pf = h_pushdown(ctx_, f);
    const MorphObject pg = h_pushdown(ctx_, g);
    auto ideal = [&](const MorphObject& a, const MorphObject& b) {
        return fp_ ? u_ideal_hom(a, b) : ideal_hom(IdealSpec::u_objects(), a, b);
    };
    InducedData d;
    for (std::size_t a = 0; a < pre.sources.size(); ++a) {
        d.sources.push_back(make_factor_hom(pre.sources[a].dim(), ideal(f, pre.twists[a])));
        d.oracle_sources.push_back(fp_ ? std::optional<std::size_t>(nat_oracle(f, pre.twists[a])) : std::nullopt);
    }
    d.target = make_factor_hom(pre.target.dim(), ideal(pf, pg));
    if (fp_) {
        d.oracle_target = nat_oracle(pf, pg);
    }
    d.ambient_map = std::move(pre.matrix);
    return d;
}

FdAlgebra fp_end_algebra(const MorphObject& f)
{
    MorphEndAlgebra e = morph_end_algebra(f);
    return e.algebra.quotient(u_ideal_hom(f, f)).algebra;
}

bool fp_is_indecomposable(const MorphObject& f)
{
    FdAlgebra a = fp_end_algebra(f);
    return a.dim() > 0 && is_local(a);
}

bool fp_isomorphic(const MorphObject& f, const MorphObject& g)
{
    MorphEndAlgebra e = morph_end_algebra(f);
    FdAlgebra::Quotient q = e.algebra.quotient(u_ideal_hom(f, f));
    if (q.algebra.dim() == 0) {
        return false;
    }
    const auto fg = MorphHomSpace(f, g).basis();
    const auto gf = MorphHomSpace(g, f).basis();
    for (const auto& u : fg) {
        for (const auto& v : gf) {
            Vec x = q.map.project(e.hom.coords(morph_compose(v, u)));
            if (rank(q.algebra.left_mult(x)) == q.algebra.dim()) {
                return true;
            }
        }
    }
    return false;
}

FactorKsReport check_factor_krull_schmidt(const PushdownContext& ctx, const std::vector<NamedMorph>& pool)
{
    FactorKsReport rep;
    std::vector<MorphObject> down;
    for (const auto& [name, f] : pool) {
        FactorKsRecord r;
        r.name = name;
        r.up_indecomposable = fp_is_indecomposable(f);
        down.push_back(h_pushdown(ctx, f));
        if (r.up_indecomposable) {
            r.down_indecomposable = fp_is_indecomposable(down.back());
            rep.ok = rep.ok && r.down_indecomposable;
        }
        rep.objects.push_back(std::move(r));
    }
    const GCategory& gc = ctx.gcat();
    for (std::size_t i = 0; i < pool.size(); ++i) {
        for (std::size_t j = i + 1; j < pool.size(); ++j) {
            if (!rep.objects[i].up_indecomposable || !rep.objects[j].up_indecomposable) {
                continue;
            }
            if (!fp_isomorphic(down[i], down[j])) {
                continue;
            }
            FactorKsFiber fib{pool[i].first, pool[j].first, std::nullopt};
            for (std::size_t a = 0; a < gc.group.order() && !fib.twist; ++a) {
                if (fp_isomorphic(pool[i].second, morph_twist(gc, a, pool[j].second))) {
                    fib.twist = a;
                }
            }
            rep.ok = rep.ok && fib.twist.has_value();
            rep.fibers.push_back(std::move(fib));
        }
    }
    return rep;
}

}  // namespace orbitcov
