#include "orbitcov/morph.hpp"

namespace orbitcov {

namespace {

Vec flat(const ModuleMap& u)
{
    Vec out;
    for (const auto& m : u.comps) {
        out.insert(out.end(), m.data().begin(), m.data().end());
    }
    return out;
}

Vec concat(Vec a, const Vec& b)
{
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

}  // namespace

MorphObject make_morph(Module dom, Module cod, ModuleMap arrow)
{
    if (dom.category() != cod.category()) {
        throw ValidationError("morph: domain and codomain live over different categories");
    }
    Violations v = validate_map(arrow, dom, cod);
    if (!v.ok()) {
        throw ValidationError("morph: arrow is not a module map: " + v.items.front());
    }
    return {std::move(dom), std::move(cod), std::move(arrow)};
}

MorphObject identity_object(const Module& x)
{
    return {x, x, identity_map(x)};
}

MorphObject to_zero(const Module& x)
{
    Module z = Module::zero(x.category());
    return {x, z, zero_map(x, z)};
}

MorphObject from_zero(const Module& y)
{
    Module z = Module::zero(y.category());
    return {z, y, zero_map(z, y)};
}

MorphHom morph_identity(const MorphObject& f)
{
    return {identity_map(f.dom), identity_map(f.cod)};
}

MorphHom morph_zero(const MorphObject& f, const MorphObject& g)
{
    return {zero_map(f.dom, g.dom), zero_map(f.cod, g.cod)};
}

MorphHom morph_compose(const MorphHom& v, const MorphHom& u)
{
    return {compose(v.p, u.p), compose(v.q, u.q)};
}

MorphHom morph_add(const MorphHom& a, const MorphHom& b)
{
    return {add(a.p, b.p), add(a.q, b.q)};
}

MorphHom morph_scale(PrimeField f, Elem s, const MorphHom& a)
{
    return {scale(f, s, a.p), scale(f, s, a.q)};
}

bool morph_is_zero(const MorphHom& h)
{
    return is_zero_map(h.p) && is_zero_map(h.q);
}

bool morph_is_iso(const MorphHom& h)
{
    return is_iso(h.p) && is_iso(h.q);
}

bool is_morph_hom(const MorphHom& h, const MorphObject& f, const MorphObject& g)
{
    if (!validate_map(h.p, f.dom, g.dom).ok() || !validate_map(h.q, f.cod, g.cod).ok()) {
        return false;
    }
    return compose(h.q, f.arrow) == compose(g.arrow, h.p);
}

MorphHomSpace::MorphHomSpace(const MorphObject& f, const MorphObject& g)
    : hp_(hom_space(f.dom, g.dom)), hq_(hom_space(f.cod, g.cod))
{
    const PrimeField fld = f.field();
    std::vector<Vec> cols;
    for (const auto& p : hp_.basis()) {
        cols.push_back(flat(scale(fld, fld.neg(1), compose(g.arrow, p))));
    }
    for (const auto& q : hq_.basis()) {
        cols.push_back(flat(compose(q, f.arrow)));
    }
    std::size_t rows = 0;
    for (std::size_t x = 0; x < f.dom.object_count(); ++x) {
        rows += g.cod.dim(x) * f.dom.dim(x);
    }
    Matrix eq(fld, rows, ambient_dim());
    for (std::size_t c = 0; c < cols.size(); ++c) {
        for (std::size_t r = 0; r < rows; ++r) {
            eq(r, c) = cols[c][r];
        }
    }
    space_ = kernel_basis(eq);
}

std::vector<MorphHom> MorphHomSpace::basis() const
{
    std::vector<MorphHom> out;
    for (std::size_t i = 0; i < dim(); ++i) {
        out.push_back(basis(i));
    }
    return out;
}

Vec MorphHomSpace::ambient_coords(const MorphHom& h) const
{
    return concat(hp_.coords(h.p), hq_.coords(h.q));
}

MorphHom MorphHomSpace::from_ambient(std::span<const Elem> v) const
{
    return {hp_.combine(v.first(hp_.dim())), hq_.combine(v.subspan(hp_.dim()))};
}

Vec MorphHomSpace::coords(const MorphHom& h) const
{
    Vec v = ambient_coords(h);
    if (!space_.contains(v)) {
        throw ValidationError("pair is not a morphism in H: q f != g p");
    }
    return space_.coords(v);
}

MorphHom MorphHomSpace::combine(std::span<const Elem> coeffs) const
{
    Vec v(ambient_dim(), 0);
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        vec_axpy(space_.field(), coeffs[i], space_.basis().row_span(i), v);
    }
    return from_ambient(v);
}

MorphObject morph_twist(const GCategory& gc, std::size_t a, const MorphObject& f)
{
    return {twist(gc, a, f.dom), twist(gc, a, f.cod), twist_map(gc, a, f.arrow)};
}

MorphHom morph_twist_hom(const GCategory& gc, std::size_t a, const MorphHom& h)
{
    return {twist_map(gc, a, h.p), twist_map(gc, a, h.q)};
}

MorphObject h_pushdown(const PushdownContext& ctx, const MorphObject& f)
{
    return {pushdown(ctx, f.dom), pushdown(ctx, f.cod), pushdown_map(ctx, f.arrow)};
}

MorphHom h_pushdown_hom(const PushdownContext& ctx, const MorphHom& h)
{
    return {pushdown_map(ctx, h.p), pushdown_map(ctx, h.q)};
}

MorphObject h_pullup(const PushdownContext& ctx, const MorphObject& g)
{
    return {pullup(ctx, g.dom), pullup(ctx, g.cod), pullup_map(ctx, g.arrow)};
}

MorphHom h_pullup_hom(const PushdownContext& ctx, const MorphHom& h)
{
    return {pullup_map(ctx, h.p), pullup_map(ctx, h.q)};
}

MorphHom h_phi_down(const PushdownContext& ctx, std::size_t c, const MorphObject& f)
{
    return {phi_down(ctx, c, f.dom), phi_down(ctx, c, f.cod)};
}

MorphHom h_theta(const PushdownContext& ctx, const MorphObject& f, const MorphObject& g, const MorphHom& h)
{
    MorphHom out{theta(ctx, f.dom, h.p), theta(ctx, f.cod, h.q)};
    if (!is_morph_hom(out, f, h_pullup(ctx, g))) {
        throw Error("h_theta: transported pair is not a square");
    }
    return out;
}

MorphHom h_theta_inv(const PushdownContext& ctx, const MorphObject& f, const MorphObject& g, const MorphHom& h)
{
    MorphHom out{theta_inv(ctx, f.dom, g.dom, h.p), theta_inv(ctx, f.cod, g.cod, h.q)};
    if (!is_morph_hom(out, h_pushdown(ctx, f), g)) {
        throw Error("h_theta_inv: transported pair is not a square");
    }
    return out;
}

MorphDirectSum morph_direct_sum(const CategoryPtr& c, const std::vector<MorphObject>& parts)
{
    std::vector<Module> doms, cods;
    for (const auto& f : parts) {
        doms.push_back(f.dom);
        cods.push_back(f.cod);
    }
    DirectSum ds = direct_sum(c, doms);
    DirectSum cs = direct_sum(c, cods);
    ModuleMap arrow;
    for (std::size_t x = 0; x < c->object_count(); ++x) {
        std::vector<Matrix> blocks;
        for (const auto& f : parts) {
            blocks.push_back(f.arrow.comps.at(x));
        }
        arrow.comps.push_back(block_diag(c->field(), blocks));
    }
    MorphDirectSum out{{ds.sum, cs.sum, std::move(arrow)}, {}, {}};
    for (std::size_t k = 0; k < parts.size(); ++k) {
        out.injections.push_back({ds.injections[k], cs.injections[k]});
        out.projections.push_back({ds.projections[k], cs.projections[k]});
    }
    return out;
}

MorphPrecovering morph_precovering(const PushdownContext& ctx, const MorphObject& f, const MorphObject& g)
{
    const GCategory& gc = ctx.gcat();
    const FiniteGroup& grp = gc.group;
    const PrimeField fld = gc.cat().field();
    MorphPrecovering out;
    out.target = MorphHomSpace(h_pushdown(ctx, f), h_pushdown(ctx, g));
    std::vector<Vec> amb_cols, cols;
    for (std::size_t a = 0; a < grp.order(); ++a) {
        MorphObject tw = morph_twist(gc, a, g);
        MorphHomSpace src(f, tw);
        MorphHom back = h_phi_down(ctx, grp.inverse(a), tw);
        auto image = [&](const MorphHom& h) { return morph_compose(back, h_pushdown_hom(ctx, h)); };
        for (std::size_t i = 0; i < src.ambient_dim(); ++i) {
            amb_cols.push_back(out.target.ambient_coords(image(src.from_ambient(unit_vector(src.ambient_dim(), i)))));
        }
        for (const auto& h : src.basis()) {
            cols.push_back(out.target.coords(image(h)));
        }
        out.sources.push_back(std::move(src));
        out.twists.push_back(std::move(tw));
    }
    out.ambient_matrix = Matrix::from_col_vectors(fld, out.target.ambient_dim(), amb_cols);
    out.matrix = Matrix::from_col_vectors(fld, out.target.dim(), cols);
    return out;
}

MorphEndAlgebra morph_end_algebra(const MorphObject& f)
{
    MorphHomSpace hom(f, f);
    const std::size_t d = hom.dim();
    std::vector<MorphHom> basis = hom.basis();
    FdAlgebra alg(f.field(), d, hom.coords(morph_identity(f)),
                  [&](std::size_t i, std::size_t j) { return hom.coords(morph_compose(basis[i], basis[j])); });
    // (p, q) acts faithfully on dom (+) cod
    std::vector<ModuleMap> ps, qs;
    for (const auto& b : basis) {
        ps.push_back(b.p);
        qs.push_back(b.q);
    }
    Vec tr = map_traces(ps);
    tr = vec_add(f.field(), tr, map_traces(qs));
    alg.set_faithful_traces(std::move(tr), f.dom.total_dim() + f.cod.total_dim());
    return {std::move(hom), std::move(alg)};
}

MorphSummand morph_split_idempotent(const MorphHom& e, const MorphObject& f)
{
    Summand d = split_idempotent(e.p, f.dom);
    Summand c = split_idempotent(e.q, f.cod);
    ModuleMap arrow = compose(c.projection, compose(f.arrow, d.inclusion));
    return {{std::move(d.module), std::move(c.module), std::move(arrow)},
            {std::move(d.inclusion), std::move(c.inclusion)},
            {std::move(d.projection), std::move(c.projection)}};
}

std::vector<MorphSummand> morph_decompose(const MorphObject& f, std::uint64_t seed)
{
    std::vector<MorphSummand> out;
    if (f.is_zero()) {
        return out;
    }
    MorphEndAlgebra e = morph_end_algebra(f);
    IdempotentDecomposition dec = primitive_idempotents(e.algebra, seed);
    for (const auto& idem : dec.idempotents) {
        out.push_back(morph_split_idempotent(e.hom.combine(idem), f));
    }
    return out;
}

bool morph_is_indecomposable(const MorphObject& f)
{
    if (f.is_zero()) {
        return false;
    }
    return is_local(morph_end_algebra(f).algebra);
}

}  // namespace orbitcov
