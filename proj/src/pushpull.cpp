#include "orbitcov/pushpull.hpp"

namespace orbitcov {

namespace {

// At most this many basis maps per slot are used for naturality samples.
constexpr std::size_t kNaturalitySamples = 3;

}  // namespace

PushdownContext::PushdownContext(std::shared_ptr<const GCategory> gc)
    : gc_(std::move(gc)), orbit_(build_orbit(gc_)), covering_(canonical_covering(orbit_))
{
}

std::size_t PushdownContext::block_offset(const Module& x_mod, std::size_t x, std::size_t a) const
{
    std::size_t off = 0;
    for (std::size_t b = 0; b < a; ++b) {
        off += x_mod.dim(gc_->act(b, x));
    }
    return off;
}

Module pushdown(const PushdownContext& ctx, const Module& xm)
{
    const GCategory& gc = ctx.gcat();
    const FiniteGroup& g = gc.group;
    const std::size_t n = gc.cat().object_count();
    const PrimeField f = gc.cat().field();

    std::vector<std::size_t> dims(n, 0);
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t a = 0; a < g.order(); ++a) {
            dims[x] += xm.dim(gc.act(a, x));
        }
    }
    std::vector<std::vector<Matrix>> actions(n * n);
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
            for (std::size_t b = 0; b < g.order(); ++b) {
                const std::size_t by = gc.act(b, y);
                const std::size_t d = gc.cat().hom_dim(x, by);
                for (std::size_t i = 0; i < d; ++i) {
                    // block (row a, column ab) = X(A_a f_i), A_a f_i in C(ax, aby)
                    Matrix m(f, dims[x], dims[y]);
                    for (std::size_t a = 0; a < g.order(); ++a) {
                        const std::size_t ab = g.mul(a, b);
                        Vec moved = gc.act_hom(a, x, by, unit_vector(d, i));
                        m.set_block(ctx.block_offset(xm, x, a), ctx.block_offset(xm, y, ab),
                                    xm.act(gc.act(a, x), gc.act(ab, y), moved));
                    }
                    actions[x * n + y].push_back(std::move(m));
                }
            }
        }
    }
    return Module(ctx.down(), std::move(dims), std::move(actions));
}

ModuleMap pushdown_map(const PushdownContext& ctx, const ModuleMap& u)
{
    const GCategory& gc = ctx.gcat();
    ModuleMap out;
    for (std::size_t x = 0; x < u.comps.size(); ++x) {
        std::vector<Matrix> blocks;
        for (std::size_t a = 0; a < gc.group.order(); ++a) {
            blocks.push_back(u.comps.at(gc.act(a, x)));
        }
        out.comps.push_back(block_diag(gc.cat().field(), blocks));
    }
    return out;
}

Module pullup(const PushdownContext& ctx, const Module& nm)
{
    const LinearCategory& c = ctx.gcat().cat();
    const FunctorData& p = ctx.covering().functor;
    const std::size_t n = c.object_count();
    std::vector<std::vector<Matrix>> actions(n * n);
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
            for (std::size_t i = 0; i < c.hom_dim(x, y); ++i) {
                actions[x * n + y].push_back(nm.act(x, y, p.on(x, y).col(i)));
            }
        }
    }
    return Module(ctx.up(), nm.dims(), std::move(actions));
}

ModuleMap pullup_map(const PushdownContext&, const ModuleMap& v)
{
    return v;
}

ModuleMap phi_down(const PushdownContext& ctx, std::size_t c, const Module& xm)
{
    const GCategory& gc = ctx.gcat();
    const FiniteGroup& g = gc.group;
    const PrimeField f = gc.cat().field();
    const Module tw = twist(gc, c, xm);
    ModuleMap out;
    for (std::size_t x = 0; x < gc.cat().object_count(); ++x) {
        std::size_t rows = 0, cols = 0;
        for (std::size_t a = 0; a < g.order(); ++a) {
            rows += tw.dim(gc.act(a, x));
            cols += xm.dim(gc.act(a, x));
        }
        Matrix m(f, rows, cols);
        for (std::size_t b = 0; b < g.order(); ++b) {
            const std::size_t a = g.mul(g.inverse(c), b);
            m.set_block(ctx.block_offset(tw, x, b), ctx.block_offset(xm, x, a),
                        Matrix::identity(f, xm.dim(gc.act(a, x))));
        }
        out.comps.push_back(std::move(m));
    }
    return out;
}

TwistSum t_iso(const PushdownContext& ctx, const Module& xm)
{
    const GCategory& gc = ctx.gcat();
    const FiniteGroup& g = gc.group;
    const PrimeField f = gc.cat().field();
    std::vector<Module> parts;
    for (std::size_t a = 0; a < g.order(); ++a) {
        parts.push_back(twist(gc, a, xm));
    }
    TwistSum out{direct_sum(ctx.up(), parts), {}};
    for (std::size_t x = 0; x < gc.cat().object_count(); ++x) {
        const std::size_t d = out.twists.sum.dim(x);
        Matrix m(f, d, d);
        std::size_t src = 0;
        for (std::size_t b = 0; b < g.order(); ++b) {
            // (^bX)(x) = X(b^-1 x) is the slot a = b^-1 of (P_X)(x)
            const std::size_t a = g.inverse(b);
            const std::size_t k = xm.dim(gc.act(a, x));
            m.set_block(ctx.block_offset(xm, x, a), src, Matrix::identity(f, k));
            src += k;
        }
        out.t.comps.push_back(std::move(m));
    }
    return out;
}

ModuleMap theta(const PushdownContext& ctx, const Module& xm, const ModuleMap& alpha)
{
    const GCategory& gc = ctx.gcat();
    const std::size_t one = gc.group.identity();
    ModuleMap out;
    for (std::size_t x = 0; x < gc.cat().object_count(); ++x) {
        const Matrix& a = alpha.comps.at(x);
        out.comps.push_back(a.block(0, ctx.block_offset(xm, x, one), a.rows(), xm.dim(x)));
    }
    return out;
}

ModuleMap theta_inv(const PushdownContext& ctx, const Module& xm, const Module& ym, const ModuleMap& f)
{
    const GCategory& gc = ctx.gcat();
    const FiniteGroup& g = gc.group;
    const InvariantFunctor& cov = ctx.covering();
    ModuleMap out;
    for (std::size_t x = 0; x < gc.cat().object_count(); ++x) {
        std::size_t cols = 0;
        for (std::size_t a = 0; a < g.order(); ++a) {
            cols += xm.dim(gc.act(a, x));
        }
        Matrix m(gc.cat().field(), ym.dim(x), cols);
        for (std::size_t a = 0; a < g.order(); ++a) {
            const std::size_t ax = gc.act(a, x);
            // Y(phi_{a,x}) : Y(ax) -> Y(x)
            Matrix block = ym.act(x, ax, cov.phi(a, x)) * f.comps.at(ax);
            m.set_block(0, ctx.block_offset(xm, x, a), block);
        }
        out.comps.push_back(std::move(m));
    }
    return out;
}

ModuleMap unit(const PushdownContext& ctx, const Module& xm)
{
    return theta(ctx, xm, identity_map(pushdown(ctx, xm)));
}

ModuleMap counit(const PushdownContext& ctx, const Module& ym)
{
    Module up = pullup(ctx, ym);
    return theta_inv(ctx, up, ym, identity_map(up));
}

PushdownPrecovering pushdown_precovering(const PushdownContext& ctx, const Module& xm, const Module& ym)
{
    const GCategory& gc = ctx.gcat();
    const FiniteGroup& g = gc.group;
    PushdownPrecovering out;
    Module px = pushdown(ctx, xm);
    Module py = pushdown(ctx, ym);
    out.target = hom_space(px, py);
    std::vector<Vec> cols;
    std::size_t off = 0;
    for (std::size_t a = 0; a < g.order(); ++a) {
        Module tw = twist(gc, a, ym);
        HomSpace src = hom_space(xm, tw);
        ModuleMap back = phi_down(ctx, g.inverse(a), tw);
        for (const auto& fa : src.basis()) {
            cols.push_back(out.target.coords(compose(back, pushdown_map(ctx, fa))));
        }
        out.offsets.push_back(off);
        off += src.dim();
        out.sources.push_back(std::move(src));
        out.twists.push_back(std::move(tw));
    }
    out.matrix = Matrix::from_col_vectors(gc.cat().field(), out.target.dim(), cols);
    return out;
}

AdjointReport verify_adjoint_system(const PushdownContext& ctx, const std::vector<NamedModule>& up_pool,
                                    const std::vector<NamedModule>& down_pool)
{
    AdjointReport rep;
    const PrimeField f = ctx.gcat().cat().field();
    for (const auto& [xn, xm] : up_pool) {
        Module px = pushdown(ctx, xm);
        HomSpace end_x = hom_space(xm, xm);
        for (const auto& [yn, ym] : down_pool) {
            Module py = pullup(ctx, ym);
            HomSpace down = hom_space(px, ym);
            HomSpace up = hom_space(xm, py);
            AdjointPairRecord r;
            r.x = xn;
            r.y = yn;
            r.hom_down = down.dim();
            r.hom_up = up.dim();

            std::vector<Vec> th_cols, inv_cols;
            r.round_trips = true;
            for (const auto& alpha : down.basis()) {
                ModuleMap t = theta(ctx, xm, alpha);
                th_cols.push_back(up.coords(t));
                r.round_trips = r.round_trips && theta_inv(ctx, xm, ym, t) == alpha;
            }
            for (const auto& fm : up.basis()) {
                ModuleMap t = theta_inv(ctx, xm, ym, fm);
                inv_cols.push_back(down.coords(t));
                r.round_trips = r.round_trips && theta(ctx, xm, t) == fm;
            }
            Matrix th = Matrix::from_col_vectors(f, up.dim(), th_cols);
            r.bijective = th.is_square() && rank(th) == th.rows();

            // theta(v . alpha . P_u) = P^v . theta(alpha) . u on sampled basis maps
            r.natural = true;
            HomSpace end_y = hom_space(ym, ym);
            const std::size_t nu = std::min(end_x.dim(), kNaturalitySamples);
            const std::size_t nv = std::min(end_y.dim(), kNaturalitySamples);
            const std::size_t na = std::min(down.dim(), kNaturalitySamples);
            for (std::size_t ia = 0; ia < na; ++ia) {
                ModuleMap alpha = down.basis(ia);
                ModuleMap ta = theta(ctx, xm, alpha);
                for (std::size_t iu = 0; iu < nu; ++iu) {
                    ModuleMap u = end_x.basis(iu);
                    for (std::size_t iv = 0; iv < nv; ++iv) {
                        ModuleMap v = end_y.basis(iv);
                        ModuleMap lhs = theta(ctx, xm, compose(v, compose(alpha, pushdown_map(ctx, u))));
                        ModuleMap rhs = compose(pullup_map(ctx, v), compose(ta, u));
                        r.natural = r.natural && lhs == rhs;
                    }
                }
            }
            rep.ok = rep.ok && r.bijective && r.round_trips && r.natural;
            rep.pairs.push_back(std::move(r));
        }
    }
    for (const auto& [xn, xm] : up_pool) {
        Module px = pushdown(ctx, xm);
        ModuleMap lhs = compose(counit(ctx, px), pushdown_map(ctx, unit(ctx, xm)));
        const bool ok = lhs == identity_map(px);
        rep.unit_triangles.emplace_back(xn, ok);
        rep.ok = rep.ok && ok;
    }
    for (const auto& [yn, ym] : down_pool) {
        Module py = pullup(ctx, ym);
        ModuleMap lhs = compose(pullup_map(ctx, counit(ctx, ym)), unit(ctx, py));
        const bool ok = lhs == identity_map(py);
        rep.counit_triangles.emplace_back(yn, ok);
        rep.ok = rep.ok && ok;
    }
    for (std::size_t i = 0; i < down_pool.size(); ++i) {
        for (std::size_t j = i; j < down_pool.size(); ++j) {
            DirectSum ds = direct_sum(ctx.down(), {down_pool[i].second, down_pool[j].second});
            DirectSum us =
                direct_sum(ctx.up(), {pullup(ctx, down_pool[i].second), pullup(ctx, down_pool[j].second)});
            bool ok = pullup(ctx, ds.sum) == us.sum;
            for (std::size_t k = 0; k < 2; ++k) {
                ok = ok && pullup_map(ctx, ds.injections[k]) == us.injections[k] &&
                     pullup_map(ctx, ds.projections[k]) == us.projections[k];
            }
            rep.coproducts.emplace_back(down_pool[i].first + " + " + down_pool[j].first, ok);
            rep.ok = rep.ok && ok;
        }
    }
    return rep;
}

VitalReport verify_vital_diagram(const PushdownContext& ctx, const Module& xm, const Module& ym)
{
    VitalReport rep;
    const GCategory& gc = ctx.gcat();
    const FiniteGroup& g = gc.group;
    const PrimeField f = gc.cat().field();

    PushdownPrecovering pre = pushdown_precovering(ctx, xm, ym);
    rep.source_dim = pre.matrix.cols();
    rep.target_dim = pre.matrix.rows();
    rep.bijective = pre.matrix.is_square() && rank(pre.matrix) == pre.matrix.rows();

    TwistSum ts = t_iso(ctx, ym);
    Module py = pushdown(ctx, ym);
    Module ppy = pullup(ctx, py);
    HomSpace sum_hom = hom_space(xm, ts.twists.sum);
    HomSpace corner = hom_space(xm, ppy);

    std::vector<Vec> nu_cols;
    rep.commutes = true;
    for (std::size_t a = 0; a < g.order(); ++a) {
        ModuleMap back = phi_down(ctx, g.inverse(a), pre.twists[a]);
        for (const auto& fa : pre.sources[a].basis()) {
            ModuleMap nu = compose(ts.twists.injections[a], fa);
            nu_cols.push_back(sum_hom.coords(nu));
            ModuleMap route1 = compose(ts.t, nu);
            ModuleMap route2 = theta(ctx, xm, compose(back, pushdown_map(ctx, fa)));
            rep.commutes = rep.commutes && corner.coords(route1) == corner.coords(route2);
        }
    }
    Matrix nu = Matrix::from_col_vectors(f, sum_hom.dim(), nu_cols);
    rep.nu_iso = nu.is_square() && rank(nu) == nu.rows();
    return rep;
}

}  // namespace orbitcov
