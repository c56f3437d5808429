#include "orbitcov/groupact.hpp"

#include <algorithm>
#include <array>
#include <deque>

namespace orbitcov {

FiniteGroup FiniteGroup::from_table(std::vector<std::vector<std::size_t>> table, std::vector<std::string> names)
{
    const std::size_t n = table.size();
    if (n == 0) {
        throw ValidationError("group table is empty");
    }
    for (const auto& row : table) {
        if (row.size() != n) {
            throw ValidationError("group table is not square");
        }
        for (auto v : row) {
            if (v >= n) {
                throw ValidationError("group table entry out of range");
            }
        }
    }
    FiniteGroup g;
    g.table_ = std::move(table);
    bool found = false;
    for (std::size_t e = 0; e < n && !found; ++e) {
        bool ok = true;
        for (std::size_t a = 0; a < n && ok; ++a) {
            ok = g.table_[e][a] == a && g.table_[a][e] == a;
        }
        if (ok) {
            g.identity_ = e;
            found = true;
        }
    }
    if (!found) {
        throw ValidationError("group table has no identity element");
    }
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            for (std::size_t c = 0; c < n; ++c) {
                if (g.table_[g.table_[a][b]][c] != g.table_[a][g.table_[b][c]]) {
                    throw ValidationError("group table is not associative at (" + std::to_string(a) + "," +
                                          std::to_string(b) + "," + std::to_string(c) + ")");
                }
            }
        }
    }
    g.inverse_.assign(n, n);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            if (g.table_[a][b] == g.identity_ && g.table_[b][a] == g.identity_) {
                g.inverse_[a] = b;
            }
        }
        if (g.inverse_[a] == n) {
            throw ValidationError("element " + std::to_string(a) + " has no inverse");
        }
    }
    if (names.empty()) {
        for (std::size_t a = 0; a < n; ++a) {
            names.push_back(a == g.identity_ ? "1" : "e" + std::to_string(a));
        }
    }
    if (names.size() != n) {
        throw ValidationError("group element name count does not match the order");
    }
    g.names_ = std::move(names);
    return g;
}

FiniteGroup FiniteGroup::trivial()
{
    return from_table({{0}}, {"1"});
}

FiniteGroup FiniteGroup::cyclic(std::size_t n)
{
    if (n == 0) {
        throw ValidationError("cyclic group of order zero");
    }
    std::vector<std::vector<std::size_t>> t(n, std::vector<std::size_t>(n));
    std::vector<std::string> names;
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            t[a][b] = (a + b) % n;
        }
        names.push_back(a == 0 ? "1" : a == 1 ? "g" : "g" + std::to_string(a));
    }
    return from_table(std::move(t), std::move(names));
}

FiniteGroup FiniteGroup::symmetric3()
{
    // Permutations as images of (0,1,2); (f*g)(i) = f(g(i)).
    const std::vector<std::array<int, 3>> perms = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1},
                                                  {1, 0, 2}, {0, 2, 1}, {2, 1, 0}};
    const std::vector<std::string> names = {"1", "r", "r2", "s", "sr", "sr2"};
    std::vector<std::vector<std::size_t>> t(6, std::vector<std::size_t>(6));
    for (std::size_t a = 0; a < 6; ++a) {
        for (std::size_t b = 0; b < 6; ++b) {
            std::array<int, 3> c{};
            for (int i = 0; i < 3; ++i) {
                c[i] = perms[a][perms[b][i]];
            }
            t[a][b] = static_cast<std::size_t>(std::find(perms.begin(), perms.end(), c) - perms.begin());
        }
    }
    return from_table(std::move(t), names);
}

std::optional<std::size_t> FiniteGroup::find(const std::string& name) const
{
    for (std::size_t a = 0; a < names_.size(); ++a) {
        if (names_[a] == name) {
            return a;
        }
    }
    return std::nullopt;
}

GroupAction generate_action(const LinearCategory& c, const FiniteGroup& g,
                            const std::vector<std::pair<std::size_t, FunctorData>>& generators)
{
    const std::size_t n = g.order();
    std::vector<std::optional<FunctorData>> found(n);
    found[g.identity()] = identity_functor(c);
    std::deque<std::size_t> queue{g.identity()};
    auto assign = [&](std::size_t elem, FunctorData fd, const std::string& word) {
        if (!found[elem]) {
            found[elem] = std::move(fd);
            queue.push_back(elem);
        } else if (!(*found[elem] == fd)) {
            throw ValidationError("action is not a homomorphism: " + word + " != A_" + g.name(elem));
        }
    };
    while (!queue.empty()) {
        const std::size_t h = queue.front();
        queue.pop_front();
        for (const auto& [gen, fd] : generators) {
            if (gen >= n) {
                throw ValidationError("generator index out of range");
            }
            assign(g.mul(gen, h), compose_functors(fd, *found[h]),
                   "A_" + g.name(gen) + " A_" + g.name(h));
        }
    }
    // Every generator image must agree with its own slot (covers generators equal to 1).
    for (const auto& [gen, fd] : generators) {
        if (!(*found[gen] == fd)) {
            throw ValidationError("action is not a homomorphism: generator A_" + g.name(gen) +
                                  " disagrees with the generated automorphism");
        }
    }
    GroupAction act;
    for (std::size_t a = 0; a < n; ++a) {
        if (!found[a]) {
            throw ValidationError("generators do not generate the group (element " + g.name(a) + " missing)");
        }
        act.automorphisms.push_back(std::move(*found[a]));
    }
    return act;
}

GroupAction trivial_action(const LinearCategory& c, const FiniteGroup& g)
{
    GroupAction act;
    act.automorphisms.assign(g.order(), identity_functor(c));
    return act;
}

ActionReport validate_action(const LinearCategory& c, const FiniteGroup& g, const GroupAction& act)
{
    ActionReport r;
    const std::size_t n = g.order();
    if (act.automorphisms.size() != n) {
        r.violations.add("action has " + std::to_string(act.automorphisms.size()) + " automorphisms for a group of order " +
                         std::to_string(n));
        return r;
    }
    for (std::size_t a = 0; a < n; ++a) {
        Violations v = validate_functor(act.of(a), c, c);
        for (auto& s : v.items) {
            r.violations.add("A_" + g.name(a) + ": " + s);
        }
    }
    if (!r.violations.ok()) {
        return r;
    }
    if (!(act.of(g.identity()) == identity_functor(c))) {
        r.violations.add("A_1 is not the identity functor");
    }
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            if (!(compose_functors(act.of(a), act.of(b)) == act.of(g.mul(a, b)))) {
                r.violations.add("A_" + g.name(a) + " A_" + g.name(b) + " != A_" + g.name(g.mul(a, b)));
            }
        }
    }
    r.free = true;
    for (std::size_t a = 0; a < n && r.free; ++a) {
        if (a == g.identity()) {
            continue;
        }
        for (std::size_t x = 0; x < c.object_count(); ++x) {
            if (act.act(a, x) == x) {
                r.free = false;
                break;
            }
        }
    }
    return r;
}

GCategory make_gcategory(CategoryPtr c, FiniteGroup g, GroupAction act)
{
    ActionReport r = validate_action(*c, g, act);
    if (!r.violations.ok()) {
        std::string msg = "invalid group action: " + r.violations.items.front();
        if (r.violations.items.size() > 1) {
            msg += " (and " + std::to_string(r.violations.items.size() - 1) + " more)";
        }
        throw ValidationError(msg);
    }
    GCategory gc{std::move(c), std::move(g), std::move(act), r.free};
    return gc;
}

Violations validate_invariant_structure(const GCategory& gc, const InvariantFunctor& f)
{
    Violations v;
    const LinearCategory& c = gc.cat();
    const LinearCategory& d = *f.target;
    const FiniteGroup& g = gc.group;
    const std::size_t n = c.object_count();
    if (f.structure.phi.size() != g.order()) {
        v.add("invariant structure needs one transformation per group element");
        return v;
    }
    for (std::size_t a = 0; a < g.order(); ++a) {
        FunctorData fa = compose_functors(f.functor, gc.action.of(a));
        for (auto& s : validate_nat_trans(f.structure.phi[a], f.functor, fa, c, d).items) {
            v.add("phi_" + g.name(a) + ": " + s);
        }
    }
    if (!v.ok()) {
        return v;
    }
    for (std::size_t x = 0; x < n; ++x) {
        const std::size_t fx = f.functor.object_map[x];
        if (f.phi(g.identity(), x) != d.identity(fx)) {
            v.add("phi_1 at " + c.object_name(x) + " is not the identity");
        }
        for (std::size_t a = 0; a < g.order(); ++a) {
            const std::size_t fax = f.functor.object_map[gc.act(a, x)];
            if (!is_iso_morphism(d, fx, fax, f.phi(a, x))) {
                v.add("phi_" + g.name(a) + " at " + c.object_name(x) + " is not invertible");
            }
        }
        for (std::size_t a = 0; a < g.order(); ++a) {
            for (std::size_t b = 0; b < g.order(); ++b) {
                const std::size_t ax = gc.act(a, x);
                const std::size_t bax = gc.act(b, ax);
                Vec rhs = d.compose(fx, f.functor.object_map[ax], f.functor.object_map[bax], f.phi(b, ax), f.phi(a, x));
                if (f.phi(g.mul(b, a), x) != rhs) {
                    v.add("cocycle fails: phi_" + g.name(g.mul(b, a)) + " != phi_" + g.name(b) + " phi_" + g.name(a) +
                          " at " + c.object_name(x));
                }
            }
        }
    }
    return v;
}

PrecoveringMapData precovering_map(int kind, const GCategory& gc, const InvariantFunctor& f, std::size_t x,
                                   std::size_t y)
{
    if (kind != 1 && kind != 2) {
        throw std::invalid_argument("precovering map kind must be 1 or 2");
    }
    const LinearCategory& c = gc.cat();
    const LinearCategory& d = *f.target;
    const FiniteGroup& g = gc.group;
    if (x >= c.object_count() || y >= c.object_count()) {
        throw std::out_of_range("precovering_map: object index out of range");
    }
    const std::size_t fx = f.functor.object_map[x];
    const std::size_t fy = f.functor.object_map[y];

    PrecoveringMapData out;
    out.kind = kind;
    out.x = x;
    out.y = y;
    std::size_t total = 0;
    for (std::size_t b = 0; b < g.order(); ++b) {
        const std::size_t dim = kind == 2 ? c.hom_dim(x, gc.act(b, y)) : c.hom_dim(gc.act(b, x), y);
        out.block_offsets.push_back(total);
        out.block_dims.push_back(dim);
        total += dim;
    }
    out.matrix = Matrix(c.field(), d.hom_dim(fx, fy), total);
    for (std::size_t b = 0; b < g.order(); ++b) {
        for (std::size_t i = 0; i < out.block_dims[b]; ++i) {
            Vec col;
            if (kind == 2) {
                const std::size_t by = gc.act(b, y);
                Vec ff = f.functor.apply(x, by, unit_vector(out.block_dims[b], i));
                col = d.compose(fx, f.functor.object_map[by], fy, f.phi(g.inverse(b), by), ff);
            } else {
                const std::size_t ax = gc.act(b, x);
                Vec ff = f.functor.apply(ax, y, unit_vector(out.block_dims[b], i));
                col = d.compose(fx, f.functor.object_map[ax], fy, ff, f.phi(b, x));
            }
            for (std::size_t r = 0; r < col.size(); ++r) {
                out.matrix(r, out.block_offsets[b] + i) = col[r];
            }
        }
    }
    return out;
}

PrecoveringReport is_precovering(const GCategory& gc, const InvariantFunctor& f, const std::vector<std::size_t>& pool)
{
    if (pool.empty()) {
        throw std::invalid_argument("is_precovering: object pool is empty");
    }
    PrecoveringReport rep;
    for (auto x : pool) {
        for (auto y : pool) {
            auto m2 = precovering_map(2, gc, f, x, y);
            auto m1 = precovering_map(1, gc, f, x, y);
            PrecoveringPair pr;
            pr.x = x;
            pr.y = y;
            pr.source_dim = m2.matrix.cols();
            pr.target_dim = m2.matrix.rows();
            pr.rank2 = rank(m2.matrix);
            pr.rank1 = rank(m1.matrix);
            pr.bijective2 = m2.matrix.is_square() && pr.rank2 == pr.target_dim;
            pr.bijective1 = m1.matrix.is_square() && pr.rank1 == m1.matrix.rows();
            rep.precovering = rep.precovering && pr.bijective2;
            rep.kinds_agree = rep.kinds_agree && pr.bijective1 == pr.bijective2;
            rep.pairs.push_back(pr);
        }
    }
    return rep;
}

}  // namespace orbitcov
