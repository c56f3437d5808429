#include "orbitcov/modrep.hpp"

#include <algorithm>

namespace orbitcov {

// ---------------------------------------------------------------------------
// Module

Module::Module(CategoryPtr c, std::vector<std::size_t> dims, std::vector<std::vector<Matrix>> actions)
    : cat_(std::move(c)), dims_(std::move(dims)), actions_(std::move(actions))
{
    const std::size_t n = cat_->object_count();
    if (dims_.size() != n || actions_.size() != n * n) {
        throw DimensionMismatch("module data does not match the object count");
    }
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
            const auto& list = actions_[x * n + y];
            if (list.size() != cat_->hom_dim(x, y)) {
                throw DimensionMismatch("module needs one matrix per basis element of C(" + cat_->object_name(x) + "," +
                                        cat_->object_name(y) + ")");
            }
            for (const auto& m : list) {
                if (m.rows() != dims_[x] || m.cols() != dims_[y]) {
                    throw DimensionMismatch("action matrix for C(" + cat_->object_name(x) + "," + cat_->object_name(y) +
                                            ") must be " + std::to_string(dims_[x]) + "x" + std::to_string(dims_[y]));
                }
            }
        }
    }
}

Module Module::zero(CategoryPtr c)
{
    const std::size_t n = c->object_count();
    std::vector<std::vector<Matrix>> actions(n * n);
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
            actions[x * n + y].assign(c->hom_dim(x, y), Matrix(c->field(), 0, 0));
        }
    }
    return Module(c, std::vector<std::size_t>(n, 0), std::move(actions));
}

std::size_t Module::total_dim() const
{
    std::size_t t = 0;
    for (auto d : dims_) {
        t += d;
    }
    return t;
}

Matrix Module::act(std::size_t x, std::size_t y, std::span<const Elem> e) const
{
    Matrix out(field(), dims_[x], dims_[y]);
    const auto& list = actions_[x * dims_.size() + y];
    if (e.size() != list.size()) {
        throw DimensionMismatch("act: element has the wrong length");
    }
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] != 0) {
            out += list[i].scaled(e[i]);
        }
    }
    return out;
}

bool Module::operator==(const Module& o) const
{
    return (cat_ == o.cat_ || *cat_ == *o.cat_) && dims_ == o.dims_ && actions_ == o.actions_;
}

Violations validate_module(const Module& m)
{
    Violations v;
    const LinearCategory& c = m.cat();
    const std::size_t n = c.object_count();
    for (std::size_t x = 0; x < n; ++x) {
        if (!m.act(x, x, c.identity(x)).is_identity()) {
            v.add("M(1_" + c.object_name(x) + ") is not the identity");
        }
    }
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
            for (std::size_t z = 0; z < n; ++z) {
                for (std::size_t i = 0; i < c.hom_dim(x, y); ++i) {
                    for (std::size_t j = 0; j < c.hom_dim(y, z); ++j) {
                        if (m.act(x, z, c.composite(x, y, z, j, i)) != m.action(x, y, i) * m.action(y, z, j)) {
                            v.add("M(" + c.basis_labels(y, z)[j] + " . " + c.basis_labels(x, y)[i] +
                                  ") != M(" + c.basis_labels(x, y)[i] + ") M(" + c.basis_labels(y, z)[j] + ")");
                        }
                    }
                }
            }
        }
    }
    return v;
}

// ---------------------------------------------------------------------------
// Maps

ModuleMap identity_map(const Module& m)
{
    ModuleMap u;
    for (auto d : m.dims()) {
        u.comps.push_back(Matrix::identity(m.field(), d));
    }
    return u;
}

ModuleMap zero_map(const Module& from, const Module& to)
{
    ModuleMap u;
    for (std::size_t x = 0; x < from.object_count(); ++x) {
        u.comps.emplace_back(from.field(), to.dim(x), from.dim(x));
    }
    return u;
}

ModuleMap compose(const ModuleMap& v, const ModuleMap& u)
{
    if (v.comps.size() != u.comps.size()) {
        throw DimensionMismatch("compose: maps over different object sets");
    }
    ModuleMap out;
    for (std::size_t x = 0; x < u.comps.size(); ++x) {
        out.comps.push_back(v.comps[x] * u.comps[x]);
    }
    return out;
}

ModuleMap add(const ModuleMap& a, const ModuleMap& b)
{
    ModuleMap out;
    for (std::size_t x = 0; x < a.comps.size(); ++x) {
        out.comps.push_back(a.comps[x] + b.comps.at(x));
    }
    return out;
}

ModuleMap scale(PrimeField, Elem s, const ModuleMap& a)
{
    ModuleMap out;
    for (const auto& m : a.comps) {
        out.comps.push_back(m.scaled(s));
    }
    return out;
}

bool is_zero_map(const ModuleMap& u)
{
    for (const auto& m : u.comps) {
        if (!m.is_zero()) {
            return false;
        }
    }
    return true;
}

bool is_iso(const ModuleMap& u)
{
    for (const auto& m : u.comps) {
        if (!m.is_square() || rank(m) != m.rows()) {
            return false;
        }
    }
    return true;
}

Violations validate_map(const ModuleMap& u, const Module& from, const Module& to)
{
    Violations v;
    const LinearCategory& c = from.cat();
    const std::size_t n = c.object_count();
    if (u.comps.size() != n) {
        v.add("map has the wrong number of components");
        return v;
    }
    for (std::size_t x = 0; x < n; ++x) {
        if (u.comps[x].rows() != to.dim(x) || u.comps[x].cols() != from.dim(x)) {
            v.add("component at " + c.object_name(x) + " has the wrong shape");
            return v;
        }
    }
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
            for (std::size_t i = 0; i < c.hom_dim(x, y); ++i) {
                if (u.comps[x] * from.action(x, y, i) != to.action(x, y, i) * u.comps[y]) {
                    v.add("naturality fails at " + c.basis_labels(x, y)[i]);
                }
            }
        }
    }
    return v;
}

// ---------------------------------------------------------------------------
// Hom spaces

HomSpace::HomSpace(const Module& from, const Module& to, Subspace space)
    : field_(from.field()), space_(std::move(space))
{
    std::size_t off = 0;
    for (std::size_t x = 0; x < from.object_count(); ++x) {
        rows_.push_back(to.dim(x));
        cols_.push_back(from.dim(x));
        offsets_.push_back(off);
        off += to.dim(x) * from.dim(x);
    }
    if (off != space_.ambient_dim()) {
        throw DimensionMismatch("hom space ambient dimension mismatch");
    }
}

std::vector<ModuleMap> HomSpace::basis() const
{
    std::vector<ModuleMap> out;
    for (std::size_t i = 0; i < dim(); ++i) {
        out.push_back(basis(i));
    }
    return out;
}

Vec HomSpace::flatten(const ModuleMap& u) const
{
    Vec v(flat_dim(), 0);
    for (std::size_t x = 0; x < rows_.size(); ++x) {
        const Matrix& m = u.comps.at(x);
        if (m.rows() != rows_[x] || m.cols() != cols_[x]) {
            throw DimensionMismatch("flatten: component has the wrong shape");
        }
        std::copy(m.data().begin(), m.data().end(), v.begin() + static_cast<std::ptrdiff_t>(offsets_[x]));
    }
    return v;
}

ModuleMap HomSpace::unflatten(std::span<const Elem> v) const
{
    ModuleMap u;
    for (std::size_t x = 0; x < rows_.size(); ++x) {
        Matrix m(field_, rows_[x], cols_[x]);
        for (std::size_t r = 0; r < rows_[x]; ++r) {
            for (std::size_t c = 0; c < cols_[x]; ++c) {
                m(r, c) = v[offsets_[x] + r * cols_[x] + c];
            }
        }
        u.comps.push_back(std::move(m));
    }
    return u;
}

Vec HomSpace::coords(const ModuleMap& u) const
{
    Vec flat = flatten(u);
    if (!space_.contains(flat)) {
        throw ValidationError("map is not a module homomorphism");
    }
    return space_.coords(flat);
}

ModuleMap HomSpace::combine(std::span<const Elem> coeffs) const
{
    Vec flat(flat_dim(), 0);
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (coeffs[i] != 0) {
            vec_axpy(field_, coeffs[i], space_.basis().row_span(i), flat);
        }
    }
    return unflatten(flat);
}

HomSpace hom_space(const Module& m, const Module& n)
{
    if (!(m.category() == n.category() || m.cat() == n.cat())) {
        throw ValidationError("hom_space: modules live over different categories");
    }
    const LinearCategory& c = m.cat();
    const PrimeField f = c.field();
    const std::size_t k = c.object_count();
    std::vector<std::size_t> off(k);
    std::size_t total = 0;
    for (std::size_t x = 0; x < k; ++x) {
        off[x] = total;
        total += n.dim(x) * m.dim(x);
    }
    std::vector<Vec> rows;
    for (std::size_t x = 0; x < k; ++x) {
        for (std::size_t y = 0; y < k; ++y) {
            const std::size_t dmx = m.dim(x), dmy = m.dim(y), dnx = n.dim(x), dny = n.dim(y);
            if (dnx == 0 || dmy == 0) {
                continue;
            }
            const auto id = c.identity_basis_index(x);
            for (std::size_t i = 0; i < c.hom_dim(x, y); ++i) {
                if (x == y && id && *id == i) {
                    continue;
                }
                const Matrix& me = m.action(x, y, i);
                const Matrix& ne = n.action(x, y, i);
                for (std::size_t r = 0; r < dnx; ++r) {
                    for (std::size_t col = 0; col < dmy; ++col) {
                        Vec eq(total, 0);
                        for (std::size_t t = 0; t < dmx; ++t) {
                            auto& e = eq[off[x] + r * dmx + t];
                            e = f.add(e, me(t, col));
                        }
                        for (std::size_t t = 0; t < dny; ++t) {
                            auto& e = eq[off[y] + t * dmy + col];
                            e = f.sub(e, ne(r, t));
                        }
                        if (!vec_is_zero(eq)) {
                            rows.push_back(std::move(eq));
                        }
                    }
                }
            }
        }
    }
    Subspace space = rows.empty() ? Subspace::full(f, total) : kernel_basis(Matrix::from_row_vectors(f, total, rows));
    return HomSpace(m, n, std::move(space));
}

// ---------------------------------------------------------------------------
// Constructions

Module twist(const GCategory& gc, std::size_t a, const Module& m)
{
    const LinearCategory& c = gc.cat();
    const std::size_t n = c.object_count();
    const std::size_t ai = gc.group.inverse(a);
    const FunctorData& inv = gc.action.of(ai);
    std::vector<std::size_t> dims(n);
    std::vector<std::vector<Matrix>> actions(n * n);
    for (std::size_t x = 0; x < n; ++x) {
        dims[x] = m.dim(gc.act(ai, x));
    }
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
            const std::size_t xs = gc.act(ai, x), ys = gc.act(ai, y);
            for (std::size_t i = 0; i < c.hom_dim(x, y); ++i) {
                actions[x * n + y].push_back(m.act(xs, ys, inv.on(x, y).col(i)));
            }
        }
    }
    return Module(m.category(), std::move(dims), std::move(actions));
}

ModuleMap twist_map(const GCategory& gc, std::size_t a, const ModuleMap& u)
{
    const std::size_t ai = gc.group.inverse(a);
    ModuleMap out;
    for (std::size_t x = 0; x < u.comps.size(); ++x) {
        out.comps.push_back(u.comps[gc.act(ai, x)]);
    }
    return out;
}

Module representable(const CategoryPtr& c, std::size_t x)
{
    const std::size_t n = c->object_count();
    if (x >= n) {
        throw std::out_of_range("representable: object out of range");
    }
    std::vector<std::size_t> dims(n);
    std::vector<std::vector<Matrix>> actions(n * n);
    for (std::size_t y = 0; y < n; ++y) {
        dims[y] = c->hom_dim(y, x);
    }
    for (std::size_t y = 0; y < n; ++y) {
        for (std::size_t z = 0; z < n; ++z) {
            for (std::size_t i = 0; i < c->hom_dim(y, z); ++i) {
                actions[y * n + z].push_back(pre_composition(*c, y, z, x, unit_vector(c->hom_dim(y, z), i)));
            }
        }
    }
    return Module(c, std::move(dims), std::move(actions));
}

ModuleMap yoneda_map(const Module& m, std::size_t x, std::span<const Elem> v)
{
    const LinearCategory& c = m.cat();
    ModuleMap u;
    for (std::size_t y = 0; y < c.object_count(); ++y) {
        Matrix comp(m.field(), m.dim(y), c.hom_dim(y, x));
        for (std::size_t k = 0; k < c.hom_dim(y, x); ++k) {
            Vec img = m.action(y, x, k).apply(v);
            for (std::size_t r = 0; r < img.size(); ++r) {
                comp(r, k) = img[r];
            }
        }
        u.comps.push_back(std::move(comp));
    }
    return u;
}

DirectSum direct_sum(const CategoryPtr& c, const std::vector<Module>& parts)
{
    const std::size_t n = c->object_count();
    const PrimeField f = c->field();
    std::vector<std::size_t> dims(n, 0);
    for (const auto& p : parts) {
        if (!(p.category() == c || p.cat() == *c)) {
            throw ValidationError("direct_sum: summands live over different categories");
        }
        for (std::size_t x = 0; x < n; ++x) {
            dims[x] += p.dim(x);
        }
    }
    std::vector<std::vector<Matrix>> actions(n * n);
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
            for (std::size_t i = 0; i < c->hom_dim(x, y); ++i) {
                std::vector<Matrix> blocks;
                Matrix m(f, dims[x], dims[y]);
                std::size_t r0 = 0, c0 = 0;
                for (const auto& p : parts) {
                    m.set_block(r0, c0, p.action(x, y, i));
                    r0 += p.dim(x);
                    c0 += p.dim(y);
                }
                actions[x * n + y].push_back(std::move(m));
            }
        }
    }
    DirectSum out{Module(c, dims, std::move(actions)), {}, {}};
    std::vector<std::size_t> start(n, 0);
    for (const auto& p : parts) {
        ModuleMap inj, proj;
        for (std::size_t x = 0; x < n; ++x) {
            Matrix i(f, dims[x], p.dim(x)), q(f, p.dim(x), dims[x]);
            for (std::size_t k = 0; k < p.dim(x); ++k) {
                i(start[x] + k, k) = 1;
                q(k, start[x] + k) = 1;
            }
            inj.comps.push_back(std::move(i));
            proj.comps.push_back(std::move(q));
            start[x] += p.dim(x);
        }
        out.injections.push_back(std::move(inj));
        out.projections.push_back(std::move(proj));
    }
    return out;
}

ProjectiveCover projective_epi(const Module& m)
{
    const CategoryPtr& c = m.category();
    const std::size_t n = c->object_count();
    std::vector<Module> parts;
    std::vector<ModuleMap> pieces;
    std::vector<std::size_t> tops;
    // greedy over basis vectors, largest generated submodule first; a vector
    // becomes a generator only if the earlier ones miss it
    struct Candidate {
        std::size_t x;
        ModuleMap u;
        std::size_t reach = 0;
    };
    std::vector<Candidate> cands;
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t k = 0; k < m.dim(x); ++k) {
            Candidate cd{x, yoneda_map(m, x, unit_vector(m.dim(x), k))};
            for (const auto& comp : cd.u.comps) {
                cd.reach += rank(comp);
            }
            cands.push_back(std::move(cd));
        }
    }
    std::stable_sort(cands.begin(), cands.end(),
                     [](const Candidate& a, const Candidate& b) { return a.reach > b.reach; });
    std::vector<std::vector<Vec>> image(n);
    for (auto& cd : cands) {
        bool covered = true;
        for (std::size_t y = 0; y < n && covered; ++y) {
            const Subspace have = Subspace::span(m.field(), m.dim(y), image[y]);
            for (std::size_t j = 0; j < cd.u.comps[y].cols() && covered; ++j) {
                covered = have.contains(cd.u.comps[y].col(j));
            }
        }
        if (covered) {
            continue;
        }
        for (std::size_t y = 0; y < n; ++y) {
            for (std::size_t j = 0; j < cd.u.comps[y].cols(); ++j) {
                image[y].push_back(cd.u.comps[y].col(j));
            }
        }
        parts.push_back(representable(c, cd.x));
        pieces.push_back(std::move(cd.u));
        tops.push_back(cd.x);
    }
    DirectSum ds = direct_sum(c, parts);
    ModuleMap epi = zero_map(ds.sum, m);
    for (std::size_t k = 0; k < parts.size(); ++k) {
        epi = add(epi, compose(pieces[k], ds.projections[k]));
    }
    for (std::size_t x = 0; x < n; ++x) {
        if (rank(epi.comps[x]) != m.dim(x)) {
            throw Error("projective_epi: evaluation map is not surjective");
        }
    }
    return {std::move(ds.sum), std::move(epi), std::move(tops)};
}

namespace {

void check_closed(const Module& m, const std::vector<Subspace>& parts)
{
    const LinearCategory& c = m.cat();
    const std::size_t n = c.object_count();
    if (parts.size() != n) {
        throw DimensionMismatch("need one subspace per object");
    }
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
            for (std::size_t i = 0; i < c.hom_dim(x, y); ++i) {
                for (std::size_t j = 0; j < parts[y].dim(); ++j) {
                    if (!parts[x].contains(m.action(x, y, i).apply(parts[y].vector(j)))) {
                        throw ValidationError("subspaces are not closed under the module action");
                    }
                }
            }
        }
    }
}

}  // namespace

Submodule submodule(const Module& m, const std::vector<Subspace>& parts)
{
    check_closed(m, parts);
    const LinearCategory& c = m.cat();
    const std::size_t n = c.object_count();
    std::vector<std::size_t> dims(n);
    std::vector<std::vector<Matrix>> actions(n * n);
    ModuleMap incl;
    for (std::size_t x = 0; x < n; ++x) {
        dims[x] = parts[x].dim();
        incl.comps.push_back(parts[x].basis().transpose());
    }
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
            for (std::size_t i = 0; i < c.hom_dim(x, y); ++i) {
                Matrix a(m.field(), dims[x], dims[y]);
                for (std::size_t j = 0; j < dims[y]; ++j) {
                    Vec co = parts[x].coords(m.action(x, y, i).apply(parts[y].vector(j)));
                    for (std::size_t r = 0; r < dims[x]; ++r) {
                        a(r, j) = co[r];
                    }
                }
                actions[x * n + y].push_back(std::move(a));
            }
        }
    }
    return {Module(m.category(), std::move(dims), std::move(actions)), std::move(incl)};
}

Quotient quotient(const Module& m, const std::vector<Subspace>& parts)
{
    check_closed(m, parts);
    const LinearCategory& c = m.cat();
    const std::size_t n = c.object_count();
    std::vector<QuotientSpace> qs;
    std::vector<std::size_t> dims(n);
    ModuleMap proj;
    for (std::size_t x = 0; x < n; ++x) {
        qs.push_back(quotient_space(m.dim(x), parts[x]));
        dims[x] = qs.back().dim();
        proj.comps.push_back(qs.back().projection);
    }
    std::vector<std::vector<Matrix>> actions(n * n);
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
            for (std::size_t i = 0; i < c.hom_dim(x, y); ++i) {
                actions[x * n + y].push_back(qs[x].projection * m.action(x, y, i) * qs[y].section);
            }
        }
    }
    return {Module(m.category(), std::move(dims), std::move(actions)), std::move(proj)};
}

Submodule image(const ModuleMap& u, const Module& to)
{
    std::vector<Subspace> parts;
    for (const auto& m : u.comps) {
        parts.push_back(Subspace::column_space(m));
    }
    return submodule(to, parts);
}

Submodule kernel(const ModuleMap& u, const Module& from)
{
    std::vector<Subspace> parts;
    for (const auto& m : u.comps) {
        parts.push_back(kernel_basis(m));
    }
    return submodule(from, parts);
}

Quotient cokernel(const ModuleMap& u, const Module& to)
{
    std::vector<Subspace> parts;
    for (const auto& m : u.comps) {
        parts.push_back(Subspace::column_space(m));
    }
    return quotient(to, parts);
}

namespace {

// Offsets of each pair (x,y) inside the category algebra (+)_{x,y} C(x,y).
std::vector<std::size_t> pair_offsets(const LinearCategory& c)
{
    const std::size_t n = c.object_count();
    std::vector<std::size_t> off(n * n + 1, 0);
    for (std::size_t k = 0; k < n * n; ++k) {
        off[k + 1] = off[k] + c.hom_dim(k / n, k % n);
    }
    return off;
}

}  // namespace

Subspace category_radical(const LinearCategory& c)
{
    const std::size_t n = c.object_count();
    const PrimeField f = c.field();
    const auto off = pair_offsets(c);
    // End(x)/rad End(x) for every object
    std::vector<QuotientSpace> tops;
    for (std::size_t x = 0; x < n; ++x) {
        const std::size_t h = c.hom_dim(x, x);
        FdAlgebra end(f, h, c.identity(x), [&](std::size_t s, std::size_t t) {
            auto st = c.composite(x, x, x, s, t);
            return Vec(st.begin(), st.end());
        });
        tops.push_back(quotient_space(h, radical(end)));
    }
    std::vector<Vec> gens;
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
            const std::size_t hxy = c.hom_dim(x, y);
            if (hxy == 0) {
                continue;
            }
            // rows: coordinates of v.u in End(x)/rad for each basis v of C(y,x)
            std::vector<Vec> rows;
            for (std::size_t v = 0; v < c.hom_dim(y, x); ++v) {
                std::vector<Vec> cols;
                for (std::size_t u = 0; u < hxy; ++u) {
                    cols.push_back(tops[x].project(c.composite(x, y, x, v, u)));
                }
                Matrix m = Matrix::from_col_vectors(f, tops[x].dim(), cols);
                for (std::size_t r = 0; r < m.rows(); ++r) {
                    rows.push_back(m.row(r));
                }
            }
            Subspace j = rows.empty() ? Subspace::full(f, hxy) : kernel_basis(Matrix::from_row_vectors(f, hxy, rows));
            const std::size_t base = off[x * n + y];
            for (std::size_t r = 0; r < j.dim(); ++r) {
                Vec e(off.back(), 0);
                Vec v = j.vector(r);
                std::copy(v.begin(), v.end(), e.begin() + static_cast<std::ptrdiff_t>(base));
                gens.push_back(std::move(e));
            }
        }
    }
    return Subspace::span(f, off.back(), gens);
}

Quotient top(const Module& m)
{
    const LinearCategory& c = m.cat();
    const std::size_t n = c.object_count();
    const auto off = pair_offsets(c);
    Subspace rad = category_radical(c);
    std::vector<std::vector<Vec>> gens(n);
    for (std::size_t r = 0; r < rad.dim(); ++r) {
        Vec v = rad.vector(r);
        for (std::size_t k = 0; k < n * n; ++k) {
            const std::size_t x = k / n, y = k % n;
            Vec e(v.begin() + static_cast<std::ptrdiff_t>(off[k]), v.begin() + static_cast<std::ptrdiff_t>(off[k + 1]));
            if (vec_is_zero(e)) {
                continue;
            }
            Matrix a = m.act(x, y, e);
            for (std::size_t col = 0; col < a.cols(); ++col) {
                gens[x].push_back(a.col(col));
            }
        }
    }
    std::vector<Subspace> parts;
    for (std::size_t x = 0; x < n; ++x) {
        parts.push_back(Subspace::span(m.field(), m.dim(x), gens[x]));
    }
    return quotient(m, parts);
}

Vec map_traces(const std::vector<ModuleMap>& maps)
{
    Vec out;
    for (const auto& u : maps) {
        Elem t = 0;
        for (const auto& c : u.comps) {
            t = c.field().add(t, trace(c));
        }
        out.push_back(t);
    }
    return out;
}

EndAlgebra end_algebra(const Module& m)
{
    HomSpace hom = hom_space(m, m);
    const std::size_t d = hom.dim();
    std::vector<ModuleMap> basis = hom.basis();
    FdAlgebra alg(m.field(), d, hom.coords(identity_map(m)),
                  [&](std::size_t i, std::size_t j) { return hom.coords(compose(basis[i], basis[j])); });
    // End(M) acts faithfully on the total space of M
    alg.set_faithful_traces(map_traces(basis), m.total_dim());
    return {std::move(hom), std::move(alg)};
}

Summand split_idempotent(const ModuleMap& e, const Module& m)
{
    Submodule s = image(e, m);
    ModuleMap proj;
    for (std::size_t x = 0; x < m.object_count(); ++x) {
        Subspace part = Subspace::column_space(e.comps[x]);
        Matrix c(m.field(), part.dim(), m.dim(x));
        for (std::size_t j = 0; j < m.dim(x); ++j) {
            Vec co = part.coords(e.comps[x].col(j));
            for (std::size_t r = 0; r < co.size(); ++r) {
                c(r, j) = co[r];
            }
        }
        proj.comps.push_back(std::move(c));
    }
    return {std::move(s.module), std::move(s.inclusion), std::move(proj)};
}

std::vector<Summand> decompose(const Module& m, std::uint64_t seed)
{
    std::vector<Summand> out;
    if (m.is_zero()) {
        return out;
    }
    EndAlgebra e = end_algebra(m);
    IdempotentDecomposition dec = primitive_idempotents(e.algebra, seed);
    for (const auto& idem : dec.idempotents) {
        out.push_back(split_idempotent(e.hom.combine(idem), m));
    }
    return out;
}

bool is_indecomposable(const Module& m, std::uint64_t)
{
    if (m.is_zero()) {
        return false;
    }
    return is_local(end_algebra(m).algebra);
}

std::vector<Module> simples_at(const CategoryPtr& c, std::size_t v, std::uint64_t seed)
{
    Quotient t = top(representable(c, v));
    std::vector<Module> out;
    for (auto& s : decompose(t.module, seed)) {
        out.push_back(std::move(s.module));
    }
    return out;
}

Module simple(const CategoryPtr& c, std::size_t v, std::uint64_t seed)
{
    auto all = simples_at(c, v, seed);
    if (all.empty()) {
        throw Error("no simple module at object " + c->object_name(v));
    }
    return std::move(all.front());
}

}  // namespace orbitcov
