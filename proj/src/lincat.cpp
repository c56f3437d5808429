#include "orbitcov/lincat.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace orbitcov {

// ---------------------------------------------------------------------------
// QuiverPresentation

std::size_t QuiverPresentation::path_source(const Path& p) const
{
    return p.arrows.empty() ? p.vertex : arrows.at(p.arrows.front()).source;
}

std::size_t QuiverPresentation::path_target(const Path& p) const
{
    return p.arrows.empty() ? p.vertex : arrows.at(p.arrows.back()).target;
}

std::string QuiverPresentation::path_name(const Path& p) const
{
    if (p.arrows.empty()) {
        return "e_" + vertices.at(p.vertex);
    }
    std::string s;
    for (std::size_t i = 0; i < p.arrows.size(); ++i) {
        if (i) {
            s += '.';
        }
        s += arrows.at(p.arrows[i]).name;
    }
    return s;
}

// ---------------------------------------------------------------------------
// LinearCategory

LinearCategory::LinearCategory(PrimeField field, std::vector<std::string> object_names,
                               std::vector<std::vector<std::string>> basis_labels)
    : field_(field), names_(std::move(object_names)), labels_(std::move(basis_labels))
{
    const std::size_t n = names_.size();
    if (labels_.size() != n * n) {
        throw DimensionMismatch("basis label table must have one entry per ordered object pair");
    }
    identity_.resize(n);
    for (std::size_t x = 0; x < n; ++x) {
        identity_[x] = Vec(hom_dim(x, x), 0);
    }
    comp_.resize(n * n * n);
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
            for (std::size_t z = 0; z < n; ++z) {
                comp_[triple(x, y, z)].assign(hom_dim(y, z) * hom_dim(x, y) * hom_dim(x, z), 0);
            }
        }
    }
}

std::size_t LinearCategory::total_dim() const
{
    std::size_t t = 0;
    for (const auto& l : labels_) {
        t += l.size();
    }
    return t;
}

void LinearCategory::set_identity(std::size_t x, Vec coords)
{
    if (coords.size() != hom_dim(x, x)) {
        throw DimensionMismatch("identity coordinates have the wrong length");
    }
    identity_.at(x) = std::move(coords);
}

std::span<const Elem> LinearCategory::composite(std::size_t x, std::size_t y, std::size_t z, std::size_t j,
                                                std::size_t i) const
{
    const std::size_t dxz = hom_dim(x, z);
    const auto& t = comp_[triple(x, y, z)];
    return std::span<const Elem>(t.data() + (j * hom_dim(x, y) + i) * dxz, dxz);
}

void LinearCategory::set_composite(std::size_t x, std::size_t y, std::size_t z, std::size_t j, std::size_t i,
                                   std::span<const Elem> coords)
{
    const std::size_t dxz = hom_dim(x, z);
    if (coords.size() != dxz) {
        throw DimensionMismatch("composite coordinates have the wrong length");
    }
    auto& t = comp_[triple(x, y, z)];
    std::copy(coords.begin(), coords.end(), t.begin() + static_cast<std::ptrdiff_t>((j * hom_dim(x, y) + i) * dxz));
}

Vec LinearCategory::compose(std::size_t x, std::size_t y, std::size_t z, std::span<const Elem> g,
                            std::span<const Elem> f) const
{
    const std::size_t dxy = hom_dim(x, y);
    const std::size_t dyz = hom_dim(y, z);
    if (g.size() != dyz || f.size() != dxy) {
        throw DimensionMismatch("compose: morphisms are not composable (" + names_[x] + "->" + names_[y] + "->" +
                                names_[z] + ")");
    }
    Vec out(hom_dim(x, z), 0);
    for (std::size_t j = 0; j < dyz; ++j) {
        if (g[j] == 0) {
            continue;
        }
        for (std::size_t i = 0; i < dxy; ++i) {
            if (f[i] == 0) {
                continue;
            }
            vec_axpy(field_, field_.mul(g[j], f[i]), composite(x, y, z, j, i), out);
        }
    }
    return out;
}

std::optional<std::size_t> LinearCategory::identity_basis_index(std::size_t x) const
{
    const Vec& id = identity_.at(x);
    std::optional<std::size_t> idx;
    for (std::size_t i = 0; i < id.size(); ++i) {
        if (id[i] == 0) {
            continue;
        }
        if (id[i] != 1 || idx) {
            return std::nullopt;
        }
        idx = i;
    }
    return idx;
}

bool LinearCategory::operator==(const LinearCategory& other) const
{
    return field_ == other.field_ && names_ == other.names_ && labels_ == other.labels_ &&
           identity_ == other.identity_ && comp_ == other.comp_;
}

// ---------------------------------------------------------------------------
// Path categories

namespace {

bool path_less(const Path& a, const Path& b)
{
    if (a.arrows.size() != b.arrows.size()) {
        return a.arrows.size() < b.arrows.size();
    }
    return a.arrows < b.arrows;
}

Path concat(const Path& first, const Path& second)
{
    if (first.arrows.empty()) {
        return second;
    }
    if (second.arrows.empty()) {
        return first;
    }
    Path p;
    p.vertex = first.vertex;
    p.arrows = first.arrows;
    p.arrows.insert(p.arrows.end(), second.arrows.begin(), second.arrows.end());
    return p;
}

void check_presentation(const QuiverPresentation& q)
{
    const std::size_t nv = q.vertices.size();
    if (nv == 0) {
        throw ValidationError("quiver has no vertices");
    }
    for (const auto& a : q.arrows) {
        if (a.source >= nv || a.target >= nv) {
            throw ValidationError("arrow " + a.name + " references a missing vertex");
        }
    }
    for (std::size_t r = 0; r < q.relations.size(); ++r) {
        const auto& rel = q.relations[r];
        if (rel.empty()) {
            throw ValidationError("relation " + std::to_string(r) + " is empty");
        }
        std::size_t src = 0, tgt = 0;
        for (std::size_t t = 0; t < rel.size(); ++t) {
            const Path& p = rel[t].path;
            if (p.arrows.empty()) {
                throw ValidationError("relation " + std::to_string(r) + " contains a trivial path");
            }
            for (std::size_t k = 0; k < p.arrows.size(); ++k) {
                if (p.arrows[k] >= q.arrows.size()) {
                    throw ValidationError("relation " + std::to_string(r) + " uses an unknown arrow");
                }
                if (k > 0 && q.arrows[p.arrows[k - 1]].target != q.arrows[p.arrows[k]].source) {
                    throw ValidationError("relation " + std::to_string(r) + " contains a non-composable path " +
                                          q.path_name(p));
                }
            }
            const std::size_t s = q.path_source(p), e = q.path_target(p);
            if (t == 0) {
                src = s;
                tgt = e;
            } else if (s != src || e != tgt) {
                throw ValidationError("relation " + std::to_string(r) + " mixes non-parallel paths");
            }
        }
    }
}

// Paths of length <= max_len, grouped per (source, target) pair and sorted.
std::vector<std::vector<Path>> enumerate_paths(const QuiverPresentation& q, std::size_t max_len)
{
    const std::size_t nv = q.vertices.size();
    std::vector<std::vector<Path>> out(nv * nv);
    std::vector<Path> frontier;
    for (std::size_t v = 0; v < nv; ++v) {
        Path p;
        p.vertex = v;
        frontier.push_back(p);
        out[v * nv + v].push_back(p);
    }
    for (std::size_t len = 1; len <= max_len; ++len) {
        std::vector<Path> next;
        for (const auto& p : frontier) {
            const std::size_t end = q.path_target(p);
            for (std::size_t a = 0; a < q.arrows.size(); ++a) {
                if (q.arrows[a].source != end) {
                    continue;
                }
                Path np = p;
                np.arrows.push_back(a);
                np.vertex = q.path_source(p);
                out[q.path_source(np) * nv + q.arrows[a].target].push_back(np);
                next.push_back(std::move(np));
            }
        }
        frontier = std::move(next);
    }
    for (auto& v : out) {
        std::sort(v.begin(), v.end(), path_less);
    }
    return out;
}

struct PathIndex {
    // per pair: arrow sequence -> index in the sorted path list
    std::vector<std::map<std::vector<std::size_t>, std::size_t>> index;

    PathIndex(const std::vector<std::vector<Path>>& paths) : index(paths.size())
    {
        for (std::size_t k = 0; k < paths.size(); ++k) {
            for (std::size_t i = 0; i < paths[k].size(); ++i) {
                index[k][paths[k][i].arrows] = i;
            }
        }
    }
};

// Ideal elements u r v whose terms all have length < `limit_exclusive`
// (strict) or whose minimum length is < limit (truncating longer terms).
// Coordinates are "reversed": position j <-> path index size-1-j, so that
// echelon pivots land on the longest paths.
std::vector<Subspace> ideal_spaces(const QuiverPresentation& q, PrimeField f,
                                   const std::vector<std::vector<Path>>& paths, const PathIndex& idx,
                                   std::size_t limit, bool truncate)
{
    const std::size_t nv = q.vertices.size();
    std::vector<std::vector<Vec>> gens(nv * nv);
    // paths ending at / starting from each vertex with length < limit
    std::vector<std::vector<const Path*>> ending(nv), starting(nv);
    for (std::size_t a = 0; a < nv; ++a) {
        for (std::size_t b = 0; b < nv; ++b) {
            for (const auto& p : paths[a * nv + b]) {
                if (p.arrows.size() < limit) {
                    ending[b].push_back(&p);
                    starting[a].push_back(&p);
                }
            }
        }
    }
    for (const auto& rel : q.relations) {
        std::size_t minlen = SIZE_MAX, maxlen = 0;
        for (const auto& t : rel) {
            minlen = std::min(minlen, t.path.arrows.size());
            maxlen = std::max(maxlen, t.path.arrows.size());
        }
        const std::size_t s = q.path_source(rel.front().path);
        const std::size_t e = q.path_target(rel.front().path);
        for (const Path* u : ending[s]) {
            for (const Path* v : starting[e]) {
                const std::size_t extra = u->arrows.size() + v->arrows.size();
                if (truncate ? extra + minlen >= limit : extra + maxlen >= limit) {
                    continue;
                }
                const std::size_t a = q.path_source(*u);
                const std::size_t b = q.path_target(*v);
                const std::size_t k = a * nv + b;
                const std::size_t n = paths[k].size();
                Vec vec(n, 0);
                bool any = false;
                for (const auto& t : rel) {
                    Path full = concat(concat(*u, t.path), *v);
                    if (full.arrows.size() >= limit) {
                        continue;  // lies in J^limit
                    }
                    auto it = idx.index[k].find(full.arrows);
                    const std::size_t j = n - 1 - it->second;
                    vec[j] = f.add(vec[j], f.from_int(t.coeff));
                    any = true;
                }
                if (any) {
                    gens[k].push_back(std::move(vec));
                }
            }
        }
    }
    std::vector<Subspace> out;
    out.reserve(nv * nv);
    for (std::size_t k = 0; k < nv * nv; ++k) {
        out.push_back(Subspace::span(f, paths[k].size(), gens[k]));
    }
    return out;
}

}  // namespace

PathCategory build_category(const QuiverPresentation& q, PrimeField field, std::size_t dim_cap)
{
    if (dim_cap == 0) {
        throw std::invalid_argument("dimension cap must be positive");
    }
    check_presentation(q);
    const std::size_t nv = q.vertices.size();

    // Find the smallest L with every path of length L inside the ideal.
    std::size_t bound = 0;
    for (std::size_t len = 1;; ++len) {
        auto paths = enumerate_paths(q, len);
        PathIndex idx(paths);
        auto ideal = ideal_spaces(q, field, paths, idx, len + 1, false);
        std::size_t residue = 0;
        bool saturated = true;
        for (std::size_t k = 0; k < nv * nv; ++k) {
            residue += paths[k].size() - ideal[k].dim();
            const std::size_t n = paths[k].size();
            for (std::size_t i = 0; i < n && saturated; ++i) {
                if (paths[k][i].arrows.size() == len && !ideal[k].contains(unit_vector(n, n - 1 - i))) {
                    saturated = false;
                }
            }
        }
        if (saturated) {
            bound = len;
            break;
        }
        if (residue > dim_cap) {
            throw CapExceeded("path category exceeds the dimension cap " + std::to_string(dim_cap) +
                              " at path length " + std::to_string(len) +
                              " (presentation is not admissible or the cap is too small)");
        }
    }

    PathCategory pc;
    pc.quiver_ = q;
    pc.bound_ = bound;
    pc.paths_ = enumerate_paths(q, bound - 1);
    PathIndex idx(pc.paths_);
    pc.relations_ = ideal_spaces(q, field, pc.paths_, idx, bound, true);
    pc.free_.resize(nv * nv);
    pc.basis_paths_.resize(nv * nv);

    std::vector<std::vector<std::string>> labels(nv * nv);
    std::size_t total = 0;
    for (std::size_t k = 0; k < nv * nv; ++k) {
        const std::size_t n = pc.paths_[k].size();
        std::vector<char> pivot(n, 0);
        for (auto c : pc.relations_[k].pivots()) {
            pivot[n - 1 - c] = 1;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (!pivot[i]) {
                pc.free_[k].push_back(i);
                pc.basis_paths_[k].push_back(pc.paths_[k][i]);
                labels[k].push_back(q.path_name(pc.paths_[k][i]));
            }
        }
        total += pc.free_[k].size();
    }
    if (total > dim_cap) {
        throw CapExceeded("path category dimension " + std::to_string(total) + " exceeds the cap " +
                          std::to_string(dim_cap));
    }

    auto cat = std::make_shared<LinearCategory>(field, q.vertices, labels);
    pc.cat_ = cat;
    for (std::size_t x = 0; x < nv; ++x) {
        Path trivial;
        trivial.vertex = x;
        cat->set_identity(x, pc.path_coords(trivial));
    }
    for (std::size_t x = 0; x < nv; ++x) {
        for (std::size_t y = 0; y < nv; ++y) {
            for (std::size_t z = 0; z < nv; ++z) {
                const auto& fs = pc.basis_paths(x, y);
                const auto& gs = pc.basis_paths(y, z);
                for (std::size_t j = 0; j < gs.size(); ++j) {
                    for (std::size_t i = 0; i < fs.size(); ++i) {
                        Path composite = concat(fs[i], gs[j]);
                        if (composite.arrows.empty()) {
                            composite.vertex = x;
                        }
                        cat->set_composite(x, y, z, j, i, pc.path_coords(composite));
                    }
                }
            }
        }
    }
    return pc;
}

Vec PathCategory::path_coords(const Path& p) const
{
    const std::size_t nv = quiver_.vertices.size();
    const std::size_t a = quiver_.path_source(p);
    const std::size_t b = quiver_.path_target(p);
    const std::size_t k = a * nv + b;
    Vec out(free_[k].size(), 0);
    if (p.arrows.size() >= bound_) {
        return out;
    }
    const auto& list = paths_[k];
    auto it = std::lower_bound(list.begin(), list.end(), p, path_less);
    if (it == list.end() || it->arrows != p.arrows) {
        throw ValidationError("path " + quiver_.path_name(p) + " is not a valid path");
    }
    const std::size_t n = list.size();
    const std::size_t i = static_cast<std::size_t>(it - list.begin());
    Vec reduced = relations_[k].reduce(unit_vector(n, n - 1 - i));
    for (std::size_t b2 = 0; b2 < free_[k].size(); ++b2) {
        out[b2] = reduced[n - 1 - free_[k][b2]];
    }
    return out;
}

// ---------------------------------------------------------------------------
// Validation

Violations validate_category(const LinearCategory& c)
{
    Violations v;
    const std::size_t n = c.object_count();
    const PrimeField f = c.field();
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
            const std::size_t dxy = c.hom_dim(x, y);
            for (std::size_t i = 0; i < dxy; ++i) {
                Vec e = unit_vector(dxy, i);
                if (c.compose(x, y, y, c.identity(y), e) != e) {
                    v.add("left unit law fails for basis " + c.basis_labels(x, y)[i]);
                }
                if (c.compose(x, x, y, e, c.identity(x)) != e) {
                    v.add("right unit law fails for basis " + c.basis_labels(x, y)[i]);
                }
            }
        }
    }
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
            for (std::size_t z = 0; z < n; ++z) {
                for (std::size_t w = 0; w < n; ++w) {
                    const std::size_t dxy = c.hom_dim(x, y), dyz = c.hom_dim(y, z), dzw = c.hom_dim(z, w);
                    for (std::size_t i = 0; i < dxy; ++i) {
                        for (std::size_t j = 0; j < dyz; ++j) {
                            auto gf = c.composite(x, y, z, j, i);
                            for (std::size_t k = 0; k < dzw; ++k) {
                                Vec h = unit_vector(dzw, k);
                                Vec lhs = c.compose(x, z, w, h, gf);
                                Vec rhs = c.compose(x, y, w, c.composite(y, z, w, k, j), unit_vector(dxy, i));
                                if (lhs != rhs) {
                                    v.add("associativity fails on (" + c.basis_labels(z, w)[k] + ", " +
                                          c.basis_labels(y, z)[j] + ", " + c.basis_labels(x, y)[i] + ")");
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    (void)f;
    return v;
}

FunctorData identity_functor(const LinearCategory& c)
{
    const std::size_t n = c.object_count();
    FunctorData fd;
    fd.object_map.resize(n);
    for (std::size_t x = 0; x < n; ++x) {
        fd.object_map[x] = x;
    }
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
            fd.hom_maps.push_back(Matrix::identity(c.field(), c.hom_dim(x, y)));
        }
    }
    return fd;
}

FunctorData functor_from_arrow_images(const PathCategory& pc, std::vector<std::size_t> object_map,
                                      const std::vector<Vec>& arrow_images)
{
    const QuiverPresentation& q = pc.presentation();
    const LinearCategory& c = *pc.category();
    const std::size_t n = c.object_count();
    if (object_map.size() != n) {
        throw ValidationError("object map has " + std::to_string(object_map.size()) + " entries for " +
                              std::to_string(n) + " vertices");
    }
    for (auto v : object_map) {
        if (v >= n) {
            throw ValidationError("object map sends a vertex out of range");
        }
    }
    if (arrow_images.size() != q.arrows.size()) {
        throw ValidationError("need one image per arrow");
    }
    for (std::size_t a = 0; a < q.arrows.size(); ++a) {
        const auto& arr = q.arrows[a];
        if (arrow_images[a].size() != c.hom_dim(object_map[arr.source], object_map[arr.target])) {
            throw ValidationError("image of arrow " + arr.name + " does not live in C(" +
                                  c.object_name(object_map[arr.source]) + "," + c.object_name(object_map[arr.target]) +
                                  ")");
        }
    }
    FunctorData fd;
    fd.object_map = std::move(object_map);
    const auto& om = fd.object_map;
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
            std::vector<Vec> cols;
            for (const auto& p : pc.basis_paths(x, y)) {
                Vec cur = c.identity(om[x]);
                for (auto a : p.arrows) {
                    const auto& arr = q.arrows[a];
                    cur = c.compose(om[x], om[arr.source], om[arr.target], arrow_images[a], cur);
                }
                cols.push_back(std::move(cur));
            }
            fd.hom_maps.push_back(Matrix::from_col_vectors(c.field(), c.hom_dim(om[x], om[y]), cols));
        }
    }
    Violations v = validate_functor(fd, c, c);
    if (!v.ok()) {
        throw ValidationError("arrow images do not define a functor: " + v.items.front());
    }
    return fd;
}

FunctorData compose_functors(const FunctorData& g, const FunctorData& f)
{
    const std::size_t n = f.source_count();
    FunctorData out;
    out.object_map.resize(n);
    for (std::size_t x = 0; x < n; ++x) {
        out.object_map[x] = g.object_map.at(f.object_map[x]);
    }
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
            out.hom_maps.push_back(g.on(f.object_map[x], f.object_map[y]) * f.on(x, y));
        }
    }
    return out;
}

Violations validate_functor(const FunctorData& fd, const LinearCategory& src, const LinearCategory& tgt)
{
    Violations v;
    const std::size_t n = src.object_count();
    if (fd.object_map.size() != n || fd.hom_maps.size() != n * n) {
        v.add("functor data does not match the source object count");
        return v;
    }
    for (std::size_t x = 0; x < n; ++x) {
        if (fd.object_map[x] >= tgt.object_count()) {
            v.add("object " + src.object_name(x) + " maps outside the target");
            return v;
        }
    }
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
            const Matrix& m = fd.on(x, y);
            if (m.rows() != tgt.hom_dim(fd.object_map[x], fd.object_map[y]) || m.cols() != src.hom_dim(x, y)) {
                v.add("hom matrix for (" + src.object_name(x) + "," + src.object_name(y) + ") has the wrong shape");
                return v;
            }
        }
    }
    for (std::size_t x = 0; x < n; ++x) {
        if (fd.apply(x, x, src.identity(x)) != tgt.identity(fd.object_map[x])) {
            v.add("identity of " + src.object_name(x) + " is not preserved");
        }
    }
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
            for (std::size_t z = 0; z < n; ++z) {
                for (std::size_t i = 0; i < src.hom_dim(x, y); ++i) {
                    for (std::size_t j = 0; j < src.hom_dim(y, z); ++j) {
                        Vec lhs = fd.apply(x, z, src.composite(x, y, z, j, i));
                        Vec rhs = tgt.compose(fd.object_map[x], fd.object_map[y], fd.object_map[z],
                                              fd.on(y, z).col(j), fd.on(x, y).col(i));
                        if (lhs != rhs) {
                            v.add("composition not preserved on (" + src.basis_labels(y, z)[j] + ", " +
                                  src.basis_labels(x, y)[i] + ")");
                        }
                    }
                }
            }
        }
    }
    return v;
}

Violations validate_nat_trans(const NatTransData& alpha, const FunctorData& f, const FunctorData& g,
                              const LinearCategory& src, const LinearCategory& tgt)
{
    Violations v;
    const std::size_t n = src.object_count();
    if (alpha.components.size() != n) {
        v.add("natural transformation has the wrong number of components");
        return v;
    }
    for (std::size_t x = 0; x < n; ++x) {
        if (alpha.components[x].size() != tgt.hom_dim(f.object_map[x], g.object_map[x])) {
            v.add("component at " + src.object_name(x) + " has the wrong length");
            return v;
        }
    }
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
            for (std::size_t i = 0; i < src.hom_dim(x, y); ++i) {
                // G(e) . alpha_x == alpha_y . F(e)
                Vec lhs = tgt.compose(f.object_map[x], g.object_map[x], g.object_map[y], g.on(x, y).col(i),
                                      alpha.components[x]);
                Vec rhs = tgt.compose(f.object_map[x], f.object_map[y], g.object_map[y], alpha.components[y],
                                      f.on(x, y).col(i));
                if (lhs != rhs) {
                    v.add("naturality fails at basis " + src.basis_labels(x, y)[i]);
                }
            }
        }
    }
    return v;
}

LinearCategory opposite(const LinearCategory& c)
{
    const std::size_t n = c.object_count();
    std::vector<std::vector<std::string>> labels(n * n);
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
            labels[x * n + y] = c.basis_labels(y, x);
        }
    }
    LinearCategory op(c.field(), c.object_names(), labels);
    for (std::size_t x = 0; x < n; ++x) {
        op.set_identity(x, c.identity(x));
    }
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
            for (std::size_t z = 0; z < n; ++z) {
                for (std::size_t j = 0; j < c.hom_dim(z, y); ++j) {
                    for (std::size_t i = 0; i < c.hom_dim(y, x); ++i) {
                        op.set_composite(x, y, z, j, i, c.composite(z, y, x, i, j));
                    }
                }
            }
        }
    }
    return op;
}

LinearCategory full_subcategory(const LinearCategory& c, const std::vector<std::size_t>& objects)
{
    const std::size_t m = objects.size();
    std::vector<std::string> names;
    std::vector<std::vector<std::string>> labels(m * m);
    for (std::size_t a = 0; a < m; ++a) {
        names.push_back(c.object_name(objects[a]));
        for (std::size_t b = 0; b < m; ++b) {
            labels[a * m + b] = c.basis_labels(objects[a], objects[b]);
        }
    }
    LinearCategory sub(c.field(), names, labels);
    for (std::size_t a = 0; a < m; ++a) {
        sub.set_identity(a, c.identity(objects[a]));
        for (std::size_t b = 0; b < m; ++b) {
            for (std::size_t d = 0; d < m; ++d) {
                const std::size_t x = objects[a], y = objects[b], z = objects[d];
                for (std::size_t j = 0; j < c.hom_dim(y, z); ++j) {
                    for (std::size_t i = 0; i < c.hom_dim(x, y); ++i) {
                        sub.set_composite(a, b, d, j, i, c.composite(x, y, z, j, i));
                    }
                }
            }
        }
    }
    return sub;
}

Matrix post_composition(const LinearCategory& c, std::size_t w, std::size_t x, std::size_t y,
                        std::span<const Elem> g)
{
    const std::size_t dwx = c.hom_dim(w, x);
    std::vector<Vec> cols;
    for (std::size_t k = 0; k < dwx; ++k) {
        cols.push_back(c.compose(w, x, y, g, unit_vector(dwx, k)));
    }
    return Matrix::from_col_vectors(c.field(), c.hom_dim(w, y), cols);
}

Matrix pre_composition(const LinearCategory& c, std::size_t x, std::size_t y, std::size_t z,
                       std::span<const Elem> f)
{
    const std::size_t dyz = c.hom_dim(y, z);
    std::vector<Vec> cols;
    for (std::size_t k = 0; k < dyz; ++k) {
        cols.push_back(c.compose(x, y, z, unit_vector(dyz, k), f));
    }
    return Matrix::from_col_vectors(c.field(), c.hom_dim(x, z), cols);
}

bool is_iso_morphism(const LinearCategory& c, std::size_t x, std::size_t y, std::span<const Elem> f)
{
    // g in C(y,x) with g.f = 1_x and f.g = 1_y
    Matrix a = vstack(pre_composition(c, x, y, x, f), post_composition(c, y, x, y, f));
    Vec rhs = c.identity(x);
    rhs.insert(rhs.end(), c.identity(y).begin(), c.identity(y).end());
    return solve_vec(a, rhs).has_value();
}

}  // namespace orbitcov
