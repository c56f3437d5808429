#include "orbitcov/fixture.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace orbitcov {

namespace {

std::string trim(std::string_view s)
{
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) {
        ++a;
    }
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) {
        --b;
    }
    return std::string(s.substr(a, b - a));
}

std::string collapse(const std::string& s)
{
    std::string out;
    bool space = false;
    for (char ch : s) {
        if (std::isspace(static_cast<unsigned char>(ch))) {
            space = true;
            continue;
        }
        if (space && !out.empty()) {
            out += ' ';
        }
        space = false;
        out += ch;
    }
    return out;
}

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == sep) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(trim(cur));
    return out;
}

std::vector<std::string> words(const std::string& s)
{
    std::istringstream in(s);
    std::vector<std::string> out;
    std::string w;
    while (in >> w) {
        out.push_back(w);
    }
    return out;
}

std::int64_t to_int(const std::string& s)
{
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) {
        throw ValidationError("expected an integer, got '" + s + "'");
    }
    return v;
}

std::size_t to_size(const std::string& s)
{
    const std::int64_t v = to_int(s);
    if (v < 0) {
        throw ValidationError("expected a non-negative integer, got '" + s + "'");
    }
    return static_cast<std::size_t>(v);
}

std::size_t vertex_index(const QuiverPresentation& q, const std::string& name)
{
    auto it = std::find(q.vertices.begin(), q.vertices.end(), name);
    if (it == q.vertices.end()) {
        throw ValidationError("unknown vertex '" + name + "'");
    }
    return static_cast<std::size_t>(it - q.vertices.begin());
}

Path parse_path(const QuiverPresentation& q, const std::string& text)
{
    Path p;
    if (text.rfind("e_", 0) == 0) {
        p.vertex = vertex_index(q, text.substr(2));
        return p;
    }
    for (const auto& name : split(text, '.')) {
        auto it = std::find_if(q.arrows.begin(), q.arrows.end(), [&](const Arrow& a) { return a.name == name; });
        if (it == q.arrows.end()) {
            throw ValidationError("unknown arrow '" + name + "'");
        }
        const std::size_t a = static_cast<std::size_t>(it - q.arrows.begin());
        if (!p.arrows.empty() && q.arrows[p.arrows.back()].target != it->source) {
            throw ValidationError("arrows in '" + text + "' do not compose");
        }
        p.arrows.push_back(a);
    }
    p.vertex = q.arrows[p.arrows.front()].source;
    return p;
}

// "2 a.b - c + e_1"; the literal "0" is the empty combination
Relation parse_terms(const QuiverPresentation& q, const std::string& text)
{
    Relation out;
    std::string s = collapse(text);
    if (s == "0") {
        return out;
    }
    std::int64_t sign = 1;
    std::size_t i = 0;
    auto skip = [&] {
        while (i < s.size() && s[i] == ' ') {
            ++i;
        }
    };
    skip();
    while (i < s.size()) {
        if (s[i] == '+' || s[i] == '-') {
            sign = s[i] == '-' ? -1 : 1;
            ++i;
            skip();
        }
        std::int64_t coeff = 1;
        if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
            std::size_t j = i;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) {
                ++j;
            }
            coeff = to_int(s.substr(i, j - i));
            i = j;
            skip();
            if (i < s.size() && s[i] == '*') {
                ++i;
                skip();
            }
        }
        std::size_t j = i;
        while (j < s.size() && s[j] != ' ' && s[j] != '+' && s[j] != '-') {
            ++j;
        }
        if (j == i) {
            throw ValidationError("missing path in '" + text + "'");
        }
        out.push_back({sign * coeff, parse_path(q, s.substr(i, j - i))});
        i = j;
        skip();
        sign = 1;
        if (i < s.size() && s[i] != '+' && s[i] != '-') {
            throw ValidationError("expected + or - in '" + text + "'");
        }
    }
    return out;
}

std::vector<std::string> list_of(const std::string& v)
{
    std::vector<std::string> out;
    for (auto& s : split(v, ',')) {
        if (s.empty()) {
            throw ValidationError("empty list item");
        }
        out.push_back(s);
    }
    return out;
}

// name(arg, arg)  ->  {name, args}
std::optional<std::pair<std::string, std::vector<std::string>>> call_form(const std::string& v)
{
    const auto open = v.find('(');
    if (open == std::string::npos || v.back() != ')') {
        return std::nullopt;
    }
    std::string inner = trim(v.substr(open + 1, v.size() - open - 2));
    return std::pair{trim(v.substr(0, open)), inner.empty() ? std::vector<std::string>{} : list_of(inner)};
}

// dims(1,1) alpha[..] beta[..]
struct Literal {
    std::vector<std::size_t> dims;
    std::vector<std::pair<std::string, std::string>> blocks;
};

Literal parse_literal(const std::string& v)
{
    Literal lit;
    const auto close = v.find(')');
    if (v.rfind("dims(", 0) != 0 || close == std::string::npos) {
        throw ValidationError("module literal must start with dims(...)");
    }
    for (const auto& d : list_of(v.substr(5, close - 5))) {
        lit.dims.push_back(to_size(d));
    }
    std::size_t i = close + 1;
    while (i < v.size()) {
        while (i < v.size() && v[i] == ' ') {
            ++i;
        }
        if (i >= v.size()) {
            break;
        }
        const auto open = v.find('[', i);
        const auto end = v.find(']', i);
        if (open == std::string::npos || end == std::string::npos || end < open) {
            throw ValidationError("expected name[matrix] in module literal");
        }
        lit.blocks.emplace_back(trim(v.substr(i, open - i)), v.substr(open, end - open + 1));
        i = end + 1;
    }
    return lit;
}

// [..] [..] ...
std::vector<std::string> bracket_groups(const std::string& v)
{
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < v.size()) {
        if (v[i] == ' ') {
            ++i;
            continue;
        }
        if (v[i] != '[') {
            throw ValidationError("expected [ in '" + v + "'");
        }
        const auto end = v.find(']', i);
        if (end == std::string::npos) {
            throw ValidationError("unterminated [ in '" + v + "'");
        }
        out.push_back(v.substr(i, end - i + 1));
        i = end + 1;
    }
    return out;
}

std::uint64_t fnv1a(const std::string& s)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

template <class F>
auto located(std::size_t line, std::size_t col, F&& fn)
{
    try {
        return fn();
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception& e) {
        throw ParseError(e.what(), line, col);
    }
}

template <class F>
void at(const FixtureEntry& e, F&& fn)
{
    located(e.line, e.column, [&] {
        fn();
        return 0;
    });
}

class Builder {
public:
    Builder(const FixtureFile& f, std::string name) : f_(f), name_(std::move(name)) {}

    LoadedFixture build()
    {
        LoadedFixture out;
        out.file = f_;
        out.hash = fixture_hash(f_);
        PrimeField field = build_field();
        QuiverPresentation q = build_quiver();
        const FixtureSection* qs = f_.find("quiver");
        auto pc = located(qs ? qs->line : 1, 1, [&] { return std::make_shared<PathCategory>(build_category(q, field)); });
        pc_ = pc;
        out.path_category = pc;
        FiniteGroup g = build_group();
        GroupAction act = build_action(g);
        const FixtureSection* as = f_.find("action");
        const std::size_t act_line = as ? as->line : (f_.find("group") ? f_.find("group")->line : 1);
        auto gc = located(act_line, 1, [&] {
            return std::make_shared<const GCategory>(make_gcategory(pc->category(), g, std::move(act)));
        });
        const FixtureSection* run = f_.find("run");
        if (run && run->find("name")) {
            name_ = run->find("name")->value;
        }
        b_ = located(act_line, 1, [&] { return make_bundle(name_, gc); });
        build_modules();
        build_down_modules();
        build_morphs();
        build_ideals();
        build_subcategories();
        build_density();
        build_pool_limits();
        if (run) {
            for (const auto& e : run->entries) {
                at(e, [&] {
                    if (e.key == "seed") {
                        b_.seed = static_cast<std::uint64_t>(to_size(e.value));
                        out.has_seed = true;
                    } else if (e.key != "name") {
                        throw ValidationError("unknown key '" + e.key + "' in [run]");
                    }
                });
            }
        }
        located(1, 1, [&] {
            validate_bundle(b_);
            return 0;
        });
        out.bundle = std::move(b_);
        return out;
    }

private:
    const PathCategory& pc() const { return *pc_; }
    const CategoryPtr& up() const { return b_.gcat->category; }
    const CategoryPtr& down() const { return b_.ctx->down(); }
    PrimeField field() const { return up()->field(); }

    PrimeField build_field()
    {
        const FixtureSection* s = f_.find("field");
        if (!s) {
            return PrimeField();
        }
        PrimeField out;
        for (const auto& e : s->entries) {
            at(e, [&] {
                if (e.key != "p") {
                    throw ValidationError("unknown key '" + e.key + "' in [field]");
                }
                const std::size_t p = to_size(e.value);
                if (p > 0xffffffffULL) {
                    throw ValidationError("prime does not fit a machine word");
                }
                out = PrimeField(static_cast<std::uint32_t>(p));
            });
        }
        return out;
    }

    QuiverPresentation build_quiver()
    {
        QuiverPresentation q;
        const FixtureSection* s = f_.find("quiver");
        if (!s) {
            throw ParseError("missing [quiver] section", 1, 1);
        }
        const FixtureEntry* v = s->find("vertices");
        if (!v) {
            throw ParseError("[quiver] needs a vertices entry", s->line, 1);
        }
        at(*v, [&] {
            q.vertices = list_of(v->value);
            for (std::size_t i = 0; i < q.vertices.size(); ++i) {
                for (std::size_t j = 0; j < i; ++j) {
                    if (q.vertices[i] == q.vertices[j]) {
                        throw ValidationError("duplicate vertex '" + q.vertices[i] + "'");
                    }
                }
            }
        });
        for (const auto& e : s->entries) {
            if (e.key == "vertices") {
                continue;
            }
            at(e, [&] {
                const auto arrow = e.value.find("->");
                if (arrow == std::string::npos) {
                    throw ValidationError("arrow must read 'source -> target'");
                }
                if (e.key.find_first_of(" .*+-") != std::string::npos || e.key.rfind("e_", 0) == 0) {
                    throw ValidationError("arrow name '" + e.key + "' may not contain spaces, '.', '*', '+', '-' or start with e_");
                }
                q.arrows.push_back({e.key, vertex_index(q, trim(e.value.substr(0, arrow))),
                                    vertex_index(q, trim(e.value.substr(arrow + 2)))});
            });
        }
        if (const FixtureSection* r = f_.find("relations")) {
            for (const auto& e : r->entries) {
                at(e, [&] {
                    Relation rel = parse_terms(q, e.value);
                    if (rel.empty()) {
                        throw ValidationError("empty relation");
                    }
                    q.relations.push_back(std::move(rel));
                });
            }
        }
        return q;
    }

    FiniteGroup build_group()
    {
        const FixtureSection* s = f_.find("group");
        if (!s) {
            return FiniteGroup::trivial();
        }
        const FixtureEntry* t = s->find("type");
        if (!t) {
            throw ParseError("[group] needs a type entry", s->line, 1);
        }
        FiniteGroup g;
        at(*t, [&] {
            auto w = words(t->value);
            if (w.size() == 1 && w[0] == "trivial") {
                g = FiniteGroup::trivial();
            } else if (w.size() == 2 && w[0] == "cyclic") {
                g = FiniteGroup::cyclic(to_size(w[1]));
            } else if (w.size() == 2 && w[0] == "symmetric" && w[1] == "3") {
                g = FiniteGroup::symmetric3();
            } else if (w.size() == 1 && w[0] == "table") {
                const FixtureEntry* el = s->find("elements");
                const FixtureEntry* tb = s->find("table");
                if (!el || !tb) {
                    throw ValidationError("type = table needs elements and table entries");
                }
                std::vector<std::string> names = list_of(el->value);
                std::vector<std::vector<std::size_t>> table;
                at(*tb, [&] {
                    for (const auto& row : split(tb->value, ';')) {
                        std::vector<std::size_t> r;
                        for (const auto& w2 : words(row)) {
                            auto it = std::find(names.begin(), names.end(), w2);
                            if (it == names.end()) {
                                throw ValidationError("unknown group element '" + w2 + "'");
                            }
                            r.push_back(static_cast<std::size_t>(it - names.begin()));
                        }
                        table.push_back(std::move(r));
                    }
                    g = FiniteGroup::from_table(std::move(table), names);
                });
            } else {
                throw ValidationError("group type must be trivial, cyclic n, symmetric 3 or table");
            }
        });
        for (const auto& e : s->entries) {
            if (e.key != "type" && e.key != "elements" && e.key != "table") {
                at(e, [&] { throw ValidationError("unknown key '" + e.key + "' in [group]"); });
            }
        }
        return g;
    }

    GroupAction build_action(const FiniteGroup& g)
    {
        const FixtureSection* s = f_.find("action");
        if (!s || s->entries.empty()) {
            return trivial_action(*pc().category(), g);
        }
        const QuiverPresentation& q = pc().presentation();
        const std::size_t nv = q.vertices.size();
        struct Gen {
            std::vector<std::size_t> objects;
            std::vector<std::optional<std::string>> images;
            std::vector<const FixtureEntry*> image_entries;
            const FixtureEntry* first = nullptr;
        };
        std::map<std::size_t, Gen> gens;
        for (const auto& e : s->entries) {
            at(e, [&] {
                const auto dot = e.key.find('.');
                if (dot == std::string::npos) {
                    throw ValidationError("action keys read 'element.objects' or 'element.arrow'");
                }
                auto a = g.find(e.key.substr(0, dot));
                if (!a) {
                    throw ValidationError("unknown group element '" + e.key.substr(0, dot) + "'");
                }
                Gen& gen = gens[*a];
                if (!gen.first) {
                    gen.first = &e;
                    gen.objects.resize(nv);
                    for (std::size_t v = 0; v < nv; ++v) {
                        gen.objects[v] = v;
                    }
                    gen.images.resize(q.arrows.size());
                    gen.image_entries.resize(q.arrows.size(), nullptr);
                }
                const std::string what = e.key.substr(dot + 1);
                if (what == "objects") {
                    auto list = list_of(e.value);
                    if (list.size() != nv) {
                        throw ValidationError("objects lists the image of every vertex in order");
                    }
                    for (std::size_t v = 0; v < nv; ++v) {
                        gen.objects[v] = vertex_index(q, list[v]);
                    }
                    return;
                }
                auto it = std::find_if(q.arrows.begin(), q.arrows.end(), [&](const Arrow& x) { return x.name == what; });
                if (it == q.arrows.end()) {
                    throw ValidationError("unknown arrow '" + what + "'");
                }
                const std::size_t ai = static_cast<std::size_t>(it - q.arrows.begin());
                gen.images[ai] = e.value;
                gen.image_entries[ai] = &e;
            });
        }
        std::vector<std::pair<std::size_t, FunctorData>> generators;
        for (auto& [a, gen] : gens) {
            std::vector<Vec> images;
            for (std::size_t ai = 0; ai < q.arrows.size(); ++ai) {
                const Arrow& arr = q.arrows[ai];
                const std::size_t s2 = gen.objects[arr.source], t2 = gen.objects[arr.target];
                if (!gen.images[ai]) {
                    if (s2 != arr.source || t2 != arr.target) {
                        at(*gen.first, [&] {
                            throw ValidationError("A_" + g.name(a) + " moves arrow " + arr.name +
                                                  " but gives no image for it");
                        });
                    }
                    images.push_back(pc().path_coords(Path{arr.source, {ai}}));
                    continue;
                }
                at(*gen.image_entries[ai], [&] { images.push_back(parse_path_combination(pc(), *gen.images[ai], s2, t2)); });
            }
            at(*gen.first, [&] {
                generators.emplace_back(a, functor_from_arrow_images(pc(), gen.objects, images));
            });
        }
        return located(s->line, 1, [&] { return generate_action(*pc().category(), g, generators); });
    }

    Module lookup(const std::vector<NamedModule>& pool, const std::string& name, const CategoryPtr& c) const
    {
        if (name == "0") {
            return Module::zero(c);
        }
        for (const auto& [n, m] : pool) {
            if (n == name) {
                return m;
            }
        }
        throw ValidationError("unknown module '" + name + "'");
    }

    Module module_expr(const std::string& v, bool is_down)
    {
        const CategoryPtr& c = is_down ? down() : up();
        const auto& pool = is_down ? b_.down_modules : b_.modules;
        auto w = words(v);
        if (w.empty()) {
            throw ValidationError("empty module");
        }
        const auto vertex = [&](const std::string& name) { return vertex_index(pc().presentation(), name); };
        if (w[0] == "zero" && w.size() == 1) {
            return Module::zero(c);
        }
        if (w[0] == "simple" && (w.size() == 2 || w.size() == 3)) {
            auto all = simples_at(c, vertex(w[1]));
            const std::size_t k = w.size() == 3 ? to_size(w[2]) : 0;
            if (k >= all.size()) {
                throw ValidationError("vertex " + w[1] + " has " + std::to_string(all.size()) + " simple summands");
            }
            return all[k];
        }
        if ((w[0] == "rep" || w[0] == "proj") && w.size() == 2) {
            return representable(c, vertex(w[1]));
        }
        if (w[0] == "twist" && w.size() == 3 && !is_down) {
            auto a = b_.gcat->group.find(w[1]);
            if (!a) {
                throw ValidationError("unknown group element '" + w[1] + "'");
            }
            return twist(*b_.gcat, *a, lookup(pool, w[2], c));
        }
        if (w[0] == "sum" && w.size() >= 2) {
            std::vector<Module> parts;
            for (std::size_t i = 1; i < w.size(); ++i) {
                parts.push_back(lookup(pool, w[i], c));
            }
            return direct_sum(c, parts).sum;
        }
        if (w[0] == "pullup" && w.size() == 2 && !is_down) {
            return pullup(*b_.ctx, lookup(b_.down_modules, w[1], down()));
        }
        if (w[0] == "pushdown" && w.size() == 2 && is_down) {
            return pushdown(*b_.ctx, lookup(b_.modules, w[1], up()));
        }
        if (v.rfind("dims(", 0) == 0) {
            Literal lit = parse_literal(collapse(v));
            return is_down ? label_literal(lit) : arrow_literal(lit);
        }
        throw ValidationError("unknown module expression '" + v + "'");
    }

    Module arrow_literal(const Literal& lit) const
    {
        const QuiverPresentation& q = pc().presentation();
        if (lit.dims.size() != q.vertices.size()) {
            throw ValidationError("dims lists one dimension per vertex");
        }
        std::vector<std::optional<Matrix>> mats(q.arrows.size());
        for (const auto& [name, text] : lit.blocks) {
            auto it = std::find_if(q.arrows.begin(), q.arrows.end(), [&](const Arrow& a) { return a.name == name; });
            if (it == q.arrows.end()) {
                throw ValidationError("unknown arrow '" + name + "'");
            }
            const std::size_t ai = static_cast<std::size_t>(it - q.arrows.begin());
            if (mats[ai]) {
                throw ValidationError("arrow " + name + " given twice");
            }
            mats[ai] = parse_matrix(field(), text, lit.dims[it->source], lit.dims[it->target]);
        }
        return module_from_arrows(pc(), lit.dims, mats);
    }

    // downstairs literals name the basis labels of C/G
    Module label_literal(const Literal& lit) const
    {
        const LinearCategory& c = *down();
        const std::size_t n = c.object_count();
        if (lit.dims.size() != n) {
            throw ValidationError("dims lists one dimension per object");
        }
        std::map<std::string, std::string> given;
        for (const auto& [name, text] : lit.blocks) {
            if (!given.emplace(name, text).second) {
                throw ValidationError("basis element " + name + " given twice");
            }
        }
        std::vector<std::vector<Matrix>> actions;
        for (std::size_t x = 0; x < n; ++x) {
            for (std::size_t y = 0; y < n; ++y) {
                std::vector<Matrix> per;
                const auto id = x == y ? c.identity_basis_index(x) : std::nullopt;
                for (std::size_t i = 0; i < c.hom_dim(x, y); ++i) {
                    const std::string& label = c.basis_labels(x, y)[i];
                    auto it = given.find(label);
                    if (id && *id == i) {
                        if (it != given.end()) {
                            throw ValidationError("identity " + label + " acts as the identity; do not list it");
                        }
                        per.push_back(Matrix::identity(field(), lit.dims[x]));
                    } else if (it != given.end()) {
                        per.push_back(parse_matrix(field(), it->second, lit.dims[x], lit.dims[y]));
                        given.erase(it);
                    } else {
                        per.emplace_back(field(), lit.dims[x], lit.dims[y]);
                    }
                }
                actions.push_back(std::move(per));
            }
        }
        if (!given.empty()) {
            throw ValidationError("unknown basis element '" + given.begin()->first + "'");
        }
        Module m(down(), lit.dims, std::move(actions));
        Violations v = validate_module(m);
        if (!v.ok()) {
            throw ValidationError("not a module: " + v.items.front());
        }
        return m;
    }

    void add_named(std::vector<NamedModule>& pool, const FixtureEntry& e, Module m)
    {
        if (e.key == "0") {
            throw ValidationError("the name 0 is reserved for the zero module");
        }
        for (const auto& [n, x] : pool) {
            if (n == e.key) {
                throw ValidationError("module '" + e.key + "' defined twice");
            }
        }
        pool.emplace_back(e.key, std::move(m));
    }

    void build_modules()
    {
        if (const FixtureSection* s = f_.find("modules")) {
            for (const auto& e : s->entries) {
                at(e, [&] { add_named(b_.modules, e, module_expr(e.value, false)); });
            }
        }
    }

    void build_down_modules()
    {
        if (const FixtureSection* s = f_.find("down_modules")) {
            for (const auto& e : s->entries) {
                at(e, [&] { add_named(b_.down_modules, e, module_expr(e.value, true)); });
            }
        }
    }

    void build_morphs()
    {
        const FixtureSection* s = f_.find("morphs");
        if (!s) {
            return;
        }
        for (const auto& e : s->entries) {
            at(e, [&] {
                for (const auto& [n, f] : b_.morphs) {
                    if (n == e.key) {
                        throw ValidationError("arrow '" + e.key + "' defined twice");
                    }
                }
                b_.morphs.emplace_back(e.key, morph_expr(e.value));
            });
        }
    }

    MorphObject morph_expr(const std::string& v) const
    {
        auto w = words(v);
        if (w.size() == 2 && w[0] == "id") {
            return identity_object(lookup(b_.modules, w[1], up()));
        }
        if (w.size() == 2 && w[0] == "cover") {
            Module m = lookup(b_.modules, w[1], up());
            ProjectiveCover pc2 = projective_epi(m);
            return {pc2.projective, m, pc2.epi};
        }
        if (w.size() < 4 || w[1] != "->") {
            throw ValidationError("arrow must read 'id M', 'cover M' or 'M -> N zero|basis k|[..]..'");
        }
        Module x = lookup(b_.modules, w[0], up());
        Module y = lookup(b_.modules, w[2], up());
        if (w[3] == "zero" && w.size() == 4) {
            return {x, y, zero_map(x, y)};
        }
        if (w[3] == "basis" && w.size() == 5) {
            HomSpace h = hom_space(x, y);
            const std::size_t k = to_size(w[4]);
            if (k >= h.dim()) {
                throw ValidationError("Hom(" + w[0] + "," + w[2] + ") has dimension " + std::to_string(h.dim()));
            }
            return {x, y, h.basis(k)};
        }
        const auto start = v.find('[');
        if (start == std::string::npos) {
            throw ValidationError("unknown arrow expression '" + v + "'");
        }
        auto groups = bracket_groups(collapse(v.substr(start)));
        if (groups.size() != x.object_count()) {
            throw ValidationError("arrow literal lists one matrix per object");
        }
        ModuleMap u;
        for (std::size_t o = 0; o < groups.size(); ++o) {
            u.comps.push_back(parse_matrix(field(), groups[o], y.dim(o), x.dim(o)));
        }
        return make_morph(x, y, u);
    }

    std::vector<Module> module_list(const std::vector<std::string>& names, bool is_down) const
    {
        std::vector<Module> out;
        for (const auto& n : names) {
            out.push_back(is_down ? lookup(b_.down_modules, n, down()) : lookup(b_.modules, n, up()));
        }
        return out;
    }

    std::vector<NamedModule> named_list(const std::string& v, bool is_down) const
    {
        std::vector<NamedModule> out;
        auto names = list_of(v);
        auto mods = module_list(names, is_down);
        for (std::size_t i = 0; i < names.size(); ++i) {
            out.emplace_back(names[i], mods[i]);
        }
        return out;
    }

    void build_ideals()
    {
        const FixtureSection* s = f_.find("ideals");
        if (!s) {
            return;
        }
        b_.stable_ideal = false;
        b_.u_ideal = false;
        for (const auto& e : s->entries) {
            at(e, [&] {
                const std::string v = collapse(e.value);
                if (v == "projectives") {
                    b_.stable_ideal = true;
                } else if (v == "uobjects") {
                    b_.u_ideal = true;
                } else if (auto call = call_form(v); call && call->first == "objects") {
                    b_.factor_classes.push_back({e.key, module_list(call->second, false)});
                } else {
                    throw ValidationError("ideal must be projectives, objects(M, ...) or uobjects");
                }
            });
        }
    }

    void build_subcategories()
    {
        const FixtureSection* s = f_.find("subcategories");
        if (!s) {
            return;
        }
        for (const auto& e : s->entries) {
            at(e, [&] {
                const auto dot = e.key.rfind('.');
                const std::string side = dot == std::string::npos ? "" : e.key.substr(dot + 1);
                if (side != "up" && side != "down") {
                    throw ValidationError("subcategory keys read 'name.up' or 'name.down'");
                }
                const std::string name = e.key.substr(0, dot);
                auto it = std::find_if(b_.subcategories.begin(), b_.subcategories.end(),
                                       [&](const SubcategoryPair& p) { return p.name == name; });
                if (it == b_.subcategories.end()) {
                    b_.subcategories.push_back({name, {}, {}});
                    it = b_.subcategories.end() - 1;
                }
                (side == "up" ? it->up : it->down) = named_list(e.value, side == "down");
            });
        }
    }

    void build_density()
    {
        const FixtureSection* s = f_.find("density");
        if (!s) {
            return;
        }
        for (const auto& e : s->entries) {
            at(e, [&] {
                if (e.key != "candidates") {
                    throw ValidationError("unknown key '" + e.key + "' in [density]");
                }
                for (auto& nm : named_list(e.value, true)) {
                    b_.density.push_back(std::move(nm));
                }
            });
        }
    }

    void build_pool_limits()
    {
        const FixtureSection* s = f_.find("pool");
        if (!s) {
            return;
        }
        std::map<std::string, std::size_t*> keys = {{"max_total_dim", &b_.limits.max_total_dim},
                                                    {"max_modules", &b_.limits.max_modules},
                                                    {"max_morphs", &b_.limits.max_morphs},
                                                    {"random_modules", &b_.limits.random_modules},
                                                    {"random_morphs", &b_.limits.random_morphs},
                                                    {"max_summands", &b_.limits.max_summands}};
        for (const auto& e : s->entries) {
            at(e, [&] {
                auto it = keys.find(e.key);
                if (it == keys.end()) {
                    throw ValidationError("unknown key '" + e.key + "' in [pool]");
                }
                *it->second = to_size(e.value);
            });
        }
    }

    const FixtureFile& f_;
    std::string name_;
    std::shared_ptr<const PathCategory> pc_;
    FixtureBundle b_;
};

}  // namespace

const FixtureEntry* FixtureSection::find(const std::string& key) const
{
    for (const auto& e : entries) {
        if (e.key == key) {
            return &e;
        }
    }
    return nullptr;
}

const FixtureSection* FixtureFile::find(const std::string& name) const
{
    for (const auto& s : sections) {
        if (s.name == name) {
            return &s;
        }
    }
    return nullptr;
}

const std::vector<std::string>& fixture_sections()
{
    static const std::vector<std::string> names = {"field",   "quiver", "relations", "group",         "action",
                                                   "modules", "down_modules", "morphs", "ideals", "subcategories",
                                                   "density", "pool",   "run"};
    return names;
}

FixtureFile parse_fixture_text(const std::string& text)
{
    FixtureFile f;
    std::istringstream in(text);
    std::string raw;
    std::size_t line = 0;
    while (std::getline(in, raw)) {
        ++line;
        if (!raw.empty() && raw.back() == '\r') {
            raw.pop_back();
        }
        const auto hash = raw.find('#');
        const std::string body = hash == std::string::npos ? raw : raw.substr(0, hash);
        const std::string t = trim(body);
        if (t.empty()) {
            continue;
        }
        const std::size_t indent = body.find_first_not_of(" \t") + 1;
        if (t.front() == '[') {
            if (t.back() != ']') {
                throw ParseError("section header is missing ']'", line, indent + t.size() - 1);
            }
            std::string name = trim(t.substr(1, t.size() - 2));
            const auto& known = fixture_sections();
            if (std::find(known.begin(), known.end(), name) == known.end()) {
                throw ParseError("unknown section [" + name + "]", line, indent);
            }
            if (f.find(name)) {
                throw ParseError("section [" + name + "] appears twice", line, indent);
            }
            f.sections.push_back({name, line, {}});
            continue;
        }
        const auto eq = body.find('=');
        if (eq == std::string::npos) {
            throw ParseError("expected 'key = value'", line, indent);
        }
        if (f.sections.empty()) {
            throw ParseError("entry outside of any section", line, indent);
        }
        std::string key = trim(body.substr(0, eq));
        if (key.empty()) {
            throw ParseError("empty key", line, indent);
        }
        const std::string rest = body.substr(eq + 1);
        const auto first = rest.find_first_not_of(" \t");
        std::string value = trim(rest);
        const std::size_t col = eq + 2 + (first == std::string::npos ? 0 : first);
        if (value.empty()) {
            throw ParseError("empty value for '" + key + "'", line, col);
        }
        FixtureSection& s = f.sections.back();
        if (s.find(key)) {
            throw ParseError("key '" + key + "' repeated in [" + s.name + "]", line, indent);
        }
        s.entries.push_back({std::move(key), std::move(value), line, col});
    }
    return f;
}

std::string canonicalize(const FixtureFile& f)
{
    std::string out;
    for (const auto& name : fixture_sections()) {
        const FixtureSection* s = f.find(name);
        if (!s) {
            continue;
        }
        out += "[" + name + "]\n";
        for (const auto& e : s->entries) {
            out += e.key + " = " + collapse(e.value) + "\n";
        }
    }
    return out;
}

std::string fixture_hash(const FixtureFile& f)
{
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(canonicalize(f))));
    return buf;
}

LoadedFixture load_fixture(const std::string& text, const std::string& name)
{
    FixtureFile f = parse_fixture_text(text);
    return Builder(f, name).build();
}

LoadedFixture load_fixture_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot read " + path, 0, 0);
    }
    std::stringstream ss;
    ss << in.rdbuf();
    std::string name = path;
    if (auto slash = name.find_last_of('/'); slash != std::string::npos) {
        name = name.substr(slash + 1);
    }
    if (auto dot = name.find_last_of('.'); dot != std::string::npos && dot > 0) {
        name = name.substr(0, dot);
    }
    return load_fixture(ss.str(), name);
}

std::optional<Module> find_module(const FixtureBundle& b, const std::string& name)
{
    for (const auto* pool : {&b.modules, &b.down_modules}) {
        for (const auto& [n, m] : *pool) {
            if (n == name) {
                return m;
            }
        }
    }
    return std::nullopt;
}

Vec parse_path_combination(const PathCategory& pc, const std::string& text, std::size_t source, std::size_t target)
{
    const QuiverPresentation& q = pc.presentation();
    const LinearCategory& c = *pc.category();
    Vec out(c.hom_dim(source, target), 0);
    const PrimeField f = c.field();
    for (const auto& term : parse_terms(q, text)) {
        if (q.path_source(term.path) != source || q.path_target(term.path) != target) {
            throw ValidationError("path " + q.path_name(term.path) + " does not run from " + q.vertices[source] +
                                  " to " + q.vertices[target]);
        }
        Vec v = pc.path_coords(term.path);
        const Elem k = f.from_int(term.coeff);
        for (std::size_t i = 0; i < out.size(); ++i) {
            out[i] = f.add(out[i], f.mul(k, v[i]));
        }
    }
    return out;
}

Matrix parse_matrix(PrimeField f, const std::string& text, std::size_t rows, std::size_t cols)
{
    std::string t = trim(text);
    if (t.size() < 2 || t.front() != '[' || t.back() != ']') {
        throw ValidationError("matrix must be written [a b; c d]");
    }
    t = trim(t.substr(1, t.size() - 2));
    Matrix m(f, rows, cols);
    if (t.empty()) {
        if (rows != 0 && cols != 0) {
            throw ValidationError("empty matrix where a " + std::to_string(rows) + "x" + std::to_string(cols) +
                                  " one is needed");
        }
        return m;
    }
    auto row_text = split(t, ';');
    if (row_text.size() != rows) {
        throw ValidationError("matrix has " + std::to_string(row_text.size()) + " rows, expected " +
                              std::to_string(rows));
    }
    for (std::size_t r = 0; r < rows; ++r) {
        auto entries = words(row_text[r]);
        if (entries.size() != cols) {
            throw ValidationError("matrix row " + std::to_string(r + 1) + " has " + std::to_string(entries.size()) +
                                  " entries, expected " + std::to_string(cols));
        }
        for (std::size_t c = 0; c < cols; ++c) {
            m(r, c) = f.from_int(to_int(entries[c]));
        }
    }
    return m;
}

Module module_from_arrows(const PathCategory& pc, const std::vector<std::size_t>& dims,
                          const std::vector<std::optional<Matrix>>& arrows)
{
    const QuiverPresentation& q = pc.presentation();
    const CategoryPtr& c = pc.category();
    const PrimeField f = c->field();
    const std::size_t n = c->object_count();
    if (dims.size() != n || arrows.size() != q.arrows.size()) {
        throw DimensionMismatch("module_from_arrows: wrong number of dimensions or arrows");
    }
    auto arrow_mat = [&](std::size_t a) {
        const Arrow& arr = q.arrows[a];
        if (arrows[a]) {
            const Matrix& m = *arrows[a];
            if (m.rows() != dims[arr.source] || m.cols() != dims[arr.target]) {
                throw DimensionMismatch("matrix of arrow " + arr.name + " has the wrong shape");
            }
            return m;
        }
        return Matrix(f, dims[arr.source], dims[arr.target]);
    };
    for (std::size_t r = 0; r < q.relations.size(); ++r) {
        const auto& rel = q.relations[r];
        const std::size_t s = q.path_source(rel.front().path);
        const std::size_t t = q.path_target(rel.front().path);
        Matrix sum(f, dims[s], dims[t]);
        for (const auto& term : rel) {
            Matrix m2 = Matrix::identity(f, dims[s]);
            for (auto a : term.path.arrows) {
                m2 = m2 * arrow_mat(a);
            }
            Matrix scaled(f, dims[s], dims[t]);
            const Elem k = f.from_int(term.coeff);
            for (std::size_t i = 0; i < dims[s]; ++i) {
                for (std::size_t j = 0; j < dims[t]; ++j) {
                    scaled(i, j) = f.mul(k, m2(i, j));
                }
            }
            sum = sum + scaled;
        }
        for (std::size_t i = 0; i < dims[s]; ++i) {
            for (std::size_t j = 0; j < dims[t]; ++j) {
                if (sum(i, j) != 0) {
                    throw ValidationError("arrow matrices violate relation " + std::to_string(r + 1));
                }
            }
        }
    }
    std::vector<std::vector<Matrix>> actions;
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
            std::vector<Matrix> per;
            for (const auto& p : pc.basis_paths(x, y)) {
                // M(a_k ... a_1) = M(a_1) ... M(a_k)
                Matrix m = Matrix::identity(f, dims[x]);
                for (auto a : p.arrows) {
                    m = m * arrow_mat(a);
                }
                per.push_back(std::move(m));
            }
            actions.push_back(std::move(per));
        }
    }
    Module m(c, dims, std::move(actions));
    Violations v = validate_module(m);
    if (!v.ok()) {
        throw ValidationError("not a module: " + v.items.front());
    }
    return m;
}

}  // namespace orbitcov
