#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "orbitcov/cli.hpp"
#include "orbitcov/fixture.hpp"
#include "orbitcov/ks.hpp"

namespace py = pybind11;
using namespace orbitcov;

namespace {

using FixturePtr = std::shared_ptr<LoadedFixture>;

std::size_t vertex(const LoadedFixture& f, const std::string& name)
{
    const auto& names = f.bundle.gcat->cat().object_names();
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) {
        throw ValidationError("unknown object " + name);
    }
    return static_cast<std::size_t>(it - names.begin());
}

const CategoryPtr& side(const LoadedFixture& f, bool down)
{
    return down ? f.bundle.ctx->down() : f.bundle.gcat->category;
}

std::size_t group_element(const LoadedFixture& f, const std::string& name)
{
    auto a = f.bundle.gcat->group.find(name);
    if (!a) {
        throw ValidationError("unknown group element " + name);
    }
    return *a;
}

Module named_module(const LoadedFixture& f, const std::string& name)
{
    auto m = find_module(f.bundle, name);
    if (!m) {
        throw ValidationError("no module named " + name);
    }
    return *m;
}

MorphObject named_morph(const LoadedFixture& f, const std::string& name)
{
    for (const auto& [n, m] : f.bundle.morphs) {
        if (n == name) {
            return m;
        }
    }
    throw ValidationError("no arrow named " + name);
}

std::vector<std::vector<std::size_t>> hom_table(const LinearCategory& c)
{
    std::vector<std::vector<std::size_t>> t(c.object_count());
    for (std::size_t x = 0; x < c.object_count(); ++x) {
        for (std::size_t y = 0; y < c.object_count(); ++y) {
            t[x].push_back(c.hom_dim(x, y));
        }
    }
    return t;
}

std::string report(const LoadedFixture& f, const std::vector<std::string>& only, std::optional<std::uint64_t> seed,
                   bool timing)
{
    BatteryConfig cfg;
    cfg.only.insert(only.begin(), only.end());
    cfg.seed = seed.value_or(f.bundle.seed);
    py::gil_scoped_release release;
    return report_to_json(run_battery(f.bundle, cfg), f.hash, timing).dump();
}

FixturePtr random_fixture(std::size_t order, std::size_t vertices, std::size_t arrows, bool fixed_vertex,
                          std::uint64_t seed)
{
    auto f = std::make_shared<LoadedFixture>();
    f->bundle = make_bundle("random", random_gcategory({order, vertices, arrows, fixed_vertex}, seed));
    f->bundle.seed = seed;
    f->has_seed = true;
    return f;
}

}  // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Orbit categories, pushdown functors and G-precovering checks over F_p";

    auto base = py::register_exception<Error>(m, "Error");
    py::register_exception<ParseError>(m, "ParseError", base.ptr());
    py::register_exception<ValidationError>(m, "ValidationError", base.ptr());
    py::register_exception<CapExceeded>(m, "CapExceeded", base.ptr());
    py::register_exception<DimensionMismatch>(m, "DimensionMismatch", base.ptr());
    py::register_exception<FieldTooSmall>(m, "FieldTooSmall", base.ptr());

    py::class_<Module>(m, "Module")
        .def_property_readonly("dims", &Module::dims)
        .def_property_readonly("total_dim", &Module::total_dim)
        .def("is_zero", &Module::is_zero)
        .def("__eq__", &Module::operator==)
        .def("__repr__", [](const Module& x) {
            std::ostringstream s;
            s << "<Module dims=(";
            for (std::size_t i = 0; i < x.dims().size(); ++i) {
                s << (i ? "," : "") << x.dims()[i];
            }
            s << ")>";
            return s.str();
        });

    py::class_<MorphObject>(m, "Arrow")
        .def_readonly("dom", &MorphObject::dom)
        .def_readonly("cod", &MorphObject::cod)
        .def("is_zero_arrow", [](const MorphObject& f) { return is_zero_map(f.arrow); })
        .def("__eq__", &MorphObject::operator==);

    py::class_<LoadedFixture, FixturePtr>(m, "Fixture")
        .def_property_readonly("name", [](const LoadedFixture& f) { return f.bundle.name; })
        .def_property_readonly("hash", [](const LoadedFixture& f) { return f.hash; })
        .def_property_readonly("seed", [](const LoadedFixture& f) { return f.bundle.seed; })
        .def_property_readonly("prime", [](const LoadedFixture& f) { return f.bundle.field().p(); })
        .def_property_readonly("free", [](const LoadedFixture& f) { return f.bundle.gcat->free; })
        .def_property_readonly("group_order", [](const LoadedFixture& f) { return f.bundle.gcat->group.order(); })
        .def_property_readonly("objects", [](const LoadedFixture& f) { return f.bundle.gcat->cat().object_names(); })
        .def_property_readonly("module_names",
                               [](const LoadedFixture& f) {
                                   std::vector<std::string> out;
                                   for (const auto* pool : {&f.bundle.modules, &f.bundle.down_modules}) {
                                       for (const auto& [n, x] : *pool) {
                                           out.push_back(n);
                                       }
                                   }
                                   return out;
                               })
        .def_property_readonly("arrow_names",
                               [](const LoadedFixture& f) {
                                   std::vector<std::string> out;
                                   for (const auto& [n, x] : f.bundle.morphs) {
                                       out.push_back(n);
                                   }
                                   return out;
                               })
        .def("hom_dims", [](const LoadedFixture& f) { return hom_table(f.bundle.gcat->cat()); },
             "dim C(x,y) as a table")
        .def("orbit_hom_dims", [](const LoadedFixture& f) { return hom_table(f.bundle.orbit().cat()); },
             "dim C/G(x,y) as a table")
        .def("module", &named_module, py::arg("name"))
        .def("arrow", &named_morph, py::arg("name"))
        .def(
            "simple",
            [](const LoadedFixture& f, const std::string& v, bool down, std::size_t k) {
                auto all = simples_at(side(f, down), vertex(f, v));
                if (k >= all.size()) {
                    throw ValidationError("no simple summand " + std::to_string(k) + " at " + v);
                }
                return all[k];
            },
            py::arg("vertex"), py::arg("down") = false, py::arg("index") = 0)
        .def(
            "representable",
            [](const LoadedFixture& f, const std::string& v, bool down) {
                return representable(side(f, down), vertex(f, v));
            },
            py::arg("vertex"), py::arg("down") = false)
        .def("pushdown", [](const LoadedFixture& f, const Module& x) { return pushdown(*f.bundle.ctx, x); })
        .def("pullup", [](const LoadedFixture& f, const Module& y) { return pullup(*f.bundle.ctx, y); })
        .def("twist", [](const LoadedFixture& f, const std::string& a, const Module& x) {
            return twist(*f.bundle.gcat, group_element(f, a), x);
        })
        .def("h_pushdown", [](const LoadedFixture& f, const MorphObject& x) { return h_pushdown(*f.bundle.ctx, x); })
        .def(
            "twist_witness",
            [](const LoadedFixture& f, const Module& x, const Module& y, std::uint64_t seed)
                -> std::optional<std::string> {
                auto a = twist_witness(*f.bundle.gcat, x, y, seed);
                if (!a) {
                    return std::nullopt;
                }
                return f.bundle.gcat->group.name(*a);
            },
            py::arg("x"), py::arg("y"), py::arg("seed") = 0)
        .def("report_json", &report, py::arg("only") = std::vector<std::string>{}, py::arg("seed") = py::none(),
             py::arg("timing") = false);

    m.def("load_fixture", &load_fixture_file, py::arg("path"));
    m.def("load_fixture_text", &load_fixture, py::arg("text"), py::arg("name") = "fixture");
    m.def("fixture_hash", [](const std::string& text) { return fixture_hash(parse_fixture_text(text)); });
    m.def("canonicalize", [](const std::string& text) { return canonicalize(parse_fixture_text(text)); });
    m.def("random_fixture", &random_fixture, py::arg("group_order") = 2, py::arg("base_vertices") = 2,
          py::arg("base_arrows") = 3, py::arg("fixed_vertex") = false, py::arg("seed") = 0);

    m.def("hom_dim", [](const Module& x, const Module& y) { return hom_space(x, y).dim(); });
    m.def("stable_hom_dim", [](const Module& x, const Module& y) {
        return factor_hom(IdealSpec::projectives(), x, y).dim();
    });
    m.def(
        "decompose",
        [](const Module& x, std::uint64_t seed) {
            std::vector<Module> out;
            for (auto& s : decompose(x, seed)) {
                out.push_back(std::move(s.module));
            }
            return out;
        },
        py::arg("module"), py::arg("seed") = 0);
    m.def("is_indecomposable", [](const Module& x) { return is_indecomposable(x); });
    m.def(
        "isomorphic", [](const Module& x, const Module& y, std::uint64_t seed) { return iso_test(x, y, seed).isomorphic(); },
        py::arg("x"), py::arg("y"), py::arg("seed") = 0);
    m.def("arrow_hom_dim", [](const MorphObject& f, const MorphObject& g) { return MorphHomSpace(f, g).dim(); });
    m.def("u_ideal_dim", [](const MorphObject& f, const MorphObject& g) { return u_ideal_hom(f, g).dim(); });
    m.def("fp_hom_dim", [](const MorphObject& f, const MorphObject& g) { return fp_hom(f, g).dim(); });
    m.def("nat_oracle", &nat_oracle);

    m.def("run_command", [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code = run_command(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
    });
}
