#include "orbitcov/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>

#include "CLI11.hpp"
#include "orbitcov/fixture.hpp"

namespace orbitcov {

namespace {

constexpr std::size_t kInlineDims = 16;

struct Options {
    std::string file;
    std::vector<std::string> only;
    std::optional<std::uint64_t> seed;
    std::string module;
    std::string json_path;
    bool no_timing = false;
    bool verbose = false;
};

std::uint64_t effective_seed(const Options& o, const LoadedFixture& f)
{
    if (o.seed) {
        return *o.seed;
    }
    if (const char* env = std::getenv("ORBITCOV_SEED"); env && *env) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw ValidationError(std::string("ORBITCOV_SEED is not a number: ") + env);
        }
    }
    return f.bundle.seed;
}

std::string dims_text(const std::vector<std::size_t>& d)
{
    std::string s = "(";
    for (std::size_t i = 0; i < d.size(); ++i) {
        s += (i ? "," : "") + std::to_string(d[i]);
    }
    return s + ")";
}

int cmd_validate(const Options& o, std::ostream& out)
{
    LoadedFixture f = load_fixture_file(o.file);
    const FixtureBundle& b = f.bundle;
    out << "ok " << b.name << " hash " << f.hash << "\n";
    out << "objects " << b.gcat->cat().object_count() << ", total hom dim " << b.gcat->cat().total_dim()
        << ", group order " << b.gcat->group.order() << ", action " << (b.gcat->free ? "free" : "not free") << "\n";
    out << "modules " << b.modules.size() << ", downstairs modules " << b.down_modules.size() << ", arrows "
        << b.morphs.size() << ", factor classes " << b.factor_classes.size() << "\n";
    return kExitOk;
}

int cmd_orbit(const Options& o, std::ostream& out)
{
    LoadedFixture f = load_fixture_file(o.file);
    const LinearCategory& c = f.bundle.orbit().cat();
    for (std::size_t x = 0; x < c.object_count(); ++x) {
        for (std::size_t y = 0; y < c.object_count(); ++y) {
            out << "dim C/G(" << c.object_name(x) << "," << c.object_name(y) << ") = " << c.hom_dim(x, y) << "\n";
        }
    }
    if (o.verbose) {
        for (std::size_t x = 0; x < c.object_count(); ++x) {
            for (std::size_t y = 0; y < c.object_count(); ++y) {
                out << "basis C/G(" << c.object_name(x) << "," << c.object_name(y) << "):";
                for (const auto& l : c.basis_labels(x, y)) {
                    out << " " << l;
                }
                out << "\n";
            }
        }
    }
    return kExitOk;
}

CheckReport battery(const Options& o, const LoadedFixture& f)
{
    BatteryConfig cfg;
    cfg.only.insert(o.only.begin(), o.only.end());
    cfg.seed = effective_seed(o, f);
    return run_battery(f.bundle, cfg);
}

int verdict_code(const CheckReport& r) { return r.pass ? kExitOk : kExitFail; }

int cmd_check(const Options& o, std::ostream& out)
{
    LoadedFixture f = load_fixture_file(o.file);
    CheckReport r = battery(o, f);
    std::size_t skipped = 0;
    for (const auto& c : r.checks) {
        out << c.verdict << " " << c.name << "\n";
        if (c.verdict.rfind("SKIPPED", 0) == 0) {
            ++skipped;
            continue;
        }
        if (o.verbose || c.dims.size() <= kInlineDims) {
            for (const auto& d : c.dims) {
                out << "    " << d.dump() << "\n";
            }
        } else {
            out << "    " << c.dims.size() << " entries (-v to list)\n";
        }
        if (c.verdict == "FAIL" && !c.witness.is_null()) {
            out << "    witness " << c.witness.dump() << "\n";
        }
    }
    out << "verdict " << (r.pass ? "PASS" : "FAIL") << " (" << r.checks.size() << " checks, " << skipped
        << " skipped)\n";
    return verdict_code(r);
}

int cmd_decompose(const Options& o, std::ostream& out)
{
    LoadedFixture f = load_fixture_file(o.file);
    auto m = find_module(f.bundle, o.module);
    if (!m) {
        throw ValidationError("no module named " + o.module);
    }
    const std::uint64_t seed = effective_seed(o, f);
    auto parts = decompose(*m, seed);
    out << o.module << " dims " << dims_text(m->dims()) << " summands " << parts.size() << "\n";
    for (std::size_t i = 0; i < parts.size(); ++i) {
        const Module& s = parts[i].module;
        out << "  " << i << ": dims " << dims_text(s.dims()) << " dim End " << hom_space(s, s).dim() << "\n";
    }
    return kExitOk;
}

int cmd_report(const Options& o, std::ostream& out)
{
    LoadedFixture f = load_fixture_file(o.file);
    CheckReport r = battery(o, f);
    Json j = report_to_json(r, f.hash, !o.no_timing);
    std::ofstream file(o.json_path);
    if (!file) {
        throw ValidationError("cannot write " + o.json_path);
    }
    file << j.dump(2) << "\n";
    out << "wrote " << o.json_path << " verdict " << (r.pass ? "PASS" : "FAIL") << "\n";
    return verdict_code(r);
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Orbit categories, pushdown functors and G-precovering checks over F_p", "orbitcov"};
    app.require_subcommand(1);
    Options o;
    std::uint64_t seed_value = 0;

    auto add_file = [&](CLI::App* sub) { sub->add_option("file", o.file, "fixture file")->required(); };
    auto add_seed = [&](CLI::App* sub) {
        sub->add_option("--seed", seed_value, "seed (overrides ORBITCOV_SEED and the fixture)");
    };
    auto add_only = [&](CLI::App* sub) {
        sub->add_option("--only", o.only, "check groups to run")
            ->check(CLI::IsMember(battery_groups()))
            ->delimiter(',');
    };

    auto* validate = app.add_subcommand("validate", "parse and validate a fixture");
    add_file(validate);
    auto* orbit = app.add_subcommand("orbit", "print the hom dimension table of C/G");
    add_file(orbit);
    orbit->add_flag("-v,--verbose", o.verbose, "also list basis labels");
    auto* check = app.add_subcommand("check", "run the verification battery");
    add_file(check);
    add_only(check);
    add_seed(check);
    check->add_flag("-v,--verbose", o.verbose, "print every dims entry");
    auto* dec = app.add_subcommand("decompose", "decompose a named module");
    add_file(dec);
    dec->add_option("--module", o.module, "module name")->required();
    add_seed(dec);
    auto* report = app.add_subcommand("report", "write the JSON report");
    add_file(report);
    report->add_option("--json", o.json_path, "output path")->required();
    add_only(report);
    add_seed(report);
    report->add_flag("--no-timing", o.no_timing, "omit elapsed_ms for byte-identical output");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        err << app.help();
        return kExitUsage;
    }
    for (auto* sub : {check, dec, report}) {
        if (sub->parsed() && sub->count("--seed") > 0) {
            o.seed = seed_value;
        }
    }

    try {
        if (validate->parsed()) {
            return cmd_validate(o, out);
        }
        if (orbit->parsed()) {
            return cmd_orbit(o, out);
        }
        if (check->parsed()) {
            return cmd_check(o, out);
        }
        if (dec->parsed()) {
            return cmd_decompose(o, out);
        }
        return cmd_report(o, out);
    } catch (const ParseError& e) {
        err << o.file << ": " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}

}  // namespace orbitcov
