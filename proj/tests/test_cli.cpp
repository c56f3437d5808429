#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fixtures_util.hpp"
#include "orbitcov/cli.hpp"
#include "orbitcov/fixture.hpp"
#include "orbitcov/ks.hpp"

using namespace orbitcov;

namespace {

const std::string kDir = ORBITCOV_FIXTURE_DIR;

std::string path(const std::string& name) { return kDir + "/" + name; }

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    int code = run_command(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const std::string& p)
{
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const char* kTwoCycle = R"(
[quiver]
vertices = 1, 2
alpha = 1 -> 2
beta = 2 -> 1
[relations]
ab = alpha.beta
ba = beta.alpha
[group]
type = cyclic 2
[action]
g.objects = 2, 1
)";

std::string swapped() { return std::string(kTwoCycle) + "g.alpha = beta\ng.beta = alpha\n"; }

}  // namespace

TEST_CASE("bundled fixtures build the reference categories")
{
    LoadedFixture a = load_fixture_file(path("fix_a.fix"));
    CHECK(a.bundle.gcat->cat() == testfx::fix_a()->cat());
    CHECK(a.bundle.gcat->group.order() == 1);
    CHECK(a.bundle.name == "fix_a");
    CHECK(a.has_seed);

    LoadedFixture b = load_fixture_file(path("fix_b.fix"));
    CHECK_FALSE(b.bundle.gcat->free);
    CHECK(b.bundle.orbit().cat().hom_dim(0, 0) == 2);

    LoadedFixture c = load_fixture_file(path("fix_c.fix"));
    const GCategory& gc = *c.bundle.gcat;
    auto ref = testfx::fix_c();
    CHECK(gc.cat() == ref->cat());
    CHECK(gc.action.of(1) == ref->action.of(1));
    CHECK(gc.free);
    // C/G(1,1) is spanned by 1 and u with u^2 = 0
    const LinearCategory& o = c.bundle.orbit().cat();
    REQUIRE(o.hom_dim(0, 0) == 2);
    const std::size_t id = *o.identity_basis_index(0);
    const std::size_t u = 1 - id;
    auto uu = o.composite(0, 0, 0, u, u);
    CHECK(std::all_of(uu.begin(), uu.end(), [](Elem e) { return e == 0; }));
    CHECK(c.bundle.factor_classes.size() == 2);
    CHECK(c.bundle.morphs.size() == 6);
}

TEST_CASE("module and arrow literals")
{
    LoadedFixture c = load_fixture_file(path("fix_c.fix"));
    auto u12 = find_module(c.bundle, "U12");
    REQUIRE(u12);
    CHECK(u12->dims() == std::vector<std::size_t>{1, 1});
    CHECK(is_indecomposable(*u12));
    CHECK((iso_test(*find_module(c.bundle, "P1"), *u12).isomorphic() || iso_test(*find_module(c.bundle, "P2"), *u12).isomorphic()));
    CHECK_FALSE(find_module(c.bundle, "nope"));

    std::string bad = swapped() + "[modules]\nM = dims(1,1) alpha[1] beta[1]\n";
    try {
        load_fixture(bad);
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 16);
        CHECK(std::string(e.what()).find("relation") != std::string::npos);
    }
    CHECK_THROWS_AS(load_fixture(swapped() + "[modules]\nM = dims(1,1) alpha[1 2]\n"), ParseError);
    CHECK_THROWS_AS(load_fixture(swapped() + "[modules]\nM = simple 3\n"), ParseError);

    std::string arrows = std::string(kTwoCycle) + "g.alpha = 100 beta\ng.beta = -1 alpha\n" +
                         "[modules]\nS1 = simple 1\nP2 = rep 2\n" +
                         "[morphs]\nf = S1 -> P2 [1] []\nz = P2 -> S1 zero\n";
    LoadedFixture l = load_fixture(arrows);
    CHECK(l.bundle.morphs.size() == 2);
    CHECK_FALSE(is_zero_map(l.bundle.morphs[0].second.arrow));
    CHECK(is_zero_map(l.bundle.morphs[1].second.arrow));
    // a literal that is not natural
    std::string unnatural = swapped() + "[modules]\nP1 = rep 1\nP2 = rep 2\n[morphs]\nf = P1 -> P2 [1] [1]\n";
    CHECK_THROWS_AS(load_fixture(unnatural), ParseError);
}

TEST_CASE("matrices and path combinations")
{
    PrimeField f;
    Matrix m = parse_matrix(f, "[1 -1; 0 2]", 2, 2);
    CHECK(m(0, 1) == 100);
    CHECK(parse_matrix(f, "[]", 0, 3).cols() == 3);
    CHECK_THROWS_AS(parse_matrix(f, "[1 2]", 2, 1), ValidationError);
    CHECK_THROWS_AS(parse_matrix(f, "1 2", 1, 2), ValidationError);

    PathCategory pc = build_category(testfx::dual_numbers_quiver(), f);
    Vec v = parse_path_combination(pc, "3 e_* - 2 x", 0, 0);
    Vec id = pc.path_coords(Path{0, {}});
    Vec x = pc.path_coords(Path{0, {0}});
    for (std::size_t i = 0; i < v.size(); ++i) {
        CHECK(v[i] == f.sub(f.mul(3, id[i]), f.mul(2, x[i])));
    }
    CHECK(parse_path_combination(pc, "x.x", 0, 0) == Vec(v.size(), 0));
    CHECK(parse_path_combination(pc, "0", 0, 0) == Vec(v.size(), 0));
    CHECK_THROWS_AS(parse_path_combination(pc, "y", 0, 0), ValidationError);
}

TEST_CASE("functor from arrow images reproduces the swap")
{
    PathCategory pc = build_category(testfx::two_cycle_quiver(), PrimeField());
    FunctorData fd = functor_from_arrow_images(pc, {1, 0}, {pc.path_coords(Path{1, {1}}), pc.path_coords(Path{0, {0}})});
    CHECK(fd == testfx::two_cycle_swap(*pc.category()));
    CHECK_THROWS_AS(functor_from_arrow_images(pc, {1, 0}, {pc.path_coords(Path{1, {1}})}), ValidationError);
    // x -> 1 does not kill x.x
    PathCategory dual = build_category(testfx::dual_numbers_quiver(), PrimeField());
    CHECK_THROWS_AS(functor_from_arrow_images(dual, {0}, {dual.path_coords(Path{0, {}})}), ValidationError);
    CHECK(functor_from_arrow_images(dual, {0}, {parse_path_combination(dual, "5 x", 0, 0)}).hom_maps.size() == 1);
}

TEST_CASE("located errors")
{
    auto where = [](const std::string& text) -> std::pair<std::size_t, std::size_t> {
        try {
            load_fixture(text);
        } catch (const ParseError& e) {
            return {e.line(), e.column()};
        }
        return {0, 0};
    };
    CHECK(where("[quiver]\nvertices = 1\n[nope]\n") == std::pair<std::size_t, std::size_t>{3, 1});
    CHECK(where("vertices = 1\n") == std::pair<std::size_t, std::size_t>{1, 1});
    CHECK(where("[quiver]\nvertices 1\n") == std::pair<std::size_t, std::size_t>{2, 1});
    CHECK(where("[quiver]\nvertices = 1\na = 1 -> 7\n") == std::pair<std::size_t, std::size_t>{3, 5});
    CHECK(where("[quiver]\nvertices = 1\n[field]\np = 91\n").first == 4);
    CHECK(where("[field]\np = 101\n").first == 1);
    CHECK(where("[quiver]\nvertices = 1\nvertices = 2\n").first == 3);

    try {
        load_fixture_file(path("corrupted/sigma_square.fix"));
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("A_g A_g != A_1") != std::string::npos);
        CHECK(e.line() == 8);
    }
}

TEST_CASE("canonical form round trip")
{
    for (const char* name : {"fix_a.fix", "fix_b.fix", "fix_c.fix"}) {
        CAPTURE(name);
        LoadedFixture l = load_fixture_file(path(name));
        std::string canon = canonicalize(l.file);
        LoadedFixture again = load_fixture(canon);
        CHECK(again.hash == l.hash);
        CHECK(canonicalize(again.file) == canon);
        CHECK(again.bundle.gcat->cat() == l.bundle.gcat->cat());
        CHECK(again.bundle.modules.size() == l.bundle.modules.size());
    }
    // comments and spacing do not move the hash, content does
    std::string base = "[quiver]\nvertices = 1\n";
    CHECK(fixture_hash(parse_fixture_text(base)) ==
          fixture_hash(parse_fixture_text("# c\n[quiver]   \n  vertices   =    1   # x\n\n")));
    CHECK(fixture_hash(parse_fixture_text(base)) != fixture_hash(parse_fixture_text("[quiver]\nvertices = 2\n")));
    CHECK(fixture_hash(parse_fixture_text(base)).size() == 16);
}

TEST_CASE("exit codes on bundled fixtures")
{
    for (const char* name : {"fix_a.fix", "fix_b.fix", "fix_c.fix"}) {
        CAPTURE(name);
        for (const char* cmd : {"validate", "orbit", "check"}) {
            Run r = run({cmd, path(name)});
            CAPTURE(r.err);
            CHECK(r.code == kExitOk);
        }
    }
    for (const char* name : {"corrupted/bad_syntax.fix", "corrupted/sigma_square.fix"}) {
        Run r = run({"check", path(name)});
        CHECK(r.code == kExitUsage);
        CHECK(r.err.find("line") != std::string::npos);
    }
    CHECK(run({}).code == kExitUsage);
    CHECK(run({"check"}).code == kExitUsage);
    CHECK(run({"check", path("fix_c.fix"), "--only", "bogus"}).code == kExitUsage);
    CHECK(run({"decompose", path("fix_c.fix"), "--module", "nope"}).code == kExitUsage);
    CHECK(run({"check", path("missing.fix")}).code == kExitUsage);
    CHECK(run({"--help"}).code == kExitOk);
}

TEST_CASE("a failing check exits with 1")
{
    auto dir = std::filesystem::temp_directory_path() / "orbitcov_cli_test";
    std::filesystem::create_directories(dir);
    std::string text = slurp(path("fix_c.fix"));
    text.replace(text.find("simples = objects(S1, S2)"), 25, "simples = objects(S1)");
    std::string p = (dir / "half.fix").string();
    std::ofstream(p) << text;
    Run r = run({"check", p, "--only", "factor"});
    CHECK(r.code == kExitFail);
    CHECK(r.out.find("FAIL factor.precovering:simples") != std::string::npos);
    CHECK(r.out.find("not_g_stable") != std::string::npos);
}

TEST_CASE("subcommand output")
{
    Run orbit = run({"orbit", path("fix_b.fix")});
    CHECK(orbit.out.find("dim C/G(*,*) = 2") != std::string::npos);
    Run c = run({"check", path("fix_c.fix"), "--only", "canonical"});
    CHECK(c.code == kExitOk);
    CHECK(c.out.find("\"rank2\":2") != std::string::npos);
    CHECK(c.out.find("verdict PASS (5 checks, 0 skipped)") != std::string::npos);
    Run b = run({"check", path("fix_b.fix"), "--only", "pushdown,h"});
    CHECK(b.out.find("SKIPPED(non-free) pushdown.krull_schmidt") != std::string::npos);
    CHECK(b.code == kExitOk);
    Run d = run({"decompose", path("fix_c.fix"), "--module", "U12"});
    CHECK(d.out.find("summands 1") != std::string::npos);
}

TEST_CASE("reports and seed precedence")
{
    auto dir = std::filesystem::temp_directory_path() / "orbitcov_cli_test";
    std::filesystem::create_directories(dir);
    auto report = [&](const std::string& tag, std::vector<std::string> extra) {
        std::string p = (dir / (tag + ".json")).string();
        std::vector<std::string> args = {"report", path("fix_c.fix"), "--json", p, "--no-timing", "--only",
                                         "canonical,pushdown"};
        args.insert(args.end(), extra.begin(), extra.end());
        CHECK(run(args).code == kExitOk);
        return slurp(p);
    };
    ::unsetenv("ORBITCOV_SEED");
    const std::string fixture_seed = report("fixture", {});
    const std::string flag5 = report("flag5", {"--seed", "5"});
    const std::string flag9 = report("flag9", {"--seed", "9"});
    CHECK(report("again", {}) == fixture_seed);
    CHECK(flag5 != flag9);
    ::setenv("ORBITCOV_SEED", "9", 1);
    CHECK(report("env9", {}) == flag9);
    CHECK(report("env9_flag5", {"--seed", "5"}) == flag5);
    ::unsetenv("ORBITCOV_SEED");

    Json j = Json::parse(fixture_seed);
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) {
        keys.push_back(it.key());
    }
    CHECK(keys == std::vector<std::string>{"schema_version", "fixture_hash", "checks", "verdict"});
    CHECK(j["fixture_hash"] == load_fixture_file(path("fix_c.fix")).hash);
    for (const auto& c : j["checks"]) {
        CHECK(c["dims"].is_array());
        CHECK(c.contains("anchor"));
    }
}
