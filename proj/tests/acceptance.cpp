// End-to-end acceptance run: one PASS/FAIL line per criterion, exit 0 iff all
// pass. Fixtures come from the bundled files plus seeded random presentations.

#include <chrono>
#include <functional>
#include <numeric>
#include <iostream>
#include <sstream>

#include "orbitcov/fixture.hpp"
#include "orbitcov/ks.hpp"

using namespace orbitcov;

namespace {

const std::string kDir = ORBITCOV_FIXTURE_DIR;
constexpr std::uint64_t kSeed = 20240601;
constexpr std::size_t kMinVitalPairs = 20;

struct Fixture {
    FixtureBundle bundle;
    Pool pool;
};

Fixture from_file(const std::string& name)
{
    LoadedFixture l = load_fixture_file(kDir + "/" + name);
    Pool p = build_pool(l.bundle, l.bundle.limits, kSeed);
    return {std::move(l.bundle), std::move(p)};
}

Fixture from_random(const std::string& name, const RandomPresentationSpec& spec, std::uint64_t seed)
{
    FixtureBundle b = make_bundle(name, random_gcategory(spec, seed));
    Pool p = build_pool(b, b.limits, kSeed);
    return {std::move(b), std::move(p)};
}

struct Outcome {
    bool pass = true;
    std::string detail;
};

class Criteria {
public:
    void run(int number, const std::string& title, const std::function<Outcome()>& body)
    {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = body();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << number << " (" << title << "): " << o.detail;
        std::cout.precision(2);
        std::cout << " [" << std::fixed << secs << "s]\n";
        all_ = all_ && o.pass;
    }

    bool all() const { return all_; }

private:
    bool all_ = true;
};

std::string join(const std::vector<std::string>& v)
{
    std::string s;
    for (const auto& x : v) {
        s += (s.empty() ? "" : "; ") + x;
    }
    return s;
}

bool is_zero_vec(std::span<const Elem> v)
{
    return std::all_of(v.begin(), v.end(), [](Elem e) { return e == 0; });
}

}  // namespace

int main()
{
    const auto start = std::chrono::steady_clock::now();
    std::vector<Fixture> fixtures;
    fixtures.push_back(from_file("fix_a.fix"));
    fixtures.push_back(from_file("fix_b.fix"));
    fixtures.push_back(from_file("fix_c.fix"));
    const std::vector<std::pair<RandomPresentationSpec, std::uint64_t>> random_specs = {
        {{2, 2, 3, false}, 101}, {{3, 2, 3, false}, 202}, {{2, 3, 4, false}, 303},
        {{3, 1, 2, false}, 404}, {{2, 2, 2, true}, 505}};
    for (std::size_t i = 0; i < random_specs.size(); ++i) {
        fixtures.push_back(from_random("random" + std::to_string(i + 1), random_specs[i].first, random_specs[i].second));
    }
    const Fixture& fix_c = fixtures[2];
    std::cout << "fixtures:";
    for (const auto& f : fixtures) {
        const GCategory& gc = *f.bundle.gcat;
        std::cout << " " << f.bundle.name << "(|Q0|=" << gc.cat().object_count() << ",|G|=" << gc.group.order()
                  << (gc.free ? ",free" : ",not free") << ")";
    }
    std::cout << "\n";

    Criteria c;

    c.run(1, "canonical covering", [&] {
        Outcome o;
        std::size_t pairs = 0;
        std::vector<std::string> bad;
        for (const auto& f : fixtures) {
            const GCategory& gc = *f.bundle.gcat;
            std::vector<std::size_t> objs(gc.cat().object_count());
            std::iota(objs.begin(), objs.end(), 0);
            PrecoveringReport r = is_precovering(gc, f.bundle.ctx->covering(), objs);
            pairs += r.pairs.size();
            if (!r.precovering || !r.kinds_agree || r.pairs.size() != objs.size() * objs.size()) {
                bad.push_back(f.bundle.name);
            }
        }
        o.pass = bad.empty();
        o.detail = std::to_string(fixtures.size()) + " fixtures, " + std::to_string(pairs) +
                   " object pairs, kind-1 and kind-2 verdicts agree" + (bad.empty() ? "" : "; failing: " + join(bad));
        return o;
    });

    c.run(2, "adjoint system", [&] {
        Outcome o;
        std::size_t pairs = 0, triangles = 0, coproducts = 0;
        std::vector<std::string> bad;
        for (const auto& f : fixtures) {
            AdjointReport r = verify_adjoint_system(*f.bundle.ctx, f.pool.modules, f.pool.down_modules);
            pairs += r.pairs.size();
            triangles += r.unit_triangles.size() + r.counit_triangles.size();
            coproducts += r.coproducts.size();
            if (!r.ok || r.pairs.size() != f.pool.modules.size() * f.pool.down_modules.size()) {
                bad.push_back(f.bundle.name);
            }
        }
        o.pass = bad.empty();
        o.detail = std::to_string(pairs) + " pool pairs with theta round trips, " + std::to_string(triangles) +
                   " triangle identities, " + std::to_string(coproducts) + " coproduct checks" +
                   (bad.empty() ? "" : "; failing: " + join(bad));
        return o;
    });

    c.run(3, "vital diagram", [&] {
        Outcome o;
        std::size_t min_pairs = SIZE_MAX, total = 0;
        std::vector<std::string> bad;
        for (const auto& f : fixtures) {
            std::size_t identity_pairs = 0;
            bool ok = true;
            for (const auto& [xn, x] : f.pool.modules) {
                for (const auto& [yn, y] : f.pool.modules) {
                    VitalReport v = verify_vital_diagram(*f.bundle.ctx, x, y);
                    ok = ok && v.ok();
                    identity_pairs += v.source_dim == v.target_dim ? 1 : 0;
                }
            }
            const std::size_t n = f.pool.modules.size() * f.pool.modules.size();
            ok = ok && identity_pairs == n && n >= kMinVitalPairs;
            min_pairs = std::min(min_pairs, identity_pairs);
            total += identity_pairs;
            if (!ok) {
                bad.push_back(f.bundle.name);
            }
        }
        o.pass = bad.empty();
        o.detail = "diagram commutes and is bijective on " + std::to_string(total) +
                   " pairs; dimension identity on >= " + std::to_string(min_pairs) + " pairs per fixture" +
                   (bad.empty() ? "" : "; failing: " + join(bad));
        return o;
    });

    c.run(4, "FIX-C concrete values", [&] {
        Outcome o;
        const FixtureBundle& b = fix_c.bundle;
        const GCategory& gc = *b.gcat;
        const PushdownContext& ctx = *b.ctx;
        const LinearCategory& cg = b.orbit().cat();
        const std::size_t v1 = 0;
        // oracle: C/G(x,y) = sum over a of C(x, a y)
        std::size_t oracle_end = 0;
        for (std::size_t a = 0; a < gc.group.order(); ++a) {
            oracle_end += gc.cat().hom_dim(v1, gc.act(a, v1));
        }
        const std::size_t end_dim = cg.hom_dim(v1, v1);
        const std::size_t u = 1 - *cg.identity_basis_index(v1);
        const bool nilpotent = is_zero_vec(cg.composite(v1, v1, v1, u, u));

        Module s1 = simple(gc.category, 0);
        Module ps1 = pushdown(ctx, s1);
        // skeleton {1}: every object of C/G is isomorphic to 1
        Skeleton sk = skeleton(b.orbit(), {v1});
        const std::size_t skeleton_dim = ps1.dim(v1);
        std::size_t oracle_push = 0;
        for (std::size_t a = 0; a < gc.group.order(); ++a) {
            oracle_push += s1.dim(gc.act(a, v1));
        }

        // stable homs two ways: lifting along the projective cover, and the
        // ideal generated by all representables
        auto reps = [](const CategoryPtr& cat) {
            std::vector<Module> r;
            for (std::size_t v = 0; v < cat->object_count(); ++v) {
                r.push_back(representable(cat, v));
            }
            return r;
        };
        const std::size_t stable_down = factor_hom(IdealSpec::projectives(), ps1, ps1).dim();
        const std::size_t stable_down_oracle = factor_hom(IdealSpec::objects(reps(ctx.down())), ps1, ps1).dim();
        std::vector<std::size_t> per_twist;
        std::size_t sum = 0, sum_oracle = 0;
        for (std::size_t a = 0; a < gc.group.order(); ++a) {
            Module t = twist(gc, a, s1);
            per_twist.push_back(factor_hom(IdealSpec::projectives(), s1, t).dim());
            sum += per_twist.back();
            sum_oracle += factor_hom(IdealSpec::objects(reps(gc.category)), s1, t).dim();
        }

        std::vector<std::string> bad;
        auto expect = [&](bool ok, const std::string& what) {
            if (!ok) {
                bad.push_back(what);
            }
        };
        // frozen regression values
        expect(end_dim == 2 && oracle_end == 2, "dim C/G(1,1)");
        expect(nilpotent, "u^2 = 0");
        expect(sk.category.object_count() == 1, "skeleton");
        expect(skeleton_dim == 1 && oracle_push == 1, "P_down S1 on the skeleton");
        expect(stable_down == 1 && stable_down_oracle == 1, "stable End(P_down S1)");
        expect(sum == 1 && sum_oracle == 1 && per_twist == std::vector<std::size_t>{1, 0}, "sum of stable twists");
        o.pass = bad.empty();
        std::ostringstream d;
        d << "dim C/G(1,1) = " << end_dim << " (oracle " << oracle_end << "), u^2 = 0: " << (nilpotent ? "yes" : "no")
          << ", P_down S1 total dim on the skeleton = " << skeleton_dim << " (oracle " << oracle_push
          << "), stable End(P_down S1) = " << stable_down << " (oracle " << stable_down_oracle
          << ") = " << per_twist[0] << " + " << per_twist[1];
        if (!bad.empty()) {
            d << "; failing: " << join(bad);
        }
        o.detail = d.str();
        return o;
    });

    c.run(5, "induced precoverings", [&] {
        Outcome o;
        const PushdownContext& ctx = *fix_c.bundle.ctx;
        const CategoryPtr& cat = fix_c.bundle.gcat->category;
        const auto& mods = fix_c.pool.modules;
        const auto& arrows = fix_c.pool.morphs;
        std::vector<InducedReport> reps;
        reps.push_back(check_induced_precovering(ModuleQuotient::stable(ctx, mods)));
        reps.push_back(check_induced_precovering(
            ModuleQuotient::factor_by(ctx, mods, {direct_sum(cat, {representable(cat, 0), representable(cat, 1)}).sum})));
        reps.push_back(check_induced_precovering(ModuleQuotient::factor_by(ctx, mods, {simple(cat, 0), simple(cat, 1)})));
        reps.push_back(check_induced_precovering(MorphQuotient::h_factor(ctx, arrows)));
        reps.push_back(check_induced_precovering(MorphQuotient::fp(ctx, arrows)));
        std::size_t pairs = 0, fp_oracle = 0;
        std::vector<std::string> bad;
        for (const auto& r : reps) {
            pairs += r.pairs.size();
            if (!r.ok) {
                bad.push_back(r.mode);
            }
        }
        for (const auto& p : reps.back().pairs) {
            fp_oracle += p.oracle_agrees && !p.oracle_dims.empty() ? 1 : 0;
        }
        const bool sizes = mods.size() >= 4 && arrows.size() >= 3;
        const bool fp_all = fp_oracle == reps.back().pairs.size();
        o.pass = bad.empty() && sizes && fp_all;
        o.detail = "stable, factor by {P1+P2}, factor by {S1,S2}, H factor and Fp on " + std::to_string(mods.size()) +
                   " modules / " + std::to_string(arrows.size()) + " arrows, " + std::to_string(pairs) +
                   " pairs; Fp dims match the presentation oracle on " + std::to_string(fp_oracle) + "/" +
                   std::to_string(reps.back().pairs.size()) + " pairs" + (bad.empty() ? "" : "; failing: " + join(bad));
        return o;
    });

    c.run(6, "Krull-Schmidt under the free action", [&] {
        Outcome o;
        const GCategory& gc = *fix_c.bundle.gcat;
        const PushdownContext& ctx = *fix_c.bundle.ctx;
        const auto& arrows = fix_c.pool.morphs;
        std::vector<std::size_t> indec;
        std::vector<MorphObject> down;
        std::size_t preserved = 0;
        for (std::size_t i = 0; i < arrows.size(); ++i) {
            down.push_back(h_pushdown(ctx, arrows[i].second));
            if (morph_is_indecomposable(arrows[i].second)) {
                indec.push_back(i);
                preserved += morph_is_indecomposable(down.back()) ? 1 : 0;
            }
        }
        std::size_t fibers = 0, witnessed = 0;
        for (std::size_t s = 0; s < indec.size(); ++s) {
            for (std::size_t t = 0; t < indec.size(); ++t) {
                if (s == t) {
                    continue;
                }
                const std::size_t i = indec[s], j = indec[t];
                if (!iso_test(down[i], down[j], kSeed).isomorphic()) {
                    continue;
                }
                ++fibers;
                witnessed += twist_witness(gc, arrows[i].second, arrows[j].second, kSeed) ? 1 : 0;
            }
        }
        o.pass = indec.size() >= 5 && preserved == indec.size() && witnessed == fibers;
        o.detail = std::to_string(preserved) + "/" + std::to_string(indec.size()) +
                   " indecomposable pool arrows push down to indecomposables; " + std::to_string(witnessed) + "/" +
                   std::to_string(fibers) + " distinct pairs with isomorphic pushdowns have a twist witness";
        return o;
    });

    c.run(7, "oracle agreements", [&] {
        Outcome o;
        std::size_t u_pairs = 0, u_agree = 0, basis_pairs = 0, mismatches = 0, fp_pairs = 0, fp_agree = 0;
        for (const auto& f : fixtures) {
            DoubleSumReport d = check_double_sum(f.bundle.orbit());
            basis_pairs += d.checked;
            mismatches += d.mismatches;
            for (const auto& [xn, x] : f.pool.morphs) {
                for (const auto& [yn, y] : f.pool.morphs) {
                    ++u_pairs;
                    u_agree += u_ideal_hom(x, y) == ideal_hom(IdealSpec::u_objects(), x, y) ? 1 : 0;
                    ++fp_pairs;
                    fp_agree += fp_hom(x, y).dim() == nat_oracle(x, y) ? 1 : 0;
                }
            }
        }
        o.pass = u_pairs >= 20 && u_agree == u_pairs && mismatches == 0 && fp_agree == fp_pairs;
        o.detail = "closed-form U ideal = generated ideal on " + std::to_string(u_agree) + "/" +
                   std::to_string(u_pairs) + " arrow pairs; double sum on " + std::to_string(basis_pairs) +
                   " basis pairs with " + std::to_string(mismatches) + " mismatches; fp dims = oracle on " +
                   std::to_string(fp_agree) + "/" + std::to_string(fp_pairs) + " pairs";
        return o;
    });

    c.run(8, "trivial group sanity", [&] {
        Outcome o;
        std::vector<Fixture> trivial;
        trivial.push_back(from_file("fix_a.fix"));
        trivial.push_back(from_random("random_trivial", {1, 3, 4, false}, 606));
        std::size_t reindexed = 0, thetas = 0, checks = 0;
        std::vector<std::string> bad;
        for (const auto& f : trivial) {
            const PushdownContext& ctx = *f.bundle.ctx;
            for (const auto& [n, x] : f.pool.modules) {
                Module px = pushdown(ctx, x);
                bool same = px.dims() == x.dims();
                const LinearCategory& cc = x.cat();
                for (std::size_t a = 0; same && a < cc.object_count(); ++a) {
                    for (std::size_t b = 0; same && b < cc.object_count(); ++b) {
                        for (std::size_t i = 0; i < cc.hom_dim(a, b); ++i) {
                            same = same && px.action(a, b, i) == x.action(a, b, i);
                        }
                    }
                }
                reindexed += same ? 1 : 0;
                same = same && is_iso(unit(ctx, x)) && unit(ctx, x) == identity_map(x);
                for (const auto& [m, y] : f.pool.down_modules) {
                    HomSpace h = hom_space(px, y);
                    for (std::size_t k = 0; k < h.dim(); ++k) {
                        ModuleMap t = theta(ctx, x, h.basis(k));
                        same = same && t.comps == h.basis(k).comps && theta_inv(ctx, x, y, t) == h.basis(k);
                        ++thetas;
                    }
                }
                if (!same) {
                    bad.push_back(f.bundle.name + ":" + n);
                }
            }
            CheckReport r = run_battery(f.bundle, {{}, kSeed});
            checks += r.checks.size();
            for (const auto& rec : r.checks) {
                if (rec.verdict != "PASS") {
                    bad.push_back(f.bundle.name + ":" + rec.name);
                }
            }
        }
        o.pass = bad.empty();
        o.detail = "pushdown is reindexing on " + std::to_string(reindexed) + " modules, theta is the identity on " +
                   std::to_string(thetas) + " maps, " + std::to_string(checks) + " battery checks pass" +
                   (bad.empty() ? "" : "; failing: " + join(bad));
        return o;
    });

    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << (c.all() ? "ALL PASS" : "SOME FAIL") << " in " << secs << "s\n";
    return c.all() ? 0 : 1;
}
