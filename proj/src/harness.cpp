#include "orbitcov/harness.hpp"

#include <chrono>
#include <functional>
#include <random>

namespace orbitcov {

namespace {

constexpr std::size_t kDownRandom = 2;
constexpr std::size_t kAxiomSamples = 3;
constexpr std::size_t kWitnessItems = 5;

const char* kSkippedNonFree = "SKIPPED(non-free)";

std::size_t morph_dim(const MorphObject& f)
{
    return std::max(f.dom.total_dim(), f.cod.total_dim());
}

template <class T>
bool push_unique(std::vector<std::pair<std::string, T>>& pool, std::string name, T obj, std::size_t cap)
{
    if (pool.size() >= cap) {
        return false;
    }
    for (const auto& [n, o] : pool) {
        if (o == obj) {
            return false;
        }
    }
    pool.emplace_back(std::move(name), std::move(obj));
    return true;
}

Module random_module(const CategoryPtr& c, std::mt19937_64& rng, std::size_t summands, bool relation)
{
    std::uniform_int_distribution<std::size_t> obj(0, c->object_count() - 1);
    std::vector<Module> parts;
    for (std::size_t i = 0; i < summands; ++i) {
        parts.push_back(representable(c, obj(rng)));
    }
    DirectSum ds = direct_sum(c, parts);
    if (!relation) {
        return ds.sum;
    }
    const std::size_t x = obj(rng);
    if (ds.sum.dim(x) == 0) {
        return ds.sum;
    }
    std::uniform_int_distribution<std::uint32_t> coin(0, c->field().p() - 1);
    Vec v(ds.sum.dim(x));
    for (auto& e : v) {
        e = coin(rng);
    }
    return cokernel(yoneda_map(ds.sum, x, v), ds.sum).module;
}

std::vector<NamedModule> simples_named(const CategoryPtr& c)
{
    std::vector<NamedModule> out;
    for (std::size_t v = 0; v < c->object_count(); ++v) {
        auto all = simples_at(c, v);
        for (std::size_t k = 0; k < all.size(); ++k) {
            std::string n = "S" + c->object_name(v);
            if (all.size() > 1) {
                n += "#" + std::to_string(k);
            }
            out.emplace_back(std::move(n), std::move(all[k]));
        }
    }
    return out;
}

std::vector<NamedModule> representables_named(const CategoryPtr& c)
{
    std::vector<NamedModule> out;
    for (std::size_t v = 0; v < c->object_count(); ++v) {
        out.emplace_back("P" + c->object_name(v), representable(c, v));
    }
    return out;
}

Json dims_json(const std::vector<std::size_t>& v)
{
    Json j = Json::array();
    for (auto d : v) {
        j.push_back(d);
    }
    return j;
}

Json names_json(const auto& pool)
{
    Json j = Json::array();
    for (const auto& p : pool) {
        j.push_back(p.first);
    }
    return j;
}

Json violations_json(const Violations& v)
{
    Json j = Json::array();
    for (std::size_t i = 0; i < v.items.size() && i < kWitnessItems; ++i) {
        j.push_back(v.items[i]);
    }
    return j;
}

class Battery {
public:
    Battery(const FixtureBundle& b, const BatteryConfig& cfg) : b_(b), cfg_(cfg), ctx_(*b.ctx)
    {
        pool_ = build_pool(b, b.limits, cfg.seed);
    }

    CheckReport run()
    {
        if (wants("canonical")) {
            canonical();
        }
        if (wants("pushdown")) {
            pushdown_checks();
        }
        if (wants("stable") && b_.stable_ideal) {
            stable();
        }
        if (wants("factor")) {
            factor();
        }
        if (wants("h")) {
            h_checks();
        }
        if (wants("hfactor") && b_.u_ideal) {
            hfactor();
        }
        if (wants("fp") && b_.u_ideal) {
            fp();
        }
        return std::move(report_);
    }

private:
    bool wants(const std::string& g) const { return cfg_.only.empty() || cfg_.only.count(g) > 0; }
    bool free() const { return b_.gcat->free; }

    void check(const std::string& name, const std::string& anchor, const std::function<bool(CheckRecord&)>& body)
    {
        CheckRecord r;
        r.name = name;
        r.anchor = anchor;
        try {
            r.verdict = body(r) ? "PASS" : "FAIL";
        } catch (const std::exception& e) {
            r.verdict = "FAIL";
            r.witness = Json{{"error", e.what()}};
        }
        report_.pass = report_.pass && r.verdict != "FAIL";
        report_.checks.push_back(std::move(r));
    }

    void skipped(const std::string& name, const std::string& anchor)
    {
        CheckRecord r;
        r.name = name;
        r.anchor = anchor;
        r.verdict = kSkippedNonFree;
        report_.checks.push_back(std::move(r));
    }

    // deterministic sample of k indices from the module pool
    std::vector<std::size_t> sample(std::size_t n, std::size_t k, std::uint64_t salt) const
    {
        std::mt19937_64 rng(cfg_.seed ^ salt);
        std::uniform_int_distribution<std::size_t> pick(0, n - 1);
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < k; ++i) {
            out.push_back(pick(rng));
        }
        return out;
    }

    void canonical()
    {
        const GCategory& gc = *b_.gcat;
        check("category.axioms", "unit and associativity laws of C and C/G", [&](CheckRecord& r) {
            Violations v = validate_category(gc.cat());
            Violations w = validate_category(ctx_.orbit().cat());
            r.dims.push_back(Json{{"total_dim_C", gc.cat().total_dim()}, {"total_dim_CG", ctx_.orbit().cat().total_dim()}});
            if (!v.ok() || !w.ok()) {
                v.append(w);
                r.witness = violations_json(v);
            }
            return v.ok() && w.ok();
        });
        check("action.strict", "G acts strictly by linear automorphisms", [&](CheckRecord& r) {
            ActionReport a = validate_action(gc.cat(), gc.group, gc.action);
            r.inputs = Json{{"group_order", gc.group.order()}};
            r.dims.push_back(Json{{"free", a.free}});
            if (!a.violations.ok()) {
                r.witness = violations_json(a.violations);
            }
            return a.violations.ok();
        });
        check("covering.invariant_structure", "canonical functor carries a G-invariant structure", [&](CheckRecord& r) {
            Violations v = validate_invariant_structure(gc, ctx_.covering());
            if (!v.ok()) {
                r.witness = violations_json(v);
            }
            return v.ok();
        });
        check("covering.precovering", "orbit covering is a G-precovering on every object pair", [&](CheckRecord& r) {
            std::vector<std::size_t> objs;
            for (std::size_t x = 0; x < gc.cat().object_count(); ++x) {
                objs.push_back(x);
            }
            PrecoveringReport rep = is_precovering(gc, ctx_.covering(), objs);
            for (const auto& p : rep.pairs) {
                r.dims.push_back(Json{{"x", gc.cat().object_name(p.x)},
                                      {"y", gc.cat().object_name(p.y)},
                                      {"source", p.source_dim},
                                      {"target", p.target_dim},
                                      {"rank2", p.rank2},
                                      {"rank1", p.rank1}});
            }
            r.witness = Json{{"kinds_agree", rep.kinds_agree}};
            return rep.precovering && rep.kinds_agree;
        });
        check("orbit.double_sum", "orbit composition equals the equivariant double sum", [&](CheckRecord& r) {
            DoubleSumReport d = check_double_sum(ctx_.orbit());
            r.dims.push_back(Json{{"basis_pairs", d.checked}, {"mismatches", d.mismatches}});
            return d.mismatches == 0;
        });
    }

    void pushdown_checks()
    {
        const GCategory& gc = *b_.gcat;
        const auto& mods = pool_.modules;
        check("pushpull.adjoint_system", "pushdown is left adjoint to pullup with both triangle identities",
              [&](CheckRecord& r) {
                  r.inputs = Json{{"up", names_json(mods)}, {"down", names_json(pool_.down_modules)}};
                  AdjointReport rep = verify_adjoint_system(ctx_, mods, pool_.down_modules);
                  bool ok = rep.ok;
                  for (const auto& p : rep.pairs) {
                      r.dims.push_back(Json{{"x", p.x},
                                            {"y", p.y},
                                            {"hom_down", p.hom_down},
                                            {"hom_up", p.hom_up},
                                            {"bijective", p.bijective},
                                            {"round_trips", p.round_trips},
                                            {"natural", p.natural}});
                  }
                  Json bad = Json::array();
                  auto collect = [&](const char* kind, const auto& list) {
                      for (const auto& [n, good] : list) {
                          if (!good) {
                              bad.push_back(std::string(kind) + ":" + n);
                          }
                      }
                  };
                  collect("unit_triangle", rep.unit_triangles);
                  collect("counit_triangle", rep.counit_triangles);
                  collect("coproduct", rep.coproducts);
                  r.witness = Json{{"unit_triangles", rep.unit_triangles.size()},
                                   {"counit_triangles", rep.counit_triangles.size()},
                                   {"coproducts", rep.coproducts.size()},
                                   {"failures", bad}};
                  return ok;
              });
        check("pushpull.vital_diagram", "vital square commutes and pushdown is a G-precovering on modules",
              [&](CheckRecord& r) {
                  r.inputs = Json{{"pool", names_json(mods)}, {"pairs", mods.size() * mods.size()}};
                  bool ok = true;
                  for (const auto& [xn, x] : mods) {
                      for (const auto& [yn, y] : mods) {
                          VitalReport v = verify_vital_diagram(ctx_, x, y);
                          ok = ok && v.ok();
                          r.dims.push_back(Json{{"x", xn},
                                                {"y", yn},
                                                {"sum_hom_twists", v.source_dim},
                                                {"hom_pushdowns", v.target_dim},
                                                {"commutes", v.commutes},
                                                {"nu_iso", v.nu_iso},
                                                {"bijective", v.bijective}});
                      }
                  }
                  return ok;
              });
        check("pushdown.phi_down", "phi-down and t are natural isomorphisms", [&](CheckRecord& r) {
            bool ok = true;
            for (const auto& [n, x] : mods) {
                Module px = pushdown(ctx_, x);
                for (std::size_t a = 0; a < gc.group.order(); ++a) {
                    ModuleMap phi = phi_down(ctx_, a, x);
                    ok = ok && validate_map(phi, px, pushdown(ctx_, twist(gc, a, x))).ok() && is_iso(phi);
                }
                TwistSum ts = t_iso(ctx_, x);
                ok = ok && validate_map(ts.t, ts.twists.sum, pullup(ctx_, px)).ok() && is_iso(ts.t);
                r.dims.push_back(Json{{"module", n}, {"pushdown_dims", dims_json(px.dims())}});
            }
            return ok;
        });
        const std::string ks_anchor = "pushdown preserves indecomposables and isomorphic pushdowns come from twists";
        if (free()) {
            check("pushdown.krull_schmidt", ks_anchor, [&](CheckRecord& r) {
                return krull_schmidt(r, mods, [&](const Module& m) { return pushdown(ctx_, m); });
            });
        } else {
            skipped("pushdown.krull_schmidt", ks_anchor);
        }
        if (!b_.density.empty()) {
            check("pushdown.density", "every candidate is a pushdown of a pool module", [&](CheckRecord& r) {
                bool ok = true;
                std::vector<Module> pushed;
                for (const auto& [n, m] : mods) {
                    pushed.push_back(pushdown(ctx_, m));
                }
                for (const auto& [cn, cand] : b_.density) {
                    std::optional<std::string> hit;
                    for (std::size_t k = 0; k < pushed.size() && !hit; ++k) {
                        if (iso_test(cand, pushed[k], cfg_.seed).isomorphic()) {
                            hit = mods[k].first;
                        }
                    }
                    ok = ok && hit.has_value();
                    r.dims.push_back(Json{{"candidate", cn}, {"pushdown_of", hit ? Json(*hit) : Json(nullptr)}});
                }
                return ok;
            });
        }
        for (const auto& sc : b_.subcategories) {
            check("subcategory.closure:" + sc.name, "pushdown maps K into add K' and pullup maps K' into add K",
                  [&](CheckRecord& r) { return closure(r, sc); });
        }
    }

    template <class Obj, class Push>
    bool krull_schmidt(CheckRecord& r, const std::vector<std::pair<std::string, Obj>>& pool, Push push)
    {
        const GCategory& gc = *b_.gcat;
        bool ok = true;
        std::vector<std::size_t> indec;
        std::vector<Obj> down;
        Json objs = Json::array();
        for (std::size_t i = 0; i < pool.size(); ++i) {
            down.push_back(push(pool[i].second));
            bool up_ind = false;
            if constexpr (std::is_same_v<Obj, Module>) {
                up_ind = is_indecomposable(pool[i].second, cfg_.seed);
            } else {
                up_ind = morph_is_indecomposable(pool[i].second);
            }
            if (!up_ind) {
                continue;
            }
            indec.push_back(i);
            bool down_ind = false;
            if constexpr (std::is_same_v<Obj, Module>) {
                down_ind = is_indecomposable(down.back(), cfg_.seed);
            } else {
                down_ind = morph_is_indecomposable(down.back());
            }
            ok = ok && down_ind;
            objs.push_back(Json{{"object", pool[i].first}, {"pushdown_indecomposable", down_ind}});
        }
        Json fibers = Json::array();
        for (std::size_t s = 0; s < indec.size(); ++s) {
            for (std::size_t t = s + 1; t < indec.size(); ++t) {
                const std::size_t i = indec[s], j = indec[t];
                if (!iso_test(down[i], down[j], cfg_.seed).isomorphic()) {
                    continue;
                }
                auto a = twist_witness(gc, pool[i].second, pool[j].second, cfg_.seed);
                ok = ok && a.has_value();
                fibers.push_back(Json{{"x", pool[i].first},
                                      {"y", pool[j].first},
                                      {"twist", a ? Json(gc.group.name(*a)) : Json(nullptr)}});
            }
        }
        r.inputs = Json{{"indecomposables", indec.size()}};
        r.dims = objs;
        r.witness = Json{{"fibers", fibers}};
        return ok;
    }

    bool in_add(const Module& m, const std::vector<NamedModule>& cls) const
    {
        for (const auto& s : decompose(m, cfg_.seed)) {
            bool found = false;
            for (const auto& [n, c] : cls) {
                for (const auto& t : decompose(c, cfg_.seed)) {
                    if (iso_test(s.module, t.module, cfg_.seed).isomorphic()) {
                        found = true;
                        break;
                    }
                }
                if (found) {
                    break;
                }
            }
            if (!found) {
                return false;
            }
        }
        return true;
    }

    bool closure(CheckRecord& r, const SubcategoryPair& sc)
    {
        bool ok = true;
        r.inputs = Json{{"K", names_json(sc.up)}, {"K_prime", names_json(sc.down)}};
        for (const auto& [n, m] : sc.up) {
            const bool in = in_add(pushdown(ctx_, m), sc.down);
            ok = ok && in;
            r.dims.push_back(Json{{"pushdown_of", n}, {"in_add_K_prime", in}});
        }
        for (const auto& [n, m] : sc.down) {
            const bool in = in_add(pullup(ctx_, m), sc.up);
            ok = ok && in;
            r.dims.push_back(Json{{"pullup_of", n}, {"in_add_K", in}});
        }
        return ok;
    }

    void induced_record(CheckRecord& r, const InducedReport& rep) const
    {
        for (const auto& p : rep.pairs) {
            Json j{{"x", p.x},
                   {"y", p.y},
                   {"source_dims", dims_json(p.source_dims)},
                   {"target_dim", p.target_dim},
                   {"rank", p.rank},
                   {"ideal_preserved", p.ideal_preserved},
                   {"section_independent", p.section_independent},
                   {"bijective", p.bijective}};
            if (!p.oracle_dims.empty()) {
                j["oracle_dims"] = dims_json(p.oracle_dims);
                j["oracle_agrees"] = p.oracle_agrees;
            }
            r.dims.push_back(std::move(j));
        }
    }

    bool module_axiom(CheckRecord& r, const IdealSpec& spec, std::uint64_t salt)
    {
        const auto& mods = pool_.modules;
        bool ok = true;
        for (std::size_t s = 0; s < kAxiomSamples; ++s) {
            auto idx = sample(mods.size(), 4, salt + s);
            ok = ok && ideal_axiom_holds(spec, mods[idx[0]].second, mods[idx[1]].second, mods[idx[2]].second,
                                         mods[idx[3]].second);
        }
        r.witness = Json{{"axiom_samples", kAxiomSamples}, {"axiom_holds", ok}};
        return ok;
    }

    void stable()
    {
        check("stable.precovering", "pushdown induces a G-precovering of stable categories", [&](CheckRecord& r) {
            r.inputs = Json{{"pool", names_json(pool_.modules)}};
            InducedReport rep = check_induced_precovering(ModuleQuotient::stable(ctx_, pool_.modules));
            induced_record(r, rep);
            const bool axiom = module_axiom(r, IdealSpec::projectives(), 0x51);
            return rep.ok && axiom;
        });
    }

    void factor()
    {
        for (const auto& cls : b_.factor_classes) {
            check("factor.precovering:" + cls.name, "pushdown induces a G-precovering of factor categories by <D>",
                  [&](CheckRecord& r) {
                      r.inputs = Json{{"pool", names_json(pool_.modules)}, {"class_size", cls.members.size()}};
                      if (auto why = g_stability_violation(*b_.gcat, cls.members, cfg_.seed)) {
                          r.witness = Json{{"not_g_stable", *why}};
                          return false;
                      }
                      InducedReport rep =
                          check_induced_precovering(ModuleQuotient::factor_by(ctx_, pool_.modules, cls.members));
                      induced_record(r, rep);
                      const bool axiom = module_axiom(r, IdealSpec::objects(cls.members), 0xfa);
                      return rep.ok && axiom;
                  });
        }
    }

    void h_checks()
    {
        const GCategory& gc = *b_.gcat;
        const auto& arrows = pool_.morphs;
        check("h.adjoint", "H(pushdown) is left adjoint to H(pullup)", [&](CheckRecord& r) {
            r.inputs = Json{{"pool", names_json(arrows)}};
            bool ok = true;
            for (const auto& [fn, f] : arrows) {
                for (const auto& [gn, g0] : arrows) {
                    const MorphObject g = h_pushdown(ctx_, g0);
                    MorphHomSpace down(h_pushdown(ctx_, f), g);
                    MorphHomSpace up(f, h_pullup(ctx_, g));
                    std::vector<Vec> cols;
                    bool trips = true;
                    for (const auto& h : down.basis()) {
                        MorphHom t = h_theta(ctx_, f, g, h);
                        trips = trips && h_theta_inv(ctx_, f, g, t) == h;
                        cols.push_back(up.coords(t));
                    }
                    for (const auto& h : up.basis()) {
                        trips = trips && h_theta(ctx_, f, g, h_theta_inv(ctx_, f, g, h)) == h;
                    }
                    Matrix m = Matrix::from_col_vectors(b_.field(), up.dim(), cols);
                    const bool bij = down.dim() == up.dim() && (cols.empty() || rank(m) == up.dim());
                    ok = ok && trips && bij;
                    r.dims.push_back(Json{{"x", fn},
                                          {"y", "down(" + gn + ")"},
                                          {"hom_down", down.dim()},
                                          {"hom_up", up.dim()},
                                          {"round_trips", trips},
                                          {"bijective", bij}});
                }
            }
            return ok;
        });
        check("h.precovering", "H(pushdown) is a G-precovering on arrows", [&](CheckRecord& r) {
            r.inputs = Json{{"pool", names_json(arrows)}};
            bool ok = true;
            for (const auto& [fn, f] : arrows) {
                for (const auto& [gn, g] : arrows) {
                    MorphPrecovering pre = morph_precovering(ctx_, f, g);
                    std::vector<std::size_t> src;
                    for (const auto& s : pre.sources) {
                        src.push_back(s.dim());
                    }
                    const bool bij = pre.matrix.is_square() && rank(pre.matrix) == pre.target.dim();
                    ok = ok && bij;
                    r.dims.push_back(Json{{"x", fn},
                                          {"y", gn},
                                          {"source_dims", dims_json(src)},
                                          {"target_dim", pre.target.dim()},
                                          {"bijective", bij}});
                }
            }
            return ok;
        });
        const std::string anchor = "H(pushdown) preserves indecomposable arrows and isomorphic images come from twists";
        if (free()) {
            check("h.krull_schmidt", anchor, [&](CheckRecord& r) {
                return krull_schmidt(r, arrows, [&](const MorphObject& f) { return h_pushdown(ctx_, f); });
            });
        } else {
            skipped("h.krull_schmidt", anchor);
        }
        (void)gc;
    }

    void hfactor()
    {
        const auto& arrows = pool_.morphs;
        check("hfactor.closed_form", "closed form of the ideal generated by (X -> 0) and identities",
              [&](CheckRecord& r) {
                  bool ok = true;
                  for (const auto& [fn, f] : arrows) {
                      for (const auto& [gn, g] : arrows) {
                          Subspace closed = u_ideal_hom(f, g);
                          Subspace gen = ideal_hom(IdealSpec::u_objects(), f, g);
                          ok = ok && closed == gen;
                          r.dims.push_back(Json{{"x", fn}, {"y", gn}, {"closed", closed.dim()}, {"generated", gen.dim()}});
                      }
                  }
                  return ok;
              });
        check("hfactor.precovering", "H(pushdown) induces a G-precovering of the factor by <U>", [&](CheckRecord& r) {
            r.inputs = Json{{"pool", names_json(arrows)}};
            InducedReport rep = check_induced_precovering(MorphQuotient::h_factor(ctx_, arrows));
            induced_record(r, rep);
            bool axiom = true;
            for (std::size_t s = 0; s < kAxiomSamples; ++s) {
                auto idx = sample(arrows.size(), 4, 0x40 + s);
                axiom = axiom && ideal_axiom_holds(IdealSpec::u_objects(), arrows[idx[0]].second,
                                                   arrows[idx[1]].second, arrows[idx[2]].second, arrows[idx[3]].second);
            }
            r.witness = Json{{"axiom_samples", kAxiomSamples}, {"axiom_holds", axiom}};
            return rep.ok && axiom;
        });
        const std::string anchor = "indecomposables of the factor push down to indecomposables, fibers are twists";
        if (free()) {
            check("hfactor.krull_schmidt", anchor, [&](CheckRecord& r) {
                FactorKsReport rep = check_factor_krull_schmidt(ctx_, arrows);
                for (const auto& o : rep.objects) {
                    if (o.up_indecomposable) {
                        r.dims.push_back(Json{{"object", o.name}, {"pushdown_indecomposable", o.down_indecomposable}});
                    }
                }
                Json fibers = Json::array();
                for (const auto& f : rep.fibers) {
                    fibers.push_back(Json{{"x", f.x},
                                          {"y", f.y},
                                          {"twist", f.twist ? Json(b_.gcat->group.name(*f.twist)) : Json(nullptr)}});
                }
                r.witness = Json{{"fibers", fibers}};
                return rep.ok;
            });
        } else {
            skipped("hfactor.krull_schmidt", anchor);
        }
    }

    void fp()
    {
        const auto& arrows = pool_.morphs;
        check("fp.oracle", "fp functor homs agree with the presentation oracle", [&](CheckRecord& r) {
            bool ok = true;
            for (const auto& [fn, f] : arrows) {
                for (const auto& [gn, g] : arrows) {
                    const std::size_t a = fp_hom(f, g).dim();
                    const std::size_t o = nat_oracle(f, g);
                    ok = ok && a == o;
                    r.dims.push_back(Json{{"x", fn}, {"y", gn}, {"fp_hom", a}, {"oracle", o}});
                }
            }
            return ok;
        });
        check("fp.precovering", "Fp(pushdown) is a G-precovering", [&](CheckRecord& r) {
            r.inputs = Json{{"pool", names_json(arrows)}};
            InducedReport rep = check_induced_precovering(MorphQuotient::fp(ctx_, arrows));
            induced_record(r, rep);
            return rep.ok;
        });
    }

    const FixtureBundle& b_;
    const BatteryConfig& cfg_;
    const PushdownContext& ctx_;
    Pool pool_;
    CheckReport report_;
};

}  // namespace

FixtureBundle make_bundle(std::string name, std::shared_ptr<const GCategory> gc)
{
    FixtureBundle b;
    b.name = std::move(name);
    b.gcat = gc;
    b.ctx = std::make_shared<PushdownContext>(gc);
    return b;
}

void validate_bundle(const FixtureBundle& b)
{
    const CategoryPtr& up = b.gcat->category;
    const CategoryPtr& down = b.ctx->down();
    auto need = [](bool ok, const std::string& what) {
        if (!ok) {
            throw ValidationError(what);
        }
    };
    auto check_module = [&](const std::string& n, const Module& m, const CategoryPtr& c) {
        need(m.category() == c, "module " + n + " lives over the wrong category");
        Violations v = validate_module(m);
        need(v.ok(), "module " + n + ": " + (v.ok() ? "" : v.items.front()));
    };
    for (const auto& [n, m] : b.modules) {
        check_module(n, m, up);
    }
    for (const auto& [n, m] : b.down_modules) {
        check_module(n, m, down);
    }
    for (const auto& [n, m] : b.density) {
        check_module(n, m, down);
    }
    for (const auto& [n, f] : b.morphs) {
        check_module(n + " (domain)", f.dom, up);
        check_module(n + " (codomain)", f.cod, up);
        need(validate_map(f.arrow, f.dom, f.cod).ok(), "arrow " + n + " is not a module map");
    }
    for (const auto& cls : b.factor_classes) {
        for (const auto& m : cls.members) {
            check_module("in class " + cls.name, m, up);
        }
    }
    for (const auto& sc : b.subcategories) {
        for (const auto& [n, m] : sc.up) {
            check_module(n, m, up);
        }
        for (const auto& [n, m] : sc.down) {
            check_module(n, m, down);
        }
    }
}

Pool build_pool(const FixtureBundle& b, const PoolLimits& limits, std::uint64_t seed)
{
    const GCategory& gc = *b.gcat;
    const PushdownContext& ctx = *b.ctx;
    const CategoryPtr& c = gc.category;
    Pool pool;
    auto cap_user = [&](const std::string& n, std::size_t d) {
        if (d > limits.max_total_dim) {
            throw CapExceeded("pool object " + n + " has total dimension " + std::to_string(d) + " > limit " +
                              std::to_string(limits.max_total_dim));
        }
    };
    auto add = [&](std::string n, Module m) {
        if (m.total_dim() <= limits.max_total_dim) {
            push_unique(pool.modules, std::move(n), std::move(m), limits.max_modules);
        }
    };

    for (const auto& [n, m] : b.modules) {
        cap_user(n, m.total_dim());
        add(n, m);
    }
    add("0", Module::zero(c));
    std::vector<NamedModule> basic = simples_named(c);
    for (auto& p : representables_named(c)) {
        basic.push_back(std::move(p));
    }
    for (const auto& [n, m] : basic) {
        add(n, m);
    }
    for (std::size_t i = 0; i < basic.size(); ++i) {
        for (std::size_t j = i + 1; j < basic.size(); ++j) {
            add(basic[i].first + "+" + basic[j].first,
                direct_sum(c, {basic[i].second, basic[j].second}).sum);
        }
    }
    const std::size_t before_twists = pool.modules.size();
    for (std::size_t i = 0; i < before_twists; ++i) {
        for (std::size_t a = 0; a < gc.group.order(); ++a) {
            if (a != gc.group.identity()) {
                add("^" + gc.group.name(a) + "(" + pool.modules[i].first + ")",
                    twist(gc, a, pool.modules[i].second));
            }
        }
    }
    for (const auto& [n, m] : simples_named(c)) {
        add("up(down(" + n + "))", pullup(ctx, pushdown(ctx, m)));
    }
    pool.deterministic_modules = pool.modules.size();

    std::mt19937_64 rng(seed);
    for (std::size_t t = 0; t < limits.random_modules; ++t) {
        const std::size_t summands = 1 + t % std::max<std::size_t>(limits.max_summands, 1);
        const bool relation = (t / std::max<std::size_t>(limits.max_summands, 1)) % 2 == 1;
        add("rand" + std::to_string(t), random_module(c, rng, summands, relation));
    }

    // downstairs
    const CategoryPtr& d = ctx.down();
    auto add_down = [&](std::string n, Module m) {
        if (m.total_dim() <= limits.max_total_dim) {
            push_unique(pool.down_modules, std::move(n), std::move(m), limits.max_modules);
        }
    };
    for (const auto& [n, m] : b.down_modules) {
        cap_user(n, m.total_dim());
        add_down(n, m);
    }
    for (auto& [n, m] : representables_named(d)) {
        add_down(n, std::move(m));
    }
    for (auto& [n, m] : simples_named(d)) {
        add_down(n, std::move(m));
    }
    for (const auto& [n, m] : simples_named(c)) {
        add_down("down(" + n + ")", pushdown(ctx, m));
    }
    for (std::size_t t = 0; t < kDownRandom; ++t) {
        add_down("rand" + std::to_string(t), random_module(d, rng, 1 + t, true));
    }

    // arrows
    auto add_morph = [&](std::string n, MorphObject f) {
        if (morph_dim(f) <= limits.max_total_dim) {
            push_unique(pool.morphs, std::move(n), std::move(f), limits.max_morphs);
        }
    };
    for (const auto& [n, f] : b.morphs) {
        cap_user(n, morph_dim(f));
        add_morph(n, f);
    }
    for (const auto& [n, m] : basic) {
        add_morph("0->" + n, from_zero(m));
        add_morph(n + "->0", to_zero(m));
    }
    for (const auto& [an, a] : basic) {
        for (const auto& [bn, bm] : basic) {
            if (an == bn) {
                continue;
            }
            HomSpace h = hom_space(a, bm);
            if (h.dim() > 0) {
                add_morph(an + "->" + bn, {a, bm, h.basis(0)});
            }
        }
    }
    for (const auto& [n, m] : basic) {
        add_morph(n + "=" + n, identity_object(m));
    }
    std::uniform_int_distribution<std::uint32_t> coin(0, c->field().p() - 1);
    for (std::size_t t = 0; t < limits.random_morphs; ++t) {
        Module x = random_module(c, rng, 1 + t % 2, true);
        Module y = random_module(c, rng, 1 + (t + 1) % 2, true);
        HomSpace h = hom_space(x, y);
        Vec co(h.dim());
        for (auto& e : co) {
            e = coin(rng);
        }
        add_morph("rand_arrow" + std::to_string(t), {x, y, h.combine(co)});
    }
    return pool;
}

const std::vector<std::string>& battery_groups()
{
    static const std::vector<std::string> groups = {"canonical", "pushdown", "stable", "factor",
                                                    "h",         "hfactor",  "fp"};
    return groups;
}

CheckReport run_battery(const FixtureBundle& b, const BatteryConfig& config)
{
    for (const auto& g : config.only) {
        if (std::find(battery_groups().begin(), battery_groups().end(), g) == battery_groups().end()) {
            throw ValidationError("unknown check group " + g);
        }
    }
    const auto start = std::chrono::steady_clock::now();
    Battery battery(b, config);
    CheckReport rep = battery.run();
    rep.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

Json record_to_json(const CheckRecord& r)
{
    Json j{{"name", r.name}, {"anchor", r.anchor}, {"inputs", r.inputs}, {"dims", r.dims}, {"verdict", r.verdict}};
    if (!r.witness.is_null()) {
        j["witness"] = r.witness;
    }
    return j;
}

Json report_to_json(const CheckReport& r, const std::string& fixture_hash, bool timing)
{
    Json checks = Json::array();
    for (const auto& c : r.checks) {
        checks.push_back(record_to_json(c));
    }
    Json j{{"schema_version", kReportSchemaVersion},
           {"fixture_hash", fixture_hash},
           {"checks", std::move(checks)},
           {"verdict", r.pass ? "PASS" : "FAIL"}};
    if (timing) {
        j["elapsed_ms"] = r.elapsed_ms;
    }
    return j;
}

}  // namespace orbitcov

namespace orbitcov {

std::shared_ptr<const GCategory> random_gcategory(const RandomPresentationSpec& spec, std::uint64_t seed,
                                                  PrimeField field)
{
    const std::size_t n = spec.group_order, m = spec.base_vertices;
    if (n == 0 || m == 0) {
        throw ValidationError("random presentation needs a group and at least one vertex");
    }
    std::mt19937_64 rng(seed);
    auto pick = [&](std::size_t k) { return std::uniform_int_distribution<std::size_t>(0, k - 1)(rng); };

    QuiverPresentation q;
    for (std::size_t g = 0; g < n; ++g) {
        for (std::size_t v = 0; v < m; ++v) {
            q.vertices.push_back("v" + std::to_string(v) + "s" + std::to_string(g));
        }
    }
    const std::size_t fixed = q.vertices.size();
    if (spec.fixed_vertex) {
        q.vertices.push_back("f");
    }
    auto vertex = [&](std::size_t g, std::size_t v) { return (g % n) * m + v; };

    // arrow templates: (source, target) in sheet 0, repeated in every sheet
    struct Template {
        std::size_t source, target, shift;
        bool from_fixed;
    };
    std::vector<Template> templates;
    for (std::size_t i = 0; i < spec.base_arrows; ++i) {
        templates.push_back({pick(m), pick(m), pick(n), false});
    }
    if (spec.fixed_vertex) {
        templates.push_back({0, pick(m), 0, true});
    }
    std::vector<std::size_t> arrow_template;
    for (std::size_t i = 0; i < templates.size(); ++i) {
        const auto& t = templates[i];
        for (std::size_t g = 0; g < n; ++g) {
            const std::size_t src = t.from_fixed ? fixed : vertex(g, t.source);
            q.arrows.push_back({"x" + std::to_string(i) + "s" + std::to_string(g), src, vertex(g + t.shift, t.target)});
            arrow_template.push_back(i);
        }
    }
    const std::size_t na = q.arrows.size();
    // A_g on arrows: (i, h) -> (i, h + 1)
    auto shift_arrow = [&](std::size_t a, std::size_t by) {
        const std::size_t i = arrow_template[a];
        return i * n + (a - i * n + by) % n;
    };
    auto shift_path = [&](const Path& p, std::size_t by) {
        Path out;
        for (auto a : p.arrows) {
            out.arrows.push_back(shift_arrow(a, by));
        }
        out.vertex = q.arrows[out.arrows.front()].source;
        return out;
    };

    // length 2 paths starting in sheet 0 (or at the fixed vertex through a sheet-0 arrow): one per orbit
    std::vector<Path> reps;
    for (std::size_t a = 0; a < na; ++a) {
        if ((a - arrow_template[a] * n) != 0) {
            continue;
        }
        for (std::size_t b = 0; b < na; ++b) {
            if (q.arrows[a].target == q.arrows[b].source) {
                reps.push_back(Path{q.arrows[a].source, {a, b}});
            }
        }
    }
    std::vector<Path> kept;
    std::uniform_int_distribution<int> coin(0, 1);
    auto orbit_relation = [&](const Relation& r) {
        for (std::size_t g = 0; g < n; ++g) {
            Relation out;
            for (const auto& t : r) {
                out.push_back({t.coeff, shift_path(t.path, g)});
            }
            q.relations.push_back(std::move(out));
        }
    };
    for (const auto& p : reps) {
        if (coin(rng)) {
            orbit_relation({{1, p}});
        } else {
            kept.push_back(p);
        }
    }
    for (std::size_t i = 0; i + 1 < kept.size(); ++i) {
        const Path& p = kept[i];
        const Path& r = kept[i + 1];
        if (q.path_source(p) == q.path_source(r) && q.path_target(p) == q.path_target(r) && coin(rng)) {
            const auto c = static_cast<std::int64_t>(1 + pick(field.p() - 1));
            orbit_relation({{1, p}, {-c, r}});
            ++i;
        }
    }
    for (std::size_t a = 0; a < na; ++a) {
        for (std::size_t b = 0; b < na; ++b) {
            if (q.arrows[a].target != q.arrows[b].source) {
                continue;
            }
            for (std::size_t c = 0; c < na; ++c) {
                if (q.arrows[b].target == q.arrows[c].source) {
                    q.relations.push_back({{1, Path{q.arrows[a].source, {a, b, c}}}});
                }
            }
        }
    }

    auto pc = std::make_shared<PathCategory>(build_category(q, field));
    FiniteGroup g = FiniteGroup::cyclic(n);
    if (n == 1) {
        return std::make_shared<const GCategory>(make_gcategory(pc->category(), g, trivial_action(*pc->category(), g)));
    }
    std::vector<std::size_t> om(q.vertices.size());
    for (std::size_t h = 0; h < n; ++h) {
        for (std::size_t v = 0; v < m; ++v) {
            om[vertex(h, v)] = vertex(h + 1, v);
        }
    }
    if (spec.fixed_vertex) {
        om[fixed] = fixed;
    }
    std::vector<Vec> images;
    for (std::size_t a = 0; a < na; ++a) {
        images.push_back(pc->path_coords(Path{q.arrows[shift_arrow(a, 1)].source, {shift_arrow(a, 1)}}));
    }
    GroupAction act = generate_action(*pc->category(), g, {{1, functor_from_arrow_images(*pc, om, images)}});
    return std::make_shared<const GCategory>(make_gcategory(pc->category(), g, std::move(act)));
}

}  // namespace orbitcov
