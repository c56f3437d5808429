#pragma once

// Fixture bundles, module and arrow pools, and the verification battery with
// its machine-readable report.

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "orbitcov/quotients.hpp"

namespace orbitcov {

using Json = nlohmann::ordered_json;

struct PoolLimits {
    std::size_t max_total_dim = 12;  ///< per module (arrows: per domain and codomain)
    std::size_t max_modules = 24;
    std::size_t max_morphs = 24;
    std::size_t random_modules = 8;
    std::size_t random_morphs = 4;
    std::size_t max_summands = 4;  ///< representables per random quotient
};

struct NamedClass {
    std::string name;
    std::vector<Module> members;
};

/// K upstairs (modules over C) and K' downstairs (modules over C/G).
struct SubcategoryPair {
    std::string name;
    std::vector<NamedModule> up;
    std::vector<NamedModule> down;
};

struct FixtureBundle {
    std::string name;
    std::shared_ptr<const GCategory> gcat;
    std::shared_ptr<const PushdownContext> ctx;
    std::vector<NamedModule> modules;       ///< user modules over C
    std::vector<NamedModule> down_modules;  ///< user modules over C/G
    std::vector<NamedMorph> morphs;         ///< user arrows over C
    std::vector<NamedClass> factor_classes; ///< classes D for factor checks
    bool stable_ideal = true;               ///< ideal = projectives configured (or defaulted)
    bool u_ideal = true;                    ///< ideal = uobjects configured (or defaulted)
    std::vector<SubcategoryPair> subcategories;
    std::vector<NamedModule> density;       ///< downstairs candidates
    PoolLimits limits;
    std::uint64_t seed = 0;

    PrimeField field() const { return gcat->cat().field(); }
    const OrbitCategory& orbit() const { return ctx->orbit(); }
};

/// Builds the pushdown context and checks that every user object lives over
/// the right category; throws ValidationError otherwise.
FixtureBundle make_bundle(std::string name, std::shared_ptr<const GCategory> gc);
void validate_bundle(const FixtureBundle& b);

struct Pool {
    std::vector<NamedModule> modules;       ///< over C
    std::vector<NamedModule> down_modules;  ///< over C/G
    std::vector<NamedMorph> morphs;         ///< over C
    std::size_t deterministic_modules = 0;  ///< size of the seed-independent head
};

/// Simples, representables, user modules, twists, round trips P^P_S and
/// small sums first, then seeded random quotients of sums of representables.
/// Deduplicated by literal equality. Throws CapExceeded when a user object
/// exceeds the dimension limit.
Pool build_pool(const FixtureBundle& b, const PoolLimits& limits, std::uint64_t seed);

struct CheckRecord {
    std::string name;
    std::string anchor;  ///< the property being verified, in words
    Json inputs = Json::object();
    Json dims = Json::array();
    std::string verdict;  ///< PASS, FAIL or SKIPPED(non-free)
    Json witness = nullptr;
};

struct BatteryConfig {
    /// Empty means everything; otherwise a subset of canonical, pushdown,
    /// stable, factor, h, hfactor, fp.
    std::set<std::string> only;
    std::uint64_t seed = 0;
};

struct CheckReport {
    std::vector<CheckRecord> checks;
    bool pass = true;
    double elapsed_ms = 0;
};

const std::vector<std::string>& battery_groups();

CheckReport run_battery(const FixtureBundle& b, const BatteryConfig& config);

Json record_to_json(const CheckRecord& r);
/// {schema_version, fixture_hash, checks, verdict, elapsed_ms}; elapsed_ms is
/// omitted when `timing` is false so reports can be diffed byte for byte.
Json report_to_json(const CheckReport& r, const std::string& fixture_hash, bool timing);

inline constexpr const char* kReportSchemaVersion = "1.0";

struct RandomPresentationSpec {
    std::size_t group_order = 2;  ///< Z/n acting by rotating sheets
    std::size_t base_vertices = 2;
    std::size_t base_arrows = 3;
    bool fixed_vertex = false;  ///< add a vertex fixed by G with arrows into every sheet
};

/// Covering-style quiver: vertices (g, v) for g in Z/n, arrows (g, i) from
/// (g, s_i) to (g + h_i, t_i), G acting by g -> g + 1. Relations are G-stable
/// orbits of zero and commutativity relations of length 2, plus every path of
/// length 3, so the ideal is admissible.
std::shared_ptr<const GCategory> random_gcategory(const RandomPresentationSpec& spec, std::uint64_t seed,
                                                  PrimeField field = PrimeField());

}  // namespace orbitcov
