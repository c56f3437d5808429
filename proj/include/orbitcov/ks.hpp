#pragma once

// Isomorphism testing in Krull-Schmidt categories of modules and of arrows.
// Cheap invariants first, then a search through Hom(A, B) for an invertible
// element, then a certified answer from the decompositions.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <type_traits>
#include <vector>

#include "orbitcov/morph.hpp"

namespace orbitcov {

template <class Obj>
struct KsTraits;

template <>
struct KsTraits<Module> {
    using Map = ModuleMap;
    using Hom = HomSpace;
    struct Part {
        Module object;
        ModuleMap inclusion, projection;
    };

    static Hom hom(const Module& a, const Module& b) { return hom_space(a, b); }
    static Map compose(const Map& v, const Map& u) { return orbitcov::compose(v, u); }
    static Map identity(const Module& a) { return identity_map(a); }
    static bool is_iso(const Map& u) { return orbitcov::is_iso(u); }
    static bool is_zero(const Module& a) { return a.is_zero(); }
    static Map add(PrimeField, const Map& a, const Map& b) { return orbitcov::add(a, b); }
    static std::vector<std::size_t> signature(const Module& a) { return a.dims(); }
    static std::vector<Part> decompose(const Module& a, std::uint64_t seed)
    {
        std::vector<Part> out;
        for (auto& s : orbitcov::decompose(a, seed)) {
            out.push_back({std::move(s.module), std::move(s.inclusion), std::move(s.projection)});
        }
        return out;
    }
};

template <>
struct KsTraits<MorphObject> {
    using Map = MorphHom;
    using Hom = MorphHomSpace;
    struct Part {
        MorphObject object;
        MorphHom inclusion, projection;
    };

    static Hom hom(const MorphObject& a, const MorphObject& b) { return MorphHomSpace(a, b); }
    static Map compose(const Map& v, const Map& u) { return morph_compose(v, u); }
    static Map identity(const MorphObject& a) { return morph_identity(a); }
    static bool is_iso(const Map& u) { return morph_is_iso(u); }
    static bool is_zero(const MorphObject& a) { return a.is_zero(); }
    static Map add(PrimeField, const Map& a, const Map& b) { return morph_add(a, b); }
    /// dims of dom, dims of cod, rank of the arrow at each object
    static std::vector<std::size_t> signature(const MorphObject& a)
    {
        std::vector<std::size_t> s = a.dom.dims();
        s.insert(s.end(), a.cod.dims().begin(), a.cod.dims().end());
        for (const auto& m : a.arrow.comps) {
            s.push_back(rank(m));
        }
        return s;
    }
    static std::vector<Part> decompose(const MorphObject& a, std::uint64_t seed)
    {
        std::vector<Part> out;
        for (auto& s : morph_decompose(a, seed)) {
            out.push_back({std::move(s.object), std::move(s.inclusion), std::move(s.projection)});
        }
        return out;
    }
};

enum class IsoVerdict { isomorphic, not_isomorphic };

template <class Obj>
struct IsoResult {
    IsoVerdict verdict = IsoVerdict::not_isomorphic;
    std::optional<typename KsTraits<Obj>::Map> witness;
    /// "signature", "basis", "random", "decomposition" or "summands"
    std::string method;

    bool isomorphic() const noexcept { return verdict == IsoVerdict::isomorphic; }
};

inline constexpr int kIsoRandomTries = 12;

namespace detail {

/// Some basis u in Hom(a, b) with v u invertible for a basis v of Hom(b, a),
/// which for indecomposable a, b means u is an isomorphism.
template <class Obj>
std::optional<typename KsTraits<Obj>::Map> indecomposable_iso(const Obj& a, const Obj& b)
{
    using T = KsTraits<Obj>;
    if (T::signature(a) != T::signature(b)) {
        return std::nullopt;
    }
    auto ab = T::hom(a, b).basis();
    auto ba = T::hom(b, a).basis();
    for (const auto& u : ab) {
        for (const auto& v : ba) {
            if (T::is_iso(T::compose(v, u))) {
                return u;
            }
        }
    }
    return std::nullopt;
}

}  // namespace detail

/// Decides whether a and b are isomorphic. Throws FieldTooSmall when the
/// certification path needs the radical of End for an object of size >= p.
template <class Obj>
IsoResult<Obj> iso_test(const Obj& a, const Obj& b, std::uint64_t seed = 0)
{
    using T = KsTraits<Obj>;
    IsoResult<Obj> r;
    if (T::signature(a) != T::signature(b)) {
        r.method = "signature";
        return r;
    }
    if (a == b) {
        r.verdict = IsoVerdict::isomorphic;
        r.witness = T::identity(a);
        r.method = "basis";
        return r;
    }
    auto hom = T::hom(a, b);
    if (T::is_zero(a)) {
        r.verdict = IsoVerdict::isomorphic;
        r.witness = hom.combine(Vec{});
        r.method = "basis";
        return r;
    }
    for (const auto& u : hom.basis()) {
        if (T::is_iso(u)) {
            r.verdict = IsoVerdict::isomorphic;
            r.witness = u;
            r.method = "basis";
            return r;
        }
    }
    const PrimeField f = a.field();
    if (hom.dim() > 1) {
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<std::uint32_t> coin(0, f.p() - 1);
        for (int t = 0; t < kIsoRandomTries; ++t) {
            Vec c(hom.dim());
            for (auto& e : c) {
                e = coin(rng);
            }
            auto u = hom.combine(c);
            if (T::is_iso(u)) {
                r.verdict = IsoVerdict::isomorphic;
                r.witness = std::move(u);
                r.method = "random";
                return r;
            }
        }
    }

    auto pa = T::decompose(a, seed);
    auto pb = T::decompose(b, seed);
    r.method = "decomposition";
    if (pa.size() != pb.size()) {
        return r;
    }
    std::vector<bool> used(pb.size(), false);
    std::optional<typename T::Map> sum;
    for (const auto& sa : pa) {
        bool matched = false;
        for (std::size_t j = 0; j < pb.size() && !matched; ++j) {
            if (used[j]) {
                continue;
            }
            if (auto u = detail::indecomposable_iso(sa.object, pb[j].object)) {
                used[j] = true;
                matched = true;
                auto piece = T::compose(pb[j].inclusion, T::compose(*u, sa.projection));
                sum = sum ? T::add(f, *sum, piece) : piece;
            }
        }
        if (!matched) {
            return r;
        }
    }
    if (!sum || !T::is_iso(*sum)) {
        throw Error("iso_test: summand matching produced a non-invertible map");
    }
    r.verdict = IsoVerdict::isomorphic;
    r.witness = std::move(sum);
    r.method = "summands";
    return r;
}

/// Some a with x isomorphic to ^a y.
template <class Obj>
std::optional<std::size_t> twist_witness(const GCategory& gc, const Obj& x, const Obj& y, std::uint64_t seed = 0)
{
    for (std::size_t a = 0; a < gc.group.order(); ++a) {
        if constexpr (std::is_same_v<Obj, Module>) {
            if (iso_test(x, twist(gc, a, y), seed).isomorphic()) {
                return a;
            }
        } else {
            if (iso_test(x, morph_twist(gc, a, y), seed).isomorphic()) {
                return a;
            }
        }
    }
    return std::nullopt;
}

}  // namespace orbitcov
