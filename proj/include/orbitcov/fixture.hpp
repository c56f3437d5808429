#pragma once

// Sectioned text fixtures ([section] blocks of key = value lines), their
// canonical form and content hash, and the translation into a FixtureBundle.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "orbitcov/harness.hpp"

namespace orbitcov {

struct FixtureEntry {
    std::string key;
    std::string value;
    std::size_t line = 0;
    std::size_t column = 0;  ///< column of the first character of the value
};

struct FixtureSection {
    std::string name;
    std::size_t line = 0;
    std::vector<FixtureEntry> entries;

    const FixtureEntry* find(const std::string& key) const;
};

struct FixtureFile {
    std::vector<FixtureSection> sections;

    const FixtureSection* find(const std::string& name) const;
};

/// Section names in canonical order.
const std::vector<std::string>& fixture_sections();

/// Syntax only: sections, keys, comments (# to end of line). Throws ParseError.
FixtureFile parse_fixture_text(const std::string& text);

/// Known sections in canonical order, entries in file order, whitespace in
/// values collapsed, comments dropped.
std::string canonicalize(const FixtureFile& f);
/// FNV-1a 64 of the canonical text, as 16 hex digits.
std::string fixture_hash(const FixtureFile& f);

struct LoadedFixture {
    FixtureFile file;
    std::string hash;
    std::shared_ptr<const PathCategory> path_category;
    FixtureBundle bundle;
    bool has_seed = false;  ///< [run] seed was given
};

/// Parses and builds; every failure is reported as a ParseError located at
/// the entry (or section header) that caused it.
LoadedFixture load_fixture(const std::string& text, const std::string& name = "fixture");
LoadedFixture load_fixture_file(const std::string& path);

/// Looks a module up among user modules over C, then over C/G.
std::optional<Module> find_module(const FixtureBundle& b, const std::string& name);

/// Path combinations such as "2 alpha*beta - e_1": arrows in traversal order,
/// e_v the trivial path at v. Returns coordinates in C(source, target);
/// `source` and `target` are needed for the zero combination "0".
Vec parse_path_combination(const PathCategory& pc, const std::string& text, std::size_t source, std::size_t target);

/// "[1 0; 0 1]" with integer entries reduced mod p; "[]" is the empty matrix
/// of the requested shape.
Matrix parse_matrix(PrimeField f, const std::string& text, std::size_t rows, std::size_t cols);

/// Module over a path category from one matrix per arrow (d_source x d_target,
/// contravariant); missing arrows act by zero. Throws ValidationError when the
/// relations are not respected.
Module module_from_arrows(const PathCategory& pc, const std::vector<std::size_t>& dims,
                          const std::vector<std::optional<Matrix>>& arrows);

}  // namespace orbitcov
