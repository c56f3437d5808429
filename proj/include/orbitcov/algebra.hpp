#pragma once

// Finite-dimensional associative unital algebras given by structure
// constants, with the radical and primitive idempotent machinery that drives
// every Krull-Schmidt decomposition in the library.

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "orbitcov/exactla.hpp"
#include "orbitcov/poly.hpp"

namespace orbitcov {

class FdAlgebra {
public:
    FdAlgebra() = default;
    /// `product(i, j)` returns the coordinates of b_i * b_j.
    FdAlgebra(PrimeField field, std::size_t dim, Vec one,
              const std::function<Vec(std::size_t, std::size_t)>& product);

    PrimeField field() const noexcept { return field_; }
    std::size_t dim() const noexcept { return dim_; }
    const Vec& one() const noexcept { return one_; }

    Vec mul(std::span<const Elem> x, std::span<const Elem> y) const;
    Vec basis_product(std::size_t i, std::size_t j) const;
    /// Matrix of y -> x y in basis coordinates.
    Matrix left_mult(std::span<const Elem> x) const;
    Vec power(std::span<const Elem> x, std::uint64_t e) const;
    bool is_commutative() const;

    /// Traces of the basis elements acting in a faithful representation of
    /// size `rep_dim`; lets the radical work whenever p > rep_dim.
    void set_faithful_traces(Vec traces, std::size_t rep_dim);
    bool has_faithful_traces() const noexcept { return faithful_; }
    const Vec& faithful_traces() const noexcept { return traces_; }
    std::size_t faithful_dim() const noexcept { return rep_dim_; }

    /// Quotient by a two-sided ideal, together with the coordinate quotient map.
    struct Quotient;
    Quotient quotient(const Subspace& ideal) const;

private:
    PrimeField field_{};
    std::size_t dim_ = 0;
    Vec one_;
    std::vector<Elem> table_;  // [i][j][k]
    Vec traces_;
    std::size_t rep_dim_ = 0;
    bool faithful_ = false;
};

struct FdAlgebra::Quotient {
    FdAlgebra algebra;
    QuotientSpace map;
};

/// Jacobson radical as the kernel of the trace form (x, y) -> Tr(xy), taken
/// in the faithful representation when one is attached and in the regular
/// one otherwise. Needs p above the size of that representation.
Subspace radical(const FdAlgebra& a);

/// True iff A/rad A is a field (A local). Zero algebra is not local.
bool is_local(const FdAlgebra& a);

struct IdempotentDecomposition {
    Subspace radical;
    std::vector<Vec> idempotents;  ///< primitive, pairwise orthogonal, summing to one
    std::size_t newton_steps = 0;
};

/// Complete set of primitive orthogonal idempotents. Splitting elements come
/// from corner basis elements first, then seeded random combinations; lifts go
/// through Newton iteration e <- 3e^2 - 2e^3.
IdempotentDecomposition primitive_idempotents(const FdAlgebra& a, std::uint64_t seed);

}  // namespace orbitcov
