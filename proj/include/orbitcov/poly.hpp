#pragma once

// Univariate polynomials over F_p, just enough to split minimal polynomials
// into coprime factors.

#include <cstdint>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "orbitcov/exactla.hpp"

namespace orbitcov {

/// Coefficients low degree first; always trimmed (no trailing zeros).
class Poly {
public:
    Poly() = default;
    Poly(PrimeField field, std::vector<Elem> coeffs);

    static Poly constant(PrimeField field, Elem c) { return Poly(field, {c}); }
    static Poly x(PrimeField field) { return Poly(field, {0, 1}); }

    PrimeField field() const noexcept { return field_; }
    /// -1 for the zero polynomial.
    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const noexcept { return c_.empty(); }
    const std::vector<Elem>& coeffs() const noexcept { return c_; }
    Elem coeff(std::size_t i) const noexcept { return i < c_.size() ? c_[i] : 0; }
    Elem lead() const noexcept { return c_.empty() ? 0 : c_.back(); }

    Poly monic() const;
    Poly derivative() const;

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    bool operator==(const Poly& o) const { return c_ == o.c_; }

private:
    void trim();

    PrimeField field_{};
    std::vector<Elem> c_;
};

/// Quotient and remainder; divisor must be nonzero.
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
Poly poly_mod(const Poly& a, const Poly& m);
/// Monic gcd (zero if both inputs are zero).
Poly poly_gcd(Poly a, Poly b);
/// Returns (g, s, t) with s a + t b = g, g monic.
struct ExtGcd {
    Poly g, s, t;
};
ExtGcd poly_ext_gcd(const Poly& a, const Poly& b);
Poly powmod(Poly base, std::uint64_t e, const Poly& m);

/// Splits m = a * b with a, b nonconstant, monic and coprime. Returns nullopt
/// when m is a power of a single irreducible. Requires deg m < p.
std::optional<std::pair<Poly, Poly>> coprime_split(const Poly& m, std::mt19937_64& rng);

}  // namespace orbitcov
