#pragma once

// Dense exact linear algebra over a prime field F_p.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "orbitcov/errors.hpp"

namespace orbitcov {

using Elem = std::uint32_t;
using Vec = std::vector<Elem>;

class PrimeField {
public:
    static constexpr std::uint32_t kDefaultPrime = 101;

    explicit PrimeField(std::uint32_t p = kDefaultPrime);

    std::uint32_t p() const noexcept { return p_; }

    Elem add(Elem a, Elem b) const noexcept
    {
        std::uint32_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    Elem sub(Elem a, Elem b) const noexcept { return a >= b ? a - b : a + p_ - b; }
    Elem neg(Elem a) const noexcept { return a == 0 ? 0 : p_ - a; }
    Elem mul(Elem a, Elem b) const noexcept
    {
        return static_cast<Elem>((static_cast<std::uint64_t>(a) * b) % p_);
    }
    Elem pow(Elem a, std::uint64_t e) const noexcept;
    /// Throws std::domain_error on zero.
    Elem inv(Elem a) const;
    Elem from_int(std::int64_t v) const noexcept;
    /// Symmetric representative in (-p/2, p/2], used for printing.
    std::int64_t to_signed(Elem a) const noexcept;

    bool operator==(const PrimeField&) const = default;

private:
    std::uint32_t p_;
};

bool is_prime(std::uint32_t n) noexcept;

class Matrix {
public:
    Matrix() = default;
    Matrix(PrimeField field, std::size_t rows, std::size_t cols);

    static Matrix identity(PrimeField field, std::size_t n);
    static Matrix from_rows(PrimeField field, const std::vector<std::vector<std::int64_t>>& rows);
    /// Rows of the result are the given vectors; all must have length `cols`.
    static Matrix from_row_vectors(PrimeField field, std::size_t cols, const std::vector<Vec>& rows);
    static Matrix from_col_vectors(PrimeField field, std::size_t rows, const std::vector<Vec>& cols);

    PrimeField field() const noexcept { return field_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

    Elem operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    Elem& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

    std::span<const Elem> data() const noexcept { return data_; }
    std::span<const Elem> row_span(std::size_t r) const
    {
        return std::span<const Elem>(data_).subspan(r * cols_, cols_);
    }
    Vec row(std::size_t r) const;
    Vec col(std::size_t c) const;

    Matrix transpose() const;
    Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
    void set_block(std::size_t r0, std::size_t c0, const Matrix& b);
    Matrix scaled(Elem s) const;

    bool is_zero() const noexcept;
    bool is_identity() const noexcept;
    bool is_square() const noexcept { return rows_ == cols_; }

    Matrix operator*(const Matrix& rhs) const;
    Matrix operator+(const Matrix& rhs) const;
    Matrix operator-(const Matrix& rhs) const;
    Matrix& operator+=(const Matrix& rhs);
    Vec apply(std::span<const Elem> v) const;

    bool operator==(const Matrix& rhs) const;

    std::string to_string() const;

private:
    PrimeField field_{};
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Elem> data_;
};

Matrix hstack(const Matrix& a, const Matrix& b);
Matrix vstack(const Matrix& a, const Matrix& b);
Matrix block_diag(PrimeField field, const std::vector<Matrix>& blocks);

struct Echelon {
    Matrix form;                      ///< reduced row echelon form, zero rows dropped
    std::vector<std::size_t> pivots;  ///< pivot column of each row
};

Echelon rref(const Matrix& m);
std::size_t rank(const Matrix& m);
std::optional<Matrix> inverse(const Matrix& m);

/// A subspace of F_p^n held by its unique reduced echelon basis.
class Subspace {
public:
    Subspace() = default;
    Subspace(PrimeField field, std::size_t ambient_dim);  // zero subspace

    static Subspace span(PrimeField field, std::size_t ambient_dim, const std::vector<Vec>& vectors);
    static Subspace full(PrimeField field, std::size_t ambient_dim);
    /// Row space of m.
    static Subspace row_space(const Matrix& m);
    /// Column space of m.
    static Subspace column_space(const Matrix& m);

    PrimeField field() const noexcept { return field_; }
    std::size_t ambient_dim() const noexcept { return ambient_; }
    std::size_t dim() const noexcept { return pivots_.size(); }
    const Matrix& basis() const noexcept { return basis_; }
    const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }
    Vec vector(std::size_t i) const { return basis_.row(i); }

    bool contains(std::span<const Elem> v) const;
    /// Coordinates of v in the echelon basis; v must lie in the subspace.
    Vec coords(std::span<const Elem> v) const;
    /// v minus its components along pivot columns; zero iff v lies in the subspace.
    Vec reduce(std::span<const Elem> v) const;
    bool contains(const Subspace& other) const;

    Subspace operator+(const Subspace& other) const;
    Subspace intersect(const Subspace& other) const;

    bool operator==(const Subspace& other) const;

private:
    PrimeField field_{};
    std::size_t ambient_ = 0;
    Matrix basis_;
    std::vector<std::size_t> pivots_;
};

/// Right kernel {v : m v = 0}.
Subspace kernel_basis(const Matrix& m);

/// Some x with a x = b, free variables set to zero; nullopt when inconsistent.
std::optional<Matrix> solve(const Matrix& a, const Matrix& b);
std::optional<Vec> solve_vec(const Matrix& a, std::span<const Elem> b);

struct QuotientSpace {
    std::size_t ambient_dim = 0;
    Subspace subspace;
    Matrix projection;  ///< dim() x ambient_dim
    Matrix section;     ///< ambient_dim x dim()

    std::size_t dim() const noexcept { return projection.rows(); }
    Vec project(std::span<const Elem> v) const { return projection.apply(v); }
    Vec lift(std::span<const Elem> v) const { return section.apply(v); }
};

QuotientSpace quotient_space(std::size_t ambient_dim, const Subspace& s);

/// (ker f^n, im f^n) for square f of size n.
std::pair<Subspace, Subspace> fitting_split(const Matrix& f);

Matrix matrix_power(const Matrix& m, std::uint64_t e);
Elem trace(const Matrix& m);

// Vector helpers.
Vec vec_add(const PrimeField& f, std::span<const Elem> a, std::span<const Elem> b);
Vec vec_sub(const PrimeField& f, std::span<const Elem> a, std::span<const Elem> b);
Vec vec_scale(const PrimeField& f, Elem s, std::span<const Elem> a);
void vec_axpy(const PrimeField& f, Elem s, std::span<const Elem> x, std::span<Elem> y);  // y += s x
bool vec_is_zero(std::span<const Elem> v) noexcept;
Vec unit_vector(std::size_t n, std::size_t i);

}  // namespace orbitcov
