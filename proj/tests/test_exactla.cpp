#include "doctest.h"

#include <random>

#include "orbitcov/exactla.hpp"

using namespace orbitcov;

namespace {

Matrix random_matrix(PrimeField f, std::size_t r, std::size_t c, std::mt19937_64& rng, int zero_bias = 0)
{
    std::uniform_int_distribution<std::uint32_t> coin(0, f.p() - 1);
    std::uniform_int_distribution<int> bias(0, 9);
    Matrix m(f, r, c);
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < c; ++j) {
            m(i, j) = bias(rng) < zero_bias ? 0 : coin(rng);
        }
    }
    return m;
}

}  // namespace

TEST_CASE("field arithmetic")
{
    PrimeField f(7);
    CHECK(f.add(5, 4) == 2);
    CHECK(f.sub(2, 5) == 4);
    CHECK(f.mul(3, 5) == 1);
    CHECK(f.inv(3) == 5);
    CHECK(f.from_int(-1) == 6);
    CHECK(f.to_signed(6) == -1);
    CHECK_THROWS(PrimeField(8));
    CHECK(PrimeField().p() == 101);
}

TEST_CASE("kernel_basis examples")
{
    PrimeField f5(5);
    CHECK(kernel_basis(Matrix::from_rows(f5, {{0}})).dim() == 1);
    CHECK(kernel_basis(Matrix::identity(f5, 3)).dim() == 0);

    // hand row reduction: x + 2y = 0, normalized on the last coordinate -> (3, 1)
    Subspace k = kernel_basis(Matrix::from_rows(f5, {{1, 2}, {2, 4}}));
    REQUIRE(k.dim() == 1);
    Vec v = k.vector(0);
    Vec scaled = vec_scale(f5, f5.inv(v[1]), v);
    CHECK(scaled == Vec{3, 1});
}

TEST_CASE("solve examples")
{
    PrimeField f7(7);
    Matrix b = Matrix::from_rows(f7, {{3, 1}, {4, 5}});
    CHECK(*solve(Matrix::identity(f7, 2), b) == b);
    CHECK_FALSE(solve(Matrix::from_rows(PrimeField(3), {{0}}), Matrix::from_rows(PrimeField(3), {{1}})).has_value());
    auto x = solve(Matrix::from_rows(f7, {{1, 1}, {0, 1}}), Matrix::from_rows(f7, {{1}, {1}}));
    REQUIRE(x.has_value());
    CHECK(*x == Matrix::from_rows(f7, {{0}, {1}}));
    CHECK_THROWS_AS(solve(Matrix::identity(f7, 2), Matrix::identity(f7, 3)), DimensionMismatch);
}

TEST_CASE("quotient_space examples")
{
    PrimeField f5(5);
    auto q0 = quotient_space(3, Subspace(f5, 3));
    CHECK(q0.dim() == 3);
    CHECK(q0.projection.is_identity());
    CHECK(quotient_space(3, Subspace::full(f5, 3)).dim() == 0);
    auto q = quotient_space(2, Subspace::span(f5, 2, {{1, 1}}));
    CHECK(q.dim() == 1);
    CHECK(vec_is_zero(q.project(Vec{1, 1})));
    CHECK_THROWS_AS(quotient_space(4, Subspace(f5, 3)), DimensionMismatch);
}

TEST_CASE("fitting_split examples")
{
    PrimeField f5(5);
    auto [k0, i0] = fitting_split(Matrix(f5, 2, 2));
    CHECK(k0.dim() == 2);
    CHECK(i0.dim() == 0);
    auto [k1, i1] = fitting_split(Matrix::identity(f5, 2));
    CHECK(k1.dim() == 0);
    CHECK(i1.dim() == 2);
    auto [k2, i2] = fitting_split(Matrix::from_rows(f5, {{0, 1}, {0, 0}}));
    CHECK(k2.dim() == 2);
    CHECK(i2.dim() == 0);
    CHECK_THROWS_AS(fitting_split(Matrix(f5, 2, 3)), DimensionMismatch);
}

TEST_CASE("property: rank-nullity, solve soundness, quotient exactness, Fitting")
{
    std::mt19937_64 rng(20261015);
    for (std::uint32_t p : {2u, 3u, 5u, 101u}) {
        PrimeField f(p);
        for (int trial = 0; trial < 40; ++trial) {
            std::uniform_int_distribution<std::size_t> size(0, 6);
            const std::size_t r = size(rng), c = size(rng);
            Matrix m = random_matrix(f, r, c, rng, trial % 8);

            Subspace ker = kernel_basis(m);
            CHECK(ker.dim() + rank(m) == c);
            for (std::size_t i = 0; i < ker.dim(); ++i) {
                CHECK(vec_is_zero(m.apply(ker.vector(i))));
            }

            Matrix b = random_matrix(f, r, 2, rng, 5);
            if (auto x = solve(m, b)) {
                CHECK(m * *x == b);
            }
            Matrix consistent = m * random_matrix(f, c, 1, rng);
            auto x2 = solve(m, consistent);
            REQUIRE(x2.has_value());
            CHECK(m * *x2 == consistent);

            Subspace s = Subspace::row_space(m);
            auto q = quotient_space(c, s);
            CHECK(q.dim() + s.dim() == c);
            CHECK((q.projection * q.section).is_identity());
            for (std::size_t i = 0; i < s.dim(); ++i) {
                CHECK(vec_is_zero(q.project(s.vector(i))));
            }

            Matrix sq = random_matrix(f, c, c, rng, trial % 10);
            auto [k, im] = fitting_split(sq);
            CHECK(k.dim() + im.dim() == c);
            CHECK(k.intersect(im).dim() == 0);
            CHECK((k + im).dim() == c);
            if (im.dim() > 0) {
                // f restricted to I is invertible: images of a basis of I stay independent and in I
                std::vector<Vec> imgs;
                for (std::size_t i = 0; i < im.dim(); ++i) {
                    imgs.push_back(sq.apply(im.vector(i)));
                    CHECK(im.contains(imgs.back()));
                }
                CHECK(Subspace::span(f, c, imgs).dim() == im.dim());
            }
        }
    }
}

TEST_CASE("subspace canonical form compares by equality")
{
    PrimeField f(101);
    Subspace a = Subspace::span(f, 3, {{1, 2, 3}, {0, 1, 1}});
    Subspace b = Subspace::span(f, 3, {{1, 3, 4}, {2, 4, 6}});
    CHECK(a == b);
    CHECK(a.contains(Vec{1, 3, 4}));
    CHECK_FALSE(a.contains(Vec{0, 0, 1}));
    Vec v{3, 7, 10};
    Vec coords = a.coords(v);
    Vec back(3, 0);
    for (std::size_t i = 0; i < a.dim(); ++i) {
        vec_axpy(f, coords[i], a.vector(i), back);
    }
    CHECK(back == v);
}

TEST_CASE("inverse and power")
{
    PrimeField f(101);
    Matrix m = Matrix::from_rows(f, {{2, 1}, {1, 1}});
    auto inv = inverse(m);
    REQUIRE(inv.has_value());
    CHECK((m * *inv).is_identity());
    CHECK_FALSE(inverse(Matrix::from_rows(f, {{1, 2}, {2, 4}})).has_value());
    CHECK(matrix_power(m, 0).is_identity());
    CHECK(matrix_power(m, 3) == m * m * m);
}
