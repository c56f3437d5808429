#include "orbitcov/algebra.hpp"

#include <optional>
#include <string>

namespace orbitcov {

FdAlgebra::FdAlgebra(PrimeField field, std::size_t dim, Vec one,
                     const std::function<Vec(std::size_t, std::size_t)>& product)
    : field_(field), dim_(dim), one_(std::move(one)), table_(dim * dim * dim, 0)
{
    if (one_.size() != dim) {
        throw DimensionMismatch("algebra unit has the wrong length");
    }
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
            Vec c = product(i, j);
            if (c.size() != dim) {
                throw DimensionMismatch("structure constant vector has the wrong length");
            }
            std::copy(c.begin(), c.end(), table_.begin() + static_cast<std::ptrdiff_t>((i * dim + j) * dim));
        }
    }
}

void FdAlgebra::set_faithful_traces(Vec traces, std::size_t rep_dim)
{
    if (traces.size() != dim_) {
        throw DimensionMismatch("need one trace per basis element");
    }
    traces_ = std::move(traces);
    rep_dim_ = rep_dim;
    faithful_ = true;
}

Vec FdAlgebra::basis_product(std::size_t i, std::size_t j) const
{
    auto first = table_.begin() + static_cast<std::ptrdiff_t>((i * dim_ + j) * dim_);
    return Vec(first, first + static_cast<std::ptrdiff_t>(dim_));
}

Vec FdAlgebra::mul(std::span<const Elem> x, std::span<const Elem> y) const
{
    Vec out(dim_, 0);
    for (std::size_t i = 0; i < dim_; ++i) {
        if (x[i] == 0) {
            continue;
        }
        for (std::size_t j = 0; j < dim_; ++j) {
            if (y[j] == 0) {
                continue;
            }
            const Elem s = field_.mul(x[i], y[j]);
            std::span<const Elem> row(table_.data() + (i * dim_ + j) * dim_, dim_);
            vec_axpy(field_, s, row, out);
        }
    }
    return out;
}

Matrix FdAlgebra::left_mult(std::span<const Elem> x) const
{
    Matrix m(field_, dim_, dim_);
    for (std::size_t j = 0; j < dim_; ++j) {
        Vec col = mul(x, unit_vector(dim_, j));
        for (std::size_t k = 0; k < dim_; ++k) {
            m(k, j) = col[k];
        }
    }
    return m;
}

Vec FdAlgebra::power(std::span<const Elem> x, std::uint64_t e) const
{
    if (e == 0) {
        return one_;
    }
    std::optional<Vec> result;
    Vec base(x.begin(), x.end());
    while (e != 0) {
        if (e & 1u) {
            result = result ? mul(*result, base) : base;
        }
        e >>= 1u;
        if (e != 0) {
            base = mul(base, base);
        }
    }
    return *result;
}

bool FdAlgebra::is_commutative() const
{
    for (std::size_t i = 0; i < dim_; ++i) {
        for (std::size_t j = i + 1; j < dim_; ++j) {
            if (basis_product(i, j) != basis_product(j, i)) {
                return false;
            }
        }
    }
    return true;
}

FdAlgebra::Quotient FdAlgebra::quotient(const Subspace& ideal) const
{
    QuotientSpace q = quotient_space(dim_, ideal);
    const std::size_t qd = q.dim();
    std::vector<Vec> lifts(qd);
    for (std::size_t i = 0; i < qd; ++i) {
        lifts[i] = q.section.col(i);
    }
    FdAlgebra alg(field_, qd, q.project(one_),
                  [&](std::size_t i, std::size_t j) { return q.project(mul(lifts[i], lifts[j])); });
    return {std::move(alg), std::move(q)};
}

Subspace radical(const FdAlgebra& a)
{
    const std::size_t n = a.dim();
    const PrimeField f = a.field();
    const bool faithful = a.has_faithful_traces();
    const std::size_t size = faithful ? a.faithful_dim() : n;
    if (size >= f.p()) {
        throw FieldTooSmall("trace-form radical needs p > representation size (p = " + std::to_string(f.p()) +
                            ", size = " + std::to_string(size) + ")");
    }
    // Tr(b_k) for every basis element, then the Gram matrix of (x, y) -> Tr(xy).
    Vec traces = faithful ? a.faithful_traces() : Vec(n, 0);
    for (std::size_t k = 0; k < n && !faithful; ++k) {
        for (std::size_t m = 0; m < n; ++m) {
            traces[k] = f.add(traces[k], a.basis_product(k, m)[m]);
        }
    }
    Matrix gram(f, n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            Vec prod = a.basis_product(i, j);
            Elem t = 0;
            for (std::size_t k = 0; k < n; ++k) {
                t = f.add(t, f.mul(prod[k], traces[k]));
            }
            gram(i, j) = t;
        }
    }
    return kernel_basis(gram);
}

namespace {

// Frobenius-fixed subspace of a commutative algebra, in its own coordinates.
Subspace frobenius_fixed(const FdAlgebra& s)
{
    const PrimeField f = s.field();
    const std::size_t n = s.dim();
    Matrix m(f, n, n);
    for (std::size_t j = 0; j < n; ++j) {
        Vec bj = unit_vector(n, j);
        Vec diff = vec_sub(f, s.power(bj, f.p()), bj);
        for (std::size_t k = 0; k < n; ++k) {
            m(k, j) = diff[k];
        }
    }
    return kernel_basis(m);
}

}  // namespace

bool is_local(const FdAlgebra& a)
{
    if (a.dim() == 0) {
        return false;
    }
    auto q = a.quotient(radical(a));
    const FdAlgebra& s = q.algebra;
    if (s.dim() == 1) {
        return true;
    }
    if (!s.is_commutative()) {
        return false;
    }
    return frobenius_fixed(s).dim() == 1;
}

namespace {

class IdempotentSplitter {
public:
    IdempotentSplitter(const FdAlgebra& a, std::uint64_t seed)
        : a_(a), f_(a.field()), rad_(radical(a)), quot_(a.quotient(rad_)), rng_(seed)
    {
    }

    IdempotentDecomposition run()
    {
        IdempotentDecomposition out;
        if (a_.dim() > 0) {
            split(a_.one());
        }
        out.radical = rad_;
        out.idempotents = std::move(found_);
        out.newton_steps = newton_steps_;
        return out;
    }

private:
    const FdAlgebra& s() const { return quot_.algebra; }
    Vec to_s(std::span<const Elem> x) const { return quot_.map.project(x); }

    Vec corner(const Vec& e, std::span<const Elem> x) const { return a_.mul(a_.mul(e, x), e); }

    // Minimal polynomial of xs inside the corner algebra with unit es.
    Poly min_poly(const Vec& es, const Vec& xs) const
    {
        const std::size_t n = s().dim();
        std::vector<Vec> powers{es};
        for (;;) {
            Vec next = s().mul(powers.back(), xs);
            Matrix a = Matrix::from_col_vectors(f_, n, powers);
            if (auto sol = solve_vec(a, next)) {
                std::vector<Elem> c(powers.size() + 1);
                for (std::size_t i = 0; i < powers.size(); ++i) {
                    c[i] = f_.neg((*sol)[i]);
                }
                c.back() = 1;
                return Poly(f_, std::move(c));
            }
            powers.push_back(std::move(next));
        }
    }

    Vec eval(const Poly& u, const Vec& e, const Vec& x) const
    {
        Vec r(a_.dim(), 0);
        for (int k = u.degree(); k >= 0; --k) {
            r = a_.mul(r, x);
            vec_axpy(f_, u.coeff(static_cast<std::size_t>(k)), e, r);
        }
        return r;
    }

    Vec newton_lift(Vec e0)
    {
        for (std::size_t it = 0; it <= a_.dim() + 1; ++it) {
            Vec sq = a_.mul(e0, e0);
            if (sq == e0) {
                return e0;
            }
            Vec cube = a_.mul(sq, e0);
            Vec next = vec_scale(f_, 3, sq);
            vec_axpy(f_, f_.neg(2), cube, next);
            e0 = std::move(next);
            ++newton_steps_;
        }
        throw Error("idempotent lifting did not converge within dim E iterations");
    }

    // Attempts to produce a nontrivial idempotent of the corner eAe from x (in eAe).
    std::optional<Vec> try_element(const Vec& e, const Vec& x)
    {
        const Vec es = to_s(e);
        const Vec xs = to_s(x);
        Poly m = min_poly(es, xs);
        auto split = coprime_split(m, rng_);
        if (!split) {
            return std::nullopt;
        }
        auto [ma, mb] = *split;
        ExtGcd eg = poly_ext_gcd(ma, mb);
        Poly u = poly_mod(eg.t * mb, m);  // 1 mod ma, 0 mod mb
        return newton_lift(eval(u, e, x));
    }

    void split(const Vec& e)
    {
        const std::size_t n = a_.dim();
        std::vector<Vec> corner_basis;
        std::vector<Vec> corner_images;
        for (std::size_t i = 0; i < n; ++i) {
            Vec c = corner(e, unit_vector(n, i));
            corner_images.push_back(to_s(c));
            corner_basis.push_back(std::move(c));
        }
        Subspace image = Subspace::span(f_, s().dim(), corner_images);
        if (image.dim() <= 1) {
            found_.push_back(e);
            return;
        }

        // Commutative corner: local iff the Frobenius-fixed part is one-dimensional,
        // and otherwise a fixed element splits deterministically.
        bool commutative = true;
        for (std::size_t i = 0; i < image.dim() && commutative; ++i) {
            for (std::size_t j = i + 1; j < image.dim(); ++j) {
                Vec vi = image.vector(i), vj = image.vector(j);
                if (s().mul(vi, vj) != s().mul(vj, vi)) {
                    commutative = false;
                    break;
                }
            }
        }
        if (commutative) {
            std::vector<Vec> fixed;
            Matrix frob(f_, s().dim(), image.dim());
            for (std::size_t j = 0; j < image.dim(); ++j) {
                Vec v = image.vector(j);
                Vec d = vec_sub(f_, s().power(v, f_.p()), v);
                for (std::size_t k = 0; k < s().dim(); ++k) {
                    frob(k, j) = d[k];
                }
            }
            Subspace ker = kernel_basis(frob);
            if (ker.dim() <= 1) {
                found_.push_back(e);
                return;
            }
            const Subspace unit_line = Subspace::span(f_, s().dim(), {to_s(e)});
            for (std::size_t i = 0; i < ker.dim(); ++i) {
                Vec coeffs = ker.vector(i);
                Vec vs(s().dim(), 0);
                for (std::size_t j = 0; j < image.dim(); ++j) {
                    vec_axpy(f_, coeffs[j], image.vector(j), vs);
                }
                if (unit_line.contains(vs)) {
                    continue;
                }
                Vec x = corner(e, quot_.map.lift(vs));
                if (auto eh = try_element(e, x)) {
                    recurse(e, *eh);
                    return;
                }
            }
            throw Error("no splitting element found in a commutative corner algebra");
        }

        for (const auto& x : corner_basis) {
            if (auto eh = try_element(e, x)) {
                recurse(e, *eh);
                return;
            }
        }
        std::uniform_int_distribution<std::uint32_t> coin(0, f_.p() - 1);
        for (int attempt = 0; attempt < 256; ++attempt) {
            Vec x(n, 0);
            for (const auto& c : corner_basis) {
                vec_axpy(f_, coin(rng_), c, x);
            }
            if (auto eh = try_element(e, x)) {
                recurse(e, *eh);
                return;
            }
        }
        throw Error("idempotent splitting did not find a splitting element");
    }

    void recurse(const Vec& e, const Vec& eh)
    {
        split(eh);
        split(vec_sub(f_, e, eh));
    }

    const FdAlgebra& a_;
    PrimeField f_;
    Subspace rad_;
    FdAlgebra::Quotient quot_;
    std::mt19937_64 rng_;
    std::vector<Vec> found_;
    std::size_t newton_steps_ = 0;
};

}  // namespace

IdempotentDecomposition primitive_idempotents(const FdAlgebra& a, std::uint64_t seed)
{
    return IdempotentSplitter(a, seed).run();
}

}  // namespace orbitcov
