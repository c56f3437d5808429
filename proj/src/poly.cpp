#include "orbitcov/poly.hpp"

#include <stdexcept>

namespace orbitcov {

Poly::Poly(PrimeField field, std::vector<Elem> coeffs) : field_(field), c_(std::move(coeffs))
{
    trim();
}

void Poly::trim()
{
    while (!c_.empty() && c_.back() == 0) {
        c_.pop_back();
    }
}

Poly Poly::monic() const
{
    if (is_zero()) {
        return *this;
    }
    const Elem inv = field_.inv(lead());
    std::vector<Elem> out(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) {
        out[i] = field_.mul(c_[i], inv);
    }
    return Poly(field_, std::move(out));
}

Poly Poly::derivative() const
{
    if (c_.size() <= 1) {
        return Poly(field_, {});
    }
    std::vector<Elem> out(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) {
        out[i - 1] = field_.mul(c_[i], field_.from_int(static_cast<std::int64_t>(i)));
    }
    return Poly(field_, std::move(out));
}

Poly Poly::operator+(const Poly& o) const
{
    std::vector<Elem> out(std::max(c_.size(), o.c_.size()), 0);
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = field_.add(coeff(i), o.coeff(i));
    }
    return Poly(field_, std::move(out));
}

Poly Poly::operator-(const Poly& o) const
{
    std::vector<Elem> out(std::max(c_.size(), o.c_.size()), 0);
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = field_.sub(coeff(i), o.coeff(i));
    }
    return Poly(field_, std::move(out));
}

Poly Poly::operator*(const Poly& o) const
{
    if (is_zero() || o.is_zero()) {
        return Poly(field_, {});
    }
    std::vector<Elem> out(c_.size() + o.c_.size() - 1, 0);
    for (std::size_t i = 0; i < c_.size(); ++i) {
        for (std::size_t j = 0; j < o.c_.size(); ++j) {
            out[i + j] = field_.add(out[i + j], field_.mul(c_[i], o.c_[j]));
        }
    }
    return Poly(field_, std::move(out));
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b)
{
    if (b.is_zero()) {
        throw std::domain_error("polynomial division by zero");
    }
    const PrimeField f = a.field();
    std::vector<Elem> rem = a.coeffs();
    const int db = b.degree();
    if (a.degree() < db) {
        return {Poly(f, {}), a};
    }
    std::vector<Elem> quo(static_cast<std::size_t>(a.degree() - db + 1), 0);
    const Elem inv_lead = f.inv(b.lead());
    for (int i = a.degree(); i >= db; --i) {
        const Elem c = f.mul(rem[static_cast<std::size_t>(i)], inv_lead);
        if (c == 0) {
            continue;
        }
        quo[static_cast<std::size_t>(i - db)] = c;
        for (int j = 0; j <= db; ++j) {
            auto& r = rem[static_cast<std::size_t>(i - db + j)];
            r = f.sub(r, f.mul(c, b.coeff(static_cast<std::size_t>(j))));
        }
    }
    return {Poly(f, std::move(quo)), Poly(f, std::move(rem))};
}

Poly poly_mod(const Poly& a, const Poly& m)
{
    return divmod(a, m).second;
}

Poly poly_gcd(Poly a, Poly b)
{
    while (!b.is_zero()) {
        Poly r = poly_mod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

ExtGcd poly_ext_gcd(const Poly& a, const Poly& b)
{
    const PrimeField f = a.field();
    Poly r0 = a, r1 = b;
    Poly s0 = Poly::constant(f, 1), s1(f, {});
    Poly t0(f, {}), t1 = Poly::constant(f, 1);
    while (!r1.is_zero()) {
        auto [q, r] = divmod(r0, r1);
        r0 = std::move(r1);
        r1 = std::move(r);
        Poly s2 = s0 - q * s1;
        s0 = std::move(s1);
        s1 = std::move(s2);
        Poly t2 = t0 - q * t1;
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.is_zero()) {
        return {r0, s0, t0};
    }
    const Elem inv = f.inv(r0.lead());
    auto scale = [&](const Poly& p) { return p * Poly::constant(f, inv); };
    return {scale(r0), scale(s0), scale(t0)};
}

Poly powmod(Poly base, std::uint64_t e, const Poly& m)
{
    const PrimeField f = m.field();
    Poly result = poly_mod(Poly::constant(f, 1), m);
    base = poly_mod(base, m);
    while (e != 0) {
        if (e & 1u) {
            result = poly_mod(result * base, m);
        }
        e >>= 1u;
        if (e != 0) {
            base = poly_mod(base * base, m);
        }
    }
    return result;
}

namespace {

bool proper_factor(const Poly& g, const Poly& of)
{
    return g.degree() > 0 && g.degree() < of.degree();
}

// r squarefree, every irreducible factor of degree d, deg r > d.
std::optional<Poly> equal_degree_split(const Poly& r, int d, std::mt19937_64& rng)
{
    const PrimeField f = r.field();
    const std::uint32_t p = f.p();
    if (p == 2) {
        return std::nullopt;
    }
    std::uniform_int_distribution<std::uint32_t> coin(0, p - 1);
    for (int attempt = 0; attempt < 64; ++attempt) {
        std::vector<Elem> c(static_cast<std::size_t>(r.degree()));
        for (auto& x : c) {
            x = coin(rng);
        }
        Poly a(f, std::move(c));
        if (a.degree() <= 0) {
            continue;
        }
        Poly g = poly_gcd(a, r);
        if (proper_factor(g, r)) {
            return g;
        }
        // a^((p^d - 1)/2) = (a^(1 + p + ... + p^(d-1)))^((p-1)/2)
        Poly norm = poly_mod(Poly::constant(f, 1), r);
        Poly frob = a;
        for (int i = 0; i < d; ++i) {
            norm = poly_mod(norm * frob, r);
            frob = powmod(frob, p, r);
        }
        Poly b = powmod(norm, (p - 1) / 2, r) - Poly::constant(f, 1);
        g = poly_gcd(b, r);
        if (proper_factor(g, r)) {
            return g;
        }
    }
    return std::nullopt;
}

}  // namespace

std::optional<std::pair<Poly, Poly>> coprime_split(const Poly& m_in, std::mt19937_64& rng)
{
    const PrimeField f = m_in.field();
    const Poly m = m_in.monic();
    if (m.degree() <= 1) {
        return std::nullopt;
    }
    if (static_cast<std::uint64_t>(m.degree()) >= f.p()) {
        throw FieldTooSmall("polynomial degree must stay below the field characteristic");
    }
    // Squarefree part.
    Poly r = divmod(m, poly_gcd(m, m.derivative())).first.monic();
    if (r.degree() <= 1) {
        return std::nullopt;
    }

    std::optional<Poly> factor;
    Poly h = Poly::x(f);
    for (int d = 1; 2 * d <= r.degree() && !factor; ++d) {
        h = powmod(h, f.p(), r);
        Poly g = poly_gcd(h - Poly::x(f), r);
        if (proper_factor(g, r)) {
            factor = g;
        } else if (g.degree() == r.degree()) {
            // All irreducible factors share degree d.
            factor = equal_degree_split(r, d, rng);
            if (!factor) {
                return std::nullopt;
            }
        }
    }
    if (!factor) {
        return std::nullopt;  // r irreducible
    }

    // Collect the full multiplicity of the factors of `factor` inside m.
    Poly ma = Poly::constant(f, 1);
    Poly rest = m;
    for (;;) {
        Poly g = poly_gcd(rest, *factor);
        if (g.degree() <= 0) {
            break;
        }
        ma = ma * g;
        rest = divmod(rest, g).first;
    }
    return std::make_pair(ma.monic(), rest.monic());
}

}  // namespace orbitcov
