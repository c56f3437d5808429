#include "orbitcov/exactla.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace orbitcov {

bool is_prime(std::uint32_t n) noexcept
{
    if (n < 2) {
        return false;
    }
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            return false;
        }
    }
    return true;
}

PrimeField::PrimeField(std::uint32_t p) : p_(p)
{
    if (!is_prime(p) || p > (1u << 31)) {
        throw std::invalid_argument("field modulus must be a prime below 2^31, got " + std::to_string(p));
    }
}

Elem PrimeField::pow(Elem a, std::uint64_t e) const noexcept
{
    Elem result = 1 % p_;
    Elem base = a;
    while (e != 0) {
        if (e & 1u) {
            result = mul(result, base);
        }
        base = mul(base, base);
        e >>= 1u;
    }
    return result;
}

Elem PrimeField::inv(Elem a) const
{
    if (a == 0) {
        throw std::domain_error("inverse of zero in F_p");
    }
    return pow(a, p_ - 2);
}

Elem PrimeField::from_int(std::int64_t v) const noexcept
{
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    if (r < 0) {
        r += p_;
    }
    return static_cast<Elem>(r);
}

std::int64_t PrimeField::to_signed(Elem a) const noexcept
{
    return a > p_ / 2 ? static_cast<std::int64_t>(a) - static_cast<std::int64_t>(p_) : a;
}

// ---------------------------------------------------------------------------
// Matrix

Matrix::Matrix(PrimeField field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), data_(rows * cols, 0)
{
}

Matrix Matrix::identity(PrimeField field, std::size_t n)
{
    Matrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = 1;
    }
    return m;
}

Matrix Matrix::from_rows(PrimeField field, const std::vector<std::vector<std::int64_t>>& rows)
{
    const std::size_t nr = rows.size();
    const std::size_t nc = nr == 0 ? 0 : rows.front().size();
    Matrix m(field, nr, nc);
    for (std::size_t r = 0; r < nr; ++r) {
        if (rows[r].size() != nc) {
            throw DimensionMismatch("ragged matrix literal");
        }
        for (std::size_t c = 0; c < nc; ++c) {
            m(r, c) = field.from_int(rows[r][c]);
        }
    }
    return m;
}

Matrix Matrix::from_row_vectors(PrimeField field, std::size_t cols, const std::vector<Vec>& rows)
{
    Matrix m(field, rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) {
            throw DimensionMismatch("row vector length mismatch");
        }
        std::copy(rows[r].begin(), rows[r].end(), m.data_.begin() + static_cast<std::ptrdiff_t>(r * cols));
    }
    return m;
}

Matrix Matrix::from_col_vectors(PrimeField field, std::size_t rows, const std::vector<Vec>& cols)
{
    Matrix m(field, rows, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
        if (cols[c].size() != rows) {
            throw DimensionMismatch("column vector length mismatch");
        }
        for (std::size_t r = 0; r < rows; ++r) {
            m(r, c) = cols[c][r];
        }
    }
    return m;
}

Vec Matrix::row(std::size_t r) const
{
    auto s = row_span(r);
    return Vec(s.begin(), s.end());
}

Vec Matrix::col(std::size_t c) const
{
    Vec v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        v[r] = (*this)(r, c);
    }
    return v;
}

Matrix Matrix::transpose() const
{
    Matrix t(field_, cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) {
            t(c, r) = (*this)(r, c);
        }
    }
    return t;
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const
{
    if (r0 + nr > rows_ || c0 + nc > cols_) {
        throw DimensionMismatch("block out of range");
    }
    Matrix b(field_, nr, nc);
    for (std::size_t r = 0; r < nr; ++r) {
        for (std::size_t c = 0; c < nc; ++c) {
            b(r, c) = (*this)(r0 + r, c0 + c);
        }
    }
    return b;
}

void Matrix::set_block(std::size_t r0, std::size_t c0, const Matrix& b)
{
    if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_) {
        throw DimensionMismatch("set_block out of range");
    }
    for (std::size_t r = 0; r < b.rows_; ++r) {
        for (std::size_t c = 0; c < b.cols_; ++c) {
            (*this)(r0 + r, c0 + c) = b(r, c);
        }
    }
}

Matrix Matrix::scaled(Elem s) const
{
    Matrix m = *this;
    for (auto& x : m.data_) {
        x = field_.mul(x, s);
    }
    return m;
}

bool Matrix::is_zero() const noexcept
{
    return std::all_of(data_.begin(), data_.end(), [](Elem x) { return x == 0; });
}

bool Matrix::is_identity() const noexcept
{
    if (rows_ != cols_) {
        return false;
    }
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) {
            if ((*this)(r, c) != (r == c ? 1u : 0u)) {
                return false;
            }
        }
    }
    return true;
}

Matrix Matrix::operator*(const Matrix& rhs) const
{
    if (cols_ != rhs.rows_) {
        throw DimensionMismatch("matrix product " + std::to_string(rows_) + "x" + std::to_string(cols_) +
                                " * " + std::to_string(rhs.rows_) + "x" + std::to_string(rhs.cols_));
    }
    Matrix out(field_, rows_, rhs.cols_);
    const std::uint64_t p = field_.p();
    std::vector<std::uint64_t> acc(rhs.cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
        std::fill(acc.begin(), acc.end(), 0);
        for (std::size_t k = 0; k < cols_; ++k) {
            const std::uint64_t a = (*this)(r, k);
            if (a == 0) {
                continue;
            }
            const Elem* brow = rhs.data_.data() + k * rhs.cols_;
            for (std::size_t c = 0; c < rhs.cols_; ++c) {
                acc[c] += a * brow[c];
                if (acc[c] >= (1ull << 62)) {
                    acc[c] %= p;
                }
            }
        }
        for (std::size_t c = 0; c < rhs.cols_; ++c) {
            out(r, c) = static_cast<Elem>(acc[c] % p);
        }
    }
    return out;
}

Matrix Matrix::operator+(const Matrix& rhs) const
{
    Matrix out = *this;
    out += rhs;
    return out;
}

Matrix& Matrix::operator+=(const Matrix& rhs)
{
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) {
        throw DimensionMismatch("matrix sum shape mismatch");
    }
    for (std::size_t i = 0; i < data_.size(); ++i) {
        data_[i] = field_.add(data_[i], rhs.data_[i]);
    }
    return *this;
}

Matrix Matrix::operator-(const Matrix& rhs) const
{
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) {
        throw DimensionMismatch("matrix difference shape mismatch");
    }
    Matrix out = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) {
        out.data_[i] = field_.sub(data_[i], rhs.data_[i]);
    }
    return out;
}

Vec Matrix::apply(std::span<const Elem> v) const
{
    if (v.size() != cols_) {
        throw DimensionMismatch("matrix-vector size mismatch");
    }
    Vec out(rows_);
    const std::uint64_t p = field_.p();
    for (std::size_t r = 0; r < rows_; ++r) {
        std::uint64_t acc = 0;
        const Elem* row = data_.data() + r * cols_;
        for (std::size_t c = 0; c < cols_; ++c) {
            acc += static_cast<std::uint64_t>(row[c]) * v[c];
            if (acc >= (1ull << 62)) {
                acc %= p;
            }
        }
        out[r] = static_cast<Elem>(acc % p);
    }
    return out;
}

bool Matrix::operator==(const Matrix& rhs) const
{
    return rows_ == rhs.rows_ && cols_ == rhs.cols_ && data_ == rhs.data_;
}

std::string Matrix::to_string() const
{
    std::ostringstream os;
    os << '[';
    for (std::size_t r = 0; r < rows_; ++r) {
        os << (r ? ",[" : "[");
        for (std::size_t c = 0; c < cols_; ++c) {
            os << (c ? "," : "") << field_.to_signed((*this)(r, c));
        }
        os << ']';
    }
    os << ']';
    return os.str();
}

Matrix hstack(const Matrix& a, const Matrix& b)
{
    if (a.rows() != b.rows()) {
        throw DimensionMismatch("hstack row mismatch");
    }
    Matrix m(a.field(), a.rows(), a.cols() + b.cols());
    m.set_block(0, 0, a);
    m.set_block(0, a.cols(), b);
    return m;
}

Matrix vstack(const Matrix& a, const Matrix& b)
{
    if (a.cols() != b.cols()) {
        throw DimensionMismatch("vstack column mismatch");
    }
    Matrix m(a.field(), a.rows() + b.rows(), a.cols());
    m.set_block(0, 0, a);
    m.set_block(a.rows(), 0, b);
    return m;
}

Matrix block_diag(PrimeField field, const std::vector<Matrix>& blocks)
{
    std::size_t nr = 0;
    std::size_t nc = 0;
    for (const auto& b : blocks) {
        nr += b.rows();
        nc += b.cols();
    }
    Matrix m(field, nr, nc);
    std::size_t r = 0;
    std::size_t c = 0;
    for (const auto& b : blocks) {
        m.set_block(r, c, b);
        r += b.rows();
        c += b.cols();
    }
    return m;
}

// ---------------------------------------------------------------------------
// Echelon forms

namespace {

// In-place Gauss-Jordan on a row-major buffer; returns pivot columns.
std::vector<std::size_t> gauss_jordan(const PrimeField& f, std::vector<Elem>& a, std::size_t rows, std::size_t cols)
{
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t sel = rows;
        for (std::size_t i = r; i < rows; ++i) {
            if (a[i * cols + c] != 0) {
                sel = i;
                break;
            }
        }
        if (sel == rows) {
            continue;
        }
        if (sel != r) {
            std::swap_ranges(a.begin() + static_cast<std::ptrdiff_t>(sel * cols),
                             a.begin() + static_cast<std::ptrdiff_t>(sel * cols + cols),
                             a.begin() + static_cast<std::ptrdiff_t>(r * cols));
        }
        Elem* prow = a.data() + r * cols;
        const Elem inv = f.inv(prow[c]);
        if (inv != 1) {
            for (std::size_t j = c; j < cols; ++j) {
                prow[j] = f.mul(prow[j], inv);
            }
        }
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r) {
                continue;
            }
            Elem* row = a.data() + i * cols;
            const Elem factor = row[c];
            if (factor == 0) {
                continue;
            }
            const Elem nf = f.neg(factor);
            for (std::size_t j = c; j < cols; ++j) {
                if (prow[j] != 0) {
                    row[j] = f.add(row[j], f.mul(nf, prow[j]));
                }
            }
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace

Echelon rref(const Matrix& m)
{
    std::vector<Elem> buf(m.data().begin(), m.data().end());
    auto pivots = gauss_jordan(m.field(), buf, m.rows(), m.cols());
    Matrix form(m.field(), pivots.size(), m.cols());
    for (std::size_t r = 0; r < pivots.size(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            form(r, c) = buf[r * m.cols() + c];
        }
    }
    return {std::move(form), std::move(pivots)};
}

std::size_t rank(const Matrix& m)
{
    return rref(m).pivots.size();
}

std::optional<Matrix> inverse(const Matrix& m)
{
    if (!m.is_square()) {
        return std::nullopt;
    }
    const std::size_t n = m.rows();
    Echelon e = rref(hstack(m, Matrix::identity(m.field(), n)));
    if (e.pivots.size() < n || (n > 0 && e.pivots[n - 1] != n - 1)) {
        return std::nullopt;
    }
    return e.form.block(0, n, n, n);
}

Elem trace(const Matrix& m)
{
    if (!m.is_square()) {
        throw DimensionMismatch("trace of non-square matrix");
    }
    Elem t = 0;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        t = m.field().add(t, m(i, i));
    }
    return t;
}

Matrix matrix_power(const Matrix& m, std::uint64_t e)
{
    if (!m.is_square()) {
        throw DimensionMismatch("power of non-square matrix");
    }
    Matrix result = Matrix::identity(m.field(), m.rows());
    Matrix base = m;
    while (e != 0) {
        if (e & 1u) {
            result = result * base;
        }
        e >>= 1u;
        if (e != 0) {
            base = base * base;
        }
    }
    return result;
}

// ---------------------------------------------------------------------------
// Subspace

Subspace::Subspace(PrimeField field, std::size_t ambient_dim)
    : field_(field), ambient_(ambient_dim), basis_(field, 0, ambient_dim)
{
}

Subspace Subspace::span(PrimeField field, std::size_t ambient_dim, const std::vector<Vec>& vectors)
{
    Subspace s(field, ambient_dim);
    if (vectors.empty()) {
        return s;
    }
    Echelon e = rref(Matrix::from_row_vectors(field, ambient_dim, vectors));
    s.basis_ = std::move(e.form);
    s.pivots_ = std::move(e.pivots);
    return s;
}

Subspace Subspace::full(PrimeField field, std::size_t ambient_dim)
{
    Subspace s(field, ambient_dim);
    s.basis_ = Matrix::identity(field, ambient_dim);
    s.pivots_.resize(ambient_dim);
    for (std::size_t i = 0; i < ambient_dim; ++i) {
        s.pivots_[i] = i;
    }
    return s;
}

Subspace Subspace::row_space(const Matrix& m)
{
    Subspace s(m.field(), m.cols());
    Echelon e = rref(m);
    s.basis_ = std::move(e.form);
    s.pivots_ = std::move(e.pivots);
    return s;
}

Subspace Subspace::column_space(const Matrix& m)
{
    return row_space(m.transpose());
}

Vec Subspace::reduce(std::span<const Elem> v) const
{
    if (v.size() != ambient_) {
        throw DimensionMismatch("vector does not live in the ambient space");
    }
    Vec r(v.begin(), v.end());
    for (std::size_t i = 0; i < pivots_.size(); ++i) {
        const Elem c = r[pivots_[i]];
        if (c != 0) {
            vec_axpy(field_, field_.neg(c), basis_.row_span(i), r);
        }
    }
    return r;
}

bool Subspace::contains(std::span<const Elem> v) const
{
    return vec_is_zero(reduce(v));
}

Vec Subspace::coords(std::span<const Elem> v) const
{
    Vec c(pivots_.size());
    for (std::size_t i = 0; i < pivots_.size(); ++i) {
        c[i] = v[pivots_[i]];
    }
    return c;
}

bool Subspace::contains(const Subspace& other) const
{
    for (std::size_t i = 0; i < other.dim(); ++i) {
        if (!contains(other.basis_.row_span(i))) {
            return false;
        }
    }
    return true;
}

Subspace Subspace::operator+(const Subspace& other) const
{
    if (ambient_ != other.ambient_) {
        throw DimensionMismatch("sum of subspaces of different ambient spaces");
    }
    if (dim() == 0) {
        return other;
    }
    if (other.dim() == 0) {
        return *this;
    }
    return row_space(vstack(basis_, other.basis_));
}

Subspace Subspace::intersect(const Subspace& other) const
{
    if (ambient_ != other.ambient_) {
        throw DimensionMismatch("intersection of subspaces of different ambient spaces");
    }
    // Solve x^T A = y^T B via the kernel of [A^T | -B^T].
    const std::size_t da = dim();
    const std::size_t db = other.dim();
    if (da == 0 || db == 0) {
        return Subspace(field_, ambient_);
    }
    Matrix sys = hstack(basis_.transpose(), other.basis_.transpose().scaled(field_.neg(1)));
    Subspace k = kernel_basis(sys);
    std::vector<Vec> vecs;
    for (std::size_t i = 0; i < k.dim(); ++i) {
        Vec coeffs = k.vector(i);
        Vec x(ambient_, 0);
        for (std::size_t j = 0; j < da; ++j) {
            if (coeffs[j] != 0) {
                vec_axpy(field_, coeffs[j], basis_.row_span(j), x);
            }
        }
        vecs.push_back(std::move(x));
    }
    return span(field_, ambient_, vecs);
}

bool Subspace::operator==(const Subspace& other) const
{
    return ambient_ == other.ambient_ && pivots_ == other.pivots_ && basis_ == other.basis_;
}

Subspace kernel_basis(const Matrix& m)
{
    const PrimeField f = m.field();
    const std::size_t n = m.cols();
    Echelon e = rref(m);
    std::vector<char> is_pivot(n, 0);
    for (auto c : e.pivots) {
        is_pivot[c] = 1;
    }
    std::vector<Vec> vecs;
    for (std::size_t free = 0; free < n; ++free) {
        if (is_pivot[free]) {
            continue;
        }
        Vec v(n, 0);
        v[free] = 1;
        for (std::size_t r = 0; r < e.pivots.size(); ++r) {
            v[e.pivots[r]] = f.neg(e.form(r, free));
        }
        vecs.push_back(std::move(v));
    }
    return Subspace::span(f, n, vecs);
}

std::optional<Matrix> solve(const Matrix& a, const Matrix& b)
{
    if (a.rows() != b.rows()) {
        throw DimensionMismatch("solve: a has " + std::to_string(a.rows()) + " rows, b has " +
                                std::to_string(b.rows()));
    }
    const std::size_t n = a.cols();
    Echelon e = rref(hstack(a, b));
    Matrix x(a.field(), n, b.cols());
    for (std::size_t r = 0; r < e.pivots.size(); ++r) {
        const std::size_t pc = e.pivots[r];
        if (pc >= n) {
            return std::nullopt;  // pivot in the augmented part
        }
        for (std::size_t c = 0; c < b.cols(); ++c) {
            x(pc, c) = e.form(r, n + c);
        }
    }
    return x;
}

std::optional<Vec> solve_vec(const Matrix& a, std::span<const Elem> b)
{
    auto x = solve(a, Matrix::from_col_vectors(a.field(), b.size(), {Vec(b.begin(), b.end())}));
    if (!x) {
        return std::nullopt;
    }
    return x->col(0);
}

QuotientSpace quotient_space(std::size_t ambient_dim, const Subspace& s)
{
    if (s.ambient_dim() != ambient_dim) {
        throw DimensionMismatch("quotient_space: subspace lives in dimension " + std::to_string(s.ambient_dim()) +
                                ", expected " + std::to_string(ambient_dim));
    }
    const PrimeField f = s.field();
    std::vector<std::size_t> free_cols;
    std::vector<char> is_pivot(ambient_dim, 0);
    for (auto c : s.pivots()) {
        is_pivot[c] = 1;
    }
    for (std::size_t c = 0; c < ambient_dim; ++c) {
        if (!is_pivot[c]) {
            free_cols.push_back(c);
        }
    }
    const std::size_t q = free_cols.size();
    QuotientSpace out;
    out.ambient_dim = ambient_dim;
    out.subspace = s;
    out.projection = Matrix(f, q, ambient_dim);
    out.section = Matrix(f, ambient_dim, q);
    for (std::size_t k = 0; k < q; ++k) {
        out.section(free_cols[k], k) = 1;
        out.projection(k, free_cols[k]) = 1;
        // e_c for a pivot column c reduces to e_c - s_i, whose free entries are -s_i.
        for (std::size_t i = 0; i < s.dim(); ++i) {
            out.projection(k, s.pivots()[i]) = f.neg(s.basis()(i, free_cols[k]));
        }
    }
    return out;
}

std::pair<Subspace, Subspace> fitting_split(const Matrix& f)
{
    if (!f.is_square()) {
        throw DimensionMismatch("fitting_split needs a square matrix");
    }
    Matrix fn = matrix_power(f, f.rows());
    return {kernel_basis(fn), Subspace::column_space(fn)};
}

// ---------------------------------------------------------------------------
// Vectors

Vec vec_add(const PrimeField& f, std::span<const Elem> a, std::span<const Elem> b)
{
    Vec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        out[i] = f.add(a[i], b[i]);
    }
    return out;
}

Vec vec_sub(const PrimeField& f, std::span<const Elem> a, std::span<const Elem> b)
{
    Vec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        out[i] = f.sub(a[i], b[i]);
    }
    return out;
}

Vec vec_scale(const PrimeField& f, Elem s, std::span<const Elem> a)
{
    Vec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        out[i] = f.mul(s, a[i]);
    }
    return out;
}

void vec_axpy(const PrimeField& f, Elem s, std::span<const Elem> x, std::span<Elem> y)
{
    if (s == 0) {
        return;
    }
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] != 0) {
            y[i] = f.add(y[i], f.mul(s, x[i]));
        }
    }
}

bool vec_is_zero(std::span<const Elem> v) noexcept
{
    return std::all_of(v.begin(), v.end(), [](Elem x) { return x == 0; });
}

Vec unit_vector(std::size_t n, std::size_t i)
{
    Vec v(n, 0);
    v[i] = 1;
    return v;
}

}  // namespace orbitcov
