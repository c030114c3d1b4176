#include "stabcat/linalg.hpp"

#include <sstream>

namespace stabcat {

namespace gf {

Scalar inv(Scalar a, Scalar p)
{
    if (a % p == 0)
        throw UsageError("inverse of zero in GF(" + std::to_string(p) + ")");
    // Fermat: a^(p-2)
    std::uint64_t base = a % p, result = 1, e = p - 2;
    while (e) {
        if (e & 1)
            result = result * base % p;
        base = base * base % p;
        e >>= 1;
    }
    return static_cast<Scalar>(result);
}

Scalar reduce(long long v, Scalar p)
{
    long long r = v % static_cast<long long>(p);
    if (r < 0)
        r += p;
    return static_cast<Scalar>(r);
}

bool is_prime(Scalar p)
{
    if (p < 2)
        return false;
    for (Scalar d = 2; static_cast<std::uint64_t>(d) * d <= p; ++d)
        if (p % d == 0)
            return false;
    return true;
}

} // namespace gf

Matrix::Matrix(std::size_t rows, std::size_t cols, Scalar p)
    : rows_(rows), cols_(cols), p_(p), data_(rows * cols, 0)
{
}

Matrix Matrix::identity(std::size_t n, Scalar p)
{
    Matrix m(n, n, p);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1 % p;
    return m;
}

Matrix Matrix::from_rows(const std::vector<std::vector<long long>>& rows, Scalar p)
{
    std::size_t nc = rows.empty() ? 0 : rows.front().size();
    Matrix m(rows.size(), nc, p);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != nc)
            throw UsageError("ragged matrix rows");
        for (std::size_t c = 0; c < nc; ++c)
            m(r, c) = gf::reduce(rows[r][c], p);
    }
    return m;
}

Matrix Matrix::column(const Vec& v, Scalar p)
{
    Matrix m(v.size(), 1, p);
    for (std::size_t i = 0; i < v.size(); ++i)
        m(i, 0) = v[i];
    return m;
}

Matrix Matrix::row(const Vec& v, Scalar p)
{
    Matrix m(1, v.size(), p);
    for (std::size_t i = 0; i < v.size(); ++i)
        m(0, i) = v[i];
    return m;
}

Matrix Matrix::from_columns(const std::vector<Vec>& cols, std::size_t rows, Scalar p)
{
    Matrix m(rows, cols.size(), p);
    for (std::size_t c = 0; c < cols.size(); ++c)
        m.set_col(c, cols[c]);
    return m;
}

Vec Matrix::col(std::size_t c) const
{
    Vec v(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        v[r] = (*this)(r, c);
    return v;
}

Vec Matrix::row_vec(std::size_t r) const
{
    return Vec(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
               data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

void Matrix::set_col(std::size_t c, const Vec& v)
{
    if (v.size() != rows_)
        throw UsageError("set_col: length mismatch");
    for (std::size_t r = 0; r < rows_; ++r)
        (*this)(r, c) = v[r];
}

Matrix Matrix::transpose() const
{
    Matrix t(cols_, rows_, p_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            t(c, r) = (*this)(r, c);
    return t;
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const
{
    if (r0 + nr > rows_ || c0 + nc > cols_)
        throw UsageError("block out of range");
    Matrix b(nr, nc, p_);
    for (std::size_t r = 0; r < nr; ++r)
        for (std::size_t c = 0; c < nc; ++c)
            b(r, c) = (*this)(r0 + r, c0 + c);
    return b;
}

void Matrix::set_block(std::size_t r0, std::size_t c0, const Matrix& b)
{
    if (r0 + b.rows() > rows_ || c0 + b.cols() > cols_)
        throw UsageError("set_block out of range");
    for (std::size_t r = 0; r < b.rows(); ++r)
        for (std::size_t c = 0; c < b.cols(); ++c)
            (*this)(r0 + r, c0 + c) = b(r, c);
}

bool Matrix::is_zero() const
{
    for (Scalar x : data_)
        if (x)
            return false;
    return true;
}

Matrix Matrix::unflatten(const Vec& v, std::size_t rows, std::size_t cols, Scalar p)
{
    if (v.size() != rows * cols)
        throw UsageError("unflatten: size mismatch");
    Matrix m(rows, cols, p);
    m.data_ = v;
    return m;
}

Matrix Matrix::operator*(const Matrix& o) const
{
    if (cols_ != o.rows_ || p_ != o.p_)
        throw UsageError("matrix product shape mismatch: " + std::to_string(rows_) + "x" +
                         std::to_string(cols_) + " * " + std::to_string(o.rows_) + "x" +
                         std::to_string(o.cols_));
    Matrix out(rows_, o.cols_, p_);
    std::vector<std::uint64_t> acc(o.cols_);
    const std::uint64_t p = p_;
    // keep the accumulator below 2^63 before reducing
    const std::size_t flush = std::max<std::uint64_t>(1, (std::uint64_t(1) << 62) / (p * p));
    for (std::size_t i = 0; i < rows_; ++i) {
        std::fill(acc.begin(), acc.end(), 0);
        const Scalar* a = row_ptr(i);
        std::size_t pending = 0;
        for (std::size_t k = 0; k < cols_; ++k) {
            const std::uint64_t aik = a[k];
            if (!aik)
                continue;
            const Scalar* b = o.row_ptr(k);
            for (std::size_t j = 0; j < o.cols_; ++j)
                acc[j] += aik * b[j];
            if (++pending == flush) {
                for (auto& x : acc)
                    x %= p;
                pending = 0;
            }
        }
        Scalar* dst = out.row_ptr(i);
        for (std::size_t j = 0; j < o.cols_; ++j)
            dst[j] = static_cast<Scalar>(acc[j] % p);
    }
    return out;
}

Vec Matrix::operator*(const Vec& v) const
{
    if (v.size() != cols_)
        throw UsageError("matrix-vector shape mismatch");
    Vec out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        std::uint64_t acc = 0;
        const Scalar* a = row_ptr(i);
        for (std::size_t k = 0; k < cols_; ++k) {
            acc += static_cast<std::uint64_t>(a[k]) * v[k];
            if ((k & 1023) == 1023)
                acc %= p_;
        }
        out[i] = static_cast<Scalar>(acc % p_);
    }
    return out;
}

Matrix Matrix::operator+(const Matrix& o) const
{
    Matrix r = *this;
    r += o;
    return r;
}

Matrix Matrix::operator-(const Matrix& o) const
{
    Matrix r = *this;
    r.axpy(p_ - 1, o);
    return r;
}

Matrix Matrix::scaled(Scalar s) const
{
    Matrix r = *this;
    for (auto& x : r.data_)
        x = gf::mul(x, s % p_, p_);
    return r;
}

Matrix& Matrix::operator+=(const Matrix& o)
{
    if (rows_ != o.rows_ || cols_ != o.cols_ || p_ != o.p_)
        throw UsageError("matrix sum shape mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i)
        data_[i] = gf::add(data_[i], o.data_[i], p_);
    return *this;
}

void Matrix::axpy(Scalar s, const Matrix& o)
{
    if (rows_ != o.rows_ || cols_ != o.cols_ || p_ != o.p_)
        throw UsageError("axpy shape mismatch");
    s %= p_;
    if (!s)
        return;
    for (std::size_t i = 0; i < data_.size(); ++i)
        if (o.data_[i])
            data_[i] = gf::add(data_[i], gf::mul(s, o.data_[i], p_), p_);
}

std::string Matrix::str() const
{
    std::ostringstream os;
    os << "[";
    for (std::size_t r = 0; r < rows_; ++r) {
        os << (r ? ", [" : "[");
        for (std::size_t c = 0; c < cols_; ++c)
            os << (c ? "," : "") << (*this)(r, c);
        os << "]";
    }
    os << "]";
    return os.str();
}

Matrix kron(const Matrix& a, const Matrix& b)
{
    if (a.prime() != b.prime())
        throw UsageError("kron: characteristic mismatch");
    const Scalar p = a.prime();
    Matrix k(a.rows() * b.rows(), a.cols() * b.cols(), p);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            Scalar x = a(i, j);
            if (!x)
                continue;
            for (std::size_t r = 0; r < b.rows(); ++r)
                for (std::size_t c = 0; c < b.cols(); ++c)
                    k(i * b.rows() + r, j * b.cols() + c) = gf::mul(x, b(r, c), p);
        }
    return k;
}

Matrix hstack(const std::vector<Matrix>& blocks, std::size_t rows, Scalar p)
{
    std::size_t total = 0;
    for (const auto& b : blocks) {
        if (b.rows() != rows)
            throw UsageError("hstack: row mismatch");
        total += b.cols();
    }
    Matrix m(rows, total, p);
    std::size_t c = 0;
    for (const auto& b : blocks) {
        m.set_block(0, c, b);
        c += b.cols();
    }
    return m;
}

Matrix vstack(const std::vector<Matrix>& blocks, std::size_t cols, Scalar p)
{
    std::size_t total = 0;
    for (const auto& b : blocks) {
        if (b.cols() != cols)
            throw UsageError("vstack: column mismatch");
        total += b.rows();
    }
    Matrix m(total, cols, p);
    std::size_t r = 0;
    for (const auto& b : blocks) {
        m.set_block(r, 0, b);
        r += b.rows();
    }
    return m;
}

Matrix direct_sum(const std::vector<Matrix>& blocks, Scalar p)
{
    std::size_t nr = 0, nc = 0;
    for (const auto& b : blocks) {
        nr += b.rows();
        nc += b.cols();
    }
    Matrix m(nr, nc, p);
    std::size_t r = 0, c = 0;
    for (const auto& b : blocks) {
        m.set_block(r, c, b);
        r += b.rows();
        c += b.cols();
    }
    return m;
}

Vec vec_add(const Vec& a, const Vec& b, Scalar p)
{
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = gf::add(a[i], b[i], p);
    return r;
}

Vec vec_sub(const Vec& a, const Vec& b, Scalar p)
{
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = gf::sub(a[i], b[i], p);
    return r;
}

Vec vec_scale(const Vec& a, Scalar s, Scalar p)
{
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = gf::mul(a[i], s, p);
    return r;
}

Scalar dot(const Vec& a, const Vec& b, Scalar p)
{
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        acc += static_cast<std::uint64_t>(a[i]) * b[i];
        if ((i & 1023) == 1023)
            acc %= p;
    }
    return static_cast<Scalar>(acc % p);
}

bool is_zero(const Vec& v)
{
    for (Scalar x : v)
        if (x)
            return false;
    return true;
}

Echelon rref(const Matrix& m)
{
    Echelon e{m, {}};
    Matrix& a = e.reduced;
    const Scalar p = a.prime();
    const std::size_t nr = a.rows(), nc = a.cols();
    std::size_t r = 0;
    for (std::size_t c = 0; c < nc && r < nr; ++c) {
        std::size_t piv = r;
        while (piv < nr && a(piv, c) == 0)
            ++piv;
        if (piv == nr)
            continue;
        if (piv != r)
            for (std::size_t j = c; j < nc; ++j)
                std::swap(a(piv, j), a(r, j));
        Scalar* pr = a.row_ptr(r);
        Scalar iv = gf::inv(pr[c], p);
        if (iv != 1)
            for (std::size_t j = c; j < nc; ++j)
                pr[j] = gf::mul(pr[j], iv, p);
        for (std::size_t i = 0; i < nr; ++i) {
            if (i == r)
                continue;
            Scalar* ri = a.row_ptr(i);
            Scalar f = ri[c];
            if (!f)
                continue;
            Scalar nf = p - f;
            for (std::size_t j = c; j < nc; ++j)
                if (pr[j])
                    ri[j] = static_cast<Scalar>((ri[j] + static_cast<std::uint64_t>(nf) * pr[j]) % p);
        }
        e.pivots.push_back(c);
        ++r;
    }
    return e;
}

std::size_t rank(const Matrix& m) { return rref(m).pivots.size(); }

Subspace kernel_basis(const Matrix& m)
{
    const Scalar p = m.prime();
    const std::size_t n = m.cols();
    Echelon e = rref(m);
    std::vector<bool> is_pivot(n, false);
    for (auto c : e.pivots)
        is_pivot[c] = true;
    std::vector<Vec> vecs;
    for (std::size_t f = 0; f < n; ++f) {
        if (is_pivot[f])
            continue;
        Vec v(n, 0);
        v[f] = 1;
        for (std::size_t r = 0; r < e.pivots.size(); ++r)
            v[e.pivots[r]] = gf::neg(e.reduced(r, f), p);
        vecs.push_back(std::move(v));
    }
    return Subspace::span(vecs, n, p);
}

std::optional<Vec> solve(const Matrix& m, const Vec& b)
{
    if (b.size() != m.rows())
        throw UsageError("solve: rhs length does not match rows");
    auto x = solve_matrix(m, Matrix::column(b, m.prime()));
    if (!x)
        return std::nullopt;
    return x->col(0);
}

std::optional<Matrix> solve_matrix(const Matrix& m, const Matrix& b)
{
    if (b.rows() != m.rows() || b.prime() != m.prime())
        throw UsageError("solve_matrix: shape mismatch");
    const Scalar p = m.prime();
    const std::size_t n = m.cols(), k = b.cols();
    Matrix aug = hstack({m, b}, m.rows(), p);
    Echelon e = rref(aug);
    Matrix x(n, k, p);
    for (std::size_t r = 0; r < e.pivots.size(); ++r) {
        std::size_t c = e.pivots[r];
        if (c >= n)
            return std::nullopt;
        for (std::size_t j = 0; j < k; ++j)
            x(c, j) = e.reduced(r, n + j);
    }
    return x;
}

std::optional<Matrix> inverse(const Matrix& m)
{
    if (m.rows() != m.cols())
        return std::nullopt;
    if (rank(m) != m.rows())
        return std::nullopt;
    return solve_matrix(m, Matrix::identity(m.rows(), m.prime()));
}

Subspace::Subspace(std::size_t ambient, Scalar p) : ambient_(ambient), p_(p), basis_(0, ambient, p) {}

Subspace Subspace::span_rows(const Matrix& rows)
{
    Subspace s(rows.cols(), rows.prime());
    Echelon e = rref(rows);
    s.pivots_ = e.pivots;
    s.basis_ = e.reduced.block(0, 0, e.pivots.size(), rows.cols());
    return s;
}

Subspace Subspace::span(const std::vector<Vec>& vecs, std::size_t ambient, Scalar p)
{
    Matrix m(vecs.size(), ambient, p);
    for (std::size_t i = 0; i < vecs.size(); ++i) {
        if (vecs[i].size() != ambient)
            throw UsageError("Subspace::span: vector length mismatch");
        for (std::size_t j = 0; j < ambient; ++j)
            m(i, j) = vecs[i][j];
    }
    return span_rows(m);
}

Subspace Subspace::full(std::size_t ambient, Scalar p)
{
    return span_rows(Matrix::identity(ambient, p));
}

Vec Subspace::reduce(const Vec& v) const
{
    if (v.size() != ambient_)
        throw UsageError("Subspace::reduce: length mismatch");
    Vec r = v;
    for (std::size_t i = 0; i < pivots_.size(); ++i) {
        Scalar f = r[pivots_[i]];
        if (!f)
            continue;
        const Scalar* b = basis_.row_ptr(i);
        Scalar nf = p_ - f;
        for (std::size_t j = 0; j < ambient_; ++j)
            if (b[j])
                r[j] = static_cast<Scalar>((r[j] + static_cast<std::uint64_t>(nf) * b[j]) % p_);
    }
    return r;
}

bool Subspace::contains(const Vec& v) const { return stabcat::is_zero(reduce(v)); }

bool Subspace::contains(const Subspace& o) const
{
    for (std::size_t i = 0; i < o.dim(); ++i)
        if (!contains(o.vector(i)))
            return false;
    return true;
}

Vec Subspace::coordinates(const Vec& v) const
{
    if (!contains(v))
        throw Error("Subspace::coordinates: vector not in subspace");
    Vec c(pivots_.size());
    for (std::size_t i = 0; i < pivots_.size(); ++i)
        c[i] = v[pivots_[i]];
    return c;
}

Matrix Subspace::coordinates(const Matrix& columns) const
{
    Matrix out(dim(), columns.cols(), p_);
    for (std::size_t j = 0; j < columns.cols(); ++j)
        out.set_col(j, coordinates(columns.col(j)));
    return out;
}

Subspace Subspace::sum(const Subspace& o) const
{
    return span_rows(vstack({basis_, o.basis_}, ambient_, p_));
}

QuotientSpace quotient(std::size_t ambient_dim, const Subspace& s)
{
    if (s.ambient_dim() != ambient_dim)
        throw UsageError("quotient: ambient dimension mismatch");
    const Scalar p = s.prime();
    QuotientSpace q;
    q.ambient_dim = ambient_dim;
    q.kernel = s;
    std::vector<bool> is_pivot(ambient_dim, false);
    for (auto c : s.pivots())
        is_pivot[c] = true;
    for (std::size_t c = 0; c < ambient_dim; ++c)
        if (!is_pivot[c])
            q.free_coords.push_back(c);
    const std::size_t qd = q.free_coords.size();
    q.section = Matrix(ambient_dim, qd, p);
    for (std::size_t j = 0; j < qd; ++j)
        q.section(q.free_coords[j], j) = 1;
    // projection: reduce against the echelon basis, then read the free coordinates
    q.projection = Matrix(qd, ambient_dim, p);
    for (std::size_t c = 0; c < ambient_dim; ++c) {
        Vec e(ambient_dim, 0);
        e[c] = 1;
        Vec r = s.reduce(e);
        for (std::size_t j = 0; j < qd; ++j)
            q.projection(j, c) = r[q.free_coords[j]];
    }
    return q;
}

} // namespace stabcat
