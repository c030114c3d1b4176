#pragma once

// Dense exact linear algebra over prime fields GF(p).

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace stabcat {

using Scalar = std::uint32_t;
using Vec = std::vector<Scalar>;

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Thrown on shape or characteristic mismatches (caller bugs).
class UsageError : public Error {
public:
    using Error::Error;
};

namespace gf {

inline Scalar add(Scalar a, Scalar b, Scalar p) { Scalar s = a + b; return s >= p ? s - p : s; }
inline Scalar sub(Scalar a, Scalar b, Scalar p) { return a >= b ? a - b : a + p - b; }
inline Scalar mul(Scalar a, Scalar b, Scalar p)
{
    return static_cast<Scalar>((static_cast<std::uint64_t>(a) * b) % p);
}
inline Scalar neg(Scalar a, Scalar p) { return a == 0 ? 0 : p - a; }
Scalar inv(Scalar a, Scalar p);
Scalar reduce(long long v, Scalar p);
bool is_prime(Scalar p);

} // namespace gf

class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, Scalar p);

    static Matrix identity(std::size_t n, Scalar p);
    static Matrix from_rows(const std::vector<std::vector<long long>>& rows, Scalar p);
    static Matrix column(const Vec& v, Scalar p);
    static Matrix row(const Vec& v, Scalar p);
    /// Columns given as vectors of equal length `rows`.
    static Matrix from_columns(const std::vector<Vec>& cols, std::size_t rows, Scalar p);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Scalar prime() const { return p_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    Scalar operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Scalar* row_ptr(std::size_t r) const { return data_.data() + r * cols_; }
    Scalar* row_ptr(std::size_t r) { return data_.data() + r * cols_; }
    const std::vector<Scalar>& data() const { return data_; }

    Vec col(std::size_t c) const;
    Vec row_vec(std::size_t r) const;
    void set_col(std::size_t c, const Vec& v);

    Matrix transpose() const;
    Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
    void set_block(std::size_t r0, std::size_t c0, const Matrix& b);
    bool is_zero() const;
    /// Row-major flattening.
    Vec flatten() const { return data_; }
    static Matrix unflatten(const Vec& v, std::size_t rows, std::size_t cols, Scalar p);

    Matrix operator*(const Matrix& o) const;
    Vec operator*(const Vec& v) const;
    Matrix operator+(const Matrix& o) const;
    Matrix operator-(const Matrix& o) const;
    Matrix scaled(Scalar s) const;
    Matrix& operator+=(const Matrix& o);
    /// this += s * o
    void axpy(Scalar s, const Matrix& o);

    bool operator==(const Matrix& o) const
    {
        return rows_ == o.rows_ && cols_ == o.cols_ && p_ == o.p_ && data_ == o.data_;
    }
    bool operator!=(const Matrix& o) const { return !(*this == o); }

    std::string str() const;

private:
    std::size_t rows_ = 0, cols_ = 0;
    Scalar p_ = 2;
    std::vector<Scalar> data_;
};

Matrix kron(const Matrix& a, const Matrix& b);
Matrix hstack(const std::vector<Matrix>& blocks, std::size_t rows, Scalar p);
Matrix vstack(const std::vector<Matrix>& blocks, std::size_t cols, Scalar p);
Matrix direct_sum(const std::vector<Matrix>& blocks, Scalar p);

Vec vec_add(const Vec& a, const Vec& b, Scalar p);
Vec vec_sub(const Vec& a, const Vec& b, Scalar p);
Vec vec_scale(const Vec& a, Scalar s, Scalar p);
Scalar dot(const Vec& a, const Vec& b, Scalar p);
bool is_zero(const Vec& v);

struct Echelon {
    Matrix reduced;
    std::vector<std::size_t> pivots;
};

/// Reduced row-echelon form with deterministic left-to-right pivoting.
Echelon rref(const Matrix& m);
std::size_t rank(const Matrix& m);

class Subspace;

/// Basis of {v : m v = 0}.
Subspace kernel_basis(const Matrix& m);
/// Some x with m x = b, or nullopt if the system is inconsistent.
std::optional<Vec> solve(const Matrix& m, const Vec& b);
/// Some X with m X = b (column-wise), or nullopt.
std::optional<Matrix> solve_matrix(const Matrix& m, const Matrix& b);
std::optional<Matrix> inverse(const Matrix& m);

/// Subspace of k^n stored as a canonical reduced echelon basis (one row per basis vector).
class Subspace {
public:
    Subspace() = default;
    Subspace(std::size_t ambient, Scalar p);
    /// Span of the given rows.
    static Subspace span_rows(const Matrix& rows);
    static Subspace span(const std::vector<Vec>& vecs, std::size_t ambient, Scalar p);
    static Subspace column_space(const Matrix& m) { return span_rows(m.transpose()); }
    static Subspace full(std::size_t ambient, Scalar p);

    std::size_t ambient_dim() const { return ambient_; }
    std::size_t dim() const { return pivots_.size(); }
    Scalar prime() const { return p_; }
    const Matrix& basis() const { return basis_; }
    Vec vector(std::size_t i) const { return basis_.row_vec(i); }
    const std::vector<std::size_t>& pivots() const { return pivots_; }
    /// Basis vectors as columns (ambient x dim).
    Matrix basis_columns() const { return basis_.transpose(); }

    /// Remove the components along the pivot coordinates; zero iff v is in the subspace.
    Vec reduce(const Vec& v) const;
    bool contains(const Vec& v) const;
    bool contains(const Subspace& o) const;
    /// Coordinates in the echelon basis; throws if v is not in the subspace.
    Vec coordinates(const Vec& v) const;
    /// Coordinates of each column of m (dim x m.cols()).
    Matrix coordinates(const Matrix& columns) const;
    Subspace sum(const Subspace& o) const;

    bool operator==(const Subspace& o) const
    {
        return ambient_ == o.ambient_ && p_ == o.p_ && basis_ == o.basis_;
    }

private:
    std::size_t ambient_ = 0;
    Scalar p_ = 2;
    Matrix basis_;
    std::vector<std::size_t> pivots_;
};

/// ambient / kernel, coordinates indexed by the non-pivot coordinates of the kernel.
struct QuotientSpace {
    std::size_t ambient_dim = 0;
    Subspace kernel;
    Matrix projection; // quotient_dim x ambient_dim
    Matrix section;    // ambient_dim x quotient_dim
    std::vector<std::size_t> free_coords;

    std::size_t dim() const { return free_coords.size(); }
    Vec project(const Vec& v) const { return projection * v; }
};

QuotientSpace quotient(std::size_t ambient_dim, const Subspace& s);

} // namespace stabcat
