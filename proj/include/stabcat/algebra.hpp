#pragma once

// Finite-dimensional algebras over GF(p) given by structure constants and a symmetrising form.

#include "stabcat/linalg.hpp"

#include <array>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace stabcat {

/// Raised for invalid user-supplied definitions; carries the violated invariant and a witness.
class ValidationError : public Error {
public:
    ValidationError(std::string kind, const std::string& what)
        : Error(kind + ": " + what), kind_(std::move(kind))
    {
    }
    const std::string& kind() const { return kind_; }

private:
    std::string kind_;
};

#define STABCAT_VALIDATION_ERROR(Name)                                                    \
    class Name : public ValidationError {                                                 \
    public:                                                                               \
        explicit Name(const std::string& what) : ValidationError(#Name, what) {}           \
    };

STABCAT_VALIDATION_ERROR(InvalidDefinition)
STABCAT_VALIDATION_ERROR(NonAssociative)
STABCAT_VALIDATION_ERROR(BadUnit)
STABCAT_VALIDATION_ERROR(FormNotSymmetric)
STABCAT_VALIDATION_ERROR(FormDegenerate)
STABCAT_VALIDATION_ERROR(CharMismatch)
STABCAT_VALIDATION_ERROR(NotAGroup)
STABCAT_VALIDATION_ERROR(BadRadical)
#undef STABCAT_VALIDATION_ERROR

struct StructureConstant {
    std::size_t i, j, k;
    long long c;
};

/// Raw definition data, as read from a file or built by a constructor.
struct AlgebraDef {
    std::string name;
    Scalar p = 2;
    std::size_t dim = 0;
    std::vector<std::string> basis;
    std::vector<long long> unit;
    std::vector<StructureConstant> mul;
    std::vector<long long> sform;
    std::optional<std::vector<std::vector<long long>>> radical;
};

class Algebra;
using AlgebraPtr = std::shared_ptr<const Algebra>;

class Algebra {
public:
    const std::string& name() const { return name_; }
    Scalar prime() const { return p_; }
    std::size_t dim() const { return dim_; }
    const std::vector<std::string>& basis_labels() const { return labels_; }
    const Vec& unit() const { return unit_; }
    const Vec& sform() const { return sform_; }

    /// Left multiplication by e_i, as a dim x dim matrix.
    const Matrix& left(std::size_t i) const { return left_[i]; }
    /// Right multiplication by e_i.
    const Matrix& right(std::size_t i) const { return right_[i]; }
    Matrix left_of(const Vec& a) const;
    Matrix right_of(const Vec& a) const;
    Vec multiply(const Vec& a, const Vec& b) const;
    Vec basis_vector(std::size_t i) const;
    Scalar form(const Vec& a) const { return dot(sform_, a, p_); }
    /// G_ij = s(e_i e_j).
    Matrix gram() const;
    const Matrix& gram_inverse() const;

    /// Jacobson radical (user-supplied and verified, or computed).
    const Subspace& radical() const;
    /// Complete set of primitive orthogonal idempotents summing to 1.
    const std::vector<Vec>& primitive_idempotents() const;
    /// A small set of elements generating the algebra (with 1).
    const std::vector<Vec>& generators() const;

    bool same_as(const Algebra& o) const;
    AlgebraDef definition() const;

    static AlgebraPtr make(std::string name, Scalar p, std::vector<std::string> labels, Vec unit,
                           std::vector<Matrix> left, Vec sform);

private:
    Algebra() = default;
    friend AlgebraPtr validate_algebra(const AlgebraDef& def);

    std::string name_;
    Scalar p_ = 2;
    std::size_t dim_ = 0;
    std::vector<std::string> labels_;
    Vec unit_, sform_;
    std::vector<Matrix> left_, right_;

    mutable std::once_flag gram_once_, rad_once_, idem_once_, gen_once_;
    mutable Matrix gram_inv_;
    mutable std::optional<Subspace> radical_;
    mutable std::vector<Vec> idempotents_, generators_;
    std::optional<Subspace> supplied_radical_;
};

inline bool same_algebra(const AlgebraPtr& a, const AlgebraPtr& b)
{
    return a == b || (a && b && a->same_as(*b));
}

/// Checks every invariant exhaustively and builds the algebra.
AlgebraPtr validate_algebra(const AlgebraDef& def);

/// Opposite algebra; memoized so repeated calls return the same object.
AlgebraPtr opposite(const AlgebraPtr& a);
/// A (x) C with basis e_i (x) f_j at index i * dim C + j; memoized.
AlgebraPtr tensor(const AlgebraPtr& a, const AlgebraPtr& c);
AlgebraPtr enveloping(const AlgebraPtr& a);
/// GF(p) as a one-dimensional algebra; memoized.
AlgebraPtr ground_field(Scalar p);

/// Trace-form radical refined by the extended-trace method; ignores any supplied radical.
Subspace compute_radical(const Algebra& a);
/// Throws BadRadical unless `r` is a nilpotent ideal with semisimple quotient.
void verify_radical(const Algebra& a, const Subspace& r);
/// The quotient algebra A / I for a two-sided ideal I (coordinates are the non-pivot ones).
AlgebraPtr quotient_algebra(const Algebra& a, const Subspace& ideal);

AlgebraPtr group_algebra(Scalar p, const std::vector<std::vector<std::size_t>>& table,
                         const std::string& name = "group");
AlgebraPtr truncated_poly(Scalar p, std::size_t n);
/// Multiplication table of the symmetric group on three letters.
std::vector<std::vector<std::size_t>> s3_table();
std::vector<std::vector<std::size_t>> cyclic_table(std::size_t n);

struct AlgebraMap {
    AlgebraPtr source, target;
    Matrix matrix; // dim(target) x dim(source)

    Vec apply(const Vec& a) const { return matrix * a; }
};

/// Throws InvalidDefinition unless the map is unital and multiplicative.
AlgebraMap make_algebra_map(AlgebraPtr source, AlgebraPtr target, Matrix m);

AlgebraDef algebra_def_from_json(const nlohmann::json& j);
nlohmann::json algebra_to_json(const Algebra& a);
AlgebraPtr load_algebra(const std::string& path);

} // namespace stabcat
