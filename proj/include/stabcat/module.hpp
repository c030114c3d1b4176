#pragma once

// Modules and bimodules as matrix representations.
//
// Every module carries a left algebra A and a right algebra C (either may be the
// ground field) and is a left module over the acting algebra A (x) C^op, whose basis
// element e_i (x) f_j sits at index i * dim C + j and acts by m -> e_i m f_j.

#include "stabcat/algebra.hpp"

#include <memory>
#include <string>
#include <vector>

namespace stabcat {

/// A (x) C^op, with the conventions: C = k gives A itself, A = k gives C^op.
AlgebraPtr acting_algebra(const AlgebraPtr& left, const AlgebraPtr& right);

class Module;
using ModulePtr = std::shared_ptr<const Module>;

class Module {
public:
    /// Builds a module without checking the module axioms (see validate_module).
    static ModulePtr make(AlgebraPtr left, AlgebraPtr right, std::vector<Matrix> action, std::string name = "");
    /// Left module over `a` (right algebra is the ground field).
    static ModulePtr left_module(AlgebraPtr a, std::vector<Matrix> action, std::string name = "");

    const AlgebraPtr& left_algebra() const { return left_; }
    const AlgebraPtr& right_algebra() const { return right_; }
    const AlgebraPtr& acting() const { return acting_; }
    Scalar prime() const { return acting_->prime(); }
    std::size_t dim() const { return dim_; }
    const std::string& name() const { return name_; }

    const Matrix& action(std::size_t i) const { return action_[i]; }
    const std::vector<Matrix>& actions() const { return action_; }
    /// Action of an element of the acting algebra.
    Matrix act(const Vec& x) const;
    /// m -> a m for a in the left algebra.
    const Matrix& left_action(std::size_t i) const { return left_marg_[i]; }
    Matrix left_action_of(const Vec& a) const;
    /// m -> m c for c in the right algebra.
    const Matrix& right_action(std::size_t j) const { return right_marg_[j]; }
    Matrix right_action_of(const Vec& c) const;

private:
    Module() = default;
    AlgebraPtr left_, right_, acting_;
    std::size_t dim_ = 0;
    std::string name_;
    std::vector<Matrix> action_, left_marg_, right_marg_;
};

/// Same left and right algebras (up to structural equality).
bool same_category(const Module& u, const Module& v);
void require_same_category(const Module& u, const Module& v, const char* what);

/// Throws InvalidDefinition unless the unit acts as the identity and the action is multiplicative.
void validate_module(const Module& m);
/// f intertwines the actions (checked on algebra generators, which is equivalent).
bool is_homomorphism(const Module& u, const Module& v, const Matrix& f);

ModulePtr zero_module(const AlgebraPtr& left, const AlgebraPtr& right);
/// The acting algebra as a left module over itself, carrying the given left/right algebras.
ModulePtr regular_module(const AlgebraPtr& left, const AlgebraPtr& right);
/// A as an (A, A)-bimodule.
ModulePtr regular_bimodule(const AlgebraPtr& a);
/// The ground field as a module on which every basis element e acts by `values[e]`.
ModulePtr one_dimensional(const AlgebraPtr& left, const AlgebraPtr& right, const Vec& values);
ModulePtr direct_sum(const std::vector<ModulePtr>& parts);

/// The k-dual: an (A, C)-module becomes a (C, A)-module with transposed actions.
ModulePtr dual_module(const ModulePtr& m);

/// Restriction of a bimodule along algebra maps on each side.
ModulePtr restrict_module(const ModulePtr& m, const AlgebraMap* left_map, const AlgebraMap* right_map);

struct Submodule {
    ModulePtr module;
    Matrix inclusion; // dim(parent) x dim(sub)
};

/// The submodule spanned by a subspace that is stable under the action (checked).
Submodule submodule(const ModulePtr& m, const Subspace& s);
/// Smallest submodule containing the given vectors.
Subspace generated_submodule(const Module& m, const std::vector<Vec>& vecs);

struct QuotientModule {
    ModulePtr module;
    Matrix projection; // dim(quot) x dim(parent)
    Matrix section;    // linear right inverse of the projection
};

QuotientModule quotient_module(const ModulePtr& m, const Subspace& s);

/// M (x)_B N realized as a quotient of M (x)_k N (pure tensor m (x) n at index m * dim N + n).
struct TensorProduct {
    ModulePtr left_factor, right_factor;
    ModulePtr module;
    Matrix projection; // dim(module) x (dim M * dim N)
    Matrix section;                       // unit vectors at free_coords
    std::vector<std::size_t> free_coords;

    /// Image of the pure tensor of two vectors.
    Vec pure(const Vec& m, const Vec& n) const;
};

/// M over (A, B) and N over (B, C); the result is over (A, C).
TensorProduct tensor_over(const ModulePtr& m, const ModulePtr& n);
/// Memoized tensor_over keyed on the two module objects, so repeated products are the same object.
std::shared_ptr<const TensorProduct> tensor_shared(const ModulePtr& m, const ModulePtr& n);
/// f (x) g between tensor products built by tensor_over.
Matrix tensor_maps(const TensorProduct& source, const TensorProduct& target, const Matrix& f, const Matrix& g);

ModulePtr module_from_json(const nlohmann::json& j, const std::string& base_dir);
ModulePtr load_module(const std::string& path);
nlohmann::json module_to_json(const Module& m);

} // namespace stabcat
