#pragma once

// Tate Ext, the Tate duality map, its pairing and Yoneda products.
//
// A class of degree n from U to V is a stable map Omega^n(U) -> V, with Omega^n(U) taken
// from a fixed tower of U (negative n meaning cosyzygies).

#include "stabcat/hom.hpp"
#include "stabcat/tower.hpp"

#include <map>

namespace stabcat {

class DegeneratePairing : public Error {
public:
    using Error::Error;
};

class DegreeMismatch : public UsageError {
public:
    using UsageError::UsageError;
};

struct TateClass {
    TowerPtr source; // tower of U
    TowerPtr target; // tower of V (only level 0 and its shifts are used)
    int degree = 0;
    Matrix rep; // source->level(degree) -> target->base()

    ModulePtr source_module() const { return source->base(); }
    ModulePtr target_module() const { return target->base(); }
};

/// Stable Hom(Omega^n U, V).
StableHomSpace hat_ext(const Tower& tu, const ModulePtr& v, int n);
StableHomSpace hat_ext(const ModulePtr& u, const ModulePtr& v, int n);

/// Basis classes of hatExt^n(U, V), one per stable coordinate.
std::vector<TateClass> hat_ext_basis(const TowerPtr& tu, const TowerPtr& tv, int n);
TateClass make_class(const TowerPtr& tu, const TowerPtr& tv, int n, const Matrix& rep);
TateClass zero_class(const TowerPtr& tu, const TowerPtr& tv, int n);
TateClass identity_class(const TowerPtr& t);
/// Stable coordinates of a class in its own hatExt space.
Vec class_coordinates(const TateClass& z);
bool same_class(const TateClass& a, const TateClass& b);
TateClass add_classes(const TateClass& a, const TateClass& b);
TateClass scale_class(const TateClass& a, Scalar c);

/// The form <beta, phi> = sum_k s(alpha_k(beta(phi(q_k)))) on Hom(V, P) x Hom(P, V), written as
/// tr(Psi beta phi) for the frame-dependent matrix Psi returned here (dim P x dim P).
Matrix projective_trace_form(const ProjectiveFrame& frame);
/// beta-hat evaluated on phi.
Scalar vp_dual(const ProjectiveFrame& frame, const Matrix& beta, const Matrix& phi);

/// For a step 0 -> Omega(U) -> P -> U -> 0 the functional T(beta)(f) equals tr(K beta f)
/// with K = proj Psi incl (dim U x dim Omega(U)).
Matrix duality_kernel(const ShortExact& step);

struct DualityMap {
    StableHomSpace source; // stable Hom(V, Omega U)
    StableHomSpace target; // stable Hom(U, V)
    Matrix matrix;         // (i, j) = T(beta_i)(f_j) on stable basis representatives
    Matrix kernel;         // K of the defining step

    /// T(beta) as a functional in stable target coordinates.
    Vec apply(const Matrix& beta) const;
};

/// Built from the step 0 -> Omega(U) -> P -> U -> 0. Checks well-definedness and invertibility.
DualityMap tate_duality(const ShortExact& step, const ModulePtr& v);
DualityMap tate_duality(const Tower& tu, const ModulePtr& v);

/// Omega^s applied to a class; the result lives on the offset towers of both modules.
TateClass shift_class(const TateClass& z, int s);
/// zeta of degree m from V to U, eta of degree n from W to V; the product has degree m + n.
TateClass yoneda(const TateClass& zeta, const TateClass& eta);
/// zeta in hatExt^{n-1}(V, U), eta in hatExt^{-n}(U, V).
Scalar pairing(const TateClass& zeta, const TateClass& eta);
/// Rows: basis of hatExt^{n-1}(V, U); columns: basis of hatExt^{-n}(U, V).
Matrix pairing_matrix(const TowerPtr& tu, const TowerPtr& tv, int n);

/// Moves a class onto other towers with the same base modules.
TateClass transport(const TateClass& z, const TowerPtr& source, const TowerPtr& target);

using GradedDimTable = std::map<int, std::size_t>;
GradedDimTable graded_dims(const TowerPtr& tu, const ModulePtr& v, int lo, int hi);

} // namespace stabcat
