#pragma once

// Adjunctions attached to a bimodule M over (A, B) that is finitely generated projective on
// both sides, with M^v = Hom_k(M, k) over (B, A).
//
// Units and counits (s, t the symmetrizing forms of A and B):
//   eps_M    : B -> M^v (x)_A M,  1 -> sum (s o alpha_i) (x) m_i
//   eta_M    : M (x)_B M^v -> A,  m (x) (s o alpha) -> alpha(m)
//   eps_Mv   : A -> M (x)_B M^v,  1 -> sum m_j (x) (t o beta_j)
//   eta_Mv   : M^v (x)_A M -> B,  (t o beta) (x) m -> beta(m)

#include "stabcat/cover.hpp"
#include "stabcat/hom.hpp"

#include <array>

namespace stabcat {

/// Family (alpha_i, m_i), alpha_i in Hom_A(M, A), with sum alpha_i(m) m_i = m.
struct LeftDualBasis {
    std::vector<Matrix> forms;  // alpha_i as dim A x dim M
    std::vector<Vec> elements;  // m_i
};

/// Family (m_j, beta_j), beta_j in Hom_{B^op}(M, B), with sum m_j beta_j(m) = m.
struct RightDualBasis {
    std::vector<Vec> elements;  // m_j
    std::vector<Matrix> forms;  // beta_j as dim B x dim M
};

/// Throws NotProjective when M is not projective as a left A-module.
LeftDualBasis dual_basis_left(const ModulePtr& m);
/// Throws NotProjective when M is not projective as a right B-module.
RightDualBasis dual_basis_right(const ModulePtr& m);
bool is_left_dual_basis(const Module& m, const LeftDualBasis& d);
bool is_right_dual_basis(const Module& m, const RightDualBasis& d);

/// A as an (A, A)-bimodule, one object per algebra.
ModulePtr shared_regular_bimodule(const AlgebraPtr& a);

/// A (x)_A X -> X and its inverse, A the left algebra of X.
Matrix left_unitor(const ModulePtr& x);
Matrix left_unitor_inverse(const ModulePtr& x);
/// X (x)_C C -> X and its inverse, C the right algebra of X.
Matrix right_unitor(const ModulePtr& x);
Matrix right_unitor_inverse(const ModulePtr& x);
/// (X (x) Y) (x) Z -> X (x) (Y (x) Z), all products from tensor_shared.
Matrix associator(const ModulePtr& x, const ModulePtr& y, const ModulePtr& z);
Matrix associator_inverse(const ModulePtr& x, const ModulePtr& y, const ModulePtr& z);

/// N^v (x)_B M^v -> (M (x)_B N)^v for M over (A, B) and N over (B, C):
/// (t o beta) (x) mu -> (m (x) n -> mu(m beta(n))).
Matrix dual_tensor_iso(const ModulePtr& m, const ModulePtr& n);
/// The bimodule map A -> A^v, a -> a s.
Matrix form_map(const AlgebraPtr& a);

struct AdjunctionPack {
    ModulePtr m, mv;       // M over (A, B), M^v over (B, A)
    ModulePtr reg_a, reg_b;
    LeftDualBasis left;
    RightDualBasis right;
    std::shared_ptr<const TensorProduct> mv_m; // M^v (x)_A M over (B, B)
    std::shared_ptr<const TensorProduct> m_mv; // M (x)_B M^v over (A, A)
    Matrix eps_m, eta_m, eps_mv, eta_mv;

    AlgebraPtr algebra_a() const { return m->left_algebra(); }
    AlgebraPtr algebra_b() const { return m->right_algebra(); }
};

using AdjunctionPtr = std::shared_ptr<const AdjunctionPack>;

/// Builds the four structure maps from the given (or computed) dual bases and verifies that they
/// are bimodule maps satisfying the triangle identities and both duality squares.
AdjunctionPtr build_adjunction(const ModulePtr& m, const LeftDualBasis* left = nullptr,
                               const RightDualBasis* right = nullptr);
/// The pack of M^v, with (M^v)^v taken to be the original M object.
AdjunctionPtr dual_adjunction(const AdjunctionPack& pack);

/// The four triangle composites; each should be the identity (of M, M^v, M^v, M).
std::array<Matrix, 4> triangle_composites(const AdjunctionPack& pack);
/// Two routes A -> (M (x)_B M^v)^v: dual-tensor iso after eps_Mv, and (eta_M)^v after a -> a s.
std::pair<Matrix, Matrix> unit_duality_square(const AdjunctionPack& pack);
/// Two routes M^v (x)_A M -> B^v: b -> b t after eta_Mv, and (eps_M)^v after the dual-tensor iso.
std::pair<Matrix, Matrix> counit_duality_square(const AdjunctionPack& pack);

// Adjunct maps. V is over (B, C), U over (A, C); X over (C, A), Y over (C, B).

/// Hom_A(M (x) V, U) -> Hom_B(V, M^v (x) U).
Matrix tensor_adjunct(const AdjunctionPack& pack, const ModulePtr& v, const ModulePtr& u, const Matrix& phi);
/// Hom_B(V, M^v (x) U) -> Hom_A(M (x) V, U).
Matrix tensor_adjunct_inverse(const AdjunctionPack& pack, const ModulePtr& v, const ModulePtr& u,
                              const Matrix& psi);
/// Hom_B(M^v (x) U, V) -> Hom_A(U, M (x) V).
Matrix dual_tensor_adjunct(const AdjunctionPack& pack, const ModulePtr& u, const ModulePtr& v,
                           const Matrix& psi);
/// Hom_A(U, M (x) V) -> Hom_B(M^v (x) U, V).
Matrix dual_tensor_adjunct_inverse(const AdjunctionPack& pack, const ModulePtr& u, const ModulePtr& v,
                                   const Matrix& phi);
/// Hom(X (x)_A M, Y) -> Hom(X, Y (x)_B M^v).
Matrix right_tensor_adjunct(const AdjunctionPack& pack, const ModulePtr& x, const ModulePtr& y,
                            const Matrix& phi);

/// An adjunction isomorphism written in Hom-space coordinates.
struct AdjunctionIso {
    HomSpace source, target;
    Matrix matrix; // target coords x source coords
};

/// Hom_A(M (x) V, U) -> Hom_B(V, M^v (x) U); throws if the induced matrix is not invertible.
AdjunctionIso adjunction_iso(const AdjunctionPack& pack, const ModulePtr& v, const ModulePtr& u);

/// Hom_k(U, k) -> Hom_A(U, A^v), gamma -> (u -> (a -> gamma(a u))).
Matrix functional_to_dual_map(const Module& u, const Vec& gamma);
/// Hom_A(A^v, U) -> U, phi -> phi(s).
Vec evaluate_at_form(const AlgebraPtr& a, const Matrix& phi);
/// A^v as a left A-module (the dual of A as a right module).
ModulePtr dual_regular_left(const AlgebraPtr& a);

} // namespace stabcat
