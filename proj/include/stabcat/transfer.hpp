#pragma once

// Transfer maps on Tate cohomology along a bimodule M over (A, B), projective on both sides.
//
// Classes of degree n are stable maps out of level n of a tower. Functors L (x) - (x) R preserve
// the connecting sequences, so L (x) Omega^n(X) (x) R serves as Omega^n(L (x) X (x) R); classes
// built this way are moved onto the canonical tower of the target module by comparison lifts.

#include "stabcat/adjunction.hpp"
#include "stabcat/tate.hpp"

namespace stabcat {

/// Levels L (x) inner.level(n) (x) R; either factor may be null.
class TensoredTower : public Tower {
public:
    TensoredTower(TowerPtr inner, ModulePtr left, ModulePtr right);
    ModulePtr level(int n) const override;
    const ShortExact& step(int n) const override;

private:
    TowerPtr inner_;
    ModulePtr left_, right_;
    mutable std::recursive_mutex mu_;
    mutable std::map<int, ShortExact> steps_;
};

/// Cover kind used by shared_tower in the current thread (minimal unless overridden).
CoverKind current_cover_kind();

/// Switches shared_tower to another cover kind for the lifetime of the object.
class ScopedCoverKind {
public:
    explicit ScopedCoverKind(CoverKind kind);
    ~ScopedCoverKind();
    ScopedCoverKind(const ScopedCoverKind&) = delete;
    ScopedCoverKind& operator=(const ScopedCoverKind&) = delete;

private:
    CoverKind saved_;
};

/// The tower of a module built with the current cover kind; one tower per module object and kind.
TowerPtr shared_tower(const ModulePtr& x);
/// Memoized TensoredTower.
TowerPtr tensor_tower(const TowerPtr& inner, const ModulePtr& left, const ModulePtr& right);

/// z o Omega^n(h) for h: new_source->base() -> z.source_module().
TateClass precompose(const TateClass& z, const TowerPtr& new_source, const Matrix& h);
/// g o z for g: z.target_module() -> new_target->base().
TateClass postcompose(const TateClass& z, const TowerPtr& new_target, const Matrix& g);

/// M (x) -: hatExt^n_B(V, W) -> hatExt^n_A(M (x) V, M (x) W), on the shared towers.
TateClass tensor_class(const AdjunctionPack& pack, const TateClass& z);

/// tr_M: hatHH^n(B) -> hatHH^n(A), composed from the counit eta_Mv, the two adjunctions and eta_M.
TateClass transfer_hh(const AdjunctionPack& pack, const TateClass& zeta);
/// tr_M by its defining formula eta_M o (Id (x) zeta (x) Id) o eps_Mv.
TateClass transfer_hh_direct(const AdjunctionPack& pack, const TateClass& zeta);

/// tr_Mv(V, W): hatExt^n_A(M (x) V, M (x) W) -> hatExt^n_B(V, W), by its defining formula
/// eta_Mv o (Id (x) eta) o eps_M.
TateClass transfer_ext(const AdjunctionPack& pack, const TateClass& eta, const ModulePtr& v, const ModulePtr& w);
/// Through hatExt^n_B(V, M^v (x) M (x) W) and composition with eta_Mv (x) W.
TateClass transfer_ext_via_target(const AdjunctionPack& pack, const TateClass& eta, const ModulePtr& v,
                                  const ModulePtr& w);
/// Through hatExt^n_B(M^v (x) M (x) V, W) and precomposition with eps_M (x) V.
TateClass transfer_ext_via_source(const AdjunctionPack& pack, const TateClass& eta, const ModulePtr& v,
                                  const ModulePtr& w);

/// Stable adjunction hatExt^n_A(M (x) V, U) -> hatExt^n_B(V, M^v (x) U).
TateClass tensor_adjunct_class(const AdjunctionPack& pack, const TateClass& z, const ModulePtr& v);
/// Stable adjunction hatExt^n_B(M^v (x) U, V) -> hatExt^n_A(U, M (x) V).
TateClass dual_tensor_adjunct_class(const AdjunctionPack& pack, const TateClass& z, const ModulePtr& u);

/// Stable adjunction hatExt^n(X (x)_A M, Y) -> hatExt^n(X, Y (x)_B M^v); h identifies
/// X (x)_A M with the source module of z.
TateClass right_tensor_adjunct_class(const AdjunctionPack& pack, const TateClass& z, const ModulePtr& x,
                                     const Matrix& h);

/// Composition with eta_Mv (x) W: hatExt^n(X, M^v (x) M (x) W) -> hatExt^n(X, W).
TateClass apply_counit_target(const AdjunctionPack& pack, const TateClass& z, const ModulePtr& w);
/// Precomposition with eta_Mv (x) W: hatExt^n(W, X) -> hatExt^n(M^v (x) M (x) W, X).
TateClass apply_counit_source(const AdjunctionPack& pack, const TateClass& z, const ModulePtr& w);

/// eps_M (x) V as a map V -> M^v (x) (M (x) V).
Matrix unit_on(const AdjunctionPack& pack, const ModulePtr& v);
/// eta_Mv (x) W as a map M^v (x) (M (x) W) -> W.
Matrix counit_on(const AdjunctionPack& pack, const ModulePtr& w);

} // namespace stabcat
