#pragma once

// Projective covers, syzygies, cosyzygies and comparison lifts.

#include "stabcat/module.hpp"

namespace stabcat {

class NotProjective : public Error {
public:
    using Error::Error;
};

class LiftFailed : public Error {
public:
    using Error::Error;
};

/// A projective module Q together with an isomorphism from a sum of summands Lambda e_k
/// (Lambda the acting algebra, e_k idempotents), pinned down by generators q_k = image of e_k.
struct ProjectiveFrame {
    ModulePtr module;
    std::vector<Vec> idempotents;       // e_k, elements of the acting algebra
    std::vector<Vec> gens;              // q_k in Q with e_k q_k = q_k
    std::vector<Matrix> summand_basis;  // columns spanning Lambda e_k inside Lambda
    std::vector<std::size_t> offsets;   // summand k occupies [offsets[k], offsets[k] + size)
    Matrix to_module;                   // summand coordinates -> Q
    Matrix from_module;                 // inverse of to_module

    std::size_t rank() const { return gens.size(); }
    std::size_t summand_dim(std::size_t k) const { return summand_basis[k].cols(); }
    /// The homomorphism Q -> V sending q_k to images[k]; images[k] must lie in e_k V.
    Matrix map_to(const Module& v, const std::vector<Vec>& images) const;
    /// Summand coordinates of the map from summand k, for a single generator image y.
    Matrix summand_map(const Module& v, std::size_t k, const Vec& y) const;
};

enum class CoverKind { Minimal, Free };

struct Cover {
    ModulePtr target;
    ProjectiveFrame frame;   // the projective module P
    std::vector<Vec> images; // images of the generators of P in the target
    Matrix projection;       // P -> target
    Matrix section;          // linear right inverse of the projection
    Submodule kernel;        // Omega(target) inside P
};

/// Minimal covers use primitive idempotents and a top basis; free covers use free summands
/// for a generating set plus one extra free summand mapped to zero.
Cover projective_cover(const ModulePtr& u, CoverKind kind = CoverKind::Minimal);
/// Cached minimal cover (keyed on the module object).
std::shared_ptr<const Cover> minimal_cover(const ModulePtr& u);
/// Frame of a module known to be projective; throws NotProjective otherwise.
ProjectiveFrame frame_of_projective(const ModulePtr& q);
/// Rad(U) = rad(Lambda) U.
Subspace radical_of_module(const Module& u);

/// 0 -> sub -> mid -> quot -> 0 with mid projective.
struct ShortExact {
    ModulePtr sub, mid, quot;
    Matrix incl, proj;
    Matrix incl_left_inverse; // linear, incl_left_inverse * incl = id
    Matrix proj_section;      // linear, proj * proj_section = id
    ProjectiveFrame frame;    // of mid
};

ShortExact make_short_exact(ModulePtr sub, ModulePtr mid, ModulePtr quot, Matrix incl, Matrix proj,
                            ProjectiveFrame frame);
/// 0 -> Omega(U) -> P -> U -> 0.
ShortExact syzygy_step(const ModulePtr& u, CoverKind kind = CoverKind::Minimal);
/// 0 -> U -> I -> Sigma(U) -> 0, built by dualizing a cover of the dual.
ShortExact cosyzygy_step(const ModulePtr& u, CoverKind kind = CoverKind::Minimal);

struct Presentation {
    Cover first;   // P0 -> U
    Cover second;  // P1 -> Omega(U)
    Matrix delta;  // P1 -> P0
};

Presentation presentation(const ModulePtr& u, CoverKind kind = CoverKind::Minimal);

struct DownLift {
    Matrix mid; // x.mid -> y.mid
    Matrix sub; // x.sub -> y.sub
};

/// Given f: x.quot -> y.quot, a map of sequences; `sub` is the induced map on kernels.
DownLift lift_down(const ShortExact& x, const ShortExact& y, const Matrix& f);
/// Given g: x.sub -> y.sub, extends through the (injective) middle terms and returns the
/// induced map x.quot -> y.quot.
Matrix lift_up(const ShortExact& x, const ShortExact& y, const Matrix& g);

} // namespace stabcat
