#pragma once

// Hom spaces, the projectively-factoring subspace and stable Hom.

#include "stabcat/cover.hpp"

#include <optional>
#include <utility>

namespace stabcat {

/// Hom(U, V) as a subspace of flattened dim V x dim U matrices (row-major).
struct HomSpace {
    ModulePtr source, target;
    Subspace space;

    std::size_t dim() const { return space.dim(); }
    Matrix basis(std::size_t i) const;
    /// Coordinates of a homomorphism in the echelon basis; throws if f is not in the space.
    Vec coordinates(const Matrix& f) const;
    Matrix element(const Vec& coords) const;
};

HomSpace hom_space(const ModulePtr& u, const ModulePtr& v);

/// Flattened span of the maps u -> tau(u) v with tau in Hom(U, Lambda) and v in V.
Subspace pr_subspace(const ModulePtr& u, const ModulePtr& v);

struct StableHomSpace {
    HomSpace hom;
    Subspace pr;        // inside hom coordinates
    QuotientSpace quotient;

    std::size_t dim() const { return quotient.dim(); }
    /// Stable class of a homomorphism.
    Vec classify(const Matrix& f) const;
    /// A homomorphism representing the given stable coordinates.
    Matrix representative(const Vec& coords) const;
    bool is_stably_zero(const Matrix& f) const { return is_zero(classify(f)); }
};

StableHomSpace stable_hom(const ModulePtr& u, const ModulePtr& v);
/// Cached stable_hom keyed on the two module objects.
std::shared_ptr<const StableHomSpace> stable_hom_shared(const ModulePtr& u, const ModulePtr& v);

/// Projective modules and their maps: checks that f factors through a projective.
bool factors_through_projective(const ModulePtr& u, const ModulePtr& v, const Matrix& f);

struct StableIso {
    Matrix forward;  // U -> V
    Matrix backward; // V -> U
};

/// Bounded search for mutually inverse stable classes; nullopt means none found.
std::optional<StableIso> stable_iso(const ModulePtr& u, const ModulePtr& v);

} // namespace stabcat
