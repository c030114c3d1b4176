#pragma once

// Verification harness: fixtures, diagram checks with exact and up-to-scalar verdicts, and
// JSON reports.
//
// Most diagrams are squares between Tate-dual spaces. With bases zeta_i of the top-left corner
// and eta_j of the corner dual to the bottom-right one, a square with top map F and bottom map G
// commutes exactly when <F(zeta_i), eta_j> = <zeta_i, G(eta_j)> for all i, j.

#include "stabcat/transfer.hpp"

#include "json.hpp"

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace stabcat {

inline constexpr const char* engine_version = "0.1.0";

struct Fixture {
    std::string name;
    AlgebraPtr a, b;
    ModulePtr m;    // (A, B)-bimodule, projective on both sides
    ModulePtr v, w; // left B-modules, may be null
    int lo = -3, hi = 3;
};

/// Directory holding the shipped fixture registry.
std::string fixture_dir();
/// Names of the registered fixtures, sorted.
std::vector<std::string> fixture_names();
/// A registered name or a path to a fixture manifest. All components are validated and
/// re-homed onto the same algebra objects.
Fixture load_fixture(const std::string& name_or_path);

/// A module file re-homed onto `a`; throws InvalidDefinition when it acts through another algebra.
ModulePtr load_module_over(const std::string& path, const AlgebraPtr& a);

struct Verdict {
    bool exact = false;
    std::optional<Scalar> scalar; // lambda with left = lambda * right
};

/// Exact when equal; otherwise the unique invertible lambda with left = lambda * right, if any.
Verdict compare_matrices(const Matrix& left, const Matrix& right);

struct DegreeVerdict {
    int n = 0;
    std::vector<std::pair<std::string, std::size_t>> dims;
    bool exact = false;
    std::optional<Scalar> scalar;
    std::string note;

    bool pass(bool allow_scalar) const { return exact || (allow_scalar && scalar.has_value()); }
    bool flagged() const { return !exact && scalar.has_value(); }
};

struct DiagramReport {
    std::string diagram;
    std::string fixture;
    std::vector<DegreeVerdict> degrees;
    std::vector<DiagramReport> parts;
    double seconds = 0;

    bool pass(bool allow_scalar = false) const;
    /// Every degree verdict of this report and its parts, in order.
    std::vector<const DegreeVerdict*> all_verdicts() const;
    nlohmann::json to_json(bool allow_scalar = false) const;
};

/// Classes whose pairings against `bottom` are compared through a square.
using ClassMap = std::function<TateClass(const TateClass&)>;

/// <F(top_i), bottom_j> against <top_i, G(bottom_j)>.
DegreeVerdict check_pairing_square(int n, const std::vector<TateClass>& top, const std::vector<TateClass>& bottom,
                                   const ClassMap& f, const ClassMap& g);

/// The transfer square between HH of A and B, and its four constituent squares.
DiagramReport verify_hochschild_transfer(const Fixture& fx, int lo, int hi);
/// Both transfer squares between Ext over A and Ext over B for V, W among the fixture modules,
/// with the adjunction and counit squares they are built from.
DiagramReport verify_ext_transfer(const Fixture& fx, int lo, int hi);
/// Nondegeneracy, symmetry, Yoneda compatibility and shift compatibility of the pairing.
DiagramReport verify_duality_pair(const TowerPtr& tu, const TowerPtr& tv, int lo, int hi, const std::string& label);
/// The duality axioms for the fixture's module pairs and Hochschild cohomology of A and B.
DiagramReport verify_duality(const Fixture& fx, int lo, int hi);
/// Symmetrising-form squares, projective and stable adjunction squares, triangle identities,
/// unit/counit duality squares and the transfer factorizations.
DiagramReport verify_adjunction(const Fixture& fx, int lo, int hi);

struct NegativeProductOptions {
    std::size_t exhaustive_limit = 256; // check every nonzero class when p^dim is at most this
};

/// For U given: every nonzero class of hatExt^{n-1}(U, U) gets a witness eta of degree -n with a
/// nonzero product. For U null: products of Hochschild classes in pairs of negative degrees.
DiagramReport search_negative_products(const AlgebraPtr& a, const ModulePtr& u, int lo, int hi,
                                       const NegativeProductOptions& opt = {});

/// Dimension tables.
DiagramReport ext_dimensions(const ModulePtr& u, const ModulePtr& v, int lo, int hi);
DiagramReport hh_dimensions(const AlgebraPtr& a, int lo, int hi);

/// "a..b" with optional signs.
std::pair<int, int> parse_degree_window(const std::string& s);

} // namespace stabcat
