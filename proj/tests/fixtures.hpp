#pragma once

#include "stabcat/algebra.hpp"

#include "gen.hpp"

#include <string>

namespace testfx {

inline std::string path(const std::string& rel) { return std::string(STABCAT_FIXTURE_DIR) + "/" + rel; }

inline stabcat::AlgebraPtr algebra(const std::string& name)
{
    return stabcat::load_algebra(path("algebras/" + name + ".json"));
}

} // namespace testfx

#include "stabcat/module.hpp"

namespace testfx {

inline stabcat::ModulePtr module(const std::string& name)
{
    return stabcat::load_module(path("modules/" + name + ".json"));
}

inline stabcat::ModulePtr bimodule(const std::string& name)
{
    return stabcat::load_module(path("bimodules/" + name + ".json"));
}

} // namespace testfx

namespace testfx {

inline stabcat::ModulePtr left_regular(const stabcat::AlgebraPtr& a)
{
    return stabcat::regular_module(a, stabcat::ground_field(a->prime()));
}

/// The trivial module of a group algebra; for truncated polynomial algebras (basis 1, x, x^2, ...)
/// the simple module where x acts by zero.
inline stabcat::ModulePtr trivial_module(const stabcat::AlgebraPtr& a)
{
    stabcat::Vec v(a->dim(), 1);
    if (a->basis_labels().size() > 1 && a->basis_labels()[1].front() == 'x') {
        v.assign(a->dim(), 0);
        v[0] = 1;
    }
    return stabcat::one_dimensional(a, stabcat::ground_field(a->prime()), v);
}

} // namespace testfx

namespace testfx {

// Random modules: submodules and quotients of small free modules generated by random vectors.
inline std::vector<stabcat::ModulePtr> random_modules(const stabcat::AlgebraPtr& a, int count)
{
    std::vector<stabcat::ModulePtr> out;
    const stabcat::Scalar p = a->prime();
    for (int t = 0; t < count; ++t) {
        stabcat::ModulePtr free = stabcat::direct_sum({left_regular(a), left_regular(a)});
        std::vector<stabcat::Vec> gens;
        std::size_t n = testgen::random_size(1, 2);
        for (std::size_t i = 0; i < n; ++i)
            gens.push_back(testgen::random_vec(free->dim(), p));
        stabcat::Subspace s = stabcat::generated_submodule(*free, gens);
        if (t % 2 == 0)
            out.push_back(stabcat::submodule(free, s).module);
        else
            out.push_back(stabcat::quotient_module(free, s).module);
    }
    return out;
}

} // namespace testfx
