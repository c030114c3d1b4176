#pragma once

// Brute-force reference computations used only by tests.

#include "stabcat/cover.hpp"
#include "stabcat/hom.hpp"

#include "json.hpp"

#include <fstream>

namespace oracle {

/// Hom(U, V) by solving f act_U(e_i) = act_V(e_i) f for every basis element directly.
inline stabcat::Subspace naive_hom(const stabcat::Module& u, const stabcat::Module& v)
{
    using namespace stabcat;
    const Scalar p = u.prime();
    const std::size_t du = u.dim(), dv = v.dim();
    std::vector<Matrix> blocks;
    // vec(f A) = (I (x) A^T) vec(f) and vec(B f) = (B (x) I) vec(f) for row-major flattening
    for (std::size_t i = 0; i < u.acting()->dim(); ++i)
        blocks.push_back(kron(Matrix::identity(dv, p), u.action(i).transpose()) -
                         kron(v.action(i), Matrix::identity(du, p)));
    return kernel_basis(vstack(blocks, dv * du, p));
}

/// Projectively-factoring maps as Hom(U, P_V) composed with the cover of V.
inline stabcat::Subspace pr_via_cover(const stabcat::ModulePtr& u, const stabcat::ModulePtr& v)
{
    using namespace stabcat;
    Cover c = projective_cover(v);
    Subspace h = naive_hom(*u, *c.frame.module);
    std::vector<Vec> flat;
    for (std::size_t t = 0; t < h.dim(); ++t) {
        Matrix f = Matrix::unflatten(h.vector(t), c.frame.module->dim(), u->dim(), u->prime());
        flat.push_back((c.projection * f).flatten());
    }
    return Subspace::span(flat, u->dim() * v->dim(), u->prime());
}

/// Structure constants read straight from an algebra file: mul[i][j] = e_i e_j.
struct Table {
    stabcat::Scalar p = 2;
    std::size_t dim = 0;
    std::vector<std::vector<stabcat::Vec>> mul;

    stabcat::Vec times(const stabcat::Vec& u, const stabcat::Vec& v) const
    {
        stabcat::Vec out(dim, 0);
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = 0; j < dim; ++j) {
                const stabcat::Scalar c = stabcat::gf::mul(u[i], v[j], p);
                if (c)
                    for (std::size_t k = 0; k < dim; ++k)
                        out[k] = stabcat::gf::add(out[k], stabcat::gf::mul(c, mul[i][j][k], p), p);
            }
        return out;
    }
};

inline Table read_table(const std::string& path)
{
    std::ifstream in(path);
    nlohmann::json j;
    in >> j;
    Table t;
    t.p = j["char"].get<stabcat::Scalar>();
    t.dim = j["dim"].get<std::size_t>();
    t.mul.assign(t.dim, std::vector<stabcat::Vec>(t.dim, stabcat::Vec(t.dim, 0)));
    for (const auto& e : j["mul"])
        t.mul[e[0].get<std::size_t>()][e[1].get<std::size_t>()][e[2].get<std::size_t>()] = e[3].get<stabcat::Scalar>();
    return t;
}

inline stabcat::Vec unit_vec(std::size_t n, std::size_t i)
{
    stabcat::Vec v(n, 0);
    v[i] = 1;
    return v;
}

/// A complete resolution ... -> P --d--> P --d--> P -> ... that repeats in every degree, so the
/// Tate group is the homology of Hom(P, V) under composition with d in every degree.
struct PeriodicResolution {
    stabcat::ModulePtr p;
    stabcat::Matrix d;
};

/// k[x]/(x^2): 0 -> A --(.x)--> A -> ... resolving the trivial module. Basis index 1 is x.
inline PeriodicResolution dual_numbers_resolution(const stabcat::AlgebraPtr& a, const Table& t)
{
    using namespace stabcat;
    std::vector<Matrix> acts;
    for (std::size_t i = 0; i < t.dim; ++i) {
        Matrix m(t.dim, t.dim, t.p);
        for (std::size_t j = 0; j < t.dim; ++j)
            m.set_col(j, t.mul[i][j]);
        acts.push_back(m);
    }
    Matrix d(t.dim, t.dim, t.p);
    for (std::size_t j = 0; j < t.dim; ++j)
        d.set_col(j, t.times(unit_vec(t.dim, j), unit_vec(t.dim, 1)));
    return {Module::left_module(a, acts), d};
}

/// The enveloping-algebra module A (x)_k A with basis e_i (x) e_j at i * dim + j, acted on by
/// e_a (x) e_c as u (x) v -> e_a u (x) v e_c.
inline stabcat::ModulePtr free_bimodule(const stabcat::AlgebraPtr& a, const Table& t)
{
    using namespace stabcat;
    const std::size_t n = t.dim;
    std::vector<Matrix> acts;
    for (std::size_t ea = 0; ea < n; ++ea)
        for (std::size_t ec = 0; ec < n; ++ec) {
            Matrix m(n * n, n * n, t.p);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) {
                    Vec l = t.mul[ea][i], r = t.mul[j][ec];
                    for (std::size_t k = 0; k < n; ++k)
                        for (std::size_t h = 0; h < n; ++h)
                            m(k * n + h, i * n + j) = gf::mul(l[k], r[h], t.p);
                }
            acts.push_back(m);
        }
    return Module::make(a, a, acts);
}

/// A as a bimodule over itself, from the table.
inline stabcat::ModulePtr table_bimodule(const stabcat::AlgebraPtr& a, const Table& t)
{
    using namespace stabcat;
    const std::size_t n = t.dim;
    std::vector<Matrix> acts;
    for (std::size_t ea = 0; ea < n; ++ea)
        for (std::size_t ec = 0; ec < n; ++ec) {
            Matrix m(n, n, t.p);
            for (std::size_t j = 0; j < n; ++j)
                m.set_col(j, t.times(t.times(unit_vec(n, ea), unit_vec(n, j)), unit_vec(n, ec)));
            acts.push_back(m);
        }
    return Module::make(a, a, acts);
}

/// k[x]/(x^2) in characteristic 2: the bimodule resolution with d = x (x) 1 + 1 (x) x, whose
/// square is x^2 (x) 1 + 2 x (x) x + 1 (x) x^2 = 0.
inline PeriodicResolution dual_numbers_bimodule_resolution(const stabcat::AlgebraPtr& a, const Table& t)
{
    using namespace stabcat;
    const std::size_t n = t.dim;
    Matrix d(n * n, n * n, t.p);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Vec ux = t.times(unit_vec(n, i), unit_vec(n, 1)), xv = t.times(unit_vec(n, 1), unit_vec(n, j));
            for (std::size_t k = 0; k < n; ++k) {
                d(k * n + j, i * n + j) = gf::add(d(k * n + j, i * n + j), ux[k], t.p);
                d(i * n + k, i * n + j) = gf::add(d(i * n + k, i * n + j), xv[k], t.p);
            }
        }
    return {free_bimodule(a, t), d};
}

struct CochainComplex {
    std::vector<stabcat::Matrix> cochains; // basis of Hom(P, V)
    stabcat::Matrix coboundary;            // phi -> phi d, in those coordinates
    stabcat::Subspace cocycles, coboundaries;

    std::size_t tate_dim() const { return cocycles.dim() - coboundaries.dim(); }
};

inline CochainComplex cochains(const PeriodicResolution& r, const stabcat::Module& v)
{
    using namespace stabcat;
    const Scalar p = v.prime();
    Subspace h = naive_hom(*r.p, v);
    CochainComplex c;
    std::vector<Vec> images;
    for (std::size_t t = 0; t < h.dim(); ++t) {
        c.cochains.push_back(Matrix::unflatten(h.vector(t), v.dim(), r.p->dim(), p));
        images.push_back(h.coordinates((c.cochains.back() * r.d).flatten()));
    }
    c.coboundary = Matrix::from_columns(images, h.dim(), p);
    c.cocycles = kernel_basis(c.coboundary);
    c.coboundaries = Subspace::column_space(c.coboundary);
    return c;
}

/// Brute-force Yoneda products of Tate classes of V = A over the bimodule resolution: each
/// cocycle phi is lifted to the chain map u (x) v -> u z (x) v with z = phi(1 (x) 1), which
/// commutes with d because A is commutative, and products are phi o lift(psi). Returns the rank
/// of the span of products of basis classes modulo coboundaries, and the number of nonzero ones.
inline std::pair<std::size_t, std::size_t> hochschild_product_rank(const PeriodicResolution& r, const stabcat::Module& v,
                                                                   const Table& t)
{
    using namespace stabcat;
    const Scalar p = t.p;
    const std::size_t n = t.dim;
    CochainComplex c = cochains(r, v);
    Subspace h = naive_hom(*r.p, v);
    // representatives of a basis of cocycles / coboundaries
    std::vector<Matrix> classes;
    Subspace seen = c.coboundaries;
    for (std::size_t i = 0; i < c.cocycles.dim(); ++i) {
        Vec x = c.cocycles.vector(i);
        if (seen.contains(x))
            continue;
        seen = seen.sum(Subspace::span({x}, x.size(), p));
        Matrix phi(v.dim(), r.p->dim(), p);
        for (std::size_t k = 0; k < x.size(); ++k)
            phi.axpy(x[k], c.cochains[k]);
        classes.push_back(phi);
    }
    auto lift = [&](const Matrix& phi) {
        Vec z = phi.col(0); // image of 1 (x) 1
        Matrix m(n * n, n * n, p);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                Vec uz = t.times(unit_vec(n, i), z);
                for (std::size_t k = 0; k < n; ++k)
                    m(k * n + j, i * n + j) = uz[k];
            }
        if (m * r.d != r.d * m)
            throw std::logic_error("lifted chain map does not commute with the differential");
        return m;
    };
    std::vector<Vec> products;
    std::size_t nonzero = 0;
    for (const auto& phi : classes)
        for (const auto& psi : classes) {
            Vec coords = h.coordinates((phi * lift(psi)).flatten());
            Vec reduced = c.coboundaries.reduce(coords);
            nonzero += !is_zero(reduced);
            products.push_back(reduced);
        }
    return {Subspace::span(products, h.dim(), p).dim(), nonzero};
}

} // namespace oracle
