#include "stabcat/hom.hpp"

#include <map>
#include <mutex>
#include <random>

namespace stabcat {

Matrix HomSpace::basis(std::size_t i) const
{
    return Matrix::unflatten(space.vector(i), target->dim(), source->dim(), space.prime());
}

Vec HomSpace::coordinates(const Matrix& f) const { return space.coordinates(f.flatten()); }

Matrix HomSpace::element(const Vec& coords) const
{
    Vec flat = space.basis().transpose() * coords;
    return Matrix::unflatten(flat, target->dim(), source->dim(), space.prime());
}

HomSpace hom_space(const ModulePtr& u, const ModulePtr& v)
{
    require_same_category(*u, *v, "hom_space");
    const Scalar p = u->prime();
    const std::size_t du = u->dim(), dv = v->dim();
    HomSpace h{u, v, Subspace(dv * du, p)};
    if (du == 0 || dv == 0)
        return h;
    auto cover = minimal_cover(u);
    const ProjectiveFrame& fr = cover->frame;
    const Matrix& incl = cover->kernel.inclusion;
    // unknowns: generator images in e_k V; constraint: the induced map kills Omega(U)
    std::vector<Matrix> maps; // maps P -> V, restricted to summand k columns
    std::vector<std::size_t> owner;
    std::vector<Matrix> constraint_cols;
    for (std::size_t k = 0; k < fr.rank(); ++k) {
        Subspace part = Subspace::column_space(v->act(fr.idempotents[k]));
        Matrix incl_k = incl.block(fr.offsets[k], 0, fr.summand_dim(k), incl.cols());
        for (std::size_t t = 0; t < part.dim(); ++t) {
            Matrix block = fr.summand_map(*v, k, part.vector(t));
            constraint_cols.push_back(Matrix::column((block * incl_k).flatten(), p));
            maps.push_back(std::move(block));
            owner.push_back(k);
        }
    }
    const std::size_t rows = dv * incl.cols();
    Subspace sols = kernel_basis(hstack(constraint_cols, rows, p));
    std::vector<Vec> flat;
    for (std::size_t s = 0; s < sols.dim(); ++s) {
        Vec t = sols.vector(s);
        Matrix full(dv, fr.module->dim(), p);
        for (std::size_t j = 0; j < t.size(); ++j) {
            if (!t[j])
                continue;
            std::size_t k = owner[j];
            Matrix placed(dv, fr.module->dim(), p);
            placed.set_block(0, fr.offsets[k], maps[j]);
            full.axpy(t[j], placed);
        }
        flat.push_back((full * cover->section).flatten());
    }
    h.space = Subspace::span(flat, dv * du, p);
    return h;
}

Subspace pr_subspace(const ModulePtr& u, const ModulePtr& v)
{
    require_same_category(*u, *v, "pr_subspace");
    const Scalar p = u->prime();
    const std::size_t du = u->dim(), dv = v->dim();
    if (du == 0 || dv == 0)
        return Subspace(dv * du, p);
    ModulePtr reg = regular_module(u->left_algebra(), u->right_algebra());
    HomSpace to_reg = hom_space(u, reg);
    // generators of V suffice: tau(u) (a g) = (tau(u) a) g and u -> tau(u) a is again a homomorphism
    auto vc = minimal_cover(v);
    std::vector<Vec> flat;
    const std::size_t n = u->acting()->dim();
    for (const auto& g : vc->images) {
        Matrix gamma(dv, n, p);
        for (std::size_t i = 0; i < n; ++i)
            gamma.set_col(i, v->action(i) * g);
        for (std::size_t t = 0; t < to_reg.dim(); ++t)
            flat.push_back((gamma * to_reg.basis(t)).flatten());
    }
    return Subspace::span(flat, dv * du, p);
}

Vec StableHomSpace::classify(const Matrix& f) const { return quotient.project(hom.coordinates(f)); }

Matrix StableHomSpace::representative(const Vec& coords) const { return hom.element(quotient.section * coords); }

StableHomSpace stable_hom(const ModulePtr& u, const ModulePtr& v)
{
    StableHomSpace s;
    s.hom = hom_space(u, v);
    Subspace flat = pr_subspace(u, v);
    std::vector<Vec> coords;
    for (std::size_t t = 0; t < flat.dim(); ++t)
        coords.push_back(s.hom.space.coordinates(flat.vector(t)));
    s.pr = Subspace::span(coords, s.hom.dim(), u->prime());
    s.quotient = quotient(s.hom.dim(), s.pr);
    return s;
}

std::shared_ptr<const StableHomSpace> stable_hom_shared(const ModulePtr& u, const ModulePtr& v)
{
    struct Entry {
        std::weak_ptr<const Module> u, v;
        std::shared_ptr<const StableHomSpace> space;
    };
    using Key = std::pair<const Module*, const Module*>;
    static std::mutex mu;
    static std::map<Key, Entry> cache;
    const Key key{u.get(), v.get()};
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end() && it->second.u.lock() == u && it->second.v.lock() == v)
            return it->second.space;
    }
    auto s = std::make_shared<const StableHomSpace>(stable_hom(u, v));
    std::lock_guard<std::mutex> lock(mu);
    for (auto it = cache.begin(); it != cache.end();)
        it = it->second.u.expired() || it->second.v.expired() ? cache.erase(it) : std::next(it);
    cache[key] = Entry{u, v, s};
    return s;
}

bool factors_through_projective(const ModulePtr& u, const ModulePtr& v, const Matrix& f)
{
    return pr_subspace(u, v).contains(f.flatten());
}

std::optional<StableIso> stable_iso(const ModulePtr& u, const ModulePtr& v)
{
    require_same_category(*u, *v, "stable_iso");
    const Scalar p = u->prime();
    StableHomSpace uv = stable_hom(u, v), vu = stable_hom(v, u), uu = stable_hom(u, u), vv = stable_hom(v, v);
    if (uu.dim() != vv.dim())
        return std::nullopt;
    const Vec id_u = uu.classify(Matrix::identity(u->dim(), p));
    const Vec id_v = vv.classify(Matrix::identity(v->dim(), p));
    if (uv.dim() == 0 || vu.dim() == 0) {
        if (is_zero(id_u) && is_zero(id_v))
            return StableIso{Matrix(v->dim(), u->dim(), p), Matrix(u->dim(), v->dim(), p)};
        return std::nullopt;
    }
    std::vector<Matrix> vreps;
    for (std::size_t j = 0; j < vu.dim(); ++j) {
        Vec e(vu.dim(), 0);
        e[j] = 1;
        vreps.push_back(vu.representative(e));
    }
    auto attempt = [&](const Vec& ucoords) -> std::optional<StableIso> {
        Matrix fwd = uv.representative(ucoords);
        // v o fwd ~ id_U and fwd o v ~ id_V are linear in the coordinates of v
        std::vector<Vec> cols;
        for (const auto& b : vreps) {
            Vec c = uu.classify(b * fwd);
            Vec d = vv.classify(fwd * b);
            c.insert(c.end(), d.begin(), d.end());
            cols.push_back(std::move(c));
        }
        Vec rhs = id_u;
        rhs.insert(rhs.end(), id_v.begin(), id_v.end());
        auto sol = solve(Matrix::from_columns(cols, rhs.size(), p), rhs);
        if (!sol)
            return std::nullopt;
        return StableIso{fwd, vu.representative(*sol)};
    };
    // exhaustive when small, otherwise a fixed-seed sample
    double total = 1;
    for (std::size_t i = 0; i < uv.dim(); ++i)
        total *= p;
    if (total <= 4096) {
        Vec c(uv.dim(), 0);
        for (;;) {
            std::size_t i = 0;
            while (i < c.size() && ++c[i] == p)
                c[i++] = 0;
            if (i == c.size())
                break;
            if (auto r = attempt(c))
                return r;
        }
        return std::nullopt;
    }
    std::mt19937_64 rng(0xC0FFEE);
    std::uniform_int_distribution<Scalar> coef(0, p - 1);
    for (int t = 0; t < 2048; ++t) {
        Vec c(uv.dim());
        for (auto& x : c)
            x = coef(rng);
        if (auto r = attempt(c))
            return r;
    }
    return std::nullopt;
}

} // namespace stabcat
