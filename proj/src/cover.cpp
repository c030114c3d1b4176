#include "stabcat/cover.hpp"

#include <map>
#include <mutex>

namespace stabcat {

namespace {

// W = [action_i y]_i, so that act(b) y = W b.
Matrix orbit_matrix(const Module& v, const Vec& y)
{
    const std::size_t n = v.acting()->dim();
    Matrix w(v.dim(), n, v.prime());
    for (std::size_t i = 0; i < n; ++i)
        w.set_col(i, v.action(i) * y);
    return w;
}

// Sum of Lambda e_k as a module, with its frame (identity coordinates).
ProjectiveFrame summand_sum(const AlgebraPtr& left, const AlgebraPtr& right, const std::vector<Vec>& idem)
{
    const AlgebraPtr acting = acting_algebra(left, right);
    const Scalar p = acting->prime();
    ProjectiveFrame fr;
    fr.idempotents = idem;
    std::vector<std::vector<Matrix>> blocks(acting->dim());
    std::size_t total = 0;
    std::vector<Subspace> spaces;
    for (const auto& e : idem) {
        Subspace s = Subspace::column_space(acting->right_of(e));
        fr.offsets.push_back(total);
        total += s.dim();
        fr.summand_basis.push_back(s.basis_columns());
        spaces.push_back(std::move(s));
    }
    std::vector<Matrix> action;
    for (std::size_t i = 0; i < acting->dim(); ++i) {
        Matrix a(total, total, p);
        for (std::size_t k = 0; k < spaces.size(); ++k) {
            const Subspace& s = spaces[k];
            Matrix img = acting->left(i) * fr.summand_basis[k];
            for (std::size_t c = 0; c < s.dim(); ++c)
                for (std::size_t r = 0; r < s.dim(); ++r)
                    a(fr.offsets[k] + r, fr.offsets[k] + c) = img(s.pivots()[r], c);
        }
        action.push_back(std::move(a));
    }
    for (std::size_t k = 0; k < spaces.size(); ++k) {
        Vec g(total, 0);
        Vec coords = spaces[k].coordinates(idem[k]);
        for (std::size_t r = 0; r < coords.size(); ++r)
            g[fr.offsets[k] + r] = coords[r];
        fr.gens.push_back(std::move(g));
    }
    fr.module = Module::make(left, right, std::move(action), "projective");
    fr.to_module = Matrix::identity(total, p);
    fr.from_module = Matrix::identity(total, p);
    return fr;
}

Matrix left_inverse(const Matrix& incl)
{
    const Scalar p = incl.prime();
    auto sol = solve_matrix(incl.transpose(), Matrix::identity(incl.cols(), p));
    if (!sol)
        throw LiftFailed("inclusion is not injective");
    return sol->transpose();
}

Matrix right_inverse(const Matrix& proj)
{
    auto sol = solve_matrix(proj, Matrix::identity(proj.rows(), proj.prime()));
    if (!sol)
        throw LiftFailed("projection is not surjective");
    return *sol;
}

} // namespace

Matrix ProjectiveFrame::summand_map(const Module& v, std::size_t k, const Vec& y) const
{
    return orbit_matrix(v, y) * summand_basis[k];
}

Matrix ProjectiveFrame::map_to(const Module& v, const std::vector<Vec>& images) const
{
    if (images.size() != gens.size())
        throw UsageError("map_to: need one image per generator");
    const std::size_t total = to_module.cols();
    Matrix f(v.dim(), total, v.prime());
    for (std::size_t k = 0; k < gens.size(); ++k)
        if (!is_zero(images[k]))
            f.set_block(0, offsets[k], summand_map(v, k, images[k]));
    return f * from_module;
}

Subspace radical_of_module(const Module& u)
{
    const auto& rad = u.acting()->radical();
    std::vector<Matrix> blocks;
    for (std::size_t t = 0; t < rad.dim(); ++t)
        blocks.push_back(u.act(rad.vector(t)));
    if (blocks.empty() || u.dim() == 0)
        return Subspace(u.dim(), u.prime());
    return Subspace::column_space(hstack(blocks, u.dim(), u.prime()));
}

Cover projective_cover(const ModulePtr& u, CoverKind kind)
{
    const auto& acting = *u->acting();
    const Scalar p = u->prime();
    const std::size_t n = u->dim();
    std::vector<Vec> idem, images;
    if (kind == CoverKind::Minimal) {
        Subspace reached = radical_of_module(*u);
        const auto& prim = acting.primitive_idempotents();
        for (const auto& e : prim) {
            if (reached.dim() == n)
                break;
            Subspace part = Subspace::column_space(u->act(e));
            for (std::size_t t = 0; t < part.dim() && reached.dim() < n; ++t) {
                Vec g = part.vector(t);
                if (reached.contains(g))
                    continue;
                idem.push_back(e);
                images.push_back(g);
                reached = reached.sum(generated_submodule(*u, {g}));
            }
        }
        if (reached.dim() != n)
            throw Error("projective_cover: top basis did not generate the module");
    } else {
        Subspace reached(n, p);
        for (std::size_t i = 0; i < n; ++i) {
            Vec b(n, 0);
            b[i] = 1;
            if (reached.contains(b))
                continue;
            idem.push_back(acting.unit());
            images.push_back(b);
            reached = reached.sum(generated_submodule(*u, {b}));
        }
        idem.push_back(acting.unit());
        images.push_back(Vec(n, 0));
    }
    Cover c;
    c.target = u;
    c.frame = summand_sum(u->left_algebra(), u->right_algebra(), idem);
    c.images = images;
    c.projection = c.frame.map_to(*u, images);
    c.section = right_inverse(c.projection);
    c.kernel = submodule(c.frame.module, kernel_basis(c.projection));
    return c;
}

std::shared_ptr<const Cover> minimal_cover(const ModulePtr& u)
{
    struct Entry {
        std::weak_ptr<const Module> key;
        std::shared_ptr<const Cover> cover;
    };
    static std::mutex mu;
    static std::map<const Module*, Entry> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(u.get());
        if (it != cache.end() && it->second.key.lock() == u)
            return it->second.cover;
    }
    auto c = std::make_shared<const Cover>(projective_cover(u, CoverKind::Minimal));
    std::lock_guard<std::mutex> lock(mu);
    for (auto it = cache.begin(); it != cache.end();)
        it = it->second.key.expired() ? cache.erase(it) : std::next(it);
    cache[u.get()] = Entry{u, c};
    return c;
}

ProjectiveFrame frame_of_projective(const ModulePtr& q)
{
    auto c = minimal_cover(q);
    if (c->kernel.module->dim() != 0)
        throw NotProjective("module of dimension " + std::to_string(q->dim()) + " is not projective");
    ProjectiveFrame fr = c->frame;
    fr.module = q;
    fr.gens = c->images;
    fr.to_module = c->projection;
    auto inv = inverse(c->projection);
    if (!inv)
        throw NotProjective("cover of a projective module is not invertible");
    fr.from_module = *inv;
    return fr;
}

ShortExact make_short_exact(ModulePtr sub, ModulePtr mid, ModulePtr quot, Matrix incl, Matrix proj,
                            ProjectiveFrame frame)
{
    ShortExact s;
    s.incl_left_inverse = left_inverse(incl);
    s.proj_section = right_inverse(proj);
    s.sub = std::move(sub);
    s.mid = std::move(mid);
    s.quot = std::move(quot);
    s.incl = std::move(incl);
    s.proj = std::move(proj);
    s.frame = std::move(frame);
    return s;
}

ShortExact syzygy_step(const ModulePtr& u, CoverKind kind)
{
    std::shared_ptr<const Cover> c =
        kind == CoverKind::Minimal ? minimal_cover(u) : std::make_shared<const Cover>(projective_cover(u, kind));
    ShortExact s;
    s.sub = c->kernel.module;
    s.mid = c->frame.module;
    s.quot = u;
    s.incl = c->kernel.inclusion;
    s.proj = c->projection;
    s.incl_left_inverse = left_inverse(s.incl);
    s.proj_section = c->section;
    s.frame = c->frame;
    return s;
}

ShortExact cosyzygy_step(const ModulePtr& u, CoverKind kind)
{
    ModulePtr d = dual_module(u);
    Cover c = projective_cover(d, kind);
    ModulePtr mid = dual_module(c.frame.module);
    ModulePtr sigma = dual_module(c.kernel.module);
    ProjectiveFrame frame = frame_of_projective(mid);
    return make_short_exact(u, mid, sigma, c.projection.transpose(), c.kernel.inclusion.transpose(),
                            std::move(frame));
}

Presentation presentation(const ModulePtr& u, CoverKind kind)
{
    Presentation pr;
    pr.first = projective_cover(u, kind);
    pr.second = projective_cover(pr.first.kernel.module, kind);
    pr.delta = pr.first.kernel.inclusion * pr.second.projection;
    return pr;
}

DownLift lift_down(const ShortExact& x, const ShortExact& y, const Matrix& f)
{
    if (f.rows() != y.quot->dim() || f.cols() != x.quot->dim())
        throw UsageError("lift_down: map has the wrong shape");
    const Matrix fp = f * x.proj;
    std::vector<Vec> images;
    for (std::size_t k = 0; k < x.frame.rank(); ++k) {
        Vec t = fp * x.frame.gens[k];
        Vec y0 = y.proj_section * t;
        images.push_back(y.mid->act(x.frame.idempotents[k]) * y0);
    }
    DownLift out;
    out.mid = x.frame.map_to(*y.mid, images);
    if (y.proj * out.mid != fp)
        throw LiftFailed("lift_down: lifted map does not cover the given map");
    Matrix on_sub = out.mid * x.incl;
    out.sub = y.incl_left_inverse * on_sub;
    if (y.incl * out.sub != on_sub)
        throw LiftFailed("lift_down: lifted map does not preserve the kernels");
    return out;
}

namespace {

// Frame of the k-dual of a projective module, one per module object.
std::shared_ptr<const ProjectiveFrame> dual_frame(const ModulePtr& q)
{
    struct Entry {
        std::weak_ptr<const Module> key;
        std::shared_ptr<const ProjectiveFrame> frame;
    };
    static std::mutex mu;
    static std::map<const Module*, Entry> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(q.get());
        if (it != cache.end() && it->second.key.lock() == q)
            return it->second.frame;
    }
    auto fr = std::make_shared<const ProjectiveFrame>(frame_of_projective(dual_module(q)));
    std::lock_guard<std::mutex> lock(mu);
    for (auto it = cache.begin(); it != cache.end();)
        it = it->second.key.expired() ? cache.erase(it) : std::next(it);
    cache[q.get()] = Entry{q, fr};
    return fr;
}

} // namespace

Matrix lift_up(const ShortExact& x, const ShortExact& y, const Matrix& g)
{
    if (g.rows() != y.sub->dim() || g.cols() != x.sub->dim())
        throw UsageError("lift_up: map has the wrong shape");
    const Matrix rhs = y.incl * g;
    // Dually, extending rhs along x.incl is lifting rhs^T along the surjection x.incl^T out of the
    // projective y.mid^*: send each generator to a preimage, cut down by its idempotent.
    auto fr = dual_frame(y.mid);
    const ModulePtr x_mid_dual = dual_module(x.mid);
    const Matrix target = x.incl_left_inverse.transpose() * rhs.transpose();
    std::vector<Vec> images;
    for (std::size_t k = 0; k < fr->rank(); ++k)
        images.push_back(x_mid_dual->act(fr->idempotents[k]) * (target * fr->gens[k]));
    Matrix q = fr->map_to(*x_mid_dual, images).transpose();
    if (q * x.incl != rhs)
        throw LiftFailed("lift_up: extension check failed");
    return y.proj * q * x.proj_section;
}

} // namespace stabcat
