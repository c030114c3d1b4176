#include "stabcat/adjunction.hpp"

#include <map>
#include <mutex>

namespace stabcat {

namespace {

Matrix id(const ModulePtr& x) { return Matrix::identity(x->dim(), x->prime()); }

const TensorProduct& tp(const ModulePtr& x, const ModulePtr& y) { return *tensor_shared(x, y); }
ModulePtr tpm(const ModulePtr& x, const ModulePtr& y) { return tensor_shared(x, y)->module; }

Matrix tmap(const ModulePtr& x, const ModulePtr& y, const ModulePtr& x2, const ModulePtr& y2, const Matrix& f,
            const Matrix& g)
{
    return tensor_maps(tp(x, y), tp(x2, y2), f, g);
}

std::vector<Matrix> left_marginals(const Module& m)
{
    std::vector<Matrix> out;
    for (std::size_t i = 0; i < m.left_algebra()->dim(); ++i)
        out.push_back(m.left_action(i));
    return out;
}

std::vector<Matrix> right_marginals(const Module& m)
{
    std::vector<Matrix> out;
    for (std::size_t j = 0; j < m.right_algebra()->dim(); ++j)
        out.push_back(m.right_action(j));
    return out;
}

// alpha_k reads off the summand-k component of the frame as an element of the acting algebra
std::vector<Matrix> frame_forms(const ProjectiveFrame& f)
{
    std::vector<Matrix> out;
    for (std::size_t k = 0; k < f.rank(); ++k)
        out.push_back(f.summand_basis[k] * f.from_module.block(f.offsets[k], 0, f.summand_dim(k), f.module->dim()));
    return out;
}

// Element of the algebra determined by its values under the form: returns a with s(e_c a) = w_c
// (left) or s(a e_c) = w_c (right).
Vec recover_left(const Algebra& a, const Vec& w) { return a.gram_inverse() * w; }
Vec recover_right(const Algebra& a, const Vec& w) { return a.gram_inverse().transpose() * w; }

} // namespace

LeftDualBasis dual_basis_left(const ModulePtr& m)
{
    ProjectiveFrame f;
    try {
        f = frame_of_projective(Module::left_module(m->left_algebra(), left_marginals(*m), m->name()));
    } catch (const NotProjective&) {
        throw NotProjective("no left dual basis: " + m->name() + " is not projective over the left algebra");
    }
    LeftDualBasis d{frame_forms(f), f.gens};
    if (!is_left_dual_basis(*m, d))
        throw Error("dual_basis_left: frame does not give a dual basis");
    return d;
}

RightDualBasis dual_basis_right(const ModulePtr& m)
{
    const AlgebraPtr k = ground_field(m->prime());
    ProjectiveFrame f;
    try {
        f = frame_of_projective(Module::make(k, m->right_algebra(), right_marginals(*m), m->name()));
    } catch (const NotProjective&) {
        throw NotProjective("no right dual basis: " + m->name() + " is not projective over the right algebra");
    }
    RightDualBasis d{f.gens, frame_forms(f)};
    if (!is_right_dual_basis(*m, d))
        throw Error("dual_basis_right: frame does not give a dual basis");
    return d;
}

bool is_left_dual_basis(const Module& m, const LeftDualBasis& d)
{
    const Algebra& a = *m.left_algebra();
    const Scalar p = m.prime();
    if (d.forms.size() != d.elements.size())
        return false;
    for (const auto& alpha : d.forms) {
        if (alpha.rows() != a.dim() || alpha.cols() != m.dim())
            return false;
        for (std::size_t i = 0; i < a.dim(); ++i)
            if (alpha * m.left_action(i) != a.left(i) * alpha)
                return false;
    }
    Matrix sum(m.dim(), m.dim(), p);
    for (std::size_t i = 0; i < d.forms.size(); ++i)
        for (std::size_t x = 0; x < m.dim(); ++x) {
            Vec y = m.left_action_of(d.forms[i].col(x)) * d.elements[i];
            for (std::size_t r = 0; r < m.dim(); ++r)
                sum(r, x) = gf::add(sum(r, x), y[r], p);
        }
    return sum == Matrix::identity(m.dim(), p);
}

bool is_right_dual_basis(const Module& m, const RightDualBasis& d)
{
    const Algebra& b = *m.right_algebra();
    const Scalar p = m.prime();
    if (d.forms.size() != d.elements.size())
        return false;
    for (const auto& beta : d.forms) {
        if (beta.rows() != b.dim() || beta.cols() != m.dim())
            return false;
        for (std::size_t j = 0; j < b.dim(); ++j)
            if (beta * m.right_action(j) != b.right(j) * beta)
                return false;
    }
    Matrix sum(m.dim(), m.dim(), p);
    for (std::size_t i = 0; i < d.forms.size(); ++i)
        for (std::size_t x = 0; x < m.dim(); ++x) {
            Vec y = m.right_action_of(d.forms[i].col(x)) * d.elements[i];
            for (std::size_t r = 0; r < m.dim(); ++r)
                sum(r, x) = gf::add(sum(r, x), y[r], p);
        }
    return sum == Matrix::identity(m.dim(), p);
}

ModulePtr shared_regular_bimodule(const AlgebraPtr& a)
{
    static std::mutex mu;
    static std::map<const Algebra*, std::pair<AlgebraPtr, ModulePtr>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(a.get());
    if (it != cache.end())
        return it->second.second;
    ModulePtr r = regular_bimodule(a);
    cache[a.get()] = {a, r};
    return r;
}

Matrix left_unitor(const ModulePtr& x)
{
    const TensorProduct& t = tp(shared_regular_bimodule(x->left_algebra()), x);
    const std::size_t dx = x->dim();
    Matrix out(dx, t.module->dim(), x->prime());
    for (std::size_t c = 0; c < t.free_coords.size(); ++c) {
        const std::size_t a = t.free_coords[c] / dx, e = t.free_coords[c] % dx;
        out.set_col(c, x->left_action(a).col(e));
    }
    return out;
}

Matrix left_unitor_inverse(const ModulePtr& x)
{
    const TensorProduct& t = tp(shared_regular_bimodule(x->left_algebra()), x);
    const Vec& one = x->left_algebra()->unit();
    Matrix out(t.module->dim(), x->dim(), x->prime());
    for (std::size_t e = 0; e < x->dim(); ++e) {
        Vec u(x->dim(), 0);
        u[e] = 1;
        out.set_col(e, t.pure(one, u));
    }
    return out;
}

Matrix right_unitor(const ModulePtr& x)
{
    const TensorProduct& t = tp(x, shared_regular_bimodule(x->right_algebra()));
    const std::size_t dc = x->right_algebra()->dim();
    Matrix out(x->dim(), t.module->dim(), x->prime());
    for (std::size_t c = 0; c < t.free_coords.size(); ++c) {
        const std::size_t e = t.free_coords[c] / dc, b = t.free_coords[c] % dc;
        out.set_col(c, x->right_action(b).col(e));
    }
    return out;
}

Matrix right_unitor_inverse(const ModulePtr& x)
{
    const TensorProduct& t = tp(x, shared_regular_bimodule(x->right_algebra()));
    const Vec& one = x->right_algebra()->unit();
    Matrix out(t.module->dim(), x->dim(), x->prime());
    for (std::size_t e = 0; e < x->dim(); ++e) {
        Vec u(x->dim(), 0);
        u[e] = 1;
        out.set_col(e, t.pure(u, one));
    }
    return out;
}

Matrix associator(const ModulePtr& x, const ModulePtr& y, const ModulePtr& z)
{
    const TensorProduct& xy = tp(x, y);
    const TensorProduct& xy_z = tp(xy.module, z);
    const TensorProduct& yz = tp(y, z);
    const TensorProduct& x_yz = tp(x, yz.module);
    const std::size_t dy = y->dim(), dz = z->dim(), dyz = yz.module->dim();
    const Scalar p = x->prime();
    Matrix out(x_yz.module->dim(), xy_z.module->dim(), p);
    for (std::size_t c = 0; c < xy_z.free_coords.size(); ++c) {
        const std::size_t fxy = xy.free_coords[xy_z.free_coords[c] / dz], iz = xy_z.free_coords[c] % dz;
        const std::size_t ix = fxy / dy, iy = fxy % dy;
        Vec v = yz.projection.col(iy * dz + iz);
        Vec col(out.rows(), 0);
        for (std::size_t t = 0; t < dyz; ++t)
            if (v[t])
                col = vec_add(col, vec_scale(x_yz.projection.col(ix * dyz + t), v[t], p), p);
        out.set_col(c, col);
    }
    return out;
}

Matrix associator_inverse(const ModulePtr& x, const ModulePtr& y, const ModulePtr& z)
{
    auto inv = inverse(associator(x, y, z));
    if (!inv)
        throw Error("associator is not invertible");
    return *inv;
}

Matrix dual_tensor_iso(const ModulePtr& m, const ModulePtr& n)
{
    const Algebra& b = *m->right_algebra();
    const TensorProduct& mn = tp(m, n);
    ModulePtr nv = dual_module(n), mv = dual_module(m);
    const TensorProduct dual = tensor_over(nv, mv);
    const std::size_t dm = m->dim(), dn = n->dim(), db = b.dim();
    const Scalar p = m->prime();
    const Matrix& ginv = b.gram_inverse();
    Matrix out(mn.module->dim(), dual.module->dim(), p);
    for (std::size_t q = 0; q < dual.free_coords.size(); ++q) {
        const std::size_t inu = dual.free_coords[q] / dm, imu = dual.free_coords[q] % dm;
        for (std::size_t r = 0; r < mn.free_coords.size(); ++r) {
            const std::size_t im = mn.free_coords[r] / dn, in = mn.free_coords[r] % dn;
            // beta(n) is the element with t(c beta(n)) = nu(c n)
            Vec w(db);
            for (std::size_t c = 0; c < db; ++c)
                w[c] = n->left_action(c)(inu, in);
            Vec beta = ginv * w;
            std::uint64_t acc = 0;
            for (std::size_t d = 0; d < db; ++d)
                if (beta[d])
                    acc = (acc + std::uint64_t(beta[d]) * m->right_action(d)(imu, im)) % p;
            out(r, q) = Scalar(acc);
        }
    }
    return out;
}

Matrix form_map(const AlgebraPtr& a) { return a->gram(); }

namespace {

Matrix structure_eps(const ModulePtr& target, const AlgebraPtr& acting_left, const Vec& element)
{
    Matrix out(target->dim(), acting_left->dim(), target->prime());
    for (std::size_t j = 0; j < acting_left->dim(); ++j)
        out.set_col(j, target->left_action(j) * element);
    return out;
}

void require(bool ok, const std::string& what)
{
    if (!ok)
        throw Error("adjunction check failed: " + what);
}

AdjunctionPtr build_pack(const ModulePtr& m, const ModulePtr& mv, const LeftDualBasis* left,
                         const RightDualBasis* right)
{
    auto pack = std::make_shared<AdjunctionPack>();
    pack->m = m;
    pack->mv = mv;
    const AlgebraPtr a = m->left_algebra(), b = m->right_algebra();
    const Scalar p = m->prime();
    pack->reg_a = shared_regular_bimodule(a);
    pack->reg_b = shared_regular_bimodule(b);
    pack->left = left ? *left : dual_basis_left(m);
    pack->right = right ? *right : dual_basis_right(m);
    if (!is_left_dual_basis(*m, pack->left))
        throw UsageError("supplied left dual basis is not a dual basis");
    if (!is_right_dual_basis(*m, pack->right))
        throw UsageError("supplied right dual basis is not a dual basis");
    pack->mv_m = tensor_shared(mv, m);
    pack->m_mv = tensor_shared(m, mv);
    const std::size_t dm = m->dim();

    Vec x(pack->mv_m->module->dim(), 0);
    for (std::size_t i = 0; i < pack->left.forms.size(); ++i)
        x = vec_add(x, pack->mv_m->pure(pack->left.forms[i].transpose() * a->sform(), pack->left.elements[i]), p);
    pack->eps_m = structure_eps(pack->mv_m->module, b, x);

    Vec y(pack->m_mv->module->dim(), 0);
    for (std::size_t j = 0; j < pack->right.forms.size(); ++j)
        y = vec_add(y, pack->m_mv->pure(pack->right.elements[j], pack->right.forms[j].transpose() * b->sform()), p);
    pack->eps_mv = structure_eps(pack->m_mv->module, a, y);

    // counits on M (x)_k M^v and M^v (x)_k M, then restricted to the quotients
    Matrix h_m(a->dim(), dm * dm, p), h_mv(b->dim(), dm * dm, p);
    for (std::size_t e = 0; e < dm; ++e)
        for (std::size_t f = 0; f < dm; ++f) {
            Vec w(a->dim()), u(b->dim());
            for (std::size_t c = 0; c < a->dim(); ++c)
                w[c] = m->left_action(c)(f, e);
            for (std::size_t c = 0; c < b->dim(); ++c)
                u[c] = m->right_action(c)(f, e);
            h_m.set_col(e * dm + f, recover_left(*a, w));
            h_mv.set_col(f * dm + e, recover_right(*b, u));
        }
    pack->eta_m = h_m * pack->m_mv->section;
    pack->eta_mv = h_mv * pack->mv_m->section;
    require(pack->eta_m * pack->m_mv->projection == h_m, "eta_M is not balanced over B");
    require(pack->eta_mv * pack->mv_m->projection == h_mv, "eta_Mv is not balanced over A");

    require(is_homomorphism(*pack->reg_b, *pack->mv_m->module, pack->eps_m), "eps_M is not a bimodule map");
    require(is_homomorphism(*pack->m_mv->module, *pack->reg_a, pack->eta_m), "eta_M is not a bimodule map");
    require(is_homomorphism(*pack->reg_a, *pack->m_mv->module, pack->eps_mv), "eps_Mv is not a bimodule map");
    require(is_homomorphism(*pack->mv_m->module, *pack->reg_b, pack->eta_mv), "eta_Mv is not a bimodule map");

    const auto tri = triangle_composites(*pack);
    require(tri[0] == id(m) && tri[3] == id(m), "triangle identities on M");
    require(tri[1] == id(mv) && tri[2] == id(mv), "triangle identities on M^v");
    auto ud = unit_duality_square(*pack);
    require(ud.first == ud.second, "unit duality square");
    auto cd = counit_duality_square(*pack);
    require(cd.first == cd.second, "counit duality square");
    return pack;
}

} // namespace

AdjunctionPtr build_adjunction(const ModulePtr& m, const LeftDualBasis* left, const RightDualBasis* right)
{
    return build_pack(m, dual_module(m), left, right);
}

AdjunctionPtr dual_adjunction(const AdjunctionPack& pack) { return build_pack(pack.mv, pack.m, nullptr, nullptr); }

std::array<Matrix, 4> triangle_composites(const AdjunctionPack& k)
{
    const ModulePtr &m = k.m, &mv = k.mv, &ra = k.reg_a, &rb = k.reg_b;
    const ModulePtr mvm = k.mv_m->module, mmv = k.m_mv->module;
    std::array<Matrix, 4> out;
    out[0] = left_unitor(m) * tmap(mmv, m, ra, m, k.eta_m, id(m)) * associator_inverse(m, mv, m) *
             tmap(m, rb, m, mvm, id(m), k.eps_m) * right_unitor_inverse(m);
    out[1] = right_unitor(mv) * tmap(mv, mmv, mv, ra, id(mv), k.eta_m) * associator(mv, m, mv) *
             tmap(rb, mv, mvm, mv, k.eps_m, id(mv)) * left_unitor_inverse(mv);
    out[2] = left_unitor(mv) * tmap(mvm, mv, rb, mv, k.eta_mv, id(mv)) * associator_inverse(mv, m, mv) *
             tmap(mv, ra, mv, mmv, id(mv), k.eps_mv) * right_unitor_inverse(mv);
    out[3] = right_unitor(m) * tmap(m, mvm, m, rb, id(m), k.eta_mv) * associator(m, mv, m) *
             tmap(ra, m, mmv, m, k.eps_mv, id(m)) * left_unitor_inverse(m);
    return out;
}

std::pair<Matrix, Matrix> unit_duality_square(const AdjunctionPack& k)
{
    // (M^v)^v has the actions of M, so the dual-tensor iso is written on M (x)_B M^v coordinates
    Matrix via_tensor = dual_tensor_iso(k.m, k.mv) * k.eps_mv;
    Matrix via_form = k.eta_m.transpose() * form_map(k.algebra_a());
    return {via_tensor, via_form};
}

std::pair<Matrix, Matrix> counit_duality_square(const AdjunctionPack& k)
{
    Matrix via_form = form_map(k.algebra_b()) * k.eta_mv;
    Matrix via_tensor = k.eps_m.transpose() * dual_tensor_iso(k.mv, k.m);
    return {via_form, via_tensor};
}

Matrix tensor_adjunct(const AdjunctionPack& k, const ModulePtr& v, const ModulePtr& u, const Matrix& phi)
{
    const ModulePtr mv_ = tpm(k.m, v);
    Matrix unit = associator(k.mv, k.m, v) * tmap(k.reg_b, v, k.mv_m->module, v, k.eps_m, id(v)) *
                  left_unitor_inverse(v);
    return tmap(k.mv, mv_, k.mv, u, id(k.mv), phi) * unit;
}

Matrix tensor_adjunct_inverse(const AdjunctionPack& k, const ModulePtr& v, const ModulePtr& u, const Matrix& psi)
{
    const ModulePtr mvu = tpm(k.mv, u);
    return left_unitor(u) * tmap(k.m_mv->module, u, k.reg_a, u, k.eta_m, id(u)) * associator_inverse(k.m, k.mv, u) *
           tmap(k.m, v, k.m, mvu, id(k.m), psi);
}

Matrix dual_tensor_adjunct(const AdjunctionPack& k, const ModulePtr& u, const ModulePtr& v, const Matrix& psi)
{
    const ModulePtr mvu = tpm(k.mv, u);
    return tmap(k.m, mvu, k.m, v, id(k.m), psi) * associator(k.m, k.mv, u) *
           tmap(k.reg_a, u, k.m_mv->module, u, k.eps_mv, id(u)) * left_unitor_inverse(u);
}

Matrix dual_tensor_adjunct_inverse(const AdjunctionPack& k, const ModulePtr& u, const ModulePtr& v,
                                   const Matrix& phi)
{
    const ModulePtr mv_ = tpm(k.m, v);
    return left_unitor(v) * tmap(k.mv_m->module, v, k.reg_b, v, k.eta_mv, id(v)) *
           associator_inverse(k.mv, k.m, v) * tmap(k.mv, u, k.mv, mv_, id(k.mv), phi);
}

Matrix right_tensor_adjunct(const AdjunctionPack& k, const ModulePtr& x, const ModulePtr& y, const Matrix& phi)
{
    const ModulePtr xm = tpm(x, k.m);
    return tmap(xm, k.mv, y, k.mv, phi, id(k.mv)) * associator_inverse(x, k.m, k.mv) *
           tmap(x, k.reg_a, x, k.m_mv->module, id(x), k.eps_mv) * right_unitor_inverse(x);
}

AdjunctionIso adjunction_iso(const AdjunctionPack& k, const ModulePtr& v, const ModulePtr& u)
{
    AdjunctionIso iso{hom_space(tpm(k.m, v), u), hom_space(v, tpm(k.mv, u)), Matrix()};
    iso.matrix = Matrix(iso.target.dim(), iso.source.dim(), k.m->prime());
    for (std::size_t i = 0; i < iso.source.dim(); ++i)
        iso.matrix.set_col(i, iso.target.coordinates(tensor_adjunct(k, v, u, iso.source.basis(i))));
    if (iso.matrix.rows() != iso.matrix.cols() || rank(iso.matrix) != iso.matrix.rows())
        throw Error("adjunction map is not an isomorphism");
    return iso;
}

Matrix functional_to_dual_map(const Module& u, const Vec& gamma)
{
    const Algebra& a = *u.left_algebra();
    Matrix out(a.dim(), u.dim(), u.prime());
    for (std::size_t c = 0; c < a.dim(); ++c) {
        Vec row = u.left_action(c).transpose() * gamma;
        for (std::size_t x = 0; x < u.dim(); ++x)
            out(c, x) = row[x];
    }
    return out;
}

Vec evaluate_at_form(const AlgebraPtr& a, const Matrix& phi) { return phi * a->sform(); }

ModulePtr dual_regular_left(const AlgebraPtr& a)
{
    return dual_module(regular_module(ground_field(a->prime()), a));
}

} // namespace stabcat
