#include "stabcat/transfer.hpp"

#include <tuple>

namespace stabcat {

namespace {

Matrix id(const ModulePtr& x) { return Matrix::identity(x->dim(), x->prime()); }

ModulePtr tpm(const ModulePtr& x, const ModulePtr& y) { return tensor_shared(x, y)->module; }

Matrix tmap(const ModulePtr& x, const ModulePtr& y, const ModulePtr& x2, const ModulePtr& y2, const Matrix& f,
            const Matrix& g)
{
    return tensor_maps(*tensor_shared(x, y), *tensor_shared(x2, y2), f, g);
}

void require_shape(const ModulePtr& expected, const ModulePtr& got, const char* what)
{
    if (expected != got && (expected->dim() != got->dim() || expected->actions() != got->actions()))
        throw DegreeMismatch(std::string(what) + ": class does not live on the expected module");
}

} // namespace

TensoredTower::TensoredTower(TowerPtr inner, ModulePtr left, ModulePtr right)
    : inner_(std::move(inner)), left_(std::move(left)), right_(std::move(right))
{
}

ModulePtr TensoredTower::level(int n) const
{
    ModulePtr x = inner_->level(n);
    if (left_)
        x = tpm(left_, x);
    if (right_)
        x = tpm(x, right_);
    return x;
}

const ShortExact& TensoredTower::step(int n) const
{
    std::lock_guard<std::recursive_mutex> lock(mu_);
    auto it = steps_.find(n);
    if (it != steps_.end())
        return it->second;
    const ShortExact& s = inner_->step(n);
    auto apply = [&](const ModulePtr& x, const ModulePtr& y, const Matrix& f) {
        Matrix g = f;
        ModulePtr a = x, b = y;
        if (left_) {
            g = tmap(left_, a, left_, b, id(left_), g);
            a = tpm(left_, a);
            b = tpm(left_, b);
        }
        if (right_)
            g = tmap(a, right_, b, right_, g, id(right_));
        return g;
    };
    ModulePtr mid = s.mid;
    if (left_)
        mid = tpm(left_, mid);
    if (right_)
        mid = tpm(mid, right_);
    ProjectiveFrame frame;
    try {
        frame = frame_of_projective(mid);
    } catch (const NotProjective&) {
        throw NotProjective("tensoring a projective with the given factors is not projective");
    }
    ShortExact t = make_short_exact(level(n + 1), mid, level(n), apply(s.sub, s.mid, s.incl),
                                    apply(s.mid, s.quot, s.proj), std::move(frame));
    return steps_.emplace(n, std::move(t)).first->second;
}

namespace {
thread_local CoverKind cover_kind = CoverKind::Minimal;
}

CoverKind current_cover_kind() { return cover_kind; }

ScopedCoverKind::ScopedCoverKind(CoverKind kind) : saved_(cover_kind) { cover_kind = kind; }

ScopedCoverKind::~ScopedCoverKind() { cover_kind = saved_; }

TowerPtr shared_tower(const ModulePtr& x)
{
    using Key = std::pair<const Module*, CoverKind>;
    static std::mutex mu;
    static std::map<Key, std::pair<ModulePtr, TowerPtr>> cache;
    std::lock_guard<std::mutex> lock(mu);
    const Key key{x.get(), cover_kind};
    auto it = cache.find(key);
    if (it != cache.end())
        return it->second.second;
    TowerPtr t = make_tower(x, cover_kind);
    cache[key] = {x, t};
    return t;
}

TowerPtr tensor_tower(const TowerPtr& inner, const ModulePtr& left, const ModulePtr& right)
{
    using Key = std::tuple<const Tower*, const Module*, const Module*>;
    struct Entry {
        TowerPtr inner;
        ModulePtr left, right;
        TowerPtr tower;
    };
    static std::mutex mu;
    static std::map<Key, Entry> cache;
    std::lock_guard<std::mutex> lock(mu);
    const Key key{inner.get(), left.get(), right.get()};
    auto it = cache.find(key);
    if (it != cache.end())
        return it->second.tower;
    TowerPtr t = std::make_shared<TensoredTower>(inner, left, right);
    cache[key] = Entry{inner, left, right, t};
    return t;
}

TateClass precompose(const TateClass& z, const TowerPtr& new_source, const Matrix& h)
{
    Matrix rep = z.rep * shift_map(*new_source, 0, *z.source, 0, h, z.degree);
    return TateClass{new_source, z.target, z.degree, std::move(rep)};
}

TateClass postcompose(const TateClass& z, const TowerPtr& new_target, const Matrix& g)
{
    return TateClass{z.source, new_target, z.degree, g * z.rep};
}

TateClass tensor_class(const AdjunctionPack& k, const TateClass& z)
{
    const int n = z.degree;
    const ModulePtr w = z.target_module();
    TowerPtr mt = tensor_tower(z.source, k.m, nullptr);
    Matrix rep = tmap(k.m, z.source->level(n), k.m, w, id(k.m), z.rep);
    TateClass on_tensored{mt, shared_tower(tpm(k.m, w)), n, std::move(rep)};
    return precompose(on_tensored, shared_tower(mt->base()), id(mt->base()));
}

TateClass transfer_hh(const AdjunctionPack& k, const TateClass& zeta)
{
    require_shape(k.reg_b, zeta.source_module(), "transfer_hh");
    require_shape(k.reg_b, zeta.target_module(), "transfer_hh");
    const int n = zeta.degree;
    // precompose with the counit M^v (x)_A M -> B, using M^v (x) Omega^n(M) for Omega^n(M^v (x) M)
    TowerPtr tm = shared_tower(k.m);
    TowerPtr tt = tensor_tower(tm, k.mv, nullptr);
    Matrix b1 = zeta.rep * shift_map(*tt, 0, *zeta.source, 0, k.eta_mv, n);
    // Hom(M^v (x) Omega^n M, B) -> Hom(Omega^n M, M (x) B) = Hom(Omega^n M, M)
    Matrix b2 = right_unitor(k.m) * dual_tensor_adjunct(k, tm->level(n), k.reg_b, b1);
    // move onto Omega^n(A) (x)_A M, then Hom(Omega^n A (x) M, M) -> Hom(Omega^n A, M (x) M^v)
    TowerPtr ta = shared_tower(k.reg_a);
    TowerPtr tam = tensor_tower(ta, nullptr, k.m);
    Matrix b2a = b2 * shift_map(*tam, 0, *tm, 0, left_unitor(k.m), n);
    Matrix b3 = right_tensor_adjunct(k, ta->level(n), k.m, b2a);
    return TateClass{ta, ta, n, k.eta_m * b3};
}

TateClass transfer_hh_direct(const AdjunctionPack& k, const TateClass& zeta)
{
    require_shape(k.reg_b, zeta.source_module(), "transfer_hh_direct");
    const int n = zeta.degree;
    TowerPtr tb = zeta.source;
    TowerPtr tt = tensor_tower(tb, k.m, k.mv);
    const ModulePtr mb = tpm(k.m, tb->base());
    // M (x) B (x) M^v -> M (x) M^v
    Matrix u = tmap(mb, k.mv, k.m, k.mv, right_unitor(k.m), id(k.mv));
    auto uinv = inverse(u);
    if (!uinv)
        throw Error("transfer_hh_direct: unit isomorphism is singular");
    TowerPtr ta = shared_tower(k.reg_a);
    Matrix s = shift_map(*ta, 0, *tt, 0, *uinv * k.eps_mv, n);
    const ModulePtr ln = tb->level(n);
    Matrix inner = tmap(k.m, ln, k.m, tb->base(), id(k.m), zeta.rep);
    Matrix mid = tmap(tpm(k.m, ln), k.mv, mb, k.mv, inner, id(k.mv));
    return TateClass{ta, ta, n, k.eta_m * u * mid * s};
}

Matrix unit_on(const AdjunctionPack& k, const ModulePtr& v)
{
    return associator(k.mv, k.m, v) * tmap(k.reg_b, v, k.mv_m->module, v, k.eps_m, id(v)) * left_unitor_inverse(v);
}

Matrix counit_on(const AdjunctionPack& k, const ModulePtr& w)
{
    return left_unitor(w) * tmap(k.mv_m->module, w, k.reg_b, w, k.eta_mv, id(w)) * associator_inverse(k.mv, k.m, w);
}

TateClass transfer_ext(const AdjunctionPack& k, const TateClass& eta, const ModulePtr& v, const ModulePtr& w)
{
    const ModulePtr mv_ = tpm(k.m, v), mw = tpm(k.m, w);
    require_shape(mv_, eta.source_module(), "transfer_ext");
    require_shape(mw, eta.target_module(), "transfer_ext");
    const int n = eta.degree;
    TowerPtr tv = shared_tower(v);
    TowerPtr tt = tensor_tower(eta.source, k.mv, nullptr);
    Matrix s = shift_map(*tv, 0, *tt, 0, unit_on(k, v), n);
    Matrix mid = tmap(k.mv, eta.source->level(n), k.mv, mw, id(k.mv), eta.rep);
    return TateClass{tv, shared_tower(w), n, counit_on(k, w) * mid * s};
}

TateClass tensor_adjunct_class(const AdjunctionPack& k, const TateClass& z, const ModulePtr& v)
{
    require_shape(tpm(k.m, v), z.source_module(), "tensor_adjunct_class");
    const int n = z.degree;
    const ModulePtr u = z.target_module();
    TowerPtr tv = shared_tower(v);
    TowerPtr mt = tensor_tower(tv, k.m, nullptr);
    Matrix moved = z.rep * shift_map(*mt, 0, *z.source, 0, id(mt->base()), n);
    return TateClass{tv, shared_tower(tpm(k.mv, u)), n, tensor_adjunct(k, tv->level(n), u, moved)};
}

TateClass dual_tensor_adjunct_class(const AdjunctionPack& k, const TateClass& z, const ModulePtr& u)
{
    require_shape(tpm(k.mv, u), z.source_module(), "dual_tensor_adjunct_class");
    const int n = z.degree;
    const ModulePtr v = z.target_module();
    TowerPtr tu = shared_tower(u);
    TowerPtr mt = tensor_tower(tu, k.mv, nullptr);
    Matrix moved = z.rep * shift_map(*mt, 0, *z.source, 0, id(mt->base()), n);
    return TateClass{tu, shared_tower(tpm(k.m, v)), n, dual_tensor_adjunct(k, tu->level(n), v, moved)};
}

TateClass right_tensor_adjunct_class(const AdjunctionPack& k, const TateClass& z, const ModulePtr& x,
                                     const Matrix& h)
{
    const int n = z.degree;
    const ModulePtr y = z.target_module();
    TowerPtr tx = shared_tower(x);
    TowerPtr txm = tensor_tower(tx, nullptr, k.m);
    Matrix moved = z.rep * shift_map(*txm, 0, *z.source, 0, h, n);
    return TateClass{tx, shared_tower(tpm(y, k.mv)), n, right_tensor_adjunct(k, tx->level(n), y, moved)};
}

TateClass apply_counit_target(const AdjunctionPack& k, const TateClass& z, const ModulePtr& w)
{
    require_shape(tpm(k.mv, tpm(k.m, w)), z.target_module(), "apply_counit_target");
    return postcompose(z, shared_tower(w), counit_on(k, w));
}

TateClass apply_counit_source(const AdjunctionPack& k, const TateClass& z, const ModulePtr& w)
{
    require_shape(w, z.source_module(), "apply_counit_source");
    return precompose(z, shared_tower(tpm(k.mv, tpm(k.m, w))), counit_on(k, w));
}

TateClass transfer_ext_via_target(const AdjunctionPack& k, const TateClass& eta, const ModulePtr& v,
                                  const ModulePtr& w)
{
    require_shape(tpm(k.m, w), eta.target_module(), "transfer_ext_via_target");
    return apply_counit_target(k, tensor_adjunct_class(k, eta, v), w);
}

TateClass transfer_ext_via_source(const AdjunctionPack& k, const TateClass& eta, const ModulePtr& v,
                                  const ModulePtr& w)
{
    const ModulePtr mv_ = tpm(k.m, v), mw = tpm(k.m, w);
    require_shape(mv_, eta.source_module(), "transfer_ext_via_source");
    require_shape(mw, eta.target_module(), "transfer_ext_via_source");
    const int n = eta.degree;
    // Hom(Omega^n(M V), M W) -> Hom(M^v (x) Omega^n(M V), W), then precompose with the unit on V
    Matrix psi = dual_tensor_adjunct_inverse(k, eta.source->level(n), w, eta.rep);
    TateClass z{tensor_tower(eta.source, k.mv, nullptr), shared_tower(w), n, std::move(psi)};
    return precompose(z, shared_tower(v), unit_on(k, v));
}

} // namespace stabcat
