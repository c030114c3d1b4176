#include "stabcat/tate.hpp"

namespace stabcat {

namespace {

// tr(X Y) without forming the product.
Scalar trace_of_product(const Matrix& x, const Matrix& y)
{
    const Scalar p = x.prime();
    std::uint64_t acc = 0;
    for (std::size_t a = 0; a < x.rows(); ++a)
        for (std::size_t b = 0; b < x.cols(); ++b)
            if (x(a, b) && y(b, a))
                acc = (acc + std::uint64_t(x(a, b)) * y(b, a)) % p;
    return Scalar(acc);
}

void require_module(const ModulePtr& expected, const ModulePtr& got, const char* what)
{
    if (expected != got && (expected->dim() != got->dim() || expected->actions() != got->actions()))
        throw DegreeMismatch(std::string(what) + ": classes do not compose");
}

Matrix stable_rep(const StableHomSpace& s, std::size_t i)
{
    Vec e(s.dim(), 0);
    e[i] = 1;
    return s.representative(e);
}

} // namespace

StableHomSpace hat_ext(const Tower& tu, const ModulePtr& v, int n) { return *stable_hom_shared(tu.level(n), v); }

StableHomSpace hat_ext(const ModulePtr& u, const ModulePtr& v, int n) { return hat_ext(*make_tower(u), v, n); }

TateClass make_class(const TowerPtr& tu, const TowerPtr& tv, int n, const Matrix& rep)
{
    if (rep.rows() != tv->base()->dim() || rep.cols() != tu->level(n)->dim())
        throw UsageError("make_class: representative has the wrong shape");
    return TateClass{tu, tv, n, rep};
}

std::vector<TateClass> hat_ext_basis(const TowerPtr& tu, const TowerPtr& tv, int n)
{
    auto s = stable_hom_shared(tu->level(n), tv->base());
    std::vector<TateClass> out;
    for (std::size_t i = 0; i < s->dim(); ++i)
        out.push_back(TateClass{tu, tv, n, stable_rep(*s, i)});
    return out;
}

TateClass zero_class(const TowerPtr& tu, const TowerPtr& tv, int n)
{
    return TateClass{tu, tv, n, Matrix(tv->base()->dim(), tu->level(n)->dim(), tu->base()->prime())};
}

TateClass identity_class(const TowerPtr& t)
{
    return TateClass{t, t, 0, Matrix::identity(t->base()->dim(), t->base()->prime())};
}

Vec class_coordinates(const TateClass& z)
{
    return stable_hom_shared(z.source->level(z.degree), z.target_module())->classify(z.rep);
}

bool same_class(const TateClass& a, const TateClass& b)
{
    if (a.source != b.source || a.target != b.target || a.degree != b.degree)
        throw DegreeMismatch("same_class: classes live in different spaces");
    return class_coordinates(a) == class_coordinates(b);
}

TateClass add_classes(const TateClass& a, const TateClass& b)
{
    if (a.source != b.source || a.target != b.target || a.degree != b.degree)
        throw DegreeMismatch("add_classes: classes live in different spaces");
    return TateClass{a.source, a.target, a.degree, a.rep + b.rep};
}

TateClass scale_class(const TateClass& a, Scalar c) { return TateClass{a.source, a.target, a.degree, a.rep.scaled(c)}; }

Matrix projective_trace_form(const ProjectiveFrame& frame)
{
    const Module& q = *frame.module;
    const Vec& s = q.acting()->sform();
    const Scalar p = q.prime();
    Matrix psi(q.dim(), q.dim(), p);
    for (std::size_t k = 0; k < frame.rank(); ++k) {
        const std::size_t dk = frame.summand_dim(k);
        // w_k = s o alpha_k, alpha_k reading off the summand-k component as an element of Lambda
        Vec sb = frame.summand_basis[k].transpose() * s;
        Vec w = frame.from_module.block(frame.offsets[k], 0, dk, q.dim()).transpose() * sb;
        for (std::size_t a = 0; a < q.dim(); ++a)
            if (frame.gens[k][a])
                for (std::size_t b = 0; b < q.dim(); ++b)
                    psi(a, b) = gf::add(psi(a, b), gf::mul(frame.gens[k][a], w[b], p), p);
    }
    return psi;
}

Scalar vp_dual(const ProjectiveFrame& frame, const Matrix& beta, const Matrix& phi)
{
    return trace_of_product(projective_trace_form(frame), beta * phi);
}

Matrix duality_kernel(const ShortExact& step) { return step.proj * projective_trace_form(step.frame) * step.incl; }

Vec DualityMap::apply(const Matrix& beta) const
{
    Matrix kb = kernel * beta;
    Vec out(target.dim());
    for (std::size_t j = 0; j < target.dim(); ++j)
        out[j] = trace_of_product(kb, stable_rep(target, j));
    return out;
}

DualityMap tate_duality(const ShortExact& step, const ModulePtr& v)
{
    const Scalar p = v->prime();
    DualityMap d;
    d.source = *stable_hom_shared(v, step.sub);
    d.target = *stable_hom_shared(step.quot, v);
    d.kernel = duality_kernel(step);
    const HomSpace& hs = d.source.hom;
    const HomSpace& ht = d.target.hom;
    Matrix full(hs.dim(), ht.dim(), p);
    std::vector<Matrix> targets;
    for (std::size_t j = 0; j < ht.dim(); ++j)
        targets.push_back(ht.basis(j));
    for (std::size_t i = 0; i < hs.dim(); ++i) {
        Matrix kb = d.kernel * hs.basis(i);
        for (std::size_t j = 0; j < ht.dim(); ++j)
            full(i, j) = trace_of_product(kb, targets[j]);
    }
    // T(beta) must kill maps factoring through projectives, and factoring beta must give zero
    for (std::size_t t = 0; t < d.target.pr.dim(); ++t)
        if (!is_zero(full * d.target.pr.vector(t)))
            throw DegeneratePairing("duality functional does not annihilate projectively factoring maps");
    for (std::size_t t = 0; t < d.source.pr.dim(); ++t)
        if (!is_zero(full.transpose() * d.source.pr.vector(t)))
            throw DegeneratePairing("projectively factoring map has a nonzero duality functional");
    d.matrix = d.source.quotient.section.transpose() * full * d.target.quotient.section;
    if (d.matrix.rows() != d.matrix.cols() || rank(d.matrix) != d.matrix.rows())
        throw DegeneratePairing("duality matrix of size " + std::to_string(d.matrix.rows()) + "x" +
                                std::to_string(d.matrix.cols()) + " is singular");
    return d;
}

DualityMap tate_duality(const Tower& tu, const ModulePtr& v) { return tate_duality(tu.step(0), v); }

TateClass shift_class(const TateClass& z, int s)
{
    Matrix rep = shift_map(*z.source, z.degree, *z.target, 0, z.rep, s);
    return TateClass{offset_tower(z.source, s), offset_tower(z.target, s), z.degree, std::move(rep)};
}

TateClass yoneda(const TateClass& zeta, const TateClass& eta)
{
    require_module(zeta.source_module(), eta.target_module(), "yoneda");
    const int m = zeta.degree, n = eta.degree;
    Matrix shifted = shift_map(*eta.source, n, *zeta.source, 0, eta.rep, m);
    return TateClass{eta.source, zeta.target, m + n, zeta.rep * shifted};
}

Scalar pairing(const TateClass& zeta, const TateClass& eta)
{
    if (zeta.degree + eta.degree != -1)
        throw DegreeMismatch("pairing: degrees " + std::to_string(zeta.degree) + " and " +
                             std::to_string(eta.degree) + " are not complementary");
    require_module(zeta.source_module(), eta.target_module(), "pairing");
    require_module(zeta.target_module(), eta.source_module(), "pairing");
    const int n = -eta.degree;
    // move zeta to V -> Omega^{1-n}(U) inside the tower of eta's source, then evaluate T on eta
    Matrix beta = shift_map(*zeta.source, n - 1, *eta.source, 0, zeta.rep, 1 - n);
    return trace_of_product(duality_kernel(eta.source->step(-n)) * beta, eta.rep);
}

Matrix pairing_matrix(const TowerPtr& tu, const TowerPtr& tv, int n)
{
    auto left = hat_ext_basis(tv, tu, n - 1);
    auto right = hat_ext_basis(tu, tv, -n);
    const Scalar p = tu->base()->prime();
    Matrix out(left.size(), right.size(), p);
    if (left.empty() || right.empty())
        return out;
    const Matrix kernel = duality_kernel(tu->step(-n));
    for (std::size_t i = 0; i < left.size(); ++i) {
        Matrix kb = kernel * shift_map(*tv, n - 1, *tu, 0, left[i].rep, 1 - n);
        for (std::size_t j = 0; j < right.size(); ++j)
            out(i, j) = trace_of_product(kb, right[j].rep);
    }
    return out;
}

TateClass transport(const TateClass& z, const TowerPtr& source, const TowerPtr& target)
{
    require_module(z.source_module(), source->base(), "transport");
    require_module(z.target_module(), target->base(), "transport");
    Matrix rep = z.rep * comparison(*source, *z.source, z.degree);
    return TateClass{source, target, z.degree, std::move(rep)};
}

GradedDimTable graded_dims(const TowerPtr& tu, const ModulePtr& v, int lo, int hi)
{
    GradedDimTable t;
    for (int n = lo; n <= hi; ++n)
        t[n] = stable_hom_shared(tu->level(n), v)->dim();
    return t;
}

} // namespace stabcat
