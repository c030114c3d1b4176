#include "doctest.h"

#include "fixtures.hpp"
#include "stabcat/adjunction.hpp"

using namespace stabcat;

namespace {

struct PackCase {
    std::string label;
    ModulePtr m;
    std::size_t left_size, right_size;
};

std::vector<PackCase> pack_cases()
{
    auto c4 = testfx::algebra("gf2_c4"), s3 = testfx::algebra("gf3_s3"), a2 = testfx::algebra("a2");
    return {
        {"regular c4", regular_bimodule(c4), 1, 1},
        {"regular a2", regular_bimodule(a2), 1, 1},
        {"regular s3", regular_bimodule(s3), 2, 2},
        {"c4 over c2", testfx::bimodule("c4_over_c2"), 1, 2},
        {"s3 over c3", testfx::bimodule("s3_over_c3"), 2, 2},
    };
}

Vec unit_vec(std::size_t n, std::size_t i)
{
    Vec v(n, 0);
    v[i] = 1;
    return v;
}

// M as a one-sided module, for the independent Hom computations below.
ModulePtr as_left(const ModulePtr& m)
{
    std::vector<Matrix> acts;
    for (std::size_t i = 0; i < m->left_algebra()->dim(); ++i)
        acts.push_back(m->left_action(i));
    return Module::left_module(m->left_algebra(), acts);
}

ModulePtr as_right(const ModulePtr& m)
{
    std::vector<Matrix> acts;
    for (std::size_t j = 0; j < m->right_algebra()->dim(); ++j)
        acts.push_back(m->right_action(j));
    return Module::make(ground_field(m->prime()), m->right_algebra(), acts);
}

// A random invertible A-endomorphism of M, as a change of dual basis.
std::pair<Matrix, Matrix> random_automorphism(const ModulePtr& left)
{
    HomSpace end = hom_space(left, left);
    for (int attempt = 0; attempt < 200; ++attempt) {
        Matrix g = end.element(testgen::random_vec(end.dim(), left->prime()));
        if (auto gi = inverse(g))
            return {g, *gi};
    }
    FAIL("no invertible endomorphism found");
    return {};
}

} // namespace

TEST_CASE("dual bases have the expected sizes and reconstruct every element")
{
    for (const auto& c : pack_cases()) {
        CAPTURE(c.label);
        auto l = dual_basis_left(c.m);
        auto r = dual_basis_right(c.m);
        CHECK(l.forms.size() == c.left_size);
        CHECK(r.forms.size() == c.right_size);
        CHECK(is_left_dual_basis(*c.m, l));
        CHECK(is_right_dual_basis(*c.m, r));
    }
}

TEST_CASE("the regular bimodule has the dual basis (id, 1) up to splitting")
{
    auto c4 = testfx::algebra("gf2_c4");
    auto l = dual_basis_left(regular_bimodule(c4));
    REQUIRE(l.forms.size() == 1);
    // a left-linear map A -> A is right multiplication by alpha(1); alpha(m_1) m_1 = ... forces alpha(1) m_1 = 1
    Vec a1 = l.forms[0] * c4->unit();
    CHECK(c4->multiply(a1, l.elements[0]) == c4->unit());
}

TEST_CASE("non-projective bimodules have no dual basis")
{
    auto a2 = testfx::algebra("a2");
    ModulePtr k = testfx::trivial_module(a2);
    CHECK_THROWS_AS(dual_basis_left(k), NotProjective);
    CHECK_THROWS_AS(build_adjunction(k), NotProjective);
    // projective on the left only: A2 acting on the left, the ground field on the right is fine,
    // but the trivial module as a right module over A2 is not
    ModulePtr kr = one_dimensional(ground_field(2), a2, Vec{1, 0});
    CHECK_THROWS_AS(dual_basis_right(kr), NotProjective);
}

TEST_CASE("structure maps agree with the element formulas")
{
    for (const auto& c : pack_cases()) {
        CAPTURE(c.label);
        AdjunctionPtr k = build_adjunction(c.m);
        const AlgebraPtr a = k->algebra_a(), b = k->algebra_b();
        const Scalar p = a->prime();
        // eta_M(m (x) s o alpha) = alpha(m) for every alpha in Hom_A(M, A), found independently
        HomSpace ha = hom_space(as_left(c.m), testfx::left_regular(a));
        for (std::size_t i = 0; i < ha.dim(); ++i) {
            Matrix alpha = ha.basis(i);
            for (std::size_t x = 0; x < c.m->dim(); ++x)
                CHECK(k->eta_m * k->m_mv->pure(unit_vec(c.m->dim(), x), alpha.transpose() * a->sform()) ==
                      alpha.col(x));
        }
        HomSpace hb = hom_space(as_right(c.m), regular_module(ground_field(p), b));
        for (std::size_t i = 0; i < hb.dim(); ++i) {
            Matrix beta = hb.basis(i);
            for (std::size_t x = 0; x < c.m->dim(); ++x)
                CHECK(k->eta_mv * k->mv_m->pure(beta.transpose() * b->sform(), unit_vec(c.m->dim(), x)) ==
                      beta.col(x));
        }
    }
}

TEST_CASE("triangle identities and duality squares hold")
{
    for (const auto& c : pack_cases()) {
        CAPTURE(c.label);
        AdjunctionPtr k = build_adjunction(c.m);
        auto tri = triangle_composites(*k);
        CHECK(tri[0] == Matrix::identity(c.m->dim(), c.m->prime()));
        CHECK(tri[1] == Matrix::identity(c.m->dim(), c.m->prime()));
        CHECK(tri[2] == Matrix::identity(c.m->dim(), c.m->prime()));
        CHECK(tri[3] == Matrix::identity(c.m->dim(), c.m->prime()));
        auto u = unit_duality_square(*k);
        CHECK(u.first == u.second);
        CHECK_FALSE(u.first.is_zero());
        auto v = counit_duality_square(*k);
        CHECK(v.first == v.second);
        CHECK_FALSE(v.first.is_zero());
    }
}

TEST_CASE("dual-tensor map is a bimodule isomorphism")
{
    for (const auto& c : pack_cases()) {
        CAPTURE(c.label);
        ModulePtr mv = dual_module(c.m);
        for (const auto& [x, y] : std::vector<std::pair<ModulePtr, ModulePtr>>{{c.m, mv}, {mv, c.m}}) {
            Matrix d = dual_tensor_iso(x, y);
            TensorProduct dual = tensor_over(dual_module(y), dual_module(x));
            ModulePtr target = dual_module(tensor_over(x, y).module);
            CHECK(is_homomorphism(*dual.module, *target, d));
            CHECK(inverse(d).has_value());
        }
    }
}

TEST_CASE("structure maps do not depend on the dual basis")
{
    testgen::rng().seed(41);
    for (const auto& c : pack_cases()) {
        CAPTURE(c.label);
        AdjunctionPtr k = build_adjunction(c.m);
        const Scalar p = c.m->prime();
        auto [g, gi] = random_automorphism(as_left(c.m));
        LeftDualBasis l = k->left;
        for (std::size_t i = 0; i < l.forms.size(); ++i) {
            l.forms[i] = l.forms[i] * gi;
            l.elements[i] = g * l.elements[i];
        }
        // a cancelling pair on top
        HomSpace ha = hom_space(as_left(c.m), testfx::left_regular(k->algebra_a()));
        Matrix extra = ha.element(testgen::random_vec(ha.dim(), p));
        Vec x = testgen::random_vec(c.m->dim(), p);
        l.forms.push_back(extra);
        l.elements.push_back(x);
        l.forms.push_back(extra.scaled(p - 1));
        l.elements.push_back(x);

        auto [h, hi] = random_automorphism(as_right(c.m));
        RightDualBasis r = k->right;
        for (std::size_t j = 0; j < r.forms.size(); ++j) {
            r.forms[j] = r.forms[j] * hi;
            r.elements[j] = h * r.elements[j];
        }
        AdjunctionPtr k2 = build_adjunction(c.m, &l, &r);
        CHECK(k2->eps_m == k->eps_m);
        CHECK(k2->eps_mv == k->eps_mv);
        CHECK(k2->eta_m == k->eta_m);
        CHECK(k2->eta_mv == k->eta_mv);
    }
}

TEST_CASE("supplied bases are checked")
{
    auto m = testfx::bimodule("c4_over_c2");
    LeftDualBasis l = dual_basis_left(m);
    l.elements[0] = Vec(m->dim(), 0);
    CHECK_THROWS_AS(build_adjunction(m, &l), UsageError);
}

TEST_CASE("counit after unit is the identity on B and the index on A")
{
    // kC4 over kC2 in characteristic 2: the index 2 vanishes
    AdjunctionPtr c4 = build_adjunction(testfx::bimodule("c4_over_c2"));
    CHECK(c4->eta_mv * c4->eps_m == Matrix::identity(2, 2));
    CHECK((c4->eta_m * c4->eps_mv).is_zero());
    AdjunctionPtr s3 = build_adjunction(testfx::bimodule("s3_over_c3"));
    CHECK(s3->eta_mv * s3->eps_m == Matrix::identity(3, 3));
    CHECK(s3->eta_m * s3->eps_mv == Matrix::identity(6, 3).scaled(2));
    AdjunctionPtr reg = build_adjunction(regular_bimodule(testfx::algebra("gf3_s3")));
    CHECK(reg->eta_mv * reg->eps_m == Matrix::identity(6, 3));
    CHECK(reg->eta_m * reg->eps_mv == Matrix::identity(6, 3));
}

TEST_CASE("adjunct maps match the dual-basis formulas and invert each other")
{
    auto c4 = testfx::algebra("gf2_c4"), c2 = testfx::algebra("gf2_c2");
    auto s3 = testfx::algebra("gf3_s3"), c3 = testfx::algebra("gf3_c3");
    struct Case {
        ModulePtr m, v, u;
    };
    std::vector<Case> cases = {
        {testfx::bimodule("c4_over_c2"), testfx::trivial_module(c2), testfx::trivial_module(c4)},
        {testfx::bimodule("c4_over_c2"), testfx::left_regular(c2), testfx::trivial_module(c4)},
        {testfx::bimodule("s3_over_c3"), testfx::trivial_module(c3), testfx::trivial_module(s3)},
        {testfx::bimodule("s3_over_c3"), testfx::left_regular(c3), testfx::left_regular(s3)},
    };
    for (const auto& c : cases) {
        AdjunctionPtr k = build_adjunction(c.m);
        const AlgebraPtr a = k->algebra_a(), b = k->algebra_b();
        const Scalar p = a->prime();
        auto mvt = tensor_shared(c.m, c.v);
        auto mvu = tensor_shared(k->mv, c.u);
        HomSpace src = hom_space(mvt->module, c.u);
        REQUIRE(src.dim() > 0);
        for (std::size_t i = 0; i < src.dim(); ++i) {
            Matrix phi = src.basis(i);
            Matrix psi = tensor_adjunct(*k, c.v, c.u, phi);
            CHECK(is_homomorphism(*c.v, *mvu->module, psi));
            // v -> sum_i (s o alpha_i) (x) phi(m_i (x) v)
            Matrix oracle(mvu->module->dim(), c.v->dim(), p);
            for (std::size_t x = 0; x < c.v->dim(); ++x) {
                Vec acc(oracle.rows(), 0);
                for (std::size_t t = 0; t < k->left.forms.size(); ++t)
                    acc = vec_add(acc,
                                  mvu->pure(k->left.forms[t].transpose() * a->sform(),
                                            phi * mvt->pure(k->left.elements[t], unit_vec(c.v->dim(), x))),
                                  p);
                oracle.set_col(x, acc);
            }
            CHECK(psi == oracle);
            CHECK(tensor_adjunct_inverse(*k, c.v, c.u, psi) == phi);
        }
        AdjunctionIso iso = adjunction_iso(*k, c.v, c.u);
        CHECK(iso.matrix.rows() == src.dim());

        // the other adjunction: Hom_B(M^v (x) U, V) -> Hom_A(U, M (x) V)
        HomSpace src2 = hom_space(mvu->module, c.v);
        for (std::size_t i = 0; i < src2.dim(); ++i) {
            Matrix psi = src2.basis(i);
            Matrix phi = dual_tensor_adjunct(*k, c.u, c.v, psi);
            CHECK(is_homomorphism(*c.u, *mvt->module, phi));
            Matrix oracle(mvt->module->dim(), c.u->dim(), p);
            for (std::size_t x = 0; x < c.u->dim(); ++x) {
                Vec acc(oracle.rows(), 0);
                for (std::size_t t = 0; t < k->right.forms.size(); ++t)
                    acc = vec_add(acc,
                                  mvt->pure(k->right.elements[t],
                                            psi * mvu->pure(k->right.forms[t].transpose() * b->sform(),
                                                            unit_vec(c.u->dim(), x))),
                                  p);
                oracle.set_col(x, acc);
            }
            CHECK(phi == oracle);
            CHECK(dual_tensor_adjunct_inverse(*k, c.u, c.v, phi) == psi);
        }
    }
}

TEST_CASE("right adjunct matches the dual-basis formula")
{
    auto m = testfx::bimodule("s3_over_c3");
    AdjunctionPtr k = build_adjunction(m);
    const AlgebraPtr b = k->algebra_b();
    const Scalar p = m->prime();
    ModulePtr x = k->reg_a, y = m;
    auto xm = tensor_shared(x, m);
    auto ymv = tensor_shared(y, k->mv);
    HomSpace hs = hom_space(xm->module, y);
    REQUIRE(hs.dim() > 0);
    for (std::size_t i = 0; i < hs.dim(); ++i) {
        Matrix phi = hs.basis(i);
        Matrix got = right_tensor_adjunct(*k, x, y, phi);
        CHECK(is_homomorphism(*x, *ymv->module, got));
        Matrix oracle(ymv->module->dim(), x->dim(), p);
        for (std::size_t e = 0; e < x->dim(); ++e) {
            Vec acc(oracle.rows(), 0);
            for (std::size_t t = 0; t < k->right.forms.size(); ++t)
                acc = vec_add(acc,
                              ymv->pure(phi * xm->pure(unit_vec(x->dim(), e), k->right.elements[t]),
                                        k->right.forms[t].transpose() * b->sform()),
                              p);
            oracle.set_col(e, acc);
        }
        CHECK(got == oracle);
    }
}

TEST_CASE("the pack of the dual bimodule has the same structure maps")
{
    for (const auto& c : pack_cases()) {
        CAPTURE(c.label);
        AdjunctionPtr k = build_adjunction(c.m);
        AdjunctionPtr d = dual_adjunction(*k);
        // roles swap: eps of M^v is eps_Mv of M and so on, in identical coordinates
        CHECK(d->eps_m == k->eps_mv);
        CHECK(d->eta_m == k->eta_mv);
        CHECK(d->eps_mv == k->eps_m);
        CHECK(d->eta_mv == k->eta_m);
    }
}

TEST_CASE("special adjunctions")
{
    auto s3 = testfx::algebra("gf3_s3");
    ModulePtr u = testfx::trivial_module(s3);
    ModulePtr av = dual_regular_left(s3);
    validate_module(*av);
    Vec gamma{1};
    Matrix t = functional_to_dual_map(*u, gamma);
    CHECK(is_homomorphism(*u, *av, t));
    // every A-map A^v -> U is determined by the image of s
    HomSpace h = hom_space(av, u);
    for (std::size_t i = 0; i < h.dim(); ++i)
        CHECK_FALSE(is_zero(evaluate_at_form(s3, h.basis(i))));
    CHECK(h.dim() == u->dim());
}

TEST_CASE("the tensor adjunction is natural in both variables")
{
    auto c4 = testfx::algebra("gf2_c4"), c2 = testfx::algebra("gf2_c2");
    auto s3 = testfx::algebra("gf3_s3"), c3 = testfx::algebra("gf3_c3");
    struct Case {
        ModulePtr m;
        ModulePtr v, v2; // maps V2 -> V
        ModulePtr u, u2; // maps U -> U2
    };
    std::vector<Case> cases = {
        {testfx::bimodule("c4_over_c2"), testfx::trivial_module(c2), testfx::left_regular(c2),
         testfx::trivial_module(c4), testfx::left_regular(c4)},
        {testfx::bimodule("s3_over_c3"), testfx::left_regular(c3), testfx::trivial_module(c3),
         testfx::trivial_module(s3), testfx::left_regular(s3)},
    };
    for (const auto& c : cases) {
        AdjunctionPtr k = build_adjunction(c.m);
        const Scalar p = k->algebra_a()->prime();
        auto mv = tensor_shared(c.m, c.v), mv2 = tensor_shared(c.m, c.v2);
        auto dual_u = tensor_shared(k->mv, c.u), dual_u2 = tensor_shared(k->mv, c.u2);
        const Matrix id_m = Matrix::identity(c.m->dim(), p), id_mv = Matrix::identity(k->mv->dim(), p);
        HomSpace phis = hom_space(mv->module, c.u);
        HomSpace gs = hom_space(c.u, c.u2), fs = hom_space(c.v2, c.v);
        REQUIRE(phis.dim() > 0);
        REQUIRE(gs.dim() > 0);
        REQUIRE(fs.dim() > 0);
        std::size_t nonzero = 0;
        for (std::size_t i = 0; i < phis.dim(); ++i) {
            const Matrix phi = phis.basis(i);
            const Matrix psi = tensor_adjunct(*k, c.v, c.u, phi);
            for (std::size_t j = 0; j < gs.dim(); ++j) {
                const Matrix g = gs.basis(j);
                const Matrix lhs = tensor_adjunct(*k, c.v, c.u2, g * phi);
                CHECK(lhs == tensor_maps(*dual_u, *dual_u2, id_mv, g) * psi);
                nonzero += !lhs.is_zero();
            }
            for (std::size_t j = 0; j < fs.dim(); ++j) {
                const Matrix f = fs.basis(j);
                CHECK(tensor_adjunct(*k, c.v2, c.u, phi * tensor_maps(*mv2, *mv, id_m, f)) == psi * f);
            }
        }
        CHECK(nonzero > 0);
    }
}
