#include "doctest.h"

#include "fixtures.hpp"
#include "stabcat/transfer.hpp"

using namespace stabcat;

namespace {

struct BimoduleCase {
    std::string label;
    ModulePtr m;
    Scalar index; // [A : B] reduced mod p
};

std::vector<BimoduleCase> bimodule_cases()
{
    return {
        {"regular c4", regular_bimodule(testfx::algebra("gf2_c4")), 1},
        {"regular a2", regular_bimodule(testfx::algebra("a2")), 1},
        {"c4 over c2", testfx::bimodule("c4_over_c2"), 0},
        {"s3 over c3", testfx::bimodule("s3_over_c3"), 2},
    };
}

bool tower_step_is_exact(const ShortExact& s)
{
    return (s.proj * s.incl).is_zero() && rank(s.incl) == s.sub->dim() && rank(s.proj) == s.quot->dim() &&
           s.sub->dim() + s.quot->dim() == s.mid->dim() && is_homomorphism(*s.sub, *s.mid, s.incl) &&
           is_homomorphism(*s.mid, *s.quot, s.proj);
}

// kC3 / (g - 1)^2 over GF(3), where (g - 1)^2 = 1 + g + g^2.
ModulePtr uniserial_c3()
{
    ModulePtr reg = testfx::left_regular(testfx::algebra("gf3_c3"));
    return quotient_module(reg, generated_submodule(*reg, {Vec{1, 1, 1}})).module;
}

} // namespace

TEST_CASE("tensored towers are towers of the tensored module")
{
    auto m = testfx::bimodule("c4_over_c2");
    auto c2 = testfx::algebra("gf2_c2");
    ModulePtr k = testfx::trivial_module(c2);
    TowerPtr t = tensor_tower(shared_tower(k), m, nullptr);
    CHECK(t == tensor_tower(shared_tower(k), m, nullptr));
    CHECK(t->base() == tensor_shared(m, k)->module);
    for (int n = -2; n <= 2; ++n) {
        CAPTURE(n);
        const ShortExact& s = t->step(n);
        CHECK(tower_step_is_exact(s));
        CHECK(s.sub == t->level(n + 1));
        CHECK(s.quot == t->level(n));
        // M (x)_{kC2} k is the 2-dimensional module kC4 / (g^2 - 1); its syzygies stay 2-dimensional
        CHECK(t->level(n)->dim() == 2);
    }
    // two-sided tensoring of a bimodule tower
    AdjunctionPtr pack = build_adjunction(m);
    TowerPtr tb = shared_tower(pack->reg_b);
    TowerPtr tt = tensor_tower(tb, pack->m, pack->mv);
    for (int n = -1; n <= 1; ++n)
        CHECK(tower_step_is_exact(tt->step(n)));
}

TEST_CASE("tensoring classes respects identities and products")
{
    auto m = testfx::bimodule("s3_over_c3");
    AdjunctionPtr pack = build_adjunction(m);
    auto c3 = testfx::algebra("gf3_c3");
    ModulePtr k = testfx::trivial_module(c3);
    TowerPtr tk = shared_tower(k);
    TowerPtr tmk = shared_tower(tensor_shared(m, k)->module);
    CHECK(same_class(tensor_class(*pack, identity_class(tk)), identity_class(tmk)));
    for (int a = -1; a <= 1; ++a)
        for (int b = -1; b <= 1; ++b) {
            CAPTURE(a);
            CAPTURE(b);
            auto xs = hat_ext_basis(tk, tk, a);
            auto ys = hat_ext_basis(tk, tk, b);
            REQUIRE(xs.size() == 1);
            REQUIRE(ys.size() == 1);
            TateClass lhs = tensor_class(*pack, yoneda(xs[0], ys[0]));
            TateClass rhs = yoneda(tensor_class(*pack, xs[0]), tensor_class(*pack, ys[0]));
            CHECK(same_class(lhs, rhs));
        }
}

TEST_CASE("transfer of Hochschild classes: adjunction route equals the defining formula")
{
    for (const auto& c : bimodule_cases()) {
        CAPTURE(c.label);
        AdjunctionPtr pack = build_adjunction(c.m);
        TowerPtr tb = shared_tower(pack->reg_b);
        std::size_t nonzero = 0;
        for (int n = -2; n <= 2; ++n) {
            CAPTURE(n);
            for (const auto& z : hat_ext_basis(tb, tb, n)) {
                TateClass route = transfer_hh(*pack, z);
                TateClass direct = transfer_hh_direct(*pack, z);
                CHECK(same_class(route, direct));
                nonzero += !is_zero(class_coordinates(route));
            }
        }
        if (c.index != 0)
            CHECK(nonzero > 0);
    }
}

TEST_CASE("transfer along the regular bimodule is the identity")
{
    for (const char* name : {"gf2_c4", "a2", "gf3_c3"}) {
        CAPTURE(std::string(name));
        auto a = testfx::algebra(name);
        AdjunctionPtr pack = build_adjunction(shared_regular_bimodule(a));
        TowerPtr t = shared_tower(pack->reg_a);
        for (int n = -2; n <= 2; ++n)
            for (const auto& z : hat_ext_basis(t, t, n))
                CHECK(same_class(transfer_hh(*pack, z), z));
    }
}

TEST_CASE("transfer of the unit class is the index")
{
    for (const auto& c : bimodule_cases()) {
        CAPTURE(c.label);
        AdjunctionPtr pack = build_adjunction(c.m);
        TowerPtr ta = shared_tower(pack->reg_a), tb = shared_tower(pack->reg_b);
        TateClass got = transfer_hh(*pack, identity_class(tb));
        CHECK(same_class(got, scale_class(identity_class(ta), c.index)));
    }
}

TEST_CASE("transfer of Ext classes: both factorizations agree with the definition")
{
    auto c2 = testfx::algebra("gf2_c2"), c3 = testfx::algebra("gf3_c3");
    struct Case {
        ModulePtr m, v, w;
    };
    std::vector<Case> cases = {
        {testfx::bimodule("c4_over_c2"), testfx::trivial_module(c2), testfx::trivial_module(c2)},
        {testfx::bimodule("s3_over_c3"), testfx::trivial_module(c3), testfx::trivial_module(c3)},
        {testfx::bimodule("s3_over_c3"), testfx::trivial_module(c3), uniserial_c3()},
        {testfx::bimodule("s3_over_c3"), uniserial_c3(), testfx::trivial_module(c3)},
    };
    for (const auto& c : cases) {
        AdjunctionPtr pack = build_adjunction(c.m);
        TowerPtr tmv = shared_tower(tensor_shared(c.m, c.v)->module);
        TowerPtr tmw = shared_tower(tensor_shared(c.m, c.w)->module);
        std::size_t seen = 0;
        for (int n = -2; n <= 2; ++n) {
            CAPTURE(n);
            for (const auto& eta : hat_ext_basis(tmv, tmw, n)) {
                TateClass d = transfer_ext(*pack, eta, c.v, c.w);
                CHECK(same_class(d, transfer_ext_via_target(*pack, eta, c.v, c.w)));
                CHECK(same_class(d, transfer_ext_via_source(*pack, eta, c.v, c.w)));
                ++seen;
            }
        }
        CHECK(seen > 0);
    }
}

TEST_CASE("transfer after tensoring is the identity when the counit splits the unit")
{
    // eta_Mv o eps_M = id_B for these restrictions, so tr(M (x) zeta) = zeta
    auto c2 = testfx::algebra("gf2_c2"), c3 = testfx::algebra("gf3_c3");
    struct Case {
        ModulePtr m, v, w;
    };
    std::vector<Case> cases = {
        {testfx::bimodule("c4_over_c2"), testfx::trivial_module(c2), testfx::trivial_module(c2)},
        {testfx::bimodule("s3_over_c3"), testfx::trivial_module(c3), testfx::trivial_module(c3)},
    };
    for (const auto& c : cases) {
        AdjunctionPtr pack = build_adjunction(c.m);
        TowerPtr tv = shared_tower(c.v), tw = shared_tower(c.w);
        for (int n = -2; n <= 2; ++n)
            for (const auto& z : hat_ext_basis(tv, tw, n)) {
                TateClass back = transfer_ext(*pack, tensor_class(*pack, z), c.v, c.w);
                CHECK(same_class(back, z));
            }
    }
}

TEST_CASE("class-level adjunctions are bijective")
{
    auto m = testfx::bimodule("s3_over_c3");
    AdjunctionPtr pack = build_adjunction(m);
    auto c3 = testfx::algebra("gf3_c3"), s3 = testfx::algebra("gf3_s3");
    ModulePtr v = testfx::trivial_module(c3), u = testfx::trivial_module(s3);
    TowerPtr tmv = shared_tower(tensor_shared(m, v)->module), tu = shared_tower(u);
    for (int n = -2; n <= 2; ++n) {
        CAPTURE(n);
        auto basis = hat_ext_basis(tmv, tu, n);
        auto target = hat_ext(*shared_tower(v), tensor_shared(pack->mv, u)->module, n);
        CHECK(basis.size() == target.dim());
        std::vector<Vec> images;
        for (const auto& z : basis)
            images.push_back(class_coordinates(tensor_adjunct_class(*pack, z, v)));
        CHECK(Subspace::span(images, target.dim(), 3).dim() == basis.size());
    }
}

TEST_CASE("transfer along M (x) M^v is transfer along M^v followed by transfer along M")
{
    for (const auto& c : bimodule_cases()) {
        CAPTURE(c.label);
        AdjunctionPtr pack = build_adjunction(c.m);
        AdjunctionPtr dual = dual_adjunction(*pack);
        AdjunctionPtr composite = build_adjunction(pack->m_mv->module);
        TowerPtr ta = shared_tower(pack->reg_a);
        for (int n = -2; n <= 2; ++n) {
            CAPTURE(n);
            for (const auto& z : hat_ext_basis(ta, ta, n)) {
                TateClass two_steps = transfer_hh(*pack, transfer_hh(*dual, z));
                TateClass direct = transfer_hh(*composite, transport(z, shared_tower(composite->reg_b), ta));
                CHECK(same_class(two_steps, transport(direct, ta, shared_tower(composite->reg_a))));
            }
        }
    }
}
