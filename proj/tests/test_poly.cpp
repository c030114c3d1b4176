#include "doctest.h"
#include "gen.hpp"
#include "stabcat/poly.hpp"

using namespace stabcat;
using namespace stabcat::poly;

namespace {

// brute-force irreducibility: no monic factor of degree 1..deg/2
bool brute_irreducible(const Poly& f, Scalar p)
{
    const int n = degree(f);
    if (n < 1)
        return false;
    for (int d = 1; d <= n / 2; ++d) {
        std::size_t count = 1;
        for (int i = 0; i < d; ++i)
            count *= p;
        for (std::size_t code = 0; code < count; ++code) {
            Poly g(static_cast<std::size_t>(d + 1), 0);
            g[static_cast<std::size_t>(d)] = 1;
            std::size_t c = code;
            for (int i = 0; i < d; ++i) {
                g[static_cast<std::size_t>(i)] = static_cast<Scalar>(c % p);
                c /= p;
            }
            if (degree(mod(f, g, p)) < 0)
                return false;
        }
    }
    return true;
}

} // namespace

TEST_CASE("polynomial basics")
{
    CHECK(degree({}) == -1);
    CHECK(degree({0, 0}) == -1);
    CHECK(degree({1, 0, 2}) == 2);
    Poly a = {1, 1}, b = {2, 1};
    CHECK(mul(a, b, 3) == Poly{2, 0, 1});
    auto [q, r] = divmod({2, 0, 1}, a, 3);
    CHECK(q == b);
    CHECK(r.empty());
    CHECK(gcd({2, 0, 1}, {1, 1}, 3) == Poly{1, 1});
    auto bz = ext_gcd({1, 1}, {2, 1}, 3);
    CHECK(bz.g == Poly{1});
    CHECK(add(mul(bz.s, {1, 1}, 3), mul(bz.t, {2, 1}, 3), 3) == Poly{1});
}

TEST_CASE("irreducibility")
{
    CHECK(is_irreducible({1, 1, 1}, 2));
    CHECK_FALSE(is_irreducible({1, 0, 1}, 2));
    CHECK(is_irreducible({1, 1, 0, 1}, 2));
    CHECK_FALSE(is_irreducible({2, 0, 1}, 3));
    CHECK(is_irreducible({1, 0, 1}, 3));
}

TEST_CASE("coprime split")
{
    std::mt19937_64 rng(1);
    // x^2 - 1 over GF(3)
    auto s = coprime_split({2, 0, 1}, 3, rng);
    REQUIRE(s);
    CHECK(mul(s->first, s->second, 3) == Poly{2, 0, 1});
    CHECK(degree(gcd(s->first, s->second, 3)) == 0);
    // (x+1)^2 over GF(2) is primary
    CHECK_FALSE(coprime_split({1, 0, 1}, 2, rng));
    CHECK_FALSE(coprime_split({1, 1, 1}, 2, rng));
}

TEST_CASE("property: factoring tools agree with brute force")
{
    std::mt19937_64 rng(7);
    for (int t = 0; t < 300; ++t) {
        Scalar p = testgen::random_prime();
        int n = static_cast<int>(testgen::random_size(1, p == 2 ? 8 : 5));
        Poly f = testgen::random_vec(static_cast<std::size_t>(n), p);
        f.push_back(1);
        CHECK(is_irreducible(f, p) == brute_irreducible(f, p));
        auto dd = distinct_degree(f, p);
        for (int d = 1; d <= n; ++d)
            CHECK(degree(mod(f, dd[static_cast<std::size_t>(d)], p)) < 0);
        auto s = coprime_split(f, p, rng);
        if (s) {
            CHECK(mul(s->first, s->second, p) == monic(f, p));
            CHECK(degree(gcd(s->first, s->second, p)) == 0);
            CHECK(degree(s->first) > 0);
            CHECK(degree(s->second) > 0);
        } else {
            // primary: the squarefree part is a single irreducible
            int nonunit = 0;
            for (int d = 1; d <= n; ++d)
                if (degree(dd[static_cast<std::size_t>(d)]) > 0) {
                    ++nonunit;
                    CHECK(degree(dd[static_cast<std::size_t>(d)]) == d);
                }
            CHECK(nonunit == 1);
        }
    }
}
