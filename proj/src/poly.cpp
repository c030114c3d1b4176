#include "stabcat/poly.hpp"

namespace stabcat::poly {

void trim(Poly& f)
{
    while (!f.empty() && f.back() == 0)
        f.pop_back();
}

int degree(const Poly& f)
{
    for (std::size_t i = f.size(); i > 0; --i)
        if (f[i - 1])
            return static_cast<int>(i - 1);
    return -1;
}

Poly monic(const Poly& f, Scalar p)
{
    Poly g = f;
    trim(g);
    if (g.empty())
        return g;
    Scalar iv = gf::inv(g.back(), p);
    for (auto& c : g)
        c = gf::mul(c, iv, p);
    return g;
}

Poly add(const Poly& a, const Poly& b, Scalar p)
{
    Poly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i)
        r[i] = gf::add(r[i], b[i], p);
    trim(r);
    return r;
}

Poly sub(const Poly& a, const Poly& b, Scalar p)
{
    Poly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i)
        r[i] = gf::sub(r[i], b[i], p);
    trim(r);
    return r;
}

Poly mul(const Poly& a, const Poly& b, Scalar p)
{
    if (degree(a) < 0 || degree(b) < 0)
        return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i])
            continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = gf::add(r[i + j], gf::mul(a[i], b[j], p), p);
    }
    trim(r);
    return r;
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b, Scalar p)
{
    const int db = degree(b);
    if (db < 0)
        throw UsageError("polynomial division by zero");
    Poly r = a;
    trim(r);
    const int da = degree(r);
    if (da < db)
        return {{}, r};
    Poly q(static_cast<std::size_t>(da - db + 1), 0);
    const Scalar lead_inv = gf::inv(b[static_cast<std::size_t>(db)], p);
    for (int i = da; i >= db; --i) {
        Scalar c = r[static_cast<std::size_t>(i)];
        if (!c)
            continue;
        Scalar f = gf::mul(c, lead_inv, p);
        q[static_cast<std::size_t>(i - db)] = f;
        for (int j = 0; j <= db; ++j) {
            auto k = static_cast<std::size_t>(i - db + j);
            r[k] = gf::sub(r[k], gf::mul(f, b[static_cast<std::size_t>(j)], p), p);
        }
    }
    trim(q);
    trim(r);
    return {q, r};
}

Poly mod(const Poly& a, const Poly& b, Scalar p) { return divmod(a, b, p).second; }

Poly gcd(Poly a, Poly b, Scalar p)
{
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a, p);
}

Bezout ext_gcd(const Poly& a, const Poly& b, Scalar p)
{
    Poly r0 = a, r1 = b, s0 = {1}, s1 = {}, t0 = {}, t1 = {1};
    trim(r0);
    trim(r1);
    while (!r1.empty()) {
        auto [q, r] = divmod(r0, r1, p);
        Poly s2 = sub(s0, mul(q, s1, p), p);
        Poly t2 = sub(t0, mul(q, t1, p), p);
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.empty())
        return {{}, {}, {}};
    Scalar iv = gf::inv(r0.back(), p);
    return {monic(r0, p), mul(s0, {iv}, p), mul(t0, {iv}, p)};
}

Poly powmod(Poly base, unsigned long long e, const Poly& m, Scalar p)
{
    Poly result = mod({1}, m, p);
    base = mod(base, m, p);
    while (e) {
        if (e & 1)
            result = mod(mul(result, base, p), m, p);
        base = mod(mul(base, base, p), m, p);
        e >>= 1;
    }
    return result;
}

Poly frobenius_power(const Poly& a, int k, const Poly& m, Scalar p)
{
    Poly r = mod(a, m, p);
    for (int i = 0; i < k; ++i)
        r = powmod(r, p, m, p);
    return r;
}

std::vector<Poly> distinct_degree(const Poly& f_in, Scalar p)
{
    Poly f = monic(f_in, p);
    const int n = degree(f);
    std::vector<Poly> out(static_cast<std::size_t>(std::max(n, 0) + 1), Poly{1});
    if (n <= 0)
        return out;
    Poly found = {1};
    Poly h = {0, 1};
    const Poly x = {0, 1};
    for (int d = 1; d <= n; ++d) {
        h = powmod(h, p, f, p);
        Poly g = gcd(f, sub(h, x, p), p);
        // g collects distinct irreducibles of degree dividing d; drop those found earlier
        Poly dd = divmod(g, gcd(g, found, p), p).first;
        out[static_cast<std::size_t>(d)] = monic(dd, p);
        found = mul(found, dd, p);
    }
    return out;
}

bool is_irreducible(const Poly& f, Scalar p)
{
    const int n = degree(f);
    if (n < 1)
        return false;
    auto dd = distinct_degree(f, p);
    return dd[static_cast<std::size_t>(n)] == monic(f, p);
}

Poly equal_degree_split(const Poly& g_in, int d, Scalar p, std::mt19937_64& rng)
{
    Poly g = monic(g_in, p);
    const int n = degree(g);
    if (n <= d)
        throw UsageError("equal_degree_split: nothing to split");
    std::uniform_int_distribution<Scalar> coef(0, p - 1);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        Poly a(static_cast<std::size_t>(n), 0);
        for (auto& c : a)
            c = coef(rng);
        trim(a);
        if (degree(a) < 1)
            continue;
        Poly c = gcd(g, a, p);
        if (degree(c) > 0 && degree(c) < n)
            return c;
        Poly b;
        if (p == 2) {
            // trace map a + a^2 + ... + a^(2^(d-1))
            Poly t = mod(a, g, p), acc = t;
            for (int i = 1; i < d; ++i) {
                t = mod(mul(t, t, p), g, p);
                acc = add(acc, t, p);
            }
            b = acc;
        } else {
            // a^((p^d - 1)/2) = prod_i (a^(p^i))^((p-1)/2)
            Poly t = mod(a, g, p), acc = {1};
            for (int i = 0; i < d; ++i) {
                acc = mod(mul(acc, powmod(t, (p - 1) / 2, g, p), p), g, p);
                t = powmod(t, p, g, p);
            }
            b = sub(acc, {1}, p);
        }
        c = gcd(g, b, p);
        if (degree(c) > 0 && degree(c) < n)
            return c;
    }
    throw Error("equal_degree_split: no split found after bounded attempts");
}

std::optional<std::pair<Poly, Poly>> coprime_split(const Poly& f_in, Scalar p, std::mt19937_64& rng)
{
    Poly f = monic(f_in, p);
    const int n = degree(f);
    if (n < 2)
        return std::nullopt;
    auto dd = distinct_degree(f, p);
    Poly part;
    int parts = 0;
    for (int d = 1; d <= n; ++d) {
        const Poly& D = dd[static_cast<std::size_t>(d)];
        if (degree(D) <= 0)
            continue;
        ++parts;
        if (part.empty())
            part = degree(D) > d ? equal_degree_split(D, d, p, rng) : D;
    }
    if (parts == 1 && part == dd[static_cast<std::size_t>(n)] && degree(part) == n)
        return std::nullopt;
    // primary component of f over the irreducibles dividing `part`
    Poly primary = {1}, rest = f;
    for (;;) {
        Poly g = gcd(rest, part, p);
        if (degree(g) <= 0)
            break;
        primary = mul(primary, g, p);
        rest = divmod(rest, g, p).first;
    }
    if (degree(rest) <= 0)
        return std::nullopt;
    return std::make_pair(monic(primary, p), monic(rest, p));
}

} // namespace stabcat::poly
