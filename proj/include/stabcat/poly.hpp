#pragma once

// Univariate polynomials over GF(p); coefficients stored low degree first.

#include "stabcat/linalg.hpp"

#include <random>
#include <utility>

namespace stabcat::poly {

using Poly = Vec;

void trim(Poly& f);
/// Degree, with -1 for the zero polynomial.
int degree(const Poly& f);
Poly monic(const Poly& f, Scalar p);
Poly add(const Poly& a, const Poly& b, Scalar p);
Poly sub(const Poly& a, const Poly& b, Scalar p);
Poly mul(const Poly& a, const Poly& b, Scalar p);
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b, Scalar p);
Poly mod(const Poly& a, const Poly& b, Scalar p);
Poly gcd(Poly a, Poly b, Scalar p);
/// Bezout: returns (g, s, t) with s a + t b = g monic.
struct Bezout {
    Poly g, s, t;
};
Bezout ext_gcd(const Poly& a, const Poly& b, Scalar p);
Poly powmod(Poly base, unsigned long long e, const Poly& m, Scalar p);
/// x^(p^k) mod m, by repeated p-th powers.
Poly frobenius_power(const Poly& a, int k, const Poly& m, Scalar p);

/// Squarefree products D_d of the distinct irreducible factors of f of exact degree d
/// (f need not be squarefree). Index d holds D_d; D_d = 1 when there are none.
std::vector<Poly> distinct_degree(const Poly& f, Scalar p);
bool is_irreducible(const Poly& f, Scalar p);
/// One nontrivial monic factor of a squarefree g whose irreducible factors all have degree d.
Poly equal_degree_split(const Poly& g, int d, Scalar p, std::mt19937_64& rng);

/// Splits f as f = a * b with gcd(a, b) = 1 and both of positive degree, when possible.
/// Returns nullopt if f is a power of one irreducible.
std::optional<std::pair<Poly, Poly>> coprime_split(const Poly& f, Scalar p, std::mt19937_64& rng);

} // namespace stabcat::poly
