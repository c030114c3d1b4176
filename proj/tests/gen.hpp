#pragma once

#include "stabcat/linalg.hpp"

#include <random>

namespace testgen {

inline std::mt19937_64& rng()
{
    static std::mt19937_64 g(20240917);
    return g;
}

inline stabcat::Matrix random_matrix(std::size_t r, std::size_t c, stabcat::Scalar p, double density = 1.0)
{
    stabcat::Matrix m(r, c, p);
    std::uniform_int_distribution<stabcat::Scalar> d(0, p - 1);
    std::bernoulli_distribution keep(density);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            if (keep(rng()))
                m(i, j) = d(rng());
    return m;
}

inline stabcat::Vec random_vec(std::size_t n, stabcat::Scalar p)
{
    stabcat::Vec v(n);
    std::uniform_int_distribution<stabcat::Scalar> d(0, p - 1);
    for (auto& x : v)
        x = d(rng());
    return v;
}

inline std::size_t random_size(std::size_t lo, std::size_t hi)
{
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng());
}

inline stabcat::Scalar random_prime()
{
    static const stabcat::Scalar primes[] = {2, 3, 5, 7};
    return primes[random_size(0, 3)];
}

} // namespace testgen
