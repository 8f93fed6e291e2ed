#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace mtc {

using Scalar = std::uint32_t;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input: bad files, dimension mismatches, inconsistent moduli.
class InputError : public Error {
public:
    using Error::Error;
};

/// An algebraic axiom failed (associativity, unit, module law, ...).
class AxiomError : public Error {
public:
    using Error::Error;
};

inline bool is_prime(std::uint64_t n)
{
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

/// Checked prime modulus below 2^31.
inline Scalar checked_modulus(std::int64_t p)
{
    if (p < 2 || p >= (std::int64_t{1} << 31) || !is_prime(static_cast<std::uint64_t>(p)))
        throw InputError("modulus " + std::to_string(p) + " is not a prime below 2^31");
    return static_cast<Scalar>(p);
}

inline Scalar reduce(std::int64_t v, Scalar p)
{
    std::int64_t r = v % static_cast<std::int64_t>(p);
    return static_cast<Scalar>(r < 0 ? r + p : r);
}

inline Scalar add_mod(Scalar a, Scalar b, Scalar p)
{
    std::uint64_t s = std::uint64_t{a} + b;
    return static_cast<Scalar>(s >= p ? s - p : s);
}

inline Scalar sub_mod(Scalar a, Scalar b, Scalar p) { return a >= b ? a - b : a + (p - b); }

inline Scalar neg_mod(Scalar a, Scalar p) { return a == 0 ? 0 : p - a; }

inline Scalar mul_mod(Scalar a, Scalar b, Scalar p)
{
    return static_cast<Scalar>((std::uint64_t{a} * b) % p);
}

inline Scalar pow_mod(Scalar a, std::uint64_t e, Scalar p)
{
    std::uint64_t r = 1 % p, b = a % p;
    while (e) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return static_cast<Scalar>(r);
}

/// Multiplicative inverse; `a` must be nonzero mod p.
inline Scalar inv_mod(Scalar a, Scalar p)
{
    if (a % p == 0) throw std::domain_error("inverse of zero in GF(p)");
    return pow_mod(a, p - 2, p);
}

} // namespace mtc
