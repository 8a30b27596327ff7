#pragma once

// Exact integer and modular arithmetic on 64-bit values.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace finesel {

using i64 = std::int64_t;
using u64 = std::uint64_t;

/// Prime factorization of a positive integer. Primes are strictly increasing.
struct Factorization {
    u64 value = 1;
    std::vector<std::pair<u64, int>> factors;

    u64 recompose() const;
    std::vector<u64> primes() const;
    std::vector<u64> divisors() const;
};

u64 mulmod(u64 a, u64 b, u64 m);
u64 powmod(u64 base, u64 exp, u64 m);
/// Least non-negative residue of a modulo m (m > 0).
i64 mod(i64 a, i64 m);
/// Inverse of a modulo m; throws std::domain_error when gcd(a, m) != 1.
i64 invmod(i64 a, i64 m);

/// Deterministic Miller-Rabin for the full 64-bit range.
bool is_prime(i64 n);

/// Trial division with a primality short-cut on the remaining cofactor.
Factorization factorize(u64 n);

/// Euler's totient. Throws std::domain_error for n == 0.
u64 euler_phi(u64 n);

/// Kronecker symbol (a|n), defined for every n including 0 and negative n.
int kronecker(i64 a, i64 n);

/// Square root of a modulo an odd prime p by Tonelli-Shanks. The
/// non-residue used by the algorithm is the least one, so the result is
/// deterministic. Returns std::nullopt when a is a non-residue.
std::optional<i64> sqrt_mod(i64 a, i64 p);

/// Chinese remainder for coprime moduli; returns x mod (m1*m2).
i64 crt(i64 r1, i64 m1, i64 r2, i64 m2);

u64 ipow(u64 base, unsigned exp);
u64 lcm(u64 a, u64 b);

/// Primes up to and including `bound`.
std::vector<i64> primes_up_to(i64 bound);

}  // namespace finesel
