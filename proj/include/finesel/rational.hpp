#pragma once

// Helpers around the GMP C++ integer and rational types.

#include <gmpxx.h>

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace finesel {

using Integer = mpz_class;
using Rational = mpq_class;

/// p-adic valuation of a nonzero integer; INT_MAX for zero.
inline int valuation(Integer const & n, unsigned long p)
{
    if (sgn(n) == 0)
        return std::numeric_limits<int>::max();
    Integer m = n;
    int v = 0;
    while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
        mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
        ++v;
    }
    return v;
}

inline int valuation(Rational const & q, unsigned long p)
{
    if (sgn(q) == 0)
        return std::numeric_limits<int>::max();
    return valuation(q.get_num(), p) - valuation(q.get_den(), p);
}

inline bool is_zero(Rational const & q) { return sgn(q) == 0; }
inline bool is_zero(Integer const & n) { return sgn(n) == 0; }

inline Rational field_int(Rational const &, long n) { return Rational(n); }

/// Nonnegative residue of n modulo m.
inline Integer mod(Integer const & n, Integer const & m)
{
    Integer r;
    mpz_mod(r.get_mpz_t(), n.get_mpz_t(), m.get_mpz_t());
    return r;
}

inline Integer pow(Integer const & base, unsigned long e)
{
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline std::int64_t to_i64(Integer const & n)
{
    if (!n.fits_slong_p())
        throw std::overflow_error("integer does not fit in 64 bits: " + n.get_str());
    return n.get_si();
}

inline std::string to_string(Rational const & q) { return q.get_str(); }

/// Prime factorization of |n| (n != 0) as (prime, exponent) pairs with
/// increasing primes. Trial division, finishing with a 64-bit
/// factorization or a primality test of the cofactor; throws
/// std::runtime_error when a large composite cofactor remains.
std::vector<std::pair<Integer, int>> factor_integer(Integer const & n);

/// Root x of x^2 = a modulo p^k, lifted from a root modulo the odd prime
/// p (p not dividing a). Throws std::domain_error when a is a non-residue.
Integer sqrt_mod_prime_power(Integer const & a, unsigned long p, int k);

/// Numerator of q modulo m, times the inverse of its denominator.
/// The denominator must be invertible modulo m.
Integer reduce_mod(Rational const & q, Integer const & m);

}  // namespace finesel
