#include "finesel/rational.hpp"

#include "finesel/arith.hpp"

#include <stdexcept>

namespace finesel {

std::vector<std::pair<Integer, int>> factor_integer(Integer const & n)
{
    if (sgn(n) == 0)
        throw std::domain_error("factor_integer: zero");
    std::vector<std::pair<Integer, int>> out;
    Integer m = abs(n);
    constexpr unsigned long trial_bound = 1000000;
    for (unsigned long q = 2; q <= trial_bound; q += (q == 2 ? 1 : 2)) {
        if (m.fits_ulong_p())
            break;
        if (Integer(q) * q > m)
            break;
        if (mpz_divisible_ui_p(m.get_mpz_t(), q)) {
            int e = 0;
            while (mpz_divisible_ui_p(m.get_mpz_t(), q)) {
                mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), q);
                ++e;
            }
            out.emplace_back(Integer(q), e);
        }
    }
    if (m == 1)
        return out;
    if (m.fits_ulong_p()) {
        for (auto const & [q, e] : factorize(m.get_ui()).factors) {
            // merge with primes already removed by trial division
            if (!out.empty() && out.back().first == q)
                out.back().second += e;
            else
                out.emplace_back(Integer(static_cast<unsigned long>(q)), e);
        }
        return out;
    }
    if (mpz_probab_prime_p(m.get_mpz_t(), 40) > 0) {
        out.emplace_back(m, 1);
        return out;
    }
    throw std::runtime_error("factor_integer: composite cofactor too large: " + m.get_str());
}

Integer sqrt_mod_prime_power(Integer const & a, unsigned long p, int k)
{
    Integer const ap = mod(a, Integer(p));
    auto const r = sqrt_mod(static_cast<i64>(ap.get_ui()), static_cast<i64>(p));
    if (!r || *r == 0)
        throw std::domain_error("sqrt_mod_prime_power: no unit square root");
    Integer x = static_cast<long>(*r);
    Integer pk = p;
    for (int j = 1; j < k; ++j) {
        pk *= p;
        // x <- x - (x^2 - a) / (2x)
        Integer inv;
        Integer two_x = mod(Integer(2 * x), pk);
        mpz_invert(inv.get_mpz_t(), two_x.get_mpz_t(), pk.get_mpz_t());
        x = mod(Integer(x - (x * x - a) * inv), pk);
    }
    return x;
}

Integer reduce_mod(Rational const & q, Integer const & m)
{
    Integer inv;
    Integer den = mod(q.get_den(), m);
    if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t()) == 0)
        throw std::domain_error("reduce_mod: denominator not invertible");
    return mod(Integer(q.get_num() * inv), m);
}

}  // namespace finesel
