#include "finesel/arith.hpp"

#include <algorithm>
#include <numeric>

namespace finesel {

u64 Factorization::recompose() const
{
    u64 v = 1;
    for (auto const & [q, e] : factors)
        v *= ipow(q, static_cast<unsigned>(e));
    return v;
}

std::vector<u64> Factorization::primes() const
{
    std::vector<u64> out;
    out.reserve(factors.size());
    for (auto const & f : factors)
        out.push_back(f.first);
    return out;
}

std::vector<u64> Factorization::divisors() const
{
    std::vector<u64> divs{1};
    for (auto const & [q, e] : factors) {
        std::size_t const n = divs.size();
        u64 qk = 1;
        for (int k = 1; k <= e; ++k) {
            qk *= q;
            for (std::size_t i = 0; i < n; ++i)
                divs.push_back(divs[i] * qk);
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

u64 mulmod(u64 a, u64 b, u64 m)
{
    return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % m);
}

u64 powmod(u64 base, u64 exp, u64 m)
{
    if (m == 1)
        return 0;
    u64 result = 1;
    base %= m;
    while (exp) {
        if (exp & 1)
            result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return result;
}

i64 mod(i64 a, i64 m)
{
    i64 r = a % m;
    return r < 0 ? r + m : r;
}

i64 invmod(i64 a, i64 m)
{
    i64 old_r = mod(a, m), r = m;
    i64 old_s = 1, s = 0;
    while (r != 0) {
        i64 const q = old_r / r;
        std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
        std::tie(old_s, s) = std::make_pair(s, old_s - q * s);
    }
    if (old_r != 1)
        throw std::domain_error("invmod: argument not invertible");
    return mod(old_s, m);
}

namespace {

bool strong_probable_prime(u64 n, u64 a)
{
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1)
        return true;
    for (int i = 1; i < s; ++i) {
        x = mulmod(x, x, n);
        if (x == n - 1)
            return true;
    }
    return false;
}

}  // namespace

bool is_prime(i64 n)
{
    if (n < 2)
        return false;
    static constexpr u64 small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    auto const un = static_cast<u64>(n);
    for (u64 q : small) {
        if (un == q)
            return true;
        if (un % q == 0)
            return false;
    }
    // These twelve bases are a proven deterministic set below 3.3e24.
    return std::all_of(std::begin(small), std::end(small),
                       [un](u64 a) { return strong_probable_prime(un, a); });
}

Factorization factorize(u64 n)
{
    Factorization f;
    f.value = n;
    if (n <= 1)
        return f;
    bool cofactor_prime = false;
    auto take = [&](u64 q) {
        int e = 0;
        while (n % q == 0) {
            n /= q;
            ++e;
        }
        if (e) {
            f.factors.emplace_back(q, e);
            cofactor_prime = is_prime(static_cast<i64>(n));
        }
    };
    take(2);
    take(3);
    cofactor_prime = cofactor_prime || is_prime(static_cast<i64>(n));
    for (u64 q = 5; !cofactor_prime && q * q <= n; q += 6) {
        take(q);
        take(q + 2);
    }
    if (n > 1)
        f.factors.emplace_back(n, 1);
    return f;
}

u64 euler_phi(u64 n)
{
    if (n == 0)
        throw std::domain_error("euler_phi: n must be positive");
    u64 phi = 1;
    for (auto const & [q, e] : factorize(n).factors)
        phi *= (q - 1) * ipow(q, static_cast<unsigned>(e - 1));
    return phi;
}

int kronecker(i64 a, i64 n)
{
    if (n == 0)
        return (a == 1 || a == -1) ? 1 : 0;
    int result = 1;
    if (n < 0) {
        n = -n;
        if (a < 0)
            result = -result;
    }
    int v = 0;
    while ((n & 1) == 0) {
        n >>= 1;
        ++v;
    }
    if (v > 0) {
        if ((a & 1) == 0)
            return 0;
        i64 const a8 = mod(a, 8);
        if ((v & 1) && (a8 == 3 || a8 == 5))
            result = -result;
    }
    // Jacobi symbol (a|n), n odd positive.
    i64 m = n;
    i64 b = mod(a, m);
    while (b != 0) {
        while ((b & 1) == 0) {
            b >>= 1;
            i64 const m8 = m % 8;
            if (m8 == 3 || m8 == 5)
                result = -result;
        }
        std::swap(b, m);
        if (b % 4 == 3 && m % 4 == 3)
            result = -result;
        b %= m;
    }
    return m == 1 ? result : 0;
}

std::optional<i64> sqrt_mod(i64 a, i64 p)
{
    a = mod(a, p);
    if (a == 0)
        return 0;
    if (kronecker(a, p) != 1)
        return std::nullopt;
    auto const up = static_cast<u64>(p);
    auto const ua = static_cast<u64>(a);
    if (p % 4 == 3)
        return static_cast<i64>(powmod(ua, (up + 1) / 4, up));
    u64 q = up - 1;
    int s = 0;
    while ((q & 1) == 0) {
        q >>= 1;
        ++s;
    }
    u64 z = 2;
    while (kronecker(static_cast<i64>(z), p) != -1)
        ++z;
    u64 c = powmod(z, q, up);
    u64 r = powmod(ua, (q + 1) / 2, up);
    u64 t = powmod(ua, q, up);
    int m = s;
    while (t != 1) {
        int i = 0;
        u64 tt = t;
        while (tt != 1) {
            tt = mulmod(tt, tt, up);
            ++i;
        }
        u64 b = c;
        for (int j = 0; j < m - i - 1; ++j)
            b = mulmod(b, b, up);
        r = mulmod(r, b, up);
        c = mulmod(b, b, up);
        t = mulmod(t, c, up);
        m = i;
    }
    return static_cast<i64>(r);
}

i64 crt(i64 r1, i64 m1, i64 r2, i64 m2)
{
    // x = r1 + m1 * k with m1 * k = r2 - r1 (mod m2)
    i64 const k = static_cast<i64>(mulmod(static_cast<u64>(mod(r2 - r1, m2)),
                                          static_cast<u64>(invmod(m1, m2)),
                                          static_cast<u64>(m2)));
    return mod(r1 + m1 * k, m1 * m2);
}

u64 ipow(u64 base, unsigned exp)
{
    u64 r = 1;
    while (exp--)
        r *= base;
    return r;
}

u64 lcm(u64 a, u64 b)
{
    if (a == 0 || b == 0)
        return 0;
    return a / std::gcd(a, b) * b;
}

std::vector<i64> primes_up_to(i64 bound)
{
    std::vector<i64> out;
    if (bound < 2)
        return out;
    std::vector<bool> composite(static_cast<std::size_t>(bound) + 1, false);
    for (i64 i = 2; i <= bound; ++i) {
        if (composite[static_cast<std::size_t>(i)])
            continue;
        out.push_back(i);
        for (i64 j = i * i; j <= bound; j += i)
            composite[static_cast<std::size_t>(j)] = true;
    }
    return out;
}

}  // namespace finesel
