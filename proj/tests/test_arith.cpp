#include "finesel/arith.hpp"

#include <doctest.h>

#include <numeric>
#include <random>

using namespace finesel;

TEST_CASE("kronecker values")
{
    CHECK(kronecker(-7, 13) == -1);
    CHECK(kronecker(-8, 11) == 1);
    CHECK(kronecker(12345, 1) == 1);
    CHECK(kronecker(-7, 7) == 0);
    CHECK(kronecker(-1, -1) == -1);
    CHECK(kronecker(3, 0) == 0);
    CHECK(kronecker(1, 0) == 1);
    CHECK(kronecker(-11, 751) == 1);
}

TEST_CASE("kronecker is multiplicative in both arguments")
{
    for (i64 a = -200; a <= 200; ++a)
        for (i64 b = -200; b <= 200; ++b)
            for (i64 n = -200; n <= 200; ++n) {
                // zero arguments break multiplicativity when the other side is negative
                if (n > 0 || (a != 0 && b != 0))
                    if (kronecker(a * b, n) != kronecker(a, n) * kronecker(b, n))
                        FAIL("top: " << a << " " << b << " " << n);
                if (a != 0 && b != 0 && kronecker(n, a * b) != kronecker(n, a) * kronecker(n, b))
                    FAIL("bottom: " << n << " " << a << " " << b);
            }
}

TEST_CASE("kronecker against Euler's criterion")
{
    for (i64 p : primes_up_to(200)) {
        if (p == 2)
            continue;
        for (i64 a = 0; a < p; ++a) {
            u64 const e = powmod(static_cast<u64>(a), static_cast<u64>((p - 1) / 2), static_cast<u64>(p));
            int const expect = a == 0 ? 0 : (e == 1 ? 1 : -1);
            CHECK(kronecker(a, p) == expect);
        }
    }
}

TEST_CASE("euler_phi")
{
    CHECK(euler_phi(1) == 1);
    CHECK(euler_phi(77) == 60);
    CHECK(euler_phi(751) == 750);
    CHECK_THROWS_AS(euler_phi(0), std::domain_error);
    for (u64 n = 1; n < 500; ++n) {
        u64 count = 0;
        for (u64 k = 1; k <= n; ++k)
            count += std::gcd(k, n) == 1;
        CHECK(euler_phi(n) == count);
    }
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<u64> dist(1, 100000);
    int checked = 0;
    while (checked < 1000) {
        u64 const m = dist(rng), n = dist(rng);
        if (std::gcd(m, n) != 1)
            continue;
        CHECK(euler_phi(m * n) == euler_phi(m) * euler_phi(n));
        ++checked;
    }
}

TEST_CASE("factorize")
{
    CHECK(factorize(1).factors.empty());
    auto const f77 = factorize(77);
    REQUIRE(f77.factors.size() == 2);
    CHECK(f77.factors[0] == std::pair<u64, int>{7, 1});
    CHECK(f77.factors[1] == std::pair<u64, int>{11, 1});
    auto const f = factorize(161051);
    REQUIRE(f.factors.size() == 1);
    CHECK(f.factors[0] == std::pair<u64, int>{11, 5});

    std::mt19937_64 rng(11);
    for (int i = 0; i < 2000; ++i) {
        u64 const n = rng() % 1000000000000ULL + 1;
        auto const g = factorize(n);
        CHECK(g.recompose() == n);
        u64 prev = 1;
        for (auto const & [q, e] : g.factors) {
            CHECK(q > prev);
            CHECK(is_prime(static_cast<i64>(q)));
            CHECK(e >= 1);
            prev = q;
        }
    }
    CHECK(factorize(4611686014132420609ULL).recompose() == 4611686014132420609ULL);
}

TEST_CASE("is_prime")
{
    CHECK(is_prime(751));
    CHECK_FALSE(is_prime(1));
    CHECK_FALSE(is_prime(0));
    CHECK_FALSE(is_prime(77));
    CHECK(is_prime(2));
    CHECK_FALSE(is_prime(3215031751LL));
    CHECK(is_prime(9223372036854775783LL));
    auto const small = primes_up_to(10000);
    std::vector<bool> sieve(10001, true);
    sieve[0] = sieve[1] = false;
    for (int i = 2; i * i <= 10000; ++i)
        if (sieve[i])
            for (int j = i * i; j <= 10000; j += i)
                sieve[j] = false;
    for (i64 n = 0; n <= 10000; ++n)
        CHECK(is_prime(n) == sieve[static_cast<std::size_t>(n)]);
    CHECK(small.size() == 1229);
}

TEST_CASE("sqrt_mod")
{
    CHECK(sqrt_mod(0, 13) == 0);
    auto const r = sqrt_mod(2, 7);
    REQUIRE(r);
    CHECK((*r == 3 || *r == 4));
    CHECK_FALSE(sqrt_mod(-1, 11));
    for (i64 p : primes_up_to(100)) {
        if (p == 2)
            continue;
        for (i64 a = 1; a < p; ++a) {
            auto const s = sqrt_mod(a, p);
            CHECK(static_cast<bool>(s) == (kronecker(a, p) == 1));
            if (s)
                CHECK(mod(*s * *s - a, p) == 0);
        }
    }
}

TEST_CASE("crt and invmod")
{
    CHECK(crt(2, 3, 3, 5) == 8);
    CHECK(invmod(3, 7) == 5);
    CHECK_THROWS_AS(invmod(6, 9), std::domain_error);
}
