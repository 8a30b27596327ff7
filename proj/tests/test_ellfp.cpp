#include "finesel/ellfp.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace finesel;

namespace {

CurveQ const & c11a1()
{
    static CurveQ const E(0, -1, 1, -10, -20);
    return E;
}

long brute_count(Weierstrass<Fp> const & E)
{
    i64 const p = E.a1.prime();
    long n = 1;
    for (i64 x = 0; x < p; ++x)
        for (i64 y = 0; y < p; ++y)
            n += on_curve(E, Point<Fp>::affine(Fp(x, p), Fp(y, p)));
    return n;
}

}  // namespace

TEST_CASE("point counts")
{
    CHECK(count_points(c11a1().mod_p(13)) == 10);
    CHECK(trace_ap(c11a1(), 13) == 4);
    CurveQ const E17(1, -1, 1, -1, -14);
    CHECK(count_points(E17.mod_p(11)) == 12);
    Weierstrass<Fp> const small{Fp(0, 3), Fp(0, 3), Fp(0, 3), Fp(1, 3), Fp(0, 3)};
    CHECK(count_points(small) == 4);
    CHECK(trace_ap(CurveQ(1, -1, 1, 0, 0), 751) == 0);
    CHECK(trace_ap(CurveQ(0, -1, 1, -2, 2), 13) == 2);
    CHECK_THROWS_AS(trace_ap(c11a1(), 11), BadReduction);
    Weierstrass<Fp> const singular{Fp(0, 5), Fp(0, 5), Fp(0, 5), Fp(0, 5), Fp(0, 5)};
    CHECK_THROWS_AS(count_points(singular), SingularCurve);
}

TEST_CASE("character sum count equals full enumeration")
{
    for (auto const & E : {c11a1(), CurveQ(1, -1, 1, -1, -14), CurveQ(1, -1, 1, -2, 0)}) {
        for (i64 p : primes_up_to(100)) {
            if (!E.has_good_reduction(p))
                continue;
            auto const Ep = E.mod_p(p);
            CHECK(count_points(Ep) == brute_count(Ep));
            CHECK(static_cast<long>(enumerate_points(Ep).size()) == count_points(Ep));
        }
    }
}

TEST_CASE("Hasse bound")
{
    for (auto const & E : {c11a1(), CurveQ(0, 1, 1, 0, 0), CurveQ(1, -1, 0, -1, 1)}) {
        for (i64 p : primes_up_to(2000)) {
            if (!E.has_good_reduction(p))
                continue;
            long const ap = trace_ap(E, p);
            CHECK(static_cast<double>(ap * ap) <= 4.0 * static_cast<double>(p));
        }
    }
}

TEST_CASE("orders over the quadratic extension")
{
    CHECK(order_fp2(0, 37) == 1444);
    CHECK(order_fp2(4, 13) == 180);
    for (auto const & E : {c11a1(), CurveQ(0, -1, 1, -8, -7)}) {
        for (i64 p : primes_up_to(50)) {
            if (p == 2 || !E.has_good_reduction(p))
                continue;
            i64 const n = least_nonresidue(p);
            auto const pts = enumerate_points(E.mod_p2(p, n));
            CHECK(static_cast<long>(pts.size()) == order_fp2(trace_ap(E, p), p));
        }
    }
}

TEST_CASE("supersingularity")
{
    CHECK(is_supersingular(c11a1(), 29));
    CHECK_FALSE(is_supersingular(c11a1(), 13));
    CHECK(is_supersingular(CurveQ(0, 1, 1, 0, 0), 37));
}

TEST_CASE("square roots in F_p^2")
{
    for (i64 p : {3, 5, 7, 13, 31}) {
        i64 const n = least_nonresidue(p);
        int squares = 0;
        for (i64 u = 0; u < p; ++u)
            for (i64 v = 0; v < p; ++v) {
                Fp2 const a(u, v, p, n);
                auto const r = sqrt_fp2(a);
                if (r) {
                    CHECK(*r * *r == a);
                    ++squares;
                }
            }
        CHECK(squares == (p * p - 1) / 2 + 1);
    }
}

TEST_CASE("reduction of points")
{
    auto const EQ = c11a1().over_K(-7);
    PointK const P = PointK::affine(QuadElem::rational(5, -7), QuadElem::rational(5, -7));
    REQUIRE(on_curve(EQ, P));
    auto const Q = reduce_point_split(P, ResiduePlace{11, false, 2});
    CHECK(Q == Point<Fp>::affine(Fp(5, 11), Fp(5, 11)));
    CHECK(reduce_point_split(PointK{}, ResiduePlace{11, false, 2}).is_identity());

    // (5, 5) mod 3 on the reduction of 11a1 mod 3, through the inert place 3 of Q(sqrt -7)
    auto const R = reduce_point_inert(P, ResiduePlace{3, true, 0});
    CHECK(R == Point<Fp2>::affine(Fp2(2, 0, 3, 2), Fp2(2, 0, 3, 2)));
    CHECK(on_curve(c11a1().mod_p2(3, 2), R));
}

TEST_CASE("split valuation")
{
    // 2 = w w' in Q(sqrt -7) is ramified-free at odd primes; use 11 = (2 + sqrt -7)(2 - sqrt -7)
    i64 const D = -7;
    QuadElem const pi(2, 1, D);
    auto const r = sqrt_mod(mod(D, 11), 11);
    REQUIRE(r);
    // one of the two places has pi as a uniformizer
    int const v1 = split_valuation(pi, 11, *r);
    int const v2 = split_valuation(pi, 11, 11 - *r);
    CHECK(v1 + v2 == 1);
    CHECK(split_valuation(QuadElem::rational(Rational(121, 3), D), 11, *r) == 2);
    CHECK(split_valuation(pi.inverse(), 11, *r) == -v1);
}

TEST_CASE("p-divisibility in the reduction")
{
    auto const Ep = c11a1().mod_p(7);
    long const n = count_points(Ep);
    REQUIRE(n == 10);
    auto const pts = enumerate_points(Ep);
    for (auto const & P : pts) {
        CHECK(divisible_by_p_in_reduction(Ep, P, 3, n, 7));
        bool const expect = [&] {
            for (auto const & X : pts)
                if (multiply(Ep, X, std::int64_t{5}) == P)
                    return true;
            return false;
        }();
        CHECK(divisible_by_p_in_reduction(Ep, P, 5, n, 7) == expect);
        CHECK(divisible_by_p_in_reduction(Ep, multiply(Ep, P, std::int64_t{5}), 5, n, 7));
    }
    CHECK(divisible_by_p_in_reduction(Ep, Point<Fp>{}, 5, n, 7));
}
