#include "finesel/bigfloat.hpp"

#include <doctest.h>

using namespace finesel;

namespace {

bool close(Real const & a, Real const & b, long bits)
{
    return abs(a - b) <= exp2i(-bits, a.precision());
}

}  // namespace

TEST_CASE("constants")
{
    mpfr_prec_t const bits = digits_to_bits(50);
    CHECK(bits >= 167);
    CHECK(Real::pi(bits).to_string(40).rfind("3.14159265358979323846264338327950288", 0) == 0);
    Real const two(2L, bits);
    CHECK(sqrt(two).to_string(25).rfind("1.41421356237309504880168", 0) == 0);
    CHECK(close(exp(log(two)), two, 160));
}

TEST_CASE("floor and conversions")
{
    CHECK(Real(Rational(-7, 2), 64).floor() == -4);
    CHECK(Real(Integer("123456789012345678901234567890"), 200).floor() == Integer("123456789012345678901234567890"));
    CHECK(Real(0.75, 64).exponent() == 0);
    CHECK(Real(8L, 64).exponent() == 4);
    CHECK(Real(-3L, 64).sign() == -1);
    CHECK(Real(64).is_zero());
}

TEST_CASE("precision follows the wider operand")
{
    Real a(1L, 64);
    Real const b(3L, 256);
    a /= b;
    CHECK(a.precision() == 256);
    CHECK(close(a * b, Real(1L, 256), 250));
}

TEST_CASE("complex arithmetic")
{
    mpfr_prec_t const bits = 200;
    Complex const i(Real(0L, bits), Real(1L, bits));
    Complex const m1 = i * i;
    CHECK(close(m1.re(), Real(-1L, bits), 190));
    CHECK(m1.im().is_zero());

    Complex const e = exp(Complex(Real(0L, bits), Real::pi(bits)));
    CHECK(close(e.re(), Real(-1L, bits), 190));
    CHECK(close(e.im(), Real(0L, bits), 190));

    Complex const z(Real(3L, bits), Real(-4L, bits));
    CHECK(close(abs(z), Real(5L, bits), 190));
    Complex const w = z / z;
    CHECK(close(w.re(), Real(1L, bits), 190));
    CHECK(close(pow(z, -2).re() * Real(625L, bits), Real(-7L, bits), 180));
    CHECK(close(pow(z, 3).im(), Real(-44L, bits), 180));
}

TEST_CASE("principal square root")
{
    mpfr_prec_t const bits = 200;
    for (long re : {-5L, -1L, 0L, 2L, 9L}) {
        for (long im : {-3L, 0L, 4L}) {
            if (re == 0 && im == 0)
                continue;
            Complex const z(Real(re, bits), Real(im, bits));
            Complex const s = sqrt(z);
            Complex const back = s * s;
            CHECK(close(back.re(), z.re(), 180));
            CHECK(close(back.im(), z.im(), 180));
            CHECK(s.re().sign() >= 0);
            if (s.re().is_zero())
                CHECK(s.im().sign() >= 0);
        }
    }
}
