#include "finesel/bigfloat.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

namespace finesel {

namespace {

mpfr_prec_t join(Real const & a, Real const & b) { return std::max(a.precision(), b.precision()); }

void widen(Real & a, mpfr_prec_t bits)
{
    if (a.precision() < bits)
        mpfr_prec_round(a.get(), bits, MPFR_RNDN);
}

}  // namespace

mpfr_prec_t digits_to_bits(int digits)
{
    return static_cast<mpfr_prec_t>(std::ceil(digits * 3.3219280948873623)) + 16;
}

Real::Real(mpfr_prec_t bits)
{
    mpfr_init2(v_, bits);
    mpfr_set_zero(v_, 1);
}

Real::Real(long v, mpfr_prec_t bits)
{
    mpfr_init2(v_, bits);
    mpfr_set_si(v_, v, MPFR_RNDN);
}

Real::Real(double v, mpfr_prec_t bits)
{
    mpfr_init2(v_, bits);
    mpfr_set_d(v_, v, MPFR_RNDN);
}

Real::Real(Integer const & v, mpfr_prec_t bits)
{
    mpfr_init2(v_, bits);
    mpfr_set_z(v_, v.get_mpz_t(), MPFR_RNDN);
}

Real::Real(Rational const & v, mpfr_prec_t bits)
{
    mpfr_init2(v_, bits);
    mpfr_set_q(v_, v.get_mpq_t(), MPFR_RNDN);
}

Real::Real(Real const & o)
{
    mpfr_init2(v_, o.precision());
    mpfr_set(v_, o.v_, MPFR_RNDN);
}

Real::Real(Real && o) noexcept
{
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, o.v_);
}

Real & Real::operator=(Real const & o)
{
    if (this != &o) {
        mpfr_set_prec(v_, o.precision());
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
}

Real & Real::operator=(Real && o) noexcept
{
    mpfr_swap(v_, o.v_);
    return *this;
}

Real::~Real() { mpfr_clear(v_); }

std::string Real::to_string(int digits) const
{
    std::unique_ptr<char[]> buf(new char[static_cast<std::size_t>(digits) + 64]);
    mpfr_snprintf(buf.get(), static_cast<std::size_t>(digits) + 64, "%.*Rg", digits, v_);
    return buf.get();
}

Integer Real::floor() const
{
    Integer r;
    mpfr_get_z(r.get_mpz_t(), v_, MPFR_RNDD);
    return r;
}

long Real::exponent() const { return mpfr_get_exp(v_); }

Real & Real::operator+=(Real const & o)
{
    widen(*this, o.precision());
    mpfr_add(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}

Real & Real::operator-=(Real const & o)
{
    widen(*this, o.precision());
    mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}

Real & Real::operator*=(Real const & o)
{
    widen(*this, o.precision());
    mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}

Real & Real::operator/=(Real const & o)
{
    widen(*this, o.precision());
    mpfr_div(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}

Real Real::operator-() const
{
    Real r(*this);
    mpfr_neg(r.v_, r.v_, MPFR_RNDN);
    return r;
}

Real Real::pi(mpfr_prec_t bits)
{
    Real r(bits);
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
}

#define FINESEL_UNARY(name, fn)                  \
    Real name(Real const & x)                    \
    {                                            \
        Real r(x.precision());                   \
        fn(r.get(), x.get(), MPFR_RNDN);         \
        return r;                                \
    }

FINESEL_UNARY(sqrt, mpfr_sqrt)
FINESEL_UNARY(abs, mpfr_abs)
FINESEL_UNARY(exp, mpfr_exp)
FINESEL_UNARY(log, mpfr_log)
FINESEL_UNARY(cos, mpfr_cos)
FINESEL_UNARY(sin, mpfr_sin)

#undef FINESEL_UNARY

Real atan2(Real const & y, Real const & x)
{
    Real r(join(y, x));
    mpfr_atan2(r.get(), y.get(), x.get(), MPFR_RNDN);
    return r;
}

Real pow(Real const & x, long n)
{
    Real r(x.precision());
    mpfr_pow_si(r.get(), x.get(), n, MPFR_RNDN);
    return r;
}

Real exp2i(long e, mpfr_prec_t bits)
{
    Real r(1L, bits);
    mpfr_mul_2si(r.get(), r.get(), e, MPFR_RNDN);
    return r;
}

Complex & Complex::operator+=(Complex const & o)
{
    re_ += o.re_;
    im_ += o.im_;
    return *this;
}

Complex & Complex::operator-=(Complex const & o)
{
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
}

Complex & Complex::operator*=(Complex const & o)
{
    Real const r = re_ * o.re_ - im_ * o.im_;
    im_ = re_ * o.im_ + im_ * o.re_;
    re_ = r;
    return *this;
}

Complex & Complex::operator*=(Real const & o)
{
    re_ *= o;
    im_ *= o;
    return *this;
}

Complex & Complex::operator/=(Complex const & o)
{
    Real const n = o.norm();
    Real const r = (re_ * o.re_ + im_ * o.im_) / n;
    im_ = (im_ * o.re_ - re_ * o.im_) / n;
    re_ = r;
    return *this;
}

Real abs(Complex const & z)
{
    Real r(z.precision());
    mpfr_hypot(r.get(), z.re().get(), z.im().get(), MPFR_RNDN);
    return r;
}

Real arg(Complex const & z) { return atan2(z.im(), z.re()); }

Complex sqrt(Complex const & z)
{
    mpfr_prec_t const bits = z.precision();
    if (z.re().is_zero() && z.im().is_zero())
        return Complex(bits);
    Real const r = abs(z);
    Real const two(2L, bits);
    Real a = sqrt((r + z.re()) / two);
    Real b = sqrt((r - z.re()) / two);
    if (z.im().sign() < 0)
        b = -b;
    // recover the smaller component from the larger to avoid cancellation
    if (z.re().sign() >= 0)
        b = z.im() / (two * a);
    else
        a = z.im() / (two * b);
    return {a, b};
}

Complex exp(Complex const & z)
{
    Real const m = exp(z.re());
    return {m * cos(z.im()), m * sin(z.im())};
}

Complex pow(Complex const & z, long n)
{
    if (n < 0) {
        Complex one(Real(1L, z.precision()));
        return one / pow(z, -n);
    }
    Complex result(Real(1L, z.precision()));
    Complex base = z;
    while (n) {
        if (n & 1)
            result *= base;
        base *= base;
        n >>= 1;
    }
    return result;
}

}  // namespace finesel
