#pragma once

// Multiprecision real and complex numbers on top of MPFR. The precision
// (in bits) belongs to each value; binary operations round to the larger
// precision of their operands.

#include "finesel/rational.hpp"

#include <mpfr.h>

#include <string>

namespace finesel {

mpfr_prec_t digits_to_bits(int digits);

class Real {
  public:
    explicit Real(mpfr_prec_t bits = 128);
    Real(long v, mpfr_prec_t bits);
    Real(double v, mpfr_prec_t bits);
    Real(Integer const & v, mpfr_prec_t bits);
    Real(Rational const & v, mpfr_prec_t bits);
    Real(Real const & o);
    Real(Real && o) noexcept;
    Real & operator=(Real const & o);
    Real & operator=(Real && o) noexcept;
    ~Real();

    mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
    mpfr_srcptr get() const { return v_; }
    mpfr_ptr get() { return v_; }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    std::string to_string(int digits) const;
    /// floor(x) as an integer.
    Integer floor() const;
    long exponent() const;  // x = m 2^e with 1/2 <= |m| < 1; meaningless for 0
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }

    Real & operator+=(Real const & o);
    Real & operator-=(Real const & o);
    Real & operator*=(Real const & o);
    Real & operator/=(Real const & o);
    Real operator-() const;

    friend Real operator+(Real a, Real const & b) { return a += b; }
    friend Real operator-(Real a, Real const & b) { return a -= b; }
    friend Real operator*(Real a, Real const & b) { return a *= b; }
    friend Real operator/(Real a, Real const & b) { return a /= b; }

    friend bool operator<(Real const & a, Real const & b) { return mpfr_less_p(a.v_, b.v_) != 0; }
    friend bool operator>(Real const & a, Real const & b) { return b < a; }
    friend bool operator<=(Real const & a, Real const & b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
    friend bool operator>=(Real const & a, Real const & b) { return b <= a; }

    static Real pi(mpfr_prec_t bits);

  private:
    mpfr_t v_;
};

Real sqrt(Real const & x);
Real abs(Real const & x);
Real exp(Real const & x);
Real log(Real const & x);
Real cos(Real const & x);
Real sin(Real const & x);
Real atan2(Real const & y, Real const & x);
Real pow(Real const & x, long n);
/// 2^e, exactly.
Real exp2i(long e, mpfr_prec_t bits);

class Complex {
  public:
    explicit Complex(mpfr_prec_t bits = 128) : re_(bits), im_(bits) {}
    Complex(Real re, Real im) : re_(std::move(re)), im_(std::move(im)) {}
    explicit Complex(Real re) : re_(re), im_(0L, re.precision()) {}

    Real const & re() const { return re_; }
    Real const & im() const { return im_; }
    mpfr_prec_t precision() const { return re_.precision(); }

    Complex & operator+=(Complex const & o);
    Complex & operator-=(Complex const & o);
    Complex & operator*=(Complex const & o);
    Complex & operator*=(Real const & o);
    Complex & operator/=(Complex const & o);
    Complex operator-() const { return {-re_, -im_}; }

    friend Complex operator+(Complex a, Complex const & b) { return a += b; }
    friend Complex operator-(Complex a, Complex const & b) { return a -= b; }
    friend Complex operator*(Complex a, Complex const & b) { return a *= b; }
    friend Complex operator*(Complex a, Real const & b) { return a *= b; }
    friend Complex operator*(Real const & b, Complex a) { return a *= b; }
    friend Complex operator/(Complex a, Complex const & b) { return a /= b; }

    Complex conj() const { return {re_, -im_}; }
    Real norm() const { return re_ * re_ + im_ * im_; }

  private:
    Real re_, im_;
};

Real abs(Complex const & z);
Real arg(Complex const & z);
/// Principal square root.
Complex sqrt(Complex const & z);
Complex exp(Complex const & z);
Complex pow(Complex const & z, long n);

}  // namespace finesel
