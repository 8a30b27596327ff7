#pragma once

// Long Weierstrass curves y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 and
// the chord-tangent group law, generic over the coefficient field.
//
// A field type F must provide +, -, *, / and unary minus, equality,
// and the free functions is_zero(F) and field_int(F like, long n).

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>

namespace finesel {

template <class F>
struct Weierstrass {
    F a1, a2, a3, a4, a6;

    F b2() const { return F(a1 * a1 + field_int(a1, 4) * a2); }
    F b4() const { return F(field_int(a1, 2) * a4 + a1 * a3); }
    F b6() const { return F(a3 * a3 + field_int(a1, 4) * a6); }
    F b8() const
    {
        return F(a1 * a1 * a6 + field_int(a1, 4) * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4);
    }
    F c4() const
    {
        F const B2 = b2();
        return F(B2 * B2 - field_int(a1, 24) * b4());
    }
    F c6() const
    {
        F const B2 = b2();
        return F(-B2 * B2 * B2 + field_int(a1, 36) * B2 * b4() - field_int(a1, 216) * b6());
    }
    F discriminant() const
    {
        F const B2 = b2(), B4 = b4(), B6 = b6(), B8 = b8();
        return F(-B2 * B2 * B8 - field_int(a1, 8) * B4 * B4 * B4 - field_int(a1, 27) * B6 * B6 +
                 field_int(a1, 9) * B2 * B4 * B6);
    }
};

/// Affine point or the point at infinity. Default-constructed is the identity.
template <class F>
struct Point {
    bool infinity = true;
    F x{}, y{};

    static Point affine(F x_, F y_) { return Point{false, std::move(x_), std::move(y_)}; }
    bool is_identity() const { return infinity; }

    friend bool operator==(Point const & P, Point const & Q)
    {
        if (P.infinity || Q.infinity)
            return P.infinity == Q.infinity;
        return P.x == Q.x && P.y == Q.y;
    }
};

template <class F>
bool on_curve(Weierstrass<F> const & E, Point<F> const & P)
{
    if (P.infinity)
        return true;
    F const & x = P.x;
    F const & y = P.y;
    F const lhs = y * y + E.a1 * x * y + E.a3 * y;
    F const rhs = x * x * x + E.a2 * x * x + E.a4 * x + E.a6;
    return is_zero(F(lhs - rhs));
}

template <class F>
Point<F> negate(Weierstrass<F> const & E, Point<F> const & P)
{
    if (P.infinity)
        return P;
    return Point<F>::affine(P.x, F(-P.y - E.a1 * P.x - E.a3));
}

template <class F>
Point<F> add(Weierstrass<F> const & E, Point<F> const & P, Point<F> const & Q)
{
    if (P.infinity)
        return Q;
    if (Q.infinity)
        return P;
    F lambda, nu;
    if (P.x == Q.x) {
        F const s = P.y + Q.y + E.a1 * Q.x + E.a3;
        if (is_zero(s))
            return Point<F>{};
        F const & x = P.x;
        F const & y = P.y;
        F const den = field_int(x, 2) * y + E.a1 * x + E.a3;
        lambda = F((field_int(x, 3) * x * x + field_int(x, 2) * E.a2 * x + E.a4 - E.a1 * y) / den);
        nu = F((-x * x * x + E.a4 * x + field_int(x, 2) * E.a6 - E.a3 * y) / den);
    } else {
        F const dx = Q.x - P.x;
        lambda = F((Q.y - P.y) / dx);
        nu = F((P.y * Q.x - Q.y * P.x) / dx);
    }
    F const x3 = lambda * lambda + E.a1 * lambda - E.a2 - P.x - Q.x;
    F const y3 = -(lambda + E.a1) * x3 - nu - E.a3;
    return Point<F>::affine(x3, y3);
}

template <class F>
Point<F> dbl(Weierstrass<F> const & E, Point<F> const & P)
{
    return add(E, P, P);
}

template <class F>
Point<F> sub(Weierstrass<F> const & E, Point<F> const & P, Point<F> const & Q)
{
    return add(E, P, negate(E, Q));
}

/// k * P by left-to-right double-and-add; negative k allowed.
template <class F>
Point<F> multiply(Weierstrass<F> const & E, Point<F> const & P, mpz_class k)
{
    Point<F> base = P;
    if (sgn(k) < 0) {
        base = negate(E, P);
        k = -k;
    }
    Point<F> R;
    if (sgn(k) == 0 || base.infinity)
        return R;
    std::size_t const bits = mpz_sizeinbase(k.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
        R = dbl(E, R);
        if (mpz_tstbit(k.get_mpz_t(), i))
            R = add(E, R, base);
    }
    return R;
}

template <class F>
Point<F> multiply(Weierstrass<F> const & E, Point<F> const & P, std::int64_t k)
{
    return multiply(E, P, mpz_class(static_cast<long>(k)));
}

}  // namespace finesel
