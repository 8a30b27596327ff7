// Tate's algorithm over Q in Cremona's formulation.

#include "finesel/ellq.hpp"

#include <climits>

namespace finesel {

namespace {

struct Model {
    Integer a1, a2, a3, a4, a6;

    Integer b2() const { return a1 * a1 + 4 * a2; }
    Integer b4() const { return 2 * a4 + a1 * a3; }
    Integer b6() const { return a3 * a3 + 4 * a6; }
    Integer b8() const
    {
        return a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    }
    Integer c4() const
    {
        Integer const B2 = b2();
        return B2 * B2 - 24 * b4();
    }
    Integer c6() const
    {
        Integer const B2 = b2();
        return -B2 * B2 * B2 + 36 * B2 * b4() - 216 * b6();
    }
    Integer disc() const
    {
        Integer const B2 = b2(), B4 = b4(), B6 = b6(), B8 = b8();
        return -B2 * B2 * B8 - 8 * B4 * B4 * B4 - 27 * B6 * B6 + 9 * B2 * B4 * B6;
    }

    // (x, y) -> (x + r, y + s x + t)
    void change(Integer const & r, Integer const & s, Integer const & t)
    {
        a6 += r * (a4 + r * (a2 + r)) - t * (a3 + r * a1 + t);
        a4 += -s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t;
        a3 += r * a1 + t + t;
        a2 += -s * a1 + 3 * r - s * s;
        a1 += s + s;
    }
};

int ord(Integer const & x, long p)
{
    return sgn(x) == 0 ? INT_MAX : valuation(x, static_cast<unsigned long>(p));
}

bool divisible(Integer const & x, long p, int k)
{
    return ord(x, p) >= k;
}

Integer md(Integer const & x, long p) { return mod(x, Integer(p)); }

Integer inv(Integer const & x, long p)
{
    Integer r;
    Integer const xm = md(x, p);
    if (mpz_invert(r.get_mpz_t(), xm.get_mpz_t(), Integer(p).get_mpz_t()) == 0)
        throw std::logic_error("tate: non-invertible residue");
    return r;
}

Integer div_exact(Integer const & x, Integer const & d)
{
    Integer q;
    mpz_divexact(q.get_mpz_t(), x.get_mpz_t(), d.get_mpz_t());
    return q;
}

// a x^2 + b x + c has a root mod p
bool quad_roots(Integer const & a, Integer const & b, Integer const & c, long p)
{
    long const A = md(a, p).get_si(), B = md(b, p).get_si(), C = md(c, p).get_si();
    if (p == 2) {
        if (C == 0)
            return true;
        return (A + B + C) % 2 == 0;
    }
    if (A == 0)
        return B != 0 || C == 0;
    long const disc = mod(B * B - 4 * A * C, p);
    return kronecker(disc, p) != -1;
}

int cubic_roots(Integer const & b, Integer const & c, Integer const & d, long p)
{
    long const B = md(b, p).get_si(), C = md(c, p).get_si(), Dd = md(d, p).get_si();
    int count = 0;
    for (long t = 0; t < p; ++t) {
        __int128 v = (static_cast<__int128>(t) * t % p * t + static_cast<__int128>(B) * t % p * t +
                      static_cast<__int128>(C) * t + Dd) % p;
        if (v == 0)
            ++count;
    }
    return count;
}

}  // namespace

TateResult tate_algorithm(Integer a1, Integer a2, Integer a3, Integer a4, Integer a6, long p)
{
    Model m{a1, a2, a3, a4, a6};
    TateResult out;
    LocalData & L = out.data;
    L.prime = p;
    Integer const delta = m.disc();
    if (sgn(delta) == 0)
        throw SingularCurve("tate: singular model");
    int const n = ord(delta, p);
    L.disc_valuation = n;
    Integer const P = p, P2 = P * P, P3 = P2 * P, P4 = P3 * P;

    if (n == 0) {
        L.kodaira = Kodaira::I0;
        L.conductor_exponent = 0;
        L.tamagawa = 1;
        return out;
    }

    // Move the singular point to (0, 0).
    {
        Integer r, t;
        Integer const b2 = m.b2(), b4 = m.b4(), b6 = m.b6(), c4 = m.c4(), c6 = m.c6();
        if (p == 2) {
            if (divisible(b2, p, 1)) {
                r = md(m.a4, p);
                t = md(r * (1 + m.a2 + m.a4) + m.a6, p);
            } else {
                r = md(m.a3, p);
                t = md(r + m.a4, p);
            }
        } else if (p == 3) {
            r = divisible(b2, p, 1) ? md(-b6, p) : md(-b2 * b4, p);
            t = md(m.a1 * r + m.a3, p);
        } else {
            if (divisible(c4, p, 1))
                r = md(-inv(12, p) * b2, p);
            else
                r = md(-inv(12 * c4, p) * (c6 + b2 * c4), p);
            t = md(-inv(2, p) * (m.a1 * r + m.a3), p);
        }
        m.change(r, 0, t);
    }
    if (!divisible(m.a3, p, 1) || !divisible(m.a4, p, 1) || !divisible(m.a6, p, 1))
        throw std::logic_error("tate: failed to move the singular point");

    if (!divisible(m.c4(), p, 1)) {
        L.kodaira = Kodaira::In;
        L.n = n;
        L.conductor_exponent = 1;
        if (quad_roots(1, m.a1, -m.a2, p)) {
            L.mult = Multiplicative::Split;
            L.tamagawa = n;
        } else {
            L.mult = Multiplicative::NonSplit;
            L.tamagawa = (n % 2 == 0) ? 2 : 1;
        }
        return out;
    }
    if (!divisible(m.a6, p, 2)) {
        L.kodaira = Kodaira::II;
        L.conductor_exponent = n;
        L.tamagawa = 1;
        return out;
    }
    if (!divisible(m.b8(), p, 3)) {
        L.kodaira = Kodaira::III;
        L.conductor_exponent = n - 1;
        L.tamagawa = 2;
        return out;
    }
    if (!divisible(m.b6(), p, 3)) {
        L.kodaira = Kodaira::IV;
        L.conductor_exponent = n - 2;
        L.tamagawa = quad_roots(1, div_exact(m.a3, P), -div_exact(m.a6, P2), p) ? 3 : 1;
        return out;
    }

    // Now p | a1, a2; p^2 | a3, a4; p^3 | a6.
    {
        Integer s, t;
        if (p == 2) {
            s = md(m.a2, 2);
            t = 2 * md(div_exact(m.a6, 4), 2);
        } else {
            s = md(-m.a1 * inv(2, p), p);
            t = mod(Integer(-m.a3 * inv(2, p)), P2);
        }
        m.change(0, s, t);
    }
    if (!divisible(m.a1, p, 1) || !divisible(m.a2, p, 1) || !divisible(m.a3, p, 2) ||
        !divisible(m.a4, p, 2) || !divisible(m.a6, p, 3))
        throw std::logic_error("tate: failed to reach the I0* normal form");

    Integer const b = div_exact(m.a2, P), c = div_exact(m.a4, P2), d = div_exact(m.a6, P3);
    Integer const w = 27 * d * d - b * b * c * c + 4 * b * b * b * d - 18 * b * c * d + 4 * c * c * c;
    Integer const x = 3 * c - b * b;

    if (!divisible(w, p, 1)) {
        L.kodaira = Kodaira::I0star;
        L.conductor_exponent = n - 4;
        L.tamagawa = 1 + cubic_roots(b, c, d, p);
        return out;
    }

    if (!divisible(x, p, 1)) {
        // Double root: move it to 0, then run the I_m* subprocedure.
        Integer r;
        if (p == 2)
            r = c;
        else if (p == 3)
            r = b * c;
        else
            r = (b * c - 9 * d) * inv(2 * x, p);
        r = P * md(r, p);
        m.change(r, 0, 0);

        int ix = 3, iy = 3;
        Integer mx = P2, my = P2;
        long cp = 0;
        while (cp == 0) {
            Integer xa2 = div_exact(m.a2, P);
            Integer xa3 = div_exact(m.a3, my);
            Integer xa4 = div_exact(m.a4, P * mx);
            Integer xa6 = div_exact(m.a6, mx * my);
            if (!divisible(xa3 * xa3 + 4 * xa6, p, 1)) {
                cp = quad_roots(1, xa3, -xa6, p) ? 4 : 2;
            } else {
                Integer t;
                if (p == 2)
                    t = my * xa6;
                else
                    t = my * md(-xa3 * inv(2, p), p);
                m.change(0, 0, t);
                my *= P;
                ++iy;
                xa2 = div_exact(m.a2, P);
                xa3 = div_exact(m.a3, my);
                xa4 = div_exact(m.a4, P * mx);
                xa6 = div_exact(m.a6, mx * my);
                if (!divisible(xa4 * xa4 - 4 * xa2 * xa6, p, 1)) {
                    cp = quad_roots(xa2, xa4, xa6, p) ? 4 : 2;
                } else {
                    Integer r2;
                    if (p == 2)
                        r2 = mx * md(xa6 * xa2, 2);
                    else
                        r2 = mx * md(-xa4 * inv(2 * xa2, p), p);
                    m.change(r2, 0, 0);
                    mx *= P;
                    ++ix;
                }
            }
        }
        L.kodaira = Kodaira::Instar;
        L.n = ix + iy - 5;
        L.conductor_exponent = n - ix - iy + 1;
        L.tamagawa = cp;
        return out;
    }

    // Triple root: move it to 0.
    {
        Integer rt = (p == 3) ? Integer(-d) : Integer(-b * inv(3, p));
        if (p == 2)
            rt = b;
        m.change(P * md(rt, p), 0, 0);
    }
    Integer const x3 = div_exact(m.a3, P2);
    Integer const x6 = div_exact(m.a6, P4);
    if (!divisible(x3 * x3 + 4 * x6, p, 1)) {
        L.kodaira = Kodaira::IVstar;
        L.conductor_exponent = n - 6;
        L.tamagawa = quad_roots(1, x3, -x6, p) ? 3 : 1;
        return out;
    }
    {
        Integer t = (p == 2) ? x6 : Integer(x3 * inv(2, p));
        t = -P2 * md(t, p);
        m.change(0, 0, t);
    }
    if (!divisible(m.a4, p, 4)) {
        L.kodaira = Kodaira::IIIstar;
        L.conductor_exponent = n - 7;
        L.tamagawa = 2;
        return out;
    }
    if (!divisible(m.a6, p, 6)) {
        L.kodaira = Kodaira::IIstar;
        L.conductor_exponent = n - 8;
        L.tamagawa = 1;
        return out;
    }
    out.minimal = false;
    return out;
}

std::string LocalData::symbol() const
{
    switch (kodaira) {
    case Kodaira::I0: return "I0";
    case Kodaira::In: return "I" + std::to_string(n);
    case Kodaira::II: return "II";
    case Kodaira::III: return "III";
    case Kodaira::IV: return "IV";
    case Kodaira::I0star: return "I0*";
    case Kodaira::Instar: return "I" + std::to_string(n) + "*";
    case Kodaira::IVstar: return "IV*";
    case Kodaira::IIIstar: return "III*";
    case Kodaira::IIstar: return "II*";
    }
    return "?";
}

int LocalData::bad_ap() const
{
    switch (mult) {
    case Multiplicative::Split: return 1;
    case Multiplicative::NonSplit: return -1;
    case Multiplicative::NotMultiplicative: return 0;
    }
    return 0;
}

char const * to_string(Multiplicative m)
{
    switch (m) {
    case Multiplicative::Split: return "split";
    case Multiplicative::NonSplit: return "nonsplit";
    case Multiplicative::NotMultiplicative: return "none";
    }
    return "?";
}

}  // namespace finesel
