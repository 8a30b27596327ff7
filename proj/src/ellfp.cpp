#include "finesel/ellfp.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace finesel {

namespace {

std::vector<char> square_table(i64 p)
{
    std::vector<char> sq(static_cast<std::size_t>(p), 0);
    for (i64 y = 0; y < p; ++y)
        sq[static_cast<std::size_t>(mulmod(static_cast<u64>(y), static_cast<u64>(y), static_cast<u64>(p)))] = 1;
    return sq;
}

template <class F>
F curve_disc_y(Weierstrass<F> const & E, F const & x)
{
    // (2y + a1 x + a3)^2 = 4 x^3 + b2 x^2 + 2 b4 x + b6
    F const h = E.a1 * x + E.a3;
    F const f = ((x + E.a2) * x + E.a4) * x + E.a6;
    return h * h + field_int(x, 4) * f;
}

// w-integral image of x in Z/ell^k, or nullopt when v_w(x) < 0.
std::optional<Integer> split_residue(QuadElem const & x, long ell, i64 root, int k)
{
    Integer const L = ell;
    Integer const Lk = pow(L, static_cast<unsigned long>(k));
    Integer const delta = sqrt_mod_prime_power(Integer(static_cast<long>(x.disc())), static_cast<unsigned long>(ell), k);
    Integer d = lcm(x.re().get_den(), x.im().get_den());
    Integer const A = x.re().get_num() * (d / x.re().get_den());
    Integer const B = x.im().get_num() * (d / x.im().get_den());
    // pick the lift congruent to root modulo ell
    Integer dl = delta;
    if (mod(dl, L) != mod(Integer(static_cast<long>(root)), L))
        dl = mod(Integer(-dl), Lk);
    Integer num = mod(Integer(A + B * dl), Lk);
    int const vd = valuation(d, static_cast<unsigned long>(ell));
    int const vn = sgn(num) == 0 ? k : valuation(num, static_cast<unsigned long>(ell));
    if (vn < vd)
        return std::nullopt;
    Integer const Lvd = pow(L, static_cast<unsigned long>(vd));
    Integer const unit = d / Lvd;
    Integer inv;
    mpz_invert(inv.get_mpz_t(), unit.get_mpz_t(), Lk.get_mpz_t());
    Integer q;
    mpz_divexact(q.get_mpz_t(), num.get_mpz_t(), Lvd.get_mpz_t());
    return mod(Integer(q * inv), Lk);
}

int precision_for(QuadElem const & x, long ell)
{
    Rational const n = x.norm();
    int v = sgn(n) == 0 ? 0 : std::abs(valuation(n, static_cast<unsigned long>(ell)));
    int vd = valuation(Integer(lcm(x.re().get_den(), x.im().get_den())), static_cast<unsigned long>(ell));
    return v + 2 * vd + 2;
}

}  // namespace

long count_points(Weierstrass<Fp> const & E)
{
    i64 const p = E.a1.prime();
    if (is_zero(E.discriminant()))
        throw SingularCurve("count_points: singular curve modulo " + std::to_string(p));
    long count = 1;
    if (p == 2) {
        for (i64 x = 0; x < 2; ++x)
            for (i64 y = 0; y < 2; ++y)
                if (on_curve(E, Point<Fp>::affine(Fp(x, 2), Fp(y, 2))))
                    ++count;
        return count;
    }
    auto const sq = square_table(p);
    for (i64 x = 0; x < p; ++x) {
        i64 const d = curve_disc_y(E, Fp(x, p)).value();
        if (d == 0)
            count += 1;
        else if (sq[static_cast<std::size_t>(d)])
            count += 2;
    }
    return count;
}

long trace_ap(CurveQ const & E, long p)
{
    if (!E.has_good_reduction(p))
        throw BadReduction("trace_ap: bad reduction at " + std::to_string(p));
    return p + 1 - count_points(E.mod_p(p));
}

long order_fp2(long ap, long p)
{
    return p * p + 1 - (ap * ap - 2 * p);
}

bool is_supersingular(CurveQ const & E, long p)
{
    return trace_ap(E, p) == 0;
}

int split_valuation(QuadElem const & x, long ell, i64 root)
{
    if (is_zero(x))
        return std::numeric_limits<int>::max();
    int const k = precision_for(x, ell);
    Integer const d = lcm(x.re().get_den(), x.im().get_den());
    int const vd = valuation(d, static_cast<unsigned long>(ell));
    Integer const Lk = pow(Integer(ell), static_cast<unsigned long>(k));
    Integer const delta = sqrt_mod_prime_power(Integer(static_cast<long>(x.disc())), static_cast<unsigned long>(ell), k);
    Integer dl = delta;
    if (mod(dl, Integer(ell)) != mod(Integer(static_cast<long>(root)), Integer(ell)))
        dl = mod(Integer(-dl), Lk);
    Integer const A = x.re().get_num() * (d / x.re().get_den());
    Integer const B = x.im().get_num() * (d / x.im().get_den());
    Integer const num = mod(Integer(A + B * dl), Lk);
    if (sgn(num) == 0)
        throw std::logic_error("split_valuation: insufficient precision");
    return valuation(num, static_cast<unsigned long>(ell)) - vd;
}

Point<Fp> reduce_point_split(PointK const & P, ResiduePlace const & place)
{
    if (P.is_identity())
        return {};
    long const ell = place.ell;
    int const k = std::max(precision_for(P.x, ell), precision_for(P.y, ell));
    auto const x = split_residue(P.x, ell, place.root, k);
    auto const y = split_residue(P.y, ell, place.root, k);
    if (!x || !y)
        return {};
    return Point<Fp>::affine(Fp(mod(*x, Integer(ell)).get_si(), ell), Fp(mod(*y, Integer(ell)).get_si(), ell));
}

Point<Fp2> reduce_point_inert(PointK const & P, ResiduePlace const & place)
{
    if (P.is_identity())
        return {};
    long const ell = place.ell;
    auto const v = [ell](Rational const & q) { return valuation(q, static_cast<unsigned long>(ell)); };
    if (std::min(v(P.x.re()), v(P.x.im())) < 0 || std::min(v(P.y.re()), v(P.y.im())) < 0)
        return {};
    Integer const L = ell;
    auto const red = [&L](Rational const & q) { return reduce_mod(q, L).get_si(); };
    i64 const n = mod(P.x.disc(), ell);
    return Point<Fp2>::affine(Fp2(red(P.x.re()), red(P.x.im()), ell, n), Fp2(red(P.y.re()), red(P.y.im()), ell, n));
}

std::vector<Point<Fp>> enumerate_points(Weierstrass<Fp> const & E)
{
    i64 const p = E.a1.prime();
    std::vector<Point<Fp>> pts{Point<Fp>{}};
    for (i64 x = 0; x < p; ++x) {
        Fp const X(x, p);
        if (p == 2) {
            for (i64 y = 0; y < 2; ++y)
                if (on_curve(E, Point<Fp>::affine(X, Fp(y, 2))))
                    pts.push_back(Point<Fp>::affine(X, Fp(y, 2)));
            continue;
        }
        Fp const d = curve_disc_y(E, X);
        auto const r = sqrt_mod(d.value(), p);
        if (!r)
            continue;
        Fp const h = E.a1 * X + E.a3;
        Fp const half = Fp(2, p).inverse();
        pts.push_back(Point<Fp>::affine(X, (Fp(*r, p) - h) * half));
        if (*r != 0)
            pts.push_back(Point<Fp>::affine(X, (Fp(-*r, p) - h) * half));
    }
    return pts;
}

std::vector<Point<Fp2>> enumerate_points(Weierstrass<Fp2> const & E)
{
    i64 const p = E.a1.prime();
    i64 const n = E.a1.nonresidue();
    if (p * p > kScanLimit * 100)
        throw FieldTooLarge("enumerate_points over F_" + std::to_string(p) + "^2");
    std::vector<Point<Fp2>> pts{Point<Fp2>{}};
    for (i64 u = 0; u < p; ++u) {
        for (i64 v = 0; v < p; ++v) {
            Fp2 const X(u, v, p, n);
            if (p == 2) {
                for (i64 s = 0; s < 2; ++s)
                    for (i64 t = 0; t < 2; ++t)
                        if (on_curve(E, Point<Fp2>::affine(X, Fp2(s, t, p, n))))
                            pts.push_back(Point<Fp2>::affine(X, Fp2(s, t, p, n)));
                continue;
            }
            auto const r = sqrt_fp2(curve_disc_y(E, X));
            if (!r)
                continue;
            Fp2 const h = E.a1 * X + E.a3;
            Fp2 const half = Fp2(2, 0, p, n).inverse();
            pts.push_back(Point<Fp2>::affine(X, (*r - h) * half));
            if (!is_zero(*r))
                pts.push_back(Point<Fp2>::affine(X, (-*r - h) * half));
        }
    }
    return pts;
}

std::optional<Fp2> sqrt_fp2(Fp2 const & a)
{
    i64 const p = a.prime();
    i64 const n = a.nonresidue();
    if (is_zero(a))
        return a;
    if (p == 2)
        return a.pow(2);  // Frobenius is bijective; sqrt(a) = a^(q/2) = a^2
    if (quadratic_character(a) != 1)
        return std::nullopt;
    if (a.v() == 0) {
        if (auto r = sqrt_mod(a.u(), p))
            return Fp2(*r, 0, p, n);
        auto const s = sqrt_mod(mulmod(static_cast<u64>(a.u()), static_cast<u64>(invmod(n, p)), static_cast<u64>(p)), p);
        if (!s)
            throw std::logic_error("sqrt_fp2: inconsistent character");
        return Fp2(0, *s, p, n);
    }
    auto const m = sqrt_mod(a.norm(), p);
    if (!m)
        throw std::logic_error("sqrt_fp2: norm is not a square");
    i64 const half = invmod(2, p);
    for (i64 sign : {1, -1}) {
        i64 const c2 = mod(static_cast<i64>(mulmod(static_cast<u64>(mod(a.u() + sign * *m, p)), static_cast<u64>(half),
                                                   static_cast<u64>(p))),
                           p);
        auto const c = sqrt_mod(c2, p);
        if (!c || *c == 0)
            continue;
        i64 const d = static_cast<i64>(mulmod(static_cast<u64>(a.v()),
                                              static_cast<u64>(invmod(mod(2 * *c, p), p)), static_cast<u64>(p)));
        Fp2 const r(*c, d, p, n);
        if (r * r == a)
            return r;
    }
    throw std::logic_error("sqrt_fp2: no root found for a square");
}

}  // namespace finesel
