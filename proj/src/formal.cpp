#include "finesel/formal.hpp"

#include "finesel/ellfp.hpp"

#include <algorithm>
#include <numeric>

namespace finesel {

namespace {

using Series = std::vector<Rational>;

Series mul(Series const & a, Series const & b, int M)
{
    Series c(static_cast<std::size_t>(M), Rational(0));
    for (int i = 0; i < M && i < static_cast<int>(a.size()); ++i) {
        if (sgn(a[i]) == 0)
            continue;
        for (int j = 0; i + j < M && j < static_cast<int>(b.size()); ++j)
            c[i + j] += a[i] * b[j];
    }
    return c;
}

Series inverse(Series const & a, int M)
{
    Series c(static_cast<std::size_t>(M), Rational(0));
    c[0] = 1 / a.at(0);
    for (int n = 1; n < M; ++n) {
        Rational s = 0;
        for (int k = 1; k <= n && k < static_cast<int>(a.size()); ++k)
            s += a[k] * c[n - k];
        c[n] = -s * c[0];
    }
    return c;
}

// W(t) = w(t) / t^3 = 1 + a1 t W + a2 t^2 W + a3 t^3 W^2 + a4 t^4 W^2 + a6 t^6 W^3
Series w_over_t3(CurveQ const & E, int M)
{
    Series W(static_cast<std::size_t>(M), Rational(0));
    W[0] = 1;
    auto shift = [M](Series const & s, int k) {
        Series out(static_cast<std::size_t>(M), Rational(0));
        for (int i = 0; i + k < M; ++i)
            out[i + k] = s[i];
        return out;
    };
    for (int it = 0; it < M; ++it) {
        Series const W2 = mul(W, W, M);
        Series const W3 = mul(W2, W, M);
        Series next(static_cast<std::size_t>(M), Rational(0));
        next[0] = 1;
        auto acc = [&](Series const & s, Integer const & a, int k) {
            if (sgn(a) == 0)
                return;
            Series const sh = shift(s, k);
            for (int i = 0; i < M; ++i)
                next[i] += Rational(a) * sh[i];
        };
        acc(W, E.a1(), 1);
        acc(W, E.a2(), 2);
        acc(W2, E.a3(), 3);
        acc(W2, E.a4(), 4);
        acc(W3, E.a6(), 6);
        if (next == W)
            break;
        W = std::move(next);
    }
    return W;
}

}  // namespace

FormalLog formal_log(CurveQ const & E, int M)
{
    if (M < 2)
        throw std::invalid_argument("formal_log: M must be at least 2");
    int const L = M + 1;
    Series const U = inverse(w_over_t3(E, L), L);
    // omega / dt = (-2U + t U') / (-2U + a1 t U + a3 t^3)
    Series num(static_cast<std::size_t>(L)), den(static_cast<std::size_t>(L));
    for (int k = 0; k < L; ++k) {
        num[k] = Rational(k - 2) * U[k];
        den[k] = -2 * U[k];
        if (k >= 1)
            den[k] += Rational(E.a1()) * U[k - 1];
        if (k == 3)
            den[k] += Rational(E.a3());
    }
    Series const omega = mul(num, inverse(den, L), L);
    FormalLog out;
    out.M = M;
    out.b.assign(static_cast<std::size_t>(M) + 1, Rational(0));
    for (int n = 1; n <= M; ++n)
        out.b[n] = omega[n - 1];
    return out;
}

namespace {

// Bivariate series in s, t truncated below total degree M.
struct Bi {
    int M;
    std::vector<std::vector<Rational>> c;

    explicit Bi(int M_) : M(M_), c(static_cast<std::size_t>(M_), std::vector<Rational>(static_cast<std::size_t>(M_))) {}

    Bi & operator+=(Bi const & o)
    {
        for (int i = 0; i < M; ++i)
            for (int j = 0; i + j < M; ++j)
                c[i][j] += o.c[i][j];
        return *this;
    }
    Bi & scale(Rational const & k)
    {
        for (int i = 0; i < M; ++i)
            for (int j = 0; i + j < M; ++j)
                c[i][j] *= k;
        return *this;
    }
};

Bi operator+(Bi a, Bi const & b) { return a += b; }

Bi operator*(Bi const & a, Bi const & b)
{
    int const M = a.M;
    Bi r(M);
    for (int i = 0; i < M; ++i)
        for (int j = 0; i + j < M; ++j) {
            if (sgn(a.c[i][j]) == 0)
                continue;
            for (int k = 0; i + j + k < M; ++k)
                for (int l = 0; i + j + k + l < M; ++l)
                    if (sgn(b.c[k][l]) != 0)
                        r.c[i + k][j + l] += a.c[i][j] * b.c[k][l];
        }
    return r;
}

Bi scaled(Bi a, Rational const & k) { return a.scale(k); }

// f(G) for a univariate f and G without constant term
Bi compose(Series const & f, Bi const & G)
{
    int const M = G.M;
    Bi r(M);
    for (int n = std::min<int>(M - 1, static_cast<int>(f.size()) - 1); n >= 0; --n) {
        r = r * G;
        r.c[0][0] += f[n];
    }
    return r;
}

}  // namespace

FormalGroupLaw formal_group_law(CurveQ const & E, int M)
{
    Series const W = w_over_t3(E, M);
    Series w(static_cast<std::size_t>(M) + 1, Rational(0));  // w(z) = z^3 W(z)
    for (int n = 3; n <= M; ++n)
        w[n] = W[n - 3];

    Bi s(M), t(M);
    s.c[1][0] = 1;
    t.c[0][1] = 1;

    // lambda = (w(t) - w(s)) / (t - s)
    Bi lambda(M);
    for (int n = 3; n <= M; ++n)
        for (int k = 0; k <= n - 1; ++k)
            lambda.c[k][n - 1 - k] += w[n];
    Bi ws(M);
    for (int n = 3; n < M; ++n)
        ws.c[n][0] = w[n];
    Bi const nu = ws + scaled(lambda * s, -1);

    Rational const a1(E.a1()), a2(E.a2()), a3(E.a3()), a4(E.a4()), a6(E.a6());
    Bi const l2 = lambda * lambda;
    // third root of the cubic cut out by w = lambda z + nu, by Vieta
    Bi const num = scaled(lambda, -a1) + scaled(l2, -a3) + scaled(nu, -a2) + scaled(lambda * nu, -2 * a4) +
                   scaled(l2 * nu, -3 * a6);
    Bi g = scaled(lambda, a2) + scaled(l2, a4) + scaled(l2 * lambda, a6);  // den = 1 + g
    Series geo(static_cast<std::size_t>(M), Rational(0));
    for (int n = 0; n < M; ++n)
        geo[n] = (n % 2 == 0) ? 1 : -1;
    Bi const z3 = scaled(s, -1) + scaled(t, -1) + num * compose(geo, g);

    // inverse i(z) = z / (-1 + a1 z + a3 w(z))
    Series d(static_cast<std::size_t>(M), Rational(0));
    d[0] = -1;
    if (M > 1)
        d[1] = a1;
    for (int n = 3; n < M; ++n)
        d[n] += a3 * w[n];
    Series const dinv = inverse(d, M);
    Series inv(static_cast<std::size_t>(M), Rational(0));
    for (int n = 1; n < M; ++n)
        inv[n] = dinv[n - 1];

    Bi const F = compose(inv, z3);
    FormalGroupLaw out;
    out.M = M;
    out.c = F.c;
    return out;
}

std::string LocalPlace::describe() const
{
    if (inert)
        return "the inert prime above " + std::to_string(p);
    return "the split prime above " + std::to_string(p) + " with sqrt(" + std::to_string(D) +
           ") = " + mod(root, Integer(p)).get_str() + " mod " + std::to_string(p);
}

namespace {

LocalPlace lift(LocalPlace v, int precision)
{
    v.precision = precision;
    if (!v.inert) {
        long const r = mod(v.root, Integer(v.p)).get_si();
        Integer x = sqrt_mod_prime_power(Integer(static_cast<long>(v.D)), static_cast<unsigned long>(v.p), precision);
        Integer const pk = pow(Integer(v.p), static_cast<unsigned long>(precision));
        if (mod(x, Integer(v.p)).get_si() != r)
            x = mod(Integer(-x), pk);
        v.root = x;
    }
    return v;
}

}  // namespace

std::vector<LocalPlace> places_above(QuadField const & K, long p, int precision)
{
    i64 const D = K.disc();
    if (p < 5 || !is_prime(p) || D % p == 0)
        throw std::invalid_argument("places_above: p must be a prime >= 5 unramified in K");
    std::vector<LocalPlace> out;
    if (kronecker(D, p) == -1) {
        out.push_back(LocalPlace{p, D, true, Integer(0), precision});
        return out;
    }
    i64 const r = *sqrt_mod(D, p);
    for (i64 root : {r, p - r})
        out.push_back(lift(LocalPlace{p, D, false, Integer(static_cast<long>(root)), 1}, precision));
    return out;
}

int valuation(LocalElem const & x, long p)
{
    int const va = sgn(x.a) == 0 ? x.prec : std::min(x.prec, valuation(x.a, static_cast<unsigned long>(p)));
    int const vb = sgn(x.b) == 0 ? x.prec : std::min(x.prec, valuation(x.b, static_cast<unsigned long>(p)));
    return std::min(va, vb);
}

int local_valuation(QuadElem const & x, LocalPlace const & v)
{
    if (is_zero(x))
        return INT_MAX;
    if (v.inert)
        return std::min(valuation(x.re(), static_cast<unsigned long>(v.p)),
                        valuation(x.im(), static_cast<unsigned long>(v.p)));
    return split_valuation(x, v.p, mod(v.root, Integer(v.p)).get_si());
}

namespace {

struct PrecisionLost {};

// Arithmetic in O_v / p^prec with absolute precision tracking.
struct Ring {
    LocalPlace v;
    int cap;
    std::vector<Integer> pows;

    Ring(LocalPlace place, int cap_) : v(std::move(place)), cap(cap_)
    {
        pows.push_back(Integer(1));
        for (int i = 1; i <= 3 * cap + 64; ++i)
            pows.push_back(pows.back() * v.p);
    }

    Integer const & pk(int k) const
    {
        if (k < 0 || k >= static_cast<int>(pows.size()))
            throw PrecisionLost{};
        return pows[static_cast<std::size_t>(k)];
    }

    LocalElem reduce(Integer a, Integer b, int prec) const
    {
        if (prec <= 0)
            throw PrecisionLost{};
        prec = std::min(prec, cap);
        Integer const & m = pk(prec);
        return {mod(a, m), mod(b, m), prec};
    }

    LocalElem constant(Integer const & n) const { return reduce(n, 0, cap); }

    int val(LocalElem const & x) const { return valuation(x, v.p); }

    LocalElem add(LocalElem const & x, LocalElem const & y) const
    {
        return reduce(x.a + y.a, x.b + y.b, std::min(x.prec, y.prec));
    }
    LocalElem sub(LocalElem const & x, LocalElem const & y) const
    {
        return reduce(x.a - y.a, x.b - y.b, std::min(x.prec, y.prec));
    }
    LocalElem mul(LocalElem const & x, LocalElem const & y) const
    {
        int const prec = std::min(x.prec + val(y), y.prec + val(x));
        if (v.inert)
            return reduce(x.a * y.a + v.D * x.b * y.b, x.a * y.b + x.b * y.a, prec);
        return reduce(x.a * y.a, 0, prec);
    }
    LocalElem div_p(LocalElem const & x, int k) const
    {
        if (k == 0)
            return x;
        if (val(x) < k)
            throw std::logic_error("div_p: inexact division");
        Integer const & m = pk(k);
        Integer a, b;
        mpz_divexact(a.get_mpz_t(), x.a.get_mpz_t(), m.get_mpz_t());
        mpz_divexact(b.get_mpz_t(), x.b.get_mpz_t(), m.get_mpz_t());
        return reduce(a, b, x.prec - k);
    }
    LocalElem mul_p(LocalElem const & x, int k) const
    {
        return reduce(x.a * pk(k), x.b * pk(k), x.prec + k);
    }
    LocalElem inv_unit(LocalElem const & x) const
    {
        if (val(x) != 0)
            throw PrecisionLost{};
        Integer const & m = pk(x.prec);
        Integer n = v.inert ? Integer(x.a * x.a - v.D * x.b * x.b) : x.a;
        n = mod(n, m);
        Integer inv;
        mpz_invert(inv.get_mpz_t(), n.get_mpz_t(), m.get_mpz_t());
        if (v.inert)
            return reduce(x.a * inv, -x.b * inv, x.prec);
        return reduce(x.a * inv, 0, x.prec);
    }

    // x p^shift for x in K; throws if the result is not integral
    LocalElem embed(QuadElem const & x, int shift) const
    {
        Integer const d = lcm(x.re().get_den(), x.im().get_den());
        Integer const A = x.re().get_num() * (d / x.re().get_den());
        Integer const B = x.im().get_num() * (d / x.im().get_den());
        int const e = valuation(d, static_cast<unsigned long>(v.p));
        Integer dp;
        mpz_divexact(dp.get_mpz_t(), d.get_mpz_t(), pk(e).get_mpz_t());
        int const work = v.inert ? cap + e : std::min(cap + e, v.precision);
        Integer const & m = pk(work);
        Integer inv;
        mpz_invert(inv.get_mpz_t(), dp.get_mpz_t(), m.get_mpz_t());
        LocalElem n = v.inert ? LocalElem{mod(Integer(A * inv), m), mod(Integer(B * inv), m), work}
                              : LocalElem{mod(Integer((A + B * v.root) * inv), m), Integer(0), work};
        int const s = shift - e;
        return s >= 0 ? mul_p(n, s) : div_p(n, -s);
    }
};

struct JPoint {
    bool inf = true;
    LocalElem X, Y, Z;
};

// y^2 = x^3 + A x + B in Jacobian coordinates
struct ShortCurve {
    Ring const & R;
    LocalElem A, B;

    JPoint normalize(JPoint P) const
    {
        if (P.inf)
            return P;
        int const k = std::min({R.val(P.X) / 2, R.val(P.Y) / 3, R.val(P.Z)});
        if (k > 0) {
            P.X = R.div_p(P.X, 2 * k);
            P.Y = R.div_p(P.Y, 3 * k);
            P.Z = R.div_p(P.Z, k);
        }
        return P;
    }

    JPoint dbl(JPoint const & P) const
    {
        if (P.inf)
            return P;
        LocalElem const XX = R.mul(P.X, P.X), YY = R.mul(P.Y, P.Y), ZZ = R.mul(P.Z, P.Z);
        LocalElem const S = R.mul(R.constant(4), R.mul(P.X, YY));
        LocalElem const M = R.add(R.mul(R.constant(3), XX), R.mul(A, R.mul(ZZ, ZZ)));
        JPoint Q;
        Q.inf = false;
        Q.X = R.sub(R.mul(M, M), R.mul(R.constant(2), S));
        Q.Y = R.sub(R.mul(M, R.sub(S, Q.X)), R.mul(R.constant(8), R.mul(YY, YY)));
        Q.Z = R.mul(R.constant(2), R.mul(P.Y, P.Z));
        return normalize(Q);
    }

    JPoint add(JPoint const & P, JPoint const & Q) const
    {
        if (P.inf)
            return Q;
        if (Q.inf)
            return P;
        LocalElem const Z1Z1 = R.mul(P.Z, P.Z), Z2Z2 = R.mul(Q.Z, Q.Z);
        LocalElem const U1 = R.mul(P.X, Z2Z2), U2 = R.mul(Q.X, Z1Z1);
        LocalElem const S1 = R.mul(P.Y, R.mul(Q.Z, Z2Z2)), S2 = R.mul(Q.Y, R.mul(P.Z, Z1Z1));
        LocalElem const H = R.sub(U2, U1), r = R.sub(S2, S1);
        LocalElem const HH = R.mul(H, H), HHH = R.mul(HH, H);
        LocalElem const V = R.mul(U1, HH);
        JPoint out;
        out.inf = false;
        out.X = R.sub(R.sub(R.mul(r, r), HHH), R.mul(R.constant(2), V));
        out.Y = R.sub(R.mul(r, R.sub(V, out.X)), R.mul(S1, HHH));
        out.Z = R.mul(R.mul(P.Z, Q.Z), H);
        return normalize(out);
    }

    JPoint multiply(JPoint const & P, long n) const
    {
        JPoint acc;
        for (int bit = 62; bit >= 0; --bit) {
            acc = dbl(acc);
            if ((n >> bit) & 1)
                acc = add(acc, P);
        }
        return acc;
    }
};

// ord of sum_{n >= 1} (b_n / n) t^n; nullopt when the precision cannot separate it
std::optional<int> series_valuation(Ring const & R, FormalLog const & L, LocalElem const & t)
{
    int const k = R.val(t);
    if (k < 1 || k >= t.prec)
        return std::nullopt;
    int const target = t.prec;
    LocalElem sum = R.reduce(0, 0, target);
    LocalElem tn = t;
    for (int n = 1;; ++n) {
        int vn = 0;
        for (long m = n; m % R.v.p == 0; m /= R.v.p)
            ++vn;
        if (n * k - vn >= target && n > 1)
            break;
        if (n > L.M)
            throw std::logic_error("series_valuation: formal log too short");
        if (n > 1)
            tn = R.mul(tn, t);
        Rational const c = L.coefficient(n);
        if (sgn(c) != 0) {
            int const vc = valuation(c, static_cast<unsigned long>(R.v.p));
            Rational u = c;
            if (vc > 0)
                u /= Rational(R.pk(vc));
            else if (vc < 0)
                u *= Rational(R.pk(-vc));
            LocalElem term = R.mul(tn, R.constant(reduce_mod(u, R.pk(R.cap))));
            term = vc >= 0 ? R.mul_p(term, vc) : R.div_p(term, -vc);
            sum = R.add(sum, term);
        }
    }
    int const v = R.val(sum);
    if (v >= sum.prec)
        return std::nullopt;
    return v;
}

}  // namespace

int series_log_valuation(FormalLog const & L, Rational const & t, long p, int precision)
{
    LocalPlace v{p, 0, false, Integer(0), precision};
    Ring const R(v, precision);
    int const vt = valuation(t, static_cast<unsigned long>(p));
    if (vt < 1)
        throw std::invalid_argument("series_log_valuation: t must lie in p Z_p");
    Rational u = t / Rational(R.pk(vt));
    LocalElem const te = R.mul_p(R.constant(reduce_mod(u, R.pk(precision))), vt);
    auto const r = series_valuation(R, L, te);
    if (!r)
        throw PrecisionExhausted("series path could not separate the valuation");
    return *r;
}

namespace {

LogValuation log_valuation_at(CurveQ const & E, PointK const & P, long k, LocalPlace const & place, int cap)
{
    Ring const R(lift(place, cap + 16), cap);
    // short model X = 36x + 3 b2, Y = 108 (2y + a1 x + a3)
    i64 const D = P.x.disc();
    QuadElem const b2(Rational(E.b2()), 0, D), a1(Rational(E.a1()), 0, D), a3(Rational(E.a3()), 0, D);
    QuadElem const xs = 36 * P.x + 3 * b2;
    QuadElem const ys = 108 * (2 * P.y + a1 * P.x + a3);
    int const vx = local_valuation(xs, place);
    int const e = vx < 0 ? -vx / 2 : 0;
    JPoint J;
    J.inf = false;
    J.X = R.embed(xs, 2 * e);
    J.Y = R.embed(ys, 3 * e);
    J.Z = R.mul_p(R.constant(1), e);
    ShortCurve const C{R, R.constant(-27 * E.c4()), R.constant(-54 * E.c6())};
    JPoint const Q = C.multiply(J, k);
    if (Q.inf)
        throw std::logic_error("log_valuation: kP is the identity");
    int const vz = R.val(Q.Z);
    if (vz >= Q.Z.prec)
        throw PrecisionLost{};
    if (vz < 1)
        throw std::invalid_argument("log_valuation: kP does not lie in E_1 at " + place.describe());

    LogValuation out;
    out.t_valuation = vz;
    out.value = vz;
    out.precision = cap;

    // long-model parameter t = -Xl Z / Yl
    LocalElem const inv36 = R.inv_unit(R.constant(36));
    LocalElem const inv108 = R.inv_unit(R.constant(108));
    LocalElem const inv2 = R.inv_unit(R.constant(2));
    LocalElem const ZZ = R.mul(Q.Z, Q.Z);
    LocalElem const Xl = R.mul(R.sub(Q.X, R.mul(R.constant(3 * E.b2()), ZZ)), inv36);
    LocalElem const Yl = R.mul(R.sub(R.sub(R.mul(Q.Y, inv108), R.mul(R.constant(E.a1()), R.mul(Xl, Q.Z))),
                                     R.mul(R.constant(E.a3()), R.mul(ZZ, Q.Z))),
                               inv2);
    LocalElem const t = R.sub(R.constant(0), R.mul(R.mul(Xl, Q.Z), R.inv_unit(Yl)));
    if (R.val(t) != vz)
        throw std::logic_error("log_valuation: parameter valuation mismatch");
    out.series = series_valuation(R, formal_log(E, t.prec + 4), t);
    if (out.series && *out.series != out.value)
        throw std::logic_error("log_valuation: series and leading-term valuations disagree");
    return out;
}

}  // namespace

LogValuation log_valuation(CurveQ const & E, PointK const & P, long k, LocalPlace const & v)
{
    if (P.is_identity())
        throw std::invalid_argument("log_valuation: P is the identity");
    int cap = std::max(v.precision, 4);
    for (int attempt = 0; attempt < 5; ++attempt, cap *= 2) {
        try {
            return log_valuation_at(E, P, k, v, cap);
        } catch (PrecisionLost const &) {
        }
    }
    throw PrecisionExhausted("log_valuation: precision exhausted at " + v.describe());
}

LandingMultiple landing_multiple(CurveQ const & E, QuadField const & K, PointK const & P, long p)
{
    if (!E.has_good_reduction(p))
        throw BadReduction("landing_multiple: bad reduction at p");
    LandingMultiple out;
    long const ap = trace_ap(E, p);
    for (auto const & v : places_above(K, p, 1)) {
        ResiduePlace const rp{p, v.inert, v.inert ? 0 : mod(v.root, Integer(p)).get_si()};
        long order, n;
        if (v.inert) {
            n = order_fp2(ap, p);
            order = point_order(E.mod_p2(p, mod(K.disc(), p)), reduce_point_inert(P, rp), n);
        } else {
            n = p + 1 - ap;
            order = point_order(E.mod_p(p), reduce_point_split(P, rp), n);
        }
        out.orders.push_back(order);
        out.group_orders.push_back(n);
        out.m = std::lcm(out.m, order);
    }
    return out;
}

char const * to_string(ConditionE::Status s)
{
    switch (s) {
    case ConditionE::Status::Pass: return "pass";
    case ConditionE::Status::Fail: return "fail";
    case ConditionE::Status::Inconclusive: return "inconclusive";
    }
    return "?";
}

ConditionE condition_e_check(CurveQ const & E, QuadField const & K, long p, PointK const & yK,
                             long torsion_multiplier, int precision)
{
    ConditionE out;
    out.multiplier = torsion_multiplier;
    out.places = places_above(K, p, precision);
    if (yK.is_identity()) {
        out.note = "the Heegner point is trivial";
        return out;
    }
    auto const W = E.over_K(K.disc());
    PointK const Q = multiply(W, yK, std::int64_t{torsion_multiplier});
    if (Q.is_identity()) {
        out.note = "the Heegner point is torsion";
        return out;
    }
    LandingMultiple const L = landing_multiple(E, K, Q, p);
    out.landing = L.m;
    out.group_orders = L.group_orders;
    try {
        for (std::size_t i = 0; i < out.places.size(); ++i) {
            auto const r = log_valuation(E, Q, L.m, out.places[i]);
            out.valuations.push_back(r.value);
            if (r.value == 1 && !out.witness)
                out.witness = i;
        }
    } catch (PrecisionExhausted const & e) {
        out.note = e.what();
        out.valuations.clear();
        return out;
    }
    out.status = out.witness ? ConditionE::Status::Pass : ConditionE::Status::Fail;
    return out;
}

}  // namespace finesel
