#include "finesel/modparam.hpp"

#include "finesel/ellfp.hpp"

#include <cmath>
#include <numeric>

namespace finesel {

Newform newform_coeffs(CurveQ const & E, long n_max)
{
    if (n_max < 1)
        throw std::invalid_argument("newform_coeffs: n_max must be positive");
    Newform f;
    f.N = to_i64(E.conductor());
    f.a.assign(static_cast<std::size_t>(n_max) + 1, 0);
    f.a[1] = 1;

    std::vector<long> spf(static_cast<std::size_t>(n_max) + 1, 0);
    for (long i = 2; i <= n_max; ++i)
        if (spf[i] == 0)
            for (long j = i; j <= n_max; j += i)
                if (spf[j] == 0)
                    spf[j] = i;

    for (long n = 2; n <= n_max; ++n) {
        long const p = spf[n];
        long m = n, pk = 1;
        while (m % p == 0) {
            m /= p;
            pk *= p;
        }
        if (m > 1) {
            f.a[n] = f.a[pk] * f.a[m];
            continue;
        }
        // n = p^k
        bool const bad = f.N % p == 0;
        if (pk == p) {
            f.a[n] = bad ? E.local_data(p).bad_ap() : trace_ap(E, p);
        } else {
            long const prev = f.a[pk / p];
            f.a[n] = f.a[p] * prev - (bad ? 0 : p * f.a[pk / p / p]);
        }
    }
    return f;
}

long terms_needed(Real const & im_tau, int digits)
{
    // |q|^(M+1) / (1 - |q|) < 10^-digits, using |a_n| <= n
    double const y = im_tau.to_double();
    if (!(y > 0))
        throw std::invalid_argument("terms_needed: tau must lie in the upper half plane");
    double const log_q = -2 * M_PI * y;  // log |q|
    double const slack = -std::log1p(-std::exp(log_q));
    double const M = (digits * std::log(10.0) + slack) / -log_q;
    if (M > 1e9)
        return static_cast<long>(1e9);
    return static_cast<long>(std::ceil(M));
}

std::vector<Complex> heegner_taus(i64 N, QuadField const & K, i64 beta, mpfr_prec_t bits)
{
    std::vector<Complex> out;
    Real const root = sqrt(Real(static_cast<long>(-K.disc()), bits));
    for (auto const & form : heegner_forms(K, N, beta)) {
        Real const two_a(2 * form.a, bits);
        out.emplace_back(Real(-form.b, bits) / two_a, root / two_a);
    }
    return out;
}

namespace {

mpfr_prec_t work_bits(int digits) { return digits_to_bits(digits) + 32; }

// e^(2 pi i t)
Complex e2pi(Complex const & t)
{
    Real const two_pi = Real(2L, t.precision()) * Real::pi(t.precision());
    return exp(Complex(-(two_pi * t.im()), two_pi * t.re()));
}

long nearest(Real const & x)
{
    Real const h(0.5, x.precision());
    return (x + h).floor().get_si();
}

}  // namespace

Complex param_z(Newform const & f, Complex const & tau, int target_digits)
{
    long const M = terms_needed(tau.im(), target_digits);
    if (M > f.n_max())
        throw PrecisionUnreachable("parametrization needs " + std::to_string(M) + " coefficients, " +
                                   std::to_string(f.n_max()) + " available");
    mpfr_prec_t const bits = std::max(work_bits(target_digits), tau.precision());
    Complex t(Real(tau.re()), Real(tau.im()));
    t *= Real(1L, bits);
    Complex const q = e2pi(t);
    Complex qn(Real(1L, bits));
    Complex z(bits);
    for (long n = 1; n <= M; ++n) {
        qn *= q;
        if (f[n] != 0)
            z += qn * (Real(f[n], bits) / Real(n, bits));
    }
    return z;
}

namespace {

// Eisenstein series E4, E6 at q.
std::pair<Complex, Complex> eisenstein(Complex const & q, mpfr_prec_t bits)
{
    Complex e4(Real(1L, bits)), e6(Real(1L, bits));
    Complex qn(Real(1L, bits));
    Real const eps = exp2i(-static_cast<long>(bits) - 20, bits);
    for (long n = 1; n < 100000; ++n) {
        qn *= q;
        Real const mag = abs(qn);
        if (mag * Real(std::pow(static_cast<double>(n), 5.0) + 1, bits) < eps)
            break;
        Complex const one(Real(1L, bits));
        Complex const t = qn / (one - qn);
        Real const n3(n * n * n, bits);
        e4 += t * (Real(240L, bits) * n3);
        e6 -= t * (Real(504L, bits) * n3 * Real(n * n, bits));
    }
    return {e4, e6};
}

Real largest_real_root(Real const & b2, Real const & b4, Real const & b6, mpfr_prec_t bits)
{
    // f(x) = 4x^3 + b2 x^2 + 2 b4 x + b6; Newton from the right is monotone
    Real const four(4L, bits), two(2L, bits), three(3L, bits);
    Real x = Real(1L, bits) + (abs(b2) + abs(two * b4) + abs(b6)) / four;
    Real const eps = exp2i(-static_cast<long>(bits) + 8, bits);
    for (int it = 0; it < 100000; ++it) {
        Real const fx = ((four * x + b2) * x + two * b4) * x + b6;
        Real const dfx = (Real(12L, bits) * x + two * b2) * x + two * b4;
        if (dfx.is_zero())
            break;
        Real const step = fx / dfx;
        x -= step;
        if (abs(step) <= eps * (Real(1L, bits) + abs(x)))
            break;
    }
    return x;
}

Real agm(Real a, Real b)
{
    mpfr_prec_t const bits = std::max(a.precision(), b.precision());
    Real const eps = exp2i(-static_cast<long>(bits) + 4, bits);
    Real const two(2L, bits);
    for (int it = 0; it < 10000 && abs(a - b) > eps * abs(a); ++it) {
        Real const m = (a + b) / two;
        b = sqrt(a * b);
        a = m;
    }
    return a;
}

void reduce_basis(Complex & w1, Complex & w2)
{
    for (int it = 0; it < 1000; ++it) {
        Complex tau = w2 / w1;
        long const k = nearest(tau.re());
        if (k != 0) {
            w2 -= w1 * Real(k, w1.precision());
            tau = w2 / w1;
        }
        if (tau.norm() < Real(1L, w1.precision())) {
            Complex const t = w1;
            w1 = w2;
            w2 = -t;
            continue;
        }
        return;
    }
}

}  // namespace

PeriodLattice period_lattice(CurveQ const & E, int target_digits)
{
    mpfr_prec_t const bits = work_bits(target_digits);
    Real const b2(E.b2(), bits), b4(E.b4(), bits), b6(E.b6(), bits);
    Real const two(2L, bits), three(3L, bits), four(4L, bits), eight(8L, bits);
    Real const pi = Real::pi(bits);
    Real const e1 = largest_real_root(b2, b4, b6, bits);
    PeriodLattice L;
    if (sgn(E.discriminant()) > 0) {
        Real const s = b2 + four * e1;
        Real const c = two * b4 + e1 * s;
        Real disc = s * s - Real(16L, bits) * c;
        if (disc.sign() < 0)
            disc = Real(bits);
        Real const e2 = (-s + sqrt(disc)) / eight;
        Real const e3 = (-s - sqrt(disc)) / eight;
        L.rectangular = true;
        L.omega1 = pi / agm(sqrt(e1 - e3), sqrt(e1 - e2));
        L.omega2 = Complex(Real(bits), pi / agm(sqrt(e1 - e3), sqrt(e2 - e3)));
    } else {
        Real const a = three * e1 + b2 / four;
        Real const b = sqrt(three * e1 * e1 + b2 * e1 / two + b4 / two);
        L.omega1 = two * pi / agm(two * sqrt(b), sqrt(two * b + a));
        L.omega2 = Complex(L.omega1 / two, pi / agm(two * sqrt(b), sqrt(two * b - a)));
    }
    L.w1 = Complex(L.omega1);
    L.w2 = L.omega2;
    reduce_basis(L.w1, L.w2);

    auto const [e4, e6] = eisenstein(e2pi(L.w2 / L.w1), bits);
    Complex const k = Complex(two * pi) / L.w1;
    Complex const k2 = k * k;
    Complex const c4 = k2 * k2 * e4;
    Complex const c6 = k2 * k2 * k2 * e6;
    Real const C4(E.c4(), bits), C6(E.c6(), bits);
    auto rel = [&](Complex const & got, Real const & want) {
        Real const err = abs(got - Complex(want));
        return want.is_zero() ? err : err / abs(want);
    };
    L.c4_error = rel(c4, C4);
    L.c6_error = rel(c6, C6);
    return L;
}

ComplexPoint complex_to_curve(Complex const & z, PeriodLattice const & L, CurveQ const & E)
{
    mpfr_prec_t const bits = std::max(z.precision(), L.w1.precision());
    Complex const tau = L.w2 / L.w1;
    Complex u = z / L.w1;
    long const m = nearest(u.im() / tau.im());
    u -= tau * Real(m, bits);
    long const n = nearest(u.re());
    u -= Complex(Real(n, bits));

    Real dist = abs(u);
    for (int i = -1; i <= 1; ++i)
        for (int j = -1; j <= 1; ++j)
            dist = std::min(dist, abs(u - tau * Real(long(j), bits) - Complex(Real(long(i), bits))),
                            [](Real const & a, Real const & b) { return a < b; });
    if (dist < exp2i(-static_cast<long>(bits) / 3, bits))
        throw NearLatticePoint("z is within 2^-" + std::to_string(bits / 3) + " of the period lattice");

    Complex const one(Real(1L, bits));
    Complex const w = e2pi(u);
    Complex const wi = one / w;
    Complex const q = e2pi(tau);
    auto const frac2 = [&](Complex const & v) { Complex const d = one - v; return v / (d * d); };
    auto const frac3 = [&](Complex const & v) {
        Complex const d = one - v;
        return v * (one + v) / (d * d * d);
    };
    Complex S = Complex(Real(1L, bits) / Real(12L, bits)) + frac2(w);
    Complex T = frac3(w);
    Real const big = std::max(abs(w), abs(wi), [](Real const & a, Real const & b) { return a < b; });
    Real const eps = exp2i(-static_cast<long>(bits) - 16, bits);
    Complex qn = one;
    for (long k = 1; k < 1000000; ++k) {
        qn *= q;
        Complex const a = qn * w, b = qn * wi;
        S += frac2(a) + frac2(b) - Complex(Real(2L, bits)) * frac2(qn);
        T += frac3(a) - frac3(b);
        if (abs(qn) * big < eps)
            break;
    }
    Real const two_pi = Real(2L, bits) * Real::pi(bits);
    Complex const i(Real(bits), Real(1L, bits));
    Complex const c = i * Complex(two_pi) / L.w1;  // 2 pi i / w1
    Complex const wp = c * c * S;
    Complex const dwp = c * c * c * T;

    Real const a1(E.a1(), bits), a3(E.a3(), bits), b2(E.b2(), bits);
    Complex const x = wp - Complex(b2 / Real(12L, bits));
    Complex const y = (dwp - x * a1 - Complex(a3)) * (Real(1L, bits) / Real(2L, bits));
    return {x, y};
}

std::optional<Rational> recognize_rational(Real const & x, Integer const & denom_bound, Real const & tol)
{
    mpfr_prec_t const bits = x.precision();
    Integer h1 = 1, h2 = 0, k1 = 0, k2 = 1;
    Real r = x;
    for (int it = 0; it < 10000; ++it) {
        Integer const a = r.floor();
        Integer const h = a * h1 + h2;
        Integer const k = a * k1 + k2;
        if (k > denom_bound)
            return std::nullopt;
        Rational cand(h, k);
        cand.canonicalize();
        if (abs(x - Real(cand, bits)) < tol)
            return cand;
        Real const frac = r - Real(a, bits);
        if (frac.is_zero())
            return std::nullopt;
        r = Real(1L, bits) / frac;
        h2 = h1;
        h1 = h;
        k2 = k1;
        k1 = k;
    }
    return std::nullopt;
}

namespace {

std::optional<QuadElem> recognize_quadratic(Complex const & v, i64 D, Integer const & bound, Real const & tol)
{
    mpfr_prec_t const bits = v.precision();
    Real const root = sqrt(Real(static_cast<long>(-D), bits));
    auto const r = recognize_rational(v.re(), bound, tol);
    auto const s = recognize_rational(v.im() / root, bound, tol);
    if (!r || !s)
        return std::nullopt;
    return QuadElem(*r, *s, D);
}

}  // namespace

HeegnerResult heegner_trace(CurveQ const & E, QuadField const & K, int target_digits, Integer const & denom_bound,
                            int max_digits)
{
    i64 const N = to_i64(E.conductor());
    i64 const D = K.disc();
    if (std::gcd(N, -D) != 1 || !heegner_hypothesis(K, N).holds)
        throw std::invalid_argument("heegner_trace: the Heegner hypothesis fails for N = " + std::to_string(N) +
                                    " and D = " + std::to_string(D));
    HeegnerResult out;
    out.beta = sqrt_disc_mod(K, N);
    out.forms = heegner_forms(K, N, out.beta);
    auto const W = E.over_K(D);

    Newform f;
    std::string last_failure;
    for (int digits = target_digits; digits <= max_digits; digits *= 2) {
        mpfr_prec_t const bits = work_bits(digits);
        out.taus = heegner_taus(N, K, out.beta, bits);
        long need = 1;
        for (auto const & t : out.taus)
            need = std::max(need, terms_needed(t.im(), digits + 5));
        if (need > kCoefficientBudget)
            throw PrecisionUnreachable("Heegner trace needs " + std::to_string(need) + " coefficients");
        if (f.n_max() < need)
            f = newform_coeffs(E, need);
        out.terms_used = need;
        out.digits_used = digits;

        Complex z(bits);
        for (auto const & t : out.taus)
            z += param_z(f, t, digits + 5);
        out.z_sum = z;

        PeriodLattice const L = period_lattice(E, digits);
        ComplexPoint P;
        try {
            P = complex_to_curve(z, L, E);
        } catch (NearLatticePoint const &) {
            out.point = PointK{};
            out.on_curve_exact = true;
            out.conjugate_on_curve = true;
            out.infinite_order = InfiniteOrder{false, 1, 0};
            return out;
        }
        Real const tol = exp2i(-static_cast<long>(digits_to_bits(digits)) * 3 / 4, bits);
        auto const x = recognize_quadratic(P.x, D, denom_bound, tol);
        auto const y = recognize_quadratic(P.y, D, denom_bound, tol);
        if (!x || !y) {
            last_failure = "no rational reconstruction at " + std::to_string(digits) + " digits";
            continue;
        }
        PointK const Q = PointK::affine(*x, *y);
        if (!on_curve(W, Q)) {
            last_failure = "reconstructed point is off the curve at " + std::to_string(digits) + " digits";
            continue;
        }
        out.point = Q;
        out.on_curve_exact = true;
        out.conjugate_on_curve = on_curve(W, PointK::affine(x->conj(), y->conj()));
        out.infinite_order = infinite_order_certificate(E, K, Q);
        return out;
    }
    throw RecognitionFailed("Heegner point recognition failed: " + last_failure);
}

}  // namespace finesel
