#include "finesel/ellq.hpp"

#include "finesel/ellfp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace finesel {

CurveQ::CurveQ(Integer a1, Integer a2, Integer a3, Integer a4, Integer a6)
    : a_{std::move(a1), std::move(a2), std::move(a3), std::move(a4), std::move(a6)}
{
    auto const & [A1, A2, A3, A4, A6] = a_;
    b2_ = A1 * A1 + 4 * A2;
    b4_ = 2 * A4 + A1 * A3;
    b6_ = A3 * A3 + 4 * A6;
    b8_ = A1 * A1 * A6 + 4 * A2 * A6 - A1 * A3 * A4 + A2 * A3 * A3 - A4 * A4;
    c4_ = b2_ * b2_ - 24 * b4_;
    c6_ = -b2_ * b2_ * b2_ + 36 * b2_ * b4_ - 216 * b6_;
    disc_ = -b2_ * b2_ * b8_ - 8 * b4_ * b4_ * b4_ - 27 * b6_ * b6_ + 9 * b2_ * b4_ * b6_;
    if (sgn(disc_) == 0)
        throw SingularCurve("singular model " + to_string());

    conductor_ = 1;
    for (auto const & [q, e] : factor_integer(disc_)) {
        long const ell = q.get_si();
        TateResult const r = tate_algorithm(a_[0], a_[1], a_[2], a_[3], a_[4], ell);
        if (!r.minimal)
            throw NonMinimalModel("model " + to_string() + " is not minimal at " + std::to_string(ell), ell);
        local_.push_back(r.data);
        conductor_ *= pow(q, static_cast<unsigned long>(r.data.conductor_exponent));
    }
}

Rational CurveQ::j_invariant() const
{
    Rational j(c4_ * c4_ * c4_, disc_);
    j.canonicalize();
    return j;
}

LocalData CurveQ::local_data(long prime) const
{
    for (auto const & L : local_)
        if (L.prime == prime)
            return L;
    LocalData L;
    L.prime = prime;
    return L;
}

bool CurveQ::has_good_reduction(long prime) const
{
    return local_data(prime).conductor_exponent == 0;
}

Weierstrass<Rational> CurveQ::over_Q() const
{
    return {Rational(a_[0]), Rational(a_[1]), Rational(a_[2]), Rational(a_[3]), Rational(a_[4])};
}

Weierstrass<QuadElem> CurveQ::over_K(i64 D) const
{
    auto const k = [D](Integer const & a) { return QuadElem::rational(Rational(a), D); };
    return {k(a_[0]), k(a_[1]), k(a_[2]), k(a_[3]), k(a_[4])};
}

Weierstrass<Fp> CurveQ::mod_p(i64 p) const
{
    Integer const P = static_cast<long>(p);
    auto const r = [&](Integer const & a) { return Fp(mod(a, P).get_si(), p); };
    return {r(a_[0]), r(a_[1]), r(a_[2]), r(a_[3]), r(a_[4])};
}

Weierstrass<Fp2> CurveQ::mod_p2(i64 p, i64 n) const
{
    Integer const P = static_cast<long>(p);
    auto const r = [&](Integer const & a) { return Fp2(mod(a, P).get_si(), 0, p, n); };
    return {r(a_[0]), r(a_[1]), r(a_[2]), r(a_[3]), r(a_[4])};
}

std::string CurveQ::to_string() const
{
    std::ostringstream o;
    o << "[" << a_[0] << "," << a_[1] << "," << a_[2] << "," << a_[3] << "," << a_[4] << "]";
    return o.str();
}

LocalData tate_algorithm(CurveQ const & E, long prime)
{
    TateResult const r = tate_algorithm(E.a1(), E.a2(), E.a3(), E.a4(), E.a6(), prime);
    if (!r.minimal)
        throw NonMinimalModel("model is not minimal at " + std::to_string(prime), prime);
    return r.data;
}

PointK to_K(PointQ const & P, i64 D)
{
    if (P.is_identity())
        return {};
    return PointK::affine(QuadElem::rational(P.x, D), QuadElem::rational(P.y, D));
}

TorsionBound torsion_bound(CurveQ const & E, QuadField const & K, int count)
{
    TorsionBound out;
    i64 const D = K.disc();
    Integer const N = E.conductor();
    for (i64 ell = 3; static_cast<int>(out.primes.size()) < count; ell += 2) {
        if (!is_prime(ell) || D % ell == 0 || mpz_divisible_ui_p(N.get_mpz_t(), static_cast<unsigned long>(ell)))
            continue;
        long const ap = ell + 1 - count_points(E.mod_p(ell));
        long const order = (K.splitting_type(ell) == Splitting::Split) ? ell + 1 - ap : order_fp2(ap, ell);
        out.primes.push_back(ell);
        out.orders.push_back(order);
        out.bound = std::gcd(out.bound, order);
    }
    return out;
}

namespace {

// Integer roots of x^3 + A x + B.
std::vector<Integer> integer_roots_cubic(Integer const & A, Integer const & B)
{
    std::vector<Integer> roots;
    auto const f = [&](Integer const & x) { return Integer(x * x * x + A * x + B); };
    if (sgn(B) == 0)
        roots.push_back(0);
    double const a = A.get_d(), b = B.get_d();
    double const R = 2.0 * std::max(std::sqrt(std::fabs(a)), std::cbrt(std::fabs(b))) + 2.0;
    auto const g = [&](double x) { return x * x * x + a * x + b; };
    // bisection on the monotone pieces between critical points
    std::vector<double> knots{-R};
    if (a < 0) {
        double const c = std::sqrt(-a / 3.0);
        knots.push_back(-c);
        knots.push_back(c);
    }
    knots.push_back(R);
    for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
        double lo = knots[i], hi = knots[i + 1];
        double glo = g(lo), ghi = g(hi);
        if ((glo > 0) == (ghi > 0) && glo != 0 && ghi != 0)
            continue;
        for (int it = 0; it < 200; ++it) {
            double const mid = 0.5 * (lo + hi);
            if ((g(mid) > 0) == (glo > 0)) {
                lo = mid;
                glo = g(mid);
            } else {
                hi = mid;
            }
        }
        Integer const c(std::round(0.5 * (lo + hi)));
        for (Integer x = c - 2; x <= c + 2; ++x)
            if (sgn(f(x)) == 0 && std::find(roots.begin(), roots.end(), x) == roots.end())
                roots.push_back(x);
    }
    return roots;
}

}  // namespace

std::vector<PointQ> rational_torsion(CurveQ const & E)
{
    // Short model Y^2 = X^3 - 27 c4 X - 54 c6 with X = 36 x + 3 b2, Y = 108 (2 y + a1 x + a3).
    Integer const A = -27 * E.c4(), B = -54 * E.c6();
    Integer const disc = -(4 * A * A * A + 27 * B * B);
    auto const W = E.over_Q();
    std::vector<PointQ> out{PointQ{}};

    std::vector<Integer> ys{0};
    {
        std::vector<Integer> ds{1};
        for (auto const & [q, e] : factor_integer(disc)) {
            std::vector<Integer> next;
            for (auto const & d : ds) {
                Integer qq = 1;
                for (int k = 0; k <= e / 2; ++k, qq *= q)
                    next.push_back(d * qq);
            }
            ds = std::move(next);
        }
        for (auto const & d : ds)
            ys.push_back(d);
    }
    for (auto const & Y : ys) {
        for (auto const & X : integer_roots_cubic(A, Integer(B - Y * Y))) {
            for (int sign : {1, -1}) {
                if (sgn(Y) == 0 && sign < 0)
                    continue;
                Rational x(X - 3 * E.b2(), 36);
                x.canonicalize();
                Rational yy(sign * Y, 108);
                yy.canonicalize();
                Rational const y = (yy - Rational(E.a1()) * x - Rational(E.a3())) / 2;
                PointQ const P = PointQ::affine(x, y);
                if (!on_curve(W, P))
                    throw std::logic_error("rational_torsion: transformed point is off the curve");
                bool torsion = false;
                PointQ S = P;
                for (int k = 1; k <= 12; ++k) {
                    if (S.is_identity()) {
                        torsion = true;
                        break;
                    }
                    S = add(W, S, P);
                }
                if (torsion && std::find(out.begin(), out.end(), P) == out.end())
                    out.push_back(P);
            }
        }
    }
    return out;
}

std::optional<long> order_up_to(Weierstrass<QuadElem> const & E, PointK const & P, long limit)
{
    PointK R = P;
    for (long k = 1; k <= limit; ++k) {
        if (R.is_identity())
            return k;
        R = add(E, R, P);
    }
    return std::nullopt;
}

InfiniteOrder infinite_order_certificate(CurveQ const & E, QuadField const & K, PointK const & P)
{
    if (P.is_identity())
        throw std::invalid_argument("infinite_order_certificate: the identity has finite order");
    InfiniteOrder out;
    out.bound = torsion_bound(E, K).bound;
    if (auto const k = order_up_to(E.over_K(K.disc()), P, out.bound)) {
        out.torsion_order = *k;
        return out;
    }
    out.certified = true;
    return out;
}

std::string ResiduePlace::describe() const
{
    if (inert)
        return "inert " + std::to_string(ell) + " (F_" + std::to_string(ell) + "^2)";
    return "split " + std::to_string(ell) + " (sqrt D = " + std::to_string(root) + ")";
}

ConditionB condition_b_certificate(CurveQ const & E, QuadField const & K, long p, PointK const & yK,
                                   long aux_bound, long torsion_multiplier)
{
    ConditionB out;
    out.multiplier = torsion_multiplier;
    out.bound = aux_bound;
    i64 const D = K.disc();
    auto const EK = E.over_K(D);
    PointK const Q = multiply(EK, yK, static_cast<std::int64_t>(torsion_multiplier));
    Integer const N = E.conductor();

    for (i64 ell = 3; ell <= aux_bound; ell += 2) {
        if (!is_prime(ell) || ell == p || D % ell == 0 ||
            mpz_divisible_ui_p(N.get_mpz_t(), static_cast<unsigned long>(ell)))
            continue;
        long const ap = ell + 1 - count_points(E.mod_p(ell));
        if (K.splitting_type(ell) == Splitting::Split) {
            long const order = ell + 1 - ap;
            if (order % p != 0)
                continue;
            i64 const r = *sqrt_mod(mod(D, ell), ell);
            auto const Ep = E.mod_p(ell);
            for (i64 root : {r, ell - r}) {
                ResiduePlace const w{ell, false, root};
                ++out.places_tested;
                try {
                    if (!divisible_by_p_in_reduction(Ep, reduce_point_split(Q, w), p, order, ell)) {
                        out.status = ConditionB::Status::NotDivisible;
                        out.witness = w;
                        out.group_order = order;
                        return out;
                    }
                } catch (FieldTooLarge const &) {
                }
            }
        } else {
            long const order = order_fp2(ap, ell);
            if (order % p != 0)
                continue;
            ResiduePlace const w{ell, true, 0};
            ++out.places_tested;
            try {
                auto const Ep2 = E.mod_p2(ell, mod(D, ell));
                if (!divisible_by_p_in_reduction(Ep2, reduce_point_inert(Q, w), p, order, ell * ell)) {
                    out.status = ConditionB::Status::NotDivisible;
                    out.witness = w;
                    out.group_order = order;
                    return out;
                }
            } catch (FieldTooLarge const &) {
            }
        }
    }
    return out;
}

}  // namespace finesel
