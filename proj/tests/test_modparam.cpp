#include "finesel/ellfp.hpp"
#include "finesel/modparam.hpp"

#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

using namespace finesel;

namespace {

std::vector<std::string> split(std::string const & line, char sep)
{
    std::vector<std::string> out;
    std::istringstream in(line);
    std::string cell;
    while (std::getline(in, cell, sep))
        out.push_back(cell);
    return out;
}

CurveQ curve_11a1() { return CurveQ(0, -1, 1, -10, -20); }

Real R(char const * s, mpfr_prec_t bits = 256)
{
    Real r(bits);
    mpfr_set_str(r.get(), s, 10, MPFR_RNDN);
    return r;
}

bool near(Real const & a, Real const & b, int digits)
{
    Real const scale = std::max(Real(1L, a.precision()), abs(b), [](Real const & u, Real const & v) { return u < v; });
    return abs(a - b) < scale * pow(Real(10L, a.precision()), -digits);
}

bool near(Complex const & a, Complex const & b, int digits)
{
    return near(a.re(), b.re(), digits) && near(a.im(), b.im(), digits);
}

std::vector<CurveQ> table_curves()
{
    return {curve_11a1(),        CurveQ(1, -1, 1, -1, -14), CurveQ(0, 1, 1, 0, 0),   CurveQ(1, -1, 1, 0, 0),
            CurveQ(0, -1, 1, -2, 2), CurveQ(1, -1, 0, -1, 1), CurveQ(0, -1, 1, -8, -7), CurveQ(1, -1, 1, -2, 0)};
}

}  // namespace

TEST_CASE("newform coefficients of 11a1")
{
    auto const f = newform_coeffs(curve_11a1(), 20);
    std::vector<long> const expected{0, 1, -2, -1, 2, 1, 2, -2, 0, -2, -2, 1, -2, 4, 4, -1, -4, -2, 4, 0, 2};
    CHECK(f.a == expected);
    CHECK(f.N == 11);
}

TEST_CASE("newform invariants to 10^4 on the table curves")
{
    for (auto const & E : table_curves()) {
        auto const f = newform_coeffs(E, 10000);
        INFO(E.to_string());
        CHECK(f[1] == 1);
        bool ok = true;
        for (long m = 2; m * 2 <= 10000 && ok; ++m)
            for (long n = 2; m * n <= 10000; ++n)
                if (std::gcd(m, n) == 1 && f[m * n] != f[m] * f[n]) {
                    ok = false;
                    break;
                }
        CHECK(ok);
        for (long ell : primes_up_to(10000)) {
            if (f.N % ell == 0) {
                CHECK(std::abs(f[ell]) <= 1);
            } else {
                CHECK(f[ell] * f[ell] <= 4 * ell);
                if (ell * ell <= 10000)
                    CHECK(f[ell * ell] == f[ell] * f[ell] - ell);
            }
        }
    }
}

TEST_CASE("heegner taus")
{
    QuadField const K(-7);
    auto const taus = heegner_taus(11, K, 9, 200);
    REQUIRE(taus.size() == 1);
    CHECK(near(taus[0].re(), Real(-9L, 200) / Real(22L, 200), 50));
    CHECK(near(taus[0].im(), sqrt(Real(7L, 200)) / Real(22L, 200), 50));

    QuadField const K23(-23);
    auto const forms = heegner_forms(K23, 58, 21);
    auto const t23 = heegner_taus(58, K23, 21, 200);
    REQUIRE(t23.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        Complex const & t = t23[i];
        Complex const v = t * t * Real(forms[i].a, 200) + t * Real(forms[i].b, 200) + Complex(Real(forms[i].c, 200));
        CHECK(abs(v) < exp2i(-180, 200));
        CHECK(t.im().sign() > 0);
    }
}

TEST_CASE("parametrization value for 11a1")
{
    auto const f = newform_coeffs(curve_11a1(), 2000);
    auto const tau = heegner_taus(11, QuadField(-7), 9, 200).at(0);
    Complex const z = param_z(f, tau, 30);
    Complex const want(R("-0.507683721711821368675517846701818922087796896732243467186855"),
                       R("-0.405629044516045165291427535989294243546737873061477745421021"));
    CHECK(near(z, want, 28));

    Complex const shifted = tau + Complex(Real(1L, 200));
    CHECK(near(param_z(f, shifted, 30), z, 28));
    Complex const finer = param_z(f, tau, 60);
    CHECK(near(finer, z, 30));

    auto const small = newform_coeffs(curve_11a1(), 5);
    CHECK_THROWS_AS(param_z(small, tau, 30), PrecisionUnreachable);
}

TEST_CASE("period lattices against the oracle")
{
    std::ifstream in(FINESEL_TEST_DATA "/periods_oracle.csv");
    REQUIRE(in);
    std::string line;
    std::getline(in, line);
    int rows = 0;
    while (std::getline(in, line)) {
        auto const c = split(line, ',');
        CurveQ const E{Integer(c[1]), Integer(c[2]), Integer(c[3]), Integer(c[4]), Integer(c[5])};
        auto const L = period_lattice(E, 40);
        INFO(c[0]);
        CHECK(near(L.omega1, R(c[6].c_str()), 17));
        CHECK(near(L.omega2.re(), R(c[7].c_str()), 17));
        CHECK(near(L.omega2.im(), R(c[8].c_str()), 17));
        CHECK(L.rectangular == (sgn(E.discriminant()) > 0));
        CHECK(L.c4_error < exp2i(-110, 64));
        CHECK(L.c6_error < exp2i(-110, 64));
        Complex const ratio = L.omega2 / Complex(L.omega1);
        CHECK(ratio.im().sign() > 0);
        if (L.rectangular)
            CHECK(ratio.re().is_zero());
        else
            CHECK(near(ratio.re(), Real(0.5, 64), 35));
        ++rows;
    }
    CHECK(rows == 9);
}

TEST_CASE("complex points on the curve")
{
    CurveQ const E = curve_11a1();
    auto const L = period_lattice(E, 40);
    mpfr_prec_t const bits = L.omega1.precision();
    Complex const z(R("0.3", bits), R("0.2", bits));
    auto const P = complex_to_curve(z, L, E);
    CHECK(near(P.x, Complex(R("3.35302423310509224665795221113190982059170156158447677247935"),
                            R("-6.81462023427609356909457229914757489617501052813747415764726")),
               35));
    CHECK(near(P.y, Complex(R("4.12856448972209979869839385865015963850802062698672693115206"),
                            R("21.6551162123985655942122465133553158290773743288682692140012")),
               35));

    CurveQ const E37(0, 0, 1, -1, 0);
    auto const L37 = period_lattice(E37, 40);
    auto const P37 = complex_to_curve(z, L37, E37);
    CHECK(near(P37.x, Complex(R("2.96897777003832836781035774564269381251497790235544542178543"),
                              R("-7.07703077872770137512556835128372399599615786985789690603005")),
               35));

    auto const M = complex_to_curve(-z, L, E);
    CHECK(near(M.x, P.x, 35));

    auto const H = complex_to_curve(Complex(L.omega1 / Real(2L, bits)), L, E);
    Complex const y2 = -(H.x * Real(E.a1(), bits) + Complex(Real(E.a3(), bits))) * (Real(1L, bits) / Real(2L, bits));
    CHECK(near(H.y, y2, 35));

    auto const shifted = complex_to_curve(z + L.omega2 - Complex(L.omega1), L, E);
    CHECK(near(shifted.x, P.x, 33));

    CHECK_THROWS_AS(complex_to_curve(L.omega2, L, E), NearLatticePoint);

    for (auto const & F : table_curves()) {
        auto const LF = period_lattice(F, 40);
        for (double t : {0.11, 0.37, 0.73}) {
            Complex const w = LF.omega2 * Real(t, bits) + Complex(LF.omega1 * Real(0.3 + t, bits));
            auto const Q = complex_to_curve(w, LF, F);
            Real const a1(F.a1(), bits), a2(F.a2(), bits), a3(F.a3(), bits), a4(F.a4(), bits), a6(F.a6(), bits);
            Complex const lhs = Q.y * Q.y + Q.x * Q.y * a1 + Q.y * a3;
            Complex const rhs = Q.x * Q.x * Q.x + Q.x * Q.x * a2 + Q.x * a4 + Complex(a6);
            CHECK(abs(lhs - rhs) < pow(Real(10L, bits), -32) * (Real(1L, bits) + abs(rhs)));
        }
    }
}

TEST_CASE("continued fraction recognition")
{
    mpfr_prec_t const bits = 200;
    Real const tol = pow(Real(10L, bits), -40);
    CHECK(recognize_rational(Real(Rational(-355, 113), bits), Integer(1000), tol) == Rational(-355, 113));
    CHECK(recognize_rational(Real(Rational(7), bits), Integer(1000), tol) == Rational(7));
    CHECK(recognize_rational(Real(Rational(123456789, 987654320), bits), Integer("1000000000000"), tol) ==
          Rational(123456789, 987654320));
    CHECK_FALSE(recognize_rational(Real::pi(bits), Integer("1000000000000"), tol));
}

TEST_CASE("Heegner traces against the oracle")
{
    std::ifstream in(FINESEL_TEST_DATA "/heegner_oracle.csv");
    REQUIRE(in);
    std::string line;
    std::getline(in, line);
    std::map<std::string, CurveQ> curves;
    std::vector<std::string> const labels{"11a1", "17a1", "43a1", "53a1", "57a1", "58a1", "75a1", "99a1"};
    auto const tc = table_curves();
    for (std::size_t i = 0; i < labels.size(); ++i)
        curves.emplace(labels[i], tc[i]);
    int rows = 0;
    while (std::getline(in, line)) {
        auto const c = split(line, ',');
        CurveQ const & E = curves.at(c[0]);
        i64 const D = std::stol(c[1]);
        QuadField const K(D);
        INFO(c[0] << " " << D);
        auto const r = heegner_trace(E, K);
        CHECK(r.beta == std::stol(c[2]));
        std::vector<std::string> forms, want_forms = split(c[3], ' ');
        for (auto const & f : r.forms)
            forms.push_back(std::to_string(f.a) + ":" + std::to_string(f.b) + ":" + std::to_string(f.c));
        std::sort(forms.begin(), forms.end());
        std::sort(want_forms.begin(), want_forms.end());
        CHECK(forms == want_forms);
        REQUIRE(r.on_curve_exact);
        CHECK(r.conjugate_on_curve);
        CHECK(r.infinite_order.certified);

        // equal up to sign and a K-torsion translate
        auto const W = E.over_K(D);
        PointK const want = PointK::affine(QuadElem(Rational(c[4]), Rational(c[5]), D),
                                           QuadElem(Rational(c[6]), Rational(c[7]), D));
        long const t = std::stol(c[8]);
        bool const matches = multiply(W, sub(W, r.point, want), std::int64_t{t}).is_identity() ||
                             multiply(W, add(W, r.point, want), std::int64_t{t}).is_identity();
        CHECK(matches);
        ++rows;
    }
    CHECK(rows == 9);
}
