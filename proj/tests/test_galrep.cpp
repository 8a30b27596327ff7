#include "finesel/ellfp.hpp"
#include "finesel/galrep.hpp"

#include <doctest.h>

using namespace finesel;

namespace {

CurveQ curve_11a1() { return CurveQ(0, -1, 1, -10, -20); }

}  // namespace

TEST_CASE("rational 5-torsion blocks surjectivity for 11a1")
{
    auto const c = surjectivity_certificate(curve_11a1(), 5);
    CHECK(c.status == GaloisCertificate::Status::NotSurjective);
    CHECK(c.reason.find("order 5") != std::string::npos);
}

TEST_CASE("a reducible representation never yields an irreducible sample")
{
    CurveQ const E = curve_11a1();
    for (long ell : primes_up_to(1000)) {
        if (ell == 5 || ell == 11)
            continue;
        auto const s = frobenius_sample(E, 5, ell);
        long const disc = mod(s.trace * s.trace - 4 * s.det, 5);
        CHECK(kronecker(disc, 5) != -1);
    }
}

TEST_CASE("frobenius samples")
{
    CurveQ const E = curve_11a1();
    for (long ell : {2L, 3L, 7L, 17L, 97L}) {
        auto const s = frobenius_sample(E, 13, ell);
        CHECK(s.ell == ell);
        CHECK(s.det == ell % 13);
        CHECK(s.trace == mod(trace_ap(E, ell), 13));
    }
    CHECK_THROWS_AS(frobenius_sample(E, 13, 13), std::invalid_argument);
}

TEST_CASE("surjective certificates")
{
    struct Case {
        CurveQ E;
        long p;
    };
    std::vector<Case> const cases{
        {curve_11a1(), 13},
        {curve_11a1(), 7},
        {CurveQ(1, -1, 1, 0, 0), 751},
        {CurveQ(1, -1, 1, 0, 0), 5},
        {CurveQ(0, 0, 1, -1, 0), 7},
    };
    for (auto const & [E, p] : cases) {
        INFO(E.to_string() << " p=" << p);
        auto const c = surjectivity_certificate(E, p);
        REQUIRE(c.status == GaloisCertificate::Status::Surjective);
        REQUIRE(c.irreducible);
        REQUIRE(c.split);
        REQUIRE(c.nonexceptional);
        CHECK(c.irreducible->trace != 0);
        CHECK(c.samples > 0);
    }
}

TEST_CASE("rational 3-torsion on 14a1")
{
    CurveQ const E(1, 0, 1, 4, -6);
    CHECK(surjectivity_certificate(E, 3 + 2).status != GaloisCertificate::Status::NotSurjective);
    CHECK_THROWS_AS(surjectivity_certificate(E, 3), std::invalid_argument);
    CHECK_THROWS_AS(surjectivity_certificate(E, 7), BadReduction);
}

TEST_CASE("a larger sample bound never loses a certificate")
{
    CurveQ const E = curve_11a1();
    bool seen = false;
    for (long bound : {20L, 50L, 100L, 200L, 1000L}) {
        auto const c = surjectivity_certificate(E, 13, bound);
        if (seen)
            CHECK(c.status == GaloisCertificate::Status::Surjective);
        seen = seen || c.status == GaloisCertificate::Status::Surjective;
    }
    CHECK(seen);
    CHECK(surjectivity_certificate(E, 13, 2).status == GaloisCertificate::Status::Inconclusive);
}
