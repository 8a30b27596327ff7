#include "finesel/galrep.hpp"

#include "finesel/ellfp.hpp"

namespace finesel {

char const * to_string(GaloisCertificate::Status s)
{
    switch (s) {
    case GaloisCertificate::Status::Surjective: return "surjective";
    case GaloisCertificate::Status::NotSurjective: return "not surjective";
    case GaloisCertificate::Status::Inconclusive: return "inconclusive";
    }
    return "?";
}

FrobeniusSample frobenius_sample(CurveQ const & E, long p, long ell)
{
    long const ap = trace_ap(E, ell);
    FrobeniusSample s{ell, mod(ap, p), mod(ell, p)};
    if (s.det == 0)
        throw std::invalid_argument("frobenius_sample: ell = p");
    return s;
}

GaloisCertificate surjectivity_certificate(CurveQ const & E, long p, long ell_max)
{
    if (p < 5 || !is_prime(p))
        throw std::invalid_argument("surjectivity_certificate: p must be a prime >= 5");
    if (!E.has_good_reduction(p))
        throw BadReduction("surjectivity_certificate: bad reduction at p");
    GaloisCertificate out;
    out.ell_max = ell_max;

    // A rational point of order p makes the representation reducible.
    auto const W = E.over_Q();
    for (auto const & T : rational_torsion(E)) {
        if (T.is_identity())
            continue;
        if (multiply(W, T, std::int64_t{p}).is_identity()) {
            out.status = GaloisCertificate::Status::NotSurjective;
            out.reason = "rational point of order " + std::to_string(p) + " (" + T.x.get_str() + ", " +
                         T.y.get_str() + "): the representation is reducible";
            return out;
        }
    }

    for (i64 ell : primes_up_to(ell_max)) {
        if (ell == p || !E.has_good_reduction(ell))
            continue;
        FrobeniusSample const s = frobenius_sample(E, p, ell);
        ++out.samples;
        long const t = s.trace, d = s.det;
        long const disc = mod(t * t - 4 * d, p);
        int const chi = kronecker(disc, p);
        if (t != 0 && chi == -1 && !out.irreducible)
            out.irreducible = s;
        if (t != 0 && chi == 1 && !out.split)
            out.split = s;
        long const u = mod(t * t % p * invmod(d, p), p);
        if (u != 0 && u != 1 && u != 2 && u != 4 && mod(u * u - 3 * u + 1, p) != 0 && !out.nonexceptional)
            out.nonexceptional = s;
        if (out.irreducible && out.split && out.nonexceptional) {
            out.status = GaloisCertificate::Status::Surjective;
            out.reason = "Frobenius elements avoid every maximal subgroup";
            return out;
        }
    }
    out.reason = "sieve incomplete up to " + std::to_string(ell_max);
    return out;
}

}  // namespace finesel
