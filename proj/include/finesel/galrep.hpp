#pragma once

// Surjectivity of the mod-p Galois representation, certified by sampling
// Frobenius traces and determinants against the maximal subgroups of GL_2(F_p).

#include "finesel/ellq.hpp"

#include <optional>
#include <string>

namespace finesel {

struct FrobeniusSample {
    long ell = 0;
    long trace = 0;  // a_ell mod p
    long det = 0;    // ell mod p
};

struct GaloisCertificate {
    enum class Status { Surjective, NotSurjective, Inconclusive } status = Status::Inconclusive;
    // irreducible characteristic polynomial with nonzero trace
    std::optional<FrobeniusSample> irreducible;
    // split semisimple characteristic polynomial with nonzero trace
    std::optional<FrobeniusSample> split;
    // projective order outside {1, 2, 3, 4, 5}
    std::optional<FrobeniusSample> nonexceptional;
    std::string reason;
    long ell_max = 0;
    long samples = 0;
};

char const * to_string(GaloisCertificate::Status s);

/// Frobenius data at a good prime ell != p.
FrobeniusSample frobenius_sample(CurveQ const & E, long p, long ell);

/// Requires p >= 5 of good reduction.
GaloisCertificate surjectivity_certificate(CurveQ const & E, long p, long ell_max = 1000);

}  // namespace finesel
