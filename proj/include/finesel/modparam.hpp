#pragma once

// Modular parametrization X_0(N) -> E evaluated analytically: newform
// coefficients, the q-series z(tau) = sum a_n/n q^n, the period lattice,
// the Weierstrass map C/L -> E(C), and exact recognition of the Heegner
// trace as a point over K.

#include "finesel/bigfloat.hpp"
#include "finesel/ellq.hpp"

#include <stdexcept>
#include <vector>

namespace finesel {

struct PrecisionUnreachable : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NearLatticePoint : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RecognitionFailed : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Newform {
    long N = 0;
    std::vector<long> a;  // a[0] unused

    long n_max() const { return static_cast<long>(a.size()) - 1; }
    long operator[](long n) const { return a.at(static_cast<std::size_t>(n)); }
};

Newform newform_coeffs(CurveQ const & E, long n_max);

/// Largest coefficient index param_z may request.
inline constexpr long kCoefficientBudget = 200000;

/// Terms needed so that the tail of sum a_n/n q^n stays below 10^-digits.
long terms_needed(Real const & im_tau, int digits);

/// (-b + sqrt D) / 2a for each Heegner form.
std::vector<Complex> heegner_taus(i64 N, QuadField const & K, i64 beta, mpfr_prec_t bits);

Complex param_z(Newform const & f, Complex const & tau, int target_digits);

struct PeriodLattice {
    Real omega1;      // real period, positive
    Complex omega2;   // Im(omega2 / omega1) > 0
    bool rectangular = false;  // positive discriminant
    // basis with omega2/omega1 in the standard fundamental domain
    Complex w1, w2;
    Real c4_error, c6_error;  // relative reconstruction errors
};

PeriodLattice period_lattice(CurveQ const & E, int target_digits);

struct ComplexPoint {
    Complex x, y;
};

/// Image of z under C/L -> E(C) on the long Weierstrass model.
ComplexPoint complex_to_curve(Complex const & z, PeriodLattice const & L, CurveQ const & E);

/// Rational p/q with q <= denom_bound and |x - p/q| < tol, from the
/// continued fraction of x.
std::optional<Rational> recognize_rational(Real const & x, Integer const & denom_bound, Real const & tol);

struct HeegnerResult {
    i64 beta = 0;
    std::vector<QuadForm> forms;
    std::vector<Complex> taus;
    Complex z_sum;
    PointK point;
    bool on_curve_exact = false;
    bool conjugate_on_curve = false;
    InfiniteOrder infinite_order;
    int digits_used = 0;
    long terms_used = 0;
};

/// Trace of the Heegner point of conductor 1 down to K. Retries at doubled
/// precision up to max_digits before raising RecognitionFailed.
HeegnerResult heegner_trace(CurveQ const & E, QuadField const & K, int target_digits = 40,
                            Integer const & denom_bound = Integer("1000000000000"), int max_digits = 320);

}  // namespace finesel
