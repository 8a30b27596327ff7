#pragma once

// Elliptic curves over Q given by integral minimal models, their points
// over an imaginary quadratic field, Tate's algorithm, torsion bounds and
// the certificates for infinite order and p-indivisibility.

#include "finesel/finite_field.hpp"
#include "finesel/quadfield.hpp"
#include "finesel/rational.hpp"
#include "finesel/weierstrass.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace finesel {

struct SingularCurve : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct NonMinimalModel : std::invalid_argument {
    NonMinimalModel(std::string const & what, long prime_)
        : std::invalid_argument(what), prime(prime_) {}
    long prime;
};

struct BadReduction : std::domain_error {
    using std::domain_error::domain_error;
};

enum class Kodaira { I0, In, II, III, IV, I0star, Instar, IVstar, IIIstar, IIstar };

enum class Multiplicative { Split, NonSplit, NotMultiplicative };

char const * to_string(Multiplicative m);

/// Local reduction data at one prime.
struct LocalData {
    long prime = 0;
    Kodaira kodaira = Kodaira::I0;
    int n = 0;  // subscript of I_n and I_n*
    int conductor_exponent = 0;
    long tamagawa = 1;
    Multiplicative mult = Multiplicative::NotMultiplicative;
    int disc_valuation = 0;

    std::string symbol() const;
    /// Coefficient a_l of the L-series at a bad prime.
    int bad_ap() const;
};

/// Result of running Tate's algorithm on a model that may not be minimal.
struct TateResult {
    bool minimal = true;
    LocalData data;
};

/// Tate's algorithm at `prime` on the integral model a1..a6.
TateResult tate_algorithm(Integer a1, Integer a2, Integer a3, Integer a4, Integer a6, long prime);

/// Integral Weierstrass model over Q, validated to be nonsingular and
/// globally minimal. The conductor is computed by Tate's algorithm.
class CurveQ {
  public:
    /// Throws SingularCurve or NonMinimalModel (with the witness prime).
    CurveQ(Integer a1, Integer a2, Integer a3, Integer a4, Integer a6);

    Integer const & a1() const { return a_[0]; }
    Integer const & a2() const { return a_[1]; }
    Integer const & a3() const { return a_[2]; }
    Integer const & a4() const { return a_[3]; }
    Integer const & a6() const { return a_[4]; }

    Integer const & b2() const { return b2_; }
    Integer const & b4() const { return b4_; }
    Integer const & b6() const { return b6_; }
    Integer const & b8() const { return b8_; }
    Integer const & c4() const { return c4_; }
    Integer const & c6() const { return c6_; }
    Integer const & discriminant() const { return disc_; }
    Rational j_invariant() const;

    Integer const & conductor() const { return conductor_; }
    std::vector<LocalData> const & bad_primes() const { return local_; }
    LocalData local_data(long prime) const;

    bool has_good_reduction(long prime) const;

    Weierstrass<Rational> over_Q() const;
    Weierstrass<QuadElem> over_K(i64 D) const;
    Weierstrass<Fp> mod_p(i64 p) const;
    /// Over F_p[w]/(w^2 - n).
    Weierstrass<Fp2> mod_p2(i64 p, i64 n) const;

    std::string to_string() const;

  private:
    Integer a_[5];
    Integer b2_, b4_, b6_, b8_, c4_, c6_, disc_;
    Integer conductor_;
    std::vector<LocalData> local_;
};

LocalData tate_algorithm(CurveQ const & E, long prime);

using PointQ = Point<Rational>;
using PointK = Point<QuadElem>;

PointK to_K(PointQ const & P, i64 D);

/// gcd of #E(k_w) over the first `count` good residue fields of odd
/// characteristic; the torsion order of E(K) divides it.
struct TorsionBound {
    long bound = 0;
    std::vector<long> primes;
    std::vector<long> orders;
};

TorsionBound torsion_bound(CurveQ const & E, QuadField const & K, int count = 12);

/// Rational torsion points (Nagell-Lutz on the scaled short model).
std::vector<PointQ> rational_torsion(CurveQ const & E);

/// Order of a point if it divides `limit`, else nullopt.
std::optional<long> order_up_to(Weierstrass<QuadElem> const & E, PointK const & P, long limit);

struct InfiniteOrder {
    bool certified = false;
    long torsion_order = 0;  // minimal annihilator when not certified
    long bound = 0;          // torsion bound used
};

/// Checks k P != O for all 1 <= k <= torsion_bound. P must not be O.
InfiniteOrder infinite_order_certificate(CurveQ const & E, QuadField const & K, PointK const & P);

/// Residue field of a prime w of K not dividing 2 D: degree 1 (split, with
/// the image `root` of sqrt D mod ell) or degree 2 (inert, F_ell[w]/(w^2-D)).
struct ResiduePlace {
    long ell = 0;
    bool inert = false;
    i64 root = 0;  // split only

    std::string describe() const;
};

struct ConditionB {
    enum class Status { NotDivisible, Inconclusive } status = Status::Inconclusive;
    ResiduePlace witness;
    long group_order = 0;     // #E(k_w) at the witness
    long multiplier = 1;      // prime-to-p torsion multiplier applied to y_K
    long bound = 0;           // auxiliary prime bound that was scanned
    long places_tested = 0;   // places with p | #E(k_w)
};

ConditionB condition_b_certificate(CurveQ const & E, QuadField const & K, long p, PointK const & yK,
                                   long aux_bound, long torsion_multiplier);

}  // namespace finesel
