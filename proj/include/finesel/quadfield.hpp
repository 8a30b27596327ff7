#pragma once

// Imaginary quadratic fields Q(sqrt D): class numbers by reduced forms,
// prime splitting, the Heegner hypothesis and Heegner forms of level N.

#include "finesel/arith.hpp"
#include "finesel/rational.hpp"

#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace finesel {

struct NotFundamental : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct ExcludedDiscriminant : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct NoSquareRoot : std::domain_error {
    using std::domain_error::domain_error;
};

/// Primitive positive definite form a x^2 + b x y + c y^2.
struct QuadForm {
    i64 a = 1, b = 0, c = 1;

    i64 discriminant() const { return b * b - 4 * a * c; }
    /// Equivalent reduced form: |b| <= a <= c, b >= 0 if |b| = a or a = c.
    QuadForm reduced() const;
    bool is_reduced() const;

    friend bool operator==(QuadForm const &, QuadForm const &) = default;
    friend auto operator<=>(QuadForm const &, QuadForm const &) = default;
};

std::ostream & operator<<(std::ostream & o, QuadForm const & f);

/// All reduced primitive forms of discriminant D < 0, sorted by (a, b).
std::vector<QuadForm> reduced_forms(i64 D);

bool is_fundamental_discriminant(i64 D);

enum class Splitting { Split, Inert, Ramified };

char const * to_string(Splitting s);

class QuadField {
  public:
    /// Throws NotFundamental or ExcludedDiscriminant.
    explicit QuadField(i64 D);

    i64 disc() const { return D_; }
    i64 class_number() const { return h_; }
    std::vector<QuadForm> const & class_representatives() const { return reps_; }

    Splitting splitting_type(i64 ell) const;

  private:
    i64 D_;
    i64 h_;
    std::vector<QuadForm> reps_;
};

QuadField make_field(i64 D);

struct SplitWitness {
    i64 prime;
    Splitting type;
};

struct HeegnerHypothesis {
    bool holds = true;
    std::vector<SplitWitness> witnesses;
};

HeegnerHypothesis heegner_hypothesis(QuadField const & K, i64 N);

/// Smallest 0 <= beta < 2N with beta^2 = D (mod 4N). Throws NoSquareRoot.
i64 sqrt_disc_mod(QuadField const & K, i64 N);

/// One form [a, b, c] of discriminant D per ideal class with N | a and
/// b = beta (mod 2N), ordered by (a, b) of first discovery.
std::vector<QuadForm> heegner_forms(QuadField const & K, i64 N, i64 beta);

/// r + s sqrt(D) with exact rational r, s.
class QuadElem {
  public:
    QuadElem() = default;
    QuadElem(Rational r, Rational s, i64 D) : r_(std::move(r)), s_(std::move(s)), D_(D) {}
    static QuadElem rational(Rational r, i64 D) { return {std::move(r), 0, D}; }

    Rational const & re() const { return r_; }
    Rational const & im() const { return s_; }
    i64 disc() const { return D_; }
    bool is_rational() const { return sgn(s_) == 0; }

    QuadElem conj() const { return {r_, -s_, D_}; }
    Rational norm() const { return r_ * r_ - D_ * s_ * s_; }
    Rational trace() const { return 2 * r_; }
    QuadElem inverse() const;

    QuadElem & operator+=(QuadElem const & o);
    QuadElem & operator-=(QuadElem const & o);
    QuadElem & operator*=(QuadElem const & o);
    QuadElem & operator/=(QuadElem const & o);

    friend QuadElem operator+(QuadElem a, QuadElem const & b) { return a += b; }
    friend QuadElem operator-(QuadElem a, QuadElem const & b) { return a -= b; }
    friend QuadElem operator*(QuadElem a, QuadElem const & b) { return a *= b; }
    friend QuadElem operator/(QuadElem a, QuadElem const & b) { return a /= b; }
    friend QuadElem operator*(long k, QuadElem a) { a.r_ *= k; a.s_ *= k; return a; }
    QuadElem operator-() const { return {-r_, -s_, D_}; }

    friend bool operator==(QuadElem const & a, QuadElem const & b)
    {
        return a.r_ == b.r_ && a.s_ == b.s_;
    }

  private:
    Rational r_ = 0;
    Rational s_ = 0;
    i64 D_ = 0;
};

inline bool is_zero(QuadElem const & x) { return sgn(x.re()) == 0 && sgn(x.im()) == 0; }
inline QuadElem field_int(QuadElem const & like, long n) { return QuadElem::rational(n, like.disc()); }

std::ostream & operator<<(std::ostream & o, QuadElem const & x);
std::string to_string(QuadElem const & x);

}  // namespace finesel
