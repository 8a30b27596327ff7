#pragma once

// Formal group of E at t = -x/y: the logarithm series, the group law, and
// valuations of logarithms at the primes of K above p, computed in p-adic
// arithmetic with explicit absolute precision.

#include "finesel/ellq.hpp"

#include <climits>
#include <optional>
#include <stdexcept>
#include <vector>

namespace finesel {

struct PrecisionExhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// log(t) = sum_{n >= 1} b_n t^n / n.
struct FormalLog {
    int M = 0;
    std::vector<Rational> b;  // b[0] unused, b[1] = 1

    Rational coefficient(int n) const { return b.at(static_cast<std::size_t>(n)) / n; }
};

FormalLog formal_log(CurveQ const & E, int M);

/// F(s, t) truncated below total degree M; c[i][j] is the coefficient of s^i t^j.
struct FormalGroupLaw {
    int M = 0;
    std::vector<std::vector<Rational>> c;
};

FormalGroupLaw formal_group_law(CurveQ const & E, int M);

/// Completion of K at a prime above p >= 5 not dividing D.
struct LocalPlace {
    long p = 0;
    i64 D = 0;
    bool inert = false;
    Integer root;  // split: sqrt D to precision `precision`, root = sqrt D mod p
    int precision = 0;

    std::string describe() const;
};

/// The places of K above p (two when p splits), with sqrt D lifted to p^precision.
std::vector<LocalPlace> places_above(QuadField const & K, long p, int precision);

/// Element of O_v known modulo p^prec; inert elements are a + b sqrt D.
struct LocalElem {
    Integer a, b;
    int prec = 0;
};

int valuation(LocalElem const & x, long p);

/// Exact w-adic valuation of a nonzero element of K.
int local_valuation(QuadElem const & x, LocalPlace const & v);

/// Smallest m with m P in E_1 at every place above p, with the order of
/// the reduction at each place.
struct LandingMultiple {
    long m = 1;
    std::vector<long> orders;
    std::vector<long> group_orders;
};

LandingMultiple landing_multiple(CurveQ const & E, QuadField const & K, PointK const & P, long p);

struct LogValuation {
    int value = 0;
    int t_valuation = 0;       // fast path: ord_v(t)
    std::optional<int> series; // series path, when it separates
    int precision = 0;
};

/// ord_v of the formal logarithm of k P at v, where k P lies in E_1 at v.
LogValuation log_valuation(CurveQ const & E, PointK const & P, long k, LocalPlace const & v);

/// ord_v(log t) for t in p Z_p by the series path alone.
int series_log_valuation(FormalLog const & L, Rational const & t, long p, int precision);

struct ConditionE {
    enum class Status { Pass, Fail, Inconclusive } status = Status::Inconclusive;
    std::vector<LocalPlace> places;
    std::vector<int> valuations;
    std::optional<std::size_t> witness;  // index into places
    long landing = 0;
    long multiplier = 1;
    std::vector<long> group_orders;
    std::string note;
};

char const * to_string(ConditionE::Status s);

/// Valuations of log(m k yK) over the places above p, where k is the
/// torsion multiplier and m the landing multiple of k yK.
ConditionE condition_e_check(CurveQ const & E, QuadField const & K, long p, PointK const & yK,
                             long torsion_multiplier = 1, int precision = 12);

}  // namespace finesel
