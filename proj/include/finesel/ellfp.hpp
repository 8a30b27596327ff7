#pragma once

// Elliptic curves over F_p and F_{p^2}: point counts, traces of Frobenius,
// reduction of K-points and p-divisibility in the reduced group.

#include "finesel/ellq.hpp"
#include "finesel/finite_field.hpp"
#include "finesel/weierstrass.hpp"

#include <stdexcept>
#include <vector>

namespace finesel {

struct FieldTooLarge : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// #E(F_p) including the identity. Throws SingularCurve.
long count_points(Weierstrass<Fp> const & E);

/// a_p = p + 1 - #E(F_p). Throws BadReduction when p divides the discriminant.
long trace_ap(CurveQ const & E, long p);

/// #E(F_{p^2}) = p^2 + 1 - (a_p^2 - 2p).
long order_fp2(long ap, long p);

/// a_p == 0, for p >= 5 of good reduction.
bool is_supersingular(CurveQ const & E, long p);

/// Reduction of a K-point at a split place (coordinates sent through
/// sqrt D -> place.root) or an inert place (sqrt D -> w in F_ell[w]/(w^2-D)).
/// Points that are not integral at the place reduce to the identity.
Point<Fp> reduce_point_split(PointK const & P, ResiduePlace const & place);
Point<Fp2> reduce_point_inert(PointK const & P, ResiduePlace const & place);

/// w-adic valuation of x in K at a split place above ell with sqrt D = root.
int split_valuation(QuadElem const & x, long ell, i64 root);

/// All points of E(F_p) or E(F_{p^2}), identity first.
std::vector<Point<Fp>> enumerate_points(Weierstrass<Fp> const & E);
std::vector<Point<Fp2>> enumerate_points(Weierstrass<Fp2> const & E);

/// Square root in F_{p^2} when one exists.
std::optional<Fp2> sqrt_fp2(Fp2 const & a);

/// Field-size limit of the exhaustive scan in divisible_by_p_in_reduction.
inline constexpr long kScanLimit = 10000;

/// Whether Q = p X for some X in E(F), where group_order = #E(F).
/// Exact cofactor test when p^2 does not divide the order, otherwise an
/// exhaustive scan (FieldTooLarge beyond kScanLimit).
template <class F>
bool divisible_by_p_in_reduction(Weierstrass<F> const & E, Point<F> const & Q, long p, long group_order,
                                 long field_size)
{
    if (Q.is_identity() || group_order % p != 0)
        return true;
    if ((group_order / p) % p != 0)
        return multiply(E, Q, static_cast<std::int64_t>(group_order / p)).is_identity();
    if (field_size > kScanLimit)
        throw FieldTooLarge("p-divisibility scan over a field of size " + std::to_string(field_size));
    for (auto const & X : enumerate_points(E))
        if (multiply(E, X, static_cast<std::int64_t>(p)) == Q)
            return true;
    return false;
}

/// Order of a point dividing a known multiple n of it (n = group order).
template <class F>
long point_order(Weierstrass<F> const & E, Point<F> const & P, long n)
{
    long order = n;
    for (auto const & [q, e] : factorize(static_cast<u64>(n)).factors) {
        for (int k = 0; k < e; ++k) {
            long const cand = order / static_cast<long>(q);
            if (order % static_cast<long>(q) == 0 && multiply(E, P, static_cast<std::int64_t>(cand)).is_identity())
                order = cand;
            else
                break;
        }
    }
    return order;
}

}  // namespace finesel
