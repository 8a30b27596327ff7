#include "finesel/finite_field.hpp"

#include <stdexcept>

namespace finesel {

namespace {

i64 mm(i64 a, i64 b, i64 p)
{
    return static_cast<i64>(mulmod(static_cast<u64>(a), static_cast<u64>(b), static_cast<u64>(p)));
}

}  // namespace

Fp2 & Fp2::operator*=(Fp2 const & o)
{
    i64 const u = mod(mm(u_, o.u_, p_) + mm(n_, mm(v_, o.v_, p_), p_), p_);
    i64 const v = mod(mm(u_, o.v_, p_) + mm(v_, o.u_, p_), p_);
    u_ = u;
    v_ = v;
    if (n_ == 0)
        n_ = o.n_;
    return *this;
}

i64 Fp2::norm() const
{
    return mod(mm(u_, u_, p_) - mm(n_, mm(v_, v_, p_), p_), p_);
}

Fp2 Fp2::inverse() const
{
    i64 const nm = norm();
    if (nm == 0)
        throw std::domain_error("Fp2: division by zero");
    i64 const inv = invmod(nm, p_);
    return Fp2(mm(u_, inv, p_), mod(-mm(v_, inv, p_), p_), p_, n_);
}

Fp2 Fp2::pow(u64 e) const
{
    Fp2 result(1, 0, p_, n_);
    Fp2 base = *this;
    while (e) {
        if (e & 1)
            result *= base;
        base *= base;
        e >>= 1;
    }
    return result;
}

i64 least_nonresidue(i64 p)
{
    for (i64 n = 2; n < p; ++n)
        if (kronecker(n, p) == -1)
            return n;
    throw std::domain_error("least_nonresidue: no non-residue modulo " + std::to_string(p));
}

int quadratic_character(Fp2 const & x)
{
    if (is_zero(x))
        return 0;
    // x is a square in F_{p^2} iff its norm is a square in F_p.
    return kronecker(x.norm(), x.prime());
}

std::ostream & operator<<(std::ostream & o, Fp const & x) { return o << x.value(); }

std::ostream & operator<<(std::ostream & o, Fp2 const & x)
{
    return o << x.u() << "+" << x.v() << "w";
}

}  // namespace finesel
