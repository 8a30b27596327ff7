#pragma once

// Prime fields F_p and quadratic extensions F_p[w]/(w^2 - n) with small p.

#include "finesel/arith.hpp"

#include <ostream>

namespace finesel {

class Fp {
  public:
    Fp() = default;
    Fp(i64 v, i64 p) : v_(mod(v, p)), p_(p) {}

    i64 value() const { return v_; }
    i64 prime() const { return p_; }

    Fp & operator+=(Fp const & o) { v_ += o.v_; if (v_ >= p_) v_ -= p_; return *this; }
    Fp & operator-=(Fp const & o) { v_ -= o.v_; if (v_ < 0) v_ += p_; return *this; }
    Fp & operator*=(Fp const & o)
    {
        v_ = static_cast<i64>(mulmod(static_cast<u64>(v_), static_cast<u64>(o.v_), static_cast<u64>(p_)));
        return *this;
    }
    Fp & operator/=(Fp const & o) { return *this *= o.inverse(); }

    friend Fp operator+(Fp a, Fp const & b) { return a += b; }
    friend Fp operator-(Fp a, Fp const & b) { return a -= b; }
    friend Fp operator*(Fp a, Fp const & b) { return a *= b; }
    friend Fp operator/(Fp a, Fp const & b) { return a /= b; }
    friend Fp operator*(long k, Fp a) { return a *= Fp(k, a.p_); }
    Fp operator-() const { return Fp(-v_, p_); }

    Fp inverse() const { return Fp(invmod(v_, p_), p_); }
    Fp pow(u64 e) const { return Fp(static_cast<i64>(powmod(static_cast<u64>(v_), e, static_cast<u64>(p_))), p_); }

    friend bool operator==(Fp const & a, Fp const & b) { return a.v_ == b.v_; }

  private:
    i64 v_ = 0;
    i64 p_ = 0;
};

inline bool is_zero(Fp const & x) { return x.value() == 0; }
inline Fp field_int(Fp const & like, long n) { return Fp(n, like.prime()); }

/// Element u + v w of F_p[w]/(w^2 - n), n a fixed non-residue.
class Fp2 {
  public:
    Fp2() = default;
    Fp2(i64 u, i64 v, i64 p, i64 nonresidue) : u_(mod(u, p)), v_(mod(v, p)), p_(p), n_(mod(nonresidue, p)) {}

    i64 u() const { return u_; }
    i64 v() const { return v_; }
    i64 prime() const { return p_; }
    i64 nonresidue() const { return n_; }

    Fp2 & operator+=(Fp2 const & o) { u_ = mod(u_ + o.u_, p_); v_ = mod(v_ + o.v_, p_); return *this; }
    Fp2 & operator-=(Fp2 const & o) { u_ = mod(u_ - o.u_, p_); v_ = mod(v_ - o.v_, p_); return *this; }
    Fp2 & operator*=(Fp2 const & o);
    Fp2 & operator/=(Fp2 const & o) { return *this *= o.inverse(); }

    friend Fp2 operator+(Fp2 a, Fp2 const & b) { return a += b; }
    friend Fp2 operator-(Fp2 a, Fp2 const & b) { return a -= b; }
    friend Fp2 operator*(Fp2 a, Fp2 const & b) { return a *= b; }
    friend Fp2 operator/(Fp2 a, Fp2 const & b) { return a /= b; }
    friend Fp2 operator*(long k, Fp2 a) { return a *= Fp2(k, 0, a.p_, a.n_); }
    Fp2 operator-() const { return Fp2(-u_, -v_, p_, n_); }

    Fp2 inverse() const;
    Fp2 pow(u64 e) const;
    /// u^2 - n v^2, an element of F_p.
    i64 norm() const;

    friend bool operator==(Fp2 const & a, Fp2 const & b) { return a.u_ == b.u_ && a.v_ == b.v_; }

  private:
    i64 u_ = 0, v_ = 0, p_ = 0, n_ = 0;
};

inline bool is_zero(Fp2 const & x) { return x.u() == 0 && x.v() == 0; }
inline Fp2 field_int(Fp2 const & like, long n) { return Fp2(n, 0, like.prime(), like.nonresidue()); }

/// Least positive quadratic non-residue modulo an odd prime p.
i64 least_nonresidue(i64 p);

/// Quadratic character on F_{p^2}: 0, 1 or -1.
int quadratic_character(Fp2 const & x);

std::ostream & operator<<(std::ostream & o, Fp const & x);
std::ostream & operator<<(std::ostream & o, Fp2 const & x);

}  // namespace finesel
