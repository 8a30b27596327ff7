#include "finesel/quadfield.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace finesel {

QuadForm QuadForm::reduced() const
{
    i64 A = a, B = b, C = c;
    for (;;) {
        if (C < A) {
            std::swap(A, C);
            B = -B;
            continue;
        }
        if (B > A || B <= -A) {
            // translate b into (-a, a]
            i64 const D = B * B - 4 * A * C;
            i64 k = (A - B) / (2 * A);
            if ((A - B) < 0 && (A - B) % (2 * A) != 0)
                --k;
            B += 2 * A * k;
            C = (B * B - D) / (4 * A);
            continue;
        }
        if (A == C && B < 0)
            B = -B;
        return {A, B, C};
    }
}

bool QuadForm::is_reduced() const
{
    if (!(std::abs(b) <= a && a <= c))
        return false;
    if ((std::abs(b) == a || a == c) && b < 0)
        return false;
    return true;
}

std::ostream & operator<<(std::ostream & o, QuadForm const & f)
{
    return o << "[" << f.a << ", " << f.b << ", " << f.c << "]";
}

std::vector<QuadForm> reduced_forms(i64 D)
{
    std::vector<QuadForm> out;
    // 3a^2 <= |D| for reduced forms
    for (i64 a = 1; 3 * a * a <= -D; ++a) {
        for (i64 b = -a + 1; b <= a; ++b) {
            i64 const num = b * b - D;
            if (num % (4 * a) != 0)
                continue;
            i64 const c = num / (4 * a);
            if (c < a)
                continue;
            if (a == c && b < 0)
                continue;
            if (std::gcd(std::gcd(a, std::abs(b)), c) != 1)
                continue;
            out.push_back({a, b, c});
        }
    }
    return out;
}

namespace {

bool squarefree(i64 n)
{
    for (auto const & f : factorize(static_cast<u64>(std::abs(n))).factors)
        if (f.second > 1)
            return false;
    return true;
}

}  // namespace

bool is_fundamental_discriminant(i64 D)
{
    if (D == 0 || D == 1)
        return false;
    i64 const r = mod(D, 4);
    if (r == 1)
        return squarefree(D);
    if (r != 0)
        return false;
    i64 const m = D / 4;
    i64 const rm = mod(m, 4);
    return (rm == 2 || rm == 3) && squarefree(m);
}

char const * to_string(Splitting s)
{
    switch (s) {
    case Splitting::Split: return "split";
    case Splitting::Inert: return "inert";
    case Splitting::Ramified: return "ramified";
    }
    return "?";
}

QuadField::QuadField(i64 D) : D_(D)
{
    if (D >= 0)
        throw NotFundamental("discriminant " + std::to_string(D) + " is not negative");
    if (!is_fundamental_discriminant(D))
        throw NotFundamental("discriminant " + std::to_string(D) + " is not fundamental");
    if (D == -3 || D == -4)
        throw ExcludedDiscriminant("discriminants -3 and -4 are excluded");
    reps_ = reduced_forms(D);
    h_ = static_cast<i64>(reps_.size());
}

QuadField make_field(i64 D) { return QuadField(D); }

Splitting QuadField::splitting_type(i64 ell) const
{
    switch (kronecker(D_, ell)) {
    case 1: return Splitting::Split;
    case -1: return Splitting::Inert;
    default: return Splitting::Ramified;
    }
}

HeegnerHypothesis heegner_hypothesis(QuadField const & K, i64 N)
{
    HeegnerHypothesis out;
    for (u64 q : factorize(static_cast<u64>(N)).primes()) {
        auto const t = K.splitting_type(static_cast<i64>(q));
        out.witnesses.push_back({static_cast<i64>(q), t});
        if (t != Splitting::Split)
            out.holds = false;
    }
    return out;
}

namespace {

// All square roots of D modulo q^e (q odd, q not dividing D) or modulo
// 2^(e+2) for q = 2, by Hensel lifting from the roots mod q.
std::vector<i64> roots_mod_prime_power(i64 D, i64 q, int e, i64 modulus)
{
    std::vector<i64> roots;
    if (q == 2) {
        for (i64 x = 0; x < modulus; ++x)
            if (mod(x * x - D, modulus) == 0)
                roots.push_back(x);
        return roots;
    }
    auto const r = sqrt_mod(D, q);
    if (!r)
        return roots;
    i64 x = *r;
    i64 qk = q;
    for (int k = 1; k < e; ++k) {
        i64 const next = qk * q;
        // x <- x - (x^2 - D) / (2x)  (mod q^(k+1))
        i64 const f = mod(static_cast<i64>(static_cast<__int128>(x) * x % next) - D, next);
        x = mod(x - static_cast<i64>(static_cast<__int128>(f) * invmod(2 * x, next) % next), next);
        qk = next;
    }
    roots.push_back(x);
    if (mod(-x, modulus) != x)
        roots.push_back(mod(-x, modulus));
    return roots;
}

}  // namespace

i64 sqrt_disc_mod(QuadField const & K, i64 N)
{
    i64 const D = K.disc();
    if (N <= 0)
        throw std::invalid_argument("sqrt_disc_mod: N must be positive");
    if (std::gcd(N, std::abs(D)) != 1 || !heegner_hypothesis(K, N).holds)
        throw NoSquareRoot("no square root of " + std::to_string(D) + " modulo 4N for N = " +
                           std::to_string(N));
    // Combine the roots modulo each prime power of 4N by CRT.
    Factorization f = factorize(static_cast<u64>(N));
    std::vector<std::pair<std::vector<i64>, i64>> local;
    bool two_seen = false;
    for (auto const & [q, e] : f.factors) {
        i64 const qi = static_cast<i64>(q);
        i64 modulus = static_cast<i64>(ipow(q, static_cast<unsigned>(e)));
        if (qi == 2) {
            modulus *= 4;
            two_seen = true;
        }
        auto roots = roots_mod_prime_power(D, qi, e, modulus);
        if (roots.empty())
            throw NoSquareRoot("D has no square root modulo " + std::to_string(modulus));
        local.emplace_back(std::move(roots), modulus);
    }
    if (!two_seen)
        local.emplace_back(roots_mod_prime_power(D, 2, 0, 4), 4);

    std::vector<i64> combined{0};
    i64 modulus = 1;
    for (auto const & [roots, m] : local) {
        std::vector<i64> next;
        for (i64 x : combined)
            for (i64 r : roots)
                next.push_back(crt(x, modulus, r, m));
        combined = std::move(next);
        modulus *= m;
    }
    // modulus == 4N; roots come in pairs beta, beta + 2N (mod 4N)
    i64 best = 2 * N;
    for (i64 x : combined)
        best = std::min(best, mod(x, 2 * N));
    if (best == 2 * N || mod(best * best - D, 4 * N) != 0)
        throw NoSquareRoot("square root assembly failed");
    return best;
}

std::vector<QuadForm> heegner_forms(QuadField const & K, i64 N, i64 beta)
{
    i64 const D = K.disc();
    i64 const h = K.class_number();
    std::map<QuadForm, QuadForm> by_class;
    std::vector<QuadForm> out;
    for (i64 ap = 1; static_cast<i64>(out.size()) < h; ++ap) {
        i64 const a = N * ap;
        // b ranges over one period (-a, a] of b -> b + 2a (translation tau -> tau + 1)
        i64 b = -a + 1 + mod(beta - (-a + 1), 2 * N);
        for (; b <= a; b += 2 * N) {
            i64 const num = b * b - D;
            if (num % (4 * a) != 0)
                continue;
            i64 const c = num / (4 * a);
            if (std::gcd(std::gcd(a, std::abs(b)), c) != 1)
                continue;
            QuadForm const form{a, b, c};
            if (by_class.emplace(form.reduced(), form).second)
                out.push_back(form);
        }
    }
    return out;
}

QuadElem QuadElem::inverse() const
{
    Rational const n = norm();
    if (sgn(n) == 0)
        throw std::domain_error("QuadElem: division by zero");
    return {r_ / n, -s_ / n, D_};
}

QuadElem & QuadElem::operator+=(QuadElem const & o)
{
    r_ += o.r_;
    s_ += o.s_;
    if (D_ == 0)
        D_ = o.D_;
    return *this;
}

QuadElem & QuadElem::operator-=(QuadElem const & o)
{
    r_ -= o.r_;
    s_ -= o.s_;
    if (D_ == 0)
        D_ = o.D_;
    return *this;
}

QuadElem & QuadElem::operator*=(QuadElem const & o)
{
    if (D_ == 0)
        D_ = o.D_;
    Rational const r = r_ * o.r_ + D_ * s_ * o.s_;
    Rational const s = r_ * o.s_ + s_ * o.r_;
    r_ = r;
    s_ = s;
    return *this;
}

QuadElem & QuadElem::operator/=(QuadElem const & o)
{
    QuadElem inv = o.inverse();
    if (D_ == 0)
        D_ = o.D_;
    return *this *= inv;
}

std::ostream & operator<<(std::ostream & o, QuadElem const & x)
{
    return o << to_string(x);
}

std::string to_string(QuadElem const & x)
{
    std::ostringstream os;
    if (x.is_rational()) {
        os << x.re().get_str();
        return os.str();
    }
    if (sgn(x.re()) != 0)
        os << x.re().get_str() << (sgn(x.im()) > 0 ? " + " : " - ");
    else if (sgn(x.im()) < 0)
        os << "-";
    Rational const s = abs(x.im());
    if (s != 1)
        os << s.get_str() << "*";
    os << "sqrt(" << x.disc() << ")";
    return os.str();
}

}  // namespace finesel
