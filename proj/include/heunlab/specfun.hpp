#pragma once

#include <cstddef>

#include "errors.hpp"
#include "real.hpp"

namespace heunlab::specfun {

inline constexpr long kSeriesCap = 10000;

/// Gamma function. MPFR's implementation is correctly rounded at the working
/// precision, so accuracy scales with the precision of x.
inline Real gamma(const Real& x) {
    if (x <= 0 && is_integer(x)) throw PoleError("gamma pole at non-positive integer " + x.str(8));
    Real r(x.prec());
    mpfr_gamma(r.raw(), x.raw(), MPFR_RNDN);
    return r;
}

inline Real ln_gamma(const Real& x) {
    if (x <= 0) throw DomainError("ln_gamma needs positive argument");
    Real r(x.prec());
    mpfr_lngamma(r.raw(), x.raw(), MPFR_RNDN);
    return r;
}

inline Real beta(const Real& a, const Real& b) { return gamma(a) * gamma(b) / gamma(a + b); }

struct KummerArgs {
    Real a;
    Real b;
    Real x;
};

/// Kummer's confluent hypergeometric function of the first kind,
/// M(a;b;x) = sum_k (a)_k x^k / ((b)_k k!).
/// Terms are summed with 64 guard bits; truncation once a term drops below
/// 2^(-prec-16) of the partial sum.
inline Real kummer_m(const KummerArgs& args) {
    const Real& a = args.a;
    const Real& b = args.b;
    const Real& x = args.x;
    if (b <= 0 && is_integer(b)) throw PoleError("kummer_m: b is a non-positive integer");
    Precision p = x.prec() > a.prec() ? x.prec() : a.prec();
    if (b.prec() > p) p = b.prec();
    const Precision wp = p + 64;
    Real term = Real::with_prec(wp, 1);
    Real sum = Real::with_prec(wp, 1);
    Real cutoff = pow2(-(p + 16), wp);
    for (long k = 0; k < kSeriesCap; ++k) {
        // term_{k+1} = term_k * (a+k) x / ((b+k)(k+1))
        term *= (a + k);
        term *= x;
        term /= (b + k);
        term /= (k + 1);
        sum += term;
        if (abs(term) < cutoff * abs(sum)) return sum.round_to(p);
        if (a + k == 0) return sum.round_to(p);  // polynomial case terminates exactly
    }
    throw NonConvergence("kummer_m: series cap exceeded");
}

inline Real kummer_m(const Real& a, const Real& b, const Real& x) {
    return kummer_m(KummerArgs{a, b, x});
}

/// d/dx M(a;b;x) = (a/b) M(a+1;b+1;x)
inline Real kummer_m_deriv(const Real& a, const Real& b, const Real& x) {
    return a / b * kummer_m(a + 1, b + 1, x);
}

/// Generalized Laguerre polynomial L_n^a(x) by its finite sum
/// L_n^a(x) = sum_{k=0}^n binom(n+a, n-k) (-x)^k / k!.
inline Real laguerre_gen(long n, const Real& a, const Real& x) {
    if (n < 0) throw DomainError("laguerre_gen: negative degree");
    Precision p = a.prec() > x.prec() ? a.prec() : x.prec();
    const Precision wp = p + 64;
    // binom(n+a, n-k) = prod_{j=k+1}^{n} (a+j) / (n-k)!  ... build terms from k=n down.
    // Walk k = 0..n with term_k = binom(n+a, n-k)(-x)^k/k!:
    //   term_0 = binom(n+a, n) = (a+1)(a+2)...(a+n)/n!
    Real term = Real::with_prec(wp, 1);
    for (long j = 1; j <= n; ++j) {
        term *= (a + j);
        term /= j;
    }
    Real sum = term;
    // term_{k+1}/term_k = -(x) (n-k) / ((a+k+1)(k+1))
    for (long k = 0; k < n; ++k) {
        term *= x;
        term *= -(n - k);
        term /= (a + k + 1);
        term /= (k + 1);
        sum += term;
    }
    return sum.round_to(p);
}

/// Rising factorial (x)_n.
inline Real pochhammer(const Real& x, long n) {
    Real r = Real::with_prec(x.prec(), 1);
    for (long k = 0; k < n; ++k) r *= (x + k);
    return r;
}

}  // namespace heunlab::specfun
