#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "quadrature.hpp"
#include "real.hpp"
#include "weights.hpp"

namespace heunlab::coulomb {

using weights::Family;
using weights::WeightSpec;

/// Closed forms of the arcsine-kernel integrals over [a,b], 0 < a < b
/// (the t-shifted one needs t > -a):
///   1: int dx / sqrt((b-x)(x-a))        = pi
///   2: int x dx / sqrt(..)              = pi (a+b)/2
///   3: int dx / (x sqrt(..))            = pi / sqrt(ab)
///   4: int dx / (x^2 sqrt(..))          = pi (a+b) / (2 (ab)^{3/2})
///   5: int dx / ((x+t) sqrt(..))        = pi / sqrt((b+t)(a+t))
inline Real appendix_integral(int kind, const Real& a, const Real& b, const Real& t = Real(0)) {
    if (!(a < b)) throw DomainError("appendix_integral needs a < b");
    Real P = pi(a.prec() > b.prec() ? a.prec() : b.prec());
    switch (kind) {
        case 1:
            return P;
        case 2:
            return P * (a + b) / 2;
        case 3:
            if (!(a > 0)) throw DomainError("int3 needs 0 < a");
            return P / sqrt(a * b);
        case 4:
            if (!(a > 0)) throw DomainError("int4 needs 0 < a");
            return P * (a + b) / (2 * a * b * sqrt(a * b));
        case 5:
            if (!(a + t > 0)) throw DomainError("int5 needs t > -a");
            return P / sqrt((b + t) * (a + t));
    }
    throw DomainError("appendix_integral kind must be 1..5");
}

/// int_a^b f(x)/sqrt((b-x)(x-a)) dx by the x = m + r cos(theta) substitution
/// and composite Gauss-Legendre in theta, panels doubling until agreement.
inline Real theta_integral(const Real& a, const Real& b, const Real& rel_tol,
                           const std::function<Real(const Real&)>& f) {
    Real m = (a + b) / 2, r = (b - a) / 2;
    Precision prec = m.prec();
    Real P = pi(prec);
    auto pass = [&](int panels, int g) {
        Real sum(0);
        for (int k = 0; k < panels; ++k) {
            Real lo = P * k / panels, hi = P * (k + 1) / panels;
            sum += quad::gl_integrate(lo, hi, g, prec,
                                      [&](const Real& th) { return f(m + r * cos(th)); });
        }
        return sum;
    };
    Real prev = pass(8, 24);
    for (int panels = 16; panels <= 2048; panels *= 2) {
        Real cur = pass(panels, 24);
        if (abs(cur - prev) <= rel_tol * max(Real(1), abs(cur))) return cur;
        prev = cur;
    }
    throw NonConvergence("theta_integral refinement stalled");
}

struct SupportEndpoints {
    Real a;
    Real b;
    long n = 0;
};

namespace detail {

/// Initial endpoint guesses per family (classical limits solved exactly).
inline std::pair<Real, Real> seed_endpoints(const WeightSpec& w, long n) {
    switch (w.family) {
        case Family::JacobiExpLinear:
        case Family::JacobiExpInverse: {
            // t = 0 Jacobi endpoints: sqrt(ab) = a0/(2n+a0+b0), sqrt((1-a)(1-b)) = b0/(...)
            Real s = 2 * Real(n) + w.alpha + w.beta;
            Real pr = w.alpha / s, qr = w.beta / s;
            Real ab = pr * pr;
            Real m = (1 + ab - qr * qr) / 2;
            Real d = sqrt(m * m - ab);
            return {m - d, m + d};
        }
        case Family::LaguerreShifted: {
            // lambda = 0 Laguerre endpoints: ab = alpha^2, a+b = 2(2n+alpha)
            Real m = 2 * Real(n) + w.alpha;
            Real d = sqrt(m * m - w.alpha * w.alpha);
            return {m - d, m + d};
        }
        case Family::LaguerreExpInverse: {
            Real m = 2 * Real(n) + w.alpha;
            Real d = sqrt(m * m - w.alpha * w.alpha);
            return {m - d, m + d};
        }
        case Family::GaussianGap: {
            if (!w.t.is_zero())
                throw DomainError("coulomb endpoints need single-interval support (a = 0)");
            Real e = sqrt(2 * Real(n));
            return {-e * Real::parse("0.95"), e * Real::parse("0.95")};
        }
        default:
            throw DomainError("no Coulomb endpoint seed for this family");
    }
}

}  // namespace detail

/// Solve the two stability conditions
///   int_a^b x v'(x)/sqrt((b-x)(x-a)) dx = 2 n pi,
///   int_a^b   v'(x)/sqrt((b-x)(x-a)) dx = 0
/// by damped Newton with a numeric Jacobian on the theta-substituted
/// Gauss-Legendre quadratures.
inline SupportEndpoints endpoints_generic(const WeightSpec& w, long n) {
    auto [a0, b0] = detail::seed_endpoints(w, n);
    Precision prec = default_precision();
    Real qtol = pow2(-100, prec);
    auto vp = weights::vprime_form(w);
    Real two_n_pi = 2 * Real(n) * pi(prec);
    auto F = [&](const Real& a, const Real& b, Real& f1, Real& f2) {
        f1 = theta_integral(a, b, qtol, [&](const Real& x) { return x * vp.eval(x); }) - two_n_pi;
        f2 = theta_integral(a, b, qtol, [&](const Real& x) { return vp.eval(x); });
    };
    Real a = a0, b = b0;
    Real f1, f2;
    F(a, b, f1, f2);
    Real tol = Real::parse("1e-25");
    for (int it = 0; it < 200; ++it) {
        Real scale = max(abs(f1), abs(f2));
        if (scale <= tol * max(Real(1), 2 * Real(n))) return {a, b, n};
        // finite-difference step kept well above the quadrature noise floor
        Real ha = max(abs(a), Real(1)) * pow2(-80, prec);
        Real hb = max(abs(b), Real(1)) * pow2(-80, prec);
        Real f1a, f2a, f1b, f2b;
        F(a + ha, b, f1a, f2a);
        F(a, b + hb, f1b, f2b);
        Real j11 = (f1a - f1) / ha, j12 = (f1b - f1) / hb;
        Real j21 = (f2a - f2) / ha, j22 = (f2b - f2) / hb;
        Real det = j11 * j22 - j12 * j21;
        if (det.is_zero()) throw NoConvergence("endpoints_generic: singular Jacobian");
        Real da = -(j22 * f1 - j12 * f2) / det;
        Real db = -(-j21 * f1 + j11 * f2) / det;
        // damping: halve while the residual norm grows
        Real step(1);
        for (int d = 0; d < 40; ++d) {
            Real an = a + step * da, bn = b + step * db;
            if (an < bn) {
                Real g1, g2;
                F(an, bn, g1, g2);
                if (max(abs(g1), abs(g2)) < max(abs(f1), abs(f2)) || step < Real::parse("1e-6")) {
                    a = an;
                    b = bn;
                    f1 = g1;
                    f2 = g2;
                    break;
                }
            }
            step /= 2;
            if (d == 39) throw NoConvergence("endpoints_generic: damping exhausted");
        }
    }
    throw NoConvergence("endpoints_generic: Newton did not converge in 200 iterations");
}

namespace detail {

/// Scalar damped Newton on f with WrongRoot guard relative to the seed.
inline Real newton_scalar(const std::function<Real(const Real&)>& f, const Real& x0,
                          const char* what) {
    Precision prec = x0.prec();
    Real x = x0;
    Real fx = f(x);
    Real h0 = pow2(-(prec / 2), prec);
    Real tol = Real::parse("1e-25");
    for (int it = 0; it < 200; ++it) {
        Real h = max(abs(x), Real(1)) * h0;
        Real dfx = (f(x + h) - fx) / h;
        if (dfx.is_zero()) throw NoConvergence(std::string(what) + ": flat derivative");
        Real step = fx / dfx;
        Real damp(1);
        Real xn, fn;
        for (int d = 0;; ++d) {
            xn = x - damp * step;
            fn = f(xn);
            if (abs(fn) < abs(fx) || damp < Real::parse("1e-8")) break;
            damp /= 2;
            if (d > 60) throw NoConvergence(std::string(what) + ": damping exhausted");
        }
        if (abs(xn - x0) > abs(x0) / 2)
            throw WrongRoot(std::string(what) + ": Newton left the seeded branch");
        bool done = abs(xn - x) <= tol * max(Real(1), abs(xn));
        x = xn;
        fx = fn;
        if (done) return x;
    }
    throw NoConvergence(std::string(what) + ": no convergence");
}

}  // namespace detail

/// Family-specific algebraic endpoint solve: the published polynomial (or
/// rational) equation for the auxiliary unknown, Newton-seeded from its
/// asymptotic value, then the published recovery of (a+b)/2 and ab.
inline SupportEndpoints endpoints_algebraic(const WeightSpec& w, long n) {
    const Real& t = w.t;
    switch (w.family) {
        case Family::JacobiExpLinear: {
            const Real &al = w.alpha, &be = w.beta;
            Real nn(n);
            auto quintic = [&](const Real& X) {
                return 2 * al * al * al * pow(X, 5L) -
                       al * al * (2 * al + 2 * be + 5 * t + 4 * nn) * pow(X, 4L) +
                       4 * al * t * (2 * nn + al + be + t) * pow(X, 3L) -
                       t * (4 * t * nn - al * al + 2 * al * t + (be + t) * (be + t)) * X * X -
                       2 * al * t * t * X + t * t * t;
            };
            Real X0 = (2 * nn + al + be) / al;
            if (t.is_zero()) {
                auto [a, b] = detail::seed_endpoints(w, n);
                return {a, b, n};
            }
            Real X = detail::newton_scalar(quintic, X0, "jacobi_exp_linear quintic");
            Real m = (2 * nn + al + be + t - al * X) / t;
            Real ab = 1 / (X * X);
            Real d = sqrt(m * m - ab);
            return {m - d, m + d, n};
        }
        case Family::JacobiExpInverse: {
            const Real &al = w.alpha, &be = w.beta;
            Real nn(n);
            Real s = 2 * nn + al + be;
            auto eq = [&](const Real& Y) {
                return t * pow(Y, 3L) / 2 - be * be * t * pow(Y, 3L) / (2 * (t * Y + s) * (t * Y + s)) +
                       al * Y - t * Y / 2 - s;
            };
            Real Y0 = s / al;
            if (t.is_zero()) {
                auto [a, b] = detail::seed_endpoints(w, n);
                return {a, b, n};
            }
            Real Y = detail::newton_scalar(eq, Y0, "jacobi_exp_inverse quintic");
            Real m = (s - (al - t) * Y) / (t * Y * Y * Y);
            Real ab = 1 / (Y * Y);
            Real d = sqrt(m * m - ab);
            return {m - d, m + d, n};
        }
        case Family::LaguerreShifted: {
            const Real &al = w.alpha, &la = w.lambda;
            Real nn(n);
            Real c = al + la + 2 * nn;
            auto eq = [&](const Real& Y) {
                Real u = Y - c;
                Real v = Y - c + t;
                return u * u * ((t * t + 2 * t * Y) * v * v + al * al * t * t) -
                       la * la * t * t * v * v;
            };
            if (la.is_zero() || t.is_zero()) {
                auto [a, b] = detail::seed_endpoints(w, n);
                return {a, b, n};
            }
            // The bare t=0 seed Y = c sits exactly between the two nearby
            // roots u = +-lambda sqrt(t/(2Y)); nudge toward the physical
            // branch with the leading large-n correction.
            Real Y0 = c - la * sqrt(t) / (2 * sqrt(Real(n)));
            Real Y = detail::newton_scalar(eq, Y0, "laguerre_shifted sextic");
            Real m = Y;
            Real rc = t * al / (Y - (c - t));  // = sqrt(ab)
            Real ab = rc * rc;
            Real d = sqrt(m * m - ab);
            return {m - d, m + d, n};
        }
        default:
            throw DomainError("no published algebraic endpoint equation for this family");
    }
}

/// Coulomb-fluid predictions for the recurrence coefficients.
inline std::pair<Real, Real> predicted_recurrence(const SupportEndpoints& ep) {
    Real alpha_pred = (ep.a + ep.b) / 2;
    Real q = (ep.b - ep.a) / 4;
    return {alpha_pred, q * q};
}

}  // namespace heunlab::coulomb
