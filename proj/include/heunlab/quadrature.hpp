#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "errors.hpp"
#include "real.hpp"

namespace heunlab::quad {

/// How a piece's integration variable u maps to the weight's variable x.
enum class MapKind {
    Identity,  // x = u
    Inverse,   // x = 1/u  (used to unfold essential singularities at 0)
};

/// One smooth piece of an integration domain, already truncated to a finite
/// interval in the integration variable u. `ts` selects tanh-sinh nodes
/// (needed where an integrable endpoint singularity lives); otherwise the
/// piece is analytic up to its closure and composite Gauss-Legendre panels
/// (polynomial-exact) are used.
struct Piece {
    Real lo;
    Real hi;
    MapKind map = MapKind::Identity;
    std::string tag;
    bool ts = true;
};

/// A quadrature node. `x` is the weight-variable point, `dlo`/`dhi` are the
/// exact-to-rounding distances of u to the piece endpoints (used to evaluate
/// algebraically singular factors without cancellation), and `w` is the
/// quadrature weight including the |dx/du| factor of the piece map.
struct QNode {
    Real u;
    Real x;
    Real dlo;
    Real dhi;
    Real w;
};

/// tanh-sinh nodes for a finite piece at refinement `level` (step 2^-level).
/// Truncation of the node sum is fixed at |tau| <= 7, which keeps endpoint
/// distances down to ~exp(-1700): enough for integrable endpoint blowups
/// d^(-1+delta) with delta >= 0.2 at 256-bit working precision.
inline std::vector<QNode> tanh_sinh_nodes(const Piece& piece, int level, Precision prec) {
    const Real half_pi = pi(prec) / 2;
    const Real r = (piece.hi - piece.lo) / 2;
    const Real m = (piece.hi + piece.lo) / 2;
    const Real h = pow2(-level, prec);
    const long jmax = 7L << level;
    std::vector<QNode> nodes;
    nodes.reserve(static_cast<size_t>(2 * jmax + 1));
    for (long j = -jmax; j <= jmax; ++j) {
        Real tau = Real::with_prec(prec, j) * h;
        Real y = half_pi * sinh(tau);
        Real e2y = exp(2 * y);
        Real denom = 1 + e2y;
        Real dhi_u = 2 * r / denom;        // hi - u
        Real dlo_u = dhi_u * e2y;          // u - lo
        Real u = m + r * (e2y - 1) / denom;  // = m + r tanh(y)
        // dx/dtau = r (pi/2) cosh(tau) sech^2(y); sech^2(y) = 4 e2y / (1+e2y)^2
        Real w = r * half_pi * cosh(tau) * 4 * e2y / (denom * denom);
        w *= h;
        if (w.is_zero() || !w.is_finite()) continue;
        QNode n{u, u, dlo_u, dhi_u, w};
        if (piece.map == MapKind::Inverse) {
            n.x = 1 / u;
            n.w = w / (u * u);
        }
        nodes.push_back(std::move(n));
    }
    return nodes;
}

/// Integrate f over one piece with tanh-sinh at a fixed level. `f` receives
/// the full node (so it can use dlo/dhi for singular factors).
inline Real integrate_piece(const Piece& piece, int level, Precision prec,
                            const std::function<Real(const QNode&)>& f) {
    Real sum = Real::with_prec(prec + 32, 0);
    for (const QNode& n : tanh_sinh_nodes(piece, level, prec)) {
        Real v = f(n);
        if (v.is_zero()) continue;
        sum.add_mul(v, n.w);
    }
    return sum.round_to(prec);
}

/// Doubling tanh-sinh until two levels agree to rel_tol (or max level).
inline Real integrate_adaptive(const Piece& piece, Precision prec, const Real& rel_tol,
                               const std::function<Real(const QNode&)>& f, int level0 = 6,
                               int level_max = 12) {
    Real prev = integrate_piece(piece, level0, prec, f);
    for (int level = level0 + 1; level <= level_max; ++level) {
        Real cur = integrate_piece(piece, level, prec, f);
        Real scale = max(abs(cur), Real(1));
        if (abs(cur - prev) <= rel_tol * scale) return cur;
        prev = cur;
    }
    throw NonConvergence("tanh-sinh refinement stalled on piece " + piece.tag);
}

/// Gauss-Legendre nodes and weights on [-1,1], computed at working precision
/// by Newton iteration on the three-term recurrence.
struct GLRule {
    std::vector<Real> x;
    std::vector<Real> w;
};

inline const GLRule& gauss_legendre(int g, Precision prec) {
    static std::map<std::pair<int, Precision>, std::unique_ptr<GLRule>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(g, prec);
    auto it = cache.find(key);
    if (it != cache.end()) return *it->second;

    auto rule = std::make_unique<GLRule>();
    rule->x.reserve(g);
    rule->w.reserve(g);
    const Real one(1);
    for (int k = 1; k <= g; ++k) {
        // Chebyshev-style initial guess, then Newton on P_g.
        Real x0 = cos(pi(prec) * (Real(k) - Real(1) / 4) / (Real(g) + Real(1) / 2));
        Real x = x0;
        for (int it2 = 0; it2 < 64; ++it2) {
            Real p0(1), p1 = x;
            for (int j = 2; j <= g; ++j) {
                Real p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            // P_g'(x) = g (x P_g - P_{g-1}) / (x^2 - 1)
            Real dp = Real(g) * (x * p1 - p0) / (x * x - one);
            Real dx = p1 / dp;
            x -= dx;
            if (abs(dx) <= pow2(-(prec - 4), prec) * max(abs(x), one)) break;
        }
        Real p0(1), p1 = x;
        for (int j = 2; j <= g; ++j) {
            Real p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
            p0 = p1;
            p1 = p2;
        }
        Real dp = Real(g) * (x * p1 - p0) / (x * x - one);
        rule->x.push_back(x);
        rule->w.push_back(2 / ((one - x * x) * dp * dp));
    }
    const GLRule& ref = *rule;
    cache[key] = std::move(rule);
    return ref;
}

/// Composite Gauss-Legendre nodes for a smooth piece: panels double in width
/// away from the lower end (capturing e^{-x}-type decay profiles), each with
/// g_base + 8*2^(level-6) points, where g_base should be at least half the
/// polynomial degree the rule must integrate exactly.
inline std::vector<QNode> gl_panel_nodes(const Piece& piece, int level, Precision prec,
                                         int g_base) {
    int g = g_base + (level >= 6 ? (8 << (level - 6)) : 8);
    std::vector<QNode> nodes;
    std::vector<std::pair<Real, Real>> panels;
    Real len = piece.hi - piece.lo;
    Real cur = piece.lo;
    Real w = min(Real(1), len);
    while (cur < piece.hi) {
        Real next = min(piece.hi, cur + w);
        panels.push_back({cur, next});
        cur = next;
        w = w * 2;
    }
    const GLRule& rule = gauss_legendre(g, prec);
    for (const auto& [a, b] : panels) {
        Real m = (a + b) / 2, r = (b - a) / 2;
        for (int i = 0; i < g; ++i) {
            Real u = m + r * rule.x[i];
            QNode n{u, u, u - piece.lo, piece.hi - u, r * rule.w[i]};
            if (piece.map == MapKind::Inverse) {
                n.x = 1 / u;
                n.w = n.w / (u * u);
            }
            nodes.push_back(std::move(n));
        }
    }
    return nodes;
}

/// Gauss-Legendre sum of f over [lo,hi].
inline Real gl_integrate(const Real& lo, const Real& hi, int g, Precision prec,
                         const std::function<Real(const Real&)>& f) {
    const GLRule& rule = gauss_legendre(g, prec);
    Real m = (lo + hi) / 2, r = (hi - lo) / 2;
    Real sum = Real::with_prec(prec + 32, 0);
    for (int i = 0; i < g; ++i) {
        Real v = f(m + r * rule.x[i]);
        sum.add_mul(v, rule.w[i]);
    }
    return (sum * r).round_to(prec);
}

/// Composite Gauss-Legendre over a piece with panels graded dyadically toward
/// singular endpoints. Independent of the tanh-sinh path; used as the second
/// quadrature of dual-quadrature checks.
/// `sing_lo`/`sing_hi`: whether the integrand may blow up (integrably) there.
inline Real gl_graded(const Piece& piece, Precision prec, bool sing_lo, bool sing_hi, int g,
                      int grades, const std::function<Real(const Real& x, const Real& dlo,
                                                           const Real& dhi)>& f) {
    // Panel breakpoints in u: dyadically doubling panels away from graded ends.
    std::vector<Real> cuts;
    cuts.push_back(piece.lo);
    Real len = piece.hi - piece.lo;
    std::vector<Real> mids;
    if (sing_lo && sing_hi) {
        for (int k = grades; k >= 2; --k) mids.push_back(piece.lo + len * pow2(-k, prec));
        mids.push_back(piece.lo + len / 2);
        for (int k = 2; k <= grades; ++k) mids.push_back(piece.hi - len * pow2(-k, prec));
    } else if (sing_lo) {
        for (int k = grades; k >= 1; --k) mids.push_back(piece.lo + len * pow2(-k, prec));
    } else if (sing_hi) {
        for (int k = 1; k <= grades; ++k) mids.push_back(piece.hi - len * pow2(-k, prec));
    } else {
        for (int k = 1; k < 8; ++k) mids.push_back(piece.lo + len * k / 8);
    }
    for (auto& c : mids) cuts.push_back(c);
    cuts.push_back(piece.hi);
    Real sum = Real::with_prec(prec + 32, 0);
    for (size_t i = 0; i + 1 < cuts.size(); ++i) {
        const Real &a = cuts[i], &b = cuts[i + 1];
        if (!(b > a)) continue;
        Real v = gl_integrate(a, b, g, prec, [&](const Real& u) {
            Real dlo = u - piece.lo;
            Real dhi = piece.hi - u;
            if (piece.map == MapKind::Inverse) {
                Real x = 1 / u;
                return f(x, dlo, dhi) / (u * u);
            }
            return f(u, dlo, dhi);
        });
        sum += v;
    }
    return sum.round_to(prec);
}

/// Least-squares slope of log(y) against log(x); used by convergence fits.
inline Real loglog_slope(const std::vector<Real>& xs, const std::vector<Real>& ys,
                         Real* residual = nullptr) {
    if (xs.size() != ys.size() || xs.size() < 2) throw DomainError("loglog_slope: bad grid");
    size_t n = xs.size();
    std::vector<Real> lx, ly;
    for (size_t i = 0; i < n; ++i) {
        if (!(ys[i] > 0)) throw DomainError("loglog_slope: non-positive value");
        lx.push_back(log(xs[i]));
        ly.push_back(log(ys[i]));
    }
    Real mx(0), my(0);
    for (size_t i = 0; i < n; ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= static_cast<long>(n);
    my /= static_cast<long>(n);
    Real sxx(0), sxy(0);
    for (size_t i = 0; i < n; ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    Real slope = sxy / sxx;
    if (residual) {
        Real ss(0);
        for (size_t i = 0; i < n; ++i) {
            Real e = ly[i] - my - slope * (lx[i] - mx);
            ss += e * e;
        }
        *residual = sqrt(ss / static_cast<long>(n));
    }
    return slope;
}

}  // namespace heunlab::quad
