#pragma once

#include <cmath>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "quadrature.hpp"
#include "real.hpp"
#include "specfun.hpp"

namespace heunlab::weights {

enum class Family {
    JacobiExpLinear,    // x^a (1-x)^b e^{-tx} on [0,1]
    JacobiExpInverse,   // x^a (1-x)^b e^{-t/x} on (0,1]
    ReesJacobi,         // (1-x^2)^a (1-k^2 x^2)^b on [-1,1], t holds k^2
    LaguerreShifted,    // x^a (x+t)^l e^{-x} on [0,inf)
    LaguerreExpInverse, // x^a e^{-x-t/x} on (0,inf)
    GaussianGap,        // e^{-x^2} off (-a,a), t holds a
    JacobiGap,          // (1-x^2)^a off (-a,a) on [-1,1], t holds a
    LaguerreStep,       // x^a e^{-x} (A + B theta(x-t)) on [0,inf)
};

inline const char* family_name(Family f) {
    switch (f) {
        case Family::JacobiExpLinear: return "jacobi_exp_linear";
        case Family::JacobiExpInverse: return "jacobi_exp_inverse";
        case Family::ReesJacobi: return "rees_jacobi";
        case Family::LaguerreShifted: return "laguerre_shifted";
        case Family::LaguerreExpInverse: return "laguerre_exp_inverse";
        case Family::GaussianGap: return "gaussian_gap";
        case Family::JacobiGap: return "jacobi_gap";
        case Family::LaguerreStep: return "laguerre_step";
    }
    return "?";
}

/// One of the eight deformed weight families. The deformation parameter `t`
/// doubles as k^2 (ReesJacobi), the gap half-width a (gap families) and the
/// jump point (LaguerreStep). Classical limits are reached by t = 0
/// (resp. k = 0, a = 0, lambda = 0), not by separate tags.
struct WeightSpec {
    Family family;
    Real alpha{0};
    Real beta{0};
    Real lambda{0};
    Real t{0};
    Real A{0};
    Real B{0};

    Real k2() const { return t; }
    Real gap_a() const { return t; }

    void validate() const {
        auto pos = [](const Real& v, const char* nm) {
            if (!(v >= 0)) throw DomainError(std::string("weight parameter ") + nm + " must be >= 0");
        };
        switch (family) {
            case Family::JacobiExpLinear:
            case Family::JacobiExpInverse:
                if (!(alpha > 0) || !(beta > 0)) throw DomainError("alpha,beta must be > 0");
                pos(t, "t");
                break;
            case Family::ReesJacobi:
                if (!(alpha > 0) || !(beta >= 0)) throw DomainError("alpha>0, beta>=0 required");
                if (!(t >= 0) || !(t < 1)) throw DomainError("k^2 must lie in [0,1)");
                break;
            case Family::LaguerreShifted:
                if (!(alpha > 0)) throw DomainError("alpha must be > 0");
                pos(lambda, "lambda");
                pos(t, "t");
                if (lambda > 0 && !(t > 0)) throw DomainError("t must be > 0 when lambda > 0");
                break;
            case Family::LaguerreExpInverse:
                if (!(alpha > 0)) throw DomainError("alpha must be > 0");
                pos(t, "t");
                break;
            case Family::GaussianGap:
                pos(t, "a");
                break;
            case Family::JacobiGap:
                if (!(alpha > 0)) throw DomainError("alpha must be > 0");
                if (!(t >= 0) || !(t < 1)) throw DomainError("a must lie in [0,1)");
                break;
            case Family::LaguerreStep:
                if (!(alpha > 0)) throw DomainError("alpha must be > 0");
                if (!(t >= 0)) throw DomainError("t must be >= 0");
                if (!(A >= 0) || !(A + B >= 0)) throw DomainError("need A >= 0 and A+B >= 0");
                break;
        }
    }
};

/// Closed support intervals (possibly unbounded) with breakpoints.
struct Interval {
    Real lo;
    Real hi;
    bool hi_infinite = false;
};

inline std::vector<Interval> support(const WeightSpec& w) {
    switch (w.family) {
        case Family::JacobiExpLinear:
        case Family::JacobiExpInverse:
            return {{Real(0), Real(1)}};
        case Family::ReesJacobi:
            return {{Real(-1), Real(1)}};
        case Family::LaguerreShifted:
        case Family::LaguerreExpInverse:
            return {{Real(0), Real(0), true}};
        case Family::GaussianGap: {
            if (w.t.is_zero()) return {{Real(0), Real(0), true}, {Real(0), Real(0), true}};
            return {{w.t, Real(0), true}, {-w.t, Real(0), true}};
        }
        case Family::JacobiGap:
            return {{w.t, Real(1)}, {Real(-1), -w.t}};
        case Family::LaguerreStep:
            return {{Real(0), Real(0), true}};
    }
    return {};
}

/// Weight value at x. Gap interiors give 0; outside the support closure is an
/// error. LaguerreStep is right-continuous at the jump (value A+B at x = t).
inline Real evaluate(const WeightSpec& w, const Real& x) {
    switch (w.family) {
        case Family::JacobiExpLinear: {
            if (x < 0 || x > 1) throw DomainError("x outside [0,1]");
            return pow(x, w.alpha) * pow(1 - x, w.beta) * exp(-w.t * x);
        }
        case Family::JacobiExpInverse: {
            if (x < 0 || x > 1) throw DomainError("x outside (0,1]");
            if (x.is_zero()) return Real(0);
            return pow(x, w.alpha) * pow(1 - x, w.beta) * exp(-w.t / x);
        }
        case Family::ReesJacobi: {
            if (x < -1 || x > 1) throw DomainError("x outside [-1,1]");
            return pow(1 - x * x, w.alpha) * pow(1 - w.t * x * x, w.beta);
        }
        case Family::LaguerreShifted: {
            if (x < 0) throw DomainError("x outside [0,inf)");
            return pow(x, w.alpha) * pow(x + w.t, w.lambda) * exp(-x);
        }
        case Family::LaguerreExpInverse: {
            if (x < 0) throw DomainError("x outside (0,inf)");
            if (x.is_zero()) return Real(0);
            return pow(x, w.alpha) * exp(-x - w.t / x);
        }
        case Family::GaussianGap: {
            if (abs(x) < w.t) return Real(0);
            return exp(-x * x);
        }
        case Family::JacobiGap: {
            if (x < -1 || x > 1) throw DomainError("x outside [-1,1]");
            if (abs(x) < w.t) return Real(0);
            return pow(1 - x * x, w.alpha);
        }
        case Family::LaguerreStep: {
            if (x < 0) throw DomainError("x outside [0,inf)");
            Real amp = (x >= w.t) ? (w.A + w.B) : w.A;
            return amp * pow(x, w.alpha) * exp(-x);
        }
    }
    throw DomainError("unknown family");
}

/// v'(x) of a piecewise-smooth potential as rational structure:
/// v'(x) = cst + lin*x + sum c/(x-p) + sum d/(x-p)^2.
struct VPrimeForm {
    Real cst{0};
    Real lin{0};
    std::vector<std::pair<Real, Real>> poles;   // (p, c)
    std::vector<std::pair<Real, Real>> dpoles;  // (p, d)

    Real eval(const Real& x) const {
        Real s = cst + lin * x;
        for (auto& [p, c] : poles) s += c / (x - p);
        for (auto& [p, d] : dpoles) s += d / ((x - p) * (x - p));
        return s;
    }
    /// Divided-difference kernel (v'(z)-v'(y))/(z-y), closed form.
    Real kernel(const Real& z, const Real& y) const {
        Real s = lin;
        for (auto& [p, c] : poles) s -= c / ((z - p) * (y - p));
        for (auto& [p, d] : dpoles) s -= d * (z + y - 2 * p) / ((z - p) * (z - p) * (y - p) * (y - p));
        return s;
    }
};

inline VPrimeForm vprime_form(const WeightSpec& w) {
    VPrimeForm f;
    switch (w.family) {
        case Family::JacobiExpLinear:
            f.cst = w.t;
            f.poles = {{Real(0), -w.alpha}, {Real(1), -w.beta}};
            break;
        case Family::JacobiExpInverse:
            f.poles = {{Real(0), -w.alpha}, {Real(1), -w.beta}};
            f.dpoles = {{Real(0), -w.t}};
            break;
        case Family::ReesJacobi: {
            // v' = 2 a x/(1-x^2) + 2 b k^2 x/(1-k^2 x^2)
            //    = -a/(x-1) - a/(x+1) - b k/(kx-1)*k ... expand per simple pole
            f.poles = {{Real(1), -w.alpha}, {Real(-1), -w.alpha}};
            if (!w.t.is_zero()) {
                Real k = sqrt(w.t);
                f.poles.push_back({1 / k, -w.beta});
                f.poles.push_back({-1 / k, -w.beta});
            }
            break;
        }
        case Family::LaguerreShifted:
            f.cst = Real(1);
            f.poles = {{Real(0), -w.alpha}};
            if (!w.lambda.is_zero()) f.poles.push_back({-w.t, -w.lambda});
            break;
        case Family::LaguerreExpInverse:
            f.cst = Real(1);
            f.poles = {{Real(0), -w.alpha}};
            f.dpoles = {{Real(0), -w.t}};
            break;
        case Family::GaussianGap:
            f.lin = Real(2);
            break;
        case Family::JacobiGap:
            f.poles = {{Real(1), -w.alpha}, {Real(-1), -w.alpha}};
            break;
        case Family::LaguerreStep:
            f.cst = Real(1);
            f.poles = {{Real(0), -w.alpha}};
            break;
    }
    return f;
}

inline Real potential_dv(const WeightSpec& w, const Real& x) {
    Real wx = evaluate(w, x);
    if (!(wx > 0)) throw DomainError("v'(x) needs w(x) > 0");
    return vprime_form(w).eval(x);
}

inline Real potential_v(const WeightSpec& w, const Real& x) {
    Real wx = evaluate(w, x);
    if (!(wx > 0)) throw DomainError("v(x) needs w(x) > 0");
    return -log(wx);
}

/// Jump discontinuity of the weight: (location, w(x+)-w(x-)).
inline std::vector<std::pair<Real, Real>> jumps(const WeightSpec& w) {
    std::vector<std::pair<Real, Real>> js;
    switch (w.family) {
        case Family::GaussianGap: {
            if (w.t.is_zero()) break;
            Real wa = exp(-w.t * w.t);
            js.push_back({-w.t, -wa});
            js.push_back({w.t, wa});
            break;
        }
        case Family::JacobiGap: {
            if (w.t.is_zero()) break;
            Real wa = pow(1 - w.t * w.t, w.alpha);
            js.push_back({-w.t, -wa});
            js.push_back({w.t, wa});
            break;
        }
        case Family::LaguerreStep: {
            if (w.t.is_zero() || w.B.is_zero()) break;
            Real wt = w.B * pow(w.t, w.alpha) * exp(-w.t);
            js.push_back({w.t, wt});
            break;
        }
        default:
            break;
    }
    return js;
}

namespace detail {

/// Truncation point X for integrands bounded by x^M e^{-x}, relative to
/// Gamma(M+1), with `guard` extra bits. Done in double precision with wide
/// margins; the returned cut only ever errs on the large side.
inline double trunc_exp_tail(double M, double guard_bits) {
    double target = guard_bits * 0.6932 + std::lgamma(M + 1.0);
    double X = std::max(4.0 * M + 2.0 * guard_bits, 50.0);
    for (int i = 0; i < 60; ++i) {
        double next = M * std::log(X) + target;
        next = std::max(next, 2.0 * M + 50.0);
        if (std::abs(next - X) < 1e-6 * X) {
            X = next;
            break;
        }
        X = next;
    }
    return 1.25 * X;
}

/// Same for x^M e^{-x^2} envelopes.
inline double trunc_gauss_tail(double M, double guard_bits) {
    double target = guard_bits * 0.6932 + std::lgamma((M + 1.0) / 2.0);
    double X = std::sqrt(std::max(target, 25.0)) + std::sqrt(std::max(M, 1.0));
    for (int i = 0; i < 60; ++i) {
        double next = std::sqrt(std::max(M * std::log(std::max(X, 2.0)) + target, 25.0));
        if (std::abs(next - X) < 1e-9 * X) {
            X = next;
            break;
        }
        X = next;
    }
    return 1.25 * X + 2.0;
}

}  // namespace detail

/// Integration pieces for a weight, truncated so that everything up to
/// polynomial degree `max_degree` integrates to relative 2^-(prec+60).
inline std::vector<quad::Piece> pieces(const WeightSpec& w, long max_degree, Precision prec) {
    using quad::MapKind;
    using quad::Piece;
    std::vector<Piece> ps;
    const double guard = static_cast<double>(prec) + 90.0;
    const double ad = w.alpha.to_double(), ld = w.lambda.to_double();
    const Real q1 = Real(1) / 4, q3 = Real(3) / 4, half = Real(1) / 2;
    auto TS = [](Real lo, Real hi, const char* tag) {
        return Piece{std::move(lo), std::move(hi), MapKind::Identity, tag, true};
    };
    auto GL = [](Real lo, Real hi, const char* tag) {
        return Piece{std::move(lo), std::move(hi), MapKind::Identity, tag, false};
    };
    switch (w.family) {
        case Family::JacobiExpLinear:
            ps.push_back(TS(Real(0), q1, "edge0"));
            ps.push_back(GL(q1, q3, "mid"));
            ps.push_back(TS(q3, Real(1), "edge1"));
            break;
        case Family::JacobiExpInverse: {
            if (w.t.is_zero()) {
                ps.push_back(TS(Real(0), q1, "edge0"));
                ps.push_back(GL(q1, q3, "mid"));
                ps.push_back(TS(q3, Real(1), "edge1"));
            } else {
                double U = (guard * 0.6932 + 40.0) / w.t.to_double();
                ps.push_back({Real(2), Real(std::max(U, 16.0)), MapKind::Inverse, "left-inv", false});
                ps.push_back(GL(half, q3, "mid"));
                ps.push_back(TS(q3, Real(1), "edge1"));
            }
            break;
        }
        case Family::ReesJacobi:
            ps.push_back(TS(Real(-1), -half, "edge-1"));
            ps.push_back(GL(-half, half, "mid"));
            ps.push_back(TS(half, Real(1), "edge1"));
            break;
        case Family::LaguerreShifted: {
            double X = detail::trunc_exp_tail(static_cast<double>(max_degree) + ad + ld + 2.0, guard);
            ps.push_back(TS(Real(0), half, "edge"));
            ps.push_back(GL(half, Real(X), "bulk"));
            break;
        }
        case Family::LaguerreExpInverse: {
            double X = detail::trunc_exp_tail(static_cast<double>(max_degree) + ad + 2.0, guard);
            if (w.t.is_zero()) {
                ps.push_back(TS(Real(0), half, "edge"));
            } else {
                double U = (guard * 0.6932 + 40.0) / w.t.to_double();
                ps.push_back({Real(2), Real(std::max(U, 16.0)), MapKind::Inverse, "left-inv", false});
            }
            ps.push_back(GL(half, Real(X), "bulk"));
            break;
        }
        case Family::GaussianGap: {
            double X = detail::trunc_gauss_tail(static_cast<double>(max_degree) + 2.0, guard);
            ps.push_back(GL(w.t, Real(X), "right"));
            ps.push_back(GL(Real(-X), -w.t, "left"));
            break;
        }
        case Family::JacobiGap: {
            Real m = w.t + 3 * (1 - w.t) / 4;
            ps.push_back(GL(w.t, m, "right-mid"));
            ps.push_back(TS(m, Real(1), "right-edge"));
            ps.push_back(TS(Real(-1), -m, "left-edge"));
            ps.push_back(GL(-m, -w.t, "left-mid"));
            break;
        }
        case Family::LaguerreStep: {
            double X = detail::trunc_exp_tail(static_cast<double>(max_degree) + ad + 2.0, guard);
            if (!w.A.is_zero() && !w.t.is_zero()) {
                Real cut = min(half, Real(w.t / 2));
                ps.push_back(TS(Real(0), cut, "below-edge"));
                ps.push_back(GL(cut, w.t, "below"));
            }
            if (!(w.A + w.B).is_zero()) {
                if (w.t.is_zero()) {
                    ps.push_back(TS(Real(0), half, "edge"));
                    ps.push_back(GL(half, Real(X), "above"));
                } else {
                    ps.push_back(GL(w.t, Real(X), "above"));
                }
            }
            break;
        }
    }
    return ps;
}

/// Weight value at a quadrature node of a given piece, using endpoint
/// distances so that algebraic factors lose no accuracy near singular ends.
inline Real weight_at_node(const WeightSpec& w, const quad::Piece& piece, const quad::QNode& n) {
    switch (w.family) {
        case Family::JacobiExpLinear: {
            Real xa = piece.lo.is_zero() ? pow(n.dlo, w.alpha) : pow(n.x, w.alpha);
            Real xb = piece.hi == 1 ? pow(n.dhi, w.beta) : pow(1 - n.x, w.beta);
            return xa * xb * exp(-w.t * n.x);
        }
        case Family::JacobiExpInverse: {
            if (piece.map == quad::MapKind::Inverse) {
                // x = 1/u on [2,U]: x^a ((u-1)/u)^b e^{-t u}
                Real um1 = n.dlo + 1;  // u - 1, piece.lo = 2
                return pow(n.x, w.alpha) * pow(um1 * n.x, w.beta) * exp(-w.t * n.u);
            }
            Real xa = piece.lo.is_zero() ? pow(n.dlo, w.alpha) : pow(n.x, w.alpha);
            Real xb = piece.hi == 1 ? pow(n.dhi, w.beta) : pow(1 - n.x, w.beta);
            Real ex = w.t.is_zero() ? Real(1) : exp(-w.t / n.x);
            return xa * xb * ex;
        }
        case Family::ReesJacobi: {
            Real f1 = piece.hi == 1 ? n.dhi : Real(1 - n.x);
            Real f2 = piece.lo == -1 ? n.dlo : Real(1 + n.x);
            return pow(f1 * f2, w.alpha) * pow(1 - w.t * n.x * n.x, w.beta);
        }
        case Family::LaguerreShifted: {
            Real xa = piece.lo.is_zero() ? pow(n.dlo, w.alpha) : pow(n.x, w.alpha);
            return xa * pow(n.x + w.t, w.lambda) * exp(-n.x);
        }
        case Family::LaguerreExpInverse: {
            if (piece.map == quad::MapKind::Inverse)
                return pow(n.x, w.alpha) * exp(-n.x - w.t * n.u);
            Real xa = piece.lo.is_zero() ? pow(n.dlo, w.alpha) : pow(n.x, w.alpha);
            Real expo = w.t.is_zero() ? exp(-n.x) : exp(-n.x - w.t / n.x);
            return xa * expo;
        }
        case Family::GaussianGap:
            return exp(-n.x * n.x);
        case Family::JacobiGap: {
            Real f1 = piece.hi == 1 ? n.dhi : Real(1 - n.x);
            Real f2 = piece.lo == -1 ? n.dlo : Real(1 + n.x);
            return pow(f1 * f2, w.alpha);
        }
        case Family::LaguerreStep: {
            Real amp = (piece.lo >= w.t && !w.t.is_zero()) ? (w.A + w.B)
                       : w.t.is_zero()                     ? (w.A + w.B)
                                                           : w.A;
            Real xa = piece.lo.is_zero() ? pow(n.dlo, w.alpha) : pow(n.x, w.alpha);
            return amp * xa * exp(-n.x);
        }
    }
    throw DomainError("unknown family");
}

/// A precomputed node in the weight-ready table: W = quadrature weight times
/// weight-function value; zero-weight nodes are dropped. dlo/dhi are the
/// cancellation-free distances of x to the piece's x-range endpoints (for
/// kernels with poles at singular endpoints, where x itself may round onto
/// the endpoint).
struct NodeW {
    Real x;
    Real W;
    Real dlo;
    Real dhi;
};

/// Discretization of a weight: cached tanh-sinh node tables, one per level,
/// with the weight folded into the node weights. All quadrature of
/// polynomial-like integrands against the weight goes through this.
class WeightContext {
public:
    WeightContext(WeightSpec spec, long max_degree, Precision prec)
        : spec_(std::move(spec)), max_degree_(max_degree), prec_(prec) {
        spec_.validate();
        pieces_ = pieces(spec_, max_degree_, prec_);
    }

    const WeightSpec& spec() const { return spec_; }
    Precision prec() const { return prec_; }
    long max_degree() const { return max_degree_; }
    const std::vector<quad::Piece>& piece_list() const { return pieces_; }

    const std::vector<std::vector<NodeW>>& table(int level) const {
        auto it = tables_.find(level);
        if (it != tables_.end()) return it->second;
        std::vector<std::vector<NodeW>> tbl;
        Real floor_w = pow2(-(prec_ + 400), prec_);
        const int gbase = static_cast<int>(max_degree_ / 2) + 12;
        for (const auto& piece : pieces_) {
            std::vector<NodeW> rows;
            auto nodes = piece.ts ? quad::tanh_sinh_nodes(piece, level, prec_)
                                  : quad::gl_panel_nodes(piece, level, prec_, gbase);
            rows.reserve(nodes.size());
            const bool inv = piece.map == quad::MapKind::Inverse;
            for (const auto& n : nodes) {
                Real wv = weight_at_node(spec_, piece, n);
                if (!wv.is_finite()) throw DomainError("weight not finite at node");
                Real W = wv * n.w;
                if (abs(W) < floor_w) continue;
                // x-space endpoint distances (inverse map flips and rescales)
                Real dlo = inv ? Real(n.dhi / (n.u * piece.hi)) : n.dlo;
                Real dhi = inv ? Real(n.dlo / (n.u * piece.lo)) : n.dhi;
                rows.push_back({n.x, W, dlo, dhi});
            }
            tbl.push_back(std::move(rows));
        }
        return tables_.emplace(level, std::move(tbl)).first->second;
    }

    /// sum of W * f(x) over all pieces at a level; `l1` (when given) receives
    /// sum |W f|, the natural conditioning scale of the quadrature sum.
    Real sum(int level, const std::function<Real(const Real&)>& f, Real* l1 = nullptr) const {
        Real acc = Real::with_prec(prec_ + 32, 0);
        Real a1 = Real::with_prec(prec_ + 32, 0);
        for (const auto& rows : table(level)) {
            for (const auto& nw : rows) {
                Real v = f(nw.x);
                if (v.is_zero()) continue;
                acc.add_mul(v, nw.W);
                if (l1) a1.add_mul(abs(v), abs(nw.W));
            }
        }
        if (l1) *l1 = a1.round_to(prec_);
        return acc.round_to(prec_);
    }

    /// Adaptive integral of f against the weight; the level doubles until two
    /// consecutive levels agree within rel_tol relative to the L1 mass of the
    /// quadrature sum (cancellation-aware).
    Real integrate(const std::function<Real(const Real&)>& f, const Real& rel_tol,
                   Real scale_hint = Real(0)) const {
        Real prev = sum(level0_, f);
        for (int level = level0_ + 1; level <= level_max_; ++level) {
            Real l1;
            Real cur = sum(level, f, &l1);
            Real scale = max(max(abs(cur), scale_hint), l1);
            if (scale.is_zero()) scale = Real(1);
            if (abs(cur - prev) <= rel_tol * scale) return cur;
            prev = cur;
        }
        throw NonConvergence("weight quadrature refinement stalled");
    }

    int level0() const { return level0_; }
    int level_max() const { return level_max_; }

private:
    WeightSpec spec_;
    long max_degree_;
    Precision prec_;
    std::vector<quad::Piece> pieces_;
    mutable std::map<int, std::vector<std::vector<NodeW>>> tables_;
    int level0_ = 6;
    int level_max_ = 12;
};

/// j-th moment of the weight to relative quad_tolerance.
inline Real moment(const WeightContext& ctx, long j, const Real& rel_tol) {
    if (j < 0) throw DomainError("moment index must be >= 0");
    if (j > ctx.max_degree()) throw DomainError("moment beyond configured max degree");
    return ctx.integrate([&](const Real& x) { return pow(x, j); }, rel_tol);
}

/// Inner product of two callables against the weight.
inline Real inner_product(const WeightContext& ctx, const std::function<Real(const Real&)>& f,
                          const std::function<Real(const Real&)>& g, const Real& rel_tol) {
    return ctx.integrate([&](const Real& x) { return f(x) * g(x); }, rel_tol);
}

/// Moment vector with Hankel positive-definiteness check (leading principal
/// minors of the Hankel moment matrix must be positive).
struct MomentVector {
    std::vector<Real> mu;

    /// Cholesky-based check that det(mu_{i+j})_{0..m-1} > 0 for all m <= n.
    bool hankel_positive(long n) const {
        long dim = n;
        if (2 * (dim - 1) >= static_cast<long>(mu.size())) throw DomainError("need moments through 2(n-1)");
        std::vector<std::vector<Real>> L(dim, std::vector<Real>(dim, Real(0)));
        for (long i = 0; i < dim; ++i) {
            for (long j = 0; j <= i; ++j) {
                Real s = mu[static_cast<size_t>(i + j)];
                for (long k = 0; k < j; ++k) s -= L[i][k] * L[j][k];
                if (i == j) {
                    if (!(s > 0)) return false;
                    L[i][i] = sqrt(s);
                } else {
                    L[i][j] = s / L[j][j];
                }
            }
        }
        return true;
    }
};

inline MomentVector moments(const WeightContext& ctx, long count, const Real& rel_tol) {
    MomentVector mv;
    mv.mu.reserve(count);
    for (long j = 0; j < count; ++j) mv.mu.push_back(moment(ctx, j, rel_tol));
    return mv;
}

/// Reference parameter sets used across the verification sweeps.
inline WeightSpec default_spec(Family f, bool step_complement = false) {
    WeightSpec w;
    w.family = f;
    switch (f) {
        case Family::JacobiExpLinear:
            w.alpha = Real::parse("1.3");
            w.beta = Real::parse("0.6");
            w.t = Real::parse("0.8");
            break;
        case Family::JacobiExpInverse:
            w.alpha = Real::parse("1.7");
            w.beta = Real::parse("0.9");
            w.t = Real::parse("0.02");
            break;
        case Family::ReesJacobi:
            w.alpha = Real(1);
            w.beta = Real(1);
            w.t = Real::parse("0.5");
            break;
        case Family::LaguerreShifted:
            w.alpha = Real::parse("1.3");
            w.lambda = Real::parse("0.7");
            w.t = Real(1);
            break;
        case Family::LaguerreExpInverse:
            w.alpha = Real::parse("1.5");
            w.t = Real::parse("0.1");
            break;
        case Family::GaussianGap:
            w.t = Real::parse("0.5");
            break;
        case Family::JacobiGap:
            w.alpha = Real::parse("1.2");
            w.t = Real::parse("0.3");
            break;
        case Family::LaguerreStep:
            w.alpha = Real::parse("1.1");
            w.t = Real(2);
            if (step_complement) {
                w.A = Real(1);
                w.B = Real(-1);
            } else {
                w.A = Real(0);
                w.B = Real(1);
            }
            break;
    }
    return w;
}

}  // namespace heunlab::weights
