#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "opseq.hpp"
#include "real.hpp"
#include "weights.hpp"

namespace heunlab::ladder {

using opseq::RecurrenceTable;
using weights::Family;
using weights::WeightContext;
using weights::WeightSpec;

namespace detail {

/// x-space range of a piece (inverse-mapped pieces flip).
inline std::pair<Real, Real> piece_xrange(const quad::Piece& pc) {
    if (pc.map == quad::MapKind::Inverse) return {1 / pc.hi, 1 / pc.lo};
    return {pc.lo, pc.hi};
}

/// y - p at a node, using stored endpoint distances when the pole p sits on a
/// piece endpoint (where y itself may have rounded onto the endpoint).
inline Real node_diff(const quad::Piece& pc, const weights::NodeW& nw, const Real& p) {
    auto [xlo, xhi] = piece_xrange(pc);
    if (p == xlo) return nw.dlo;
    if (p == xhi) return -nw.dhi;
    return nw.x - p;
}

/// Divided-difference kernel (v'(z)-v'(y))/(z-y) at a node, endpoint-safe.
inline Real kernel_at(const weights::VPrimeForm& vp, const quad::Piece& pc,
                      const weights::NodeW& nw, const Real& z) {
    Real s = vp.lin;
    for (const auto& [p, c] : vp.poles) s -= c / ((z - p) * node_diff(pc, nw, p));
    for (const auto& [p, d] : vp.dpoles) {
        Real ymp = node_diff(pc, nw, p);
        s -= d * (z + nw.x - 2 * p) / ((z - p) * (z - p) * ymp * ymp);
    }
    return s;
}

}  // namespace detail


/// Ladder coefficient functions A_n(z), B_n(z). Away from jump
/// discontinuities they are the divided-difference integrals against P_n^2
/// and P_n P_{n-1}; each jump of the weight adds a point term
/// (w(x+)-w(x-)) P.(x) P.(x) / (h (z-x)).
class LadderPair {
public:
    LadderPair(const WeightContext& ctx, const RecurrenceTable& tb, long n)
        : ctx_(&ctx), tb_(&tb), n_(n) {
        if (n + 1 >= tb.size()) throw DomainError("LadderPair: table too short (need n+1)");
        vp_ = weights::vprime_form(ctx.spec());
        jumps_ = weights::jumps(ctx.spec());
    }

    long n() const { return n_; }

    Real A(const Real& z) const {
        Real acc = Real::with_prec(ctx_->prec() + 32, 0);
        const auto& tbl = ctx_->table(tb_->level);
        for (size_t pi = 0; pi < tbl.size(); ++pi) {
            const auto& piece = ctx_->piece_list()[pi];
            for (const auto& nw : tbl[pi]) {
                Real p = opseq::eval_p(*tb_, n_, nw.x).p;
                acc.add_mul(nw.W * detail::kernel_at(vp_, piece, nw, z), p * p);
            }
        }
        Real out = acc.round_to(ctx_->prec()) / tb_->h[static_cast<size_t>(n_)];
        for (const auto& [xj, dw] : jumps_) {
            Real p = opseq::eval_p(*tb_, n_, xj).p;
            out += dw * p * p / (tb_->h[static_cast<size_t>(n_)] * (z - xj));
        }
        return out;
    }

    Real B(const Real& z) const {
        if (n_ == 0) return Real(0);
        Real acc = Real::with_prec(ctx_->prec() + 32, 0);
        const auto& tbl = ctx_->table(tb_->level);
        for (size_t pi = 0; pi < tbl.size(); ++pi) {
            const auto& piece = ctx_->piece_list()[pi];
            for (const auto& nw : tbl[pi]) {
                auto pv = opseq::eval_all(*tb_, n_, nw.x);
                acc.add_mul(nw.W * detail::kernel_at(vp_, piece, nw, z),
                            pv[static_cast<size_t>(n_)] * pv[static_cast<size_t>(n_ - 1)]);
            }
        }
        Real hm1 = tb_->h[static_cast<size_t>(n_ - 1)];
        Real out = acc.round_to(ctx_->prec()) / hm1;
        for (const auto& [xj, dw] : jumps_) {
            auto pv = opseq::eval_all(*tb_, n_, xj);
            out += dw * pv[static_cast<size_t>(n_)] * pv[static_cast<size_t>(n_ - 1)] / (hm1 * (z - xj));
        }
        return out;
    }

    /// sum_{j=0}^{n-1} A_j(z), batched over the node table.
    Real sum_A(const Real& z) const {
        Real acc = Real::with_prec(ctx_->prec() + 32, 0);
        const auto& tbl = ctx_->table(tb_->level);
        for (size_t pi = 0; pi < tbl.size(); ++pi) {
            const auto& piece = ctx_->piece_list()[pi];
            for (const auto& nw : tbl[pi]) {
                auto pv = opseq::eval_all(*tb_, n_ - 1, nw.x);
                Real cd = Real::with_prec(ctx_->prec() + 32, 0);
                for (long j = 0; j < n_; ++j)
                    cd.add_mul(pv[static_cast<size_t>(j)] * pv[static_cast<size_t>(j)],
                               1 / tb_->h[static_cast<size_t>(j)]);
                acc.add_mul(nw.W * detail::kernel_at(vp_, piece, nw, z), cd);
            }
        }
        Real out = acc.round_to(ctx_->prec());
        for (const auto& [xj, dw] : jumps_) {
            auto pv = opseq::eval_all(*tb_, n_ - 1, xj);
            Real cd(0);
            for (long j = 0; j < n_; ++j)
                cd += pv[static_cast<size_t>(j)] * pv[static_cast<size_t>(j)] / tb_->h[static_cast<size_t>(j)];
            out += dw * cd / (z - xj);
        }
        return out;
    }

    Real vprime(const Real& z) const { return vp_.eval(z); }

private:
    const WeightContext* ctx_;
    const RecurrenceTable* tb_;
    long n_;
    weights::VPrimeForm vp_;
    std::vector<std::pair<Real, Real>> jumps_;
};

/// Family auxiliary quantities at (n, t): R_n, r_n (tilde variants for the
/// x^a(1-x)^b e^{-t/x} family), and the partial sum over R_j.
struct AuxiliaryQuantities {
    long n = 0;
    Real t;
    Real Rn;
    Real rn;
    Real Rn_tilde;  // JacobiExpInverse only
    Real rn_tilde;  // JacobiExpInverse only
    Real sumR;      // sum_{j=0}^{n-1} R_j, directly accumulated
    Real Rn_prime = Real(std::nan(""));  // dR_n/dt when requested/needed
};

namespace detail {

/// I_j = int P_j^2 phi w and J_j = int P_j P_{j-1} phi w for j = 0..m.
struct BatchedInts {
    std::vector<Real> I;
    std::vector<Real> J;
};

inline BatchedInts batched_integrals(
    const WeightContext& ctx, const RecurrenceTable& tb, long m,
    const std::function<Real(const quad::Piece&, const weights::NodeW&)>& phi) {
    const Precision wp = ctx.prec() + 32;
    BatchedInts out;
    out.I.assign(static_cast<size_t>(m + 1), Real::with_prec(wp, 0));
    out.J.assign(static_cast<size_t>(m + 1), Real::with_prec(wp, 0));
    const auto& tbl = ctx.table(tb.level);
    for (size_t pi = 0; pi < tbl.size(); ++pi) {
        const auto& piece = ctx.piece_list()[pi];
        for (const auto& nw : tbl[pi]) {
            Real wphi = nw.W * phi(piece, nw);
            if (wphi.is_zero()) continue;
            auto pv = opseq::eval_all(tb, m, nw.x);
            for (long j = 0; j <= m; ++j) {
                out.I[static_cast<size_t>(j)].add_mul(wphi, pv[static_cast<size_t>(j)] * pv[static_cast<size_t>(j)]);
                if (j > 0)
                    out.J[static_cast<size_t>(j)].add_mul(wphi, pv[static_cast<size_t>(j)] * pv[static_cast<size_t>(j - 1)]);
            }
        }
    }
    for (auto& v : out.I) v = v.round_to(ctx.prec());
    for (auto& v : out.J) v = v.round_to(ctx.prec());
    return out;
}

/// Point-evaluation data used by the gap/step families.
struct PointData {
    Real wval;  // weight amplitude at the point (outer-limit value)
    Real x;
};

}  // namespace detail

/// Published relations between r_n, sums and (R_n, R_n') per family; the
/// equation tags follow the family ODE write-ups.
namespace relations {

// x^a (1-x)^b e^{-tx}:  r_n = [t R' + a t - (2n+1+a+b+t) R + R^2] / (2t)
inline Real r_from_R_jacobi_exp_linear(const WeightSpec& w, long n, const Real& R, const Real& Rp) {
    const Real &a = w.alpha, &b = w.beta, &t = w.t;
    return (t * Rp + a * t - (2 * n + 1 + a + b + t) * R + R * R) / (2 * t);
}
// sum R_j = n(a+b+n) - t r - t^2 beta_n
inline Real sum_from_jacobi_exp_linear(const WeightSpec& w, long n, const Real& r, const Real& beta_n) {
    return Real(n) * (w.alpha + w.beta + n) - w.t * r - w.t * w.t * beta_n;
}
// beta_n = [n(b+n) + t r (r - a)/R + (a+b+2n) r] / (t (t - R))
inline Real beta_from_jacobi_exp_linear(const WeightSpec& w, long n, const Real& R, const Real& r) {
    const Real &a = w.alpha, &b = w.beta, &t = w.t;
    return (Real(n) * (b + n) + t * r * (r - a) / R + (a + b + 2 * n) * r) / (t * (t - R));
}

// x^a (1-x)^b e^{-t/x} relations (alpha_n from the table enters):
inline Real r_from_R_jacobi_exp_inverse(const WeightSpec& w, long n, const Real& R, const Real& Rp,
                                        const Real& alpha_n) {
    const Real &a = w.alpha, &b = w.beta, &t = w.t;
    Real s = a + b + 2 * n + 1;
    return (R - b - alpha_n * R) / 2 + (t * Rp - alpha_n * R) / (2 * s);
}
inline Real rt_from_r_jacobi_exp_inverse(const WeightSpec& w, long n, const Real& R, const Real& r,
                                         const Real& alpha_n) {
    const Real &b = w.beta, &t = w.t;
    Real s2 = w.alpha + b + 2 * n + 2;
    return r + (b + t + s2 * alpha_n - R) / 2;
}
inline Real sum_tilde_jacobi_exp_inverse(const WeightSpec& w, long n, const Real& r, const Real& rt) {
    return Real(n) * (w.t - w.alpha - n) - (2 * n + w.alpha + w.beta) * (rt - r);
}

// x^a (x+t)^l e^{-x}:  r_n = [t R' + l - R (t + 2n + a + l - t R)] / 2
inline Real r_from_R_laguerre_shifted(const WeightSpec& w, long n, const Real& R, const Real& Rp) {
    const Real &a = w.alpha, &l = w.lambda, &t = w.t;
    return (t * Rp + l - R * (t + 2 * n + a + l - t * R)) / 2;
}
// sum R_j = [n(a+l+n) - t r - beta_n] / t
inline Real sum_from_laguerre_shifted(const WeightSpec& w, long n, const Real& r, const Real& beta_n) {
    return (Real(n) * (w.alpha + w.lambda + n) - w.t * r - beta_n) / w.t;
}
inline Real beta_from_laguerre_shifted(const WeightSpec& w, long n, const Real& R, const Real& r) {
    const Real &a = w.alpha, &l = w.lambda;
    return ((Real(n) * (a + n) + (r * r - l * r) / R + (a + l + 2 * n) * r)) / (1 - R);
}

// x^a e^{-x-t/x}:  r_n = [t + t R' - (2n+1+a+R) R] / 2
inline Real r_from_R_laguerre_exp_inverse(const WeightSpec& w, long n, const Real& R, const Real& Rp) {
    const Real &a = w.alpha, &t = w.t;
    return (t + t * Rp - (2 * n + 1 + a + R) * R) / 2;
}
// sum R_j = -n(n+a) - r + beta_n
inline Real sum_from_laguerre_exp_inverse(const WeightSpec& w, long n, const Real& r, const Real& beta_n) {
    return -Real(n) * (n + w.alpha) - r + beta_n;
}
inline Real beta_from_laguerre_exp_inverse(const WeightSpec& w, long n, const Real& R, const Real& r) {
    return (Real(n) * w.t - (2 * n + w.alpha) * r - (r * r - w.t * r) / R) / R;
}

// e^{-x^2} gap:  r_n = a [R' - R^2 + 2aR] / (4a - 2R)
inline Real r_from_R_gaussian_gap(const WeightSpec& w, long n, const Real& R, const Real& Rp) {
    (void)n;
    const Real& a = w.t;
    return (Rp - R * R + 2 * a * R) * a / (4 * a - 2 * R);
}
// sum R_j = 2 r^2/R + (n + r) R - (2a + r/a) r
inline Real sum_from_gaussian_gap(const WeightSpec& w, long n, const Real& R, const Real& r) {
    const Real& a = w.t;
    return 2 * r * r / R + (Real(n) + r) * R - (2 * a + r / a) * r;
}

// (1-x^2)^a gap:
inline Real r_from_R_jacobi_gap(const WeightSpec& w, long n, const Real& R, const Real& Rp) {
    const Real &al = w.alpha, &a = w.t;
    Real a2m1 = a * a - 1;
    return a * (-a2m1 * Rp + a2m1 * R * R + 2 * a * (al + n) * R) /
           (2 * (a2m1 * R + a * (2 * al + 2 * n + 1)));
}
inline Real sum_from_jacobi_gap(const WeightSpec& w, long n, const Real& r, const Real& beta_n) {
    const Real &al = w.alpha, &a = w.t;
    Real a2m1 = a * a - 1;
    return (2 * a2m1 * (al + n) * r + (4 * (al + n) * (al + n) - 1) * beta_n - Real(n) * (2 * al + n)) /
           (a * a2m1);
}
inline Real beta_from_jacobi_gap(const WeightSpec& w, long n, const Real& R, const Real& r) {
    const Real &al = w.alpha, &a = w.t;
    return ((r + n) * (r + 2 * al + n) / (a * R + 2 * al + 2 * n + 1) - a * r * r / R) /
           (2 * n + 2 * al - 1);
}

// x^a e^{-x} (A + B theta(x-t)):  r_n = [t R' - (2n + a - t + tR) R] / 2
inline Real r_from_R_laguerre_step(const WeightSpec& w, long n, const Real& R, const Real& Rp) {
    const Real &a = w.alpha, &t = w.t;
    return (t * Rp - (2 * n + a - t + t * R) * R) / 2;
}
// sum R_j = [beta_n - t r - n(n+a)] / t
inline Real sum_from_laguerre_step(const WeightSpec& w, long n, const Real& r, const Real& beta_n) {
    return (beta_n - w.t * r - Real(n) * (n + w.alpha)) / w.t;
}
inline Real beta_from_laguerre_step(const WeightSpec& w, long n, const Real& R, const Real& r) {
    return ((2 * n + w.alpha) * r + Real(n) * (n + w.alpha) + r * r / R) / (1 - R);
}

}  // namespace relations

/// R_n alone, by the family's direct definition (quadrature, point value or
/// ladder-template extraction). Per-family conventions:
///  - JacobiExpLinear:    R_n = (a/h_n) int P_n^2 w / y
///  - JacobiExpInverse:   extracted from A_n's zero with
///                        R~_n = R_n - (a+b+2n+1)
///  - LaguerreShifted:    R_n = (l/h_n) int P_n^2 w / (y+t)
///  - LaguerreExpInverse: R_n = (t/h_n) int P_n^2 w / y
///  - GaussianGap:        R_n = 2 e^{-a^2} P_n(a)^2 / h_n
///  - JacobiGap:          extracted from A_n's structure
///  - LaguerreStep:       R_n = B t^a e^{-t} P_n(t)^2 / h_n
inline Real aux_Rn(const WeightContext& ctx, const RecurrenceTable& tb, long n) {
    const WeightSpec& w = ctx.spec();
    const Real& hn = tb.h[static_cast<size_t>(n)];
    switch (w.family) {
        case Family::JacobiExpLinear: {
            auto b = detail::batched_integrals(ctx, tb, n, [](const quad::Piece& pc, const weights::NodeW& nw) {
                return 1 / detail::node_diff(pc, nw, Real(0));
            });
            return w.alpha * b.I[static_cast<size_t>(n)] / hn;
        }
        case Family::JacobiExpInverse: {
            auto b1 = detail::batched_integrals(ctx, tb, n, [](const quad::Piece& pc, const weights::NodeW& nw) {
                return 1 / detail::node_diff(pc, nw, Real(0));
            });
            auto b2 = detail::batched_integrals(ctx, tb, n, [](const quad::Piece& pc, const weights::NodeW& nw) {
                return 1 / detail::node_diff(pc, nw, Real(1));
            });
            Real a2 = w.t * b1.I[static_cast<size_t>(n)] / hn;
            Real a3 = w.beta * b2.I[static_cast<size_t>(n)] / hn;
            Real zhat = a2 / (a2 + a3);
            return (1 - zhat) * (w.alpha + w.beta + 2 * n + 1);
        }
        case Family::LaguerreShifted: {
            auto b = detail::batched_integrals(ctx, tb, n, [&](const quad::Piece&, const weights::NodeW& nw) {
                return 1 / (nw.x + w.t);
            });
            return w.lambda * b.I[static_cast<size_t>(n)] / hn;
        }
        case Family::LaguerreExpInverse: {
            auto b = detail::batched_integrals(ctx, tb, n, [](const quad::Piece& pc, const weights::NodeW& nw) {
                return 1 / detail::node_diff(pc, nw, Real(0));
            });
            return w.t * b.I[static_cast<size_t>(n)] / hn;
        }
        case Family::GaussianGap: {
            Real p = opseq::eval_p(tb, n, w.t).p;
            return 2 * exp(-w.t * w.t) * p * p / hn;
        }
        case Family::JacobiGap: {
            auto b = detail::batched_integrals(ctx, tb, n, [](const quad::Piece& pc, const weights::NodeW& nw) {
                return 1 / detail::node_diff(pc, nw, Real(-1));
            });
            Real p = opseq::eval_p(tb, n, w.t).p;
            Real J = pow(1 - w.t * w.t, w.alpha) * p * p / hn;
            Real N = b.I[static_cast<size_t>(n)];
            return J * (2 * w.alpha + 2 * n + 1) / (w.alpha * N / hn - w.t * J);
        }
        case Family::LaguerreStep: {
            Real p = opseq::eval_p(tb, n, w.t).p;
            return w.B * pow(w.t, w.alpha) * exp(-w.t) * p * p / hn;
        }
        default:
            throw DomainError("aux_Rn: family has no R_n");
    }
}

/// R_n'(t) by centered difference with step h = t*1e-6, rebuilding the
/// orthogonality data at the shifted deformation parameter.
inline Real aux_Rn_prime(const WeightContext& ctx, const RecurrenceTable& tb, long n) {
    (void)tb;
    const WeightSpec& w = ctx.spec();
    Real h = w.t * Real::parse("1e-6");
    Real rs[2];
    int k = 0;
    for (int sgn : {1, -1}) {
        WeightSpec ws = w;
        ws.t = w.t + sgn * h;
        WeightContext cs(ws, ctx.max_degree(), ctx.prec());
        auto ts = opseq::stieltjes(cs, n + 1);
        rs[k++] = aux_Rn(cs, ts, n);
    }
    return (rs[0] - rs[1]) / (2 * h);
}

/// Full auxiliary set. For families whose r_n has a direct integral or point
/// definition it is computed directly; for JacobiExpInverse and JacobiGap the
/// published relations (which need R_n') provide r_n, and sumR is still the
/// directly accumulated sum over j.
inline AuxiliaryQuantities aux_quantities(const WeightContext& ctx, const RecurrenceTable& tb,
                                          long n, bool need_deriv = false) {
    const WeightSpec& w = ctx.spec();
    AuxiliaryQuantities q;
    q.n = n;
    q.t = w.t;
    const Real& hn = tb.h[static_cast<size_t>(n)];
    const Real& hnm1 = tb.h[static_cast<size_t>(n - 1)];
    switch (w.family) {
        case Family::JacobiExpLinear: {
            auto b = detail::batched_integrals(ctx, tb, n, [](const quad::Piece& pc, const weights::NodeW& nw) {
                return 1 / detail::node_diff(pc, nw, Real(0));
            });
            q.Rn = w.alpha * b.I[static_cast<size_t>(n)] / hn;
            q.rn = w.alpha * b.J[static_cast<size_t>(n)] / hnm1;
            q.sumR = Real(0);
            for (long j = 0; j < n; ++j)
                q.sumR += w.alpha * b.I[static_cast<size_t>(j)] / tb.h[static_cast<size_t>(j)];
            break;
        }
        case Family::JacobiExpInverse: {
            auto b1 = detail::batched_integrals(ctx, tb, n, [](const quad::Piece& pc, const weights::NodeW& nw) {
                return 1 / detail::node_diff(pc, nw, Real(0));
            });
            auto b2 = detail::batched_integrals(ctx, tb, n, [](const quad::Piece& pc, const weights::NodeW& nw) {
                return 1 / detail::node_diff(pc, nw, Real(1));
            });
            auto extract = [&](long j) {
                Real a2 = w.t * b1.I[static_cast<size_t>(j)] / tb.h[static_cast<size_t>(j)];
                Real a3 = w.beta * b2.I[static_cast<size_t>(j)] / tb.h[static_cast<size_t>(j)];
                Real zhat = a2 / (a2 + a3);
                return (1 - zhat) * (w.alpha + w.beta + 2 * j + 1);
            };
            q.Rn = extract(n);
            q.Rn_tilde = q.Rn - (w.alpha + w.beta + 2 * n + 1);
            q.Rn_prime = aux_Rn_prime(ctx, tb, n);
            q.rn = relations::r_from_R_jacobi_exp_inverse(w, n, q.Rn, q.Rn_prime,
                                                          tb.alpha[static_cast<size_t>(n)]);
            q.rn_tilde = relations::rt_from_r_jacobi_exp_inverse(w, n, q.Rn, q.rn,
                                                                 tb.alpha[static_cast<size_t>(n)]);
            q.sumR = Real(0);
            for (long j = 0; j < n; ++j) q.sumR += extract(j);
            break;
        }
        case Family::LaguerreShifted: {
            auto b = detail::batched_integrals(ctx, tb, n, [&](const quad::Piece&, const weights::NodeW& nw) {
                return 1 / (nw.x + w.t);
            });
            q.Rn = w.lambda * b.I[static_cast<size_t>(n)] / hn;
            q.rn = w.lambda * b.J[static_cast<size_t>(n)] / hnm1;
            q.sumR = Real(0);
            for (long j = 0; j < n; ++j)
                q.sumR += w.lambda * b.I[static_cast<size_t>(j)] / tb.h[static_cast<size_t>(j)];
            break;
        }
        case Family::LaguerreExpInverse: {
            auto b = detail::batched_integrals(ctx, tb, n, [](const quad::Piece& pc, const weights::NodeW& nw) {
                return 1 / detail::node_diff(pc, nw, Real(0));
            });
            q.Rn = w.t * b.I[static_cast<size_t>(n)] / hn;
            q.rn = w.t * b.J[static_cast<size_t>(n)] / hnm1;
            q.sumR = Real(0);
            for (long j = 0; j < n; ++j)
                q.sumR += w.t * b.I[static_cast<size_t>(j)] / tb.h[static_cast<size_t>(j)];
            break;
        }
        case Family::GaussianGap: {
            auto pv = opseq::eval_all(tb, n, w.t);
            Real wa = 2 * exp(-w.t * w.t);
            q.Rn = wa * pv[static_cast<size_t>(n)] * pv[static_cast<size_t>(n)] / hn;
            q.rn = wa * pv[static_cast<size_t>(n)] * pv[static_cast<size_t>(n - 1)] / hnm1;
            q.sumR = Real(0);
            for (long j = 0; j < n; ++j)
                q.sumR += wa * pv[static_cast<size_t>(j)] * pv[static_cast<size_t>(j)] / tb.h[static_cast<size_t>(j)];
            break;
        }
        case Family::JacobiGap: {
            auto b = detail::batched_integrals(ctx, tb, n, [](const quad::Piece& pc, const weights::NodeW& nw) {
                return 1 / detail::node_diff(pc, nw, Real(-1));
            });
            auto pv = opseq::eval_all(tb, n, w.t);
            Real wa = pow(1 - w.t * w.t, w.alpha);
            auto extract = [&](long j) {
                Real J = wa * pv[static_cast<size_t>(j)] * pv[static_cast<size_t>(j)] / tb.h[static_cast<size_t>(j)];
                Real N = b.I[static_cast<size_t>(j)];
                return J * (2 * w.alpha + 2 * j + 1) /
                       (w.alpha * N / tb.h[static_cast<size_t>(j)] - w.t * J);
            };
            q.Rn = extract(n);
            q.Rn_prime = aux_Rn_prime(ctx, tb, n);
            q.rn = relations::r_from_R_jacobi_gap(w, n, q.Rn, q.Rn_prime);
            q.sumR = Real(0);
            for (long j = 0; j < n; ++j) q.sumR += extract(j);
            break;
        }
        case Family::LaguerreStep: {
            auto pv = opseq::eval_all(tb, n, w.t);
            Real wa = w.B * pow(w.t, w.alpha) * exp(-w.t);
            q.Rn = wa * pv[static_cast<size_t>(n)] * pv[static_cast<size_t>(n)] / hn;
            q.rn = wa * pv[static_cast<size_t>(n)] * pv[static_cast<size_t>(n - 1)] / hnm1;
            q.sumR = Real(0);
            for (long j = 0; j < n; ++j)
                q.sumR += wa * pv[static_cast<size_t>(j)] * pv[static_cast<size_t>(j)] / tb.h[static_cast<size_t>(j)];
            break;
        }
        default:
            throw DomainError("aux_quantities: family has no auxiliary set");
    }
    if (need_deriv && q.Rn_prime.is_nan()) q.Rn_prime = aux_Rn_prime(ctx, tb, n);
    return q;
}

/// Max normalized residuals of the compatibility identities over sample
/// points:  (S1)  B_{n+1} + B_n = (z - alpha_n) A_n - v'
///          (S2)  1 + (z-alpha_n)(B_{n+1} - B_n) = beta_{n+1} A_{n+1} - beta_n A_{n-1}
///          (S2') B_n^2 + v' B_n + sum_{j<n} A_j = beta_n A_n A_{n-1}
struct S1S2Report {
    Real s1;
    Real s2;
    Real s2p;
};

inline S1S2Report check_s1_s2(const WeightContext& ctx, const RecurrenceTable& tb, long n,
                              const std::vector<Real>& zs) {
    if (n + 2 >= tb.size()) throw DomainError("check_s1_s2: table must extend through n+2");
    LadderPair Lm1(ctx, tb, n - 1), Ln(ctx, tb, n), Lp1(ctx, tb, n + 1);
    S1S2Report rep{Real(0), Real(0), Real(0)};
    auto norm = [](const Real& lhs, const Real& rhs) {
        return abs(lhs - rhs) / max(max(abs(lhs), abs(rhs)), Real(1));
    };
    const Real& an = tb.alpha[static_cast<size_t>(n)];
    const Real& bn = tb.beta[static_cast<size_t>(n)];
    const Real& bn1 = tb.beta[static_cast<size_t>(n + 1)];
    for (const Real& z : zs) {
        Real An = Ln.A(z), Anm1 = Lm1.A(z), Anp1 = Lp1.A(z);
        Real Bn = Ln.B(z), Bnp1 = Lp1.B(z);
        Real vp = Ln.vprime(z);
        rep.s1 = max(rep.s1, norm(Bnp1 + Bn, (z - an) * An - vp));
        rep.s2 = max(rep.s2, norm(1 + (z - an) * (Bnp1 - Bn), bn1 * Anp1 - bn * Anm1));
        rep.s2p = max(rep.s2p, norm(Bn * Bn + vp * Bn + Ln.sum_A(z), bn * An * Anm1));
    }
    return rep;
}

/// Second-order linear ODE with rational coefficients,
/// P'' + Q(z) P' + S(z) P = 0, kept as template evaluators plus the list of
/// real poles (for sample placement and the collision guard).
struct RationalODE {
    Family family;
    long n = 0;
    std::function<Real(const Real&)> Q;
    std::function<Real(const Real&)> S;
    std::vector<Real> real_poles;
};

namespace detail {
inline void collision_guard(const std::vector<Real>& poles) {
    for (size_t i = 0; i < poles.size(); ++i)
        for (size_t j = i + 1; j < poles.size(); ++j) {
            Real gap = abs(poles[i] - poles[j]);
            if (gap < Real::parse("1e-8") * max(Real(1), abs(poles[i])))
                throw SingularConfiguration("ODE template poles collide at " + poles[i].str(10));
        }
}
}  // namespace detail

/// The family's exact finite-n ODE, template coefficients filled with the
/// auxiliary quantities. beta_n and alpha_n come from the table; p(n) for the
/// Rees-type family is the x^{n-2} coefficient (even weight).
inline RationalODE family_ode(const WeightContext& ctx, const RecurrenceTable& tb, long n,
                              const AuxiliaryQuantities& aux) {
    const WeightSpec w = ctx.spec();
    RationalODE ode;
    ode.family = w.family;
    ode.n = n;
    const Real t = w.t;
    switch (w.family) {
        case Family::JacobiExpLinear: {
            Real R = aux.Rn, r = aux.rn, sR = aux.sumR;
            Real zR = R / t;
            ode.real_poles = {Real(0), Real(1), zR};
            detail::collision_guard(ode.real_poles);
            Real a = w.alpha, b = w.beta;
            long nn = n;
            ode.Q = [=](const Real& z) {
                return (a + 1) / z + (b + 1) / (z - 1) - t - 1 / (z - zR);
            };
            ode.S = [=](const Real& z) {
                return (nn * t * z - nn - sR) / (z * (z - 1)) +
                       (nn * z + r) / (z * (z - 1) * (z - zR));
            };
            break;
        }
        case Family::JacobiExpInverse: {
            Real R = aux.Rn, Rt = aux.Rn_tilde, r = aux.rn, rt = aux.rn_tilde;
            Real sRt = relations::sum_tilde_jacobi_exp_inverse(w, n, r, rt);
            Real sR = sRt + Real(n) * (n + w.alpha + w.beta);
            Real zhat = Rt / (Rt - R);
            ode.real_poles = {Real(0), Real(1), zhat};
            detail::collision_guard(ode.real_poles);
            Real a = w.alpha, b = w.beta;
            long nn = n;
            ode.Q = [=](const Real& z) {
                return t / (z * z) - 1 / (z - zhat) + (a + 2) / z + (b + 1) / (z - 1);
            };
            ode.S = [=](const Real& z) {
                Real denom = (z - 1) * z * z * (z * (R - Rt) + Rt);
                Real num = Rt * (nn * (z - 1) * (z - 1) - r) + R * rt - nn * R * z * z;
                return num / denom + sRt / (z * z) - sR / (z * (z - 1));
            };
            break;
        }
        case Family::ReesJacobi: {
            Real k2 = w.t;
            Real a = w.alpha, b = w.beta;
            Real bn = tb.beta[static_cast<size_t>(n)];
            Real bn1 = tb.beta[static_cast<size_t>(n + 1)];
            Real pn = opseq::subleading_even(tb, n);
            Real Nabc = Real(n) + Real(1) / 2 + a + b;
            Real Cn = 2 * k2 * (Nabc + 1) * (bn + bn1) -
                      2 * ((Real(n) + b + Real(1) / 2) * k2 + Real(n) + a + Real(1) / 2) -
                      4 * k2 * pn;
            long nn = n;
            ode.real_poles = {Real(1), Real(-1)};
            if (!k2.is_zero()) {
                Real k = sqrt(k2);
                ode.real_poles.push_back(1 / k);
                ode.real_poles.push_back(-1 / k);
                Real zm2 = -Cn / (2 * Nabc * k2);
                if (zm2 > 0) {
                    ode.real_poles.push_back(sqrt(zm2));
                    ode.real_poles.push_back(-sqrt(zm2));
                }
            }
            detail::collision_guard(ode.real_poles);
            auto M = [=](const Real& z) { return -2 * Nabc * k2 * z * z - Cn; };
            auto Mp = [=](const Real& z) { return -4 * Nabc * k2 * z; };
            auto Y = [=](const Real& z) { return (1 - z * z) * (1 - k2 * z * z); };
            ode.Q = [=](const Real& z) {
                Real xl = -(2 * a + 2) * z / (1 - z * z) - (2 * b + 2) * k2 * z / (1 - k2 * z * z);
                return xl - Mp(z) / M(z);
            };
            ode.S = [=](const Real& z) {
                Real L = z * (nn * k2 * z * z - nn * (k2 + 1) + 2 * k2 * Nabc * bn - 2 * k2 * pn);
                Real U = -k2 * z * z * nn * (nn + 2 * a + 2 * b + 3) +
                         2 * k2 * (2 * nn + 1 + 2 * a + 2 * b) * (pn - bn) +
                         nn * k2 * (nn + 1 + 2 * b) + nn * (nn + 1 + 2 * a);
                return L * Mp(z) / (Y(z) * M(z)) + U / Y(z);
            };
            break;
        }
        case Family::LaguerreShifted: {
            Real R = aux.Rn, r = aux.rn, sR = aux.sumR;
            Real zp = -t * (1 - R);
            ode.real_poles = {Real(0), -t, zp};
            detail::collision_guard(ode.real_poles);
            Real a = w.alpha, l = w.lambda;
            long nn = n;
            ode.Q = [=](const Real& z) {
                return (a + 1) / z + (l + 1) / (z + t) - 1 - 1 / (z - zp);
            };
            ode.S = [=](const Real& z) {
                return t * (r + nn * R) / (z * (t + z) * (z - zp)) + (nn - sR) / z + sR / (t + z);
            };
            break;
        }
        case Family::LaguerreExpInverse: {
            Real R = aux.Rn, r = aux.rn, sR = aux.sumR;
            ode.real_poles = {Real(0), -R};
            detail::collision_guard(ode.real_poles);
            Real a = w.alpha;
            long nn = n;
            ode.Q = [=](const Real& z) {
                return (a + 2) / z + t / (z * z) - 1 / (z + R) - 1;
            };
            ode.S = [=](const Real& z) {
                return sR / (z * z) + (nn * ((z - 1) * R + z * z) - r) / (z * z * (R + z));
            };
            break;
        }
        case Family::GaussianGap: {
            Real R = aux.Rn, r = aux.rn, sR = aux.sumR;
            Real a = w.t;
            ode.real_poles = {a, -a};
            detail::collision_guard(ode.real_poles);
            long nn = n;
            ode.Q = [=](const Real& z) {
                Real z2a = z * z - a * a;
                return 2 * a * R * z / (z2a * (2 * z2a + a * R)) - 2 * z;
            };
            ode.S = [=](const Real& z) {
                Real z2a = z * z - a * a;
                return -r * (2 * (a * a + z * z) - a * R) / ((a - z) * (a + z) * (2 * a * a - a * R - 2 * z * z)) +
                       2 * nn + a * sR / z2a;
            };
            break;
        }
        case Family::JacobiGap: {
            Real R = aux.Rn, r = aux.rn;
            Real bn = tb.beta[static_cast<size_t>(n)];
            Real sR = relations::sum_from_jacobi_gap(w, n, r, bn);
            Real a = w.t, al = w.alpha;
            Real s = 2 * al + 2 * n + 1;
            ode.real_poles = {Real(1), Real(-1), a, -a};
            Real zD2 = a * a - (a - a * a * a) * R / s;
            if (zD2 > 0) {
                ode.real_poles.push_back(sqrt(zD2));
                ode.real_poles.push_back(-sqrt(zD2));
            }
            detail::collision_guard(ode.real_poles);
            long nn = n;
            ode.Q = [=](const Real& z) {
                Real D = (a - a * a * a) * R - (a * a - z * z) * s;
                return 2 * (al + 1) * z / (z * z - 1) + 2 * z / (z * z - a * a) - 2 * z * s / D;
            };
            ode.S = [=](const Real& z) {
                Real z2 = z * z, a2 = a * a;
                Real am1 = a2 - 1;
                Real D2 = (a2 - z2) * s + a * am1 * R;
                Real term1 = (1 - a2) * r * ((a2 + z2) * s + a * am1 * R) / ((z2 - 1) * (a2 - z2) * D2);
                Real D3 = (a - a * a * a) * R + (z2 - a2) * s;
                Real term2 = -nn * ((a2 - z2) * (a2 - z2) * s + a * am1 * R * (a2 - 3 * z2)) /
                             ((z2 - 1) * (z2 - a2) * D3);
                Real term3 = ((Real(nn) * nn + 2 * al * nn) * (a2 - z2) - a * (1 - a2) * sR) /
                             ((z2 - a2) * (z2 - 1));
                return term1 + term2 + term3;
            };
            break;
        }
        case Family::LaguerreStep: {
            Real R = aux.Rn, r = aux.rn, sR = aux.sumR;
            Real zp = t - t * R;
            ode.real_poles = {Real(0), t, zp};
            detail::collision_guard(ode.real_poles);
            Real a = w.alpha;
            long nn = n;
            ode.Q = [=](const Real& z) {
                return (a + 1) / z + 1 / (z - t) - 1 / (z - zp) - 1;
            };
            ode.S = [=](const Real& z) {
                return Real(nn) / z - t * (r + nn * R) / (z * (z - t) * (t * R - t + z)) +
                       t * sR / (z * (z - t));
            };
            break;
        }
    }
    return ode;
}

/// Deterministic off-support real sample points, kept >= 0.5 away from the
/// support hull and the ODE's real poles. Gap families fall back to points
/// inside the gap with a distance floor scaled to the gap width.
inline std::vector<Real> sample_points(const WeightSpec& w, const std::vector<Real>& poles,
                                       size_t count = 5) {
    std::vector<Real> pts;
    auto far_from_poles = [&](const Real& z, const Real& dist) {
        for (const Real& p : poles)
            if (abs(z - p) < dist) return false;
        return true;
    };
    Real hull_lo, hull_hi;
    bool left_only = false, gap_only = false;
    switch (w.family) {
        case Family::JacobiExpLinear:
        case Family::JacobiExpInverse:
            hull_lo = Real(0);
            hull_hi = Real(1);
            break;
        case Family::ReesJacobi:
        case Family::JacobiGap:
            hull_lo = Real(-1);
            hull_hi = Real(1);
            break;
        case Family::LaguerreShifted:
        case Family::LaguerreExpInverse:
        case Family::LaguerreStep:
            hull_lo = Real(0);
            left_only = true;
            break;
        case Family::GaussianGap:
            gap_only = true;
            break;
    }
    if (gap_only) {
        // interior of (-a, a), floor distance a/5; the origin is excluded
        // (parity makes every ODE term vanish there for odd n)
        Real a = w.t;
        Real floor_d = a / 5;
        std::vector<Real> cands = {a * Real::parse("0.4"),  -a * Real::parse("0.4"),
                                   a * Real::parse("0.65"), -a * Real::parse("0.65"),
                                   a * Real::parse("0.2"),  -a * Real::parse("0.2"),
                                   a * Real::parse("0.5")};
        for (const Real& c : cands) {
            if (pts.size() >= count) break;
            if (far_from_poles(c, floor_d)) pts.push_back(c);
        }
        if (pts.size() < count) throw DomainError("sample_points: gap too narrow");
        return pts;
    }
    Real step = Real::parse("0.9");
    Real z = hull_lo - Real::parse("0.6");
    while (pts.size() < count) {
        if (far_from_poles(z, Real::parse("0.5"))) pts.push_back(z);
        z -= step;
    }
    if (!left_only) {
        // replace the two farthest-left points with right-side ones
        std::vector<Real> right;
        Real zr = hull_hi + Real::parse("0.6");
        while (right.size() < 2) {
            if (far_from_poles(zr, Real::parse("0.5"))) right.push_back(zr);
            zr += step;
        }
        pts[count - 1] = right[0];
        pts[count - 2] = right[1];
    }
    return pts;
}

/// Max normalized residual of P_n in the family ODE over the sample points.
/// Points where every term vanishes to rounding (e.g. z = 0 for odd n under
/// an even weight) carry no information and are skipped.
inline Real ode_residual(const RationalODE& ode, const RecurrenceTable& tb, long n,
                         const std::vector<Real>& zs) {
    Real worst(0);
    for (const Real& z : zs) {
        auto pe = opseq::eval_p(tb, n, z);
        Real qq = ode.Q(z) * pe.dp;
        Real ss = ode.S(z) * pe.p;
        Real num = abs(pe.d2p + qq + ss);
        Real den = abs(pe.d2p) + abs(qq) + abs(ss);
        Real scale = (abs(pe.p) + abs(pe.dp) + abs(pe.d2p)) * (1 + abs(ode.Q(z)) + abs(ode.S(z)));
        if (den.is_zero() || den <= scale * pow2(-(tb.prec * 2) / 3, tb.prec)) continue;
        worst = max(worst, num / den);
    }
    return worst;
}

}  // namespace heunlab::ladder
