#pragma once

#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"
#include "real.hpp"
#include "weights.hpp"

namespace heunlab::opseq {

/// Three-term recurrence data for monic orthogonal polynomials:
///   P_{j+1}(z) = (z - alpha_j) P_j(z) - beta_j P_{j-1}(z),
/// together with the squared norms h_j = <P_j, P_j>.
/// beta[0] is unused (set to 0); beta_j = h_j / h_{j-1} for j >= 1.
struct RecurrenceTable {
    weights::WeightSpec spec;
    Precision prec = 256;
    int level = 0;  // discretization level the table was accepted at
    std::vector<Real> alpha;
    std::vector<Real> beta;
    std::vector<Real> h;

    long size() const { return static_cast<long>(alpha.size()); }
};

namespace detail {

inline RecurrenceTable build_at_level(const weights::WeightContext& ctx, long m, int level) {
    RecurrenceTable tb;
    tb.spec = ctx.spec();
    tb.prec = ctx.prec();
    tb.level = level;
    const Precision wp = ctx.prec() + 32;

    std::vector<const weights::NodeW*> nodes;
    for (const auto& rows : ctx.table(level))
        for (const auto& nw : rows) nodes.push_back(&nw);
    const size_t N = nodes.size();

    std::vector<Real> p_prev(N), p_cur(N);
    for (size_t i = 0; i < N; ++i) {
        p_prev[i] = Real::with_prec(wp, 0);
        p_cur[i] = Real::with_prec(wp, 1);
    }

    Real h_prev(0);
    for (long j = 0; j <= m; ++j) {
        Real hj = Real::with_prec(wp, 0);
        Real axj = Real::with_prec(wp, 0);
        Real sq = Real::of_prec(wp), tmp = Real::of_prec(wp);
        for (size_t i = 0; i < N; ++i) {
            mpfr_sqr(sq.raw(), p_cur[i].raw(), MPFR_RNDN);
            mpfr_mul(sq.raw(), sq.raw(), nodes[i]->W.raw(), MPFR_RNDN);
            mpfr_add(hj.raw(), hj.raw(), sq.raw(), MPFR_RNDN);
            mpfr_fma(axj.raw(), sq.raw(), nodes[i]->x.raw(), axj.raw(), MPFR_RNDN);
        }
        if (!(hj > 0))
            throw PrecisionExhausted("h_" + std::to_string(j) +
                                     " lost all significant bits; raise the working precision");
        Real aj = (axj / hj).round_to(ctx.prec());
        tb.alpha.push_back(aj);
        tb.h.push_back(hj.round_to(ctx.prec()));
        tb.beta.push_back(j == 0 ? Real(0) : (tb.h[j] / h_prev).round_to(ctx.prec()));
        h_prev = tb.h[static_cast<size_t>(j)];
        if (j == m) break;
        const Real& bj = tb.beta[static_cast<size_t>(j)];
        for (size_t i = 0; i < N; ++i) {
            // p_new = (x - a_j) p_cur - b_j p_prev
            mpfr_sub(tmp.raw(), nodes[i]->x.raw(), aj.raw(), MPFR_RNDN);
            mpfr_mul(tmp.raw(), tmp.raw(), p_cur[i].raw(), MPFR_RNDN);
            if (j > 0) {
                mpfr_fms(p_prev[i].raw(), bj.raw(), p_prev[i].raw(), tmp.raw(), MPFR_RNDN);
                mpfr_neg(p_prev[i].raw(), p_prev[i].raw(), MPFR_RNDN);
            } else {
                mpfr_set(p_prev[i].raw(), tmp.raw(), MPFR_RNDN);
            }
            mpfr_swap(p_prev[i].raw(), p_cur[i].raw());
        }
    }
    return tb;
}

inline bool tables_agree(const RecurrenceTable& a, const RecurrenceTable& b, const Real& rel_tol) {
    for (size_t j = 0; j < a.h.size(); ++j) {
        if (abs(a.h[j] - b.h[j]) > rel_tol * abs(b.h[j])) return false;
        Real scale = max(abs(b.alpha[j]), Real(1));
        if (abs(a.alpha[j] - b.alpha[j]) > rel_tol * scale) return false;
    }
    return true;
}

}  // namespace detail

/// Working precision needed so a degree-m table still carries `base`
/// accurate bits. The map from the discretized measure to recurrence
/// coefficients amplifies input rounding; measured noise floors give ~2.5
/// bits per degree on bounded supports and ~m^2/40 extra on semi-infinite
/// ones (161 bits at m=81, 639 at m=161 for the Laguerre-type weights).
inline Precision table_precision(Precision base, long m, bool unbounded_support = true) {
    Precision p = base + 64 + (5 * m) / 2;
    if (unbounded_support) p += (m * m) / 40;
    return p;
}

inline bool has_unbounded_support(const weights::WeightSpec& spec) {
    switch (spec.family) {
        case weights::Family::LaguerreShifted:
        case weights::Family::LaguerreExpInverse:
        case weights::Family::GaussianGap:
        case weights::Family::LaguerreStep:
            return true;
        default:
            return false;
    }
}

/// Stieltjes procedure: recurrence coefficients alpha_0..alpha_m, beta, h for
/// the weight, by iterated inner products against the weight discretization.
/// The discretization level doubles until two successive levels agree.
/// Build the context at table_precision() when full `base`-bit coefficient
/// accuracy is needed at large m.
inline RecurrenceTable stieltjes(const weights::WeightContext& ctx, long m,
                                 Real rel_tol = Real(0)) {
    if (2 * m > ctx.max_degree())
        throw DomainError("table degree exceeds the context's configured max degree");
    if (rel_tol.is_zero()) {
        long g = ctx.prec() - 64 - 2 * m;
        if (g < 24)
            throw PrecisionExhausted(
                "table conditioning leaves no headroom at this precision; raise it (see "
                "table_precision)");
        if (g > 240) g = 240;  // pair agreement certifies the coarser level; finer is returned
        rel_tol = pow2(-g, ctx.prec());
    }
    long nn = m < 8 ? 8 : m;
    int base = 6;
    while ((14L << base) < 16 * nn) ++base;  // keep >= ~16 nodes per polynomial oscillation
    if (base < ctx.level0()) base = ctx.level0();
    RecurrenceTable prev = detail::build_at_level(ctx, m, base);
    for (int level = base + 1; level <= ctx.level_max(); ++level) {
        RecurrenceTable cur = detail::build_at_level(ctx, m, level);
        if (detail::tables_agree(prev, cur, rel_tol)) return cur;
        prev = std::move(cur);
    }
    throw NonConvergence("stieltjes: discretization did not settle; raise level_max or precision");
}

/// (P_n(z), P_n'(z), P_n''(z)) by simultaneous recurrences.
struct PolyEval {
    Real p;
    Real dp;
    Real d2p;
};

inline PolyEval eval_p(const RecurrenceTable& tb, long n, const Real& z) {
    if (n >= tb.size()) throw DomainError("eval_p: n beyond table");
    Real p0(1), p1(0), d0(0), d1(0), s0(0), s1(0);  // P_j, P_{j-1}, and derivatives
    for (long j = 0; j < n; ++j) {
        const Real& a = tb.alpha[static_cast<size_t>(j)];
        const Real& b = tb.beta[static_cast<size_t>(j)];
        Real zm = z - a;
        Real p2 = zm * p0 - (j > 0 ? Real(b * p1) : Real(0));
        Real d2 = p0 + zm * d0 - (j > 0 ? Real(b * d1) : Real(0));
        Real s2 = 2 * d0 + zm * s0 - (j > 0 ? Real(b * s1) : Real(0));
        p1 = p0;
        p0 = p2;
        d1 = d0;
        d0 = d2;
        s1 = s0;
        s0 = s2;
    }
    return {p0, d0, s0};
}

/// Values P_0(z)..P_m(z).
inline std::vector<Real> eval_all(const RecurrenceTable& tb, long m, const Real& z) {
    if (m >= tb.size()) throw DomainError("eval_all: m beyond table");
    std::vector<Real> out;
    out.reserve(static_cast<size_t>(m + 1));
    Real p1(0), p0(1);
    out.push_back(p0);
    for (long j = 0; j < m; ++j) {
        Real p2 = (z - tb.alpha[static_cast<size_t>(j)]) * p0 -
                  (j > 0 ? Real(tb.beta[static_cast<size_t>(j)] * p1) : Real(0));
        p1 = p0;
        p0 = p2;
        out.push_back(p0);
    }
    return out;
}

/// Sub-leading coefficient p(n): P_n(x) = x^n + p(n) x^{n-1} + ...,
/// p(n) = -sum_{j<n} alpha_j.
inline Real subleading(const RecurrenceTable& tb, long n) {
    if (n < 1 || n > tb.size()) throw DomainError("subleading: bad n");
    Real s(0);
    for (long j = 0; j < n; ++j) s += tb.alpha[static_cast<size_t>(j)];
    return -s;
}

/// For even weights (alpha_j = 0) the x^{n-1} coefficient vanishes and the
/// leading non-trivial coefficient is that of x^{n-2}:
///   P_n(x) = x^n + p2(n) x^{n-2} + ...,  p2(n) = -sum_{j=1}^{n-1} beta_j.
inline Real subleading_even(const RecurrenceTable& tb, long n) {
    if (n < 0 || n > tb.size()) throw DomainError("subleading_even: bad n");
    Real s(0);
    for (long j = 1; j < n; ++j) s += tb.beta[static_cast<size_t>(j)];
    return -s;
}

/// Context plus table built at conditioning-aware elevated precision; the
/// published values then carry ~base accurate bits even at large degree.
struct Pipeline {
    weights::WeightContext ctx;
    RecurrenceTable tb;
};

inline Pipeline make_pipeline(const weights::WeightSpec& spec, long m, Precision base,
                              long extra_degree = 12) {
    Precision wp = table_precision(base, m, has_unbounded_support(spec));
    for (int attempt = 0;; ++attempt) {
        PrecisionGuard guard(wp);
        weights::WeightContext ctx(spec, 2 * m + extra_degree, wp);
        try {
            RecurrenceTable tb = stieltjes(ctx, m);
            return Pipeline{std::move(ctx), std::move(tb)};
        } catch (const NonConvergence&) {
            if (attempt >= 2) throw;
            wp = wp + wp / 2;  // noise floor above tolerance: buy more bits
        }
    }
}

/// Versioned CSV block (full working-precision decimals).
inline std::string to_csv(const RecurrenceTable& tb) {
    std::ostringstream os;
    os << "# recurrence_table v1 family=" << weights::family_name(tb.spec.family)
       << " precision_bits=" << tb.prec << "\n";
    os << "j,alpha_j,beta_j,h_j\n";
    for (long j = 0; j < tb.size(); ++j) {
        os << j << "," << tb.alpha[static_cast<size_t>(j)].str() << ","
           << tb.beta[static_cast<size_t>(j)].str() << "," << tb.h[static_cast<size_t>(j)].str()
           << "\n";
    }
    return os.str();
}

}  // namespace heunlab::opseq
