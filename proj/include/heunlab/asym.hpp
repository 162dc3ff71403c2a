#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "quadrature.hpp"
#include "real.hpp"

namespace heunlab::asym {

/// One published asymptotic expansion: a list of (coefficient, exponent) pairs
/// in the expansion variable (n, s or T as tagged). Coefficients are
/// evaluated numbers for the given weight parameters; exponents may be
/// half-thirds/halves.
struct Expansion {
    std::string id;
    std::string quantity;
    char var = 'n';
    std::vector<std::pair<Real, Real>> terms;
};

inline Real eval_partial(const Expansion& e, const Real& x, size_t keep) {
    if (keep > e.terms.size()) keep = e.terms.size();
    Real s(0);
    for (size_t i = 0; i < keep; ++i) {
        const auto& [c, p] = e.terms[i];
        if (c.is_zero()) continue;
        if (p.is_zero())
            s += c;
        else
            s += c * pow(x, p);
    }
    return s;
}

inline Real eval_expansion(const Expansion& e, const Real& x) {
    return eval_partial(e, x, e.terms.size());
}

namespace detail {
inline void guard_alpha_poles(const Real& alpha, long upto) {
    for (long k = 1; k <= upto; ++k)
        if (abs(alpha - k) < Real::parse("1e-12") || abs(alpha + k) < Real::parse("1e-12"))
            throw RegimeError("expansion coefficients have a pole at integer alpha = " +
                              std::to_string(k));
}
}  // namespace detail

// ---- x^a (1-x)^b e^{-tx} (T = n t fixed) ----

inline Expansion zr_Rn(const Real& a, const Real& b, const Real& T) {
    Expansion e{"ZR", "Rn", 'n', {}};
    Real ab1 = a + b + 1;
    e.terms = {
        {Real(2), Real(1)},
        {ab1, Real(0)},
        {T / 2, Real(-1)},
        {T * (b * b - a * a) / 8, Real(-3)},
        {T * (a * a - b * b) * ab1 / 8, Real(-4)},
        {((2 * a * a + 2 * b * b - 1) * T * T -
          (a * a - b * b) * (3 * (a + b) * (a + b) + 6 * (a + b) + 4) * T) / 32,
         Real(-5)},
    };
    return e;
}

inline Expansion zr_rn(const Real& a, const Real& b, const Real& T) {
    Expansion e{"Zrn", "rn", 'n', {}};
    e.terms = {
        {Real(-1) / 2, Real(1)},
        {(a - b) / 4, Real(0)},
        {-(T + b * b - a * a) / 8, Real(-1)},
        {(a - b) * (a + b) * (a + b) / 16, Real(-2)},
        {(T * (2 * a * a + 2 * b * b - 1) - (a - b) * pow(a + b, 3L)) / 32, Real(-3)},
    };
    return e;
}

inline Expansion zb1_beta(const Real& a, const Real& b, const Real& T) {
    Real a2 = a * a, b2 = b * b;
    Real eta = (a2 - b2) * (3 * T * T + 16 + 5 * pow(a, 4L) + 20 * pow(a, 3L) * (b + 1) +
                            10 * a2 * (3 * b * (b + 2) + 4) +
                            20 * a * (b + 1) * (b * (b + 2) + 2) +
                            5 * b * (b + 2) * (b * (b + 2) + 4)) -
               2 * T * (pow(a, 4L) + 4 * pow(a, 3L) * (b + 2) + a2 * (6 * b2 + 8 * b + 9) +
                        2 * a * (b + 2) * (2 * b2 - 1) + b * (b * (b * (b + 8) + 9) - 4) - 5);
    Expansion e{"Zb1", "beta_n", 'n', {}};
    e.terms = {
        {Real(1) / 16, Real(0)},
        {(1 - 2 * a2 - 2 * b2) / 64, Real(-2)},
        {eta / (256 * T * (a + b + 1)), Real(-3)},
    };
    return e;
}

inline Expansion zsr1_sum(const Real& a, const Real& b, const Real& T) {
    Expansion e{"ZSR1", "sumR", 'n', {}};
    e.terms = {
        {Real(1), Real(2)},
        {a + b, Real(1)},
        {T / 2, Real(0)},
        {(b - a) * T / 4, Real(-1)},
        {(2 * (a * a - b * b) + T) * T / 16, Real(-2)},
        {-T * (a - b) * (a + b) * (a + b) / 16, Real(-3)},
    };
    return e;
}

inline Expansion za1_alpha(const Real& a, const Real& b, const Real& T) {
    Expansion e{"Za1", "alpha_n", 'n', {}};
    e.terms = {
        {Real(1) / 2, Real(0)},
        {(a * a - b * b) / 8, Real(-2)},
        {-(a - b) * (a + b) * (a + b) / 8, Real(-3)},
        {(3 * (a - b) * pow(a + b, 3L) - 2 * T * (a * a + b * b)) / 32, Real(-4)},
    };
    return e;
}

inline Expansion zb2_beta(const Real& a, const Real& b, const Real& T) {
    Expansion e{"Zb2", "beta_n", 'n', {}};
    e.terms = {
        {Real(1) / 16, Real(0)},
        {-(a * a + b * b) / 32, Real(-2)},
        {(a + b) * (a * a + b * b) / 32, Real(-3)},
        {-((a + b) * (a + b) * (5 * a * a + 2 * a * b + 5 * b * b) - 4 * T * (a * a - b * b)) / 256,
         Real(-4)},
    };
    return e;
}

// ---- x^a (1-x)^b e^{-t/x} (T = 2 n^2 t fixed, small T) ----

inline Expansion ccfr_Rn(const Real& a, const Real& b, long n, bool with_t3 = false) {
    (void)with_t3;
    detail::guard_alpha_poles(a, 1);
    Real nn(n);
    Real lead = 2 * nn + a + b + 1;
    Expansion e{"CCFr", "Rn", 'T', {}};
    e.terms = {
        {lead, Real(0)},
        {lead / (2 * nn * nn * a), Real(1)},
        {-lead / (2 * nn * nn * a * a * (a * a - 1)), Real(2)},
    };
    return e;
}

inline Expansion ccfa_alpha(const Real& a, const Real& b, long n) {
    detail::guard_alpha_poles(a, 1);
    Real nn(n);
    Expansion e{"CCFa", "alpha_n", 'T', {}};
    e.terms = {
        {Real(1) / 2 + (a * a - b * b) / (8 * nn * nn), Real(0)},
        {1 / (4 * a * nn * nn), Real(1)},
        {-3 / (8 * pow(a, 4L) * nn * nn), Real(2)},
    };
    return e;
}

inline Expansion ccfb_beta(const Real& a, const Real& b, long n) {
    detail::guard_alpha_poles(a, 1);
    Real nn(n);
    Expansion e{"CCFb", "beta_n", 'T', {}};
    e.terms = {
        {Real(1) / 16 - (a * a + b * b) / (32 * nn * nn), Real(0)},
        {-1 / (16 * a * nn * nn), Real(1)},
        {3 / (32 * pow(a, 4L) * nn * nn), Real(2)},
    };
    return e;
}

/// Painleve-III' small-T series of F (same inner coefficients as CIRs2).
inline Expansion cf_F(const Real& a) {
    detail::guard_alpha_poles(a, 2);
    Expansion e{"CF", "F", 'T', {}};
    e.terms = {
        {1 / (2 * a), Real(1)},
        {-1 / (2 * a * a * (a * a - 1)), Real(2)},
        {3 / (2 * pow(a, 3L) * (a * a - 4) * (a * a - 1)), Real(3)},
    };
    return e;
}

// ---- x^a (x+t)^l e^{-x} ----

inline Expansion ecr_Rn(const Real& a, const Real& l, const Real& t) {
    Expansion e{"ECR", "Rn", 'n', {}};
    Real st = sqrt(t);
    e.terms = {
        {l / (2 * st), Real(-1) / 2},
        {-(4 * l * (a * a + t * t + 2 * t * (a + l + 1)) - l) / (64 * st * t), Real(-3) / 2},
        {l * l * (4 * t * t - 4 * a * a + 1) / (64 * t * t), Real(-2)},
    };
    return e;
}

inline Expansion ecr1_rn(const Real& a, const Real& l, const Real& t) {
    Expansion e{"ECr1", "rn", 'n', {}};
    Real st = sqrt(t);
    e.terms = {
        {-l / (2 * st), Real(1) / 2},
        {l / 2, Real(0)},
        {-l * (4 * t * (3 * t + 2 * a + 2 * l) - 4 * a * a + 1) / (64 * st * t), Real(-1) / 2},
        {l * l * (4 * a * a + 4 * t * t - 1) / (64 * t * t), Real(-1)},
    };
    return e;
}

inline Expansion ecb1_beta(const Real& a, const Real& l, const Real& t) {
    Expansion e{"ECb1", "beta_n", 'n', {}};
    Real st = sqrt(t);
    e.terms = {
        {Real(1), Real(2)},
        {a + l, Real(1)},
        {-l * st / 2, Real(1) / 2},
        {l * (2 * a + l) / 4, Real(0)},
        {l * (4 * t * (t - 2 * a - 2 * l) - 12 * a * a + 3) / (64 * st), Real(-1) / 2},
        {(1 - 4 * a * a) * l * l / (32 * t), Real(-1)},
    };
    return e;
}

inline Expansion ecsr1_sum(const Real& a, const Real& l, const Real& t) {
    Expansion e{"ECSR1", "sumR", 'n', {}};
    Real st = sqrt(t);
    e.terms = {
        {l / st, Real(1) / 2},
        {-l * (l + 2 * (a + t)) / (4 * t), Real(0)},
        {l * (4 * t * (4 * a + 2 * l + 3 * t) + 1) / (64 * st * t), Real(-1) / 2},
        {-l * l * (1 - 4 * a * a + 4 * t * t) / (64 * t * t), Real(-1)},
    };
    return e;
}

inline Expansion eca1_alpha(const Real& a, const Real& l, const Real& t) {
    Expansion e{"ECa1", "alpha_n", 'n', {}};
    Real st = sqrt(t);
    e.terms = {
        {Real(2), Real(1)},
        {1 + a + l, Real(0)},
        {-l * st / 2, Real(-1) / 2},
        {l * (4 * (a * a + t * t + 2 * t * (a + l + 1)) - 1) / (64 * st), Real(-3) / 2},
    };
    return e;
}

inline Expansion eca2_alpha(const Real& a, const Real& l, const Real& t) {
    Expansion e{"ECa2", "alpha_n", 'n', {}};
    Real st = sqrt(t);
    e.terms = {
        {Real(2), Real(1)},
        {a + l, Real(0)},
        {-l * st / 2, Real(-1) / 2},
        {l * ((a + t) * (a + t) + 2 * l * t) / (16 * st), Real(-3) / 2},
        {l * l * (a * a - t * t) / (16 * t), Real(-2)},
    };
    return e;
}

inline Expansion ecb2_beta(const Real& a, const Real& l, const Real& t) {
    Expansion e{"ECb2", "beta_n", 'n', {}};
    Real st = sqrt(t);
    e.terms = {
        {Real(1), Real(2)},
        {a + l, Real(1)},
        {-l * st / 2, Real(1) / 2},
        {l * (2 * a + l) / 4, Real(0)},
    };
    return e;
}

// ---- x^a e^{-x-t/x}: inner functions of s = (2n+a+1) t ----

inline Expansion cirs1_Rtilde(const Real& a) {
    Expansion e{"CIRs1", "Rtilde", 's', {}};
    e.terms = {
        {Real(1), Real(-1) / 3},
        {-a / 3, Real(-2) / 3},
        {a * (a * a - 1) / 81, Real(-4) / 3},
        {a * a * (a * a - 1) / 243, Real(-5) / 3},
    };
    return e;
}

inline Expansion cirs2_Rtilde(const Real& a) {
    detail::guard_alpha_poles(a, 3);
    Expansion e{"CIRs2", "Rtilde", 's', {}};
    Real a2 = a * a;
    e.terms = {
        {1 / a, Real(0)},
        {-1 / (a2 * (a2 - 1)), Real(1)},
        {3 / (a2 * a * (a2 - 1) * (a2 - 4)), Real(2)},
        {-6 * (2 * a2 - 3) / (a2 * a2 * (a2 - 1) * (a2 - 1) * (a2 - 4) * (a2 - 9)), Real(3)},
    };
    return e;
}

inline Expansion cirl_rn(const Real& a, long n) {
    Real nn(n);
    Expansion e{"CIrl", "rn", 's', {}};
    e.terms = {
        {1 / (4 * nn), Real(1)},
        {(1 / nn - 3) / 6, Real(2) / 3},
        {a * (1 - 1 / (6 * nn)) / 6, Real(1) / 3},
    };
    return e;
}

inline Expansion cibl_beta(const Real& a, long n) {
    Real nn(n);
    Expansion e{"CIbl", "beta_n", 's', {}};
    e.terms = {
        {nn * nn + a * nn + (6 * a * a - 1) / 36, Real(0)},
        {(3 - 1 / nn) / 12, Real(2) / 3},
        {-a * (6 - 1 / nn) / 18, Real(1) / 3},
    };
    return e;
}

inline Expansion cisrl_sum(const Real& a, long n) {
    Real nn(n);
    Expansion e{"CISRl", "sumR", 's', {}};
    e.terms = {
        {-1 / (4 * nn), Real(1)},
        {(3 - 1 / nn) / 4, Real(2) / 3},
        {-a * (6 - 1 / nn) / 12, Real(1) / 3},
        {(6 * a * a - 1) / 36, Real(0)},
    };
    return e;
}

inline Expansion cir2_rn(const Real& a, long n) {
    detail::guard_alpha_poles(a, 2);
    Real nn(n);
    Real a2 = a * a;
    Expansion e{"CIr2", "rn", 's', {}};
    e.terms = {
        {-(2 * nn - a - 1) / (4 * a * nn), Real(1)},
        {(nn - 1) / (2 * a2 * (a2 - 1) * nn), Real(2)},
        {-3 * (2 * nn - 3) / (4 * a2 * a * (a2 - 4) * (a2 - 1) * nn), Real(3)},
    };
    return e;
}

inline Expansion cib2_beta(const Real& a, long n) {
    detail::guard_alpha_poles(a, 2);
    Real nn(n);
    Real a2 = a * a;
    Expansion e{"CIb2", "beta_n", 's', {}};
    e.terms = {
        {nn * (nn + a), Real(0)},
        {(nn - 1) / (4 * a2 * (a2 - 1) * nn), Real(2)},
        {-(2 * nn - 3) / (2 * a2 * a * (a2 - 4) * (a2 - 1) * nn), Real(3)},
    };
    return e;
}

inline Expansion cisr2_sum(const Real& a, long n) {
    detail::guard_alpha_poles(a, 2);
    Real nn(n);
    Real a2 = a * a;
    Expansion e{"CISR2", "sumR", 's', {}};
    e.terms = {
        {(2 * nn - a - 1) / (4 * a * nn), Real(1)},
        {-(nn - 1) / (4 * a2 * (a2 - 1) * nn), Real(2)},
        {-(2 * nn - 3) / (4 * a2 * a * (a2 - 4) * (a2 - 1) * nn), Real(3)},
    };
    return e;
}

// ---- e^{-x^2} gap ----

inline Expansion lcr1_Rn_gauss(const Real& a) {
    Expansion e{"1LCR1", "Rn", 'n', {}};
    Real s2 = sqrt(Real(2));
    e.terms = {
        {2 * a, Real(0)},
        {1 / s2, Real(-1) / 2},
        {-(4 * pow(a, 4L) + 4 * a * a - 1) / (16 * a * a * s2), Real(-3) / 2},
        {-(4 * pow(a, 4L) + 1) / (32 * pow(a, 3L)), Real(-2)},
    };
    return e;
}

inline Expansion gauss_gap_rn(const Real& a) {
    Expansion e{"1LC_rn", "rn", 'n', {}};
    Real s2 = sqrt(Real(2));
    e.terms = {
        {-s2 * a, Real(1) / 2},
        {a * a, Real(0)},
        {(1 - 4 * pow(a, 4L)) / (8 * s2 * a), Real(-1) / 2},
    };
    return e;
}

inline Expansion gauss_gap_sum(const Real& a) {
    Expansion e{"1LC_sum", "sumR", 'n', {}};
    Real s2 = sqrt(Real(2));
    e.terms = {
        {2 * a, Real(1)},
        {1 / (4 * a), Real(0)},
        {-1 / (2 * s2), Real(-1) / 2},
        {(4 * pow(a, 4L) + 1) / (32 * pow(a, 3L)), Real(-1)},
    };
    return e;
}

// ---- (1-x^2)^al gap ----

inline Expansion mcr_Rn(const Real& al, const Real& a) {
    Expansion e{"MCR", "Rn", 'n', {}};
    Real om = 1 - a * a;
    e.terms = {
        {2 * a / om, Real(1)},
        {(2 * al * a + a + 1) / om, Real(0)},
        {(4 * al * al * a * a - a * a + 1) / (8 * a * a), Real(-2)},
        {-(a * (2 * al + 1) * ((2 * al - 1) * a * a * (a + 2 * al + 1) + 1) + 1) / (8 * pow(a, 3L)),
         Real(-3)},
    };
    return e;
}

inline Expansion jacobi_gap_rn(const Real& al, const Real& a) {
    Expansion e{"MC_rn", "rn", 'n', {}};
    e.terms = {
        {-a / (a + 1), Real(1)},
        {-a * al / (a + 1), Real(0)},
        {(4 * al * al * a * a - a * a + 1) / (8 * a), Real(-1)},
    };
    return e;
}

inline Expansion jacobi_gap_beta(const Real& al, const Real& a) {
    Expansion e{"MC_beta", "beta_n", 'n', {}};
    Real am1 = a - 1;
    e.terms = {
        {am1 * am1 / 4, Real(0)},
        {-am1 * am1 * (a + 1) * (a * (4 * al * al - 1) - 1) / (16 * a), Real(-2)},
    };
    return e;
}

inline Expansion jacobi_gap_sum(const Real& al, const Real& a) {
    Expansion e{"MC_sum", "sumR", 'n', {}};
    Real om = 1 - a * a;
    e.terms = {
        {a / om, Real(2)},
        {2 * a * al / om, Real(1)},
        {(1 - a) / (4 * a * (a + 1)), Real(0)},
        {(a - 1) * (pow(a, 3L) * (4 * al * al - 1) - 1) / (16 * pow(a, 3L)), Real(-2)},
    };
    return e;
}

// ---- x^a e^{-x} (A + B theta(x-t)) ----

inline Expansion lcr_Rlimit(const Real& a) {
    Expansion e{"LCR", "R", 's', {}};
    e.terms = {
        {Real(1), Real(0)},
        {-a, Real(-1) / 2},
        {-a / 8, Real(-3) / 2},
        {-a * a / 4, Real(-2)},
        {-(3 * pow(a, 3L) / 8 + 27 * a / 128), Real(-5) / 2},
    };
    return e;
}

inline Expansion lcr1_rn_step(const Real& a, long n) {
    Real nn(n);
    Expansion e{"LCr1", "rn", 's', {}};
    e.terms = {
        {-nn - a / 2, Real(0)},
        {(2 * a * a + 4 * nn * a + a) / 4, Real(-1) / 2},
        {a * (2 * a + 4 * nn + 3) / 32, Real(-3) / 2},
        {a * a * (a + 2 * nn + 2) / 8, Real(-2)},
    };
    return e;
}

inline Expansion lcb1_beta_step(const Real& a, long n) {
    Real nn(n);
    Expansion e{"LCb1", "beta_n", 's', {}};
    e.terms = {
        {-a / 4, Real(1) / 2},
        {nn * (nn + a) + a * a / 4, Real(0)},
        {3 * a / 32, Real(-1) / 2},
        {a * a / 8, Real(-1)},
        {5 * a * (16 * a * a + 9) / 512, Real(-3) / 2},
    };
    return e;
}

inline Expansion lcsr1_sum_step(const Real& a, long n) {
    Real nn(n);
    Expansion e{"LCSR1", "sumR", 's', {}};
    e.terms = {
        {nn + a / 2, Real(0)},
        {-a * (4 * nn + a) / 2, Real(-1) / 2},
        {a * a * nn, Real(-1)},
        {a * (4 * nn - a) / 16, Real(-3) / 2},
        {a * a * (2 * nn - a) / 8, Real(-2)},
    };
    return e;
}

inline Expansion lcr_Rn_complement(const Real& a, const Real& t) {
    Expansion e{"1LCR", "Rn", 'n', {}};
    e.terms = {
        {-2 / t, Real(1)},
        {(t - 2 * (a + 1)) / (2 * t), Real(0)},
        {a * a / 8, Real(-2)},
        {(-4 * pow(a, 3L) - 2 * a * a * (t + 2) + t) / 32, Real(-3)},
    };
    return e;
}

inline Expansion step_complement_rn(const Real& a, const Real& t) {
    Expansion e{"2LC_rn", "rn", 'n', {}};
    e.terms = {
        {Real(-1) / 2, Real(1)},
        {(t - 2 * a) / 8, Real(0)},
        {a * a / 8, Real(-1)},
        {(t - 2 * a * a * (a + t)) / 32, Real(-2)},
    };
    return e;
}

inline Expansion step_complement_beta(const Real& a, const Real& t) {
    Expansion e{"2LC_beta", "beta_n", 'n', {}};
    e.terms = {
        {t * t / 16, Real(0)},
        {t * t * (1 - 2 * a * a) / 64, Real(-2)},
    };
    return e;
}

inline Expansion step_complement_sum(const Real& a, const Real& t) {
    Expansion e{"2LC_sum", "sumR", 'n', {}};
    e.terms = {
        {-1 / t, Real(2)},
        {Real(1) / 2 - a / t, Real(1)},
        {a / 4 - t / 16, Real(0)},
        {-a * a / 8, Real(-1)},
        {(4 * pow(a, 3L) + 2 * a * a * t - t) / 64, Real(-2)},
    };
    return e;
}

// ---- (1-x^2)^a (1-k^2 x^2)^b ----

inline Expansion rees_beta(const Real& a, const Real& b, const Real& k2) {
    Expansion e{"Rees_beta", "beta_n", 'n', {}};
    Real root = sqrt(1 - k2);
    Real c = 4 * a * a - 1;
    e.terms = {
        {Real(1) / 4, Real(0)},
        {-c / 16, Real(-2)},
        {c * (a + b - b / root) / 8, Real(-3)},
    };
    return e;
}

inline Expansion rees_pn(const Real& a, const Real& b, const Real& k2) {
    Real root = sqrt(1 - k2);
    Real c = 4 * a * a - 1;
    Real g = a + b - Real(1) / 2 - b / root;
    Expansion e{"Rees_pn", "pn", 'n', {}};
    e.terms = {
        {Real(-1) / 4, Real(1)},
        {(a - b) / 4 + Real(1) / 8 + b * (1 - root) / (2 * k2), Real(0)},
        {-c / 16, Real(-1)},
        {c * g / 16, Real(-2)},
        {-c * g * g / 16, Real(-3)},
    };
    return e;
}

/// Convergence-order measurement: fits the slope of log|numeric - partial|
/// against log(x) over the top half of the grid (all points when the grid
/// has four or fewer), and gates against the expected exponent.
struct ConvergenceReport {
    std::string id;
    std::vector<Real> grid;
    std::vector<Real> numeric;
    std::vector<Real> expansion;
    Real slope;
    Real fit_residual;
    Real expected;
    bool pass = false;
};

inline ConvergenceReport convergence(const std::string& id, const Real& expected,
                                     const std::vector<Real>& grid,
                                     const std::vector<Real>& numeric,
                                     const std::vector<Real>& partial) {
    if (grid.size() < 4) throw DomainError("convergence fit needs >= 4 grid points");
    ConvergenceReport rep;
    rep.id = id;
    rep.grid = grid;
    rep.numeric = numeric;
    rep.expansion = partial;
    size_t keep = grid.size() > 7 ? (grid.size() + 1) / 2 : grid.size();
    if (keep < 4) keep = 4;
    std::vector<Real> xs, ys;
    for (size_t i = grid.size() - keep; i < grid.size(); ++i) {
        xs.push_back(grid[i]);
        ys.push_back(abs(numeric[i] - partial[i]));
    }
    rep.slope = quad::loglog_slope(xs, ys, &rep.fit_residual);
    rep.expected = expected;
    Real window = Real::parse("0.3");
    if (expected < 0)
        rep.pass = rep.slope <= expected + window;
    else
        rep.pass = abs(rep.slope - expected) <= window;
    return rep;
}

}  // namespace heunlab::asym
