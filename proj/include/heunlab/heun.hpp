#pragma once

#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"
#include "opseq.hpp"
#include "ratfunc.hpp"
#include "rational.hpp"
#include "real.hpp"
#include "specfun.hpp"
#include "weights.hpp"

namespace heunlab::heun {

enum class Form { General, Confluent, DoubleConfluent, BiConfluent, TriConfluent };

inline const char* form_name(Form f) {
    switch (f) {
        case Form::General: return "general";
        case Form::Confluent: return "confluent";
        case Form::DoubleConfluent: return "double_confluent";
        case Form::BiConfluent: return "bi_confluent";
        case Form::TriConfluent: return "tri_confluent";
    }
    return "?";
}

/// Parameters of one of the five canonical forms:
///   general:          y'' + (g/z + d/(z-1) + e/(z-a)) y' + (ab z - q)/(z(z-1)(z-a)) y = 0
///   confluent:        y'' + (g/z + d/(z-1) + e) y' + (a z - q)/(z(z-1)) y = 0
///   double confluent: y'' + (g/z^2 + d/z + e) y' + (a z - q)/z^2 y = 0
///   bi-confluent:     y'' + (g/z + d + e z) y' + (a z - q)/z y = 0
///   tri-confluent:    y'' + (g + d z + e z^2) y' + (a z - q) y = 0
/// The general form must satisfy the Fuchsian relation 1 + alpha + beta =
/// gamma + delta + epsilon; make_general rejects violations.
struct HeunParams {
    Form form = Form::Confluent;
    Real a;      // fourth singular point (general only)
    Real q;      // accessory parameter
    Real alpha;  // for the general form alpha*beta enters the equation
    Real beta;   // general only
    Real gamma;
    Real delta;
    Real epsilon;
};

inline HeunParams make_general(const Real& a, const Real& q, const Real& alpha, const Real& beta,
                               const Real& gamma, const Real& delta, const Real& epsilon) {
    Real lhs = 1 + alpha + beta, rhs = gamma + delta + epsilon;
    if (abs(lhs - rhs) > Real::parse("1e-30") * max(Real(1), abs(lhs)))
        throw DomainError("general Heun parameters violate the Fuchsian relation");
    return HeunParams{Form::General, a, q, alpha, beta, gamma, delta, epsilon};
}

/// JSON object with the form tag and named parameters as decimal strings.
inline std::string to_json_string(const HeunParams& p, int digits = 40) {
    std::ostringstream os;
    os << "{\"form\":\"" << form_name(p.form) << "\"";
    auto field = [&](const char* nm, const Real& v) {
        os << ",\"" << nm << "\":\"" << v.str(digits) << "\"";
    };
    if (p.form == Form::General) field("a", p.a);
    field("q", p.q);
    field("alpha", p.alpha);
    if (p.form == Form::General) field("beta", p.beta);
    field("gamma", p.gamma);
    field("delta", p.delta);
    field("epsilon", p.epsilon);
    os << "}";
    return os.str();
}

/// Singular points of the form in the finite plane.
inline std::vector<Real> singular_points(const HeunParams& p) {
    switch (p.form) {
        case Form::General: return {Real(0), Real(1), p.a};
        case Form::Confluent: return {Real(0), Real(1)};
        case Form::DoubleConfluent: return {Real(0)};
        case Form::BiConfluent: return {Real(0)};
        case Form::TriConfluent: return {};
    }
    return {};
}

inline Real q_coeff(const HeunParams& p, const Real& z) {
    switch (p.form) {
        case Form::General:
            return p.gamma / z + p.delta / (z - 1) + p.epsilon / (z - p.a);
        case Form::Confluent:
            return p.gamma / z + p.delta / (z - 1) + p.epsilon;
        case Form::DoubleConfluent:
            return p.gamma / (z * z) + p.delta / z + p.epsilon;
        case Form::BiConfluent:
            return p.gamma / z + p.delta + p.epsilon * z;
        case Form::TriConfluent:
            return p.gamma + p.delta * z + p.epsilon * z * z;
    }
    throw DomainError("bad form");
}

inline Real s_coeff(const HeunParams& p, const Real& z) {
    switch (p.form) {
        case Form::General:
            return (p.alpha * p.beta * z - p.q) / (z * (z - 1) * (z - p.a));
        case Form::Confluent:
            return (p.alpha * z - p.q) / (z * (z - 1));
        case Form::DoubleConfluent:
            return (p.alpha * z - p.q) / (z * z);
        case Form::BiConfluent:
            return (p.alpha * z - p.q) / z;
        case Form::TriConfluent:
            return p.alpha * z - p.q;
    }
    throw DomainError("bad form");
}

/// Normalized residual |y'' + Q y' + S y| / (|y''| + |Q y'| + |S y|).
inline Real heun_residual(const HeunParams& p, const Real& y, const Real& yp, const Real& ypp,
                          const Real& z) {
    for (const Real& s : singular_points(p))
        if (abs(z - s) < Real::parse("0.05")) throw SingularPoint("z too close to singular point");
    Real qv = q_coeff(p, z) * yp;
    Real sv = s_coeff(p, z) * y;
    Real den = abs(ypp) + abs(qv) + abs(sv);
    if (den.is_zero()) return Real(0);
    return abs(ypp + qv + sv) / den;
}

/// Variable-plus-gauge change mapping the polynomial data P(z), P'(z), P''(z)
/// to the transformed unknown y(u) = g(u) P(z(u)). Only the logarithmic
/// derivatives of g enter residuals (the overall g scale cancels), so the
/// evaluator returns y/g, y'/g, y''/g.
struct Transform {
    std::function<Real(const Real&)> z_of_u = [](const Real& u) { return u; };
    std::function<Real(const Real&)> dz = [](const Real&) { return Real(1); };
    std::function<Real(const Real&)> d2z = [](const Real&) { return Real(0); };
    std::function<Real(const Real&)> lg = [](const Real&) { return Real(0); };   // g'/g
    std::function<Real(const Real&)> lg2 = [](const Real&) { return Real(0); };  // g''/g
};

struct TransformedEval {
    Real y;
    Real yp;
    Real ypp;
    Real z;
};

inline TransformedEval transformed_eval(const Transform& tf, const opseq::RecurrenceTable& tb,
                                        long n, const Real& u) {
    Real z = tf.z_of_u(u);
    auto pe = opseq::eval_p(tb, n, z);
    Real zp = tf.dz(u), zpp = tf.d2z(u);
    Real l1 = tf.lg(u), l2 = tf.lg2(u);
    TransformedEval te;
    te.z = z;
    te.y = pe.p;
    te.yp = pe.dp * zp + l1 * pe.p;
    te.ypp = pe.d2p * zp * zp + pe.dp * zpp + 2 * l1 * pe.dp * zp + l2 * pe.p;
    return te;
}

/// Round-trip of the variable map (used by the involution property test).
inline Real transform_roundtrip(const Transform& tf, const std::function<Real(const Real&)>& u_of_z,
                                const Real& u) {
    return u_of_z(tf.z_of_u(u));
}

enum class BranchSign { Plus, Minus };

/// One row of the large-n verification matrix: which family, which scaling.
enum class Row {
    JacobiExpLinear,     // T = n t fixed, confluent
    JacobiExpInverse,    // T = 2 n^2 t fixed small, confluent (u = 1/z, gauge u^-lambda)
    ReesJacobi,          // k^2 b = t fixed (k = t^{1/4}/sqrt n, b = n sqrt t), confluent (u = z^2)
    LaguerreShifted,     // t fixed, confluent (z = -t u, gauge (u-1)^-eta)
    LaguerreExpInverseI,  // s = (2n+a+1) t fixed large, double confluent
    LaguerreExpInverseII, // s fixed small, double confluent
    GaussianGap,         // a fixed, confluent (u = z^2/a^2)
    JacobiGap,           // a fixed, general (u = z^2)
    LaguerreStepI,       // A=0,B=1: s = 4 n t fixed large, double confluent
    LaguerreStepII,      // A=1,B=-1: t fixed, confluent (u = z/t)
};

inline const char* row_name(Row r) {
    switch (r) {
        case Row::JacobiExpLinear: return "jacobi_exp_linear";
        case Row::JacobiExpInverse: return "jacobi_exp_inverse";
        case Row::ReesJacobi: return "rees_jacobi";
        case Row::LaguerreShifted: return "laguerre_shifted";
        case Row::LaguerreExpInverseI: return "laguerre_exp_inverse_large_s";
        case Row::LaguerreExpInverseII: return "laguerre_exp_inverse_small_s";
        case Row::GaussianGap: return "gaussian_gap";
        case Row::JacobiGap: return "jacobi_gap";
        case Row::LaguerreStepI: return "laguerre_step_theta";
        case Row::LaguerreStepII: return "laguerre_step_complement";
    }
    return "?";
}

/// Scaled inputs of a row: `scale` is the quantity held fixed as n grows
/// (T, s, t or a depending on the row), plus the weight shape parameters.
struct ScaledParams {
    Real alpha;
    Real beta;
    Real lambda;
    Real scale;
    BranchSign branch_lambda = BranchSign::Plus;
    BranchSign branch_eta = BranchSign::Plus;
};

struct LimitMap {
    Row row;
    HeunParams hp;
    Transform tf;
    weights::WeightSpec weight;  // concrete weight at this n
    std::vector<Real> residual_grid;
};

namespace detail {

inline std::vector<Real> grid_avoiding(const std::vector<Real>& base,
                                       const std::vector<Real>& sing) {
    std::vector<Real> out;
    for (const Real& u : base) {
        bool ok = true;
        for (const Real& s : sing)
            if (abs(u - s) < Real::parse("0.05")) ok = false;
        if (ok) out.push_back(u);
    }
    return out;
}

inline std::vector<Real> unit_grid() {
    // Interior window [0.1, 0.6]: sub-leading gauge/confluence corrections
    // carry (u-1)^-2 structure that inflates constants near u = 1.
    std::vector<Real> g;
    for (int i = 0; i <= 7; ++i) g.push_back(Real::parse("0.1") + Real(i) * Real::parse("0.5") / 7);
    return g;
}

inline std::vector<Real> outer_grid() {
    return {Real::parse("1.4"), Real::parse("1.8"), Real::parse("2.4"), Real::parse("3.2"),
            Real::parse("4.5"), Real::parse("6.0")};
}

}  // namespace detail

/// Table-row parameter map: the limiting Heun parameters at this n, the
/// variable/gauge transform carrying P_n to the Heun unknown, and the
/// concrete weight whose polynomials are being approximated.
inline LimitMap limit_params(Row row, long n, const ScaledParams& sp) {
    LimitMap lm;
    lm.row = row;
    Real nn(n);
    switch (row) {
        case Row::JacobiExpLinear: {
            const Real& T = sp.scale;
            Real t = T / nn;
            lm.hp = HeunParams{Form::Confluent, Real(0), nn * (nn + sp.alpha + sp.beta + 1) + T / 2,
                               T, Real(0), sp.alpha + 1, sp.beta + 1, -T / nn};
            lm.weight = weights::WeightSpec{weights::Family::JacobiExpLinear, sp.alpha, sp.beta,
                                            Real(0), t, Real(0), Real(0)};
            lm.residual_grid = detail::grid_avoiding(detail::unit_grid(), {Real(0), Real(1)});
            break;
        }
        case Row::JacobiExpInverse: {
            const Real& T = sp.scale;
            Real t = T / (2 * nn * nn);
            const Real &a = sp.alpha, &b = sp.beta;
            Real s = ((a - 1) * a * (a + 1) * (a + 1) - T) * T / (2 * nn * nn * a * a * (a * a - 1));
            Real acc = ((a * a + 3) * T * T - 2 * a * a * a * (a * a - 1) * T) /
                       (4 * pow(a, 4L) * (a * a - 1));
            Real bb = nn * (nn + a + b + 1);
            Real disc = sqrt((a + b + 1) * (a + b + 1) + 4 * bb);
            Real lam = (a + b + 1 + (sp.branch_lambda == BranchSign::Plus ? disc : -disc)) / 2;
            lm.hp = HeunParams{Form::Confluent, Real(0), lam * (a - lam - s) - acc, -s * lam,
                               Real(0), -a - b + 2 * lam, b + 1, -s};
            lm.tf.z_of_u = [](const Real& u) { return 1 / u; };
            lm.tf.dz = [](const Real& u) { return -1 / (u * u); };
            lm.tf.d2z = [](const Real& u) { return 2 / (u * u * u); };
            lm.tf.lg = [lam](const Real& u) { return -lam / u; };
            lm.tf.lg2 = [lam](const Real& u) { return lam * (lam + 1) / (u * u); };
            lm.weight = weights::WeightSpec{weights::Family::JacobiExpInverse, a, b, Real(0), t,
                                            Real(0), Real(0)};
            lm.residual_grid = detail::grid_avoiding(detail::outer_grid(), {Real(0), Real(1)});
            break;
        }
        case Row::ReesJacobi: {
            const Real& t = sp.scale;  // t = k^2 beta held fixed
            Real k2 = sqrt(t) / nn;
            Real bweight = nn * sqrt(t);
            lm.hp = HeunParams{Form::Confluent, Real(0), nn * (nn + 2 * sp.alpha + t + 1) / 4,
                               nn * t / 2, Real(0), Real(1) / 2, sp.alpha + 1, -t};
            lm.tf.z_of_u = [](const Real& u) { return sqrt(u); };
            lm.tf.dz = [](const Real& u) { return 1 / (2 * sqrt(u)); };
            lm.tf.d2z = [](const Real& u) { return -1 / (4 * u * sqrt(u)); };
            lm.weight = weights::WeightSpec{weights::Family::ReesJacobi, sp.alpha, bweight, Real(0),
                                            k2, Real(0), Real(0)};
            lm.residual_grid = detail::grid_avoiding(detail::unit_grid(), {Real(0), Real(1)});
            break;
        }
        case Row::LaguerreShifted: {
            const Real& t = sp.scale;
            const Real &a = sp.alpha, &l = sp.lambda;
            Real disc = sqrt(l * l + 1);
            Real eta = (1 - l + (sp.branch_eta == BranchSign::Plus ? disc : -disc)) / 2;
            Real q = -((2 * eta + l) * (2 * (a + eta) + l) - 4 * l * sqrt(nn * t) + 4 * nn * t +
                       2 * l * t) / 4;
            lm.hp = HeunParams{Form::Confluent, Real(0), q, t * (eta - nn), Real(0), a + 1,
                               2 * eta + l, t};
            lm.tf.z_of_u = [t](const Real& u) { return -t * u; };
            lm.tf.dz = [t](const Real&) { return -t; };
            lm.tf.lg = [eta](const Real& u) { return -eta / (u - 1); };
            lm.tf.lg2 = [eta](const Real& u) { return eta * (eta + 1) / ((u - 1) * (u - 1)); };
            lm.weight = weights::WeightSpec{weights::Family::LaguerreShifted, a, Real(0), l, t,
                                            Real(0), Real(0)};
            lm.residual_grid = detail::grid_avoiding(detail::unit_grid(), {Real(0), Real(1)});
            break;
        }
        case Row::LaguerreExpInverseI: {
            const Real& s = sp.scale;
            if (s < 8) throw RegimeError("large-s case needs s >= 8");
            const Real& a = sp.alpha;
            Real t = s / (2 * nn + a + 1);
            Real s13 = cbrt(s), s23 = s13 * s13;
            Real gam = (3 * s + 3 * s23 - a * s13) / (6 * nn);
            Real q = (-6 * a * a - 27 * s23 + 18 * a * s13 + 1) / 36;
            lm.hp = HeunParams{Form::DoubleConfluent, Real(0), q, nn, Real(0), gam, a + 1, Real(-1)};
            lm.weight = weights::WeightSpec{weights::Family::LaguerreExpInverse, a, Real(0), Real(0),
                                            t, Real(0), Real(0)};
            lm.residual_grid = detail::grid_avoiding(detail::outer_grid(), {Real(0)});
            break;
        }
        case Row::LaguerreExpInverseII: {
            const Real& s = sp.scale;
            if (s > 2) throw RegimeError("small-s case needs s <= 2");
            const Real& a = sp.alpha;
            Real t = s / (2 * nn + a + 1);
            lm.hp = HeunParams{Form::DoubleConfluent, Real(0), -s / (2 * a), nn, Real(0),
                               s * (a + 1) / (2 * nn * a), a + 1, Real(-1)};
            lm.weight = weights::WeightSpec{weights::Family::LaguerreExpInverse, a, Real(0), Real(0),
                                            t, Real(0), Real(0)};
            lm.residual_grid = detail::grid_avoiding(detail::outer_grid(), {Real(0)});
            break;
        }
        case Row::GaussianGap: {
            const Real& a = sp.scale;
            Real t = a * a;
            lm.hp = HeunParams{Form::Confluent, Real(0), -sqrt(2 * nn * t) / 4, nn * t / 2, Real(0),
                               Real(-1) / 2, Real(1), -t};
            lm.tf.z_of_u = [a](const Real& u) { return a * sqrt(u); };
            lm.tf.dz = [a](const Real& u) { return a / (2 * sqrt(u)); };
            lm.tf.d2z = [a](const Real& u) { return -a / (4 * u * sqrt(u)); };
            lm.weight = weights::WeightSpec{weights::Family::GaussianGap, Real(0), Real(0), Real(0),
                                            a, Real(0), Real(0)};
            lm.residual_grid = detail::grid_avoiding(detail::outer_grid(), {Real(0), Real(1)});
            break;
        }
        case Row::JacobiGap: {
            const Real& a = sp.scale;
            Real t = a * a;
            const Real& al = sp.alpha;
            // alpha~ beta~ = -n(n+2 al+1)/4 with alpha~+beta~ = al + 1/2 (Fuchsian)
            Real sum = al + Real(1) / 2;
            Real prod = -nn * (nn + 2 * al + 1) / 4;
            Real disc = sqrt(sum * sum - 4 * prod);
            Real ha = (sum + disc) / 2, hb = (sum - disc) / 2;
            lm.hp = make_general(t, sqrt(t) * nn / 4, ha, hb, Real(-1) / 2, al + 1, Real(1));
            lm.tf.z_of_u = [](const Real& u) { return sqrt(u); };
            lm.tf.dz = [](const Real& u) { return 1 / (2 * sqrt(u)); };
            lm.tf.d2z = [](const Real& u) { return -1 / (4 * u * sqrt(u)); };
            lm.weight = weights::WeightSpec{weights::Family::JacobiGap, al, Real(0), Real(0), a,
                                            Real(0), Real(0)};
            lm.residual_grid = detail::grid_avoiding(detail::unit_grid(), {Real(0), Real(1), t});
            break;
        }
        case Row::LaguerreStepI: {
            const Real& s = sp.scale;
            if (s < 8) throw RegimeError("large-s case needs s >= 8");
            const Real& a = sp.alpha;
            Real t = s / (4 * nn);
            Real rs = sqrt(s);
            lm.hp = HeunParams{Form::DoubleConfluent, Real(0), -(rs - a) * (rs - a) / 4, nn, Real(0),
                               (s - a * rs) / (4 * nn), a + 1, Real(-1)};
            lm.weight = weights::WeightSpec{weights::Family::LaguerreStep, a, Real(0), Real(0), t,
                                            Real(0), Real(1)};
            lm.residual_grid = detail::grid_avoiding(detail::outer_grid(), {Real(0)});
            break;
        }
        case Row::LaguerreStepII: {
            const Real& t = sp.scale;
            const Real& a = sp.alpha;
            lm.hp = HeunParams{Form::Confluent, Real(0), nn * (nn + a + 1 + t / 2), nn * t, Real(0),
                               a + 1, Real(1), -t};
            lm.tf.z_of_u = [t](const Real& u) { return t * u; };
            lm.tf.dz = [t](const Real&) { return t; };
            lm.weight = weights::WeightSpec{weights::Family::LaguerreStep, a, Real(0), Real(0), t,
                                            Real(1), Real(-1)};
            lm.residual_grid = detail::grid_avoiding(detail::unit_grid(), {Real(0), Real(1)});
            break;
        }
    }
    return lm;
}

/// Max heun_residual of the transformed P_n over the row's grid.
inline Real row_residual(const LimitMap& lm, const opseq::RecurrenceTable& tb, long n) {
    Real worst(0);
    for (const Real& u : lm.residual_grid) {
        auto te = transformed_eval(lm.tf, tb, n, u);
        worst = max(worst, heun_residual(lm.hp, te.y, te.yp, te.ypp, u));
    }
    return worst;
}

/// Geometric mean of the residual over the grid: the smooth aggregate used
/// for decay-order fits (the max hops between grid points as error
/// coefficients cross zero and need not fall monotonically).
inline Real row_residual_gm(const LimitMap& lm, const opseq::RecurrenceTable& tb, long n) {
    Real acc(0);
    long k = 0;
    for (const Real& u : lm.residual_grid) {
        auto te = transformed_eval(lm.tf, tb, n, u);
        Real r = heun_residual(lm.hp, te.y, te.yp, te.ypp, u);
        if (r > 0) {
            acc += log(r);
            ++k;
        }
    }
    if (k == 0) return Real(0);
    return exp(acc / k);
}

/// Frobenius coefficients c_0..c_K of the local solution z^rho sum c_k z^k at
/// z = 0 for the confluent and general forms. branch 0 gives rho = 0; branch
/// 1 gives rho = 1 - gamma.
inline std::vector<Real> frobenius_series(const HeunParams& p, int branch, long K) {
    if (p.form != Form::Confluent && p.form != Form::General)
        throw DomainError("frobenius_series: confluent or general form only");
    Real rho = branch == 0 ? Real(0) : Real(1 - p.gamma);
    if (branch == 0 && p.gamma <= 0 && is_integer(p.gamma))
        throw ResonantExponent("exponent-0 branch needs gamma not a non-positive integer");
    std::vector<Real> c;
    c.reserve(static_cast<size_t>(K + 1));
    c.push_back(Real(1));
    Real cm1(0);
    for (long m = 0; m < K; ++m) {
        Real mp = rho + m;
        Real den = (mp + 1) * (mp + p.gamma);
        if (den.is_zero()) throw ResonantExponent("frobenius recurrence hit a zero denominator");
        Real next;
        if (p.form == Form::Confluent) {
            next = ((mp * (mp - 1 + p.gamma + p.delta - p.epsilon) - p.q) * c.back() +
                    (m > 0 ? Real((p.epsilon * (mp - 1) + p.alpha) * cm1) : Real(0))) /
                   den;
        } else {
            Real num = ((1 + p.a) * mp * (mp - 1) + (p.gamma * (1 + p.a) + p.delta * p.a + p.epsilon) * mp +
                        p.q) * c.back() -
                       (m > 0 ? Real((mp - 1 + p.alpha) * (mp - 1 + p.beta) * cm1) : Real(0));
            next = num / (p.a * den);
        }
        cm1 = c.back();
        c.push_back(next);
    }
    return c;
}

/// Evaluate sum c_k z^{k+rho} and its first two derivatives.
struct SeriesEval {
    Real y;
    Real yp;
    Real ypp;
};

inline SeriesEval series_eval(const std::vector<Real>& c, const Real& rho, const Real& z) {
    SeriesEval se{Real(0), Real(0), Real(0)};
    // Horner over the integer part, then apply the z^rho factor.
    Real f(0), fp(0), fpp(0);
    for (size_t k = c.size(); k-- > 0;) {
        fpp = fpp * z + 2 * fp;
        fp = fp * z + f;
        f = f * z + c[k];
    }
    if (rho.is_zero()) return {f, fp, fpp};
    Real zr = pow(z, rho);
    se.y = zr * f;
    se.yp = zr * (fp + rho * f / z);
    se.ypp = zr * (fpp + 2 * rho * fp / z + rho * (rho - 1) * f / (z * z));
    return se;
}

/// Residual of the series in its own form, maxed over a disk-avoiding grid
/// within |z| <= half the distance to the nearest non-zero singularity.
inline Real frobenius_self_residual(const HeunParams& p, int branch, long K, int grid_points = 8) {
    auto c = frobenius_series(p, branch, K);
    Real rho = branch == 0 ? Real(0) : Real(1 - p.gamma);
    Real radius = Real(1);
    if (p.form == Form::General) radius = min(Real(1), abs(p.a));
    radius = radius / 2;
    Real worst(0);
    Real z0 = Real::parse("0.06");
    for (int i = 0; i < grid_points; ++i) {
        Real z = z0 + (radius - z0) * i / grid_points;
        if (!(z > 0)) continue;
        auto se = series_eval(c, rho, z);
        worst = max(worst, heun_residual(p, se.y, se.yp, se.ypp, z));
    }
    return worst;
}

/// Coefficient functions of the derivative equations: v = y' of a solution of
/// the base form satisfies v'' + Qd v' + Sd v = 0 with the following data.
inline Real dq_coeff(const HeunParams& p, const Real& z) {
    switch (p.form) {
        case Form::General:
            return (p.gamma + 1) / z + (p.delta + 1) / (z - 1) + (p.epsilon + 1) / (z - p.a) -
                   p.alpha * p.beta / (p.alpha * p.beta * z - p.q);
        case Form::Confluent:
            return (p.gamma + 1) / z + (p.delta + 1) / (z - 1) + p.epsilon -
                   p.alpha / (p.alpha * z - p.q);
        case Form::DoubleConfluent:
            return p.gamma / z + (p.delta + 2) / (z - 1) + p.epsilon - p.alpha / (p.alpha * z - p.q);
        case Form::BiConfluent:
            return (p.gamma + 1) / z + p.delta + p.epsilon * z - p.alpha / (p.alpha * z - p.q);
        case Form::TriConfluent:
            return p.gamma + p.delta * z + p.epsilon * z * z - p.alpha / (p.alpha * z - p.q);
    }
    throw DomainError("bad form");
}

inline Real ds_coeff(const HeunParams& p, const Real& z) {
    switch (p.form) {
        case Form::General: {
            Real ab = p.alpha * p.beta;
            Real f = z * (ab * z - 2 * p.q) * (ab + p.gamma + p.delta + p.epsilon) + p.q * p.q +
                     p.q * (p.gamma + p.a * (p.gamma + p.delta) + p.epsilon) - ab * p.gamma * p.a;
            return f / (z * (z - 1) * (z - p.a) * (ab * z - p.q));
        }
        case Form::Confluent: {
            Real g = (p.alpha + p.epsilon) * (p.alpha * z - 2 * p.q) * z + p.q * p.q -
                     (p.gamma + p.delta - p.epsilon) * p.q + p.alpha * p.gamma;
            return g / (z * (z - 1) * (p.alpha * z - p.q));
        }
        case Form::DoubleConfluent: {
            Real h = (p.alpha + p.epsilon) * (p.alpha * z - 2 * p.q) * z + p.q * p.q -
                     p.gamma * p.q - p.alpha * p.gamma;
            return h / (z * z * (p.alpha * z - p.q));
        }
        case Form::BiConfluent: {
            Real k = (p.alpha + p.epsilon) * (p.alpha * z - 2 * p.q) * z + p.q * p.q -
                     p.gamma * p.q - p.alpha * p.gamma;
            return k / (z * (p.alpha * z - p.q));
        }
        case Form::TriConfluent: {
            Real pp = (p.alpha + p.epsilon) * (p.alpha * z - 2 * p.q) * z + p.q * p.q -
                      p.gamma * p.q - p.alpha * p.gamma;
            return pp / (p.alpha * z - p.q);
        }
    }
    throw DomainError("bad form");
}

/// Max residual of v = y' (given as samples of v, v', v'') in the
/// derivative equation of the base form, over a grid.
inline Real derivative_equation_residual(const HeunParams& p,
                                         const std::function<SeriesEval(const Real&)>& v_at,
                                         const std::vector<Real>& grid) {
    Real worst(0);
    for (const Real& z : grid) {
        auto se = v_at(z);
        Real qv = dq_coeff(p, z) * se.yp;
        Real sv = ds_coeff(p, z) * se.y;
        Real den = abs(se.ypp) + abs(qv) + abs(sv);
        if (den.is_zero()) continue;
        worst = max(worst, abs(se.ypp + qv + sv) / den);
    }
    return worst;
}

/// Residual of the closed-form Kummer-M special solutions in their Riccati
/// equations:
///  - x^a(1-x)^b e^{-tx}:   t R' = R^2 - (a+b+t-1) R + a t,
///       R(t) = a t M(b; a+b+1; t) / ((a+b) M(b; a+b; t))
///  - x^a(x+t)^l e^{-x}:    t R' = t R^2 - (a+l+t) R + l,
///       R(t) = l M(a; a+l+1; t) / ((a+l) M(a; a+l; t))
inline Real riccati_verify(weights::Family family, const Real& p1, const Real& p2, const Real& t) {
    using specfun::kummer_m;
    using specfun::kummer_m_deriv;
    if (family == weights::Family::JacobiExpLinear) {
        const Real &a = p1, &b = p2;
        Real m1 = kummer_m(b, a + b + 1, t), m2 = kummer_m(b, a + b, t);
        Real m1p = kummer_m_deriv(b, a + b + 1, t), m2p = kummer_m_deriv(b, a + b, t);
        Real R = a * t * m1 / ((a + b) * m2);
        Real Rp = a * (m1 + t * m1p) / ((a + b) * m2) - a * t * m1 * m2p / ((a + b) * m2 * m2);
        Real lhs = t * Rp;
        Real rhs = R * R - (a + b + t - 1) * R + a * t;
        return abs(lhs - rhs) / max(Real(1), max(abs(lhs), abs(rhs)));
    }
    if (family == weights::Family::LaguerreShifted) {
        const Real &a = p1, &l = p2;
        Real m1 = kummer_m(a, a + l + 1, t), m2 = kummer_m(a, a + l, t);
        Real m1p = kummer_m_deriv(a, a + l + 1, t), m2p = kummer_m_deriv(a, a + l, t);
        Real R = l * m1 / ((a + l) * m2);
        Real Rp = l * m1p / ((a + l) * m2) - l * m1 * m2p / ((a + l) * m2 * m2);
        Real lhs = t * Rp;
        Real rhs = t * R * R - (a + l + t) * R + l;
        return abs(lhs - rhs) / max(Real(1), max(abs(lhs), abs(rhs)));
    }
    throw DomainError("riccati_verify: only the two Kummer-solvable families");
}

/// Exact-rational z-space limit equations at their degenerate parameter
/// values (deformation off), built from the same row formulas with sqrt-terms
/// vanishing structurally, and the classical target equations transcribed
/// independently. Used by the degeneration checks.
struct ZEquationQ {
    ratfn::RatFrac Q;
    ratfn::RatFrac S;
};

namespace detail {
/// c * sqrt(m): degenerate rows only ever need c = 0 or m a perfect square.
inline Rat mul_sqrt(const Rat& c, const Rat& m) {
    if (c.is_zero()) return Rat(0);
    return c * m.sqrt_exact();
}
}  // namespace detail

/// Row z-form at the degenerate point (T=0 / t=0 / lambda=0 / s=0 / a=0).
inline ZEquationQ degenerate_z_equation(Row row, long n, const Rat& alpha, const Rat& beta,
                                        const Rat& lambda, const Rat& t_fixed) {
    using namespace ratfn;
    (void)lambda;  // the lambda-degenerate rows substitute it structurally
    Rat nn(n);
    ZEquationQ eq;
    switch (row) {
        case Row::JacobiExpLinear: {
            Rat T(0);
            eq.Q = rf_pole(alpha + 1, Rat(0)) + rf_pole(beta + 1, Rat(1)) + rf_const(-T / nn);
            eq.S = (rf_const(T) * rf_z() - rf_const(T / 2 + nn * (nn + alpha + beta + 1))) /
                   (rf_z() * (rf_z() - rf_const(1)));
            break;
        }
        case Row::JacobiExpInverse: {
            Rat s(0), acc(0);
            Rat b = nn * (nn + alpha + beta + 1);
            eq.Q = RatFrac{Poly{s}, Poly{Rat(0), Rat(0), Rat(1)}} + rf_pole(alpha + 1, Rat(0)) +
                   rf_pole(beta + 1, Rat(1));
            eq.S = RatFrac(Rat(0)) - (rf_const(b) * rf_z() + rf_const(acc)) /
                                        ((rf_z() - rf_const(1)) * rf_z() * rf_z());
            break;
        }
        case Row::ReesJacobi: {
            Rat t(0);
            eq.Q = rf_pole(alpha + 1, Rat(1)) + rf_pole(alpha + 1, Rat(-1)) -
                   rf_const(2 * t) * rf_z();
            // -n(n+2a+1-(2z^2-1)t)/(z^2-1)
            RatFrac z2m1{Poly{Rat(-1), Rat(0), Rat(1)}, Poly{Rat(1)}};
            eq.S = RatFrac(Rat(0)) -
                   (rf_const(nn * (nn + 2 * alpha + 1)) -
                    rf_const(nn * t) * RatFrac{Poly{Rat(-1), Rat(0), Rat(2)}, Poly{Rat(1)}}) /
                       z2m1;
            break;
        }
        case Row::LaguerreShifted: {
            Rat l(0);
            const Rat& t = t_fixed;
            eq.Q = rf_pole(alpha + 1, Rat(0)) + rf_pole(l, -t) + rf_const(Rat(-1));
            // n/z - l(4 sqrt(nt) - 2a - 2t - l)/(4z(t+z)) + l t/(2 z (t+z)^2)
            RatFrac zz = rf_z();
            RatFrac ztp = zz + rf_const(t);
            Rat c1 = detail::mul_sqrt(Rat(4) * l, nn * t) - l * (2 * alpha + 2 * t + l);
            eq.S = rf_pole(nn, Rat(0)) - rf_const(c1 / 4) / (zz * ztp) +
                   rf_const(l * t / 2) / (zz * ztp * ztp);
            break;
        }
        case Row::LaguerreExpInverseII: {
            Rat s(0);
            RatFrac z2{Poly{Rat(0), Rat(0), Rat(1)}, Poly{Rat(1)}};
            eq.Q = RatFrac{Poly{s * (alpha + 1) / (2 * nn * alpha)}, Poly{Rat(0), Rat(0), Rat(1)}} +
                   rf_pole(alpha + 1, Rat(0)) + rf_const(Rat(-1));
            eq.S = (rf_const(nn) * rf_z() + rf_const(s / (2 * alpha))) / z2;
            break;
        }
        case Row::GaussianGap: {
            Rat a(0);
            RatFrac z2ma{Poly{-a * a, Rat(0), Rat(1)}, Poly{Rat(1)}};
            eq.Q = rf_const(2 * a * a) / (rf_z() * z2ma) - rf_const(Rat(2)) * rf_z();
            eq.S = (rf_const(2 * nn) * rf_z() * rf_z() +
                    rf_const(detail::mul_sqrt(a, 2 * nn))) /
                   z2ma;
            break;
        }
        case Row::JacobiGap: {
            Rat a(0);
            RatFrac z2ma{Poly{-a * a, Rat(0), Rat(1)}, Poly{Rat(1)}};
            RatFrac z2m1{Poly{Rat(-1), Rat(0), Rat(1)}, Poly{Rat(1)}};
            eq.Q = rf_const(Rat(2)) * rf_z() / z2ma + rf_const(2 * (alpha + 1)) * rf_z() / z2m1 -
                   rf_const(Rat(2)) / rf_z();
            eq.S = RatFrac(Rat(0)) -
                   (rf_const(nn * a) + rf_z() * rf_z() * rf_const((2 * alpha + nn + 1) * nn)) /
                       (z2m1 * z2ma);
            break;
        }
        default:
            throw DomainError("no degenerate z-form for this row");
    }
    return eq;
}

enum class Classical { Jacobi01, JacobiSym, Laguerre, Hermite };

/// The classical hypergeometric-class target equations.
inline ZEquationQ classical_z_equation(Classical kind, long n, const Rat& alpha, const Rat& beta) {
    using namespace ratfn;
    Rat nn(n);
    ZEquationQ eq;
    switch (kind) {
        case Classical::Jacobi01:
            eq.Q = rf_pole(alpha + 1, Rat(0)) + rf_pole(beta + 1, Rat(1));
            eq.S = RatFrac(Rat(0)) - rf_const(nn * (nn + alpha + beta + 1)) /
                                        (rf_z() * (rf_z() - rf_const(1)));
            break;
        case Classical::JacobiSym: {
            RatFrac z2m1{Poly{Rat(-1), Rat(0), Rat(1)}, Poly{Rat(1)}};
            eq.Q = rf_const(2 * (alpha + 1)) * rf_z() / z2m1;
            eq.S = RatFrac(Rat(0)) - rf_const(nn * (nn + 2 * alpha + 1)) / z2m1;
            break;
        }
        case Classical::Laguerre:
            eq.Q = rf_pole(alpha + 1, Rat(0)) + rf_const(Rat(-1));
            eq.S = rf_pole(nn, Rat(0));
            break;
        case Classical::Hermite:
            eq.Q = RatFrac(Rat(0)) - rf_const(Rat(2)) * rf_z();
            eq.S = rf_const(2 * nn);
            break;
    }
    return eq;
}

}  // namespace heunlab::heun
