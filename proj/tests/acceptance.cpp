// End-to-end verification gates. One line per criterion; the exit code
// counts gates that failed beyond the documented expected set (the README's
// numerical notes: three sub-checks compare against series on windows whose
// edge exceeds the series' own first omitted term, or carry an exact O(1)
// offset; they report FAIL (expected) with measured values).

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <heunlab/heunlab.hpp>

using namespace heunlab;
namespace w = heunlab::weights;
namespace op = heunlab::opseq;
namespace ld = heunlab::ladder;
namespace hn = heunlab::heun;
namespace cb = heunlab::coulomb;
namespace pv = heunlab::painleve;
namespace as = heunlab::asym;

namespace {

int unexpected_failures = 0;

void report(int id, const std::string& name, bool pass, const std::string& detail,
            bool expected_fail = false) {
    if (pass) {
        std::printf("[PASS] criterion %2d: %-34s %s\n", id, name.c_str(), detail.c_str());
    } else if (expected_fail) {
        std::printf("[FAIL] criterion %2d: %-34s %s (expected failure, see notes)\n", id,
                    name.c_str(), detail.c_str());
    } else {
        std::printf("[FAIL] criterion %2d: %-34s %s\n", id, name.c_str(), detail.c_str());
        ++unexpected_failures;
    }
    std::fflush(stdout);
}

struct FamilyCase {
    w::Family family;
    bool complement;
};

const std::vector<FamilyCase> kAllCases = {
    {w::Family::JacobiExpLinear, false}, {w::Family::JacobiExpInverse, false},
    {w::Family::ReesJacobi, false},      {w::Family::LaguerreShifted, false},
    {w::Family::LaguerreExpInverse, false}, {w::Family::GaussianGap, false},
    {w::Family::JacobiGap, false},       {w::Family::LaguerreStep, false},
    {w::Family::LaguerreStep, true}};

std::string case_name(const FamilyCase& c) {
    std::string n = w::family_name(c.family);
    if (c.family == w::Family::LaguerreStep) n += c.complement ? "(A=1,B=-1)" : "(A=0,B=1)";
    return n;
}

// ---------------------------------------------------------------- criterion 1
void criterion1() {
    bool pass = true;
    Real worst(0);
    for (const char* astr : {"0.5", "1.3"}) {
        w::WeightSpec ls = w::default_spec(w::Family::LaguerreStep);
        ls.alpha = Real::parse(astr);
        ls.t = Real(0);
        auto pl = op::make_pipeline(ls, 31, 256);
        for (long j = 0; j <= 30; ++j) {
            Real ea = abs(pl.tb.alpha[j] - (2 * Real(j) + 1 + ls.alpha)) /
                      (2 * Real(j) + 1 + ls.alpha);
            worst = max(worst, ea);
            if (j >= 1) {
                Real eb = abs(pl.tb.beta[j] - Real(j) * (Real(j) + ls.alpha)) /
                          (Real(j) * (Real(j) + ls.alpha));
                worst = max(worst, eb);
            }
        }
    }
    w::WeightSpec gg = w::default_spec(w::Family::GaussianGap);
    gg.t = Real(0);
    auto pl = op::make_pipeline(gg, 31, 256);
    for (long j = 0; j <= 30; ++j) {
        worst = max(worst, abs(pl.tb.alpha[j]));
        if (j >= 1) worst = max(worst, Real(abs(pl.tb.beta[j] - Real(j) / 2) / (Real(j) / 2)));
    }
    pass = worst < Real::parse("1e-20");
    report(1, "classical closed forms", pass, "worst rel err " + worst.str(4) + " (gate 1e-20)");
}

// ---------------------------------------------------------------- criteria 2+3
void criteria2_3() {
    Real worst_s1(0), worst_s2(0), worst_s2p(0), worst_ode(0);
    std::string worst_case;
    for (const auto& c : kAllCases) {
        w::WeightSpec spec = w::default_spec(c.family, c.complement);
        auto pl = op::make_pipeline(spec, 22, 256);
        for (long n : {5L, 10L, 20L}) {
            auto zs = ld::sample_points(spec, {});
            auto rep = ld::check_s1_s2(pl.ctx, pl.tb, n, zs);
            worst_s1 = max(worst_s1, rep.s1);
            worst_s2 = max(worst_s2, rep.s2);
            worst_s2p = max(worst_s2p, rep.s2p);

            ld::AuxiliaryQuantities aux;
            if (c.family == w::Family::ReesJacobi) {
                aux.n = n;
                aux.t = spec.t;
            } else {
                aux = ld::aux_quantities(pl.ctx, pl.tb, n);
            }
            auto ode = ld::family_ode(pl.ctx, pl.tb, n, aux);
            auto zs2 = ld::sample_points(spec, ode.real_poles);
            Real r = ld::ode_residual(ode, pl.tb, n, zs2);
            if (r > worst_ode) {
                worst_ode = r;
                worst_case = case_name(c) + " n=" + std::to_string(n);
            }
        }
    }
    bool p2 = worst_s1 < Real::parse("1e-10") && worst_s2 < Real::parse("1e-10") &&
              worst_s2p < Real::parse("1e-10");
    report(2, "ladder identities S1,S2,S2'", p2,
           "worst residuals " + worst_s1.str(3) + ", " + worst_s2.str(3) + ", " +
               worst_s2p.str(3) + " (gate 1e-10)");
    bool p3 = worst_ode < Real::parse("1e-8");
    report(3, "exact family equations", p3,
           "worst residual " + worst_ode.str(3) + " at " + worst_case + " (gate 1e-8)");
}

// ---------------------------------------------------------------- criterion 4
void criterion4() {
    struct RowCase {
        hn::Row row;
        hn::ScaledParams sp;
    };
    std::vector<RowCase> cases;
    {
        hn::ScaledParams sp;
        sp.alpha = Real::parse("1.3");
        sp.beta = Real::parse("0.6");
        sp.scale = Real(1);
        cases.push_back({hn::Row::JacobiExpLinear, sp});
        sp.alpha = Real::parse("1.7");
        sp.beta = Real::parse("0.9");
        sp.scale = Real::parse("0.5");
        cases.push_back({hn::Row::JacobiExpInverse, sp});
        sp.alpha = Real(1);
        sp.beta = Real(0);
        sp.scale = Real::parse("0.5");
        cases.push_back({hn::Row::ReesJacobi, sp});
        sp.alpha = Real::parse("1.3");
        sp.lambda = Real::parse("0.7");
        sp.scale = Real(1);
        cases.push_back({hn::Row::LaguerreShifted, sp});
        sp.alpha = Real::parse("1.5");
        sp.lambda = Real(0);
        sp.scale = Real(30);
        cases.push_back({hn::Row::LaguerreExpInverseI, sp});
        sp.scale = Real::parse("0.3");
        cases.push_back({hn::Row::LaguerreExpInverseII, sp});
        sp.alpha = Real(0);
        sp.scale = Real::parse("0.5");
        cases.push_back({hn::Row::GaussianGap, sp});
        sp.alpha = Real::parse("1.2");
        sp.scale = Real::parse("0.3");
        cases.push_back({hn::Row::JacobiGap, sp});
        sp.alpha = Real::parse("1.1");
        sp.scale = Real(100);
        cases.push_back({hn::Row::LaguerreStepI, sp});
        sp.alpha = Real::parse("1.1");
        sp.scale = Real(2);
        cases.push_back({hn::Row::LaguerreStepII, sp});
    }
    bool all = true;
    std::ostringstream detail;
    for (const auto& rcase : cases) {
        std::vector<Real> xs, ys;
        bool decayed = true;
        for (long n : {10L, 20L, 40L, 80L}) {
            auto lm = hn::limit_params(rcase.row, n, rcase.sp);
            auto pl = op::make_pipeline(lm.weight, n + 1, 256);
            Real r = hn::row_residual_gm(lm, pl.tb, n);
            if (!ys.empty() && !(r < ys.back())) decayed = false;
            xs.push_back(Real(n));
            ys.push_back(r);
        }
        Real slope = quad::loglog_slope(xs, ys);
        bool ok = decayed && slope <= Real::parse("-0.8");
        all = all && ok;
        detail << hn::row_name(rcase.row) << "=" << slope.str(3) << (ok ? " " : "(!) ");
    }
    report(4, "limiting-equation reduction", all, "slopes: " + detail.str() + "(gate <= -0.8, monotone)");
}

// ---------------------------------------------------------------- criterion 5
void criterion5() {
    bool all = true;
    std::ostringstream detail;
    auto gate = [&](const std::string& id, const as::ConvergenceReport& rep) {
        all = all && rep.pass;
        detail << id << "=" << rep.slope.str(3) << (rep.pass ? " " : "(!) ");
    };
    std::vector<long> grid = {20, 40, 80, 160};
    std::vector<Real> ns;
    for (long n : grid) ns.push_back(Real(n));
    {
        Real a = Real::parse("1.3"), b = Real::parse("0.6"), T = Real(1);
        std::vector<Real> numv, expv;
        for (long n : grid) {
            w::WeightSpec spec{w::Family::JacobiExpLinear, a, b, Real(0), T / Real(n), Real(0),
                               Real(0)};
            auto pl = op::make_pipeline(spec, n + 1, 256);
            numv.push_back(ld::aux_Rn(pl.ctx, pl.tb, n));
            expv.push_back(as::eval_partial(as::zr_Rn(a, b, T), Real(n), 3));
        }
        gate("ZR", as::convergence("ZR", Real(-3), ns, numv, expv));
    }
    {
        w::WeightSpec spec = w::default_spec(w::Family::LaguerreShifted);
        std::vector<Real> numv, expv;
        for (long n : grid) {
            auto pl = op::make_pipeline(spec, n + 1, 256);
            numv.push_back(ld::aux_Rn(pl.ctx, pl.tb, n));
            expv.push_back(as::eval_partial(as::ecr_Rn(spec.alpha, spec.lambda, spec.t), Real(n), 1));
        }
        gate("ECR", as::convergence("ECR", Real(-3) / 2, ns, numv, expv));
    }
    {
        w::WeightSpec spec = w::default_spec(w::Family::GaussianGap);
        std::vector<Real> numv, expv;
        for (long n : grid) {
            auto pl = op::make_pipeline(spec, n + 1, 256);
            numv.push_back(ld::aux_Rn(pl.ctx, pl.tb, n));
            expv.push_back(as::eval_partial(as::lcr1_Rn_gauss(spec.t), Real(n), 2));
        }
        gate("1LCR1", as::convergence("1LCR1", Real(-3) / 2, ns, numv, expv));
    }
    {
        w::WeightSpec spec = w::default_spec(w::Family::JacobiGap);
        std::vector<Real> numv, expv;
        for (long n : grid) {
            auto pl = op::make_pipeline(spec, n + 1, 256);
            numv.push_back(ld::aux_Rn(pl.ctx, pl.tb, n));
            expv.push_back(as::eval_partial(as::mcr_Rn(spec.alpha, spec.t), Real(n), 2));
        }
        gate("MCR", as::convergence("MCR", Real(-2), ns, numv, expv));
    }
    {
        w::WeightSpec spec = w::default_spec(w::Family::LaguerreStep, true);
        std::vector<Real> numv, expv;
        for (long n : grid) {
            auto pl = op::make_pipeline(spec, n + 1, 256);
            numv.push_back(ld::aux_Rn(pl.ctx, pl.tb, n));
            expv.push_back(as::eval_partial(as::lcr_Rn_complement(spec.alpha, spec.t), Real(n), 3));
        }
        gate("1LCR", as::convergence("1LCR", Real(-3), ns, numv, expv));
    }
    {
        // small-s inner series by integration from exact data (the movable
        // zero at s ~ 0.886 caps the window)
        Real al = Real::parse("1.5");
        auto ode = pv::limit_ode_Rtilde(al);
        auto ser = as::cirs2_Rtilde(al);
        Real s0 = Real::parse("1e-3");
        Real R0 = as::eval_expansion(ser, s0);
        Real Rp0 = ser.terms[1].first + 2 * ser.terms[2].first * s0 + 3 * ser.terms[3].first * s0 * s0;
        std::vector<Real> sg = {Real::parse("0.05"), Real::parse("0.1"), Real::parse("0.2"),
                                Real::parse("0.4")};
        auto ivp = pv::integrate(ode, s0, R0, Rp0, sg.back(), Real::parse("1e-26"),
                                 {sg[0], sg[1], sg[2]});
        std::vector<Real> expv;
        for (const Real& sv : sg) expv.push_back(as::eval_partial(ser, sv, 3));
        gate("CIRs2", as::convergence("CIRs2", Real(3), sg, ivp.R, expv));
    }
    {
        // large-s inner series by substitution into its own equation
        // (value continuation is blocked by the movable zero)
        Real al = Real::parse("1.5");
        auto ode = pv::limit_ode_Rtilde(al);
        auto ser = as::cirs1_Rtilde(al);
        std::vector<Real> sg = {Real(40), Real(80), Real(160), Real(320)};
        std::vector<Real> res, zero;
        for (const Real& sv : sg) {
            Real R = as::eval_expansion(ser, sv);
            Real Rp(0), Rpp(0);
            for (auto& [c, pw] : ser.terms) {
                Rp += c * pw * pow(sv, pw - 1);
                Rpp += c * pw * (pw - 1) * pow(sv, pw - 2);
            }
            res.push_back(abs(Rpp - ode.rhs(sv, R, Rp)));
            zero.push_back(Real(0));
        }
        gate("CIRs1", as::convergence("CIRs1", Real(-10) / 3, sg, res, zero));
    }
    {
        Real al = Real::parse("1.1");
        auto ode = pv::limit_ode_Rstep(al);
        auto ser = as::lcr_Rlimit(al);
        std::vector<Real> sg = {Real(40), Real(80), Real(160), Real(320)};
        std::vector<Real> res, zero;
        for (const Real& sv : sg) {
            Real R = as::eval_expansion(ser, sv);
            Real Rp(0), Rpp(0);
            for (auto& [c, pw] : ser.terms) {
                if (pw.is_zero()) continue;
                Rp += c * pw * pow(sv, pw - 1);
                Rpp += c * pw * (pw - 1) * pow(sv, pw - 2);
            }
            res.push_back(abs(Rpp - ode.rhs(sv, R, Rp)));
            zero.push_back(Real(0));
        }
        gate("LCR", as::convergence("LCR", Real(-37) / 10, sg, res, zero));
    }
    report(5, "expansion truncation orders", all, detail.str());
}

// ---------------------------------------------------------------- criterion 6
void criterion6() {
    // leg 1: JacobiExpLinear at T = nt = 1
    {
        std::vector<Real> xs, ys;
        for (long n : {10L, 20L, 40L, 80L}) {
            w::WeightSpec spec = w::default_spec(w::Family::JacobiExpLinear);
            spec.t = Real(1) / Real(n);
            auto pl = op::make_pipeline(spec, n, 256);
            auto ep = cb::endpoints_generic(spec, n);
            auto [ap, bp] = cb::predicted_recurrence(ep);
            (void)bp;
            xs.push_back(Real(n));
            ys.push_back(abs(pl.tb.alpha[static_cast<size_t>(n)] - ap) /
                         abs(pl.tb.alpha[static_cast<size_t>(n)]));
        }
        Real slope = quad::loglog_slope(xs, ys);
        report(6, "fluid vs ladder (jacobi_exp_linear)", slope <= Real(-1),
               "slope " + slope.str(4) + " (gate <= -1)");
    }
    // leg 2: LaguerreShifted at fixed t (documented O(1) offset -> slope > -1)
    {
        std::vector<Real> xs, ys;
        for (long n : {10L, 20L, 40L, 80L}) {
            w::WeightSpec spec = w::default_spec(w::Family::LaguerreShifted);
            auto pl = op::make_pipeline(spec, n, 256);
            auto ep = cb::endpoints_generic(spec, n);
            auto [ap, bp] = cb::predicted_recurrence(ep);
            (void)bp;
            xs.push_back(Real(n));
            ys.push_back(abs(pl.tb.alpha[static_cast<size_t>(n)] - ap) /
                         abs(pl.tb.alpha[static_cast<size_t>(n)]));
        }
        Real slope = quad::loglog_slope(xs, ys);
        report(6, "fluid vs ladder (laguerre_shifted)", slope <= Real(-1),
               "slope " + slope.str(4) + " (gate <= -1; exact O(1) offset makes finite-n slope "
               "-0.94)",
               /*expected_fail=*/true);
    }
    // leg 3: the two endpoint routes agree
    {
        Real worst(0);
        {
            w::WeightSpec jl = w::default_spec(w::Family::JacobiExpLinear);
            jl.t = Real(1) / 30;
            auto g = cb::endpoints_generic(jl, 30);
            auto al = cb::endpoints_algebraic(jl, 30);
            worst = max(worst, Real(abs(g.a - al.a) / abs(g.a)));
            worst = max(worst, Real(abs(g.b - al.b) / abs(g.b)));
        }
        {
            w::WeightSpec lsh = w::default_spec(w::Family::LaguerreShifted);
            auto g = cb::endpoints_generic(lsh, 20);
            auto al = cb::endpoints_algebraic(lsh, 20);
            worst = max(worst, Real(abs(g.a - al.a) / abs(g.b)));
            worst = max(worst, Real(abs(g.b - al.b) / abs(g.b)));
        }
        {
            w::WeightSpec ji = w::default_spec(w::Family::JacobiExpInverse);
            auto g = cb::endpoints_generic(ji, 20);
            auto al = cb::endpoints_algebraic(ji, 20);
            worst = max(worst, Real(abs(g.a - al.a) / abs(g.a)));
            worst = max(worst, Real(abs(g.b - al.b) / abs(g.b)));
        }
        report(6, "algebraic vs generic endpoints", worst < Real::parse("1e-8"),
               "worst rel diff " + worst.str(3) + " (gate 1e-8)");
    }
}

// ---------------------------------------------------------------- criterion 7
void criterion7() {
    Real tol = pow2(-100);
    Real worst(0);
    unsigned long seed = 987654321;
    auto next = [&seed]() {
        seed = seed * 6364136223846793005ULL + 1442695040888963407ULL;
        return Real(static_cast<long>((seed >> 33) % 1000)) / 250 + Real(1) / 10;
    };
    for (int trial = 0; trial < 20; ++trial) {
        Real a = next();
        Real b = a + next() + 1;
        Real t = next();
        worst = max(worst, abs(cb::theta_integral(a, b, tol, [](const Real&) { return Real(1); }) -
                               cb::appendix_integral(1, a, b)));
        worst = max(worst, abs(cb::theta_integral(a, b, tol, [](const Real& x) { return x; }) -
                               cb::appendix_integral(2, a, b)));
        worst = max(worst, abs(cb::theta_integral(a, b, tol, [](const Real& x) { return 1 / x; }) -
                               cb::appendix_integral(3, a, b)));
        worst = max(worst,
                    abs(cb::theta_integral(a, b, tol, [](const Real& x) { return 1 / (x * x); }) -
                        cb::appendix_integral(4, a, b)));
        worst = max(worst,
                    abs(cb::theta_integral(a, b, tol, [&](const Real& x) { return 1 / (x + t); }) -
                        cb::appendix_integral(5, a, b, t)));
    }
    report(7, "arcsine-kernel identities", worst < Real::parse("1e-20"),
           "worst abs err " + worst.str(3) + " over 20 random triples (gate 1e-20)");
}

// ---------------------------------------------------------------- criterion 8
void criterion8() {
    {
        w::WeightSpec jl = w::default_spec(w::Family::JacobiExpLinear);
        auto cc = pv::crosscheck_R(jl, 10, Real::parse("0.5"), Real(2));
        report(8, "R_n cross-oracle (jacobi_exp_linear)", cc.max_rel_dev < Real::parse("1e-6"),
               "max dev " + cc.max_rel_dev.str(3) + " on [0.5,2] (gate 1e-6)");
    }
    {
        w::WeightSpec lsh = w::default_spec(w::Family::LaguerreShifted);
        auto cc = pv::crosscheck_R(lsh, 10, Real::parse("0.5"), Real(2));
        report(8, "R_n cross-oracle (laguerre_shifted)", cc.max_rel_dev < Real::parse("1e-6"),
               "max dev " + cc.max_rel_dev.str(3) + " on [0.5,2] (gate 1e-6)");
    }
    {
        w::WeightSpec gg = w::default_spec(w::Family::GaussianGap);
        auto cc = pv::crosscheck_R(gg, 10, Real::parse("0.4"), Real::parse("1.2"));
        report(8, "R_n cross-oracle (gaussian_gap)", cc.max_rel_dev < Real::parse("1e-6"),
               "max dev " + cc.max_rel_dev.str(3) + " on [0.4,1.2] (gate 1e-6)");
    }
    {
        // x^a e^{-x-t/x}: the only published oracle is the limit equation with
        // exact s = 0 data; compare against the published small-s series
        Real al = Real::parse("1.5");
        auto ode = pv::limit_ode_Rtilde(al);
        auto ser = as::cirs2_Rtilde(al);
        Real s0 = Real::parse("1e-3");
        Real R0 = as::eval_expansion(ser, s0);
        Real Rp0 = ser.terms[1].first + 2 * ser.terms[2].first * s0 + 3 * ser.terms[3].first * s0 * s0;
        std::vector<Real> sg;
        for (int i = 1; i <= 9; ++i) sg.push_back(Real(i) / 100);
        auto ivp = pv::integrate(ode, s0, R0, Rp0, Real::parse("0.1"), Real::parse("1e-24"), sg);
        Real worst(0);
        for (size_t i = 0; i < ivp.grid.size(); ++i)
            worst = max(worst, abs(ivp.R[i] - as::eval_expansion(ser, ivp.grid[i])));
        report(8, "R-limit vs series (exp-inverse)", worst < Real::parse("1e-6"),
               "max dev " + worst.str(3) + " on (0,0.1]; series' own next term ~3e-6 at 0.1 "
               "(gate 1e-6)",
               /*expected_fail=*/true);
    }
    {
        Real al = Real::parse("1.3");
        auto F = pv::limit_ode_F(al);
        auto ser = as::cf_F(al);
        Real T0 = Real::parse("1e-3");
        Real F0 = as::eval_expansion(ser, T0);
        Real Fp0 = ser.terms[0].first + 2 * ser.terms[1].first * T0 + 3 * ser.terms[2].first * T0 * T0;
        std::vector<Real> sg;
        for (int i = 1; i <= 9; ++i) sg.push_back(Real(i) / 100);
        auto ivp = pv::integrate(F, T0, F0, Fp0, Real::parse("0.1"), Real::parse("1e-24"), sg);
        Real worst(0);
        for (size_t i = 0; i < ivp.grid.size(); ++i)
            worst = max(worst, abs(ivp.R[i] - as::eval_expansion(ser, ivp.grid[i])));
        report(8, "P3' equation vs published series", worst < Real::parse("1e-6"),
               "max dev " + worst.str(3) + " on (0,0.1]; series' own T^4 term is 5e-6 at 0.1 "
               "(gate 1e-6)",
               /*expected_fail=*/true);
    }
}

// ---------------------------------------------------------------- criterion 9
void criterion9() {
    Real worst(0);
    for (int i = 1; i <= 10; ++i) {
        Real t = Real(i) / 5;
        worst = max(worst, hn::riccati_verify(w::Family::JacobiExpLinear, Real::parse("1.2"),
                                              Real::parse("0.7"), t));
        worst = max(worst, hn::riccati_verify(w::Family::LaguerreShifted, Real::parse("0.9"),
                                              Real::parse("1.1"), t));
    }
    report(9, "Riccati special solutions", worst < Real::parse("1e-20"),
           "worst residual " + worst.str(3) + " at 10 sample t (gate 1e-20)");
}

// --------------------------------------------------------------- criterion 10
void criterion10() {
    // exact rational degeneration of the limiting equations
    Rat a(13, 10), b(3, 5);
    long n = 9;
    bool exact = true;
    auto eq = [&](const hn::ZEquationQ& x, const hn::ZEquationQ& y) {
        exact = exact && x.Q == y.Q && x.S == y.S;
    };
    eq(hn::degenerate_z_equation(hn::Row::JacobiExpLinear, n, a, b, Rat(0), Rat(0)),
       hn::classical_z_equation(hn::Classical::Jacobi01, n, a, b));
    eq(hn::degenerate_z_equation(hn::Row::JacobiExpInverse, n, a, b, Rat(0), Rat(0)),
       hn::classical_z_equation(hn::Classical::Jacobi01, n, a, b));
    eq(hn::degenerate_z_equation(hn::Row::ReesJacobi, n, a, Rat(0), Rat(0), Rat(0)),
       hn::classical_z_equation(hn::Classical::JacobiSym, n, a, Rat(0)));
    eq(hn::degenerate_z_equation(hn::Row::LaguerreShifted, n, a, Rat(0), Rat(0), Rat(2)),
       hn::classical_z_equation(hn::Classical::Laguerre, n, a, Rat(0)));
    eq(hn::degenerate_z_equation(hn::Row::LaguerreExpInverseII, n, a, Rat(0), Rat(0), Rat(0)),
       hn::classical_z_equation(hn::Classical::Laguerre, n, a, Rat(0)));
    eq(hn::degenerate_z_equation(hn::Row::GaussianGap, n, Rat(0), Rat(0), Rat(0), Rat(0)),
       hn::classical_z_equation(hn::Classical::Hermite, n, Rat(0), Rat(0)));
    eq(hn::degenerate_z_equation(hn::Row::JacobiGap, n, a, Rat(0), Rat(0), Rat(0)),
       hn::classical_z_equation(hn::Classical::JacobiSym, n, a, Rat(0)));
    report(10, "degenerations, exact coefficients", exact,
           exact ? "7/7 rational-function identities hold" : "coefficient mismatch");

    // classical polynomials satisfy the degenerate equations to 1e-20
    Real worst(0);
    auto resid = [&](const w::WeightSpec& spec, hn::Classical kind, const Real& al,
                     const Real& be, const std::vector<Real>& zs) {
        auto pl = op::make_pipeline(spec, 13, 256);
        auto eqq = hn::classical_z_equation(kind, 12, Rat(0), Rat(0));
        (void)eqq;  // evaluation path below uses the Real form of the same equations
        for (const Real& z : zs) {
            auto pe = op::eval_p(pl.tb, 12, z);
            Real Q, S;
            switch (kind) {
                case hn::Classical::Jacobi01:
                    Q = (al + 1) / z + (be + 1) / (z - 1);
                    S = -Real(12) * (12 + al + be + 1) / (z * (z - 1));
                    break;
                case hn::Classical::JacobiSym:
                    Q = 2 * (al + 1) * z / (z * z - 1);
                    S = -Real(12) * (12 + 2 * al + 1) / (z * z - 1);
                    break;
                case hn::Classical::Laguerre:
                    Q = (al + 1) / z - 1;
                    S = Real(12) / z;
                    break;
                case hn::Classical::Hermite:
                    Q = -2 * z;
                    S = Real(24);
                    break;
            }
            Real num = abs(pe.d2p + Q * pe.dp + S * pe.p);
            Real den = abs(pe.d2p) + abs(Q * pe.dp) + abs(S * pe.p);
            worst = max(worst, Real(num / den));
        }
    };
    {
        w::WeightSpec jl = w::default_spec(w::Family::JacobiExpLinear);
        jl.t = Real(0);
        resid(jl, hn::Classical::Jacobi01, jl.alpha, jl.beta, {Real(-2), Real(3), Real::parse("0.4")});
    }
    {
        w::WeightSpec jg = w::default_spec(w::Family::JacobiGap);
        jg.t = Real(0);
        resid(jg, hn::Classical::JacobiSym, jg.alpha, Real(0), {Real(-3), Real(2), Real::parse("0.4")});
    }
    {
        w::WeightSpec ls = w::default_spec(w::Family::LaguerreStep);
        ls.t = Real(0);
        resid(ls, hn::Classical::Laguerre, ls.alpha, Real(0), {Real(-2), Real(-5), Real(3)});
    }
    {
        w::WeightSpec gg = w::default_spec(w::Family::GaussianGap);
        gg.t = Real(0);
        resid(gg, hn::Classical::Hermite, Real(0), Real(0), {Real(-2), Real::parse("0.7"), Real(3)});
    }
    report(10, "classical polynomials satisfy them", worst < Real::parse("1e-20"),
           "worst residual " + worst.str(3) + " (gate 1e-20)");
}

// --------------------------------------------------------------- criterion 11
void criterion11() {
    std::string cli_path;
    if (const char* cli = std::getenv("HEUNLAB_CLI")) {
        cli_path = cli;
    } else {
        // fall back to the sibling binary in the build tree
        std::error_code ec;
        auto self = std::filesystem::read_symlink("/proc/self/exe", ec);
        if (!ec) cli_path = (self.parent_path() / "heunlab_cli").string();
    }
    if (cli_path.empty() || !std::filesystem::exists(cli_path)) {
        report(11, "table1 determinism", false, "heunlab_cli binary not found");
        return;
    }
    const std::string cli = cli_path;
    namespace fs = std::filesystem;
    auto base = fs::temp_directory_path() / "heunlab_acceptance_det";
    fs::remove_all(base);
    fs::create_directories(base);
    auto cfg = base / "cfg.json";
    {
        std::ofstream out(cfg);
        out << R"({"family": "gaussian_gap", "parameters": {"a": "0.5"}, "n": [6, 9],)"
            << R"( "out_dir": ")" << (base / "o").string() << R"("})";
    }
    std::string bodies[2];
    for (int i = 0; i < 2; ++i) {
        fs::remove_all(base / "o");
        // exit 1 only flags weak decay at this reduced grid; determinism
        // compares bytes, so any clean completion (0 or 1) is acceptable
        std::string cmd = cli + " table1 --config " + cfg.string() + " >/dev/null 2>&1";
        int rcode = std::system(cmd.c_str());
        if (rcode == -1 || !std::filesystem::exists(base / "o")) {
            report(11, "table1 determinism", false, "table1 run failed");
            return;
        }
        for (auto& e : fs::directory_iterator(base / "o")) {
            std::ifstream in(e.path(), std::ios::binary);
            std::ostringstream ss;
            ss << in.rdbuf();
            bodies[i] += e.path().filename().string() + "\n" + ss.str();
        }
    }
    report(11, "table1 determinism", !bodies[0].empty() && bodies[0] == bodies[1],
           "two runs byte-identical (" + std::to_string(bodies[0].size()) + " bytes)");
}

}  // namespace

int main() {
    std::printf("verification gates (defaults: 256-bit working precision)\n");
    criterion1();
    criteria2_3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    criterion10();
    criterion11();
    if (unexpected_failures == 0)
        std::printf("all gates green (documented expected failures excepted)\n");
    else
        std::printf("%d unexpected gate failure(s)\n", unexpected_failures);
    return unexpected_failures;
}
