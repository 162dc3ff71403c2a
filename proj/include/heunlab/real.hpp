#pragma once

#include <mpfr.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>

#include "errors.hpp"

namespace heunlab {

using Precision = mpfr_prec_t;

namespace detail {
inline Precision& default_precision_slot() {
    thread_local Precision prec = 256;
    return prec;
}
}  // namespace detail

inline Precision default_precision() { return detail::default_precision_slot(); }

inline void set_default_precision(Precision p) {
    if (p < 64) throw ConfigError("working precision must be at least 64 bits");
    detail::default_precision_slot() = p;
}

/// Scoped change of the thread's working precision.
class PrecisionGuard {
public:
    explicit PrecisionGuard(Precision p) : saved_(default_precision()) { set_default_precision(p); }
    ~PrecisionGuard() { detail::default_precision_slot() = saved_; }
    PrecisionGuard(const PrecisionGuard&) = delete;
    PrecisionGuard& operator=(const PrecisionGuard&) = delete;

private:
    Precision saved_;
};

/// Arbitrary-precision floating value (MPFR backed, round-to-nearest).
/// Every value carries its own precision; binary operations produce results
/// at the larger precision of the two operands.
class Real {
public:
    Real() {
        mpfr_init2(v_, default_precision());
        mpfr_set_zero(v_, 1);
    }

    /// Uninitialized-value Real at a given precision (value is NaN until set).
    static Real of_prec(Precision p) { return Real(RawTag{}, p); }

    Real(const Real& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    Real(Real&& o) noexcept {
        v_[0] = o.v_[0];
        mpfr_init2(o.v_, MPFR_PREC_MIN);
    }
    Real& operator=(const Real& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    Real& operator=(Real&& o) noexcept {
        if (this != &o) mpfr_swap(v_, o.v_);
        return *this;
    }
    ~Real() { mpfr_clear(v_); }

    Real(long n) : Real() { mpfr_set_si(v_, n, MPFR_RNDN); }
    Real(int n) : Real(static_cast<long>(n)) {}
    Real(unsigned long n) : Real() { mpfr_set_ui(v_, n, MPFR_RNDN); }
    Real(double d) : Real() { mpfr_set_d(v_, d, MPFR_RNDN); }

    static Real with_prec(Precision p, long n) {
        Real r = of_prec(p);
        mpfr_set_si(r.v_, n, MPFR_RNDN);
        return r;
    }

    /// Parse a decimal string at the given (or default) precision.
    static Real parse(std::string_view s, Precision p = 0) {
        Real r = of_prec(p ? p : default_precision());
        std::string buf(s);
        if (mpfr_set_str(r.v_, buf.c_str(), 10, MPFR_RNDN) != 0)
            throw ConfigError("unparsable decimal literal: " + buf);
        return r;
    }

    Precision prec() const { return mpfr_get_prec(v_); }

    /// Same value rounded to precision p.
    Real round_to(Precision p) const {
        Real r = of_prec(p);
        mpfr_set(r.v_, v_, MPFR_RNDN);
        return r;
    }

    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

    bool is_nan() const { return mpfr_nan_p(v_) != 0; }
    bool is_finite() const { return mpfr_number_p(v_) != 0; }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    long to_long() const { return mpfr_get_si(v_, MPFR_RNDN); }

    /// Decimal string with `digits` significant digits, normalized exponent
    /// form (deterministic across runs for identical values).
    std::string str(int digits = 0) const {
        if (is_nan()) return "nan";
        if (mpfr_inf_p(v_)) return sign() > 0 ? "inf" : "-inf";
        if (digits <= 0) digits = static_cast<int>(static_cast<double>(prec()) * 0.30103) + 2;
        if (is_zero()) return "0";
        mpfr_exp_t e;
        char* s = mpfr_get_str(nullptr, &e, 10, static_cast<size_t>(digits), v_, MPFR_RNDN);
        std::string mant(s);
        mpfr_free_str(s);
        std::string out;
        size_t i = 0;
        if (mant[0] == '-') {
            out = "-";
            i = 1;
        }
        out += mant.substr(i, 1);
        out += ".";
        out += mant.substr(i + 1);
        while (out.size() > 3 && out.back() == '0') out.pop_back();
        if (out.back() == '.') out.pop_back();
        out += "e";
        out += std::to_string(static_cast<long>(e) - 1);
        return out;
    }

    Real& operator+=(const Real& o) {
        bump(o.prec());
        mpfr_add(v_, v_, o.v_, MPFR_RNDN);
        return *this;
    }
    Real& operator-=(const Real& o) {
        bump(o.prec());
        mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
        return *this;
    }
    Real& operator*=(const Real& o) {
        bump(o.prec());
        mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
        return *this;
    }
    Real& operator/=(const Real& o) {
        bump(o.prec());
        mpfr_div(v_, v_, o.v_, MPFR_RNDN);
        return *this;
    }
    Real& operator+=(long n) {
        mpfr_add_si(v_, v_, n, MPFR_RNDN);
        return *this;
    }
    Real& operator-=(long n) {
        mpfr_sub_si(v_, v_, n, MPFR_RNDN);
        return *this;
    }
    Real& operator*=(long n) {
        mpfr_mul_si(v_, v_, n, MPFR_RNDN);
        return *this;
    }
    Real& operator/=(long n) {
        mpfr_div_si(v_, v_, n, MPFR_RNDN);
        return *this;
    }

    /// *this += a*b without an intermediate temporary.
    void add_mul(const Real& a, const Real& b) { mpfr_fma(v_, a.v_, b.v_, v_, MPFR_RNDN); }
    /// *this -= a*b.
    void sub_mul(const Real& a, const Real& b) { mpfr_fms(v_, a.v_, b.v_, v_, MPFR_RNDN); mpfr_neg(v_, v_, MPFR_RNDN); }

    friend Real operator+(const Real& a, const Real& b) {
        Real r = binprec_make(a, b);
        mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend Real operator-(const Real& a, const Real& b) {
        Real r = binprec_make(a, b);
        mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend Real operator*(const Real& a, const Real& b) {
        Real r = binprec_make(a, b);
        mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend Real operator/(const Real& a, const Real& b) {
        Real r = binprec_make(a, b);
        mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend Real operator+(const Real& a, long b) {
        Real r = of_prec(a.prec());
        mpfr_add_si(r.v_, a.v_, b, MPFR_RNDN);
        return r;
    }
    friend Real operator+(long a, const Real& b) { return b + a; }
    friend Real operator-(const Real& a, long b) {
        Real r = of_prec(a.prec());
        mpfr_sub_si(r.v_, a.v_, b, MPFR_RNDN);
        return r;
    }
    friend Real operator-(long a, const Real& b) {
        Real r = of_prec(b.prec());
        mpfr_si_sub(r.v_, a, b.v_, MPFR_RNDN);
        return r;
    }
    friend Real operator*(const Real& a, long b) {
        Real r = of_prec(a.prec());
        mpfr_mul_si(r.v_, a.v_, b, MPFR_RNDN);
        return r;
    }
    friend Real operator*(long a, const Real& b) { return b * a; }
    friend Real operator/(const Real& a, long b) {
        Real r = of_prec(a.prec());
        mpfr_div_si(r.v_, a.v_, b, MPFR_RNDN);
        return r;
    }
    friend Real operator/(long a, const Real& b) {
        Real r = of_prec(b.prec());
        mpfr_si_div(r.v_, a, b.v_, MPFR_RNDN);
        return r;
    }
    friend Real operator-(const Real& a) {
        Real r = of_prec(a.prec());
        mpfr_neg(r.v_, a.v_, MPFR_RNDN);
        return r;
    }

    friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
    friend bool operator!=(const Real& a, const Real& b) { return !(a == b); }
    friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
    friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
    friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
    friend bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.v_, b.v_) != 0; }
    friend bool operator==(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) == 0; }
    friend bool operator!=(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) != 0; }
    friend bool operator<(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) < 0; }
    friend bool operator<=(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) <= 0; }
    friend bool operator>(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) > 0; }
    friend bool operator>=(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) >= 0; }

private:
    struct RawTag {};
    Real(RawTag, Precision p) { mpfr_init2(v_, p); }
    static Precision binprec(const Real& a, const Real& b) {
        return a.prec() > b.prec() ? a.prec() : b.prec();
    }
    static Real binprec_make(const Real& a, const Real& b) { return of_prec(binprec(a, b)); }
    void bump(Precision p) {
        if (p > prec()) mpfr_prec_round(v_, p, MPFR_RNDN);
    }
    mpfr_t v_;
};

#define HEUNLAB_UNARY_FN(name, mpfr_name)               \
    inline Real name(const Real& x) {                   \
        Real r = Real::of_prec(x.prec());               \
        mpfr_name(r.raw(), x.raw(), MPFR_RNDN);         \
        return r;                                       \
    }

HEUNLAB_UNARY_FN(abs, mpfr_abs)
HEUNLAB_UNARY_FN(sqrt, mpfr_sqrt)
HEUNLAB_UNARY_FN(cbrt, mpfr_cbrt)
HEUNLAB_UNARY_FN(exp, mpfr_exp)
HEUNLAB_UNARY_FN(expm1, mpfr_expm1)
HEUNLAB_UNARY_FN(log, mpfr_log)
HEUNLAB_UNARY_FN(log1p, mpfr_log1p)
HEUNLAB_UNARY_FN(sin, mpfr_sin)
HEUNLAB_UNARY_FN(cos, mpfr_cos)
HEUNLAB_UNARY_FN(atan, mpfr_atan)
HEUNLAB_UNARY_FN(sinh, mpfr_sinh)
HEUNLAB_UNARY_FN(cosh, mpfr_cosh)
HEUNLAB_UNARY_FN(tanh, mpfr_tanh)
HEUNLAB_UNARY_FN(asinh, mpfr_asinh)

#undef HEUNLAB_UNARY_FN

inline Real floor(const Real& x) {
    Real r = Real::of_prec(x.prec());
    mpfr_floor(r.raw(), x.raw());
    return r;
}
inline Real ceil(const Real& x) {
    Real r = Real::of_prec(x.prec());
    mpfr_ceil(r.raw(), x.raw());
    return r;
}

inline Real pow(const Real& x, const Real& y) {
    Real r = Real::of_prec(x.prec() > y.prec() ? x.prec() : y.prec());
    mpfr_pow(r.raw(), x.raw(), y.raw(), MPFR_RNDN);
    return r;
}
inline Real pow(const Real& x, long n) {
    Real r = Real::of_prec(x.prec());
    mpfr_pow_si(r.raw(), x.raw(), n, MPFR_RNDN);
    return r;
}
inline Real pi(Precision p = 0) {
    Real r = Real::of_prec(p ? p : default_precision());
    mpfr_const_pi(r.raw(), MPFR_RNDN);
    return r;
}
inline Real max(const Real& a, const Real& b) { return a >= b ? a : b; }
inline Real min(const Real& a, const Real& b) { return a <= b ? a : b; }
inline Real hypot(const Real& a, const Real& b) {
    Real r = Real::of_prec(a.prec() > b.prec() ? a.prec() : b.prec());
    mpfr_hypot(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
    return r;
}

/// 2^(-k) at default precision, exact.
inline Real pow2(long k, Precision p = 0) {
    Real r = Real::of_prec(p ? p : default_precision());
    mpfr_set_si_2exp(r.raw(), 1, k, MPFR_RNDN);
    return r;
}

/// True when x is an integer value.
inline bool is_integer(const Real& x) { return mpfr_integer_p(x.raw()) != 0; }

}  // namespace heunlab
