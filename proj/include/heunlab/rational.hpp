#pragma once

#include <gmp.h>

#include <string>

#include "errors.hpp"
#include "real.hpp"

namespace heunlab {

/// Exact rational, used where coefficient identities are checked exactly.
class Rat {
public:
    Rat() { mpq_init(v_); }
    Rat(long num, long den = 1) {
        mpq_init(v_);
        if (den == 0) throw DomainError("rational with zero denominator");
        mpq_set_si(v_, num, 1);
        if (den != 1) {
            mpq_t d;
            mpq_init(d);
            mpq_set_si(d, den, 1);
            mpq_div(v_, v_, d);
            mpq_clear(d);
        }
        mpq_canonicalize(v_);
    }
    Rat(int num) : Rat(static_cast<long>(num)) {}
    Rat(const Rat& o) {
        mpq_init(v_);
        mpq_set(v_, o.v_);
    }
    Rat(Rat&& o) noexcept {
        mpq_init(v_);
        mpq_swap(v_, o.v_);
    }
    Rat& operator=(const Rat& o) {
        if (this != &o) mpq_set(v_, o.v_);
        return *this;
    }
    Rat& operator=(Rat&& o) noexcept {
        if (this != &o) mpq_swap(v_, o.v_);
        return *this;
    }
    ~Rat() { mpq_clear(v_); }

    friend Rat operator+(const Rat& a, const Rat& b) {
        Rat r;
        mpq_add(r.v_, a.v_, b.v_);
        return r;
    }
    friend Rat operator-(const Rat& a, const Rat& b) {
        Rat r;
        mpq_sub(r.v_, a.v_, b.v_);
        return r;
    }
    friend Rat operator*(const Rat& a, const Rat& b) {
        Rat r;
        mpq_mul(r.v_, a.v_, b.v_);
        return r;
    }
    friend Rat operator/(const Rat& a, const Rat& b) {
        if (mpq_sgn(b.v_) == 0) throw DomainError("rational division by zero");
        Rat r;
        mpq_div(r.v_, a.v_, b.v_);
        return r;
    }
    friend Rat operator-(const Rat& a) {
        Rat r;
        mpq_neg(r.v_, a.v_);
        return r;
    }
    friend bool operator==(const Rat& a, const Rat& b) { return mpq_equal(a.v_, b.v_) != 0; }
    friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
    friend bool operator<(const Rat& a, const Rat& b) { return mpq_cmp(a.v_, b.v_) < 0; }

    bool is_zero() const { return mpq_sgn(v_) == 0; }

    /// Exact square root; only zero and perfect squares are accepted.
    /// Degenerate-limit checks never need anything else.
    Rat sqrt_exact() const {
        if (is_zero()) return Rat(0);
        if (mpq_sgn(v_) < 0) throw DomainError("sqrt of negative rational");
        Rat r;
        if (!mpz_perfect_square_p(mpq_numref(v_)) || !mpz_perfect_square_p(mpq_denref(v_)))
            throw DomainError("sqrt of non-square rational in exact mode");
        mpz_sqrt(mpq_numref(r.v_), mpq_numref(v_));
        mpz_sqrt(mpq_denref(r.v_), mpq_denref(v_));
        mpq_canonicalize(r.v_);
        return r;
    }

    Real to_real(Precision p = 0) const {
        Real r(p ? p : default_precision());
        mpfr_set_q(r.raw(), v_, MPFR_RNDN);
        return r;
    }

    std::string str() const {
        char* s = mpq_get_str(nullptr, 10, v_);
        std::string out(s);
        void (*freefn)(void*, size_t);
        mp_get_memory_functions(nullptr, nullptr, &freefn);
        freefn(s, out.size() + 1);
        return out;
    }

private:
    mpq_t v_;
};

}  // namespace heunlab
