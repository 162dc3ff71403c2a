#pragma once

#include <doctest.h>

#include <heunlab/real.hpp>

namespace hl = heunlab;

/// |a-b| <= tol * max(|a|,|b|,1); doctest-friendly with value dumps.
inline void check_close(const hl::Real& a, const hl::Real& b, const hl::Real& tol) {
    hl::Real scale = hl::max(hl::max(hl::abs(a), hl::abs(b)), hl::Real(1));
    hl::Real err = hl::abs(a - b);
    bool ok = err <= tol * scale;
    if (!ok) {
        INFO("a   = " << a.str(30));
        INFO("b   = " << b.str(30));
        INFO("err = " << err.str(8));
        INFO("tol = " << tol.str(8));
        CHECK(ok);
    } else {
        CHECK(ok);
    }
}

inline void check_rel(const hl::Real& a, const hl::Real& b, const hl::Real& tol) {
    hl::Real err = hl::abs(a - b);
    bool ok = err <= tol * hl::abs(b);
    if (!ok) {
        INFO("a   = " << a.str(30));
        INFO("b   = " << b.str(30));
        INFO("rel = " << (err / hl::abs(b)).str(8));
        CHECK(ok);
    } else {
        CHECK(ok);
    }
}

inline hl::Real tol_bits(long k) { return hl::pow2(-k); }
