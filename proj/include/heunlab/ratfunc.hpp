#pragma once

#include <vector>

#include "rational.hpp"

namespace heunlab::ratfn {

/// Dense polynomial over Q, ascending coefficients.
using Poly = std::vector<Rat>;

inline Poly operator+(const Poly& a, const Poly& b) {
    Poly r(a.size() > b.size() ? a : b);
    const Poly& s = a.size() > b.size() ? b : a;
    for (size_t i = 0; i < s.size(); ++i) r[i] = r[i] + s[i];
    return r;
}

inline Poly operator-(const Poly& a) {
    Poly r(a);
    for (auto& c : r) c = -c;
    return r;
}

inline Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

inline Poly operator*(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, Rat(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = r[i + j] + a[i] * b[j];
    return r;
}

inline bool is_zero(const Poly& a) {
    for (const auto& c : a)
        if (!c.is_zero()) return false;
    return true;
}

/// Rational function num/den over Q.
struct RatFrac {
    Poly num;
    Poly den{Rat(1)};

    RatFrac() = default;
    RatFrac(Poly n, Poly d) : num(std::move(n)), den(std::move(d)) {}
    RatFrac(const Rat& c) : num{c} {}

    friend RatFrac operator+(const RatFrac& a, const RatFrac& b) {
        return {a.num * b.den + b.num * a.den, a.den * b.den};
    }
    friend RatFrac operator-(const RatFrac& a, const RatFrac& b) {
        return {a.num * b.den - b.num * a.den, a.den * b.den};
    }
    friend RatFrac operator*(const RatFrac& a, const RatFrac& b) {
        return {a.num * b.num, a.den * b.den};
    }
    friend RatFrac operator/(const RatFrac& a, const RatFrac& b) {
        return {a.num * b.den, a.den * b.num};
    }
    /// Equality as rational functions: cross-multiplied exact comparison.
    friend bool operator==(const RatFrac& a, const RatFrac& b) {
        return is_zero(a.num * b.den - b.num * a.den);
    }
};

inline RatFrac rf_const(const Rat& c) { return RatFrac(c); }
inline RatFrac rf_z() { return {Poly{Rat(0), Rat(1)}, Poly{Rat(1)}}; }
inline RatFrac rf_pole(const Rat& residue, const Rat& loc) {
    // residue / (z - loc)
    return {Poly{residue}, Poly{-loc, Rat(1)}};
}

}  // namespace heunlab::ratfn
