#pragma once

// Exact rational arithmetic for golden-level tests. The barrier levels are
// ratios of the (rational) figure parameters, so they can be checked without
// any floating-point slack. Test-only; the runtime API stays double.

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace testutil {

struct Rat {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rat() = default;
    Rat(std::int64_t n) : num(n), den(1) {} // NOLINT: implicit by design
    Rat(std::int64_t n, std::int64_t d) : num(n), den(d) { normalize(); }

    void normalize() {
        if (den == 0) throw std::runtime_error("rational with zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
    }

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }

    friend Rat operator+(Rat a, Rat b) { return {a.num * b.den + b.num * a.den, a.den * b.den}; }
    friend Rat operator-(Rat a, Rat b) { return {a.num * b.den - b.num * a.den, a.den * b.den}; }
    friend Rat operator*(Rat a, Rat b) { return {a.num * b.num, a.den * b.den}; }
    friend Rat operator/(Rat a, Rat b) { return {a.num * b.den, a.den * b.num}; }
    friend bool operator==(Rat a, Rat b) { return a.num == b.num && a.den == b.den; }
    friend bool operator!=(Rat a, Rat b) { return !(a == b); }
    friend bool operator<(Rat a, Rat b) { return a.num * b.den < b.num * a.den; }
    friend bool operator<=(Rat a, Rat b) { return a.num * b.den <= b.num * a.den; }
    friend bool operator>(Rat a, Rat b) { return b < a; }
    friend bool operator>=(Rat a, Rat b) { return b <= a; }
};

inline Rat rmin(Rat a, Rat b) { return a <= b ? a : b; }
inline Rat rmax(Rat a, Rat b) { return a >= b ? a : b; }

struct RatTriple {
    Rat lambda1, lambda2, eta;
};

// Independent rational reimplementation of the lower-barrier level table,
// used as the oracle for the double API.
inline RatTriple lower_levels(Rat a1, Rat a2, Rat alpha, Rat beta, Rat d) {
    const Rat one{1};
    if (d >= one) {
        if (beta * a2 * d >= alpha * a1) {
            return {alpha / (a2 * d), alpha / a2, alpha / (a2 * d)};
        }
        return {beta / a1, beta * d / a1, beta / a1};
    }
    if (beta * a2 * d >= alpha * a1) {
        return {alpha * d / a2, alpha / a2, alpha / a2};
    }
    return {beta * d * d / a1, beta * d / a1, beta * d / a1};
}

// Same for the upper-barrier table.
inline RatTriple upper_levels(Rat alpha, Rat beta, Rat d) {
    const Rat one{1};
    if (d >= one) {
        if (beta * d >= alpha) {
            return {beta * d * d, beta * d, beta * d};
        }
        return {alpha * d, alpha, alpha};
    }
    if (beta * d >= alpha) {
        return {beta, beta * d, beta};
    }
    return {alpha / d, alpha, alpha / d};
}

} // namespace testutil
