#pragma once
/* Exact scalar layer: arbitrary-precision rationals (GMP-backed) and Q(i).
   Invariants: rationals are always reduced with positive denominator
   (mpq_class keeps them canonical); GaussianRational compares structurally. */

#include <gmpxx.h>

#include <optional>
#include <string>

#include "polaris/error.hpp"

namespace polaris {

using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
    if (den == 0) fail("DivisionByZero", "rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

std::string rat_str(const Rational& r);

/* Exact square root in Q, when it exists. */
std::optional<Rational> sqrt_rational(const Rational& r);

struct GaussianRational {
    Rational re, im;

    GaussianRational() : re(0), im(0) {}
    GaussianRational(int n) : re(n), im(0) {}
    GaussianRational(long n) : re(n), im(0) {}
    GaussianRational(const Rational& r) : re(r), im(0) {}
    GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    static GaussianRational unit_i() { return GaussianRational(Rational(0), Rational(1)); }

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }
    bool is_one() const { return re == 1 && im == 0; }

    /* |z|^2, exact. */
    Rational norm2() const { return re * re + im * im; }

    GaussianRational operator-() const { return {-re, -im}; }
    GaussianRational operator+(const GaussianRational& o) const { return {re + o.re, im + o.im}; }
    GaussianRational operator-(const GaussianRational& o) const { return {re - o.re, im - o.im}; }
    GaussianRational operator*(const GaussianRational& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    GaussianRational inv() const {
        if (is_zero()) fail("DivisionByZero", "inverse of zero in Q(i)");
        Rational n = norm2();
        return {re / n, -im / n};
    }
    GaussianRational operator/(const GaussianRational& o) const { return *this * o.inv(); }

    GaussianRational& operator+=(const GaussianRational& o) { return *this = *this + o; }
    GaussianRational& operator-=(const GaussianRational& o) { return *this = *this - o; }
    GaussianRational& operator*=(const GaussianRational& o) { return *this = *this * o; }
    GaussianRational& operator/=(const GaussianRational& o) { return *this = *this / o; }

    bool operator==(const GaussianRational& o) const { return re == o.re && im == o.im; }
    bool operator!=(const GaussianRational& o) const { return !(*this == o); }

    /* Deterministic total order (re, then im); used only for canonical sorting. */
    bool operator<(const GaussianRational& o) const {
        int c = cmp(re, o.re);
        if (c != 0) return c < 0;
        return cmp(im, o.im) < 0;
    }

    /* Heuristic used only for display sign extraction. */
    bool negative_looking() const {
        if (re != 0) return re < 0;
        return im < 0;
    }

    std::string str() const;
};

/* Exact square root in Q(i), when it exists. */
std::optional<GaussianRational> sqrt_exact(const GaussianRational& z);

} // namespace polaris
