#pragma once
/* Dense univariate polynomials over a field K.  K must be default-constructible
   to zero, constructible from int, and provide +,-,*,/,==.  Used at two levels:
   K = GaussianRational for the tau-coefficient field, and K = RationalFunction
   for main-variable views of multivariate polynomials. */

#include <utility>
#include <vector>

#include "polaris/error.hpp"

namespace polaris {

template <typename K>
struct UPoly {
    /* c[i] is the coefficient of x^i; either empty (zero) or c.back() != 0. */
    std::vector<K> c;

    UPoly() = default;
    UPoly(const K& k) {
        if (!(k == K())) c.push_back(k);
    }
    UPoly(int n) : UPoly(K(n)) {}
    static UPoly from_coeffs(std::vector<K> v) {
        UPoly p;
        p.c = std::move(v);
        p.trim();
        return p;
    }
    static UPoly monomial(const K& k, int deg) {
        UPoly p;
        if (k == K()) return p;
        p.c.assign(deg + 1, K());
        p.c[deg] = k;
        return p;
    }

    void trim() {
        while (!c.empty() && c.back() == K()) c.pop_back();
    }
    bool is_zero() const { return c.empty(); }
    int deg() const { return (int)c.size() - 1; } /* zero polynomial: -1 */
    const K& lead() const { return c.back(); }
    K coeff(int i) const { return (i >= 0 && i < (int)c.size()) ? c[i] : K(); }
    bool is_one() const { return deg() == 0 && c[0] == K(1); }
    bool is_constant() const { return deg() <= 0; }

    UPoly operator-() const {
        UPoly r = *this;
        for (auto& k : r.c) k = K() - k;
        return r;
    }
    UPoly operator+(const UPoly& o) const {
        UPoly r;
        r.c.resize(std::max(c.size(), o.c.size()), K());
        for (size_t i = 0; i < r.c.size(); ++i) r.c[i] = coeff((int)i) + o.coeff((int)i);
        r.trim();
        return r;
    }
    UPoly operator-(const UPoly& o) const { return *this + (-o); }
    UPoly operator*(const UPoly& o) const {
        if (is_zero() || o.is_zero()) return {};
        UPoly r;
        r.c.assign(c.size() + o.c.size() - 1, K());
        for (size_t i = 0; i < c.size(); ++i)
            for (size_t j = 0; j < o.c.size(); ++j) r.c[i + j] = r.c[i + j] + c[i] * o.c[j];
        r.trim();
        return r;
    }
    UPoly scaled(const K& k) const {
        UPoly r = *this;
        for (auto& x : r.c) x = x * k;
        r.trim();
        return r;
    }
    bool operator==(const UPoly& o) const { return c == o.c; }
    bool operator!=(const UPoly& o) const { return !(*this == o); }

    /* Euclidean division; divisor must be nonzero. */
    static void divrem(const UPoly& a, const UPoly& b, UPoly& q, UPoly& r) {
        if (b.is_zero()) fail("DivisionByZero", "polynomial division by zero");
        q = UPoly();
        r = a;
        if (a.deg() < b.deg()) return;
        q.c.assign(a.deg() - b.deg() + 1, K());
        while (!r.is_zero() && r.deg() >= b.deg()) {
            K f = r.lead() / b.lead();
            int d = r.deg() - b.deg();
            q.c[d] = q.c[d] + f;
            /* r -= f * x^d * b */
            for (int i = 0; i <= b.deg(); ++i) r.c[i + d] = r.c[i + d] - f * b.c[i];
            r.trim();
        }
        q.trim();
    }
    UPoly operator%(const UPoly& o) const {
        UPoly q, r;
        divrem(*this, o, q, r);
        return r;
    }
    UPoly operator/(const UPoly& o) const {
        UPoly q, r;
        divrem(*this, o, q, r);
        return q;
    }

    UPoly monic() const {
        if (is_zero()) return *this;
        return scaled(K(1) / lead());
    }

    UPoly derivative() const {
        UPoly r;
        if (deg() < 1) return r;
        r.c.resize(c.size() - 1);
        for (int i = 1; i <= deg(); ++i) r.c[i - 1] = c[i] * K(i);
        r.trim();
        return r;
    }

    K eval(const K& x) const {
        K acc = K();
        for (int i = deg(); i >= 0; --i) acc = acc * x + c[i];
        return acc;
    }

    static UPoly gcd(UPoly a, UPoly b) {
        while (!b.is_zero()) {
            UPoly r = a % b;
            a = std::move(b);
            b = std::move(r);
        }
        return a.monic();
    }

    /* g = gcd(a,b) monic, with s*a + t*b = g. */
    static UPoly ext_gcd(const UPoly& a, const UPoly& b, UPoly& s, UPoly& t) {
        UPoly r0 = a, r1 = b;
        UPoly s0 = UPoly(1), s1, t0, t1 = UPoly(1);
        while (!r1.is_zero()) {
            UPoly q, r;
            divrem(r0, r1, q, r);
            UPoly s2 = s0 - q * s1, t2 = t0 - q * t1;
            r0 = std::move(r1); r1 = std::move(r);
            s0 = std::move(s1); s1 = std::move(s2);
            t0 = std::move(t1); t1 = std::move(t2);
        }
        if (r0.is_zero()) { s = UPoly(); t = UPoly(); return r0; }
        K u = K(1) / r0.lead();
        s = s0.scaled(u);
        t = t0.scaled(u);
        return r0.scaled(u);
    }

    /* Inverse of a modulo monic m, if gcd(a, m) = 1. */
    static UPoly inverse_mod(const UPoly& a, const UPoly& m, bool* ok = nullptr) {
        UPoly s, t;
        UPoly g = ext_gcd(a % m, m, s, t);
        if (!g.is_one()) {
            if (ok) { *ok = false; return {}; }
            fail("NonInvertibleDenominator", "element not invertible modulo the given polynomial");
        }
        if (ok) *ok = true;
        return s % m;
    }

    /* Resultant via the Euclidean remainder sequence (field coefficients). */
    static K resultant(UPoly a, UPoly b) {
        if (a.is_zero() || b.is_zero()) return K();
        K acc = K(1);
        bool neg = false;
        while (b.deg() > 0) {
            UPoly r = a % b;
            if (r.is_zero()) return K();
            /* res(a,b) = (-1)^{da*db} lc(b)^{da - dr} res(b, r) */
            if ((a.deg() & 1) && (b.deg() & 1)) neg = !neg;
            K lc = b.lead();
            int e = a.deg() - r.deg();
            for (int i = 0; i < e; ++i) acc = acc * lc;
            a = std::move(b);
            b = std::move(r);
        }
        /* b constant nonzero: res = b^{deg a} */
        K base = b.c[0];
        for (int i = 0; i < a.deg(); ++i) acc = acc * base;
        return neg ? K() - acc : acc;
    }
};

} // namespace polaris
