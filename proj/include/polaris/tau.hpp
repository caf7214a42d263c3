#pragma once
/* Scalars of the coefficient field Q(i)(tau), where tau is a formal symbol
   standing for 2*pi*i.  Canonical form: numerator/denominator coprime
   polynomials in tau over Q(i), denominator monic; zero is 0/1.
   tau is rendered as "2πi". */

#include <string>

#include "polaris/rational.hpp"
#include "polaris/upoly.hpp"

namespace polaris {

using TauPoly = UPoly<GaussianRational>;

struct TauScalar {
    TauPoly num, den;

    TauScalar() : num(), den(1) {}
    TauScalar(int n) : num(GaussianRational(n)), den(1) {}
    TauScalar(long n) : num(GaussianRational(n)), den(1) {}
    TauScalar(const Rational& r) : num(GaussianRational(r)), den(1) {}
    TauScalar(const GaussianRational& g) : num(g), den(1) {}
    TauScalar(TauPoly n, TauPoly d) : num(std::move(n)), den(std::move(d)) { canonicalize(); }

    static TauScalar tau(int k = 1) {
        TauScalar t;
        if (k >= 0) {
            t.num = TauPoly::monomial(GaussianRational(1), k);
            t.den = TauPoly(1);
        } else {
            t.num = TauPoly(1);
            t.den = TauPoly::monomial(GaussianRational(1), -k);
        }
        return t;
    }

    void canonicalize() {
        if (den.is_zero()) fail("DivisionByZero", "tau-scalar with zero denominator");
        if (num.is_zero()) {
            den = TauPoly(1);
            return;
        }
        if (den.is_one()) return;
        if (den.deg() == 0) {
            GaussianRational u = den.lead().inv();
            num = num.scaled(u);
            den = TauPoly(1);
            return;
        }
        TauPoly g = TauPoly::gcd(num, den);
        if (!g.is_one()) {
            num = num / g;
            den = den / g;
        }
        GaussianRational u = den.lead().inv();
        num = num.scaled(u);
        den = den.scaled(u);
    }

    bool is_zero() const { return num.is_zero(); }
    bool is_one() const { return den.is_one() && num.is_one(); }
    bool is_rational_constant() const { return den.is_one() && num.deg() <= 0; }

    TauScalar operator-() const {
        TauScalar r = *this;
        r.num = -r.num;
        return r;
    }
    // integral operands (den == 1) stay integral under +,-,*: skip the gcd entirely
    TauScalar operator+(const TauScalar& o) const {
        if (den.is_one() && o.den.is_one()) {
            TauScalar r;
            r.num = num + o.num;
            return r;
        }
        return TauScalar(num * o.den + o.num * den, den * o.den);
    }
    TauScalar operator-(const TauScalar& o) const {
        if (den.is_one() && o.den.is_one()) {
            TauScalar r;
            r.num = num - o.num;
            return r;
        }
        return TauScalar(num * o.den - o.num * den, den * o.den);
    }
    TauScalar operator*(const TauScalar& o) const {
        if (den.is_one() && o.den.is_one()) {
            TauScalar r;
            r.num = num * o.num;
            return r;
        }
        return TauScalar(num * o.num, den * o.den);
    }
    TauScalar inv() const {
        if (is_zero()) fail("DivisionByZero", "inverse of zero scalar");
        return TauScalar(den, num);
    }
    TauScalar operator/(const TauScalar& o) const {
        if (o.is_zero()) fail("DivisionByZero", "division by zero scalar");
        if (den.is_one() && o.den.is_one() && o.num.deg() == 0) {
            TauScalar r;
            r.num = num.scaled(o.num.lead().inv());
            return r;
        }
        return TauScalar(num * o.den, den * o.num);
    }
    TauScalar& operator+=(const TauScalar& o) { return *this = *this + o; }
    TauScalar& operator-=(const TauScalar& o) { return *this = *this - o; }
    TauScalar& operator*=(const TauScalar& o) { return *this = *this * o; }
    TauScalar& operator/=(const TauScalar& o) { return *this = *this / o; }

    bool operator==(const TauScalar& o) const { return num == o.num && den == o.den; }
    bool operator!=(const TauScalar& o) const { return !(*this == o); }

    /* Display-only sign extraction: true if the leading numerator coefficient
       looks negative. */
    bool negative_looking() const { return !num.is_zero() && num.lead().negative_looking(); }

    std::string str() const;
    /* String with parentheses whenever embedding before '*' would be ambiguous. */
    std::string str_factor() const;
};

std::string tau_poly_str(const TauPoly& p);

/* a rendered expression is unsafe as a bare factor in a product when it has a
   top-level additive break (space, or a sign past the first character) */
bool str_needs_product_parens(const std::string& s);

} // namespace polaris
