#pragma once
/* Rational functions: pairs of multivariate polynomials kept in lowest terms.
   Canonical form: gcd(num, den) = 1 and the leading coefficient of den is 1.
   Multivariate gcd = content extraction + Euclid in a main variable over the
   fraction field of the rest; exact at every step. */

#include "polaris/poly.hpp"
#include "polaris/upoly.hpp"

namespace polaris {

/* gcd with leading coefficient 1; gcd(0,0) = 0 */
MultiPoly mp_gcd(const MultiPoly& a, const MultiPoly& b);
/* exact division; fails with InternalError if d does not divide a */
MultiPoly mp_exact_div(const MultiPoly& a, const MultiPoly& d);
/* quotient if d divides a exactly */
bool mp_try_div(const MultiPoly& a, const MultiPoly& d, MultiPoly* q);

struct RationalFunction {
    MultiPoly num, den;

    RationalFunction() : num(), den(1) {}
    RationalFunction(int n) : num(n), den(1) {}
    RationalFunction(const TauScalar& s) : num(s), den(1) {}
    RationalFunction(const MultiPoly& p) : num(p), den(1) {}
    RationalFunction(MultiPoly n, MultiPoly d) : num(std::move(n)), den(std::move(d)) {
        canonicalize();
    }
    static RationalFunction var(const std::string& name) {
        return RationalFunction(MultiPoly::var(name));
    }

    void canonicalize();

    bool is_zero() const { return num.is_zero(); }
    bool is_one() const { return den == MultiPoly(1) && num == MultiPoly(1); }
    bool is_poly() const { return den == MultiPoly(1); }
    bool is_constant() const { return num.is_constant() && den.is_constant(); }
    TauScalar constant_value() const {
        return num.constant_value() / den.constant_value();
    }

    RationalFunction operator-() const {
        RationalFunction r = *this;
        r.num = -r.num;
        return r;
    }
    RationalFunction operator+(const RationalFunction& o) const {
        if (den == o.den) return RationalFunction(num + o.num, den);
        return RationalFunction(num * o.den + o.num * den, den * o.den);
    }
    RationalFunction operator-(const RationalFunction& o) const {
        if (den == o.den) return RationalFunction(num - o.num, den);
        return RationalFunction(num * o.den - o.num * den, den * o.den);
    }
    RationalFunction operator*(const RationalFunction& o) const {
        return RationalFunction(num * o.num, den * o.den);
    }
    RationalFunction inv() const {
        if (is_zero()) fail("DivisionByZero", "inverse of zero rational function");
        return RationalFunction(den, num);
    }
    RationalFunction operator/(const RationalFunction& o) const {
        if (o.is_zero()) fail("DivisionByZero", "division by zero rational function");
        return RationalFunction(num * o.den, den * o.num);
    }
    RationalFunction& operator+=(const RationalFunction& o) { return *this = *this + o; }
    RationalFunction& operator-=(const RationalFunction& o) { return *this = *this - o; }
    RationalFunction& operator*=(const RationalFunction& o) { return *this = *this * o; }
    RationalFunction& operator/=(const RationalFunction& o) { return *this = *this / o; }

    bool operator==(const RationalFunction& o) const { return num == o.num && den == o.den; }
    bool operator!=(const RationalFunction& o) const { return !(*this == o); }

    RationalFunction derivative(const std::string& v) const {
        /* (n/d)' = (n'd - nd')/d^2 */
        return RationalFunction(num.derivative(v) * den - num * den.derivative(v), den * den);
    }

    std::set<std::string> vars() const {
        auto s = num.vars();
        for (auto& v : den.vars()) s.insert(v);
        return s;
    }
    bool contains_var(const std::string& v) const {
        return num.contains_var(v) || den.contains_var(v);
    }

    /* full evaluation; PoleAtPoint if the denominator vanishes */
    TauScalar eval(const std::map<std::string, GaussianRational>& at) const {
        TauScalar d = den.eval(at);
        if (d.is_zero()) fail("PoleAtPoint", "denominator vanishes at evaluation point");
        return num.eval(at) / d;
    }

    bool negative_looking() const { return !num.is_zero() && num.lead_coeff().negative_looking(); }

    std::string str() const;
};

RationalFunction pow_rf(const RationalFunction& b, int e);

/* simultaneous substitution; variables absent from sub are left alone */
RationalFunction substitute(const MultiPoly& p,
                            const std::map<std::string, RationalFunction>& sub);
RationalFunction substitute(const RationalFunction& f,
                            const std::map<std::string, RationalFunction>& sub);

/* main-variable views: coefficients are rational functions in the remaining variables */
UPoly<RationalFunction> to_upoly(const MultiPoly& p, const std::string& v);
UPoly<RationalFunction> to_upoly(const RationalFunction& f, const std::string& v);
/* clears coefficient denominators and removes the content; nullptr-safe helpers */
MultiPoly from_upoly_cleared(const UPoly<RationalFunction>& u, const std::string& v);
/* requires every coefficient to be polynomial */
MultiPoly from_upoly(const UPoly<RationalFunction>& u, const std::string& v);

} // namespace polaris
