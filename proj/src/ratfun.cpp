#include "polaris/ratfun.hpp"

namespace polaris {

UPoly<RationalFunction> to_upoly(const MultiPoly& p, const std::string& v) {
    std::vector<RationalFunction> cs;
    for (auto& c : p.coeffs_in(v)) cs.emplace_back(c);
    return UPoly<RationalFunction>::from_coeffs(std::move(cs));
}

UPoly<RationalFunction> to_upoly(const RationalFunction& f, const std::string& v) {
    if (f.den.contains_var(v))
        fail("InternalError", "denominator depends on the main variable " + v);
    auto u = to_upoly(f.num, v);
    RationalFunction d = RationalFunction(1) / RationalFunction(f.den);
    return u.scaled(d);
}

MultiPoly from_upoly(const UPoly<RationalFunction>& u, const std::string& v) {
    std::vector<MultiPoly> cs;
    for (auto& c : u.c) {
        if (!c.is_poly()) fail("InternalError", "expected polynomial coefficient");
        cs.push_back(c.num);
    }
    return MultiPoly::from_coeffs_in(v, cs);
}

MultiPoly from_upoly_cleared(const UPoly<RationalFunction>& u, const std::string& v) {
    /* multiply through by the product of denominators, then strip the content */
    MultiPoly d(1);
    for (auto& c : u.c)
        if (!c.is_poly()) d = mp_exact_div(d * c.den, mp_gcd(d, c.den));
    std::vector<MultiPoly> cs;
    for (auto& c : u.c) {
        RationalFunction lifted = c * RationalFunction(d);
        if (!lifted.is_poly()) fail("InternalError", "denominator clearing failed");
        cs.push_back(lifted.num);
    }
    MultiPoly p = MultiPoly::from_coeffs_in(v, cs);
    MultiPoly cont;
    for (auto& c : cs) cont = mp_gcd(cont, c);
    if (!cont.is_zero() && cont != MultiPoly(1)) p = mp_exact_div(p, cont);
    return p.unit_normalized();
}

bool mp_try_div(const MultiPoly& a, const MultiPoly& d, MultiPoly* q) {
    if (d.is_zero()) return false;
    if (a.is_zero()) {
        if (q) *q = MultiPoly();
        return true;
    }
    if (d.is_constant()) {
        if (q) *q = a.scaled(d.constant_value().inv());
        return true;
    }
    std::string v = *d.vars().begin();
    UPoly<RationalFunction> ua = to_upoly(a, v), ud = to_upoly(d, v), uq, ur;
    UPoly<RationalFunction>::divrem(ua, ud, uq, ur);
    if (!ur.is_zero()) return false;
    for (auto& c : uq.c)
        if (!c.is_poly()) return false;
    if (q) *q = from_upoly(uq, v);
    return true;
}

MultiPoly mp_exact_div(const MultiPoly& a, const MultiPoly& d) {
    MultiPoly q;
    if (!mp_try_div(a, d, &q)) fail("InternalError", "inexact polynomial division");
    return q;
}

namespace {

/* gcd of the v-coefficients (polynomials without v) */
MultiPoly content_in(const MultiPoly& p, const std::string& v) {
    MultiPoly c;
    for (auto& part : p.coeffs_in(v)) c = mp_gcd(c, part);
    return c;
}

/* v-coefficient vectors: Euclid over the fraction field of the remaining
   variables swells catastrophically (every step re-canonicalizes through
   nested gcds), so the gcd core runs a subresultant pseudo-remainder
   sequence with purely polynomial coefficients instead */
using CoeffVec = std::vector<MultiPoly>;

int cv_deg(const CoeffVec& A) { return (int)A.size() - 1; }

void cv_trim(CoeffVec& A) {
    while (!A.empty() && A.back().is_zero()) A.pop_back();
}

/* lead(B)^(deg A - deg B + 1) * A reduced mod B; exact in the ring */
CoeffVec pseudo_rem(CoeffVec A, const CoeffVec& B) {
    int db = cv_deg(B);
    const MultiPoly& lb = B.back();
    int e = cv_deg(A) - db + 1;
    while (true) {
        cv_trim(A);
        int da = cv_deg(A);
        if (da < db) break;
        MultiPoly la = A.back();
        for (auto& c : A) c = c * lb;
        for (int i = 0; i <= db; ++i) {
            size_t k = (size_t)(da - db + i);
            A[k] = A[k] - la * B[(size_t)i];
        }
        --e;
    }
    if (e > 0 && !A.empty()) {
        MultiPoly scale(1);
        for (int i = 0; i < e; ++i) scale = scale * lb;
        for (auto& c : A) c = c * scale;
    }
    return A;
}

CoeffVec cv_exact_div(CoeffVec A, const MultiPoly& d) {
    for (auto& c : A)
        if (!c.is_zero()) c = mp_exact_div(c, d);
    return A;
}

/* subresultant PRS; inputs primitive in v with positive degree.  Returns the
   gcd up to content and unit. */
CoeffVec subresultant_gcd(CoeffVec A, CoeffVec B) {
    cv_trim(A);
    cv_trim(B);
    if (cv_deg(A) < cv_deg(B)) std::swap(A, B);
    MultiPoly g(1), h(1);
    while (true) {
        int delta = cv_deg(A) - cv_deg(B);
        CoeffVec R = pseudo_rem(A, B);
        cv_trim(R);
        if (R.empty()) break;
        if (cv_deg(R) == 0) return CoeffVec{MultiPoly(1)};
        A = std::move(B);
        MultiPoly divisor = g;
        for (int i = 0; i < delta; ++i) divisor = divisor * h;
        B = cv_exact_div(std::move(R), divisor);
        g = A.back();
        if (delta > 0) {
            MultiPoly num(1);
            for (int i = 0; i < delta; ++i) num = num * g;
            MultiPoly den(1);
            for (int i = 0; i + 1 < delta; ++i) den = den * h;
            h = mp_exact_div(num, den);
        }
    }
    return B;
}

/* univariate with tau-free constant coefficients: admits the plain field Euclid */
bool gaussian_upoly(const MultiPoly& p, const std::string& v, TauPoly& out) {
    std::vector<GaussianRational> g;
    for (auto& part : p.coeffs_in(v)) {
        if (!part.is_constant()) return false;
        TauScalar s = part.constant_value();
        if (!s.is_rational_constant()) return false;
        g.push_back(s.is_zero() ? GaussianRational() : s.num.lead());
    }
    out = TauPoly::from_coeffs(std::move(g));
    return true;
}

} // namespace

MultiPoly mp_gcd(const MultiPoly& a, const MultiPoly& b) {
    if (a.is_zero()) return b.is_zero() ? b : b.unit_normalized();
    if (b.is_zero()) return a.unit_normalized();
    if (a.is_constant() || b.is_constant()) return MultiPoly(1);
    auto va = a.vars(), vb = b.vars();
    std::string v;
    for (auto& name : va)
        if (vb.count(name)) {
            v = name;
            break;
        }
    if (v.empty()) return MultiPoly(1); /* no common variable */
    if (va.size() == 1 && vb.size() == 1) {
        TauPoly ua, ub;
        if (gaussian_upoly(a, v, ua) && gaussian_upoly(b, v, ub)) {
            TauPoly g = TauPoly::gcd(ua, ub);
            std::vector<MultiPoly> cs;
            cs.reserve(g.c.size());
            for (auto& k : g.c) cs.emplace_back(TauScalar(k));
            return MultiPoly::from_coeffs_in(v, cs).unit_normalized();
        }
    }
    MultiPoly ca = content_in(a, v), cb = content_in(b, v);
    MultiPoly c = mp_gcd(ca, cb);
    MultiPoly pa = mp_exact_div(a, ca), pb = mp_exact_div(b, cb);
    CoeffVec gv = subresultant_gcd(pa.coeffs_in(v), pb.coeffs_in(v));
    if (cv_deg(gv) < 1) return c.unit_normalized();
    MultiPoly cont;
    for (auto& part : gv) cont = mp_gcd(cont, part);
    CoeffVec pp;
    pp.reserve(gv.size());
    for (auto& part : gv)
        pp.push_back(part.is_zero() ? part : mp_exact_div(part, cont));
    MultiPoly gp = MultiPoly::from_coeffs_in(v, pp);
    return (c * gp).unit_normalized();
}

void RationalFunction::canonicalize() {
    if (den.is_zero()) fail("DivisionByZero", "rational function with zero denominator");
    if (num.is_zero()) {
        den = MultiPoly(1);
        return;
    }
    if (den.is_constant()) {
        TauScalar d = den.constant_value();
        if (!d.is_one()) {
            num = num.scaled(d.inv());
            den = MultiPoly(1);
        }
        return;
    }
    MultiPoly g = mp_gcd(num, den);
    if (!g.is_constant()) {
        num = mp_exact_div(num, g);
        den = mp_exact_div(den, g);
    }
    TauScalar u = den.lead_coeff().inv();
    if (u.is_one()) return;
    num = num.scaled(u);
    den = den.scaled(u);
}

std::string RationalFunction::str() const {
    if (is_poly()) return num.str();
    std::string n = num.str();
    if (num.t.size() > 1 || str_needs_product_parens(n)) n = "(" + n + ")";
    std::string d = den.str();
    bool bare_var = den.t.size() == 1 && den.t.begin()->second.is_one() &&
                    den.t.begin()->first.size() == 1 &&
                    den.t.begin()->first.begin()->second == 1;
    if (!bare_var) d = "(" + d + ")";
    return n + "/" + d;
}

RationalFunction pow_rf(const RationalFunction& b, int e) {
    if (e == 0) return RationalFunction(1);
    RationalFunction base = e < 0 ? b.inv() : b;
    int n = e < 0 ? -e : e;
    RationalFunction acc(1);
    for (int i = 0; i < n; ++i) acc *= base;
    return acc;
}

RationalFunction substitute(const MultiPoly& p,
                            const std::map<std::string, RationalFunction>& sub) {
    RationalFunction acc;
    for (auto& [m, c] : p.t) {
        RationalFunction term{TauScalar(c)};
        for (auto& [v, e] : m) {
            auto it = sub.find(v);
            RationalFunction base = it != sub.end() ? it->second : RationalFunction::var(v);
            term *= pow_rf(base, e);
        }
        acc += term;
    }
    return acc;
}

RationalFunction substitute(const RationalFunction& f,
                            const std::map<std::string, RationalFunction>& sub) {
    RationalFunction d = substitute(f.den, sub);
    if (d.is_zero()) fail("SingularSubstitution", "substitution sends the denominator to zero");
    return substitute(f.num, sub) / d;
}

} // namespace polaris
