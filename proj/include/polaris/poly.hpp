#pragma once
/* Multivariate polynomials over Q(i)(tau).  Terms are held in a map keyed by
   monomial in graded-lex order (leading term first); variables are compared by
   name, one global order.  No zero coefficients are stored. */

#include <map>
#include <set>
#include <string>
#include <vector>

#include "polaris/tau.hpp"

namespace polaris {

/* exponent map, all exponents > 0 */
using Monomial = std::map<std::string, int>;

int mono_total_deg(const Monomial& m);
/* +1 if a > b in graded-lex (degree first, then earlier-name precedence). */
int mono_cmp(const Monomial& a, const Monomial& b);
std::string mono_str(const Monomial& m);

struct MonoGt {
    bool operator()(const Monomial& a, const Monomial& b) const { return mono_cmp(a, b) > 0; }
};

struct MultiPoly {
    std::map<Monomial, TauScalar, MonoGt> t;

    MultiPoly() = default;
    MultiPoly(int n) : MultiPoly(TauScalar(n)) {}
    MultiPoly(const TauScalar& s) {
        if (!s.is_zero()) t[{}] = s;
    }
    static MultiPoly var(const std::string& name, int exp = 1) {
        MultiPoly p;
        if (exp == 0) return MultiPoly(1);
        p.t[{{name, exp}}] = TauScalar(1);
        return p;
    }

    bool is_zero() const { return t.empty(); }
    bool is_constant() const { return t.empty() || (t.size() == 1 && t.begin()->first.empty()); }
    TauScalar constant_value() const {
        if (t.empty()) return TauScalar(0);
        auto it = t.find({});
        return it == t.end() ? TauScalar(0) : it->second;
    }
    /* leading (graded-lex greatest) coefficient */
    const TauScalar& lead_coeff() const { return t.begin()->second; }

    void add_term(const Monomial& m, const TauScalar& c) {
        if (c.is_zero()) return;
        auto it = t.find(m);
        if (it == t.end()) {
            t.emplace(m, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) t.erase(it);
        }
    }

    MultiPoly operator-() const {
        MultiPoly r = *this;
        for (auto& [m, c] : r.t) c = -c;
        return r;
    }
    MultiPoly operator+(const MultiPoly& o) const {
        MultiPoly r = *this;
        for (auto& [m, c] : o.t) r.add_term(m, c);
        return r;
    }
    MultiPoly operator-(const MultiPoly& o) const {
        MultiPoly r = *this;
        for (auto& [m, c] : o.t) r.add_term(m, -c);
        return r;
    }
    MultiPoly operator*(const MultiPoly& o) const {
        MultiPoly r;
        for (auto& [ma, ca] : t)
            for (auto& [mb, cb] : o.t) {
                Monomial m = ma;
                for (auto& [v, e] : mb) m[v] += e;
                r.add_term(m, ca * cb);
            }
        return r;
    }
    MultiPoly scaled(const TauScalar& s) const {
        if (s.is_zero()) return {};
        if (s.is_one()) return *this;
        MultiPoly r = *this;
        for (auto& [m, c] : r.t) c *= s;
        return r;
    }
    MultiPoly& operator+=(const MultiPoly& o) { return *this = *this + o; }
    MultiPoly& operator-=(const MultiPoly& o) { return *this = *this - o; }
    MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }

    bool operator==(const MultiPoly& o) const { return t == o.t; }
    bool operator!=(const MultiPoly& o) const { return !(*this == o); }

    int total_deg() const {
        int d = -1;
        for (auto& [m, c] : t) d = std::max(d, mono_total_deg(m));
        return d;
    }
    int deg_in(const std::string& v) const {
        int d = 0;
        bool present = false;
        for (auto& [m, c] : t) {
            auto it = m.find(v);
            int e = it == m.end() ? 0 : it->second;
            d = std::max(d, e);
            present = true;
        }
        return present ? d : 0;
    }
    bool contains_var(const std::string& v) const {
        for (auto& [m, c] : t)
            if (m.count(v)) return true;
        return false;
    }
    std::set<std::string> vars() const {
        std::set<std::string> s;
        for (auto& [m, c] : t)
            for (auto& [v, e] : m) s.insert(v);
        return s;
    }

    /* coefficients with respect to v; index = power of v */
    std::vector<MultiPoly> coeffs_in(const std::string& v) const;
    static MultiPoly from_coeffs_in(const std::string& v, const std::vector<MultiPoly>& cs);

    MultiPoly derivative(const std::string& v) const {
        MultiPoly r;
        for (auto& [m, c] : t) {
            auto it = m.find(v);
            if (it == m.end()) continue;
            Monomial m2 = m;
            int e = it->second;
            if (e == 1)
                m2.erase(v);
            else
                m2[v] = e - 1;
            r.add_term(m2, c * TauScalar(e));
        }
        return r;
    }

    /* full evaluation; every variable must be bound */
    TauScalar eval(const std::map<std::string, GaussianRational>& at) const;

    /* divide by the leading coefficient (canonical unit normalization) */
    MultiPoly unit_normalized() const {
        if (is_zero()) return *this;
        return scaled(lead_coeff().inv());
    }

    std::string str() const;
};

} // namespace polaris
