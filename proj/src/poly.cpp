#include "polaris/poly.hpp"

namespace polaris {

int mono_total_deg(const Monomial& m) {
    int d = 0;
    for (auto& [v, e] : m) d += e;
    return d;
}

int mono_cmp(const Monomial& a, const Monomial& b) {
    int da = mono_total_deg(a), db = mono_total_deg(b);
    if (da != db) return da > db ? 1 : -1;
    auto ia = a.begin(), ib = b.begin();
    while (ia != a.end() || ib != b.end()) {
        if (ia == a.end()) return -1; /* b has weight on a later name; a ran out first */
        if (ib == b.end()) return 1;
        if (ia->first < ib->first) return 1;  /* a has exponent on the earlier name */
        if (ib->first < ia->first) return -1;
        if (ia->second != ib->second) return ia->second > ib->second ? 1 : -1;
        ++ia;
        ++ib;
    }
    return 0;
}

std::string mono_str(const Monomial& m) {
    std::string out;
    for (auto& [v, e] : m) {
        if (!out.empty()) out += "*";
        out += v;
        if (e > 1) out += "^" + std::to_string(e);
    }
    return out;
}

std::vector<MultiPoly> MultiPoly::coeffs_in(const std::string& v) const {
    std::vector<MultiPoly> cs(deg_in(v) + 1);
    for (auto& [m, c] : t) {
        auto it = m.find(v);
        int e = it == m.end() ? 0 : it->second;
        Monomial m2 = m;
        m2.erase(v);
        cs[e].add_term(m2, c);
    }
    return cs;
}

MultiPoly MultiPoly::from_coeffs_in(const std::string& v, const std::vector<MultiPoly>& cs) {
    MultiPoly r;
    for (size_t e = 0; e < cs.size(); ++e) {
        for (auto& [m, c] : cs[e].t) {
            Monomial m2 = m;
            if (e > 0) m2[v] = (int)e;
            r.add_term(m2, c);
        }
    }
    return r;
}

TauScalar MultiPoly::eval(const std::map<std::string, GaussianRational>& at) const {
    TauScalar acc(0);
    for (auto& [m, c] : t) {
        TauScalar term = c;
        for (auto& [v, e] : m) {
            auto it = at.find(v);
            if (it == at.end()) fail("UnboundVariable", "no value for variable " + v);
            GaussianRational p(1);
            for (int i = 0; i < e; ++i) p *= it->second;
            term *= TauScalar(p);
        }
        acc += term;
    }
    return acc;
}

std::string MultiPoly::str() const {
    if (t.empty()) return "0";
    std::string out;
    for (auto& [m, c] : t) {
        bool neg = c.negative_looking();
        TauScalar cc = neg ? -c : c;
        std::string piece;
        if (m.empty()) {
            piece = cc.str();
            if (str_needs_product_parens(piece)) {
                /* compound constant: splitting its sign across " - " would misread */
                neg = false;
                piece = c.str();
                if (t.size() > 1) piece = "(" + piece + ")";
            }
        } else if (cc.is_one()) {
            piece = mono_str(m);
        } else {
            piece = cc.str_factor() + "*" + mono_str(m);
        }
        if (out.empty())
            out = (neg ? "-" : "") + piece;
        else
            out += (neg ? " - " : " + ") + piece;
    }
    return out;
}

} // namespace polaris
