#include "polaris/tau.hpp"

namespace polaris {

namespace {

bool gaussian_compound(const GaussianRational& g) {
    /* Needs parentheses when used as a multiplicative factor. */
    return g.re != 0 && g.im != 0;
}

std::string tau_power_str(int k) {
    if (k == 1) return "2πi";
    return "(2πi)^" + std::to_string(k);
}

} // namespace

std::string tau_poly_str(const TauPoly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    for (int k = p.deg(); k >= 0; --k) {
        GaussianRational c = p.coeff(k);
        if (c.is_zero()) continue;
        bool first = out.empty();
        /* compound values keep their own signs; splitting one across " - " would misread */
        bool neg = !gaussian_compound(c) && c.negative_looking();
        if (neg) c = -c;
        std::string piece;
        if (k == 0) {
            piece = c.str();
            if (gaussian_compound(c) && !first) piece = "(" + piece + ")";
        } else if (c.is_one()) {
            piece = tau_power_str(k);
        } else {
            std::string cs = c.str();
            if (gaussian_compound(c)) cs = "(" + cs + ")";
            piece = cs + "*" + (k == 1 ? "(2πi)" : tau_power_str(k));
        }
        if (first)
            out = (neg ? "-" : "") + piece;
        else
            out += (neg ? " - " : " + ") + piece;
    }
    return out;
}

std::string TauScalar::str() const {
    if (den.is_one()) return tau_poly_str(num);
    std::string n = tau_poly_str(num);
    if (num.deg() > 0 || gaussian_compound(num.coeff(0)) || n.find(' ') != std::string::npos)
        n = "(" + n + ")";
    return n + "/(" + tau_poly_str(den) + ")";
}

bool str_needs_product_parens(const std::string& s) {
    int depth = 0;
    for (size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        if (c == '(') ++depth;
        else if (c == ')') --depth;
        else if (depth == 0 && (c == ' ' || (i > 0 && (c == '+' || c == '-')))) return true;
    }
    return false;
}

std::string TauScalar::str_factor() const {
    std::string s = str();
    if (s.find(' ') != std::string::npos || s.find('/') != std::string::npos ||
        (!s.empty() && s[0] == '-') || gaussian_compound(num.coeff(0)))
        return "(" + s + ")";
    return s;
}

} // namespace polaris
