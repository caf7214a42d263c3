#include "polaris/rational.hpp"

namespace polaris {

std::string rat_str(const Rational& r) {
    return r.get_str();
}

std::optional<Rational> sqrt_rational(const Rational& r) {
    if (r < 0) return std::nullopt;
    if (r == 0) return Rational(0);
    mpz_class num = r.get_num(), den = r.get_den();
    if (mpz_perfect_square_p(num.get_mpz_t()) == 0) return std::nullopt;
    if (mpz_perfect_square_p(den.get_mpz_t()) == 0) return std::nullopt;
    mpz_class sn, sd;
    mpz_sqrt(sn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(sd.get_mpz_t(), den.get_mpz_t());
    Rational out(sn, sd);
    out.canonicalize();
    return out;
}

std::string GaussianRational::str() const {
    if (is_zero()) return "0";
    std::string out;
    if (re != 0) out = rat_str(re);
    if (im != 0) {
        std::string mag;
        Rational a = im < 0 ? Rational(-im) : im;
        if (a == 1)
            mag = "i";
        else
            mag = rat_str(a) + "*i";
        if (out.empty())
            out = (im < 0 ? "-" : "") + mag;
        else
            out += (im < 0 ? "-" : "+") + mag;
    }
    return out;
}

std::optional<GaussianRational> sqrt_exact(const GaussianRational& z) {
    if (z.is_zero()) return GaussianRational(0);
    if (z.im == 0) {
        if (auto s = sqrt_rational(z.re)) return GaussianRational(*s);
        /* negative real: sqrt(-q) = i*sqrt(q) */
        if (auto s = sqrt_rational(Rational(-z.re)))
            return GaussianRational(Rational(0), *s);
        return std::nullopt;
    }
    /* (x+iy)^2 = a+ib: x^2 = (a + |z|)/2 with |z| rational, y = b/(2x). */
    auto n = sqrt_rational(z.norm2());
    if (!n) return std::nullopt;
    for (const Rational& s : {*n, Rational(-*n)}) {
        Rational x2 = (z.re + s) / 2;
        if (auto x = sqrt_rational(x2)) {
            if (*x == 0) continue;
            Rational y = z.im / (2 * *x);
            return GaussianRational(*x, y);
        }
    }
    return std::nullopt;
}

} // namespace polaris
