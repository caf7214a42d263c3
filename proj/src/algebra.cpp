#include "polaris/algebra.hpp"

#include "polaris/error.hpp"
#include "polaris/upoly.hpp"

namespace polaris {

using RPoly = UPoly<RationalFunction>;

namespace {

RationalFunction rf_from_upoly(const RPoly& u, const std::string& v) {
  RationalFunction acc(0);
  RationalFunction x = RationalFunction::var(v);
  RationalFunction xp(1);
  for (int i = 0; i <= u.deg(); ++i) {
    acc = acc + u.coeff(i) * xp;
    xp = xp * x;
  }
  return acc;
}

} // namespace

bool is_monic_in(const MultiPoly& h, const std::string& v) {
  int d = h.deg_in(v);
  if (d <= 0) return false;
  auto cs = h.coeffs_in(v);
  return cs[d].is_constant() && cs[d].constant_value().is_one();
}

MultiPoly make_monic_in(const MultiPoly& h, const std::string& v) {
  int d = h.deg_in(v);
  if (d <= 0) fail("NotMonic", "polynomial has no positive degree in " + v);
  auto cs = h.coeffs_in(v);
  if (!cs[d].is_constant())
    fail("NotMonic", "leading coefficient in " + v + " is not constant: " + cs[d].str());
  return h.scaled(cs[d].constant_value().inv());
}

MultiPoly reduce_mod_monic(const MultiPoly& p, const MultiPoly& h, const std::string& v) {
  if (!is_monic_in(h, v)) fail("NotMonic", "modulus is not monic in " + v + ": " + h.str());
  RPoly a = to_upoly(p, v);
  RPoly m = to_upoly(h, v);
  return from_upoly(a % m, v); // monic modulus keeps coefficients polynomial
}

std::optional<RationalFunction> inverse_mod_monic(const RationalFunction& a, const MultiPoly& h,
                                                  const std::string& v) {
  if (!is_monic_in(h, v)) fail("NotMonic", "modulus is not monic in " + v + ": " + h.str());
  RPoly m = to_upoly(h, v);
  RPoly an = to_upoly(a.num, v);
  RPoly r = an % m;
  if (r.is_zero()) return std::nullopt;
  RPoly s, t;
  RPoly g = RPoly::ext_gcd(r, m, s, t);
  if (g.deg() != 0) return std::nullopt;
  if (a.den.contains_var(v))
    fail("InternalError", "inverse_mod_monic expects a denominator free of " + v);
  // (N/D)^{-1} = D * N^{-1}; D is v-free so the representative stays reduced
  return rf_from_upoly(s, v) * RationalFunction(a.den);
}

RationalFunction reduce_rf_mod(const RationalFunction& f, const MultiPoly& h,
                               const std::string& v) {
  if (!is_monic_in(h, v)) fail("NotMonic", "modulus is not monic in " + v + ": " + h.str());
  RPoly m = to_upoly(h, v);
  RPoly num = to_upoly(f.num, v) % m;
  if (num.is_zero()) return RationalFunction(0);
  if (!f.den.contains_var(v)) {
    return rf_from_upoly(num, v) / RationalFunction(f.den);
  }
  RPoly den = to_upoly(f.den, v) % m;
  if (den.is_zero())
    fail("NonInvertibleDenominator",
         "denominator " + f.den.str() + " vanishes modulo " + h.str());
  RPoly s, t;
  RPoly g = RPoly::ext_gcd(den, m, s, t);
  if (g.deg() != 0)
    fail("NonInvertibleDenominator",
         "denominator " + f.den.str() + " shares the factor " + from_upoly_cleared(g, v).str() +
             " with " + h.str());
  RPoly rep = (num * s) % m;
  return rf_from_upoly(rep, v);
}

namespace {

// Newton's identities from the elementary symmetric functions e_1..e_d
std::vector<RationalFunction> newton_sums(const std::vector<RationalFunction>& e, int d,
                                          int upto) {
  std::vector<RationalFunction> p;
  p.reserve(static_cast<size_t>(upto) + 1);
  p.push_back(RationalFunction(d));
  for (int k = 1; k <= upto; ++k) {
    RationalFunction acc(0);
    for (int i = 1; i < k && i <= d; ++i) {
      RationalFunction term = e[static_cast<size_t>(i)] * p[static_cast<size_t>(k - i)];
      acc = (i % 2 == 1) ? acc + term : acc - term;
    }
    if (k <= d) {
      RationalFunction tail = RationalFunction(k) * e[static_cast<size_t>(k)];
      acc = (k % 2 == 1) ? acc + tail : acc - tail;
    }
    p.push_back(acc);
  }
  return p;
}

// e_k = (-1)^k c_{d-k} for a monic polynomial with coefficient list cs
template <typename Coeff>
std::vector<RationalFunction> elem_from_monic(const std::vector<Coeff>& cs, int d) {
  std::vector<RationalFunction> e(static_cast<size_t>(d) + 1, RationalFunction(0));
  e[0] = RationalFunction(1);
  for (int k = 1; k <= d; ++k) {
    RationalFunction c(cs[static_cast<size_t>(d - k)]);
    e[static_cast<size_t>(k)] = (k % 2 == 0) ? c : -c;
  }
  return e;
}

} // namespace

std::vector<RationalFunction> power_sums(const MultiPoly& h, const std::string& v, int upto) {
  MultiPoly m = is_monic_in(h, v) ? h : make_monic_in(h, v);
  int d = m.deg_in(v);
  return newton_sums(elem_from_monic(m.coeffs_in(v), d), d, upto);
}

RationalFunction reduce_rf_mod(const RationalFunction& f, const RPoly& m, const std::string& v) {
  if (m.deg() < 1 || !(m.lead() == RationalFunction(1)))
    fail("NotMonic", "field modulus must be monic of positive degree");
  RPoly num = to_upoly(f.num, v) % m;
  if (num.is_zero()) return RationalFunction(0);
  RPoly den = to_upoly(f.den, v) % m;
  if (den.is_zero())
    fail("NonInvertibleDenominator",
         "denominator " + f.den.str() + " vanishes modulo the fiber polynomial");
  if (den.is_constant()) return rf_from_upoly(num, v) / den.c[0];
  RPoly s, t;
  RPoly g = RPoly::ext_gcd(den, m, s, t);
  if (g.deg() != 0)
    fail("NonInvertibleDenominator",
         "denominator " + f.den.str() + " shares a factor with the fiber polynomial");
  return rf_from_upoly((num * s).scaled(RationalFunction(1) / g.c[0]) % m, v);
}

RationalFunction trace_mod(const RationalFunction& g, const RPoly& m_in, const std::string& v) {
  RPoly m = m_in;
  if (m.deg() < 1) fail("NotMonic", "fiber polynomial is constant");
  if (!(m.lead() == RationalFunction(1))) m = m.scaled(RationalFunction(1) / m.lead());
  RationalFunction rep = reduce_rf_mod(g, m, v);
  int d = m.deg();
  auto ps = newton_sums(elem_from_monic(m.c, d), d, d - 1);
  RPoly ru = to_upoly(rep, v);
  RationalFunction acc(0);
  for (int i = 0; i <= ru.deg(); ++i) acc = acc + ru.c[static_cast<size_t>(i)] * ps[static_cast<size_t>(i)];
  return acc;
}

RationalFunction trace_mod(const RationalFunction& g, const MultiPoly& h, const std::string& v) {
  MultiPoly m = is_monic_in(h, v) ? h : make_monic_in(h, v);
  RationalFunction rep = reduce_rf_mod(g, m, v);
  int d = m.deg_in(v);
  auto ps = power_sums(m, v, d - 1);
  // rep = N/D with D free of v; trace is linear, so trace(rep) = (sum a_i p_i)/D
  auto as = rep.num.coeffs_in(v);
  RationalFunction acc(0);
  for (size_t i = 0; i < as.size(); ++i)
    acc = acc + RationalFunction(as[i]) * ps[i];
  return acc / RationalFunction(rep.den);
}

MultiPoly resultant_in(const MultiPoly& f, const MultiPoly& g, const std::string& v) {
  RPoly a = to_upoly(f, v);
  RPoly b = to_upoly(g, v);
  RationalFunction r = RPoly::resultant(a, b);
  if (!r.is_poly())
    fail("InternalError", "resultant produced a proper fraction: " + r.str());
  return r.num;
}

bool squarefree_in(const MultiPoly& h, const std::string& v) {
  if (h.deg_in(v) <= 0) fail("NotMonic", "no positive degree in " + v + ": " + h.str());
  RPoly a = to_upoly(h, v);
  RPoly b = to_upoly(h.derivative(v), v);
  return RPoly::gcd(a, b).deg() == 0;
}

bool mp_squarefree(const MultiPoly& h) {
  if (h.is_zero()) return false;
  MultiPoly g = h;
  for (auto& v : h.vars()) g = mp_gcd(g, h.derivative(v));
  return g.is_constant();
}

} // namespace polaris
