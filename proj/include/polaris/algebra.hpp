#pragma once
/* Modular polynomial operations in a designated main variable: reduction by a
   monic polynomial, inverses, traces of multiplication operators (power sums
   via Newton's identities; no root extraction anywhere), and resultants. */

#include "polaris/ratfun.hpp"

#include <optional>

namespace polaris {

/* true if h is monic in v: positive v-degree, leading v-coefficient a nonzero constant 1 */
bool is_monic_in(const MultiPoly& h, const std::string& v);
/* divide by the leading v-coefficient when it is a nonzero constant */
MultiPoly make_monic_in(const MultiPoly& h, const std::string& v);

/* remainder of p modulo h, monic in v; other variables ride along as parameters */
MultiPoly reduce_mod_monic(const MultiPoly& p, const MultiPoly& h, const std::string& v);

/* inverse of a modulo h (monic in v) over the fraction field of the other
   variables; nullopt when gcd(a, h) != 1 */
std::optional<RationalFunction> inverse_mod_monic(const RationalFunction& a, const MultiPoly& h,
                                                  const std::string& v);

/* canonical representative of f in K[v]/(h): v-degree of the numerator < deg h,
   denominator free of v.  NonInvertibleDenominator if den(f) shares a factor with h. */
RationalFunction reduce_rf_mod(const RationalFunction& f, const MultiPoly& h,
                               const std::string& v);

/* power sums p_0..p_{k} of the roots of monic h, as rational functions of the
   other variables */
std::vector<RationalFunction> power_sums(const MultiPoly& h, const std::string& v, int upto);

/* trace of multiplication by g on K[v]/(h); equals the sum of g over the roots
   of h counted with multiplicity */
RationalFunction trace_mod(const RationalFunction& g, const MultiPoly& h, const std::string& v);

/* variants over the coefficient field: the modulus is a v-polynomial whose
   coefficients are rational functions of the remaining variables (fiber
   polynomials have w in the leading coefficient, so no MultiPoly form exists) */
RationalFunction reduce_rf_mod(const RationalFunction& f, const UPoly<RationalFunction>& m,
                               const std::string& v);
RationalFunction trace_mod(const RationalFunction& g, const UPoly<RationalFunction>& m,
                           const std::string& v);

/* resultant of f and g with respect to v; a polynomial in the other variables */
MultiPoly resultant_in(const MultiPoly& f, const MultiPoly& g, const std::string& v);

/* gcd(h, dh/dv) is constant */
bool squarefree_in(const MultiPoly& h, const std::string& v);

/* gcd of h with all its partials is constant; the honest multivariate check
   (single-variable gcds miss repeated factors free of that variable) */
bool mp_squarefree(const MultiPoly& h);

} // namespace polaris
