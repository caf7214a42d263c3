#pragma once
/* Chart-local meromorphic differential forms with declared pole divisors.
   A form lives in one working chart of its space; terms map strictly
   increasing coordinate-index tuples to rational-function coefficients.
   Pole components are declared, validated, and carried along; they are never
   discovered by factorization. */

#include "polaris/space.hpp"

namespace polaris {

struct PoleComponent {
  bool at_infinity = false;
  std::string coord; // at_infinity: the affine coordinate owning the divisor
  int chart = 0;     // finite: chart of the defining equation
  MultiPoly h;       // finite: squarefree, monic in var when normalizable
  std::string var;

  std::string str() const;
  /* local equation in the given chart; nullopt when the divisor is invisible there */
  std::optional<MultiPoly> local_equation(const Space& X, int in_chart) const;
  bool same_divisor(const Space& X, const PoleComponent& o) const;
};

PoleComponent finite_pole(const Space& X, int chart, const MultiPoly& h);
PoleComponent infinity_pole(const Space& X, const std::string& coord);

struct DifferentialForm {
  std::shared_ptr<const Space> space;
  int chart = 0;
  int degree = 0;
  std::map<std::vector<int>, RationalFunction> terms;
  std::vector<PoleComponent> poles;

  bool is_zero() const { return terms.empty(); }
  std::string str() const;
};

DifferentialForm make_form(std::shared_ptr<const Space> space, int chart, int degree);
/* fold a coefficient into the form; idx is sorted with the permutation sign,
   repeated indices annihilate */
void add_form_term(DifferentialForm& f, std::vector<int> idx, const RationalFunction& coeff);

DifferentialForm form_add(const DifferentialForm& a, const DifferentialForm& b);
DifferentialForm form_scale(const DifferentialForm& a, const RationalFunction& c);
DifferentialForm form_neg(const DifferentialForm& a);
DifferentialForm wedge(const DifferentialForm& a, const DifferentialForm& b); // ChartMismatch
bool form_equal(const DifferentialForm& a, const DifferentialForm& b);

/* substitution pullback: coefficients composed, differentials expanded through
   the Jacobian minors of sub.  Every source coordinate must have an entry. */
DifferentialForm pullback_form(const DifferentialForm& f, std::shared_ptr<const Space> target,
                               int target_chart,
                               const std::map<std::string, RationalFunction>& sub);

/* the same form written in another chart of its own space; poles carry over */
DifferentialForm transition_form(const DifferentialForm& f, int to_chart);

/* eliminate dv via implicit differentiation of h = 0 and reduce coefficients
   modulo h; PoleOnRestrictionLocus when a denominator meets h */
DifferentialForm restrict_form(const DifferentialForm& f, const MultiPoly& h,
                               const std::string& v);

/* plug frame vectors (in the form's chart coordinates) into the form */
TauScalar eval_form(const DifferentialForm& f, const Point& P,
                    const std::vector<std::vector<GaussianRational>>& frame);

struct FormReport {
  bool ok = true;
  std::vector<std::string> issues;
};

/* chain admissibility: degree matches, denominators divide the declared pole
   product to first order in every chart, components pairwise coprime and
   normal-crossing as far as monic elimination decides */
FormReport validate_chain_form(const DifferentialForm& f, int expected_degree);

} // namespace polaris
