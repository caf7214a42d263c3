#pragma once
/* Polar chains: formal sums of presented subvarieties carrying top-degree
   meromorphic forms.  The boundary takes the residue along every declared
   pole component and multiplies by tau; normalization folds scalars into
   forms, folds finite self-maps of the line through the trace, merges equal
   presentations, and drops rank-deficient parametrizations.

   Form placement convention per variety kind:
     Whole  - the form lives on the ambient space itself;
     Graph  - the form lives on the parameter space of the graph
              (Space::param_space over the parameter names);
     Point  - a constant 0-form on the ambient space in the point's chart.
   Hypersurface presentations are turned into graphs on entry by solving the
   monic variable, so chains only ever hold the three kinds above. */

#include "polaris/pushforward.hpp"
#include "polaris/residue.hpp"

namespace polaris {

struct PrimeChain {
  SubvarietyPres variety;
  Morphism morphism;
  DifferentialForm form;
  TauScalar coeff = TauScalar(1); // folded into the form by normalize

  std::string str(const Space& X) const;
};

struct PolarChain {
  std::shared_ptr<const Space> ambient;
  std::vector<PrimeChain> terms;

  bool is_empty() const { return terms.empty(); }
  /* canonical rendering: terms sorted, the common tau power factored out
     front, "0" for the empty chain */
  std::string str() const;
};

PolarChain make_chain(std::shared_ptr<const Space> ambient);

/* validated entry point: checks the form's home space, degree = variety
   dimension, and chain admissibility.  Hypersurface varieties are converted
   to graphs here (parameters t1..tk named over the unsolved coordinates in
   chart order); their forms must already be written in those parameters. */
void add_chain_term(PolarChain& c, SubvarietyPres v, Morphism m, DifferentialForm f,
                    const TauScalar& coeff = TauScalar(1));

/* R1 scalar folding, self-map folding through the trace, merging of equal
   presentations, dropping of zero forms and degenerate graphs; idempotent */
PolarChain normalize(const PolarChain& c);

PolarChain chain_add(const PolarChain& a, const PolarChain& b);
PolarChain chain_scale(const PolarChain& a, const TauScalar& s);

/* equality of normal forms.  Presentations that are neither identical nor
   transitionable into a common chart raise IncomparablePresentations. */
bool chain_equal(const PolarChain& a, const PolarChain& b);

/* tau times the sum of residues along every declared pole component of every
   term; 1-dimensional components become graphs over fresh parameters,
   0-dimensional ones split into rational points (IrrationalIntersection when
   a component has no Q(i) points to split into) */
PolarChain boundary(const PolarChain& c);
PolarChain boundary_squared(const PolarChain& c);

struct RelativeContext {
  std::vector<SubvarietyPres> members;
};

/* the support of a pole component as a subvariety presentation, for building
   relative contexts out of an orientation's polar divisor */
SubvarietyPres pole_support(const Space& X, const PoleComponent& q);

/* drops terms whose support lies inside a member of the context; containment
   is decided by exact substitution and raises UndecidableContainment when the
   presentations do not admit one */
PolarChain reduce_relative(const PolarChain& c, const RelativeContext& ctx);

/* sum of the 0-form values of a 0-chain: the complete polar homology
   invariant in degree zero on a connected space */
TauScalar hp0_class(const PolarChain& c);

struct HomologyReport {
  std::string space;
  std::map<int, int> dims;
  Rational euler;

  std::string str() const;
};

/* catalog dimensions: HP_0 = 1 everywhere; a declared genus-g curve has
   HP_1 = g; projective spaces and products of lines have nothing above
   degree zero (no global holomorphic top forms) */
HomologyReport hp_report(const Space& X);

/* push every whole-line term through a finite self-map of the line */
PolarChain push_chain(const PolarChain& c, const LineMap& f);

} // namespace polaris
