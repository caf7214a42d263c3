#pragma once
/* Poincaré residues of top-degree forms with first-order poles: exterior
   division by dh/h followed by restriction to the component.  Signs follow
   the convention that the polar cofactor sits on the left of dh/h. */

#include "polaris/form.hpp"

namespace polaris {

/* core formula on a single-term form whose tuple contains v: strips dv,
   multiplies by h/h_v, reduces modulo h.  No pole bookkeeping. */
DifferentialForm residue_core(const DifferentialForm& f, const MultiPoly& h,
                              const std::string& v);

/* residue along one declared component, in the form's own chart (the
   component must be visible there); poles pruned to the surviving ones */
DifferentialForm residue_along(const DifferentialForm& f, const PoleComponent& V);

struct ResidueEntry {
  PoleComponent component;
  DifferentialForm form; // reduced modulo h, in chart `chart`
  MultiPoly h;           // monic local equation used
  std::string v;
  int chart = 0;
};

/* one residue per declared component, each taken in the lowest chart where
   the component is visible */
std::vector<ResidueEntry> residue_all(const DifferentialForm& f);

/* res_{i,j}: residue at Vj first, then at the intersection inside Vj;
   antisymmetric in (i, j) */
DifferentialForm repeated_residue(const DifferentialForm& f, const PoleComponent& Vi,
                                  const PoleComponent& Vj);

/* a residue form lives on its component; carried poles that no longer cut any
   term denominator (in any chart) have left its world and are dropped */
void prune_carried_poles(DifferentialForm& r);

/* sum of all residues of an admissible 1-form on a line, infinity included;
   multi-point components contribute through the quotient-ring trace */
TauScalar p1_residue_sum(const DifferentialForm& f);

/* validation gate shared by residue consumers: throws NotChainAdmissible */
void require_chain_admissible(const DifferentialForm& f, int expected_degree);

} // namespace polaris
