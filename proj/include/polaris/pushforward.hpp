#pragma once

#include "polaris/form.hpp"

#include <optional>

namespace polaris {

/* finite self-map of the line in the affine coordinate z */
struct LineMap {
  RationalFunction map;
  int degree = 0;
  std::string str() const { return map.str(); }
};

LineMap make_line_map(const RationalFunction& F);

/* trace push-forward of a meromorphic 1-form g(z)dz: the sum of ω over the
   fiber of F, computed in the quotient ring without root extraction.  The
   result carries a freshly derived pole list (images of the source poles). */
DifferentialForm pushforward_line(const LineMap& f, const DifferentialForm& omega);

/* F^* by substitution and the chain rule, with preimage pole bookkeeping */
DifferentialForm pullback_line(const LineMap& f, const DifferentialForm& omega);

struct ResidueCommuteReport {
  bool equal = false;
  TauScalar pushed_then_res; /* residue of f_* ω at the image point */
  TauScalar res_then_pushed; /* total residue of ω over that fiber point */
  std::string at;            /* printable image point */
};

/* residue compatibility at one fiber point: the residue of the push-forward
   at f(source) equals the sum of the residues of ω over the poles lying
   above it.  source is a finite value of z, or the point at infinity when
   absent. */
ResidueCommuteReport check_residue_commute(const LineMap& f, const DifferentialForm& omega,
                                           const std::optional<GaussianRational>& source);

} // namespace polaris
