#include "polaris/pushforward.hpp"

#include "polaris/algebra.hpp"
#include "polaris/error.hpp"
#include "polaris/residue.hpp"

namespace polaris {

namespace {

bool tau_free_rf(const RationalFunction& f) {
  for (auto* p : {&f.num, &f.den})
    for (auto& [m, c] : p->t)
      if (c.den.deg() > 0 || c.num.deg() > 0) return false;
  return true;
}

MultiPoly squarefree_part(const MultiPoly& h, const std::string& v) {
  MultiPoly d = h.derivative(v);
  if (d.is_zero()) return h.unit_normalized();
  MultiPoly g = mp_gcd(h, d);
  if (g.is_constant()) return h.unit_normalized();
  return mp_exact_div(h, g).unit_normalized();
}

const Space& expect_line(const DifferentialForm& omega) {
  const Space& X = *omega.space;
  if (X.name != "P1") fail("ChartMismatch", "push-forward is defined on the line, not " + X.name);
  return X;
}

/* image of the point at infinity: nullopt means infinity again */
std::optional<GaussianRational> image_of_infinity(const LineMap& f) {
  int dp = f.map.num.deg_in("z"), dq = f.map.den.deg_in("z");
  if (dp > dq) return std::nullopt;
  if (dp < dq) return GaussianRational();
  auto lead = [&](const MultiPoly& p) {
    auto cs = p.coeffs_in("z");
    return expect_gaussian(cs.back().constant_value());
  };
  return lead(f.map.num) / lead(f.map.den);
}

/* attach the pole list of a derived 1-form on the line: every nonconstant
   factor of the (squarefree) denominator must be claimed by a candidate
   divisor, and a chart-infinity pole must have been predicted */
void assign_line_poles(DifferentialForm& out, std::vector<MultiPoly> finite_candidates,
                       bool infinity_candidate) {
  const Space& X = *out.space;
  out.poles.clear();
  if (out.terms.empty()) return;
  MultiPoly remaining(1);
  for (auto& [I, c] : out.terms)
    if (!c.den.is_constant()) remaining = remaining * c.den;
  remaining = squarefree_part(remaining, "z");
  for (auto& cand : finite_candidates) {
    if (remaining.is_constant()) break;
    MultiPoly g = mp_gcd(remaining, cand);
    if (g.is_constant()) continue;
    out.poles.push_back(finite_pole(X, 0, g));
    remaining = mp_exact_div(remaining, g).unit_normalized();
  }
  if (!remaining.is_constant())
    fail("InternalError", "pole " + remaining.str() + " of the result has no source above it");

  DifferentialForm flip = transition_form(out, 1);
  bool pole_at_inf = false;
  MultiPoly w = MultiPoly::var("w");
  for (auto& [I, c] : flip.terms) {
    MultiPoly q;
    if (!c.den.is_constant() && mp_try_div(c.den, w, &q)) pole_at_inf = true;
  }
  if (pole_at_inf) {
    if (!infinity_candidate)
      fail("InternalError", "pole at infinity of the result has no source above it");
    out.poles.push_back(infinity_pole(X, "z"));
  }
}

RationalFunction the_coefficient(const DifferentialForm& f) {
  if (f.terms.empty()) return RationalFunction(0);
  return f.terms.begin()->second;
}

bool omega_has_infinity_pole(const DifferentialForm& f0) {
  for (auto& pc : f0.poles)
    if (pc.at_infinity) return true;
  return false;
}

} // namespace

LineMap make_line_map(const RationalFunction& F) {
  if (!tau_free_rf(F)) fail("NonRationalCoordinate", "the map involves 2πi: " + F.str());
  for (auto* p : {&F.num, &F.den})
    for (auto& v : p->vars())
      if (v != "z") fail("UnboundVariable", "the map must be rational in z, found " + v);
  int d = std::max(F.num.deg_in("z"), F.den.deg_in("z"));
  if (d == 0) fail("ConstantMap", "the map " + F.str() + " is constant");
  return LineMap{F, d};
}

DifferentialForm pushforward_line(const LineMap& f, const DifferentialForm& omega) {
  const Space& X = expect_line(omega);
  if (omega.degree != 1) fail("NotTopDegree", "push-forward takes 1-forms on the line");
  DifferentialForm f0 = omega.chart == 0 ? omega : transition_form(omega, 0);
  RationalFunction g = the_coefficient(f0);
  DifferentialForm out = make_form(omega.space, 0, 1);
  if (g == RationalFunction(0)) return out;

  MultiPoly hw = f.map.num - MultiPoly::var("w") * f.map.den;
  auto u = to_upoly(hw, "z");
  if (u.deg() != f.degree) fail("InternalError", "fiber polynomial degree mismatch");
  if (UPoly<RationalFunction>::gcd(u, u.derivative()).deg() > 0)
    fail("InseparableFiber", "the fiber polynomial is not squarefree");

  RationalFunction dF = f.map.derivative("z");
  RationalFunction tr = trace_mod(g / dF, u, "z");
  for (auto* p : {&tr.num, &tr.den})
    for (auto& v : p->vars())
      if (v != "w") fail("InternalError", "trace kept the fiber variable " + v);
  add_form_term(out, {0}, substitute(tr, {{"w", RationalFunction::var("z")}}));
  if (out.terms.empty()) return out; // the sections cancelled

  /* pole candidates: the images of the declared source poles; with no
     declaration, fall back to the raw denominator of ω */
  std::vector<MultiPoly> cands;
  bool inf_cand = false;
  auto add_finite_source = [&](const MultiPoly& h) {
    MultiPoly r = resultant_in(h, hw, "z");
    if (!r.is_constant()) {
      // the image lives in the w plane; rename before matching denominators
      RationalFunction rz = substitute(r, {{"w", RationalFunction::var("z")}});
      cands.push_back(squarefree_part(rz.num, "z"));
    }
    if (!mp_gcd(h, f.map.den).is_constant()) inf_cand = true;
  };
  bool any_source = false;
  for (auto& pc : f0.poles) {
    any_source = true;
    if (pc.at_infinity) {
      auto img = image_of_infinity(f);
      if (!img)
        inf_cand = true;
      else
        cands.push_back(MultiPoly::var("z") - MultiPoly(TauScalar(*img)));
    } else {
      auto le = pc.local_equation(X, 0);
      if (!le) fail("InternalError", "finite pole invisible in the affine chart");
      add_finite_source(*le);
    }
  }
  if (!any_source) {
    if (!g.den.is_constant()) add_finite_source(squarefree_part(g.den, "z"));
    DifferentialForm flip = transition_form(f0, 1);
    MultiPoly w = MultiPoly::var("w");
    for (auto& [I, c] : flip.terms) {
      MultiPoly q;
      if (!c.den.is_constant() && mp_try_div(c.den, w, &q)) {
        auto img = image_of_infinity(f);
        if (!img)
          inf_cand = true;
        else
          cands.push_back(MultiPoly::var("z") - MultiPoly(TauScalar(*img)));
      }
    }
  }
  assign_line_poles(out, std::move(cands), inf_cand);
  return out;
}

DifferentialForm pullback_line(const LineMap& f, const DifferentialForm& omega) {
  const Space& X = expect_line(omega);
  if (omega.degree != 1) fail("NotTopDegree", "pullback takes 1-forms on the line");
  DifferentialForm f0 = omega.chart == 0 ? omega : transition_form(omega, 0);
  RationalFunction g = the_coefficient(f0);
  DifferentialForm out = make_form(omega.space, 0, 1);
  if (g == RationalFunction(0)) return out;
  RationalFunction coeff = substitute(g, {{"z", f.map}}) * f.map.derivative("z");
  add_form_term(out, {0}, coeff);
  if (out.terms.empty()) return out;

  std::vector<MultiPoly> cands;
  bool inf_cand = false;
  auto img_inf = image_of_infinity(f);
  auto source_contains = [&](const GaussianRational& v) {
    for (auto& pc : f0.poles) {
      if (pc.at_infinity) continue;
      auto le = pc.local_equation(X, 0);
      if (le && le->eval({{"z", v}}).is_zero()) return true;
    }
    return false;
  };
  for (auto& pc : f0.poles) {
    if (pc.at_infinity) {
      // preimage of infinity: the poles of F, plus infinity itself when F fixes it
      if (!f.map.den.is_constant()) cands.push_back(squarefree_part(f.map.den, "z"));
      if (!img_inf) inf_cand = true;
    } else {
      auto le = pc.local_equation(X, 0);
      if (!le) fail("InternalError", "finite pole invisible in the affine chart");
      RationalFunction pre = substitute(*le, {{"z", f.map}});
      if (!pre.num.is_constant()) cands.push_back(squarefree_part(pre.num, "z"));
      if (img_inf && le->eval({{"z", *img_inf}}).is_zero()) inf_cand = true;
    }
  }
  /* F' can only add poles over the poles of F, already candidates above;
     still, dF's denominator is included for the undeclared-source fallback */
  if (f0.poles.empty() && !coeff.den.is_constant())
    cands.push_back(squarefree_part(coeff.den, "z"));
  if (f0.poles.empty()) inf_cand = true;
  assign_line_poles(out, std::move(cands), inf_cand);
  return out;
}

ResidueCommuteReport check_residue_commute(const LineMap& f, const DifferentialForm& omega,
                                           const std::optional<GaussianRational>& source) {
  const Space& X = expect_line(omega);
  DifferentialForm f0 = omega.chart == 0 ? omega : transition_form(omega, 0);

  /* locate the image point w0 = f(source) */
  std::optional<GaussianRational> w0;
  if (!source) {
    w0 = image_of_infinity(f);
  } else {
    GaussianRational qv = expect_gaussian(f.map.den.eval({{"z", *source}}));
    if (qv.is_zero())
      w0 = std::nullopt;
    else
      w0 = expect_gaussian(f.map.eval({{"z", *source}}));
  }

  /* total residue of ω over the fiber point w0: gather every declared pole
     lying above it, clustered components handled through the trace */
  TauScalar rhs(0);
  bool found_source = false;
  auto entries = residue_all(f0);
  MultiPoly fiber_num =
      w0 ? f.map.num - MultiPoly(TauScalar(*w0)) * f.map.den : f.map.den;
  for (auto& e : entries) {
    if (e.component.at_infinity) {
      bool inf_above = w0 ? (image_of_infinity(f) && *image_of_infinity(f) == *w0)
                          : !image_of_infinity(f).has_value();
      if (!inf_above) continue;
      found_source = true;
      rhs = rhs + the_coefficient(e.form).eval({{"w", GaussianRational()}});
    } else {
      MultiPoly part = fiber_num.is_constant() ? MultiPoly(1) : mp_gcd(e.h, fiber_num);
      if (part.is_constant()) continue;
      found_source = true;
      RationalFunction t = trace_mod(the_coefficient(e.form), make_monic_in(part, e.v), e.v);
      if (!t.is_constant()) fail("InternalError", "fiber residue total is not constant");
      rhs = rhs + t.constant_value();
    }
  }
  if (!found_source)
    fail("ComponentNotDeclared", "no declared pole of the form lies over the image point");

  /* residue of the push-forward at w0 */
  DifferentialForm pushed = pushforward_line(f, f0);
  TauScalar lhs(0);
  for (auto& e : residue_all(pushed)) {
    if (e.component.at_infinity) {
      if (!w0) lhs = lhs + the_coefficient(e.form).eval({{"w", GaussianRational()}});
    } else if (w0 && e.h.eval({{"z", *w0}}).is_zero()) {
      lhs = lhs + the_coefficient(e.form).eval({{"z", *w0}});
    }
  }

  ResidueCommuteReport rep;
  rep.equal = lhs == rhs;
  rep.pushed_then_res = lhs;
  rep.res_then_pushed = rhs;
  rep.at = w0 ? "point(" + w0->str() + ")" : "point(0)@1";
  return rep;
}

} // namespace polaris
