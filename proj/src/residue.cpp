#include "polaris/residue.hpp"

#include "polaris/algebra.hpp"
#include "polaris/error.hpp"

#include <algorithm>

namespace polaris {

void require_chain_admissible(const DifferentialForm& f, int expected_degree) {
  FormReport rep = validate_chain_form(f, expected_degree);
  if (!rep.ok) fail("NotChainAdmissible", rep.issues.front());
}

DifferentialForm residue_core(const DifferentialForm& f, const MultiPoly& h,
                              const std::string& v) {
  const Space& X = *f.space;
  int vidx = X.coord_pos(f.chart, v);
  if (vidx < 0) fail("InternalError", "residue variable " + v + " not in chart");
  if (f.terms.size() > 1)
    fail("NotTopDegree", "residue needs a single top-degree term, got " +
                             std::to_string(f.terms.size()));
  MultiPoly hv = h.derivative(v);
  DifferentialForm out = make_form(f.space, f.chart, f.degree - 1);
  for (auto& [I, r] : f.terms) {
    auto pos = std::find(I.begin(), I.end(), vidx);
    if (pos == I.end())
      fail("NotTopDegree", "residue variable " + v + " does not appear in the form");
    int t = (int)(pos - I.begin());
    int n = (int)I.size();
    bool neg = ((n - 1 - t) % 2) != 0;
    RationalFunction g = r * RationalFunction(h) / RationalFunction(hv);
    RationalFunction coeff;
    try {
      coeff = reduce_rf_mod(g, h, v);
    } catch (const Error& e) {
      if (e.code() == "NonInvertibleDenominator")
        fail("PoleOnRestrictionLocus",
             std::string("another pole factor meets the component: ") + e.what());
      throw;
    }
    if (neg) coeff = -coeff;
    std::vector<int> J;
    for (int i : I)
      if (i != vidx) J.push_back(i);
    add_form_term(out, std::move(J), coeff);
  }
  return out;
}

namespace {

/* monic local data of a component in a chart: equation plus designated
   variable, re-derived per chart */
std::pair<MultiPoly, std::string> monic_local(const Space& X, const PoleComponent& pc,
                                              int chart) {
  auto le = pc.local_equation(X, chart);
  if (!le) fail("InternalError", pc.str() + " invisible in chart " + std::to_string(chart));
  SubvarietyPres pres = make_hyp(X, chart, *le);
  if (pres.hvar.empty())
    fail("NotMonic", "no coordinate with constant leading coefficient in " + pres.h.str());
  return {pres.h, pres.hvar};
}

int find_declared(const DifferentialForm& f, const PoleComponent& V) {
  for (size_t k = 0; k < f.poles.size(); ++k)
    if (f.poles[k].same_divisor(*f.space, V)) return (int)k;
  return -1;
}

} // namespace

void prune_carried_poles(DifferentialForm& r) {
  const Space& X = *r.space;
  if (r.terms.empty()) {
    r.poles.clear();
    return;
  }
  std::vector<PoleComponent> kept;
  for (auto& q : r.poles) {
    bool alive = false;
    for (int c = 0; c < X.chart_count() && !alive; ++c) {
      auto le = q.local_equation(X, c);
      if (!le) continue;
      DifferentialForm g;
      try {
        g = transition_form(r, c);
      } catch (const Error&) {
        continue;
      }
      for (auto& [I, coeff] : g.terms) {
        if (coeff.den.is_constant()) continue;
        MultiPoly quo;
        if (mp_try_div(coeff.den, *le, &quo)) {
          alive = true;
          break;
        }
      }
    }
    if (alive) kept.push_back(q);
  }
  r.poles = std::move(kept);
}

DifferentialForm residue_along(const DifferentialForm& f, const PoleComponent& V) {
  int k = find_declared(f, V);
  if (k < 0) fail("ComponentNotDeclared", V.str() + " is not a declared pole component");
  auto [h, v] = monic_local(*f.space, V, f.chart);
  DifferentialForm out = residue_core(f, h, v);
  out.poles.clear();
  for (size_t j = 0; j < f.poles.size(); ++j)
    if ((int)j != k) out.poles.push_back(f.poles[j]);
  prune_carried_poles(out);
  return out;
}

std::vector<ResidueEntry> residue_all(const DifferentialForm& f) {
  const Space& X = *f.space;
  std::vector<ResidueEntry> out;
  for (auto& pc : f.poles) {
    int chart = -1;
    for (int c = 0; c < X.chart_count(); ++c)
      if (pc.local_equation(X, c)) {
        chart = c;
        break;
      }
    if (chart < 0) fail("InternalError", pc.str() + " invisible in every chart");
    DifferentialForm fc = transition_form(f, chart);
    ResidueEntry e;
    e.component = pc;
    e.chart = chart;
    auto [h, v] = monic_local(X, pc, chart);
    e.h = h;
    e.v = v;
    DifferentialForm r = residue_core(fc, h, v);
    r.poles.clear();
    for (auto& q : f.poles)
      if (!q.same_divisor(X, pc)) r.poles.push_back(q);
    prune_carried_poles(r);
    e.form = std::move(r);
    out.push_back(std::move(e));
  }
  return out;
}

DifferentialForm repeated_residue(const DifferentialForm& f, const PoleComponent& Vi,
                                  const PoleComponent& Vj) {
  const Space& X = *f.space;
  if (find_declared(f, Vi) < 0 || find_declared(f, Vj) < 0)
    fail("ComponentNotDeclared", "both components must be declared poles");
  int chart = -1;
  for (int c = 0; c < X.chart_count(); ++c)
    if (Vi.local_equation(X, c) && Vj.local_equation(X, c)) {
      chart = c;
      break;
    }
  if (chart < 0) fail("InternalError", "components share no chart");
  DifferentialForm fc = transition_form(f, chart);
  auto [hj, vj] = monic_local(X, Vj, chart);
  DifferentialForm first = residue_core(fc, hj, vj);

  auto lei = Vi.local_equation(X, chart);
  MultiPoly hi = reduce_mod_monic(*lei, hj, vj);
  if (hi.is_zero())
    fail("InternalError", "components coincide on the slice");
  std::string vi;
  for (auto& c : X.chart(chart).coords) {
    if (c == vj) continue;
    int d = hi.deg_in(c);
    if (d >= 1 && hi.coeffs_in(c)[(size_t)d].is_constant()) {
      vi = c;
      break;
    }
  }
  if (vi.empty()) fail("NotMonic", "intersection equation " + hi.str() + " has no monic variable");
  hi = make_monic_in(hi, vi);
  DifferentialForm out = residue_core(first, hi, vi);
  out.poles.clear();
  for (auto& q : f.poles)
    if (!q.same_divisor(X, Vi) && !q.same_divisor(X, Vj)) out.poles.push_back(q);
  prune_carried_poles(out);
  return out;
}

TauScalar p1_residue_sum(const DifferentialForm& f) {
  if (f.space->dim != 1) fail("InternalError", "residue sum is a curve-level check");
  require_chain_admissible(f, 1);
  TauScalar total(0);
  for (auto& e : residue_all(f)) {
    if (e.form.terms.empty()) continue;
    const RationalFunction& c = e.form.terms.begin()->second;
    RationalFunction tr = trace_mod(c, e.h, e.v);
    if (!tr.is_constant())
      fail("InternalError", "nonconstant residue trace on a curve: " + tr.str());
    total = total + tr.constant_value();
  }
  return total;
}

} // namespace polaris
