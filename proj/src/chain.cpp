/* Chains are formal sums of (subvariety, map, top form) terms over one ambient
   space.  The boundary takes tau times the residue at every declared pole
   component; one-dimensional components come back as graphs over fresh
   parameters t1.., zero-dimensional ones split into Q(i)-rational points
   carrying the residue value. */

#include "polaris/chain.hpp"

#include <algorithm>
#include <climits>
#include <sstream>

#include "polaris/algebra.hpp"
#include "polaris/residue.hpp"

namespace polaris {

namespace {

RationalFunction rf_const(const TauScalar& s) { return RationalFunction(MultiPoly(s)); }

/* tau-adic valuation, for factoring a common power of 2πi out of a rendering */
int tau_val(const TauPoly& p) {
  for (size_t i = 0; i < p.c.size(); ++i)
    if (!p.c[i].is_zero()) return (int)i;
  return 0;
}
int tau_val(const TauScalar& s) { return tau_val(s.num) - tau_val(s.den); }
int tau_val(const MultiPoly& p) {
  int m = INT_MAX;
  for (auto& [mono, c] : p.t) m = std::min(m, tau_val(c));
  return m == INT_MAX ? 0 : m;
}
int tau_val(const RationalFunction& f) { return tau_val(f.num) - tau_val(f.den); }
int form_tau_val(const DifferentialForm& f) {
  int m = INT_MAX;
  for (auto& [idx, c] : f.terms)
    if (!c.is_zero()) m = std::min(m, tau_val(c));
  return m == INT_MAX ? 0 : m;
}

bool same_morphism(const Morphism& a, const Morphism& b) {
  if (a.kind != b.kind) return false;
  if (a.kind != Morphism::Kind::SelfMapOfLine) return true;
  return a.var == b.var && a.F == b.F;
}

/* literal presentation equality; points compare geometrically */
bool same_presentation(const Space& X, const SubvarietyPres& a, const SubvarietyPres& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case SubvarietyPres::Kind::Whole: return true;
    case SubvarietyPres::Kind::Point: return same_point(X, a.pt, b.pt);
    case SubvarietyPres::Kind::Hyp: return a.chart == b.chart && a.h == b.h;
    case SubvarietyPres::Kind::Graph:
      return a.chart == b.chart && a.params == b.params && a.assign == b.assign;
  }
  return false;
}

void sort_terms(const Space& X, std::vector<PrimeChain>& ts) {
  std::stable_sort(ts.begin(), ts.end(), [&](const PrimeChain& a, const PrimeChain& b) {
    if (a.form.degree != b.form.degree) return a.form.degree < b.form.degree;
    std::string ka = a.variety.str(X), kb = b.variety.str(X);
    if (ka != kb) return ka < kb;
    ka = a.morphism.str();
    kb = b.morphism.str();
    if (ka != kb) return ka < kb;
    return a.form.str() < b.form.str();
  });
}

std::string joined(const std::vector<std::string>& xs) {
  std::string s;
  for (auto& x : xs) {
    if (!s.empty()) s += "; ";
    s += x;
  }
  return s;
}

/* strip repeated factors, one variable at a time */
MultiPoly squarefree_part(MultiPoly h) {
  while (!h.is_constant() && !mp_squarefree(h)) {
    bool cut = false;
    for (auto& v : h.vars()) {
      MultiPoly d = h.derivative(v);
      if (d.is_zero()) continue;
      MultiPoly g = mp_gcd(h, d);
      if (g.is_constant()) continue;
      h = mp_exact_div(h, g);
      cut = true;
      break;
    }
    if (!cut) break;
  }
  return h.unit_normalized();
}

struct LinearSolve {
  std::string vstar;                           // the solved coordinate
  std::vector<std::string> tnames;             // fresh parameters, chart order
  std::map<std::string, RationalFunction> sub; // every chart coordinate in the t's
};

/* present {h = 0} inside a chart as a graph: find a coordinate where h is
   affine-linear with constant leading coefficient, solve for it, and name the
   remaining coordinates t1..tk.  Constant leading coefficients only: a
   non-constant lead would silently divide away components of the locus. */
std::optional<LinearSolve> solve_linear(const Space& W, int chart, const MultiPoly& h,
                                        const std::string& prefer) {
  const auto& cs = W.chart(chart).coords;
  std::vector<std::string> order;
  if (!prefer.empty()) order.push_back(prefer);
  for (auto& c : cs)
    if (c != prefer) order.push_back(c);

  std::string vstar;
  MultiPoly hm;
  for (auto& v : order) {
    if (h.deg_in(v) != 1) continue;
    auto parts = h.coeffs_in(v);
    if (!parts[1].is_constant()) continue;
    hm = h.scaled(parts[1].constant_value().inv());
    vstar = v;
    break;
  }
  if (vstar.empty()) return std::nullopt;

  LinearSolve out;
  out.vstar = vstar;
  std::map<std::string, RationalFunction> ren;
  int k = 0;
  for (auto& c : cs) {
    if (c == vstar) continue;
    std::string tn = "t" + std::to_string(++k);
    out.tnames.push_back(tn);
    ren[c] = RationalFunction::var(tn);
    out.sub[c] = RationalFunction::var(tn);
  }
  // hm = vstar + R with R free of vstar, so the assignment is vstar = -R
  MultiPoly rest = hm.coeffs_in(vstar)[0];
  out.sub[vstar] = substitute(-RationalFunction(rest), ren);
  return out;
}

SubvarietyPres hyp_as_graph(const Space& X, const SubvarietyPres& hp) {
  auto ls = solve_linear(X, hp.chart, hp.h, hp.hvar);
  if (!ls)
    fail("NonExtendableGraph",
         "hypersurface " + hp.h.str() + " is not presented as a graph of the remaining coordinates");
  return make_graph(X, hp.chart, ls->tnames, ls->sub);
}

/* positive-dimensional boundary component of one term */
PrimeChain graph_child(const std::shared_ptr<const Space>& ambient, const PrimeChain& t,
                       const ResidueEntry& e) {
  const Space& X = *ambient;
  const auto& W = t.form.space; // residues live where the form lives

  auto ls = solve_linear(*W, e.chart, e.h, e.v);
  if (!ls)
    fail("NonExtendableGraph",
         "pole component " + e.h.str() + " is not a graph over the remaining coordinates");

  auto S = Space::param_space(ls->tnames);
  DifferentialForm cf = pullback_form(e.form, S, 0, ls->sub);

  /* pole candidates: restrictions of every other parent pole through the
     solve, plus the infinity of every parameter; pruning keeps only those the
     coefficients actually need.  The parent list is the authority here: the
     residue's own list is pruned by literal ambient divisibility and can miss
     components whose restricted equation differs from the ambient one. */
  std::vector<PoleComponent> cand;
  auto push_cand = [&](const PoleComponent& pc) {
    for (auto& q : cand)
      if (q.same_divisor(*S, pc)) return;
    cand.push_back(pc);
  };
  for (auto& q : t.form.poles) {
    if (q.same_divisor(*W, e.component)) continue;
    auto le = q.local_equation(*W, e.chart);
    if (!le) continue; // misses this chart; the parameter infinities cover it
    RationalFunction img = substitute(*le, ls->sub);
    MultiPoly sf = squarefree_part(img.num);
    if (!sf.is_constant()) push_cand(finite_pole(*S, 0, sf));
  }
  for (auto& tn : ls->tnames) push_cand(infinity_pole(*S, tn));
  cf.poles = std::move(cand);
  prune_carried_poles(cf);
  auto rep = validate_chain_form(cf, cf.degree);
  if (!rep.ok) fail("NotChainAdmissible", joined(rep.issues));

  PrimeChain ch;
  ch.form = std::move(cf);
  if (t.variety.kind == SubvarietyPres::Kind::Whole) {
    ch.variety = make_graph(X, e.chart, ls->tnames, ls->sub);
    return ch;
  }

  /* graph source: compose its ambient assignments with the solve, through the
     first ambient chart where every coordinate stays defined */
  for (int a = 0; a < X.chart_count(); ++a) {
    auto ga = graph_in_chart(X, t.variety, a);
    if (!ga) continue;
    std::map<std::string, RationalFunction> comp;
    bool ok = true;
    for (auto& c : X.chart(a).coords) {
      try {
        RationalFunction s1 = substitute(ga->assign.at(c), W->trans[0][(size_t)e.chart]);
        comp[c] = substitute(s1, ls->sub);
      } catch (const Error&) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    try {
      ch.variety = make_graph(X, a, ls->tnames, comp);
      return ch;
    } catch (const Error&) {
      // this chart sees a degenerate shadow; keep looking
    }
  }
  fail("NonExtendableGraph", "boundary component has no graph presentation in any ambient chart");
}

/* zero-dimensional boundary: split the component into rational points */
void split_points(const std::shared_ptr<const Space>& ambient, const PrimeChain& t,
                  const ResidueEntry& e, const RationalFunction& tau_c, PolarChain& out) {
  const Space& X = *ambient;
  RationalFunction val;
  for (auto& [idx, c] : e.form.terms) val = c; // 0-form: at most one entry
  if (val.is_zero()) return;

  bool solvable = true;
  auto roots = rational_roots_up_to_quadratic(to_gaussian_upoly(e.h, e.v), &solvable);
  if (!solvable)
    fail("IrrationalIntersection",
         "boundary points of " + e.h.str() + " have no Q(i)-rational presentation");

  for (auto& r : roots) {
    RationalFunction vr = substitute(val, {{e.v, rf_const(TauScalar(r))}});
    if (!vr.is_constant()) fail("InternalError", "point residue failed to evaluate");
    TauScalar a = vr.constant_value();
    if (a.is_zero()) continue;

    Point pw{e.chart, {r}};
    Point pt = t.variety.kind == SubvarietyPres::Kind::Whole
                   ? canonical_point(X, pw)
                   : canonical_point(X, graph_image(X, t.variety, {r}, (unsigned)e.chart));

    PrimeChain ch;
    ch.variety = SubvarietyPres::point(pt);
    ch.form = make_form(ambient, pt.chart, 0);
    add_form_term(ch.form, {}, tau_c * rf_const(a));
    out.terms.push_back(std::move(ch));
  }
}

enum class Tri { Yes, No, Unknown };

/* graph set-equality up to positional parameter renaming; reparametrized
   presentations of the same set stay Unknown */
Tri graphs_same(const Space& X, const SubvarietyPres& a, const SubvarietyPres& b) {
  if (a.params.size() != b.params.size()) return Tri::No;
  auto bt = graph_in_chart(X, b, a.chart);
  if (!bt) return Tri::Unknown;
  std::map<std::string, RationalFunction> ren;
  for (size_t i = 0; i < a.params.size(); ++i)
    ren[bt->params[i]] = RationalFunction::var(a.params[i]);
  bool all = true;
  for (auto& [c, expr] : a.assign) {
    RationalFunction other = substitute(bt->assign.at(c), ren);
    if (other == expr) continue;
    all = false;
    if (expr.is_constant() && other.is_constant()) return Tri::No; // distinct slices
  }
  return all ? Tri::Yes : Tri::Unknown;
}

/* A subset-of Z, decided by substitution and witness points where possible */
Tri contained_in(const Space& X, const SubvarietyPres& A, const SubvarietyPres& Z) {
  if (Z.kind == SubvarietyPres::Kind::Whole) return Tri::Yes;
  if (A.kind == SubvarietyPres::Kind::Whole) return Tri::No;
  if (A.dim(X) > Z.dim(X)) return Tri::No;

  switch (A.kind) {
    case SubvarietyPres::Kind::Point:
      try {
        return contains_point(X, Z, A.pt) ? Tri::Yes : Tri::No;
      } catch (const Error&) {
        return Tri::Unknown;
      }
    case SubvarietyPres::Kind::Hyp: {
      if (Z.kind != SubvarietyPres::Kind::Hyp) return Tri::No;
      auto le = hyp_in_chart(X, Z.h, Z.chart, A.chart);
      if (!le) return Tri::No;
      // squarefree equations: containment is divisibility of Z's by A's
      return mp_try_div(*le, A.h, nullptr) ? Tri::Yes : Tri::No;
    }
    case SubvarietyPres::Kind::Graph: {
      if (Z.kind == SubvarietyPres::Kind::Hyp) {
        auto le = hyp_in_chart(X, Z.h, Z.chart, A.chart);
        if (!le) return Tri::No; // Z misses the chart where A is dense
        return substitute(*le, A.assign).is_zero() ? Tri::Yes : Tri::No;
      }
      if (Z.kind == SubvarietyPres::Kind::Graph) {
        Tri s = graphs_same(X, A, Z);
        if (s == Tri::Yes) return Tri::Yes;
        /* sample points of A: one witness off Z settles it */
        int seen = 0;
        for (int s0 = 0; s0 <= 4 && seen < 3; ++s0) {
          std::vector<GaussianRational> vals(A.params.size(), GaussianRational(s0));
          try {
            Point p = graph_image(X, A, vals);
            ++seen;
            if (!contains_point(X, Z, p)) return Tri::No;
          } catch (const Error&) {
          }
        }
        return Tri::Unknown;
      }
      return Tri::No;
    }
    default: return Tri::Unknown;
  }
}

}  // namespace

std::string PrimeChain::str(const Space& X) const {
  std::string s = "(" + variety.str(X);
  if (morphism.kind == Morphism::Kind::SelfMapOfLine) s += ", " + morphism.str();
  return s + ", " + form.str() + ")";
}

std::string PolarChain::str() const {
  if (terms.empty()) return "0";
  const Space& X = *ambient;

  std::vector<DifferentialForm> effs;
  int m = 0;
  bool have = false;
  for (auto& t : terms) {
    DifferentialForm e = t.coeff.is_one() ? t.form : form_scale(t.form, rf_const(t.coeff));
    if (!e.is_zero()) {
      int v = form_tau_val(e);
      m = have ? std::min(m, v) : v;
      have = true;
    }
    effs.push_back(std::move(e));
  }
  if (!have) return "0";

  std::string body;
  bool first = true;
  for (size_t i = 0; i < terms.size(); ++i) {
    DifferentialForm e = effs[i];
    if (e.is_zero()) continue;
    if (m != 0) e = form_scale(e, rf_const(TauScalar::tau(-m)));
    bool neg = false;
    if (!first && e.terms.size() == 1 && e.terms.begin()->second.negative_looking()) {
      neg = true;
      e = form_neg(e);
    }
    std::string piece = "(" + terms[i].variety.str(X);
    if (terms[i].morphism.kind == Morphism::Kind::SelfMapOfLine)
      piece += ", " + terms[i].morphism.str();
    piece += ", " + e.str() + ")";
    if (first) {
      body += piece;
      first = false;
    } else {
      body += (neg ? " - " : " + ") + piece;
    }
  }
  body = "[" + body + "]";
  if (m == 0) return body;
  std::string p = m == 1 ? "(2πi)" : "(2πi)^" + std::to_string(m);
  return p + "*" + body;
}

PolarChain make_chain(std::shared_ptr<const Space> ambient) {
  if (!ambient) fail("UnknownSpace", "chain needs an ambient space");
  if (ambient->kind == SpaceKind::Curve)
    fail("UnknownSpace", "abstract curve entries carry no chart atlas");
  PolarChain c;
  c.ambient = std::move(ambient);
  return c;
}

void add_chain_term(PolarChain& c, SubvarietyPres v, Morphism m, DifferentialForm f,
                    const TauScalar& coeff) {
  const Space& X = *c.ambient;
  if (v.kind == SubvarietyPres::Kind::Hyp) v = hyp_as_graph(X, v);

  if (m.kind == Morphism::Kind::SelfMapOfLine) {
    if (v.kind != SubvarietyPres::Kind::Whole || X.name != "P1")
      fail("NotChainAdmissible", "self-map terms only make sense on the whole line");
    make_line_map(m.F); // validates the map
    m.var = "z";
  }

  switch (v.kind) {
    case SubvarietyPres::Kind::Whole: {
      if (!f.space || f.space->name != X.name || f.space->dim != X.dim)
        fail("ChartMismatch", "form for a whole-space term must live on " + X.name);
      if (f.degree != X.dim)
        fail("NotTopDegree", "whole-space term needs a top-degree form");
      auto rep = validate_chain_form(f, X.dim);
      if (!rep.ok) fail("NotChainAdmissible", joined(rep.issues));
      break;
    }
    case SubvarietyPres::Kind::Graph: {
      v = make_graph(X, v.chart, v.params, v.assign, /*require_full_rank=*/false);
      if (!f.space || f.space->chart(0).coords != v.params)
        fail("ChartMismatch", "form for a graph term must be written in its parameters");
      if (f.degree != (int)v.params.size())
        fail("NotTopDegree", "graph term needs a top-degree form in its parameters");
      auto rep = validate_chain_form(f, f.degree);
      if (!rep.ok) fail("NotChainAdmissible", joined(rep.issues));
      break;
    }
    case SubvarietyPres::Kind::Point: {
      v.pt = canonical_point(X, v.pt);
      if (f.degree != 0) fail("NotTopDegree", "point term carries a 0-form value");
      if (!f.poles.empty()) fail("NotChainAdmissible", "point values carry no poles");
      TauScalar a;
      for (auto& [idx, co] : f.terms) {
        if (!co.is_constant())
          fail("NotChainAdmissible", "point value must be a constant scalar: " + co.str());
        a = co.constant_value();
      }
      f = make_form(c.ambient, v.pt.chart, 0);
      if (!a.is_zero()) add_form_term(f, {}, rf_const(a));
      break;
    }
    case SubvarietyPres::Kind::Hyp: break; // converted above
  }

  PrimeChain t;
  t.variety = std::move(v);
  t.morphism = std::move(m);
  t.form = std::move(f);
  t.coeff = coeff;
  c.terms.push_back(std::move(t));
}

PolarChain normalize(const PolarChain& c) {
  const Space& X = *c.ambient;
  PolarChain out = make_chain(c.ambient);
  for (auto t : c.terms) {
    if (t.form.is_zero()) continue;
    if (!t.coeff.is_one()) {
      t.form = form_scale(t.form, rf_const(t.coeff));
      t.coeff = TauScalar(1);
    }
    if (t.morphism.kind == Morphism::Kind::SelfMapOfLine) {
      if (t.form.chart != 0) t.form = transition_form(t.form, 0);
      t.form = pushforward_line(make_line_map(t.morphism.F), t.form);
      t.morphism = Morphism{};
      if (t.form.is_zero()) continue;
    }
    if (t.variety.kind == SubvarietyPres::Kind::Graph && !graph_rank_ok(X, t.variety))
      continue; // collapsed parametrization: the image is lower-dimensional

    bool merged = false;
    for (auto& u : out.terms) {
      if (u.form.degree != t.form.degree) continue;
      if (!same_morphism(u.morphism, t.morphism)) continue;
      if (!same_presentation(X, u.variety, t.variety)) continue;
      DifferentialForm g = t.form;
      if (g.chart != u.form.chart) g = transition_form(g, u.form.chart);
      u.form = form_add(u.form, g);
      merged = true;
      break;
    }
    if (!merged) out.terms.push_back(std::move(t));
  }
  std::erase_if(out.terms, [](const PrimeChain& t) { return t.form.is_zero(); });
  sort_terms(X, out.terms);
  return out;
}

PolarChain chain_add(const PolarChain& a, const PolarChain& b) {
  if (a.ambient->name != b.ambient->name)
    fail("ChartMismatch",
         "chains live on different spaces: " + a.ambient->name + " vs " + b.ambient->name);
  PolarChain c = a;
  for (auto& t : b.terms) c.terms.push_back(t);
  return normalize(c);
}

PolarChain chain_scale(const PolarChain& a, const TauScalar& s) {
  PolarChain c = a;
  for (auto& t : c.terms) t.coeff = t.coeff * s;
  return normalize(c);
}

bool chain_equal(const PolarChain& a0, const PolarChain& b0) {
  PolarChain a = normalize(a0), b = normalize(b0);
  if (a.ambient->name != b.ambient->name) return false;
  const Space& X = *a.ambient;

  std::vector<PrimeChain> left = b.terms;
  for (auto& t : a.terms) {
    int yes = -1;
    bool fuzzy = false;
    std::string fz;
    for (size_t j = 0; j < left.size(); ++j) {
      if (!same_morphism(t.morphism, left[j].morphism)) continue;
      if (t.variety.kind != left[j].variety.kind) continue;
      if (t.variety.kind == SubvarietyPres::Kind::Graph) {
        Tri s = graphs_same(X, t.variety, left[j].variety);
        if (s == Tri::Yes) {
          yes = (int)j;
          break;
        }
        if (s == Tri::Unknown) {
          fuzzy = true;
          fz = left[j].variety.str(X);
        }
        continue;
      }
      if (same_presentation(X, t.variety, left[j].variety)) {
        yes = (int)j;
        break;
      }
    }
    if (yes < 0) {
      if (fuzzy)
        fail("IncomparablePresentations",
             "cannot decide whether " + t.variety.str(X) + " equals " + fz);
      return false;
    }

    DifferentialForm other = left[(size_t)yes].form;
    if (t.variety.kind == SubvarietyPres::Kind::Graph &&
        left[(size_t)yes].variety.params != t.variety.params) {
      /* positional parameter rename; equality compares coefficients only */
      if (other.chart != 0) other = transition_form(other, 0);
      std::map<std::string, RationalFunction> ren;
      const auto& bp = left[(size_t)yes].variety.params;
      for (size_t i = 0; i < bp.size(); ++i)
        ren[bp[i]] = RationalFunction::var(t.variety.params[i]);
      other = pullback_form(other, Space::param_space(t.variety.params), 0, ren);
    }
    DifferentialForm mine = t.form;
    if (mine.chart != other.chart) other = transition_form(other, mine.chart);
    if (!form_equal(mine, other)) return false;
    left.erase(left.begin() + yes);
  }
  return left.empty();
}

PolarChain boundary(const PolarChain& c0) {
  PolarChain c = normalize(c0);
  PolarChain out = make_chain(c.ambient);
  RationalFunction tau_c = rf_const(TauScalar::tau(1));
  for (auto& t : c.terms) {
    int k = t.form.degree;
    if (k == 0) continue;
    require_chain_admissible(t.form, k);
    for (auto& e : residue_all(t.form)) {
      if (e.form.is_zero()) continue;
      if (k == 1) {
        split_points(c.ambient, t, e, tau_c, out);
      } else {
        PrimeChain ch = graph_child(c.ambient, t, e);
        ch.form = form_scale(ch.form, tau_c);
        out.terms.push_back(std::move(ch));
      }
    }
  }
  return normalize(out);
}

PolarChain boundary_squared(const PolarChain& c) { return boundary(boundary(c)); }

SubvarietyPres pole_support(const Space& X, const PoleComponent& q) {
  for (int c = 0; c < X.chart_count(); ++c) {
    auto le = q.local_equation(X, c);
    if (le) return make_hyp(X, c, *le);
  }
  fail("InternalError", "pole component invisible in every chart: " + q.str());
}

PolarChain reduce_relative(const PolarChain& c0, const RelativeContext& ctx) {
  PolarChain c = normalize(c0);
  const Space& X = *c.ambient;
  PolarChain out = make_chain(c.ambient);
  for (auto& t : c.terms) {
    bool dropped = false, fuzzy = false;
    std::string fz;
    for (auto& z : ctx.members) {
      Tri v = contained_in(X, t.variety, z);
      if (v == Tri::Yes) {
        dropped = true;
        break;
      }
      if (v == Tri::Unknown && fz.empty()) {
        fuzzy = true;
        fz = z.str(X);
      }
    }
    if (dropped) continue;
    if (fuzzy)
      fail("UndecidableContainment",
           "cannot decide whether " + t.variety.str(X) + " lies in " + fz);
    out.terms.push_back(t);
  }
  return normalize(out);
}

TauScalar hp0_class(const PolarChain& c0) {
  PolarChain c = normalize(c0);
  TauScalar s;
  for (auto& t : c.terms) {
    if (t.variety.kind != SubvarietyPres::Kind::Point || t.form.degree != 0)
      fail("NotChainAdmissible", "class evaluation needs a 0-chain of points");
    for (auto& [idx, co] : t.form.terms) {
      if (!co.is_constant())
        fail("NotChainAdmissible", "point value is not constant: " + co.str());
      s = s + co.constant_value();
    }
  }
  return s;
}

std::string HomologyReport::str() const {
  std::ostringstream os;
  os << space << ":";
  for (auto& [k, d] : dims) os << " HP" << k << "=" << d;
  os << " euler=" << euler.get_str();
  return os.str();
}

HomologyReport hp_report(const Space& X) {
  HomologyReport r;
  r.space = X.name;
  r.dims[0] = 1;
  if (X.kind == SpaceKind::Curve) {
    r.dims[1] = X.genus;
    r.euler = Rational(1) - Rational(X.genus);
  } else {
    for (int k = 1; k <= X.dim; ++k) r.dims[k] = 0;
    r.euler = 1;
  }
  return r;
}

PolarChain push_chain(const PolarChain& c0, const LineMap& f) {
  PolarChain c = normalize(c0);
  const Space& X = *c.ambient;
  if (X.name != "P1")
    fail("NotChainAdmissible", "push-forward along a self-map needs chains on the line");
  PolarChain out = make_chain(c.ambient);
  for (auto& t : c.terms) {
    PrimeChain u = t;
    if (t.variety.kind == SubvarietyPres::Kind::Whole) {
      Morphism m;
      m.kind = Morphism::Kind::SelfMapOfLine;
      m.F = f.map;
      m.var = "z";
      u.morphism = std::move(m);
    } else if (t.variety.kind == SubvarietyPres::Kind::Point) {
      const Point& p = t.variety.pt;
      Point q;
      if (p.chart == 0) {
        try {
          q = Point{0, {expect_gaussian(substitute(f.map, {{"z", rf_const(TauScalar(p.coords[0]))}}))}};
        } catch (const Error& err) {
          if (err.code() != "DivisionByZero") throw;
          q = Point{1, {GaussianRational()}}; // the image lands at infinity
        }
      } else {
        int dn = f.map.num.deg_in("z"), dd = f.map.den.deg_in("z");
        if (dn > dd) {
          q = Point{1, {GaussianRational()}};
        } else {
          GaussianRational lead = expect_gaussian(f.map.num.coeffs_in("z")[(size_t)dn].constant_value() /
                                                  f.map.den.coeffs_in("z")[(size_t)dd].constant_value());
          q = dn < dd ? Point{0, {GaussianRational()}} : Point{0, {lead}};
        }
      }
      q = canonical_point(X, q);
      u.variety = SubvarietyPres::point(q);
      DifferentialForm nf = make_form(c.ambient, q.chart, 0);
      for (auto& [idx, co] : t.form.terms) add_form_term(nf, {}, co);
      u.form = std::move(nf);
    } else {
      fail("NotChainAdmissible", "push-forward supports whole-line and point terms");
    }
    out.terms.push_back(std::move(u));
  }
  return normalize(out);
}

} // namespace polaris
