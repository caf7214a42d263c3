#include "polaris/form.hpp"

#include "polaris/algebra.hpp"
#include "polaris/error.hpp"
#include "polaris/linalg.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace polaris {

std::string PoleComponent::str() const {
  if (at_infinity) return "infinity(" + coord + ")";
  return h.str();
}

std::optional<MultiPoly> PoleComponent::local_equation(const Space& X, int in_chart) const {
  if (at_infinity) return infinity_in_chart(X, coord, in_chart);
  return hyp_in_chart(X, h, chart, in_chart);
}

bool PoleComponent::same_divisor(const Space& X, const PoleComponent& o) const {
  for (int c = 0; c < X.chart_count(); ++c) {
    auto a = local_equation(X, c);
    auto b = o.local_equation(X, c);
    if (a.has_value() != b.has_value()) return false;
    if (a && !(*a == *b)) return false;
  }
  return true;
}

PoleComponent finite_pole(const Space& X, int chart, const MultiPoly& h) {
  SubvarietyPres pres = make_hyp(X, chart, h);
  PoleComponent pc;
  pc.chart = chart;
  pc.h = pres.h;
  pc.var = pres.hvar;
  return pc;
}

PoleComponent infinity_pole(const Space& X, const std::string& coord) {
  if (!is_infinity_coord(X, coord))
    fail("BadInfinityCoordinate", coord + " has no infinity divisor in " + X.name);
  PoleComponent pc;
  pc.at_infinity = true;
  pc.coord = coord;
  return pc;
}

DifferentialForm make_form(std::shared_ptr<const Space> space, int chart, int degree) {
  DifferentialForm f;
  f.space = std::move(space);
  f.chart = chart;
  f.degree = degree;
  return f;
}

void add_form_term(DifferentialForm& f, std::vector<int> idx, const RationalFunction& coeff) {
  if ((int)idx.size() != f.degree) fail("InternalError", "term arity != form degree");
  if (coeff.is_zero()) return;
  int sign = 1;
  for (size_t i = 0; i + 1 < idx.size(); ++i)
    for (size_t j = 0; j + 1 < idx.size() - i; ++j) {
      if (idx[j] == idx[j + 1]) return; // dx^dx
      if (idx[j] > idx[j + 1]) {
        std::swap(idx[j], idx[j + 1]);
        sign = -sign;
      }
    }
  for (size_t i = 0; i + 1 < idx.size(); ++i)
    if (idx[i] == idx[i + 1]) return;
  RationalFunction c = sign < 0 ? -coeff : coeff;
  auto it = f.terms.find(idx);
  if (it == f.terms.end()) {
    f.terms.emplace(std::move(idx), c);
  } else {
    it->second = it->second + c;
    if (it->second.is_zero()) f.terms.erase(it);
  }
}

namespace {

void merge_poles(const Space& X, std::vector<PoleComponent>& into,
                 const std::vector<PoleComponent>& from) {
  for (auto& pc : from) {
    bool dup = false;
    for (auto& q : into) dup |= q.same_divisor(X, pc);
    if (!dup) into.push_back(pc);
  }
}

} // namespace

DifferentialForm form_add(const DifferentialForm& a, const DifferentialForm& b) {
  if (a.space->name != b.space->name || a.chart != b.chart)
    fail("ChartMismatch", "adding forms from different charts");
  if (a.degree != b.degree) fail("InternalError", "adding forms of different degree");
  DifferentialForm out = a;
  for (auto& [idx, c] : b.terms) add_form_term(out, idx, c);
  merge_poles(*a.space, out.poles, b.poles);
  return out;
}

DifferentialForm form_scale(const DifferentialForm& a, const RationalFunction& c) {
  DifferentialForm out = make_form(a.space, a.chart, a.degree);
  out.poles = a.poles;
  if (c.is_zero()) return out;
  for (auto& [idx, t] : a.terms) out.terms.emplace(idx, t * c);
  return out;
}

DifferentialForm form_neg(const DifferentialForm& a) {
  return form_scale(a, RationalFunction(-1));
}

DifferentialForm wedge(const DifferentialForm& a, const DifferentialForm& b) {
  if (a.space->name != b.space->name || a.chart != b.chart)
    fail("ChartMismatch", "wedging forms from different charts");
  DifferentialForm out = make_form(a.space, a.chart, a.degree + b.degree);
  for (auto& [ia, ca] : a.terms)
    for (auto& [ib, cb] : b.terms) {
      std::vector<int> idx = ia;
      idx.insert(idx.end(), ib.begin(), ib.end());
      add_form_term(out, std::move(idx), ca * cb);
    }
  out.poles = a.poles;
  merge_poles(*a.space, out.poles, b.poles);
  return out;
}

bool form_equal(const DifferentialForm& a, const DifferentialForm& b) {
  if (a.space->name != b.space->name || a.chart != b.chart || a.degree != b.degree) return false;
  return a.terms == b.terms;
}

namespace {

void increasing_tuples(int n, int p, std::vector<int>& cur,
                       const std::function<void(const std::vector<int>&)>& emit) {
  if ((int)cur.size() == p) {
    emit(cur);
    return;
  }
  int lo = cur.empty() ? 0 : cur.back() + 1;
  for (int i = lo; i < n; ++i) {
    cur.push_back(i);
    increasing_tuples(n, p, cur, emit);
    cur.pop_back();
  }
}

} // namespace

DifferentialForm pullback_form(const DifferentialForm& f, std::shared_ptr<const Space> target,
                               int target_chart,
                               const std::map<std::string, RationalFunction>& sub) {
  const auto& scs = f.space->chart(f.chart).coords;
  const auto& tcs = target->chart(target_chart).coords;
  for (auto& c : scs)
    if (!sub.count(c)) fail("InternalError", "pullback substitution misses coordinate " + c);
  std::vector<std::vector<RationalFunction>> jac(scs.size());
  for (size_t i = 0; i < scs.size(); ++i) {
    jac[i].resize(tcs.size());
    for (size_t j = 0; j < tcs.size(); ++j) jac[i][j] = sub.at(scs[i]).derivative(tcs[j]);
  }
  DifferentialForm out = make_form(std::move(target), target_chart, f.degree);
  int p = f.degree;
  for (auto& [I, c] : f.terms) {
    RationalFunction cc = substitute(c, sub);
    if (cc.is_zero()) continue;
    std::vector<int> cur;
    increasing_tuples((int)tcs.size(), p, cur, [&](const std::vector<int>& J) {
      Matrix<RationalFunction> M((size_t)p, (size_t)p);
      for (int a = 0; a < p; ++a)
        for (int b = 0; b < p; ++b) M.at((size_t)a, (size_t)b) = jac[(size_t)I[(size_t)a]][(size_t)J[(size_t)b]];
      RationalFunction d = det(M);
      if (!d.is_zero()) add_form_term(out, J, cc * d);
    });
  }
  return out;
}

DifferentialForm transition_form(const DifferentialForm& f, int to_chart) {
  if (f.chart == to_chart) return f;
  DifferentialForm out =
      pullback_form(f, f.space, to_chart, f.space->trans[(size_t)f.chart][(size_t)to_chart]);
  out.poles = f.poles;
  return out;
}

DifferentialForm restrict_form(const DifferentialForm& f, const MultiPoly& h,
                               const std::string& v) {
  const Space& X = *f.space;
  int vidx = X.coord_pos(f.chart, v);
  if (vidx < 0) fail("InternalError", "restriction variable " + v + " not in chart");
  const auto& cs = X.chart(f.chart).coords;
  MultiPoly hv = h.derivative(v);
  auto reduce = [&](const RationalFunction& r) -> RationalFunction {
    try {
      return reduce_rf_mod(r, h, v);
    } catch (const Error& e) {
      if (e.code() == "NonInvertibleDenominator")
        fail("PoleOnRestrictionLocus",
             std::string("denominator vanishes on the restriction locus: ") + e.what());
      throw;
    }
  };
  DifferentialForm out = make_form(f.space, f.chart, f.degree);
  for (auto& [I, c] : f.terms) {
    /* the coefficient must itself restrict; a pole along the locus is fatal even
       when the dv expansion leaves nothing behind */
    RationalFunction cr = reduce(c);
    auto pos = std::find(I.begin(), I.end(), vidx);
    if (pos == I.end()) {
      add_form_term(out, I, cr);
      continue;
    }
    size_t t = (size_t)(pos - I.begin());
    for (size_t k = 0; k < cs.size(); ++k) {
      if ((int)k == vidx) continue;
      MultiPoly hk = h.derivative(cs[k]);
      if (hk.is_zero()) continue;
      std::vector<int> J = I;
      J[t] = (int)k;
      add_form_term(out, std::move(J),
                    reduce(-(cr * RationalFunction(hk)) / RationalFunction(hv)));
    }
  }
  out.poles = f.poles;
  return out;
}

TauScalar eval_form(const DifferentialForm& f, const Point& P,
                    const std::vector<std::vector<GaussianRational>>& frame) {
  if ((int)frame.size() != f.degree) fail("InternalError", "frame size != form degree");
  if (P.chart != f.chart) fail("ChartMismatch", "point and form live in different charts");
  auto env = point_env(*f.space, P);
  TauScalar acc(0);
  int p = f.degree;
  for (auto& [I, c] : f.terms) {
    Matrix<GaussianRational> M((size_t)p, (size_t)p);
    for (int a = 0; a < p; ++a)
      for (int b = 0; b < p; ++b) M.at((size_t)a, (size_t)b) = frame[(size_t)a][(size_t)I[(size_t)b]];
    GaussianRational d = det(M);
    if (d == GaussianRational()) continue;
    acc = acc + c.eval(env) * TauScalar(d);
  }
  return acc;
}

std::string DifferentialForm::str() const {
  if (terms.empty()) return "0";
  const auto& cs = space->chart(chart).coords;
  std::string out;
  bool first = true;
  for (auto& [I, c] : terms) {
    std::string wedge_str;
    for (size_t k = 0; k < I.size(); ++k) {
      if (k) wedge_str += "^";
      wedge_str += "d" + cs[(size_t)I[k]];
    }
    RationalFunction cc = c;
    if (first) {
      first = false;
    } else if (cc.negative_looking()) {
      out += " - ";
      cc = -cc;
    } else {
      out += " + ";
    }
    if (I.empty()) {
      out += cc.str(); // 0-form: bare scalar
      continue;
    }
    if (cc == RationalFunction(1)) {
      out += wedge_str;
    } else if (cc == RationalFunction(-1)) {
      out += "-" + wedge_str;
    } else {
      std::string s = cc.str();
      if (str_needs_product_parens(s)) s = "(" + s + ")";
      out += s + "*" + wedge_str;
    }
  }
  return out;
}

namespace {

struct PairPoints {
  enum class Kind { Empty, Points, Undecidable } kind = Kind::Empty;
  std::vector<Point> pts;
  std::string note;
};

std::vector<GaussianRational> upoly_rational_roots(const UPoly<GaussianRational>& g,
                                                   bool* solvable) {
  using P = UPoly<GaussianRational>;
  *solvable = true;
  if (g.deg() <= 0) return {};
  P red = g / P::gcd(g, g.derivative());
  if (red.deg() == 1) return {-(red.coeff(0) / red.coeff(1))};
  if (red.deg() == 2) {
    GaussianRational a = red.coeff(2), b = red.coeff(1), c = red.coeff(0);
    auto s = sqrt_exact(b * b - GaussianRational(4) * a * c);
    if (!s) {
      *solvable = false;
      return {};
    }
    GaussianRational twoa = GaussianRational(2) * a;
    std::vector<GaussianRational> out{(-b + *s) / twoa};
    if (!(*s == GaussianRational())) out.push_back((-b - *s) / twoa);
    return out;
  }
  *solvable = false;
  return {};
}

UPoly<GaussianRational> gaussian_upoly(const MultiPoly& p, const std::string& v) {
  UPoly<RationalFunction> u = to_upoly(p, v);
  std::vector<GaussianRational> cs;
  for (int i = 0; i <= u.deg(); ++i) cs.push_back(expect_gaussian(u.coeff(i)));
  return UPoly<GaussianRational>::from_coeffs(cs);
}

/* rational common zeros of two coprime polynomials spanning at most two
   variables of the chart; Undecidable when root extraction leaves degree > 2 */
PairPoints common_points(const Space& X, int chart, const MultiPoly& hi, const MultiPoly& hj) {
  PairPoints out;
  const auto& cs = X.chart(chart).coords;
  std::set<std::string> vars = hi.vars();
  for (auto& v : hj.vars()) vars.insert(v);
  if (vars.empty()) return out;
  if (vars.size() > 2) {
    out.kind = PairPoints::Kind::Undecidable;
    out.note = "more than two variables";
    return out;
  }
  auto vi = hi.vars();
  auto vj = hj.vars();
  if (vi.size() == 1 && vj.size() == 1 && *vi.begin() != *vj.begin() && cs.size() > 2) {
    /* separated single-variable components in a 3-dim chart: positive
       dimensional intersection with block gradients; nothing pointwise */
    out.kind = PairPoints::Kind::Empty;
    return out;
  }
  /* solve inside the (at most two) shared variables; remaining chart
     coordinates are free and irrelevant for the rank test */
  std::vector<std::string> vv(vars.begin(), vars.end());
  auto lift_points =
      [&](const std::string& a, const std::vector<GaussianRational>& aroots,
          const std::string& b) {
        for (auto& a0 : aroots) {
          std::map<std::string, RationalFunction> sub{{a, RationalFunction(TauScalar(a0))}};
          MultiPoly gi = substitute(hi, sub).num;
          MultiPoly gj = substitute(hj, sub).num;
          UPoly<GaussianRational> g;
          bool first = true;
          for (const MultiPoly& q : {gi, gj}) {
            if (q.is_constant()) {
              if (!q.is_zero()) {
                first = true; // no common zero above a0
                break;
              }
              continue;
            }
            auto up = gaussian_upoly(q, b);
            g = first ? up : UPoly<GaussianRational>::gcd(g, up);
            first = false;
          }
          if (first || g.deg() < 1) continue;
          bool solvable = false;
          auto broots = upoly_rational_roots(g, &solvable);
          if (!solvable) {
            out.kind = PairPoints::Kind::Undecidable;
            out.note = "fiber roots outside Q(i)";
            return;
          }
          for (auto& b0 : broots) {
            Point P;
            P.chart = chart;
            for (auto& c : cs) {
              if (c == a) P.coords.push_back(a0);
              else if (c == b) P.coords.push_back(b0);
              else P.coords.push_back(GaussianRational());
            }
            out.pts.push_back(std::move(P));
          }
        }
        if (!out.pts.empty() && out.kind != PairPoints::Kind::Undecidable)
          out.kind = PairPoints::Kind::Points;
      };
  if (vars.size() == 1) {
    const std::string& a = vv[0];
    UPoly<GaussianRational> g =
        UPoly<GaussianRational>::gcd(gaussian_upoly(hi, a), gaussian_upoly(hj, a));
    if (g.deg() < 1) return out;
    bool solvable = false;
    auto roots = upoly_rational_roots(g, &solvable);
    if (!solvable) {
      out.kind = PairPoints::Kind::Undecidable;
      out.note = "common roots outside Q(i)";
      return out;
    }
    for (auto& a0 : roots) {
      Point P;
      P.chart = chart;
      for (auto& c : cs) P.coords.push_back(c == a ? a0 : GaussianRational());
      out.pts.push_back(std::move(P));
    }
    if (!out.pts.empty()) out.kind = PairPoints::Kind::Points;
    return out;
  }
  const std::string& a = vv[0];
  const std::string& b = vv[1];
  if (vi.size() == 1) {
    const std::string& va = *vi.begin();
    bool solvable = false;
    auto roots = upoly_rational_roots(gaussian_upoly(hi, va), &solvable);
    if (!solvable) {
      out.kind = PairPoints::Kind::Undecidable;
      out.note = "roots outside Q(i)";
      return out;
    }
    lift_points(va, roots, va == a ? b : a);
    return out;
  }
  if (vj.size() == 1) {
    const std::string& va = *vj.begin();
    bool solvable = false;
    auto roots = upoly_rational_roots(gaussian_upoly(hj, va), &solvable);
    if (!solvable) {
      out.kind = PairPoints::Kind::Undecidable;
      out.note = "roots outside Q(i)";
      return out;
    }
    lift_points(va, roots, va == a ? b : a);
    return out;
  }
  /* both genuinely bivariate: eliminate b, scan rational roots in a */
  MultiPoly r = resultant_in(hi, hj, b);
  if (r.is_constant()) {
    if (!r.is_zero()) return out;
    out.kind = PairPoints::Kind::Undecidable;
    out.note = "vanishing resultant";
    return out;
  }
  MultiPoly rred = mp_exact_div(r, mp_gcd(r, r.derivative(a)));
  bool solvable = false;
  auto roots = upoly_rational_roots(gaussian_upoly(rred, a), &solvable);
  if (!solvable) {
    out.kind = PairPoints::Kind::Undecidable;
    out.note = "eliminant roots outside Q(i)";
    return out;
  }
  lift_points(a, roots, b);
  return out;
}

size_t jacobian_rank_at(const Space& X, int chart, const std::vector<MultiPoly>& eqs,
                        const Point& P) {
  const auto& cs = X.chart(chart).coords;
  auto env = point_env(X, P);
  Matrix<GaussianRational> M(eqs.size(), cs.size());
  for (size_t i = 0; i < eqs.size(); ++i)
    for (size_t j = 0; j < cs.size(); ++j)
      M.at(i, j) = expect_gaussian(eqs[i].derivative(cs[j]).eval(env));
  return rank(M);
}

} // namespace

FormReport validate_chain_form(const DifferentialForm& f, int expected_degree) {
  FormReport rep;
  auto issue = [&](std::string s) {
    rep.ok = false;
    rep.issues.push_back(std::move(s));
  };
  const Space& X = *f.space;
  if (f.degree != expected_degree)
    issue("degree " + std::to_string(f.degree) + ", expected " + std::to_string(expected_degree));
  if (X.chart_count() == 0) {
    issue("space " + X.name + " carries no atlas for forms");
    return rep;
  }

  for (size_t i = 0; i < f.poles.size(); ++i)
    for (size_t j = i + 1; j < f.poles.size(); ++j)
      if (f.poles[i].same_divisor(X, f.poles[j]))
        issue("duplicate pole components " + f.poles[i].str() + " and " + f.poles[j].str());

  /* each declared component must itself be smooth */
  for (auto& pc : f.poles) {
    if (pc.at_infinity) continue;
    SmoothReport sr = validate_smooth(X, SubvarietyPres::hyp(pc.chart, pc.h, pc.var));
    if (sr.verdict == SmoothVerdict::Singular)
      issue("pole component " + pc.str() + " is singular: " + sr.detail);
    else if (sr.verdict == SmoothVerdict::Undecidable)
      issue("pole component " + pc.str() + " smoothness undecidable: " + sr.detail);
  }

  /* denominators must divide the squarefree product of declared local
     equations, in every chart: that is exactly first-order poles with no
     undeclared components */
  for (int c = 0; c < X.chart_count(); ++c) {
    DifferentialForm fc = transition_form(f, c);
    MultiPoly prod(1);
    for (auto& pc : f.poles) {
      auto le = pc.local_equation(X, c);
      if (le) prod = prod * *le;
    }
    for (auto& [I, coeff] : fc.terms) {
      if (coeff.den.is_constant()) continue;
      MultiPoly q;
      if (!mp_try_div(prod, coeff.den, &q))
        issue("denominator " + coeff.den.str() + " is not a first-order declared pole in chart " +
              std::to_string(c));
    }
  }

  /* pairwise transversality plus crossing bookkeeping for deeper strata */
  std::vector<std::pair<Point, std::vector<size_t>>> crossings; // canonical point -> comps there
  auto note_crossing = [&](const Point& P) {
    Point cp = canonical_point(X, P);
    for (auto& [q, list] : crossings)
      if (q == cp) return;
    std::vector<size_t> at;
    for (size_t k = 0; k < f.poles.size(); ++k) {
      auto le = f.poles[k].local_equation(X, cp.chart);
      if (le && le->eval(point_env(X, cp)).is_zero()) at.push_back(k);
    }
    crossings.emplace_back(std::move(cp), std::move(at));
  };

  for (size_t i = 0; i < f.poles.size(); ++i)
    for (size_t j = i + 1; j < f.poles.size(); ++j) {
      bool und = false;
      std::string und_note;
      for (int c = 0; c < X.chart_count(); ++c) {
        auto hi = f.poles[i].local_equation(X, c);
        auto hj = f.poles[j].local_equation(X, c);
        if (!hi || !hj) continue;
        if (!mp_gcd(*hi, *hj).is_constant()) {
          issue("pole components " + f.poles[i].str() + " and " + f.poles[j].str() +
                " are not coprime");
          break;
        }
        PairPoints pp = common_points(X, c, *hi, *hj);
        if (pp.kind == PairPoints::Kind::Undecidable) {
          und = true;
          und_note = pp.note;
          continue;
        }
        for (auto& P : pp.pts) {
          if (jacobian_rank_at(X, c, {*hi, *hj}, P) < 2)
            issue("components " + f.poles[i].str() + " and " + f.poles[j].str() +
                  " meet non-transversely at " + point_str(X, P));
          note_crossing(P);
        }
      }
      if (und)
        issue("transversality of " + f.poles[i].str() + " and " + f.poles[j].str() +
              " undecidable: " + und_note);
    }

  if (X.dim == 2) {
    for (auto& [P, at] : crossings)
      if (at.size() >= 3)
        issue("three pole components meet at " + point_str(X, P) +
              ": not a normal crossing in dimension 2");
  } else if (X.dim == 3) {
    /* rank-3 test at triple points; only enumerable for single-variable
       components, which is what top-degree orientation forms use */
    for (size_t i = 0; i < f.poles.size(); ++i)
      for (size_t j = i + 1; j < f.poles.size(); ++j)
        for (size_t k = j + 1; k < f.poles.size(); ++k) {
          for (int c = 0; c < X.chart_count(); ++c) {
            auto hi = f.poles[i].local_equation(X, c);
            auto hj = f.poles[j].local_equation(X, c);
            auto hk = f.poles[k].local_equation(X, c);
            if (!hi || !hj || !hk) continue;
            auto vi = hi->vars();
            auto vj = hj->vars();
            auto vk = hk->vars();
            if (vi.size() == 1 && vj.size() == 1 && vk.size() == 1) {
              std::set<std::string> all;
              all.insert(vi.begin(), vi.end());
              all.insert(vj.begin(), vj.end());
              all.insert(vk.begin(), vk.end());
              /* distinct variables: differentials span rank 3; a repeated
                 variable in coprime components means disjoint loci */
              continue;
            }
            issue("triple crossing of " + f.poles[i].str() + ", " + f.poles[j].str() + ", " +
                  f.poles[k].str() + " undecidable in chart " + std::to_string(c));
            break;
          }
        }
  }
  return rep;
}

} // namespace polaris
