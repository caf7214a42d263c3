#include "polaris/space.hpp"

#include "polaris/algebra.hpp"
#include "polaris/error.hpp"

#include <algorithm>

namespace polaris {

const Chart& Space::chart(int i) const {
  if (i < 0 || i >= (int)charts.size()) fail("InternalError", "chart index out of range");
  return charts[(size_t)i];
}

int Space::coord_pos(int chart_idx, const std::string& name) const {
  auto& cs = chart(chart_idx).coords;
  for (size_t j = 0; j < cs.size(); ++j)
    if (cs[j] == name) return (int)j;
  return -1;
}

namespace {

std::shared_ptr<Space> build_product(const std::string& name,
                                     std::vector<std::pair<std::string, std::string>> factors) {
  auto X = std::make_shared<Space>();
  X->kind = SpaceKind::ProductOfLines;
  X->dim = (int)factors.size();
  X->name = name;
  X->factors = std::move(factors);
  int m = X->dim;
  int nc = 1 << m;
  for (int c = 0; c < nc; ++c) {
    Chart ch;
    ch.index = c;
    for (int f = 0; f < m; ++f)
      ch.coords.push_back(((c >> f) & 1) ? X->factors[f].second : X->factors[f].first);
    X->charts.push_back(std::move(ch));
  }
  X->trans.assign(nc, std::vector<std::map<std::string, RationalFunction>>((size_t)nc));
  for (int a = 0; a < nc; ++a)
    for (int b = 0; b < nc; ++b)
      for (int f = 0; f < m; ++f) {
        const std::string& na = X->charts[(size_t)a].coords[(size_t)f];
        const std::string& nb = X->charts[(size_t)b].coords[(size_t)f];
        X->trans[(size_t)a][(size_t)b][na] = (((a ^ b) >> f) & 1)
                                                 ? RationalFunction(1) / RationalFunction::var(nb)
                                                 : RationalFunction::var(nb);
      }
  return X;
}

std::shared_ptr<Space> build_proj(int n) {
  static const std::vector<std::vector<std::string>> names2 = {{"x", "y"}, {"u", "v"}, {"s", "t"}};
  static const std::vector<std::vector<std::string>> names3 = {
      {"x", "y", "z"}, {"u", "v", "w"}, {"s", "t", "r"}, {"m", "n", "o"}};
  const auto& names = (n == 2) ? names2 : names3;
  auto X = std::make_shared<Space>();
  X->kind = SpaceKind::ProjSpace;
  X->dim = n;
  X->name = "P" + std::to_string(n);
  for (int i = 0; i <= n; ++i) {
    Chart ch;
    ch.index = i;
    ch.coords = names[(size_t)i];
    X->charts.push_back(std::move(ch));
  }
  /* chart i of Pn holds the affine ratios X_k/X_i, k != i, ascending k */
  auto homog = [](int i, int j) { return j < i ? j : j + 1; };
  auto ratio = [&](int b, int k) -> RationalFunction {
    if (k == b) return RationalFunction(1);
    int pos = k < b ? k : k - 1;
    return RationalFunction::var(names[(size_t)b][(size_t)pos]);
  };
  int nc = n + 1;
  X->trans.assign((size_t)nc, std::vector<std::map<std::string, RationalFunction>>((size_t)nc));
  for (int a = 0; a < nc; ++a)
    for (int b = 0; b < nc; ++b)
      for (int j = 0; j < n; ++j) {
        int k = homog(a, j);
        X->trans[(size_t)a][(size_t)b][names[(size_t)a][(size_t)j]] = ratio(b, k) / ratio(b, a);
      }
  return X;
}

} // namespace

std::shared_ptr<const Space> Space::catalog(const std::string& literal) {
  static const std::map<std::string, std::shared_ptr<const Space>> table = [] {
    std::map<std::string, std::shared_ptr<const Space>> t;
    t["P1"] = build_product("P1", {{"z", "w"}});
    t["P1xP1"] = build_product("P1xP1", {{"x", "u"}, {"y", "v"}});
    t["P1xP1xP1"] = build_product("P1xP1xP1", {{"x", "u"}, {"y", "v"}, {"z", "w"}});
    t["P2"] = build_proj(2);
    t["P3"] = build_proj(3);
    return t;
  }();
  auto it = table.find(literal);
  if (it == table.end()) fail("UnknownSpace", "unknown space literal: " + literal);
  return it->second;
}

std::shared_ptr<const Space> Space::curve(int genus) {
  if (genus < 0) fail("UnknownSpace", "negative genus");
  auto X = std::make_shared<Space>();
  X->kind = SpaceKind::Curve;
  X->dim = 1;
  X->genus = genus;
  X->name = "curve(" + std::to_string(genus) + ")";
  return X;
}

std::shared_ptr<const Space> Space::param_space(const std::vector<std::string>& params) {
  std::vector<std::pair<std::string, std::string>> fs;
  for (auto& p : params) fs.emplace_back(p, p + "~");
  return build_product("params", std::move(fs));
}

std::map<std::string, GaussianRational> point_env(const Space& X, const Point& P) {
  const auto& cs = X.chart(P.chart).coords;
  if (cs.size() != P.coords.size()) fail("InternalError", "point arity mismatch");
  std::map<std::string, GaussianRational> env;
  for (size_t j = 0; j < cs.size(); ++j) env[cs[j]] = P.coords[j];
  return env;
}

GaussianRational expect_gaussian(const TauScalar& s) {
  if (!s.is_rational_constant())
    fail("NonRationalCoordinate", "coordinate value involves 2πi: " + s.str());
  return s.num.coeff(0);
}

GaussianRational expect_gaussian(const RationalFunction& f) {
  if (!f.is_constant())
    fail("NonRationalCoordinate", "coordinate value is not constant: " + f.str());
  return expect_gaussian(f.constant_value());
}

Point transition_point(const Space& X, const Point& P, int to_chart) {
  if (P.chart == to_chart) return P;
  auto env = point_env(X, P);
  const auto& tab = X.trans[(size_t)to_chart][(size_t)P.chart];
  Point q;
  q.chart = to_chart;
  for (auto& name : X.chart(to_chart).coords) {
    try {
      q.coords.push_back(expect_gaussian(tab.at(name).eval(env)));
    } catch (const Error& e) {
      if (e.code() == "PoleAtPoint")
        fail("OutOfOverlap", point_str(X, P) + " has no finite image in chart " +
                                 std::to_string(to_chart));
      throw;
    }
  }
  return q;
}

Point canonical_point(const Space& X, const Point& P) {
  for (int d = 0; d < X.chart_count(); ++d) {
    try {
      return transition_point(X, P, d);
    } catch (const Error&) {
      continue;
    }
  }
  fail("InternalError", "point not finite in any chart");
}

bool same_point(const Space& X, const Point& P, const Point& Q) {
  return canonical_point(X, P) == canonical_point(X, Q);
}

std::string point_str(const Space& X, const Point& P) {
  (void)X;
  std::string out = "point(";
  for (size_t j = 0; j < P.coords.size(); ++j) {
    if (j) out += ", ";
    out += P.coords[j].str();
  }
  out += ")";
  if (P.chart != 0) out += "@" + std::to_string(P.chart);
  return out;
}

int SubvarietyPres::dim(const Space& X) const {
  switch (kind) {
    case Kind::Point: return 0;
    case Kind::Graph: return (int)params.size();
    case Kind::Hyp: return X.dim - 1;
    case Kind::Whole: return X.dim;
  }
  return 0;
}

std::string SubvarietyPres::str(const Space& X) const {
  switch (kind) {
    case Kind::Point: return point_str(X, pt);
    case Kind::Whole: return "whole";
    case Kind::Hyp: return "hyp(" + h.str() + ")" + (chart ? "@" + std::to_string(chart) : "");
    case Kind::Graph: {
      std::string out = "graph(";
      for (size_t j = 0; j < params.size(); ++j) {
        if (j) out += ", ";
        out += params[j];
      }
      out += "; ";
      const auto& cs = X.chart(chart).coords;
      for (size_t j = 0; j < cs.size(); ++j) {
        if (j) out += ", ";
        out += cs[j] + "=" + assign.at(cs[j]).str();
      }
      out += ")";
      if (chart) out += "@" + std::to_string(chart);
      return out;
    }
  }
  return "?";
}

SubvarietyPres SubvarietyPres::point(Point p) {
  SubvarietyPres r;
  r.kind = Kind::Point;
  r.pt = std::move(p);
  return r;
}
SubvarietyPres SubvarietyPres::whole() {
  SubvarietyPres r;
  r.kind = Kind::Whole;
  return r;
}
SubvarietyPres SubvarietyPres::graph(int chart, std::vector<std::string> params,
                                     std::map<std::string, RationalFunction> assign) {
  SubvarietyPres r;
  r.kind = Kind::Graph;
  r.chart = chart;
  r.params = std::move(params);
  r.assign = std::move(assign);
  return r;
}
SubvarietyPres SubvarietyPres::hyp(int chart, MultiPoly h, std::string hvar) {
  SubvarietyPres r;
  r.kind = Kind::Hyp;
  r.chart = chart;
  r.h = std::move(h);
  r.hvar = std::move(hvar);
  return r;
}

namespace {

bool tau_free(const MultiPoly& p) {
  for (auto& [m, c] : p.t)
    if (!c.is_rational_constant()) return false;
  return true;
}
bool tau_free(const RationalFunction& f) { return tau_free(f.num) && tau_free(f.den); }

SubvarietyPres reparam(const SubvarietyPres& g, unsigned flip_mask) {
  std::map<std::string, RationalFunction> sub;
  for (size_t j = 0; j < g.params.size(); ++j)
    if ((flip_mask >> j) & 1)
      sub[g.params[j]] = RationalFunction(1) / RationalFunction::var(g.params[j]);
  if (sub.empty()) return g;
  SubvarietyPres r = g;
  for (auto& [c, f] : r.assign) f = substitute(f, sub);
  return r;
}

} // namespace

bool graph_rank_ok(const Space& X, const SubvarietyPres& g) {
  const auto& cs = X.chart(g.chart).coords;
  Matrix<RationalFunction> J(cs.size(), g.params.size());
  for (size_t i = 0; i < cs.size(); ++i)
    for (size_t j = 0; j < g.params.size(); ++j)
      J.at(i, j) = g.assign.at(cs[i]).derivative(g.params[j]);
  return rank(J) == g.params.size();
}

SubvarietyPres make_graph(const Space& X, int chart, std::vector<std::string> params,
                          std::map<std::string, RationalFunction> assign, bool require_full_rank) {
  if (params.empty()) fail("DegenerateGraph", "a graph needs at least one parameter");
  if ((int)params.size() > X.dim) fail("DegenerateGraph", "more parameters than ambient dimensions");
  for (size_t j = 0; j < params.size(); ++j) {
    for (size_t k = j + 1; k < params.size(); ++k)
      if (params[j] == params[k]) fail("DegenerateGraph", "duplicate parameter " + params[j]);
    for (auto& ch : X.charts)
      for (auto& c : ch.coords)
        if (c == params[j])
          fail("DegenerateGraph", "parameter " + params[j] + " collides with a chart coordinate");
  }
  const auto& cs = X.chart(chart).coords;
  if (assign.size() != cs.size()) fail("DegenerateGraph", "graph must assign every chart coordinate");
  for (auto& c : cs) {
    auto it = assign.find(c);
    if (it == assign.end()) fail("DegenerateGraph", "missing assignment for coordinate " + c);
    const RationalFunction& f = it->second;
    if (!tau_free(f)) fail("NonRationalCoordinate", "graph assignment involves 2πi: " + f.str());
    auto vs = f.vars();
    if (vs.size() > 1)
      fail("NonExtendableGraph",
           "assignment " + c + "=" + f.str() + " depends on more than one parameter");
    for (auto& v : vs) {
      bool known = false;
      for (auto& p : params) known |= (p == v);
      if (!known) fail("DegenerateGraph", "assignment uses undeclared symbol " + v);
    }
  }
  SubvarietyPres g = SubvarietyPres::graph(chart, std::move(params), std::move(assign));
  if (require_full_rank && !graph_rank_ok(X, g))
    fail("DegenerateGraph", "parametrization Jacobian drops rank");
  return g;
}

SubvarietyPres make_hyp(const Space& X, int chart, const MultiPoly& h_in) {
  if (h_in.is_zero() || h_in.is_constant())
    fail("DegenerateHypersurface", "defining polynomial must be nonconstant");
  if (!tau_free(h_in)) fail("NonRationalCoordinate", "defining polynomial involves 2πi");
  const auto& cs = X.chart(chart).coords;
  for (auto& v : h_in.vars()) {
    bool known = false;
    for (auto& c : cs) known |= (c == v);
    if (!known) fail("DegenerateHypersurface", "unknown coordinate " + v + " in " + h_in.str());
  }
  std::string hvar;
  MultiPoly h = h_in;
  for (auto& c : cs) {
    int d = h.deg_in(c);
    if (d >= 1 && h.coeffs_in(c)[(size_t)d].is_constant()) {
      hvar = c;
      h = make_monic_in(h, c);
      break;
    }
  }
  if (hvar.empty()) h = h.unit_normalized();
  if (!mp_squarefree(h)) fail("NotSquarefree", "defining polynomial is not squarefree: " + h.str());
  return SubvarietyPres::hyp(chart, std::move(h), std::move(hvar));
}

std::optional<MultiPoly> hyp_in_chart(const Space& X, const MultiPoly& h, int from, int to) {
  if (from == to) return h.unit_normalized();
  RationalFunction f = substitute(h, X.trans[(size_t)from][(size_t)to]);
  if (f.num.is_constant()) return std::nullopt;
  return f.num.unit_normalized();
}

bool is_infinity_coord(const Space& X, const std::string& coord) {
  if (X.kind == SpaceKind::ProductOfLines) {
    for (auto& f : X.factors)
      if (f.first == coord) return true;
    return false;
  }
  if (X.kind == SpaceKind::ProjSpace) return X.coord_pos(0, coord) >= 0;
  return false;
}

std::optional<MultiPoly> infinity_in_chart(const Space& X, const std::string& coord, int chart) {
  if (!is_infinity_coord(X, coord))
    fail("BadInfinityCoordinate", coord + " has no infinity divisor in " + X.name);
  if (X.kind == SpaceKind::ProductOfLines) {
    for (size_t f = 0; f < X.factors.size(); ++f)
      if (X.factors[f].first == coord) {
        if ((chart >> f) & 1) return MultiPoly::var(X.factors[f].second);
        return std::nullopt;
      }
  }
  /* Pn: the hyperplane X_0 = 0, visible in every chart but the zeroth as the
     vanishing of that chart's first coordinate */
  if (chart == 0) return std::nullopt;
  return MultiPoly::var(X.chart(chart).coords[0]);
}

std::optional<SubvarietyPres> graph_in_chart(const Space& X, const SubvarietyPres& g, int to) {
  if (g.kind != SubvarietyPres::Kind::Graph) fail("InternalError", "graph_in_chart on non-graph");
  if (g.chart == to) return g;
  SubvarietyPres r = SubvarietyPres::graph(to, g.params, {});
  for (auto& name : X.chart(to).coords) {
    RationalFunction comp;
    try {
      comp = substitute(X.trans[(size_t)to][(size_t)g.chart].at(name), g.assign);
    } catch (const Error&) {
      return std::nullopt;
    }
    if (comp.vars().size() > 1) return std::nullopt;
    r.assign[name] = comp;
  }
  if (!graph_rank_ok(X, r)) return std::nullopt;
  return r;
}

UPoly<GaussianRational> to_gaussian_upoly(const MultiPoly& p, const std::string& v) {
  UPoly<RationalFunction> u = to_upoly(p, v);
  std::vector<GaussianRational> cs;
  for (int i = 0; i <= u.deg(); ++i) cs.push_back(expect_gaussian(u.coeff(i)));
  return UPoly<GaussianRational>::from_coeffs(cs);
}

std::vector<GaussianRational> rational_roots_up_to_quadratic(UPoly<GaussianRational> g,
                                                             bool* solvable) {
  using P = UPoly<GaussianRational>;
  *solvable = true;
  P red = g / P::gcd(g, g.derivative());
  if (red.deg() == 1) return {-(red.coeff(0) / red.coeff(1))};
  if (red.deg() == 2) {
    GaussianRational a = red.coeff(2), b = red.coeff(1), c = red.coeff(0);
    GaussianRational disc = b * b - GaussianRational(4) * a * c;
    auto s = sqrt_exact(disc);
    if (!s) {
      *solvable = false;
      return {};
    }
    GaussianRational twoa = GaussianRational(2) * a;
    std::vector<GaussianRational> roots{(-b + *s) / twoa};
    if (!(*s == GaussianRational())) roots.push_back((-b - *s) / twoa);
    return roots;
  }
  *solvable = false;
  return {};
}

namespace {

/* Per-parameter root candidates for view(params) = target coordinates.
   Separability: each coordinate constrains at most one parameter, so the
   system splits.  on_graph is decided over C via gcd degrees; values demand
   Q(i) roots. */
struct GraphSolve {
  bool on_graph = false;
  bool values_ok = false;
  std::vector<GaussianRational> vals;
};

GraphSolve solve_graph_view(const Space& X, const SubvarietyPres& view, const Point& Pd) {
  GraphSolve out;
  auto env = point_env(X, Pd);
  const auto& cs = X.chart(view.chart).coords;
  /* constant assignments must match outright */
  for (size_t j = 0; j < cs.size(); ++j) {
    const RationalFunction& f = view.assign.at(cs[j]);
    if (f.is_constant() && !(expect_gaussian(f) == env[cs[j]])) return out;
  }
  out.on_graph = true;
  out.values_ok = true;
  for (auto& p : view.params) {
    UPoly<GaussianRational> g;
    bool first = true;
    for (size_t j = 0; j < cs.size(); ++j) {
      const RationalFunction& f = view.assign.at(cs[j]);
      if (!f.contains_var(p)) continue;
      MultiPoly numer = f.num - f.den.scaled(TauScalar(env[cs[j]]));
      UPoly<GaussianRational> c = to_gaussian_upoly(numer, p);
      g = first ? c : UPoly<GaussianRational>::gcd(g, c);
      first = false;
    }
    if (first) fail("InternalError", "parameter " + p + " constrains nothing");
    if (g.deg() <= 0) {
      out.on_graph = false;
      out.values_ok = false;
      return out;
    }
    bool solvable = false;
    auto roots = rational_roots_up_to_quadratic(g, &solvable);
    if (!solvable) {
      out.values_ok = false;
      continue;
    }
    if (roots.size() > 1) {
      /* two distinct rational preimages: the parametrization is multivalued
         over this point; refuse to pick a branch */
      fail("MultivaluedParameter",
           "two parameter preimages over " + point_str(X, Pd) + " for " + p);
    }
    out.vals.push_back(roots[0]);
  }
  return out;
}

} // namespace

std::optional<std::pair<std::vector<GaussianRational>, unsigned>> graph_params_at(
    const Space& X, const SubvarietyPres& g, const Point& P) {
  bool seen_on_graph = false;
  for (unsigned mask = 0; mask < (1u << g.params.size()); ++mask) {
    SubvarietyPres gg = reparam(g, mask);
    for (int d = 0; d < X.chart_count(); ++d) {
      Point Pd;
      try {
        Pd = transition_point(X, P, d);
      } catch (const Error&) {
        continue;
      }
      auto view = graph_in_chart(X, gg, d);
      if (!view) continue;
      GraphSolve s = solve_graph_view(X, *view, Pd);
      if (s.on_graph && s.values_ok) return std::make_pair(s.vals, mask);
      seen_on_graph |= s.on_graph;
    }
  }
  if (seen_on_graph)
    fail("IrrationalIntersection",
         "point lies on the graph only at non-Q(i) parameter values");
  return std::nullopt;
}

Point graph_image(const Space& X, const SubvarietyPres& g,
                  const std::vector<GaussianRational>& vals, unsigned flip_mask) {
  SubvarietyPres gg = reparam(g, flip_mask);
  std::map<std::string, GaussianRational> env;
  for (size_t j = 0; j < g.params.size(); ++j) env[g.params[j]] = vals[j];
  for (int d = 0; d < X.chart_count(); ++d) {
    auto view = graph_in_chart(X, gg, d);
    if (!view) continue;
    Point p;
    p.chart = d;
    bool ok = true;
    for (auto& name : X.chart(d).coords) {
      try {
        p.coords.push_back(expect_gaussian(view->assign.at(name).eval(env)));
      } catch (const Error& e) {
        if (e.code() == "PoleAtPoint") {
          ok = false;
          break;
        }
        throw;
      }
    }
    if (ok) return canonical_point(X, p);
  }
  fail("OutOfOverlap", "graph image invisible in every chart at the given parameters");
}

bool contains_point(const Space& X, const SubvarietyPres& V, const Point& P) {
  switch (V.kind) {
    case SubvarietyPres::Kind::Whole: return true;
    case SubvarietyPres::Kind::Point: return same_point(X, V.pt, P);
    case SubvarietyPres::Kind::Graph: {
      for (unsigned mask = 0; mask < (1u << V.params.size()); ++mask) {
        SubvarietyPres gg = reparam(V, mask);
        for (int d = 0; d < X.chart_count(); ++d) {
          Point Pd;
          try {
            Pd = transition_point(X, P, d);
          } catch (const Error&) {
            continue;
          }
          auto view = graph_in_chart(X, gg, d);
          if (!view) continue;
          try {
            if (solve_graph_view(X, *view, Pd).on_graph) return true;
          } catch (const Error& e) {
            if (e.code() == "MultivaluedParameter") return true;
            throw;
          }
          /* a finite-parameter view never covers the closure points, so a
             miss here only rules out this mask, not membership */
        }
      }
      return false;
    }
    case SubvarietyPres::Kind::Hyp: {
      for (int d = 0; d < X.chart_count(); ++d) {
        Point Pd;
        try {
          Pd = transition_point(X, P, d);
        } catch (const Error&) {
          continue;
        }
        auto hd = hyp_in_chart(X, V.h, V.chart, d);
        if (!hd) continue;
        return hd->eval(point_env(X, Pd)).is_zero();
      }
      return false; // hypersurface invisible in every chart holding P
    }
  }
  return false;
}

std::vector<std::vector<GaussianRational>> tangent_frame(const Space& X,
                                                         const SubvarietyPres& V,
                                                         const Point& P) {
  switch (V.kind) {
    case SubvarietyPres::Kind::Point:
      if (!same_point(X, V.pt, P)) fail("PointNotOnVariety", "frame requested off the point");
      return {};
    case SubvarietyPres::Kind::Whole: {
      std::vector<std::vector<GaussianRational>> basis;
      for (int i = 0; i < X.dim; ++i) {
        std::vector<GaussianRational> e((size_t)X.dim);
        e[(size_t)i] = GaussianRational(1);
        basis.push_back(std::move(e));
      }
      return basis;
    }
    case SubvarietyPres::Kind::Graph: {
      auto pv = graph_params_at(X, V, P);
      if (!pv) fail("PointNotOnVariety", "point is not on the graph");
      auto& [vals, mask] = *pv;
      SubvarietyPres gg = reparam(V, mask);
      auto view = graph_in_chart(X, gg, P.chart);
      if (!view) fail("OutOfOverlap", "graph has no expression in the point's chart");
      std::map<std::string, GaussianRational> env;
      for (size_t j = 0; j < V.params.size(); ++j) env[V.params[j]] = vals[j];
      const auto& cs = X.chart(P.chart).coords;
      std::vector<std::vector<GaussianRational>> cols;
      for (auto& p : view->params) {
        std::vector<GaussianRational> col;
        for (auto& c : cs) {
          try {
            col.push_back(expect_gaussian(view->assign.at(c).derivative(p).eval(env)));
          } catch (const Error& e) {
            if (e.code() == "PoleAtPoint")
              fail("OutOfOverlap", "tangent direction not finite in this chart");
            throw;
          }
        }
        cols.push_back(std::move(col));
      }
      Matrix<GaussianRational> M = Matrix<GaussianRational>::from_rows(cols);
      if (rank(M) != cols.size()) fail("SingularPoint", "parametrization Jacobian drops rank at P");
      return cols;
    }
    case SubvarietyPres::Kind::Hyp: {
      auto hd = hyp_in_chart(X, V.h, V.chart, P.chart);
      if (!hd) fail("PointNotOnVariety", "hypersurface misses the point's chart");
      auto env = point_env(X, P);
      if (!hd->eval(env).is_zero()) fail("PointNotOnVariety", "point is off the hypersurface");
      const auto& cs = X.chart(P.chart).coords;
      std::vector<GaussianRational> grad;
      for (auto& c : cs) grad.push_back(expect_gaussian(hd->derivative(c).eval(env)));
      int pivot = -1;
      for (size_t j = 0; j < cs.size(); ++j)
        if (!(grad[j] == GaussianRational())) {
          pivot = (int)j;
          break;
        }
      if (pivot < 0) fail("SingularPoint", "all partial derivatives vanish at P");
      std::vector<std::vector<GaussianRational>> basis;
      for (size_t j = 0; j < cs.size(); ++j) {
        if ((int)j == pivot) continue;
        std::vector<GaussianRational> v(cs.size());
        v[j] = GaussianRational(1);
        v[(size_t)pivot] = -(grad[j] / grad[(size_t)pivot]);
        basis.push_back(std::move(v));
      }
      return basis;
    }
  }
  fail("InternalError", "unreachable");
}

namespace {

SmoothReport smooth_in_chart(const Space& X, int chart, const MultiPoly& h) {
  const auto& cs = X.chart(chart).coords;
  /* a coordinate of degree one with constant leading coefficient gives a
     nonvanishing partial everywhere */
  for (auto& c : cs) {
    if (h.deg_in(c) == 1) {
      MultiPoly lead = h.coeffs_in(c)[1];
      if (lead.is_constant()) return {SmoothVerdict::Smooth, ""};
    }
  }
  std::vector<std::pair<std::string, MultiPoly>> partials;
  for (auto& c : cs) {
    MultiPoly p = h.derivative(c);
    if (p.is_zero()) continue;
    if (p.is_constant()) return {SmoothVerdict::Smooth, ""};
    partials.emplace_back(c, p);
  }
  if (partials.empty()) return {SmoothVerdict::Smooth, ""}; // constant h never happens here
  bool all_linear = true;
  for (auto& [c, p] : partials) all_linear &= (p.total_deg() <= 1);
  if (all_linear) {
    std::vector<std::string> unknowns;
    for (auto& c : cs)
      for (auto& [pc, p] : partials)
        if (p.contains_var(c)) {
          unknowns.push_back(c);
          break;
        }
    Matrix<GaussianRational> A(partials.size(), unknowns.size());
    std::vector<GaussianRational> b(partials.size());
    for (size_t i = 0; i < partials.size(); ++i) {
      const MultiPoly& p = partials[i].second;
      for (size_t j = 0; j < unknowns.size(); ++j)
        A.at(i, j) = expect_gaussian(p.derivative(unknowns[j]).constant_value());
      b[i] = -expect_gaussian(p.constant_value());
    }
    auto sol = solve_unique(A, b);
    if (!sol) {
      /* inconsistent system: no common zero of the partials at all */
      Matrix<GaussianRational> A2 = A;
      std::vector<GaussianRational> b2 = b;
      auto pivots = row_reduce(A2, &b2);
      for (size_t i = pivots.size(); i < partials.size(); ++i)
        if (!(b2[i] == GaussianRational())) return {SmoothVerdict::Smooth, ""};
      return {SmoothVerdict::Undecidable, "underdetermined critical locus in " + h.str()};
    }
    std::map<std::string, GaussianRational> env;
    for (size_t j = 0; j < unknowns.size(); ++j) env[unknowns[j]] = (*sol)[j];
    bool covered = true;
    for (auto& v : h.vars()) covered &= env.count(v) > 0;
    if (!covered) return {SmoothVerdict::Undecidable, "critical point underdetermined"};
    if (h.eval(env).is_zero())
      return {SmoothVerdict::Singular, "singular point of " + h.str() + " found in chart " +
                                           std::to_string(chart)};
    return {SmoothVerdict::Smooth, ""};
  }
  /* two-coordinate charts: eliminate via resultants */
  auto hvars = h.vars();
  if (cs.size() == 2 && hvars.size() == 2) {
    std::string v;
    for (auto& c : cs) {
      int d = h.deg_in(c);
      if (d >= 1 && h.coeffs_in(c)[(size_t)d].is_constant()) {
        v = c;
        break;
      }
    }
    if (!v.empty()) {
      std::string x;
      for (auto& c : cs)
        if (c != v) x = c;
      MultiPoly hv = h.derivative(v), hx = h.derivative(x);
      MultiPoly r = resultant_in(h, hv, v);
      if (r.is_constant()) {
        if (!r.is_zero()) return {SmoothVerdict::Smooth, ""};
        return {SmoothVerdict::Undecidable, "degenerate discriminant"};
      }
      MultiPoly s_res = hx.is_zero() ? r : resultant_in(h, hx, v);
      MultiPoly g = mp_gcd(r, s_res);
      if (g.is_constant()) return {SmoothVerdict::Smooth, ""};
      MultiPoly gred = mp_exact_div(g, mp_gcd(g, g.derivative(x)));
      bool solvable = false;
      auto roots = rational_roots_up_to_quadratic(to_gaussian_upoly(gred, x), &solvable);
      if (!solvable)
        return {SmoothVerdict::Undecidable, "critical abscissas not solvable over Q(i)"};
      for (auto& x0 : roots) {
        std::map<std::string, RationalFunction> sub{{x, RationalFunction(TauScalar(x0))}};
        UPoly<GaussianRational> gc;
        bool first = true;
        const std::vector<const MultiPoly*> locus{&h, &hv, &hx};
        for (const MultiPoly* q : locus) {
          if (q->is_zero()) continue;
          RationalFunction qq = substitute(*q, sub);
          if (qq.is_zero()) continue;
          auto up = to_gaussian_upoly(qq.num, v);
          gc = first ? up : UPoly<GaussianRational>::gcd(gc, up);
          first = false;
        }
        if (!first && gc.deg() >= 1)
          return {SmoothVerdict::Singular,
                  "common critical zero over " + x + "=" + x0.str() + " in chart " +
                      std::to_string(chart)};
      }
      return {SmoothVerdict::Smooth, ""};
    }
  }
  return {SmoothVerdict::Undecidable, "no elimination strategy for " + h.str()};
}

} // namespace

SmoothReport validate_smooth(const Space& X, const SubvarietyPres& V) {
  if (V.kind != SubvarietyPres::Kind::Hyp)
    return {SmoothVerdict::Smooth, "smooth by construction"};
  bool undecided = false;
  std::string undecided_detail;
  for (int d = 0; d < X.chart_count(); ++d) {
    auto hd = hyp_in_chart(X, V.h, V.chart, d);
    if (!hd) continue;
    SmoothReport r = smooth_in_chart(X, d, *hd);
    if (r.verdict == SmoothVerdict::Singular) return r;
    if (r.verdict == SmoothVerdict::Undecidable) {
      undecided = true;
      undecided_detail = r.detail;
    }
  }
  if (undecided) return {SmoothVerdict::Undecidable, undecided_detail};
  return {SmoothVerdict::Smooth, ""};
}

int Morphism::degree() const {
  if (kind != Kind::SelfMapOfLine) return 1;
  return std::max(F.num.deg_in(var), F.den.deg_in(var));
}

std::string Morphism::str() const {
  switch (kind) {
    case Kind::Inclusion: return "inclusion";
    case Kind::IdentityOnImage: return "identity";
    case Kind::SelfMapOfLine: return "selfmap(" + F.str() + ")";
  }
  return "?";
}

} // namespace polaris
