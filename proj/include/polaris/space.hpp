#pragma once
/* Ambient space catalog with fixed affine atlases, chart transitions, points,
   subvariety presentations, and tangent frames.  The catalog is closed: P1,
   P2, P3, products of up to three lines, and genus-g curve entries (the last
   carry no atlas and only feed homology reports).

   Conventions frozen here:
   - Products of lines name their factors (z|w) for one factor, (x|u),(y|v)
     for two, (x|u),(y|v),(z|w) for three; the second name is the reciprocal
     coordinate, and a chart is the bitmask of factors using it.
   - P2 charts are {x,y},{u,v},{s,t}; P3 charts {x,y,z},{u,v,w},{s,t,r},
     {m,n,o}; chart i of Pn is the affine piece where homogeneous X_i != 0,
     coordinates X_j/X_i in increasing j.
   - Geometry is tau-free: point coordinates and graph assignments live over
     Q(i).  Forms alone carry tau. */

#include "polaris/linalg.hpp"
#include "polaris/ratfun.hpp"

#include <memory>
#include <optional>

namespace polaris {

struct Chart {
  int index = 0;
  std::vector<std::string> coords;
};

enum class SpaceKind { ProjSpace, ProductOfLines, Curve };

struct Space {
  SpaceKind kind;
  int dim = 0;
  int genus = 0; // Curve entries only
  std::string name;
  std::vector<Chart> charts;
  /* trans[a][b]: each coordinate of chart a as a rational function of the
     coordinates of chart b */
  std::vector<std::vector<std::map<std::string, RationalFunction>>> trans;
  /* ProductOfLines: (affine name, reciprocal name) per factor */
  std::vector<std::pair<std::string, std::string>> factors;

  int chart_count() const { return (int)charts.size(); }
  const Chart& chart(int i) const;
  int coord_pos(int chart, const std::string& name) const; // -1 if absent
  bool has_coord(int chart, const std::string& name) const { return coord_pos(chart, name) >= 0; }

  static std::shared_ptr<const Space> catalog(const std::string& literal); // UnknownSpace
  static std::shared_ptr<const Space> curve(int genus);
  /* product of lines over parameter names; reciprocal names get a '~' suffix */
  static std::shared_ptr<const Space> param_space(const std::vector<std::string>& params);
};

struct Point {
  int chart = 0;
  std::vector<GaussianRational> coords;
  bool operator==(const Point& o) const { return chart == o.chart && coords == o.coords; }
};

/* the same point in the target chart; OutOfOverlap when a transition is singular at P */
Point transition_point(const Space& X, const Point& P, int to_chart);
/* lowest chart index where the point is finite (identity for most points) */
Point canonical_point(const Space& X, const Point& P);
bool same_point(const Space& X, const Point& P, const Point& Q);
std::string point_str(const Space& X, const Point& P);

/* coordinate values as an evaluation map for the point's chart */
std::map<std::string, GaussianRational> point_env(const Space& X, const Point& P);

GaussianRational expect_gaussian(const TauScalar& s); // NonRationalCoordinate if tau appears
GaussianRational expect_gaussian(const RationalFunction& f);

struct SubvarietyPres {
  enum class Kind { Point, Graph, Hyp, Whole } kind = Kind::Whole;
  Point pt;                                       // Point
  int chart = 0;                                  // Graph / Hyp ambient chart
  std::vector<std::string> params;                // Graph
  std::map<std::string, RationalFunction> assign; // Graph: every chart coordinate
  MultiPoly h;                                    // Hyp: squarefree, monic in hvar
  std::string hvar;

  int dim(const Space& X) const;
  std::string str(const Space& X) const;

  static SubvarietyPres point(Point p);
  static SubvarietyPres whole();
  static SubvarietyPres graph(int chart, std::vector<std::string> params,
                              std::map<std::string, RationalFunction> assign);
  static SubvarietyPres hyp(int chart, MultiPoly h, std::string hvar);
};

/* validated graph constructor: checks coverage of chart coordinates, that each
   assignment depends on at most one parameter, tau-freeness, and generic
   Jacobian rank = parameter count.  Rank checking can be waived so that
   degenerate parametrizations survive construction and get dropped later. */
SubvarietyPres make_graph(const Space& X, int chart, std::vector<std::string> params,
                          std::map<std::string, RationalFunction> assign,
                          bool require_full_rank = true);

/* generic Jacobian rank of the parametrization equals the parameter count */
bool graph_rank_ok(const Space& X, const SubvarietyPres& g);

/* coefficients must be tau-free constants */
UPoly<GaussianRational> to_gaussian_upoly(const MultiPoly& p, const std::string& v);

/* roots in Q(i) of the squarefree part, when the degree after squarefree
   reduction is at most two; *solvable reports whether the list is exhaustive */
std::vector<GaussianRational> rational_roots_up_to_quadratic(UPoly<GaussianRational> g,
                                                             bool* solvable);

/* monic-normalized hypersurface presentation; checks squarefreeness */
SubvarietyPres make_hyp(const Space& X, int chart, const MultiPoly& h);

/* the hypersurface's equation in another chart; nullopt when it misses the
   chart entirely (e.g. a coordinate hyperplane seen from its reciprocal side) */
std::optional<MultiPoly> hyp_in_chart(const Space& X, const MultiPoly& h, int from, int to);

/* local equation of the infinity divisor attached to an affine coordinate:
   for a product factor, its point at infinity; for Pn, the hyperplane X_0=0 */
std::optional<MultiPoly> infinity_in_chart(const Space& X, const std::string& coord, int chart);
bool is_infinity_coord(const Space& X, const std::string& coord);

/* graph re-expressed with assignments into another ambient chart; nullopt when
   a transitioned assignment stops being univariate or is undefined */
std::optional<SubvarietyPres> graph_in_chart(const Space& X, const SubvarietyPres& g, int to);

/* image point of a graph at given parameter values (reciprocal parameter
   values marked by flip bits), composed through whatever ambient chart sees it */
Point graph_image(const Space& X, const SubvarietyPres& g,
                  const std::vector<GaussianRational>& vals, unsigned flip_mask = 0);

/* parameter preimage of P on the graph: values plus flip mask; nullopt if P is
   not on the graph.  IrrationalIntersection when the solve leaves degree > 2. */
std::optional<std::pair<std::vector<GaussianRational>, unsigned>> graph_params_at(
    const Space& X, const SubvarietyPres& g, const Point& P);

bool contains_point(const Space& X, const SubvarietyPres& V, const Point& P);

/* basis of T_P V in the coordinates of P's chart; Graphs give Jacobian columns,
   hypersurfaces an implicit-function solve.  SingularPoint when rank drops. */
std::vector<std::vector<GaussianRational>> tangent_frame(const Space& X,
                                                         const SubvarietyPres& V, const Point& P);

enum class SmoothVerdict { Smooth, Singular, Undecidable };
struct SmoothReport {
  SmoothVerdict verdict;
  std::string detail;
};
SmoothReport validate_smooth(const Space& X, const SubvarietyPres& V);

struct Morphism {
  enum class Kind { Inclusion, IdentityOnImage, SelfMapOfLine } kind = Kind::Inclusion;
  RationalFunction F; // SelfMapOfLine: rational self-map in the line coordinate
  std::string var;
  int degree() const; // SelfMapOfLine: max(deg num, deg den)
  std::string str() const;
};

} // namespace polaris
