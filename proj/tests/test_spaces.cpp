#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "polaris/error.hpp"
#include "polaris/space.hpp"

#include <random>

using namespace polaris;

namespace {

std::mt19937_64 rng(911u);

Rational rnd_rat() {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 9);
  return make_rational(num(rng), den(rng));
}

GaussianRational rnd_gauss() { return {rnd_rat(), rnd_rat()}; }

RationalFunction rf(int n) { return RationalFunction(n); }
RationalFunction rv(const std::string& v) { return RationalFunction::var(v); }
MultiPoly pv(const std::string& v) { return MultiPoly::var(v); }

GaussianRational g(int n) { return GaussianRational(Rational(n)); }

} // namespace

TEST_CASE("chart transitions on the line") {
  auto P1 = Space::catalog("P1");
  REQUIRE(P1->chart_count() == 2);
  CHECK(P1->chart(0).coords == std::vector<std::string>{"z"});
  CHECK(P1->chart(1).coords == std::vector<std::string>{"w"});

  Point p{0, {g(2)}};
  Point q = transition_point(*P1, p, 1);
  CHECK(q.chart == 1);
  CHECK(q.coords[0] == GaussianRational(make_rational(1, 2)));

  Point origin{0, {g(0)}};
  CHECK_THROWS_WITH_AS(transition_point(*P1, origin, 1), doctest::Contains("no finite image"),
                       Error);
}

TEST_CASE("componentwise transitions on a product") {
  auto X = Space::catalog("P1xP1");
  REQUIRE(X->chart_count() == 4);
  CHECK(X->chart(0).coords == std::vector<std::string>({"x", "y"}));
  CHECK(X->chart(1).coords == std::vector<std::string>({"u", "y"}));
  CHECK(X->chart(3).coords == std::vector<std::string>({"u", "v"}));

  Point p{0, {g(2), g(3)}};
  Point q = transition_point(*X, p, 1);
  CHECK(q.coords == std::vector<GaussianRational>({GaussianRational(make_rational(1, 2)), g(3)}));
}

TEST_CASE("round-trip transitions are identities on random overlap points") {
  for (const char* name : {"P1", "P1xP1", "P1xP1xP1", "P2", "P3"}) {
    auto X = Space::catalog(name);
    for (int trial = 0; trial < 12; ++trial) {
      Point p;
      p.chart = (int)(rng() % (unsigned)X->chart_count());
      for (int j = 0; j < X->dim; ++j) {
        GaussianRational c = rnd_gauss();
        if (c == GaussianRational()) c = g(1); // stay inside the overlaps
        p.coords.push_back(c);
      }
      for (int to = 0; to < X->chart_count(); ++to) {
        Point q;
        try {
          q = transition_point(*X, p, to);
        } catch (const Error&) {
          continue; // a vanishing ratio can be out of overlap in Pn; skip
        }
        Point back = transition_point(*X, q, p.chart);
        CHECK(back == p);
      }
    }
  }
}

TEST_CASE("canonical points prefer the lowest finite chart") {
  auto P1 = Space::catalog("P1");
  Point inf{1, {g(0)}};
  Point c = canonical_point(*P1, inf);
  CHECK(c.chart == 1);
  CHECK(point_str(*P1, c) == "point(0)@1");

  Point finite{1, {g(4)}};
  Point cf = canonical_point(*P1, finite);
  CHECK(cf.chart == 0);
  CHECK(cf.coords[0] == GaussianRational(make_rational(1, 4)));
  CHECK(point_str(*P1, cf) == "point(1/4)");
  CHECK(same_point(*P1, finite, Point{0, {GaussianRational(make_rational(1, 4))}}));
}

TEST_CASE("projective plane transitions agree with homogeneous ratios") {
  auto P2 = Space::catalog("P2");
  // (x,y)=(2,3) is [1:2:3]; chart 1 coords (u,v)=(X0/X1, X2/X1)=(1/2, 3/2)
  Point p{0, {g(2), g(3)}};
  Point q = transition_point(*P2, p, 1);
  CHECK(q.coords == std::vector<GaussianRational>({GaussianRational(make_rational(1, 2)),
                                                   GaussianRational(make_rational(3, 2))}));
  Point r = transition_point(*P2, p, 2);
  CHECK(r.coords == std::vector<GaussianRational>({GaussianRational(make_rational(1, 3)),
                                                   GaussianRational(make_rational(2, 3))}));
  CHECK(same_point(*P2, q, r));
}

TEST_CASE("graph presentations validate and expose frames") {
  auto X = Space::catalog("P1xP1xP1");
  std::map<std::string, RationalFunction> a{{"x", rv("t")}, {"y", rv("t")}, {"z", rv("b")}};
  auto gph = make_graph(*X, 0, {"t", "b"}, a);
  CHECK(gph.dim(*X) == 2);

  Point p{0, {g(5), g(5), g(7)}};
  auto pv2 = graph_params_at(*X, gph, p);
  REQUIRE(pv2.has_value());
  CHECK(pv2->first == std::vector<GaussianRational>({g(5), g(7)}));
  CHECK(pv2->second == 0u);
  CHECK(contains_point(*X, gph, p));
  CHECK(!contains_point(*X, gph, Point{0, {g(5), g(6), g(7)}}));

  auto frame = tangent_frame(*X, gph, p);
  REQUIRE(frame.size() == 2);
  CHECK(frame[0] == std::vector<GaussianRational>({g(1), g(1), g(0)}));
  CHECK(frame[1] == std::vector<GaussianRational>({g(0), g(0), g(1)}));

  auto whole = SubvarietyPres::whole();
  auto wf = tangent_frame(*X, whole, p);
  REQUIRE(wf.size() == 3);
  CHECK(wf[0] == std::vector<GaussianRational>({g(1), g(0), g(0)}));

  CHECK_THROWS_AS(make_graph(*X, 0, {"t", "b"},
                             {{"x", rv("t")}, {"y", rv("t")}, {"z", rv("t") + rv("b")}}),
                  Error); // bivariate assignment is out of scope
  CHECK_THROWS_AS(make_graph(*X, 0, {"t", "b"},
                             {{"x", rv("t")}, {"y", rf(1)}, {"z", rf(2)}}),
                  Error); // rank drop: b constrains nothing
}

TEST_CASE("graphs through infinity use flipped parameters") {
  auto X = Space::catalog("P1xP1");
  // the diagonal x=t, y=t; the point (x,y)=(inf,inf) sits at parameter infinity
  auto d = make_graph(*X, 0, {"t"}, {{"x", rv("t")}, {"y", rv("t")}});
  Point inf_inf{3, {g(0), g(0)}}; // chart (u,v), u=v=0
  CHECK(contains_point(*X, d, inf_inf));
  auto sol = graph_params_at(*X, d, inf_inf);
  REQUIRE(sol.has_value());
  CHECK(sol->second == 1u); // parameter flipped
  CHECK(sol->first == std::vector<GaussianRational>({g(0)}));
  Point img = graph_image(*X, d, {g(0)}, 1u);
  CHECK(img == canonical_point(*X, inf_inf));

  // frame there: in chart 3 the flipped view is u = t, v = t
  auto fr = tangent_frame(*X, d, inf_inf);
  REQUIRE(fr.size() == 1);
  CHECK(fr[0] == std::vector<GaussianRational>({g(1), g(1)}));
}

TEST_CASE("hypersurface presentations normalize and restrict across charts") {
  auto X = Space::catalog("P1xP1");
  auto H = make_hyp(*X, 0, pv("x") - MultiPoly(2));
  CHECK(H.hvar == "x");
  CHECK(H.str(*X) == "hyp(x - 2)");
  CHECK(contains_point(*X, H, Point{0, {g(2), g(5)}}));
  CHECK(!contains_point(*X, H, Point{0, {g(3), g(5)}}));

  // in chart (u, y) the same divisor reads 2u - 1 (up to normalization)
  auto h1 = hyp_in_chart(*X, H.h, 0, 1);
  REQUIRE(h1.has_value());
  CHECK(contains_point(*X, SubvarietyPres::hyp(1, *h1, "u"),
                       Point{1, {GaussianRational(make_rational(1, 2)), g(5)}}));

  // {x=0} is invisible from the u-side chart
  auto zero = make_hyp(*X, 0, pv("x"));
  CHECK(!hyp_in_chart(*X, zero.h, 0, 1).has_value());
  CHECK(hyp_in_chart(*X, zero.h, 0, 2).has_value());

  CHECK_THROWS_AS(make_hyp(*X, 0, pv("x") * pv("x")), Error); // not squarefree
}

TEST_CASE("infinity divisors have local equations") {
  auto X = Space::catalog("P1xP1");
  CHECK(is_infinity_coord(*X, "x"));
  CHECK(!is_infinity_coord(*X, "u"));
  auto eq = infinity_in_chart(*X, "x", 1);
  REQUIRE(eq.has_value());
  CHECK(eq->str() == "u");
  CHECK(!infinity_in_chart(*X, "x", 0).has_value());
  CHECK(!infinity_in_chart(*X, "x", 2).has_value());

  auto P2 = Space::catalog("P2");
  CHECK(is_infinity_coord(*P2, "x"));
  auto line = infinity_in_chart(*P2, "y", 1);
  REQUIRE(line.has_value());
  CHECK(line->str() == "u");
  CHECK(!infinity_in_chart(*P2, "x", 0).has_value());
}

TEST_CASE("smoothness verdicts") {
  auto X2 = Space::catalog("P1xP1");
  auto P2 = Space::catalog("P2");

  // a crossing pair of axes is singular at the origin
  SubvarietyPres axes = SubvarietyPres::hyp(0, pv("x") * pv("y"), "");
  CHECK(validate_smooth(*X2, axes).verdict == SmoothVerdict::Singular);

  auto circle = make_hyp(*P2, 0, pv("x") * pv("x") + pv("y") * pv("y") - MultiPoly(1));
  CHECK(validate_smooth(*P2, circle).verdict == SmoothVerdict::Smooth);

  SubvarietyPres cusp =
      SubvarietyPres::hyp(0, pv("y") * pv("y") - pv("x") * pv("x") * pv("x"), "y");
  CHECK(validate_smooth(*P2, cusp).verdict == SmoothVerdict::Singular);

  auto elliptic =
      make_hyp(*P2, 0, pv("y") * pv("y") - pv("x") * pv("x") * pv("x") - MultiPoly(1));
  CHECK(validate_smooth(*P2, elliptic).verdict == SmoothVerdict::Smooth);

  // frames on the elliptic curve: fine at (0,1), SingularPoint refused on the cusp
  auto fr = tangent_frame(*P2, elliptic, Point{0, {g(0), g(1)}});
  REQUIRE(fr.size() == 1);
  CHECK_THROWS_WITH_AS(tangent_frame(*P2, cusp, Point{0, {g(0), g(0)}}),
                       doctest::Contains("partial derivatives vanish"), Error);
}

TEST_CASE("hypersurface frames satisfy the implicit function relation") {
  auto P2 = Space::catalog("P2");
  auto circle = make_hyp(*P2, 0, pv("x") * pv("x") + pv("y") * pv("y") - MultiPoly(1));
  // gradient at (0,1) is (0,2); frame vector must be tangent: (1, 0)
  auto fr = tangent_frame(*P2, circle, Point{0, {g(0), g(1)}});
  REQUIRE(fr.size() == 1);
  CHECK(fr[0] == std::vector<GaussianRational>({g(1), g(0)}));
  // at (3/5, 4/5): gradient (6/5, 8/5); x pivots, so the basis vector is
  // e_y - (g_y/g_x) e_x = (-4/3, 1)
  auto fr2 = tangent_frame(*P2, circle,
                           Point{0, {GaussianRational(make_rational(3, 5)),
                                     GaussianRational(make_rational(4, 5))}});
  REQUIRE(fr2.size() == 1);
  CHECK(fr2[0] == std::vector<GaussianRational>({GaussianRational(make_rational(-4, 3)), g(1)}));
}

TEST_CASE("self-intersecting parametrizations are refused, not mispicked") {
  auto X = Space::catalog("P1xP1");
  // x = t^2, y = t^2: over (4,4) both t=2 and t=-2 work
  auto sq = make_graph(*X, 0, {"t"}, {{"x", rv("t") * rv("t")}, {"y", rv("t") * rv("t")}});
  CHECK_THROWS_WITH_AS(graph_params_at(*X, sq, Point{0, {g(4), g(4)}}),
                       doctest::Contains("preimages"), Error);
  // over (2,2) the parameter is irrational: honest refusal as well
  CHECK_THROWS_WITH_AS(graph_params_at(*X, sq, Point{0, {g(2), g(2)}}),
                       doctest::Contains("non-Q(i)"), Error);
  // but containment is decidable without naming the parameter
  CHECK(contains_point(*X, sq, Point{0, {g(2), g(2)}}));
  CHECK(!contains_point(*X, sq, Point{0, {g(2), g(3)}}));
  // off-graph points stay clean
  CHECK(!graph_params_at(*X, sq, Point{0, {g(4), g(5)}}).has_value());
}

TEST_CASE("graph views move between charts when expressible") {
  auto X = Space::catalog("P1xP1");
  auto d = make_graph(*X, 0, {"t"}, {{"x", rv("t")}, {"y", rv("t")}});
  auto v3 = graph_in_chart(*X, d, 3);
  REQUIRE(v3.has_value());
  CHECK(v3->assign.at("u").str() == "1/t");
  CHECK(v3->assign.at("v").str() == "1/t");

  auto P2 = Space::catalog("P2");
  // x = a^2, y = a^3 transitions to chart 1 as u = 1/a^2, v = a: still univariate
  // ("t" itself is taken: it names a coordinate of the third chart)
  auto tc = make_graph(*P2, 0, {"a"},
                       {{"x", rv("a") * rv("a")}, {"y", rv("a") * rv("a") * rv("a")}});
  auto v1 = graph_in_chart(*P2, tc, 1);
  REQUIRE(v1.has_value());
  CHECK(v1->assign.at("v").str() == "a");
}

TEST_CASE("catalog rejects unknown literals and keeps curve entries bare") {
  CHECK_THROWS_WITH_AS(Space::catalog("P4"), doctest::Contains("unknown space"), Error);
  auto C = Space::curve(2);
  CHECK(C->dim == 1);
  CHECK(C->genus == 2);
  CHECK(C->chart_count() == 0);
}
