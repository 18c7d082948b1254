#include <random>

#include <gtest/gtest.h>

#include <oscstab/oscstab.hpp>

using namespace oscstab;

namespace {

Jet P(const char* s) { return parse_jet_expression(s); }

Point pt(long a, long b) { return {Rational(a), Rational(b)}; }

Jet random_jet(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> e(0, 6), c(-6, 6), n(1, 5);
  Jet j;
  int k = n(rng);
  for (int i = 0; i < k; ++i) {
    int num = c(rng);
    j.add(Rational(e(rng)), e(rng), Number(make_rational(num == 0 ? 1 : num, 1 + (i % 3))));
  }
  if (j.is_zero()) j.add(Rational(1), 1, Number(1));
  return j;
}

}  // namespace

TEST(Polygon, Vertices) {
  auto a = newton_polygon(P("x^2+y^2"));
  EXPECT_EQ(a.vertices(), (std::vector<Point>{pt(0, 2), pt(2, 0)}));
  EXPECT_EQ(a.edges().size(), 1u);
  auto b = newton_polygon(P("x^2*y^2"));
  EXPECT_EQ(b.vertices(), (std::vector<Point>{pt(2, 2)}));
  EXPECT_TRUE(b.edges().empty());
  auto c = newton_polygon(P("y^2-2*x^2*y+x^4"));
  EXPECT_EQ(c.vertices(), (std::vector<Point>{pt(0, 2), pt(4, 0)}));
  EXPECT_EQ(c.edges()[0].m, Rational(2));
  EXPECT_EQ(c.edges()[0].c, Rational(4));
}

TEST(Polygon, Distance) {
  EXPECT_EQ(newton_distance(newton_polygon(P("x^2+y^2"))), Rational(1));
  EXPECT_EQ(newton_distance(newton_polygon(P("x^2*y^2"))), Rational(2));
  EXPECT_EQ(newton_distance(newton_polygon(P("y^2-2*x^2*y+x^4"))), make_rational(4, 3));
}

TEST(Polygon, Cases) {
  auto t1 = bisectrix_case(newton_polygon(P("x^2+y^2")));
  EXPECT_EQ(t1.kind, CaseKind::edge);
  auto t2 = bisectrix_case(newton_polygon(P("x^2*y^2")));
  EXPECT_EQ(t2.kind, CaseKind::vertex);
  auto t3 = bisectrix_case(newton_polygon(P("y^2")));
  EXPECT_EQ(t3.kind, CaseKind::ray);
  EXPECT_EQ(t3.ray, RayOrientation::horizontal);
  auto t4 = bisectrix_case(newton_polygon(P("x^2")));
  EXPECT_EQ(t4.ray, RayOrientation::vertical);
}

TEST(Polygon, EdgeRestriction) {
  auto S = P("x^2+y^2");
  auto N = newton_polygon(S);
  EXPECT_EQ(edge_restriction(S, edge_face(N, 0)), KPoly({Number(1), Number(0), Number(1)}));
  auto T = P("y^2-2*x^2*y+x^4");
  EXPECT_EQ(edge_restriction(T, edge_face(newton_polygon(T), 0)), KPoly({Number(1), Number(-2), Number(1)}));
  EXPECT_TRUE(edge_restriction(P("x^4+y^4"), line_face(Rational(2), Rational(6))).is_zero());
}

TEST(Polygon, SupportingFace) {
  auto N = newton_polygon(P("x^2+y^2"));
  EXPECT_EQ(supporting_face(N, Rational(1)).kind, Face::Kind::edge);
  auto v = supporting_face(N, Rational(2));
  EXPECT_EQ(v.kind, Face::Kind::vertex);
  EXPECT_EQ(N.vertices()[v.index], pt(2, 0));  // a + 2b is smallest at (2,0)
  auto w = supporting_face(newton_polygon(P("x^2*y^2")), make_rational(7, 3));
  EXPECT_EQ(w.kind, Face::Kind::vertex);
}

TEST(Polygon, Dilate) {
  auto N = newton_polygon(P("x^2+y^2"));
  EXPECT_EQ(dilate(N, 2).vertices(), (std::vector<Point>{pt(0, 4), pt(4, 0)}));
  EXPECT_EQ(dilate(N, 1), N);
  EXPECT_EQ(dilate(newton_polygon(P("x^2*y^2")), 2).vertices(), (std::vector<Point>{pt(4, 4)}));
}

TEST(Polygon, SquareDilatesOnRandomJets) {
  std::mt19937_64 rng(2024);
  for (int it = 0; it < 500; ++it) {
    Jet g = random_jet(rng);
    Jet g2 = g * g;
    auto N = newton_polygon(g);
    auto N2 = newton_polygon(g2);
    ASSERT_EQ(N2, dilate(N, 2)) << g.str();
    for (std::size_t i = 0; i < N.edges().size(); ++i) {
      KPoly e = edge_restriction(g, edge_face(N, i));
      EXPECT_EQ(edge_restriction(g2, edge_face(N2, i)), e * e);
    }
    EXPECT_EQ(newton_distance(dilate(N, 2)), 2 * newton_distance(N));
  }
}

TEST(Polygon, SupportAboveEdges) {
  std::mt19937_64 rng(99);
  for (int it = 0; it < 200; ++it) {
    Jet g = random_jet(rng);
    auto N = newton_polygon(g);
    for (const auto& p : support(g))
      for (const auto& e : N.edges()) EXPECT_GE(p.a + e.m * p.b, e.c);
  }
}

TEST(Polygon, SwapMirrors) {
  std::mt19937_64 rng(17);
  for (int it = 0; it < 200; ++it) {
    Jet g = random_jet(rng);
    EXPECT_EQ(newton_polygon(swap_axes(g)), mirror(newton_polygon(g)));
    EXPECT_EQ(newton_distance(newton_polygon(swap_axes(g))), newton_distance(newton_polygon(g)));
  }
}
