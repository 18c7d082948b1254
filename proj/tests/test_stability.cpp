#include <random>

#include <gtest/gtest.h>

#include <oscstab/oscstab.hpp>

using namespace oscstab;

namespace {

Jet P(const char* s) { return parse_jet_expression(s); }

TypePair T(const char* delta, int p) { return {parse_rational(delta), p}; }

std::vector<Rational> confirmed(const ExceptionalSet& I) {
  std::vector<Rational> out;
  for (const auto& e : I.values())
    if (e.confirmed && e.t.is_rational()) out.push_back(*e.t.rational_value());
  return out;
}

Jet random_direction(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> e(0, 5), c(-4, 4), n(1, 3);
  Jet f;
  int k = n(rng);
  for (int i = 0; i < k; ++i) {
    int a = e(rng), b = e(rng);
    if (a + b < 2) a += 2;
    int num = c(rng);
    f.add(Rational(a), b, Number(num == 0 ? 1 : num));
  }
  if (f.is_zero()) f.add(Rational(1), 1, Number(1));
  return f;
}

}  // namespace

TEST(GoodDirection, Table) {
  auto a = good_direction(P("x^2+y^2"), P("x*y"));
  EXPECT_TRUE(a.good);
  EXPECT_EQ(a.generic_type, T("1", 0));
  auto b = good_direction(P("x^4+y^4"), P("x^2*y"));
  EXPECT_FALSE(b.good);
  EXPECT_EQ(b.generic_type, T("5/8", 0));
  auto c = good_direction(P("x^2*y^2"), P("x*y^3"));
  EXPECT_TRUE(c.good);
  EXPECT_EQ(c.generic_type, T("1/2", 1));
  ASSERT_TRUE(c.m1 && c.m2);
  auto d = good_direction(P("y^2"), P("x^3"));
  EXPECT_FALSE(d.good);
  EXPECT_EQ(d.generic_type, T("5/6", 0));
}

TEST(GoodDirection, VertexSlopes) {
  // Every support point (a, b) of f must satisfy (a - 2) + m (b - 2) >= 0 for m = m1 and m2.
  auto v = good_direction(P("x^2*y^2"), P("x*y^3"));
  for (Rational m : {*v.m1, *v.m2}) EXPECT_GE(Rational(1 - 2) + m * Rational(3 - 2), 0);
}

TEST(GoodDirection, VertexNeedsRoomForTwoLines) {
  // x^4 and the edge through (1,3), (2,2) pin the slope at 1: the vertex merges into an edge.
  auto v = good_direction(P("x^2*y^2+x*y^3"), P("x^4"));
  EXPECT_FALSE(v.good);
  EXPECT_EQ(v.generic_type, T("1/2", 0));
}

TEST(GoodDirection, RejectsBadDirections) {
  EXPECT_THROW(good_direction(P("x^2+y^2"), P("x")), PhaseConditionError);
  EXPECT_THROW(good_direction(P("x^2+y^2"), P("0")), EmptyJet);
}

TEST(GenericType, Examples) {
  EXPECT_EQ(generic_type(P("x^2+y^2"), P("x*y")).type, T("1", 0));
  EXPECT_EQ(generic_type(P("x^4+y^4"), P("x^2*y")).type, T("5/8", 0));
  EXPECT_EQ(generic_type(P("x^2*y^2"), P("x*y^3")).type, T("1/2", 1));
}

TEST(ExceptionalSet, Examples) {
  auto a = exceptional_set(P("x^2+y^2"), P("x*y"));
  EXPECT_EQ(confirmed(a.exceptional), (std::vector<Rational>{Rational(-2), Rational(2)}));
  EXPECT_EQ(oscillation_type(P("x^2+y^2+2*x*y")), T("1/2", 0));
  auto b = exceptional_set(P("x^4+y^4"), P("x^2*y"));
  for (const auto& e : b.exceptional.values())
    if (e.confirmed) {
      EXPECT_EQ(e.reason, "base-phase");
    }
  auto c = exceptional_set(P("x^2*y^2"), P("x*y^3"));
  EXPECT_TRUE(confirmed(c.exceptional).empty());
}

TEST(EdgeHypotheses, Examples) {
  auto a = lemma33_check(P("x^2+y^2"), P("x*y"));
  EXPECT_TRUE(a.a_holds);
  ASSERT_EQ(a.edges.size(), 1u);
  EXPECT_EQ(a.edges[0].value, 0);
  auto b = lemma33_check(P("x^2*y^2"), P("x*y^3"));
  EXPECT_TRUE(b.vertex_on_bisectrix);
  EXPECT_TRUE(b.b_holds);
  // g^e = h^e = (y - 1)^2 on the edge x + y = 4, the bisectrix at the vertex (2, 2)
  // of the common polygon once x^4 and y^4 close it off.
  auto c = lemma33_check(P("x^2*y^2-2*x*y^3+y^4+x^4"), P("x^2*y^2-2*x*y^3+y^4+x^5"));
  EXPECT_EQ(c.d, Rational(2));
}

TEST(Sampling, Deterministic) {
  Jet S = P("x^4+y^4");
  EXPECT_TRUE(sample_good_directions(S, 0, 0.1, 0.5, 2, 1).empty());
  auto a = sample_good_directions(S, 10, 0.1, 0.5, 2, 42);
  auto b = sample_good_directions(S, 10, 0.1, 0.5, 2, 42);
  ASSERT_EQ(a.size(), 10u);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i], b[i]);
    EXPECT_TRUE(good_direction(S, a[i]).good);
    auto an = superadapt(S);
    EXPECT_LT(direction_norm(an, an.coords.apply(a[i]), 0.5, 2), 0.1 * (1 + 1e-9));
  }
}

TEST(Pencil, GenericTypeOutsideExceptionalSet) {
  const char* phases[] = {"x^2+y^2", "x^4+y^4", "x^2*y^2", "y^2", "x^3+y^3", "(y-x^2)^2", "x^2*y^2+x*y^3"};
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<int> tn(-30, 30), td(1, 5);
  int pairs = 0;
  for (int it = 0; pairs < 50 && it < 200; ++it) {
    Jet S = P(phases[it % 7]);
    Jet f = random_direction(rng);
    PencilReport rep;
    try {
      rep = exceptional_set(S, f);
    } catch (const PrecisionInsufficient&) {
      continue;
    }
    ++pairs;
    auto v = good_direction(S, f);
    TypePair base = oscillation_type(S);
    EXPECT_TRUE(rep.generic_type <= base);
    EXPECT_EQ(v.good, rep.generic_type == base) << S.str() << " / " << f.str();
    for (const auto& e : rep.exceptional.values())
      if (e.confirmed && e.t.is_rational()) {
        Jet Pt = S + Number(*e.t.rational_value()) * f;
        if (!Pt.is_zero() && vanishes_to_second_order(Pt)) {
          EXPECT_NE(oscillation_type(Pt), rep.generic_type);
        }
      }
    for (int k = 0; k < 20; ++k) {
      Rational t = make_rational(tn(rng), td(rng));
      if (rep.exceptional.contains(RealAlgebraic(t))) continue;
      Jet Pt = S + Number(t) * f;
      EXPECT_EQ(oscillation_type(Pt), rep.generic_type) << S.str() << " + (" << t << ") " << f.str();
    }
  }
  EXPECT_EQ(pairs, 50);
}

TEST(Pencil, SwapSymmetry) {
  const char* pairs[][2] = {{"x^2+y^2", "x*y"}, {"x^4+y^4", "x^2*y"}, {"x^2*y^2", "x*y^3"}, {"y^2", "x^3"}};
  for (auto& pr : pairs) {
    Jet S = P(pr[0]), f = P(pr[1]);
    EXPECT_EQ(generic_type(S, f).type, generic_type(swap_axes(S), swap_axes(f)).type);
  }
}
