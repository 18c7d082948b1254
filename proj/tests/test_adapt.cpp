#include <random>

#include <gtest/gtest.h>

#include <oscstab/oscstab.hpp>

using namespace oscstab;

namespace {

Jet P(const char* s) { return parse_jet_expression(s); }

TypePair T(const char* delta, int p) { return {parse_rational(delta), p}; }

}  // namespace

TEST(Superadapted, Checks) {
  EXPECT_TRUE(is_superadapted(P("x^2+y^2")).ok);
  auto c = is_superadapted(P("y^2-2*x^2*y+x^4"));
  ASSERT_FALSE(c.ok);
  ASSERT_TRUE(c.witness.has_value());
  EXPECT_EQ(c.witness->order, 2);
  EXPECT_EQ(root_value(c.witness->root), Number(1));
  EXPECT_TRUE(is_superadapted(P("x^2*y^2")).ok);
}

TEST(Superadapt, ParabolaSquared) {
  auto a = superadapt(P("(y-x^2)^2"));
  ASSERT_EQ(a.coords.size(), 1u);
  const auto& s = a.coords.steps()[0];
  EXPECT_EQ(s.kind, CoordStep::Kind::shear);
  EXPECT_EQ(s.r, Number(1));
  EXPECT_EQ(s.m, Rational(2));
  EXPECT_EQ(a.adapted, P("y^2"));
  EXPECT_EQ(a.d, Rational(2));
  EXPECT_EQ(a.tag.kind, CaseKind::ray);
  EXPECT_EQ(a.type, T("1/2", 0));
}

TEST(Superadapt, NoShears) {
  auto a = superadapt(P("x^2+y^2"));
  EXPECT_EQ(a.coords.size(), 0u);
  EXPECT_EQ(a.tag.kind, CaseKind::edge);
  EXPECT_EQ(a.type, T("1", 0));
  auto b = superadapt(P("x^2*y^2"));
  EXPECT_EQ(b.coords.size(), 0u);
  EXPECT_EQ(b.tag.kind, CaseKind::vertex);
  EXPECT_EQ(b.type, T("1/2", 1));
}

TEST(Superadapt, IrrationalShear) {
  // (y - sqrt2 x)^2 (y + sqrt2 x)^2 + x^6: after y -> y + sqrt2 x the vertex
  // 8 x^2 y^2 lands on the bisectrix.
  auto a = superadapt(P("(y^2-2*x^2)^2+x^6"));
  ASSERT_EQ(a.coords.size(), 1u);
  EXPECT_FALSE(a.coords.steps()[0].r.is_rational());
  EXPECT_NEAR(std::fabs(a.coords.steps()[0].r.to_double()), std::sqrt(2.0), 1e-12);
  EXPECT_TRUE(is_superadapted(a.adapted).ok);
  EXPECT_EQ(a.d, Rational(2));
  EXPECT_EQ(a.type, T("1/2", 1));
}

TEST(Superadapt, SwapWhenAboveBisectrix) {
  auto a = superadapt(P("(x-y^2)^2"));
  EXPECT_EQ(a.type, T("1/2", 0));
  EXPECT_EQ(a.tag.kind, CaseKind::ray);
}

TEST(Superadapt, Fractional) {
  auto a = superadapt(P("y^2+x^(5/2)"));
  EXPECT_TRUE(a.half_plane);
  EXPECT_EQ(a.d, make_rational(10, 9));
}

TEST(Superadapt, BudgetExceeded) {
  EXPECT_THROW(superadapt(P("(y-x^2)^2"), 0), DomainError);
  EXPECT_THROW(superadapt(P("(y-x^2-x^3)^2+x^9"), 1), BudgetExceeded);
  EXPECT_NO_THROW(superadapt(P("(y-x^2-x^3)^2+x^9"), 2));
}

TEST(Superadapt, PhaseConditions) { EXPECT_THROW(superadapt(P("x+y^3")), PhaseConditionError); }

TEST(OscillationType, Examples) {
  EXPECT_EQ(oscillation_type(P("x^3+y^3")), T("2/3", 0));
  EXPECT_EQ(oscillation_type(P("x^2+y^2")), T("1", 0));
  EXPECT_EQ(oscillation_type(P("x^4+y^4")), T("1/2", 0));
}

TEST(Superadapt, Properties) {
  const char* corpus[] = {"x^2+y^2", "x^4+y^4", "(y-x^2)^2", "(y-x^2)^2+x^5", "(y-x^2-x^3)^3+x^7",
                          "x^2*y^2+x*y^3", "(y^2-2*x^2)^2+x^6", "x^3*y+y^5", "(x-y^3)^2+y^8"};
  for (const char* s : corpus) {
    Jet S = P(s);
    auto a = superadapt(S);
    EXPECT_TRUE(is_superadapted(a.adapted).ok) << s;
    EXPECT_EQ(a.coords.apply(S), a.adapted) << s;
    EXPECT_EQ(superadapt(a.adapted).coords.size(), 0u) << s;
    EXPECT_GE(a.d, newton_distance(newton_polygon(S))) << s;
    EXPECT_EQ(oscillation_type(swap_axes(S)), a.type) << s;
    EXPECT_EQ(a.type.delta, 1 / a.d) << s;
  }
}

TEST(SquareSumType, Examples) {
  auto r = lemma32_type(square_sum(P("x^2+y^2"), P("x*y")), false);
  EXPECT_EQ(r.type, T("1/2", 0));
  EXPECT_FALSE(r.vertex_case);
  EXPECT_EQ(lemma32_type(P("y^2"), true).type, T("1/2", 0));
  EXPECT_EQ(lemma32_type(P("y^2"), false).type, T("1/2", 0));
  EXPECT_THROW(lemma32_type(P("(y-x)^3*(y^2+x^2)^0+x^8"), false), HypothesesFail);
}
