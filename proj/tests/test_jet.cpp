#include <random>

#include <gtest/gtest.h>

#include <oscstab/oscstab.hpp>

using namespace oscstab;

namespace {

Jet P(const char* s) { return parse_jet_expression(s); }

Jet random_jet(std::mt19937_64& rng, int deg, int nterms) {
  std::uniform_int_distribution<int> e(0, deg), c(-9, 9), den(1, 5);
  Jet j;
  for (int k = 0; k < nterms; ++k) {
    int a = e(rng), b = e(rng);
    if (a + b < 2) b += 2;
    int num = c(rng);
    if (num == 0) num = 1;
    j.add(Rational(a), b, Number(make_rational(num, den(rng))));
  }
  if (j.is_zero()) j.add(Rational(2), 0, Number(1));
  return j;
}

}  // namespace

TEST(Parse, Basic) {
  Jet S = P("x^2+y^2");
  EXPECT_EQ(S.size(), 2u);
  EXPECT_EQ(S.coefficient(Rational(2), 0), Number(1));
  EXPECT_EQ(S.coefficient(Rational(0), 2), Number(1));
}

TEST(Parse, ZeroIsEmpty) { EXPECT_THROW(P("0"), EmptyJet); }

TEST(Parse, Fractional) {
  Jet S = P("x^(3/2)*y");
  EXPECT_EQ(S.ramification(), 2);
  EXPECT_EQ(S.coefficient(make_rational(3, 2), 1), Number(1));
}

TEST(Parse, Errors) {
  EXPECT_THROW(P("x^2+"), ParseError);
  EXPECT_THROW(P("x^2 * z"), ParseError);
  EXPECT_THROW(P("(x+y"), ParseError);
}

TEST(Parse, Products) {
  EXPECT_EQ(P("(y-x^2)^2"), P("y^2-2*x^2*y+x^4"));
  EXPECT_EQ(P("(3/2)*x*y - (1/2)*x*y"), P("x*y"));
}

TEST(PhaseConditions, Classify) {
  EXPECT_EQ(check_phase_conditions(P("x^2+y^2")), PhaseCondition::ok);
  EXPECT_EQ(check_phase_conditions(P("1+x^2")), PhaseCondition::nonzero_constant);
  EXPECT_EQ(check_phase_conditions(P("x+y^3")), PhaseCondition::nonzero_gradient);
}

TEST(Eval, Values) {
  EXPECT_DOUBLE_EQ(eval(P("x^2+y^2"), 1, 1), 2);
  EXPECT_DOUBLE_EQ(eval(P("x^2*y^2"), 2, 3), 36);
  EXPECT_DOUBLE_EQ(eval(P("x^(3/2)*y"), 4, 2), 16);
}

TEST(Partial, Examples) {
  EXPECT_EQ(partial(P("x^2*y^2"), 0, 2), P("2*x^2"));
  EXPECT_TRUE(partial(P("y^3"), 1, 0).is_zero());
  EXPECT_TRUE(partial(P("x^2+y^2"), 1, 1).is_zero());
}

TEST(Shear, Examples) {
  EXPECT_EQ(shear(P("y^2-2*x^2*y+x^4"), Number(1), Rational(2)), P("y^2"));
  Jet S = P("x^3*y+y^4-x^2");
  EXPECT_EQ(shear(S, Number(0), Rational(3)), S);
}

TEST(Shear, ExactEvaluationOnRandomTriples) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> small(-5, 5), mm(1, 3);
  for (int it = 0; it < 200; ++it) {
    Jet S = random_jet(rng, 4, 4);
    Rational r = make_rational(small(rng), 3);
    int m = mm(rng);
    Jet T = shear(S, Number(r), Rational(m));
    for (int k = 0; k < 2; ++k) {
      Rational x = make_rational(small(rng), 2), y = make_rational(small(rng), 3);
      Rational y2 = y + r * pow(x, static_cast<unsigned long>(m));
      EXPECT_EQ(eval_exact(T, x, y), eval_exact(S, x, y2));
    }
  }
}

TEST(Shear, GroupLaw) {
  std::mt19937_64 rng(11);
  for (int it = 0; it < 40; ++it) {
    Jet S = random_jet(rng, 4, 3);
    Number r1(make_rational(1, 3)), r2(make_rational(-5, 2));
    EXPECT_EQ(shear(shear(S, r1, Rational(2)), r2, Rational(2)), shear(S, r1 + r2, Rational(2)));
  }
}

TEST(Swap, InvolutionAndExamples) {
  EXPECT_EQ(swap_axes(P("x^3*y")), P("x*y^3"));
  EXPECT_EQ(swap_axes(P("x^2+y^2")), P("x^2+y^2"));
  std::mt19937_64 rng(3);
  for (int it = 0; it < 50; ++it) {
    Jet S = random_jet(rng, 5, 4);
    EXPECT_EQ(swap_axes(swap_axes(S)), S);
  }
}

TEST(SquareSum, Examples) {
  EXPECT_EQ(square_sum(P("x"), P("y")), P("x^2+y^2"));
  EXPECT_EQ(square_sum(P("x^2+y^2"), P("x*y")), P("x^4+3*x^2*y^2+y^4"));
  Jet g = P("x^2-3*x*y");
  EXPECT_EQ(square_sum(g, Jet()), g * g);
  Jet h = P("y^3+x^2*y");
  EXPECT_EQ(square_sum(g, h), square_sum(h, g));
}

TEST(Norms, Examples) {
  EXPECT_DOUBLE_EQ(cnorm(Jet(), 1, 3), 0);
  EXPECT_NEAR(cnorm(P("x"), 1, 1), 2, 1e-6);
  EXPECT_NEAR(ray_norm(P("x*y^2"), 1, 1, 2), 2, 1e-6);
  EXPECT_NEAR(ray_norm(P("y^3"), 1, 0, 2), 1, 1e-6);
  EXPECT_THROW(ray_norm(P("x^3"), 1, 1, 2), NotRayDivisible);
}

TEST(Norms, HomogeneityAndTriangle) {
  std::mt19937_64 rng(5);
  for (int it = 0; it < 10; ++it) {
    Jet f = random_jet(rng, 3, 3), g = random_jet(rng, 3, 3);
    double nf = cnorm(f, 0.8, 2), ng = cnorm(g, 0.8, 2);
    EXPECT_NEAR(cnorm(Number(-3) * f, 0.8, 2), 3 * nf, 1e-5 * nf);
    EXPECT_LE(cnorm(f + g, 0.8, 2), (nf + ng) * (1 + 1e-5));
  }
}
