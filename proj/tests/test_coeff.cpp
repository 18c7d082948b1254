#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include <oscstab/oscstab.hpp>

using namespace oscstab;

namespace {

Jet P(const char* s) { return parse_jet_expression(s); }

constexpr double pi = std::numbers::pi;

// Area of {x^4 + y^4 < 1}.
const double quartic_area = 4 * std::pow(std::tgamma(1.25), 2) / std::tgamma(1.5);

double simpson(const std::function<double(double)>& f, double a, double b, int n = 4000) {
  double h = (b - a) / n, s = f(a) + f(b);
  for (int k = 1; k < n; ++k) s += f(a + k * h) * (k % 2 ? 4 : 2);
  return s * h / 3;
}

}  // namespace

TEST(EdgeCoefficient, Circle) {
  auto b = edge_coefficient_case1(P("x^2+y^2"), 1.0);
  EXPECT_NEAR(b.plus, pi, 1e-8);
  EXPECT_NEAR(b.minus, 0, 1e-12);
}

TEST(EdgeCoefficient, QuarticArea) {
  auto b = edge_coefficient_case1(P("x^4+y^4"), 1.0);
  EXPECT_NEAR(b.plus, quartic_area, 1e-7);
  EXPECT_NEAR(b.minus, 0, 1e-12);
}

TEST(EdgeCoefficient, LinearInCutoffValue) {
  for (const char* s : {"x^2+y^2", "x^4+y^4", "x^4+y^4+3*x^2*y", "x^3+y^3"}) {
    auto a = edge_coefficient_case1(P(s), 1.0), b = edge_coefficient_case1(P(s), 2.5);
    EXPECT_NEAR(b.plus, 2.5 * a.plus, 1e-9 * (1 + a.plus)) << s;
    EXPECT_NEAR(b.minus, 2.5 * a.minus, 1e-9 * (1 + a.minus)) << s;
    EXPECT_GE(a.plus, 0) << s;
    EXPECT_GE(a.minus, 0) << s;
  }
}

TEST(EdgeCoefficient, OddPhaseIsSymmetric) {
  auto b = edge_coefficient_case1(P("x^3+y^3"), 1.0);
  EXPECT_NEAR(b.plus, b.minus, 1e-8 * b.plus);
}

TEST(EdgeCoefficient, WrongCase) {
  EXPECT_THROW(edge_coefficient_case1(P("x^2*y^2"), 1.0), WrongCase);
  EXPECT_THROW(vertex_coefficient_case2(P("x^2+y^2"), 1.0), WrongCase);
  EXPECT_THROW(ray_coefficient_case3(P("x^2+y^2"), [](double) { return 1.0; }, 1.0), WrongCase);
}

TEST(RayCoefficient, IndicatorOnAxis) {
  // |{0 < y^2 < eps, |x| <= 1}| = 4 sqrt(eps): B = 2 * integral of phi(x, 0).
  auto g = [](double x) { return std::fabs(x) <= 1 ? 1.0 : 0.0; };
  auto b = ray_coefficient_case3(P("y^2"), g, 1.0);
  EXPECT_NEAR(b.plus, 4, 1e-6);
  EXPECT_NEAR(b.minus, 0, 1e-12);
}

TEST(RayCoefficient, TransportedParabola) {
  // After y -> y + x^2 the phase is y^2 and the cutoff is read along the parabola.
  Cutoff phi = Cutoff::bump(0.5);
  auto lc = leading_coefficient(P("(y-x^2)^2"), phi);
  EXPECT_EQ(lc.method, CoeffMethod::closed_form_ray);
  double direct = 2 * simpson([&](double x) { return phi(x, x * x); }, -0.5, 0.5);
  EXPECT_NEAR(lc.B_plus, direct, 1e-4 * direct);
  EXPECT_NEAR(lc.B_minus, 0, 1e-12);
}

TEST(Transfer, Examples) {
  CaseTag edge{CaseKind::edge}, vertex{CaseKind::vertex};
  auto A = transfer_AB(pi, 0, Rational(1), edge);
  EXPECT_NEAR(A.real(), 0, 1e-12);
  EXPECT_NEAR(A.imag(), pi, 1e-12);
  // Symmetric B gives a real A.
  auto S = transfer_AB(1, 1, Rational(3, 2), edge);
  EXPECT_NEAR(S.imag(), 0, 1e-12);
  EXPECT_NEAR(S.real(), 2 * std::tgamma(2.0 / 3) / 1.5 * std::cos(pi / 3), 1e-12);
  EXPECT_NEAR(std::abs(transfer_AB(1, 0.5, Rational(2), vertex) + transfer_AB(1, 0.5, Rational(2), edge)), 0, 1e-12);
  EXPECT_THROW(transfer_AB(1, 1, Rational(0), edge), DomainError);
}

TEST(LeadingCoefficient, Circle) {
  auto lc = leading_coefficient(P("x^2+y^2"), Cutoff::bump(0.7));
  EXPECT_EQ(lc.method, CoeffMethod::closed_form_edge);
  EXPECT_EQ(lc.delta, Rational(1));
  EXPECT_EQ(lc.p, 0);
  EXPECT_NEAR(lc.A.real(), 0, 1e-8);
  EXPECT_NEAR(lc.A.imag(), pi, 1e-8);
}

TEST(LeadingCoefficient, ClosedFormVertex) {
  auto b = vertex_coefficient_case2(P("x^2*y^2"), 1.0);
  ASSERT_TRUE(b.has_value());
  EXPECT_NEAR(b->plus, 2, 1e-12);
  EXPECT_NEAR(b->minus, 0, 1e-12);
  auto lc = leading_coefficient(P("x^2*y^2"), Cutoff::indicator(1));
  EXPECT_EQ(lc.method, CoeffMethod::closed_form_vertex);
  EXPECT_EQ(lc.p, 1);
  // The edge of slope 1 above the vertex halves kappa; -S only gains a log-free wedge.
  auto c = vertex_coefficient_case2(P("x^2*y^2+3*x*y^3"), 1.0);
  ASSERT_TRUE(c.has_value());
  EXPECT_NEAR(c->plus, 1, 1e-12);
  EXPECT_NEAR(c->minus, 0, 1e-12);
}

TEST(LeadingCoefficient, Case2FitMatchesClosedForm) {
  OracleOptions o;
  o.target_rel_stderr = 3e-3;
  auto f = case2_fit(P("x^2*y^2"), Cutoff::indicator(1), o);
  EXPECT_NEAR(f.B.plus, 2, 0.3);
  EXPECT_NEAR(f.B.minus, 0, 1e-9);
}

TEST(LeadingCoefficient, MorseBranch) {
  auto a = leading_coefficient(P("x*y"), Cutoff::bump(0.5));
  EXPECT_EQ(a.method, CoeffMethod::stationary_phase);
  EXPECT_NEAR(a.A.real(), 2 * pi, 1e-12);
  EXPECT_NEAR(a.A.imag(), 0, 1e-12);
  EXPECT_TRUE(std::isinf(a.B_plus));
  auto b = leading_coefficient(P("x^2+y^2+3*x*y"), Cutoff::bump(0.5));
  EXPECT_EQ(b.method, CoeffMethod::stationary_phase);
  EXPECT_NEAR(std::abs(b.A), 2 * pi / std::sqrt(5.0), 1e-12);
  // Definite forms go through the edge formula and agree with stationary phase.
  auto c = leading_coefficient(P("2*x^2+y^2"), Cutoff::bump(0.5));
  EXPECT_EQ(c.method, CoeffMethod::closed_form_edge);
  EXPECT_NEAR(std::abs(c.A - std::polar(2 * pi / std::sqrt(8.0), pi / 2)), 0, 1e-7);
}

TEST(SublevelLogPower, Rules) {
  EXPECT_EQ(sublevel_log_power(superadapt(P("x^2+y^2"))), 0);
  EXPECT_EQ(sublevel_log_power(superadapt(P("x^2-y^2"))), 1);
  EXPECT_EQ(sublevel_log_power(superadapt(P("x*y"))), 1);
  EXPECT_EQ(sublevel_log_power(superadapt(P("x^2*y^2"))), 1);
  EXPECT_EQ(sublevel_log_power(superadapt(P("x^4+y^4"))), 0);
  EXPECT_TRUE(indefinite_morse(superadapt(P("x^2-y^2"))));
  EXPECT_FALSE(indefinite_morse(superadapt(P("x^2+y^2"))));
}

TEST(Holder, QuarticPerturbation) {
  Jet S = P("x^4+y^4"), f1;
  Cutoff phi = Cutoff::bump(0.5);
  std::vector<HolderSample> samples;
  for (long den : {10, 30, 100, 300, 1000}) {
    Jet f2 = Number(make_rational(1, den)) * P("x^2*y^2");
    samples.push_back(holder_check(S, f1, f2, phi, 0.5, 2));
  }
  auto fit = holder_fit(samples);
  EXPECT_NEAR(fit.alpha, 1, 0.1);
  EXPECT_GT(fit.r2, 0.99);
  EXPECT_THROW(holder_fit({}), FitUnstable);
}
