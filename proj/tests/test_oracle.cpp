#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include <oscstab/oscstab.hpp>

using namespace oscstab;

namespace {

Jet P(const char* s) { return parse_jet_expression(s); }

constexpr double pi = std::numbers::pi;

}  // namespace

TEST(Oscillatory, CircleLeadingTerm) {
  auto J = oscillatory_integral(P("x^2+y^2"), Cutoff::bump(1), 200);
  std::complex<double> A = J * 200.0;
  EXPECT_NEAR(A.imag(), pi, 0.05 * pi);
  EXPECT_LT(std::fabs(A.real()), 0.05 * pi);
}

TEST(Oscillatory, ConjugateUnderNegation) {
  Jet S = P("x^4+y^4+3*x^2*y");
  Cutoff phi = Cutoff::bump(0.5);
  auto a = oscillatory_integral(S, phi, 50), b = oscillatory_integral(-S, phi, 50);
  EXPECT_NEAR(std::abs(a - std::conj(b)), 0, 1e-6 * std::abs(a));
}

TEST(Oscillatory, LinearInCutoff) {
  Jet S = P("x^3+y^3");
  Cutoff phi = Cutoff::bump(0.5), twice = phi;
  twice.scale = 2;
  auto a = oscillatory_integral(S, phi, 40), b = oscillatory_integral(S, twice, 40);
  EXPECT_NEAR(std::abs(b - 2.0 * a), 0, 1e-9 * std::abs(a));
}

TEST(Oscillatory, RejectsBadLambda) {
  EXPECT_THROW(oscillatory_integral(P("x^2+y^2"), Cutoff::bump(1), 0), DomainError);
}

TEST(Sublevel, StripUnderIndicator) {
  // |{0 < y^2 < eps, |x|, |y| <= 1}| = 4 sqrt(eps).
  for (double eps : {1e-2, 1e-4, 1e-6}) {
    auto v = sublevel_integral(P("y^2"), Cutoff::indicator(1), eps);
    EXPECT_NEAR(v.value, 4 * std::sqrt(eps), 3e-3 * 4 * std::sqrt(eps)) << eps;
  }
}

TEST(Sublevel, DiskMeasure) {
  for (double eps : {1e-2, 1e-4}) {
    auto v = sublevel_measure(P("x^2+y^2"), 1, eps, false);
    EXPECT_NEAR(v.value, pi * eps, 3e-3 * pi * eps) << eps;
  }
}

TEST(Sublevel, SaturatesAndIsMonotone) {
  Jet S = P("x^2+y^2");
  // |{|S| < eps}| on the unit disk fills it for large eps.
  EXPECT_NEAR(sublevel_measure(S, 1, 100, false).value, pi, 1e-2);
  double prev = 0;
  for (double eps : log_grid(1e-6, 1, 2)) {
    double v = sublevel_measure(S, 1, eps, false).value;
    EXPECT_GE(v, prev * (1 - 1e-3));
    prev = v;
  }
  EXPECT_NEAR(sublevel_measure(-S, 1, 0.1, false).value, sublevel_measure(S, 1, 0.1, false).value, 1e-12);
}

TEST(Sublevel, DeterministicAcrossThreads) {
  OracleOptions a, b;
  b.threads = 3;
  Jet S = P("x^2*y^2+x^5");
  auto va = sublevel_integral(S, Cutoff::bump(0.5), 1e-4, a);
  auto vb = sublevel_integral(S, Cutoff::bump(0.5), 1e-4, b);
  EXPECT_EQ(va.value, vb.value);
  OracleOptions c;
  c.seed = 7;
  auto vc = sublevel_integral(S, Cutoff::bump(0.5), 1e-4, c);
  EXPECT_NEAR(vc.value, va.value, 0.02 * va.value);
}

TEST(Fit, Synthetic) {
  std::vector<std::pair<double, double>> pure, logged;
  for (double e : log_grid(1e-8, 1e-2, 2)) {
    pure.emplace_back(e, 3 * std::pow(e, 0.75));
    logged.emplace_back(e, std::sqrt(e) * (2 * std::fabs(std::log(e)) + 1));
  }
  auto f = fit_type(pure, FitModel::sublevel);
  EXPECT_NEAR(f.delta, 0.75, 1e-3);
  EXPECT_EQ(f.p, 0);
  EXPECT_NEAR(f.B, 3, 1e-2);
  auto g = fit_type(logged, FitModel::sublevel);
  EXPECT_NEAR(g.delta, 0.5, 1e-2);
  EXPECT_EQ(g.p, 1);
  EXPECT_NEAR(g.B, 2, 0.05);
}

TEST(Fit, VertexPhase) {
  auto f = sublevel_fit(P("x^2*y^2"), Cutoff::indicator(1));
  EXPECT_NEAR(f.delta, 0.5, 0.03);
  EXPECT_EQ(f.p, 1);
  EXPECT_NEAR(f.B, 2, 0.3);
}

TEST(Fit, LogGrid) {
  auto g = log_grid(1e-6, 1e-2, 2);
  ASSERT_EQ(g.size(), 9u);
  EXPECT_NEAR(g.front(), 1e-6, 1e-18);
  EXPECT_NEAR(g.back(), 1e-2, 1e-14);
}

TEST(Uniformity, BaselineOnly) {
  std::vector<double> lams{10, 30, 100};
  auto rep = uniformity_scan(P("x^4+y^4"), {}, lams, Cutoff::bump(0.5), 0.5, 0);
  EXPECT_GT(rep.baseline, 0);
  EXPECT_TRUE(rep.entries.empty());
  EXPECT_TRUE(rep.bounded(1));
  auto two = uniformity_scan(P("x^4+y^4"), {P("(1/100)*x^2*y^2")}, lams, Cutoff::bump(0.5), 0.5, 0);
  ASSERT_EQ(two.entries.size(), 1u);
  EXPECT_EQ(two.entries[0].ratios.size(), lams.size());
  EXPECT_TRUE(two.bounded(2));
}
