#include <random>

#include <gtest/gtest.h>

#include <oscstab/oscstab.hpp>

using namespace oscstab;

namespace {

QPoly Q(std::initializer_list<long> c) {
  std::vector<Rational> v;
  for (long x : c) v.emplace_back(x);
  return QPoly(v);
}

std::vector<Rational> confirmed(const ExceptionalSet& I) {
  std::vector<Rational> out;
  for (const auto& e : I.values())
    if (e.confirmed) out.push_back(*e.t.rational_value());
  return out;
}

QPoly random_poly(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> deg(1, 4), c(-3, 3), root(-2, 2);
  // Products of small linear factors give repeated roots often enough to matter.
  QPoly p = Q({1});
  int k = deg(rng);
  for (int i = 0; i < k; ++i) {
    if (c(rng) > 1) p = p * Q({1, 0, 1});
    else p = p * Q({-root(rng), 1});
  }
  int s = c(rng);
  return Rational(s == 0 ? 1 : s) * p;
}

}  // namespace

TEST(RealRoots, Examples) {
  auto a = real_roots(to_kpoly(Q({1, -2, 1})));
  ASSERT_EQ(a.size(), 1u);
  EXPECT_EQ(a[0].multiplicity, 2);
  EXPECT_EQ(root_value(a[0]), Number(1));
  auto b = real_roots(to_kpoly(Q({0, 1, 0, 1})));
  ASSERT_EQ(b.size(), 1u);
  EXPECT_TRUE(b[0].is_zero());
  EXPECT_TRUE(real_roots(to_kpoly(Q({1, 0, 1}))).empty());
}

TEST(RealRoots, MultiplicityBookkeeping) {
  std::mt19937_64 rng(1);
  for (int it = 0; it < 100; ++it) {
    QPoly p = random_poly(rng);
    int total = 0;
    for (const auto& r : real_roots(to_kpoly(p))) total += r.multiplicity;
    int complex_degree = p.degree() - total;
    EXPECT_GE(complex_degree, 0);
    EXPECT_EQ(complex_degree % 2, 0);
  }
}

TEST(RealRoots, Irrational) {
  auto r = real_roots(to_kpoly(Q({-2, 0, 1})));
  ASSERT_EQ(r.size(), 2u);
  EXPECT_NEAR(root_algebraic(r[1]).to_double(), std::sqrt(2.0), 1e-12);
}

TEST(OrdAt, Examples) {
  EXPECT_EQ(ord_at(Q({1, -2, 1}), RealAlgebraic(Rational(1))), 2);
  EXPECT_EQ(ord_at(Q({1, 0, 1}), RealAlgebraic(Rational(0))), 0);
  EXPECT_EQ(ord_at(Q({0, 0, 0, 1}), RealAlgebraic(Rational(0))), 3);
}

TEST(OrdAt, ProductsAdd) {
  std::mt19937_64 rng(2);
  for (int it = 0; it < 100; ++it) {
    QPoly p = random_poly(rng), r = random_poly(rng);
    for (long x = -2; x <= 2; ++x) {
      RealAlgebraic x0{Rational(x)};
      EXPECT_EQ(ord_at(p * r, x0), ord_at(p, x0) + ord_at(r, x0));
    }
  }
}

TEST(MinOrderSup, Examples) {
  EXPECT_EQ(min_order_sup(Q({1, -2, 1}), Q({2, -3, 1})), 1);
  EXPECT_EQ(min_order_sup(Q({1, 0, 1}), Q({0, 1})), 0);
  EXPECT_EQ(min_order_sup(Q({1, -2, 1}), Q({4, -4, 1})), 0);
}

TEST(PencilOrders, WorkedExamples) {
  auto a = lemma31_exceptional(Q({1, -2, 1}), Q({4, -4, 1}));
  EXPECT_EQ(a.m, 0);
  EXPECT_EQ(confirmed(a.I), (std::vector<Rational>{Rational(0)}));
  auto b = lemma31_exceptional(Q({1, 0, 1}), Q({0, 1}));
  EXPECT_EQ(b.m, 0);
  EXPECT_EQ(confirmed(b.I), (std::vector<Rational>{Rational(-2), Rational(2)}));
  auto c = lemma31_exceptional(Q({0, 0, 1}), Q({0, 0, 0, 1}));
  EXPECT_EQ(c.m, 0);
  EXPECT_TRUE(confirmed(c.I).empty());
}

TEST(PencilOrders, ProportionalPencil) {
  auto r = lemma31_exceptional(Q({1, -2, 1}), Q({2, -4, 2}));
  EXPECT_TRUE(r.I.empty());
}

TEST(PencilOrders, RandomOrderChecks) {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> tn(-40, 40), td(1, 7);
  int checks = 0;
  for (int it = 0; it < 100; ++it) {
    QPoly p = random_poly(rng), q = random_poly(rng);
    auto res = lemma31_exceptional(p, q);
    int M = std::max(1, res.m);
    for (const auto& e : res.I.values()) {
      if (e.confirmed && e.reason == "multiple-root") {
        EXPECT_GT(max_nonzero_root_order(detail::pencil_at(p, q, e.t)), M);
      }
    }
    for (int k = 0; k < 10; ++k) {
      Rational t = make_rational(tn(rng), td(rng));
      if (res.I.contains(RealAlgebraic(t))) continue;
      QPoly f = p + t * q;
      if (f.is_zero()) continue;
      EXPECT_LE(max_nonzero_root_order(to_kpoly(f)), M) << p.str() << " | " << q.str() << " t=" << t;
      ++checks;
    }
  }
  EXPECT_GE(checks, 900);
}
