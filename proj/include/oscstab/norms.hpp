#ifndef OSCSTAB_NORMS_HPP
#define OSCSTAB_NORMS_HPP

#include <cmath>
#include <numbers>
#include <queue>
#include <vector>

#include "interval.hpp"
#include "jet.hpp"

namespace oscstab {

namespace detail {

inline Interval eval_box(const std::vector<NumericTerm>& terms, const Interval& x, const Interval& y) {
  Interval s(0.0);
  for (const auto& t : terms) s = s + Interval(t.c) * ipow(x, t.ia) * ipow(y, t.b);
  return s;
}

struct PolarBox {
  double r0, r1, t0, t1;
  double upper;
  bool operator<(const PolarBox& o) const { return upper < o.upper; }
};

/// sup of |h| on the closed disk of radius r by branch and bound in polar
/// coordinates. Box bound: |h(mid)| + sup|d_rho h| drho/2 + sup|d_theta h| dtheta/2.
inline double disk_sup(const Jet& h, double r, double rel_tol = 1e-6, std::size_t max_boxes = 400000) {
  if (h.is_zero()) return 0.0;
  auto t = h.numeric();
  auto hx = partial(h, 1, 0).numeric();
  auto hy = partial(h, 0, 1).numeric();
  auto val = [&](double rho, double th) { return std::fabs(eval(t, rho * std::cos(th), rho * std::sin(th))); };
  double best = val(0, 0);
  auto bound = [&](PolarBox& b) {
    double rm = 0.5 * (b.r0 + b.r1), tm = 0.5 * (b.t0 + b.t1);
    double v = val(rm, tm);
    best = std::max({best, v, val(b.r1, tm), val(b.r1, b.t0)});
    Interval R(b.r0, b.r1), T(b.t0, b.t1);
    Interval c = icos(T), s = isin(T);
    Interval X = R * c, Y = R * s;
    Interval Hx = eval_box(hx, X, Y), Hy = eval_box(hy, X, Y);
    Interval gr = Hx * c + Hy * s;
    Interval gt = R * (Hy * c - Hx * s);
    double ub = v + gr.mag() * 0.5 * (b.r1 - b.r0) + gt.mag() * 0.5 * (b.t1 - b.t0);
    double direct = eval_box(t, X, Y).mag();
    b.upper = std::min(ub, direct) * (1 + 4 * std::numeric_limits<double>::epsilon());
  };
  std::priority_queue<PolarBox> pq;
  const int nt = 32, nr = 4;
  const double two_pi = 2 * std::numbers::pi;
  for (int i = 0; i < nr; ++i)
    for (int j = 0; j < nt; ++j) {
      PolarBox b{r * i / nr, r * (i + 1) / nr, two_pi * j / nt, two_pi * (j + 1) / nt, 0};
      bound(b);
      pq.push(b);
    }
  std::size_t boxes = pq.size();
  while (!pq.empty()) {
    PolarBox b = pq.top();
    if (b.upper <= best * (1 + rel_tol) || b.upper <= 1e-300) return best;
    if (boxes >= max_boxes) return b.upper;
    pq.pop();
    double rm = 0.5 * (b.r0 + b.r1), tm = 0.5 * (b.t0 + b.t1);
    // Split the longer side in the metric of the disk.
    bool split_r = (b.r1 - b.r0) >= b.r1 * (b.t1 - b.t0);
    PolarBox c1 = b, c2 = b;
    if (split_r) {
      c1.r1 = rm;
      c2.r0 = rm;
    } else {
      c1.t1 = tm;
      c2.t0 = tm;
    }
    bound(c1);
    bound(c2);
    pq.push(c1);
    pq.push(c2);
    boxes += 2;
  }
  return best;
}

}  // namespace detail

/// Sum over 0 <= alpha, beta <= N of sup over the closed disk D_r of
/// |d_x^alpha d_y^beta f|, each sup certified to relative 1e-6.
inline double cnorm(const Jet& f, double r, unsigned N) {
  if (r <= 0) throw DomainError("cnorm radius must be positive");
  if (!f.integer_exponents()) throw DomainError("cnorm needs integer exponents");
  double total = 0;
  for (unsigned a = 0; a <= N; ++a)
    for (unsigned b = 0; b <= N; ++b) total += detail::disk_sup(partial(f, a, b), r);
  return total;
}

/// f / y^d; throws NotRayDivisible when some term has y-exponent below d.
inline Jet divide_y_power(const Jet& f, int d) {
  Jet F(f.ramification());
  for (const auto& [e, c] : f.terms()) {
    if (e.b < d) throw NotRayDivisible("term " + Jet::monomial(e.a, e.b).str() + " is not divisible by y^" + std::to_string(d));
    F.add(e.a, e.b - d, c);
  }
  return F;
}

/// cnorm of F where f = y^d F.
inline double ray_norm(const Jet& f, double r, unsigned N, int d) {
  return cnorm(divide_y_power(f, d), r, N);
}

}  // namespace oscstab

#endif  // OSCSTAB_NORMS_HPP
