#ifndef OSCSTAB_QUADRATURE_HPP
#define OSCSTAB_QUADRATURE_HPP

#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

namespace oscstab {

struct QuadResult {
  double value = 0;
  double error = 0;
};

/// Tanh-sinh rule on [a, b]. The integrand receives the point and its
/// distances to both ends, so endpoint singularities can be evaluated
/// without cancellation.
template <class F>
QuadResult tanh_sinh(F&& f, double a, double b, double rel_tol = 1e-12, int max_level = 10) {
  const double half = 0.5 * (b - a);
  const double pi2 = std::numbers::pi / 2;
  auto term = [&](double t) {
    double s = pi2 * std::sinh(t);
    double c = std::cosh(s);
    double w = pi2 * std::cosh(t) / (c * c);
    // Distance from the nearer end, computed without subtracting from 1.
    double u = 1.0 / (std::exp(2 * s) + 1.0);  // (1 - tanh s) / 2 for s > 0
    double dl, dr;
    if (s >= 0) {
      dr = 2 * half * u;
      dl = 2 * half - dr;
    } else {
      double v = 1.0 / (std::exp(-2 * s) + 1.0);
      dl = 2 * half * v;
      dr = 2 * half - dl;
    }
    if (dl <= 0 || dr <= 0 || !(w > 0)) return 0.0;
    double x = a + dl;
    double fx = f(x, dl, dr);
    if (!std::isfinite(fx)) return 0.0;
    return w * fx;
  };
  const double tmax = 6.5;
  double h = 0.5;
  double sum = term(0);
  for (double t = h; t <= tmax; t += h) sum += term(t) + term(-t);
  double prev = sum * h * half;
  QuadResult res{prev, std::fabs(prev)};
  for (int level = 1; level <= max_level; ++level) {
    h *= 0.5;
    double add = 0;
    for (double t = h; t <= tmax; t += 2 * h) add += term(t) + term(-t);
    sum += add;
    double cur = sum * h * half;
    res.error = std::fabs(cur - prev);
    res.value = cur;
    if (level >= 3 && res.error <= rel_tol * std::fabs(cur)) break;
    prev = cur;
  }
  return res;
}

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendre {
  std::vector<double> x, w;
  explicit GaussLegendre(int n) : x(static_cast<std::size_t>(n)), w(static_cast<std::size_t>(n)) {
    for (int i = 0; i < n; ++i) {
      double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
      double pp = 0;
      for (int it = 0; it < 100; ++it) {
        double p1 = 1, p2 = 0;
        for (int j = 1; j <= n; ++j) {
          double p3 = p2;
          p2 = p1;
          p1 = ((2.0 * j - 1) * z * p2 - (j - 1.0) * p3) / j;
        }
        pp = n * (z * p1 - p2) / (z * z - 1);
        double dz = p1 / pp;
        z -= dz;
        if (std::fabs(dz) < 1e-16) break;
      }
      x[static_cast<std::size_t>(i)] = z;
      w[static_cast<std::size_t>(i)] = 2 / ((1 - z * z) * pp * pp);
    }
  }
  template <class F>
  double integrate(F&& f, double a, double b) const {
    double c = 0.5 * (a + b), h = 0.5 * (b - a), s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) s += w[i] * f(c + h * x[i]);
    return s * h;
  }
};

/// Real polynomial in one variable with double coefficients (ascending).
struct DPoly {
  std::vector<double> c;
  double operator()(double y) const {
    double s = 0;
    for (std::size_t i = c.size(); i-- > 0;) s = s * y + c[i];
    return s;
  }
  DPoly derivative() const {
    DPoly d;
    for (std::size_t i = 1; i < c.size(); ++i) d.c.push_back(c[i] * static_cast<double>(i));
    return d;
  }
  int degree() const {
    for (std::size_t i = c.size(); i-- > 0;)
      if (c[i] != 0) return static_cast<int>(i);
    return -1;
  }
};

/// Root of a function with a sign change on [lo, hi] by bisection to full precision.
template <class F>
double bisect(F&& f, double lo, double hi, double flo) {
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    double fm = f(mid);
    if (fm == 0) return mid;
    if ((fm > 0) == (flo > 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// Sign-change roots of p in (lo, hi), ascending, found on monotone pieces
/// between the roots of p'. Multiple roots of even order are found through
/// the derivative.
inline std::vector<double> real_roots_in(const DPoly& p, double lo, double hi) {
  std::vector<double> out;
  int deg = p.degree();
  if (deg < 1) return out;
  std::vector<double> cuts{lo};
  if (deg >= 2) {
    for (double r : real_roots_in(p.derivative(), lo, hi)) cuts.push_back(r);
  }
  cuts.push_back(hi);
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    double a = cuts[i], b = cuts[i + 1];
    double fa = p(a), fb = p(b);
    if (fa == 0) {
      if (out.empty() || out.back() != a) out.push_back(a);
      continue;
    }
    if ((fa > 0) != (fb > 0) && fb != 0) out.push_back(bisect(p, a, b, fa));
  }
  if (p(hi) == 0 && (out.empty() || out.back() != hi)) out.push_back(hi);
  return out;
}

}  // namespace oscstab

#endif  // OSCSTAB_QUADRATURE_HPP
