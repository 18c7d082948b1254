#ifndef OSCSTAB_INTERVAL_HPP
#define OSCSTAB_INTERVAL_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace oscstab {

/// Floating interval with one-ulp outward widening after each operation.
/// Good enough to bound sup-norms and sign decisions on boxes; not a
/// replacement for exact arithmetic.
struct Interval {
  double lo = 0, hi = 0;

  Interval() = default;
  Interval(double v) : lo(v), hi(v) {}  // NOLINT(google-explicit-constructor)
  Interval(double l, double h) : lo(l), hi(h) {}

  static Interval widen(double l, double h) {
    return {std::nextafter(l, -std::numeric_limits<double>::infinity()),
            std::nextafter(h, std::numeric_limits<double>::infinity())};
  }
  double mid() const { return 0.5 * (lo + hi); }
  double width() const { return hi - lo; }
  double mag() const { return std::max(std::fabs(lo), std::fabs(hi)); }
  /// Smallest absolute value in the interval.
  double mig() const {
    if (lo <= 0 && hi >= 0) return 0;
    return std::min(std::fabs(lo), std::fabs(hi));
  }
  bool contains(double v) const { return lo <= v && v <= hi; }
};

inline Interval operator+(const Interval& a, const Interval& b) {
  return Interval::widen(a.lo + b.lo, a.hi + b.hi);
}
inline Interval operator-(const Interval& a, const Interval& b) {
  return Interval::widen(a.lo - b.hi, a.hi - b.lo);
}
inline Interval operator-(const Interval& a) { return {-a.hi, -a.lo}; }
inline Interval operator*(const Interval& a, const Interval& b) {
  double p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  return Interval::widen(*std::min_element(p, p + 4), *std::max_element(p, p + 4));
}

/// x^k for a nonnegative integer k, tight for even powers.
inline Interval ipow(const Interval& x, int k) {
  if (k == 0) return Interval(1.0);
  double a = std::pow(x.lo, k), b = std::pow(x.hi, k);
  if (k % 2 == 0 && x.lo < 0 && x.hi > 0) return Interval::widen(0.0, std::max(a, b));
  return Interval::widen(std::min(a, b), std::max(a, b));
}

/// x^a for real a >= 0 on an interval inside [0, inf).
inline Interval rpow(const Interval& x, double a) {
  double lo = std::max(x.lo, 0.0);
  return Interval::widen(std::pow(lo, a), std::pow(x.hi, a));
}

inline Interval icos(const Interval& t) {
  constexpr double pi = std::numbers::pi;
  double lo = std::cos(t.lo), hi = std::cos(t.hi);
  double mn = std::min(lo, hi), mx = std::max(lo, hi);
  // Extrema of cos at multiples of pi inside the interval.
  double k0 = std::ceil(t.lo / pi), k1 = std::floor(t.hi / pi);
  for (double k = k0; k <= k1; k += 1) {
    if (static_cast<long long>(k) % 2 == 0) mx = 1;
    else mn = -1;
  }
  return Interval::widen(mn, mx);
}

inline Interval isin(const Interval& t) {
  constexpr double pi = std::numbers::pi;
  return icos(Interval(t.lo - pi / 2, t.hi - pi / 2));
}

}  // namespace oscstab

#endif  // OSCSTAB_INTERVAL_HPP
