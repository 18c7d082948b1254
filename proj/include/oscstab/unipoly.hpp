#ifndef OSCSTAB_UNIPOLY_HPP
#define OSCSTAB_UNIPOLY_HPP

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "rational.hpp"

namespace oscstab {

/// Exact field operations the polynomial algorithms rely on.
/// Specialized for Rational here and for the algebraic Number type.
template <class F>
struct FieldTraits;

template <>
struct FieldTraits<Rational> {
  static Rational zero() { return Rational(0); }
  static Rational one() { return Rational(1); }
  static bool is_zero(const Rational& v) { return sgn(v) == 0; }
  static int sign(const Rational& v) { return sgn(v); }
  static Rational inverse(const Rational& v) {
    if (sgn(v) == 0) throw DomainError("division by zero");
    return Rational(1) / v;
  }
  static Rational from_rational(const Rational& v) { return v; }
  /// Enclosure of |v| from above, used for root bounds.
  static Rational magnitude_bound(const Rational& v) { return abs(v); }
  /// Positive lower bound of |v| for v != 0.
  static Rational magnitude_lower_bound(const Rational& v) { return abs(v); }
  static std::string str(const Rational& v) { return to_string(v); }
};

/// Dense univariate polynomial with coefficients in ascending degree.
/// The leading coefficient is always nonzero; the zero polynomial is empty.
template <class F>
class UniPoly {
public:
  using Traits = FieldTraits<F>;

  UniPoly() = default;
  explicit UniPoly(std::vector<F> coeffs) : c_(std::move(coeffs)) { normalize(); }
  UniPoly(std::initializer_list<F> coeffs) : c_(coeffs) { normalize(); }

  static UniPoly constant(const F& v) { return UniPoly(std::vector<F>{v}); }
  static UniPoly monomial(const F& v, std::size_t k) {
    std::vector<F> c(k + 1, Traits::zero());
    c[k] = v;
    return UniPoly(std::move(c));
  }
  /// y - r
  static UniPoly linear_root(const F& r) {
    return UniPoly(std::vector<F>{F(-r), Traits::one()});
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<F>& coefficients() const { return c_; }
  F coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Traits::zero(); }
  const F& leading() const {
    assert(!c_.empty());
    return c_.back();
  }

  UniPoly operator-() const {
    std::vector<F> c(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) c[i] = F(-c_[i]);
    return UniPoly(std::move(c));
  }

  friend UniPoly operator+(const UniPoly& a, const UniPoly& b) {
    std::vector<F> c(std::max(a.c_.size(), b.c_.size()), Traits::zero());
    for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] = c[i] + a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] = c[i] + b.c_[i];
    return UniPoly(std::move(c));
  }
  friend UniPoly operator-(const UniPoly& a, const UniPoly& b) { return a + (-b); }

  friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return UniPoly();
    std::vector<F> c(a.c_.size() + b.c_.size() - 1, Traits::zero());
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] = c[i + j] + a.c_[i] * b.c_[j];
    return UniPoly(std::move(c));
  }
  friend UniPoly operator*(const F& s, const UniPoly& a) {
    std::vector<F> c(a.c_.size());
    for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] = s * a.c_[i];
    return UniPoly(std::move(c));
  }

  friend bool operator==(const UniPoly& a, const UniPoly& b) { return (a - b).is_zero(); }
  friend bool operator!=(const UniPoly& a, const UniPoly& b) { return !(a == b); }

  UniPoly derivative(unsigned k = 1) const {
    UniPoly p = *this;
    for (unsigned j = 0; j < k; ++j) {
      if (p.c_.size() <= 1) return UniPoly();
      std::vector<F> c(p.c_.size() - 1);
      for (std::size_t i = 1; i < p.c_.size(); ++i)
        c[i - 1] = F(Traits::from_rational(Rational(static_cast<long>(i))) * p.c_[i]);
      p = UniPoly(std::move(c));
    }
    return p;
  }

  /// Horner evaluation at x of any type constructible from F.
  template <class X>
  X eval(const X& x) const {
    if (c_.empty()) return X(Traits::zero());
    X acc = X(c_.back());
    for (std::size_t i = c_.size() - 1; i-- > 0;) acc = X(acc * x + X(c_[i]));
    return acc;
  }
  F operator()(const F& x) const { return eval<F>(x); }

  UniPoly monic() const {
    if (c_.empty()) return *this;
    return Traits::inverse(leading()) * (*this);
  }

  /// Number of trailing zero coefficients (order of vanishing at 0).
  int valuation() const {
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (!Traits::is_zero(c_[i])) return static_cast<int>(i);
    return -1;
  }

  /// p(y) / y^k for k <= valuation.
  UniPoly shift_down(std::size_t k) const {
    if (k >= c_.size()) return UniPoly();
    return UniPoly(std::vector<F>(c_.begin() + static_cast<long>(k), c_.end()));
  }

  std::string str(const std::string& var = "y") const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = c_.size(); i-- > 0;) {
      if (Traits::is_zero(c_[i])) continue;
      if (!first) os << " + ";
      first = false;
      os << "(" << Traits::str(c_[i]) << ")";
      if (i > 0) os << "*" << var << "^" << i;
    }
    return os.str();
  }

private:
  void normalize() {
    while (!c_.empty() && Traits::is_zero(c_.back())) c_.pop_back();
  }
  std::vector<F> c_;
};

/// Euclidean division: a = q*b + r, deg r < deg b.
template <class F>
std::pair<UniPoly<F>, UniPoly<F>> divmod(const UniPoly<F>& a, const UniPoly<F>& b) {
  using T = FieldTraits<F>;
  if (b.is_zero()) throw DomainError("polynomial division by zero");
  std::vector<F> r = a.coefficients();
  int db = b.degree();
  if (a.degree() < db) return {UniPoly<F>(), a};
  std::vector<F> q(static_cast<std::size_t>(a.degree() - db + 1), T::zero());
  F inv = T::inverse(b.leading());
  for (int i = a.degree(); i >= db; --i) {
    F f = r[static_cast<std::size_t>(i)] * inv;
    q[static_cast<std::size_t>(i - db)] = f;
    if (T::is_zero(f)) continue;
    for (int j = 0; j <= db; ++j)
      r[static_cast<std::size_t>(i - db + j)] =
          r[static_cast<std::size_t>(i - db + j)] - f * b.coefficients()[static_cast<std::size_t>(j)];
    r[static_cast<std::size_t>(i)] = T::zero();
  }
  r.resize(static_cast<std::size_t>(db));
  return {UniPoly<F>(std::move(q)), UniPoly<F>(std::move(r))};
}

template <class F>
UniPoly<F> operator%(const UniPoly<F>& a, const UniPoly<F>& b) {
  return divmod(a, b).second;
}

/// Exact quotient; the remainder must vanish.
template <class F>
UniPoly<F> exact_div(const UniPoly<F>& a, const UniPoly<F>& b) {
  auto [q, r] = divmod(a, b);
  assert(r.is_zero());
  return q;
}

/// Monic greatest common divisor (zero if both are zero).
template <class F>
UniPoly<F> gcd(UniPoly<F> a, UniPoly<F> b) {
  while (!b.is_zero()) {
    UniPoly<F> r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

/// Extended Euclid: returns (g, s) with s*a = g (mod m), g = gcd(a, m) monic.
template <class F>
std::pair<UniPoly<F>, UniPoly<F>> xgcd_mod(const UniPoly<F>& a, const UniPoly<F>& m) {
  using T = FieldTraits<F>;
  UniPoly<F> r0 = m, r1 = a % m;
  UniPoly<F> s0, s1 = UniPoly<F>::constant(T::one());
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    UniPoly<F> s = s0 - q * s1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  if (r0.is_zero()) return {r0, s0};
  F inv = T::inverse(r0.leading());
  return {inv * r0, inv * s0};
}

template <class F>
UniPoly<F> pow(const UniPoly<F>& p, unsigned k) {
  UniPoly<F> r = UniPoly<F>::constant(FieldTraits<F>::one());
  for (unsigned i = 0; i < k; ++i) r = r * p;
  return r;
}

/// p(y + s) by repeated synthetic division.
template <class F>
UniPoly<F> taylor_shift(const UniPoly<F>& p, const F& s) {
  std::vector<F> c = p.coefficients();
  int n = p.degree();
  for (int i = 0; i < n; ++i)
    for (int j = n - 1; j >= i; --j)
      c[static_cast<std::size_t>(j)] =
          c[static_cast<std::size_t>(j)] + s * c[static_cast<std::size_t>(j + 1)];
  return UniPoly<F>(std::move(c));
}

/// Square-free factorization (Yun): p = lc * prod f_i^i, returned as (f_i, i), f_i monic.
template <class F>
std::vector<std::pair<UniPoly<F>, int>> squarefree_decomposition(const UniPoly<F>& p) {
  std::vector<std::pair<UniPoly<F>, int>> out;
  if (p.degree() < 1) return out;
  UniPoly<F> f = p.monic();
  UniPoly<F> fp = f.derivative();
  UniPoly<F> a = gcd(f, fp);
  UniPoly<F> b = exact_div(f, a);
  UniPoly<F> c = exact_div(fp, a);
  UniPoly<F> d = c - b.derivative();
  int i = 1;
  while (b.degree() > 0) {
    UniPoly<F> g = gcd(b, d);
    if (g.degree() > 0) out.emplace_back(g, i);
    UniPoly<F> nb = exact_div(b, g);
    UniPoly<F> nc = exact_div(d, g);
    d = nc - nb.derivative();
    b = std::move(nb);
    ++i;
  }
  return out;
}

template <class F>
UniPoly<F> squarefree_part(const UniPoly<F>& p) {
  if (p.degree() < 1) return p;
  return exact_div(p.monic(), gcd(p, p.derivative()));
}

/// Resultant by the subresultant algorithm (exact over any field).
template <class F>
F resultant(UniPoly<F> a, UniPoly<F> b) {
  using T = FieldTraits<F>;
  if (a.is_zero() || b.is_zero()) return T::zero();
  F s = T::one();
  if (a.degree() < b.degree()) {
    if ((a.degree() % 2 == 1) && (b.degree() % 2 == 1)) s = F(-s);
    std::swap(a, b);
  }
  F g = T::one(), h = T::one();
  auto fpow = [](const F& x, int k) {
    F r = T::one();
    for (int i = 0; i < k; ++i) r = r * x;
    return r;
  };
  while (b.degree() > 0) {
    int delta = a.degree() - b.degree();
    if ((a.degree() % 2 == 1) && (b.degree() % 2 == 1)) s = F(-s);
    // Pseudo-remainder lc(b)^(delta+1) * a mod b.
    UniPoly<F> r = (fpow(b.leading(), delta + 1) * a) % b;
    a = b;
    if (r.is_zero()) return T::zero();
    F denom = g * fpow(h, delta);
    b = T::inverse(denom) * r;
    g = a.leading();
    // h <- g^delta / h^(delta-1)
    F num = fpow(g, delta);
    h = delta >= 1 ? F(num * T::inverse(fpow(h, delta - 1))) : F(num * h);
  }
  // deg b == 0
  int da = a.degree();
  F lb = b.leading();
  F hh = fpow(lb, da);
  if (da >= 1) hh = hh * T::inverse(fpow(h, da - 1));
  else hh = hh * h;
  return s * hh;
}

/// Sturm sequence p, p', -rem(...).
template <class F>
std::vector<UniPoly<F>> sturm_sequence(const UniPoly<F>& p) {
  std::vector<UniPoly<F>> seq;
  if (p.is_zero()) return seq;
  seq.push_back(p);
  UniPoly<F> d = p.derivative();
  if (d.is_zero()) return seq;
  seq.push_back(d);
  while (true) {
    UniPoly<F> r = -(seq[seq.size() - 2] % seq.back());
    if (r.is_zero()) break;
    seq.push_back(std::move(r));
  }
  return seq;
}

/// Sign changes of the Sturm sequence at a rational point.
template <class F>
int sign_variations(const std::vector<UniPoly<F>>& seq, const Rational& x) {
  using T = FieldTraits<F>;
  int changes = 0, last = 0;
  F xf = T::from_rational(x);
  for (const auto& q : seq) {
    int s = T::sign(q(xf));
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

/// Sign changes at +infinity (dir=+1) or -infinity (dir=-1).
template <class F>
int sign_variations_at_infinity(const std::vector<UniPoly<F>>& seq, int dir) {
  using T = FieldTraits<F>;
  int changes = 0, last = 0;
  for (const auto& q : seq) {
    int s = T::sign(q.leading());
    if (dir < 0 && q.degree() % 2 == 1) s = -s;
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

/// Number of distinct real roots in the half-open interval (a, b].
template <class F>
int count_roots(const std::vector<UniPoly<F>>& seq, const Rational& a, const Rational& b) {
  return sign_variations(seq, a) - sign_variations(seq, b);
}

template <class F>
int count_real_roots(const UniPoly<F>& p) {
  auto seq = sturm_sequence(p);
  if (seq.empty()) return 0;
  return sign_variations_at_infinity(seq, -1) - sign_variations_at_infinity(seq, +1);
}

/// Cauchy bound: all roots satisfy |y| < bound.
template <class F>
Rational root_bound(const UniPoly<F>& p) {
  using T = FieldTraits<F>;
  assert(p.degree() >= 1);
  // |lc| bounded below via an enclosure that excludes zero.
  Rational lcmag = T::magnitude_lower_bound(p.leading());
  Rational m = 0;
  for (int i = 0; i < p.degree(); ++i) {
    Rational v = T::magnitude_bound(p.coefficients()[static_cast<std::size_t>(i)]);
    if (v > m) m = v;
  }
  Rational b = 1 + m / lcmag;
  // Round up to an integer to keep endpoints small.
  return Rational(ceil_of(b) + 1);
}

/// Isolating interval of one real root: exact when lo == hi, otherwise the
/// root is the only one of the (square-free) polynomial in the open (lo, hi)
/// and the polynomial is nonzero at both ends.
struct RootEnclosure {
  Rational lo, hi;
  bool exact() const { return lo == hi; }
  Rational mid() const { return (lo + hi) / 2; }
  Rational width() const { return hi - lo; }
};

/// Isolates all real roots of a square-free polynomial, sorted ascending.
template <class F>
std::vector<RootEnclosure> isolate_real_roots(const UniPoly<F>& p) {
  using T = FieldTraits<F>;
  std::vector<RootEnclosure> out;
  if (p.degree() < 1) return out;
  auto seq = sturm_sequence(p);
  Rational b = root_bound(p);
  auto value_sign = [&](const Rational& x) { return T::sign(p(T::from_rational(x))); };
  // Split point inside (lo, hi) where p does not vanish.
  auto split_point = [&](const Rational& lo, const Rational& hi) {
    for (long k = 1;; ++k) {
      Rational cand = lo + (hi - lo) * Rational(k, 2 * k + 1);
      cand.canonicalize();
      if (value_sign(cand) != 0) return cand;
    }
  };
  std::vector<std::pair<Rational, Rational>> stack{{Rational(-b), b}};
  while (!stack.empty()) {
    auto [lo, hi] = stack.back();
    stack.pop_back();
    int n = count_roots(seq, lo, hi);
    if (n == 0) continue;
    if (n == 1) {
      out.push_back({lo, hi});
      continue;
    }
    Rational m = (lo + hi) / 2;
    if (value_sign(m) == 0) m = split_point(lo, hi);
    stack.push_back({lo, m});
    stack.push_back({m, hi});
  }
  std::sort(out.begin(), out.end(), [](const RootEnclosure& x, const RootEnclosure& y) {
    return x.lo < y.lo;
  });
  return out;
}

/// Bisects an isolating interval of a square-free polynomial until its width
/// is at most `width`; collapses to an exact root when a midpoint hits it.
template <class F>
void refine_root(const UniPoly<F>& p, RootEnclosure& r, const Rational& width) {
  using T = FieldTraits<F>;
  if (r.exact()) return;
  int slo = T::sign(p(T::from_rational(r.lo)));
  while (r.hi - r.lo > width) {
    Rational m = r.mid();
    int sm = T::sign(p(T::from_rational(m)));
    if (sm == 0) {
      r.lo = r.hi = m;
      return;
    }
    if (sm == slo) r.lo = m;
    else r.hi = m;
  }
}

/// Polynomial through (x_i, y_i) by Newton divided differences.
inline UniPoly<Rational> interpolate(const std::vector<Rational>& xs,
                                     const std::vector<Rational>& ys) {
  assert(xs.size() == ys.size());
  std::size_t n = xs.size();
  std::vector<Rational> dd = ys;
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = n - 1; i >= j; --i) {
      dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - j]);
      if (i == j) break;
    }
  UniPoly<Rational> result;
  for (std::size_t k = n; k-- > 0;) {
    result = result * UniPoly<Rational>{Rational(-xs[k]), Rational(1)} +
             UniPoly<Rational>::constant(dd[k]);
  }
  return result;
}

}  // namespace oscstab

#endif  // OSCSTAB_UNIPOLY_HPP
